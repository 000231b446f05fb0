//! Exact arithmetic in GF(q) for prime powers q.
//!
//! Extension fields GF(p^e) use the polynomial basis over the monic irreducible
//! of degree `e` that comes first when the non-leading coefficients are read as
//! a base-`p` number with the highest-degree coefficient most significant. An
//! element is stored packed as `sum c_i * p^i`, where `c_i` is the coefficient
//! of `t^i`. The canonical element order is the order of that packed value, so
//! GF(4) enumerates as `0, 1, t, t+1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("requested {requested} distinct elements but the field has only {order}")]
    TooMany { requested: usize, order: u64 },
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("cannot parse field spec {0:?} (expected e.g. \"q=7\")")]
    BadSpec(String),
}

/// An element of some GF(q); only meaningful together with its [`FieldCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u64);

impl FieldElem {
    /// The packed value `sum c_i p^i`, which is also the element's position in
    /// the canonical enumeration.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field GF(p^e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    degree: usize,
    order: u64,
    /// Monic modulus, low-to-high, length `degree + 1`; empty for prime fields.
    modulus: Vec<u64>,
}

impl FieldCtx {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q > MAX_ORDER {
            return Err(FieldError::OrderTooLarge(q));
        }
        let (p, degree) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let modulus = if degree > 1 {
            smallest_irreducible(p, degree)
        } else {
            Vec::new()
        };
        Ok(FieldCtx {
            p,
            degree,
            order: q,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The defining polynomial (low-to-high, monic) of an extension field.
    pub fn modulus(&self) -> Option<&[u64]> {
        (self.degree > 1).then_some(self.modulus.as_slice())
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The `index`-th element in canonical order.
    pub fn element(&self, index: u64) -> Result<FieldElem, FieldError> {
        if index < self.order {
            Ok(FieldElem(index))
        } else {
            Err(FieldError::InvalidElement(format!(
                "index {index} out of range for GF({})",
                self.order
            )))
        }
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.order
    }

    /// Image of an integer under the natural map Z -> GF(p) ⊆ GF(q).
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        let r = n.mod_floor(&BigInt::from(self.p));
        FieldElem(r.to_u64().expect("residue fits in u64"))
    }

    /// Builds an element from its coordinates (coefficient of `t^i` at index `i`).
    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElem, FieldError> {
        if coords.len() > self.degree {
            return Err(FieldError::InvalidElement(format!(
                "{} coordinates given for a degree-{} field",
                coords.len(),
                self.degree
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::InvalidElement(format!(
                "coordinate {c} is not a residue mod {}",
                self.p
            )));
        }
        Ok(self.pack(coords))
    }

    /// Coordinates of `a`, always `degree` long.
    pub fn coords(&self, a: FieldElem) -> Vec<u64> {
        let mut v = a.0;
        let mut out = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn pack(&self, coords: &[u64]) -> FieldElem {
        let mut v = 0u64;
        for &c in coords.iter().rev() {
            v = v * self.p + c;
        }
        FieldElem(v)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.degree == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.degree == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let s: Vec<u64> = self
            .coords(a)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.pack(&s)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.degree == 1 {
            return FieldElem(mulmod(a.0, b.0, self.p));
        }
        let prod = poly_mul(&self.coords(a), &self.coords(b), self.p);
        let (_, r) = poly_divrem(&prod, &self.modulus, self.p);
        self.pack(&r)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.degree == 1 {
            return Ok(FieldElem(inv_mod(a.0, self.p)));
        }
        let inv = poly_inv_mod(&self.coords(a), &self.modulus, self.p);
        Ok(self.pack(&inv))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut exp: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The first `count` elements in canonical order.
    pub fn enumerate(&self, count: usize) -> Result<Vec<FieldElem>, FieldError> {
        if count as u64 > self.order {
            return Err(FieldError::TooMany {
                requested: count,
                order: self.order,
            });
        }
        Ok((0..count as u64).map(FieldElem).collect())
    }

    /// Parses `"3"` (a residue mod p) or a coordinate tuple `"(1;0)"`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, FieldError> {
        let s = s.trim();
        let bad = || FieldError::InvalidElement(s.to_string());
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coords = inner
                .split(';')
                .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return self.from_coords(&coords);
        }
        let v: u64 = s.parse().map_err(|_| bad())?;
        self.from_coords(&[v])
    }

    /// Human-readable form: residues for prime fields, polynomials in `t` otherwise.
    pub fn display(&self, a: FieldElem) -> String {
        if self.degree == 1 {
            return a.0.to_string();
        }
        let coords = self.coords(a);
        let mut parts = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl FromStr for FieldCtx {
    type Err = FieldError;

    /// Accepts `"q=9"` or a bare `"9"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix("q=").unwrap_or(t).trim();
        let q: u64 = digits
            .parse()
            .map_err(|_| FieldError::BadSpec(s.to_string()))?;
        if q < 2 {
            return Err(FieldError::NotPrimePower(q));
        }
        FieldCtx::new(q)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    s0.rem_euclid(p as i128) as u64
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b` over GF(p); `b` must be nonzero.
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut b = b.to_vec();
    trim(&mut b);
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u64; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        quot[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

/// Inverse of `a` modulo the irreducible `m` over GF(p), by extended Euclid.
fn poly_inv_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    // r0 is a nonzero constant since m is irreducible.
    debug_assert_eq!(r0.len(), 1);
    let c = inv_mod(r0[0], p);
    let (_, red) = poly_divrem(&s0.iter().map(|&x| mulmod(x, c, p)).collect::<Vec<_>>(), m, p);
    let mut out = red;
    out.resize(m.len() - 1, 0);
    out
}

/// Monic polynomial of `degree` whose lower coefficients encode `code` in
/// base `p` (constant term least significant).
fn monic_from_code(p: u64, degree: usize, mut code: u64) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push(code % p);
        code /= p;
    }
    coeffs.push(1);
    coeffs
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let degree = f.len() - 1;
    for d in 1..=degree / 2 {
        for code in 0..p.pow(d as u32) {
            let g = monic_from_code(p, d, code);
            let (_, r) = poly_divrem(f, &g, p);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, degree: usize) -> Vec<u64> {
    (0..p.pow(degree as u32))
        .map(|code| monic_from_code(p, degree, code))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
