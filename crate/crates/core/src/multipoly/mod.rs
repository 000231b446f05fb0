//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables are labelled `x1..xN` and addressed by their 1-based label, the
//! same labels used for ground-set elements elsewhere in the crate.

mod coeff;
mod matrix;

use coeff::Coeff;

pub use matrix::{PolyMatrix, RankInfo};

use std::cmp::Ordering;
use std::collections::btree_map::Entry as BTreeEntry;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap as HashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("elementary symmetric degree {degree} out of range for {count} variables")]
    DegreeOutOfRange { degree: usize, count: usize },
    #[error("variable x{0} has no assigned value")]
    UnboundVariable(usize),
    #[error("variable x{index} does not exist in a ring with {nvars} variables")]
    NoSuchVariable { index: usize, nvars: usize },
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
}

const FIELDS_PER_WORD: usize = 4;
const FIELD_BITS: u32 = 16;
/// High bit of every 16-bit field; degrees and exponents stay below 2^15.
const GUARD: u64 = 0x8000_8000_8000_8000;

/// Total degree followed by the exponents of `x1, x2, ...`, packed four
/// 16-bit fields per word from the most significant end. Lexicographic order
/// on the words is then graded-lex order (`x1 > x2 > ...`), and monomial
/// multiplication is word-wise addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Monomial {
    words: SmallVec<[u64; 2]>,
}

fn field_pos(field: usize) -> (usize, u32) {
    (
        field / FIELDS_PER_WORD,
        FIELD_BITS * (FIELDS_PER_WORD - 1 - field % FIELDS_PER_WORD) as u32,
    )
}

impl Monomial {
    fn unit(nvars: usize) -> Self {
        Monomial {
            words: SmallVec::from_elem(0, (nvars + 1).div_ceil(FIELDS_PER_WORD)),
        }
    }

    fn from_exps(exps: &[u16]) -> Self {
        let mut m = Monomial::unit(exps.len());
        let degree: u32 = exps.iter().map(|&e| e as u32).sum();
        assert!(degree < 1 << 15, "degree {degree} too large");
        m.set(0, degree as u64);
        for (v, &e) in exps.iter().enumerate() {
            m.set(v + 1, e as u64);
        }
        m
    }

    fn set(&mut self, field: usize, value: u64) {
        let (w, shift) = field_pos(field);
        self.words[w] |= value << shift;
    }

    fn field(&self, field: usize) -> u16 {
        let (w, shift) = field_pos(field);
        (self.words[w] >> shift) as u16
    }

    fn degree(&self) -> u32 {
        self.field(0) as u32
    }

    fn exp(&self, v: usize) -> u16 {
        self.field(v + 1)
    }

    fn exps(&self, nvars: usize) -> Vec<u16> {
        (0..nvars).map(|v| self.exp(v)).collect()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| {
                let w = a + b;
                assert!(w & GUARD == 0, "exponent overflow");
                w
            })
            .collect();
        Monomial { words }
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut words = SmallVec::with_capacity(self.words.len());
        for (a, b) in self.words.iter().zip(&other.words) {
            // A field borrows exactly when its guard bit is consumed.
            let d = (a | GUARD) - b;
            if d & GUARD != GUARD {
                return None;
            }
            words.push(d & !GUARD);
        }
        Some(Monomial { words })
    }
}

/// Term-pair count above which [`MultiPoly::product_heap`] replaces hashing.
const HEAP_PRODUCT_THRESHOLD: usize = 1 << 16;

struct HeapEntry {
    mono: Monomial,
    row: usize,
    col: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.mono == other.mono
    }
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono.cmp(&other.mono)
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `Z[x1..xN]`.
///
/// Terms are kept sorted with the graded-lex leading term first and no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = Coeff::from_big(c.into());
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly {
            nvars,
            terms: vec![(Monomial::unit(nvars), c)],
        }
    }

    /// The variable `x_index` (1-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::try_var(nvars, index).expect("variable index out of range")
    }

    pub fn try_var(nvars: usize, index: usize) -> Result<Self, PolyError> {
        if index == 0 || index > nvars {
            return Err(PolyError::NoSuchVariable { index, nvars });
        }
        let mut exps = vec![0u16; nvars];
        exps[index - 1] = 1;
        Ok(MultiPoly {
            nvars,
            terms: vec![(Monomial::from_exps(&exps), Coeff::Small(1))],
        })
    }

    /// `x_i - x_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        &Self::var(nvars, i) - &Self::var(nvars, j)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; like terms
    /// are combined.
    pub fn from_terms<I, E>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, BigInt)>,
        E: AsRef<[u16]>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::default();
        for (exps, c) in terms {
            let exps = exps.as_ref();
            assert_eq!(exps.len(), nvars, "exponent vector length");
            acc.entry(Monomial::from_exps(exps))
                .or_insert(Coeff::Small(0))
                .add_assign(&Coeff::from_big(c));
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u16>, BigInt)> + '_ {
        self.terms
            .iter()
            .map(|(m, c)| (m.exps(self.nvars), c.to_big()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        self.constant_coeff().map(|c| c.to_big())
    }

    fn constant_coeff(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::Small(0)),
            [(m, c)] if m.degree() == 0 => Some(c.clone()),
            _ => None,
        }
    }

    /// Variables that occur with positive exponent (1-based).
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.iter().any(|(m, _)| m.exp(v) > 0))
            .map(|v| v + 1)
            .collect()
    }

    /// Gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| c.gcd_big(&g))
    }

    fn check(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VarCountMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => x.0.cmp(&y.0),
            };
            match ord {
                Ordering::Greater => terms.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (m, c) = b.next().unwrap();
                    terms.push((m.clone(), if negate { c.neg() } else { c.clone() }));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let c = if negate { x.sub(y) } else { x.add(y) };
                    if !c.is_zero() {
                        terms.push((m.clone(), c));
                    }
                }
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    fn product(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if let Some(c) = self.constant_coeff() {
            return other.scale_coeff(&c);
        }
        if let Some(c) = other.constant_coeff() {
            return self.scale_coeff(&c);
        }
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if short.terms.len() * long.terms.len() > HEAP_PRODUCT_THRESHOLD {
            return short.product_heap(long);
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity_and_hasher(
            short.terms.len() * long.terms.len(),
            Default::default(),
        );
        for (ma, ca) in &short.terms {
            for (mb, cb) in &long.terms {
                let prod = ca.mul(cb);
                match acc.entry(ma.mul(mb)) {
                    Entry::Occupied(mut e) => e.get_mut().add_assign(&prod),
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Heap-based multiplication: one cursor per term of `self` walks the
    /// terms of `other`, so products come out in decreasing order and like
    /// terms are adjacent. Monomials of at most two words are compared as
    /// `u128` keys.
    fn product_heap(&self, other: &MultiPoly) -> MultiPoly {
        let width = self.terms[0].0.words.len();
        if width > 2 {
            return self.product_heap_generic(other);
        }
        let key = |m: &Monomial| -> u128 {
            let hi = m.words[0] as u128;
            let lo = m.words.get(1).copied().unwrap_or(0) as u128;
            (hi << 64) | lo
        };
        let guard = ((GUARD as u128) << 64) | GUARD as u128;
        let a: Vec<u128> = self.terms.iter().map(|(m, _)| key(m)).collect();
        let b: Vec<u128> = other.terms.iter().map(|(m, _)| key(m)).collect();
        let prod_key = |i: usize, j: usize| -> u128 {
            let k = a[i] + b[j];
            assert!(k & guard == 0, "exponent overflow");
            k
        };
        let mut heap: BinaryHeap<(u128, u32, u32)> =
            (0..a.len()).map(|i| (prod_key(i, 0), i as u32, 0)).collect();
        let mut out: Vec<(u128, Coeff)> = Vec::new();
        while let Some((k, row, col)) = heap.pop() {
            let (row, col) = (row as usize, col as usize);
            let prod = self.terms[row].1.mul(&other.terms[col].1);
            match out.last_mut() {
                Some((last, c)) if *last == k => c.add_assign(&prod),
                _ => {
                    if out.last().is_some_and(|(_, c)| c.is_zero()) {
                        out.pop();
                    }
                    out.push((k, prod));
                }
            }
            if col + 1 < b.len() {
                heap.push((prod_key(row, col + 1), row as u32, col as u32 + 1));
            }
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
        let terms = out
            .into_iter()
            .map(|(k, c)| {
                let mut words = SmallVec::from_elem(0u64, width);
                words[0] = (k >> 64) as u64;
                if width == 2 {
                    words[1] = k as u64;
                }
                (Monomial { words }, c)
            })
            .collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    fn product_heap_generic(&self, other: &MultiPoly) -> MultiPoly {
        let mut heap: BinaryHeap<HeapEntry> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, (m, _))| HeapEntry {
                mono: m.mul(&other.terms[0].0),
                row: i,
                col: 0,
            })
            .collect();
        let mut terms: Vec<(Monomial, Coeff)> = Vec::new();
        while let Some(HeapEntry { mono, row, col }) = heap.pop() {
            let prod = self.terms[row].1.mul(&other.terms[col].1);
            match terms.last_mut() {
                Some((last, c)) if *last == mono => c.add_assign(&prod),
                _ => {
                    if terms.last().is_some_and(|(_, c)| c.is_zero()) {
                        terms.pop();
                    }
                    terms.push((mono, prod));
                }
            }
            if col + 1 < other.terms.len() {
                heap.push(HeapEntry {
                    mono: self.terms[row].0.mul(&other.terms[col + 1].0),
                    row,
                    col: col + 1,
                });
            }
        }
        if terms.last().is_some_and(|(_, c)| c.is_zero()) {
            terms.pop();
        }
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        self.scale_coeff(&Coeff::from_big(c.clone()))
    }

    fn scale_coeff(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails if any remainder is left.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if let Some(c) = divisor.constant_coeff() {
            let terms = self
                .terms
                .iter()
                .map(|(m, x)| Some((m.clone(), x.div_exact(&c)?)))
                .collect::<Option<Vec<_>>>()
                .ok_or(PolyError::NotDivisible)?;
            return Ok(MultiPoly {
                nvars: self.nvars,
                terms,
            });
        }
        let (lead_m, lead_c) = &divisor.terms[0];
        let mut rem: BTreeMap<Monomial, Coeff> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lead_m).ok_or(PolyError::NotDivisible)?;
            let qc = c.div_exact(lead_c).ok_or(PolyError::NotDivisible)?;
            for (dm, dc) in &divisor.terms[1..] {
                let delta = qc.mul(dc);
                match rem.entry(qm.mul(dm)) {
                    BTreeEntry::Occupied(mut e) => {
                        e.get_mut().sub_assign(&delta);
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    BTreeEntry::Vacant(e) => {
                        e.insert(delta.neg());
                    }
                }
            }
            quotient.push((qm, qc));
        }
        // Leading terms are produced in strictly decreasing order.
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: quotient,
        })
    }

    /// Evaluates in GF(q); `assignment[j - 1]` is the value of `x_j`.
    pub fn substitute(
        &self,
        ctx: &FieldCtx,
        assignment: &[FieldElem],
    ) -> Result<FieldElem, PolyError> {
        self.check_bound(assignment.len())?;
        let mut acc = ctx.zero();
        for (m, c) in &self.terms {
            let mut t = ctx.from_bigint(&c.to_big());
            for (v, &a) in assignment.iter().enumerate().take(self.nvars) {
                let e = m.exp(v);
                if e > 0 {
                    t = ctx.mul(t, ctx.pow(a, e as u64));
                }
            }
            acc = ctx.add(acc, t);
        }
        Ok(acc)
    }

    /// Evaluates at integer values; `assignment[j - 1]` is the value of `x_j`.
    pub fn eval_integers(&self, assignment: &[BigInt]) -> Result<BigInt, PolyError> {
        self.check_bound(assignment.len())?;
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.to_big();
            for (v, a) in assignment.iter().enumerate().take(self.nvars) {
                let e = m.exp(v);
                if e > 0 {
                    t *= num_traits::pow(a.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    fn check_bound(&self, bound: usize) -> Result<(), PolyError> {
        for v in bound..self.nvars {
            if self.terms.iter().any(|(m, _)| m.exp(v) > 0) {
                return Err(PolyError::UnboundVariable(v + 1));
            }
        }
        Ok(())
    }
}

/// The elementary symmetric polynomial of degree `degree` in the multiset of
/// variables `vars`; a repeated label contributes repeated factors, so
/// `e_2(x7, x7, x7) = 3 x7^2`.
pub fn elementary_symmetric(
    nvars: usize,
    vars: &[usize],
    degree: usize,
) -> Result<MultiPoly, PolyError> {
    if degree > vars.len() {
        return Err(PolyError::DegreeOutOfRange {
            degree,
            count: vars.len(),
        });
    }
    // e[t] after processing a prefix of vars; coefficients of prod (1 + x_v y).
    let mut e = vec![MultiPoly::zero(nvars); degree + 1];
    e[0] = MultiPoly::one(nvars);
    for &v in vars {
        let x = MultiPoly::try_var(nvars, v)?;
        for t in (1..=degree).rev() {
            let add = &e[t - 1] * &x;
            e[t] = &e[t] + &add;
        }
    }
    Ok(e.swap_remove(degree))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$inner(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, nvars: usize) -> fmt::Result {
    let mut first = true;
    for (v, e) in m.exps(nvars).into_iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", v + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Graded-lex order, e.g. `x1^2*x3 - 2*x2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{}", mag.to_big())?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag.to_big())?;
                }
                write_monomial(f, m, self.nvars)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let n = 2;
        let lhs = &(&x(n, 1) - &x(n, 2)) * &(&x(n, 1) + &x(n, 2));
        let rhs = &x(n, 1).pow(2) - &x(n, 2).pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x1^2 - x2^2");
    }

    #[test]
    fn self_subtraction_is_zero() {
        let p = &(&x(3, 1) * &x(3, 3)) + &MultiPoly::constant(3, 5);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).to_string(), "0");
    }

    #[test]
    fn swapped_difference_is_negated_square() {
        let a = MultiPoly::difference(3, 1, 3);
        let b = MultiPoly::difference(3, 3, 1);
        assert_eq!(&a * &b, -(&a * &a));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        assert_eq!(
            x(2, 1).try_add(&x(3, 1)),
            Err(PolyError::VarCountMismatch(2, 3))
        );
        assert!(x(2, 1).try_mul(&x(3, 1)).is_err());
    }

    #[test]
    fn display_graded_lex() {
        let p = &(&x(3, 1).pow(2) * &x(3, 3)) - &x(3, 2).scale(&BigInt::from(2));
        assert_eq!(p.to_string(), "x1^2*x3 - 2*x2");
        assert_eq!((-x(3, 2)).to_string(), "-x2");
        let q = &(&x(2, 2) + &x(2, 1).pow(2)) + &MultiPoly::constant(2, -3);
        assert_eq!(q.to_string(), "x1^2 + x2 - 3");
    }

    #[test]
    fn elementary_symmetric_small_cases() {
        let n = 7;
        let e1 = elementary_symmetric(n, &[1, 2, 3], 1).unwrap();
        assert_eq!(e1, &(&x(n, 1) + &x(n, 2)) + &x(n, 3));
        assert_eq!(
            elementary_symmetric(n, &[1, 2, 3], 0).unwrap(),
            MultiPoly::one(n)
        );
        let rep = elementary_symmetric(n, &[7, 7, 7], 2).unwrap();
        assert_eq!(rep, x(n, 7).pow(2).scale(&BigInt::from(3)));
        assert_eq!(
            elementary_symmetric(n, &[1, 2], 3),
            Err(PolyError::DegreeOutOfRange {
                degree: 3,
                count: 2
            })
        );
    }

    #[test]
    fn exact_division() {
        let n = 3;
        let a = MultiPoly::difference(n, 1, 2);
        let b = &(&x(n, 1) * &x(n, 3)) + &MultiPoly::constant(n, 2);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(
            (&prod + &MultiPoly::one(n)).exact_div(&a),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(a.exact_div(&MultiPoly::zero(n)), Err(PolyError::DivisionByZero));
        assert_eq!(
            a.scale(&BigInt::from(6))
                .exact_div(&MultiPoly::constant(n, 3))
                .unwrap(),
            a.scale(&BigInt::from(2))
        );
    }

    #[test]
    fn substitution_into_prime_field() {
        let f = FieldCtx::new(7).unwrap();
        let p = MultiPoly::difference(3, 1, 3);
        let a: Vec<FieldElem> = [1, 0, 3].iter().map(|&v| f.from_int(v)).collect();
        assert_eq!(p.substitute(&f, &a).unwrap(), f.from_int(5));
        assert_eq!(
            MultiPoly::zero(3).substitute(&f, &[]).unwrap(),
            f.zero()
        );
        assert_eq!(
            p.substitute(&f, &a[..2]),
            Err(PolyError::UnboundVariable(3))
        );
    }

    #[test]
    fn variables_and_content() {
        let p = (&x(4, 2) * &x(4, 4)).scale(&BigInt::from(6)) + MultiPoly::constant(4, 4);
        assert_eq!(p.variables(), vec![2, 4]);
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.total_degree(), Some(2));
    }
}
