//! Univariate polynomials in `x`, with either symbolic ([`MultiPoly`]) or
//! field-valued coefficients.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};
use crate::multipoly::{MultiPoly, PolyError, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniPolyError {
    #[error("polynomial {index} has degree {degree}, which does not fit {k} columns")]
    DegreeTooHigh { index: usize, degree: usize, k: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `sum_t coeffs[t] * x^t` with coefficients in `Z[x1..xN]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymUniPoly {
    nvars: usize,
    coeffs: Vec<MultiPoly>,
}

impl SymUniPoly {
    pub fn zero(nvars: usize) -> Self {
        SymUniPoly {
            nvars,
            coeffs: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_coeffs(nvars, vec![MultiPoly::one(nvars)])
    }

    /// `x^e`.
    pub fn monomial(nvars: usize, e: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(nvars); e];
        coeffs.push(MultiPoly::one(nvars));
        SymUniPoly { nvars, coeffs }
    }

    /// `x - x_j`.
    pub fn linear(nvars: usize, j: usize) -> Result<Self, PolyError> {
        let root = MultiPoly::try_var(nvars, j)?;
        Ok(Self::from_coeffs(nvars, vec![-root, MultiPoly::one(nvars)]))
    }

    /// Low-to-high coefficients; trailing zeros are dropped.
    pub fn from_coeffs(nvars: usize, mut coeffs: Vec<MultiPoly>) -> Self {
        assert!(coeffs.iter().all(|c| c.nvars() == nvars), "ring mismatch");
        while coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        SymUniPoly { nvars, coeffs }
    }

    /// `p(S) = prod_{j in S} (x - x_j)` for a multiset `S` of variable labels.
    pub fn from_multiset(nvars: usize, multiset: &[usize]) -> Result<Self, PolyError> {
        let mut p = Self::one(nvars);
        for &j in multiset {
            p = p.mul_linear(j)?;
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Coefficient of `x^t` (zero beyond the degree).
    pub fn coeff(&self, t: usize) -> MultiPoly {
        self.coeffs
            .get(t)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// `self * (x - x_j)`.
    pub fn mul_linear(&self, j: usize) -> Result<Self, PolyError> {
        let root = MultiPoly::try_var(self.nvars, j)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        for t in 0..=n {
            // coefficient of x^t: c_{t-1} - x_j c_t
            let mut c = if t > 0 {
                self.coeffs[t - 1].clone()
            } else {
                MultiPoly::zero(self.nvars)
            };
            if t < n {
                c = &c - &(&root * &self.coeffs[t]);
            }
            out.push(c);
        }
        Ok(Self::from_coeffs(self.nvars, out))
    }

    /// `self * x^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![MultiPoly::zero(self.nvars); e];
        coeffs.extend(self.coeffs.iter().cloned());
        SymUniPoly {
            nvars: self.nvars,
            coeffs,
        }
    }

    pub fn mul(&self, other: &SymUniPoly) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch(self.nvars, other.nvars));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut out = vec![MultiPoly::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_coeffs(self.nvars, out))
    }

    pub fn add(&self, other: &SymUniPoly) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch(self.nvars, other.nvars));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n).map(|t| &self.coeff(t) + &other.coeff(t)).collect();
        Ok(Self::from_coeffs(self.nvars, out))
    }

    /// Scales every coefficient by the symbolic factor `c`.
    pub fn scale(&self, c: &MultiPoly) -> Result<Self, PolyError> {
        let out = self
            .coeffs
            .iter()
            .map(|a| a.try_mul(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(self.nvars, out))
    }

    /// Horner evaluation at a symbolic value of `x`.
    pub fn eval_symbolic(&self, at: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(MultiPoly::zero(self.nvars), |acc, c| acc.try_mul(at)?.try_add(c))
    }

    /// Substitutes `x_j := assignment[j - 1]` in every coefficient.
    pub fn substitute(
        &self,
        ctx: &FieldCtx,
        assignment: &[FieldElem],
    ) -> Result<FieldUniPoly, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.substitute(ctx, assignment))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldUniPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for SymUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xpow = match t {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{t}"),
            };
            match (c.as_constant(), t) {
                (_, 0) => write!(f, "({c})")?,
                (Some(v), _) if v == 1.into() => write!(f, "{xpow}")?,
                _ => write!(f, "({c})*{xpow}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymUniPoly({self})")
    }
}

/// The coefficient matrix `C(P)`: row `i` holds the coefficients of `P[i]`
/// with column 0 the coefficient of `x^(k-1)` and the last column the
/// constant term. Polynomials of lower degree get leading zero columns.
pub fn coefficient_matrix(polys: &[SymUniPoly], k: usize) -> Result<PolyMatrix, UniPolyError> {
    let nvars = polys.first().map_or(0, SymUniPoly::nvars);
    let mut rows = Vec::with_capacity(polys.len());
    for (index, p) in polys.iter().enumerate() {
        if p.nvars() != nvars {
            return Err(PolyError::VarCountMismatch(nvars, p.nvars()).into());
        }
        if let Some(degree) = p.degree().filter(|&d| d >= k) {
            return Err(UniPolyError::DegreeTooHigh {
                index: index + 1,
                degree,
                k,
            });
        }
        rows.push((0..k).map(|j| p.coeff(k - 1 - j)).collect());
    }
    Ok(PolyMatrix::from_rows(nvars, rows)?)
}

/// A univariate polynomial over GF(q), low-to-high coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldUniPoly {
    coeffs: Vec<FieldElem>,
}

impl FieldUniPoly {
    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldUniPoly { coeffs }
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(ctx: &FieldCtx, roots: &[FieldElem]) -> Self {
        let mut coeffs = vec![ctx.one()];
        for &r in roots {
            let mut next = vec![ctx.zero(); coeffs.len() + 1];
            for (t, &c) in coeffs.iter().enumerate() {
                next[t + 1] = ctx.add(next[t + 1], c);
                next[t] = ctx.sub(next[t], ctx.mul(r, c));
            }
            coeffs = next;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldCtx, a: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(ctx.zero(), |acc, &c| ctx.add(ctx.mul(acc, a), c))
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, &c)| {
                let v = ctx.display(c);
                match t {
                    0 => v,
                    _ => {
                        let xpow = if t == 1 { "x".to_string() } else { format!("x^{t}") };
                        if c == ctx.one() {
                            xpow
                        } else {
                            format!("({v})*{xpow}")
                        }
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}
