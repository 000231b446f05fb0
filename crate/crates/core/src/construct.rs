//! MDS matrices with a prescribed zero pattern, the triangular determinant
//! formula for coefficient matrices, and exhaustive MDS verification.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem, FieldError};
use crate::multipoly::{MultiPoly, PolyError, PolyMatrix};
use crate::setsystem::{
    multiset_intersection, MdsConditionReport, NestedChainReport, SetSystem, SetSystemError,
};
use crate::unipoly::{coefficient_matrix, FieldUniPoly, SymUniPoly, UniPolyError};

/// Column subsets handed to the worker pool per round in [`verify_mds`].
const VERIFY_BATCH: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("GF({q}) has fewer than the {needed} distinct points required")]
    FieldTooSmall { q: u64, needed: usize },
    #[error("hypothesis violated: {check}: {detail}")]
    HypothesisViolated { check: &'static str, detail: String },
    #[error("points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("|S_{index}| = {size} exceeds {index} - 1")]
    StaircaseViolated { index: usize, size: usize },
    #[error("|S_{index}| = {size} exceeds k - 1 = {}", k - 1)]
    SetTooLarge { index: usize, size: usize, k: usize },
    #[error("invalid witness chain: {0}")]
    InvalidWitness(String),
    #[error("invalid matrix shape: {0}")]
    ShapeInvalid(String),
    #[error("determinant certificate vanished under the chosen points")]
    CertificateFailed,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    SetSystem(#[from] SetSystemError),
}

impl From<UniPolyError> for ConstructError {
    fn from(e: UniPolyError) -> Self {
        match e {
            UniPolyError::DegreeTooHigh { index, degree, k } => ConstructError::SetTooLarge {
                index,
                size: degree,
                k,
            },
            UniPolyError::Poly(p) => ConstructError::Poly(p),
        }
    }
}

/// A `k x n` matrix over GF(q), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    ctx: FieldCtx,
    k: usize,
    n: usize,
    entries: Vec<FieldElem>,
}

/// The JSON form: `{"q": 7, "k": 4, "n": 7, "rows": [[0, 0, 6, ...], ...]}`.
/// Extension-field entries are coordinate lists, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub q: u64,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<ElemRepr>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Residue(u64),
    Coords(Vec<u64>),
}

impl FieldMatrix {
    pub fn new(ctx: FieldCtx, rows: Vec<Vec<FieldElem>>) -> Result<Self, ConstructError> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(k * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(ConstructError::ShapeInvalid(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(e) = row.iter().find(|e| !ctx.contains(**e)) {
                return Err(FieldError::InvalidElement(format!("index {}", e.index())).into());
            }
            entries.extend(row);
        }
        Ok(FieldMatrix { ctx, k, n, entries })
    }

    pub fn from_doc(doc: &MatrixDoc) -> Result<Self, ConstructError> {
        let ctx = FieldCtx::new(doc.q)?;
        if doc.rows.len() != doc.k {
            return Err(ConstructError::ShapeInvalid(format!(
                "k = {} but {} rows were given",
                doc.k,
                doc.rows.len()
            )));
        }
        let rows = doc
            .rows
            .iter()
            .map(|row| {
                if row.len() != doc.n {
                    return Err(ConstructError::ShapeInvalid(format!(
                        "n = {} but a row has {} entries",
                        doc.n,
                        row.len()
                    )));
                }
                row.iter()
                    .map(|e| match e {
                        ElemRepr::Residue(v) => ctx.from_coords(&[*v]),
                        ElemRepr::Coords(c) => ctx.from_coords(c),
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(ConstructError::from)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = FieldMatrix::new(ctx, rows)?;
        m.n = doc.n;
        Ok(m)
    }

    pub fn to_doc(&self) -> MatrixDoc {
        let rows = (0..self.k)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&e| {
                        if self.ctx.degree() == 1 {
                            ElemRepr::Residue(e.index())
                        } else {
                            ElemRepr::Coords(self.ctx.coords(e))
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixDoc {
            q: self.ctx.order(),
            k: self.k,
            n: self.n,
            rows,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> FieldElem {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[FieldElem] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    /// Determinant of the `k x k` submatrix on the given 0-based columns.
    pub fn minor(&self, cols: &[usize]) -> FieldElem {
        let k = cols.len();
        let mut a: Vec<FieldElem> = (0..self.k.min(k))
            .flat_map(|i| cols.iter().map(move |&c| (i, c)))
            .map(|(i, c)| self.get(i, c))
            .collect();
        field_det(&self.ctx, &mut a, k)
    }
}

/// Gaussian elimination on a `dim x dim` row-major buffer, destroying it.
fn field_det(ctx: &FieldCtx, a: &mut [FieldElem], dim: usize) -> FieldElem {
    let mut det = ctx.one();
    for c in 0..dim {
        let Some(p) = (c..dim).find(|&r| !a[r * dim + c].is_zero()) else {
            return ctx.zero();
        };
        if p != c {
            for j in 0..dim {
                a.swap(p * dim + j, c * dim + j);
            }
            det = ctx.neg(det);
        }
        let pivot = a[c * dim + c];
        det = ctx.mul(det, pivot);
        let inv = ctx.inv(pivot).expect("pivot is nonzero");
        for r in c + 1..dim {
            let f = ctx.mul(a[r * dim + c], inv);
            if f.is_zero() {
                continue;
            }
            for j in c..dim {
                let v = ctx.sub(a[r * dim + j], ctx.mul(f, a[c * dim + j]));
                a[r * dim + j] = v;
            }
        }
    }
    det
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdsReport {
    Ok,
    /// The lexicographically first singular column subset, 1-based.
    Singular { columns: Vec<usize> },
}

/// Checks every `k x k` minor, scanning column subsets in lexicographic order.
pub fn verify_mds(a: &FieldMatrix) -> Result<MdsReport, ConstructError> {
    let (k, n) = (a.k(), a.n());
    if k > n {
        return Err(ConstructError::ShapeInvalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut combos = Combinations::new(n, k);
    loop {
        let batch: Vec<Vec<usize>> = combos.by_ref().take(VERIFY_BATCH).collect();
        if batch.is_empty() {
            return Ok(MdsReport::Ok);
        }
        if let Some(cols) = batch.par_iter().find_first(|cols| a.minor(cols).is_zero()) {
            return Ok(MdsReport::Singular {
                columns: cols.iter().map(|c| c + 1).collect(),
            });
        }
    }
}

/// `S_i = {j : A_ij = 0}`.
pub fn zero_pattern(a: &FieldMatrix) -> SetSystem {
    let sets = (0..a.k())
        .map(|i| {
            (0..a.n())
                .filter(|&j| a.get(i, j).is_zero())
                .map(|j| j + 1)
                .collect()
        })
        .collect();
    SetSystem::new(a.n(), sets).expect("indices lie in the ground set")
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let k = out.len();
        let mut next = out.clone();
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.n - k + i) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.cur = Some(next);
        }
        Some(out)
    }
}

/// `ξ_1..ξ_{k-1}` with `T_i = {ξ_1..ξ_{k-i}}` contained in `S_1 ∩ .. ∩ S_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChain {
    xi: Vec<usize>,
}

impl WitnessChain {
    pub fn new(xi: Vec<usize>) -> Self {
        WitnessChain { xi }
    }

    pub fn xi(&self) -> &[usize] {
        &self.xi
    }

    pub fn k(&self) -> usize {
        self.xi.len() + 1
    }

    /// `T_i` for 1-based `i`, sorted.
    pub fn t(&self, i: usize) -> Vec<usize> {
        let mut t = self.xi[..self.k() - i].to_vec();
        t.sort_unstable();
        t
    }
}

fn running_intersections(s: &SetSystem) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(s.k());
    for set in s.sets() {
        let next = match out.last() {
            None => set.clone(),
            Some(prev) => multiset_intersection(prev, set),
        };
        out.push(next);
    }
    out
}

fn count(multiset: &[usize], e: usize) -> usize {
    multiset.iter().filter(|&&x| x == e).count()
}

/// Greedy chain for `i = k-1` down to `1`, taking the smallest admissible element.
pub fn find_witness_chain(s: &SetSystem) -> Option<WitnessChain> {
    let k = s.k();
    if k == 0 {
        return None;
    }
    let inter = running_intersections(s);
    let mut xi: Vec<usize> = Vec::with_capacity(k - 1);
    for i in (1..k).rev() {
        let avail = &inter[i - 1];
        let pick = avail
            .iter()
            .copied()
            .find(|&e| count(&xi, e) < count(avail, e))?;
        xi.push(pick);
    }
    Some(WitnessChain { xi })
}

/// Checks containment of every `T_i` in the running intersection.
pub fn validate_witness(s: &SetSystem, w: &WitnessChain) -> Result<(), ConstructError> {
    let k = s.k();
    if w.k() != k {
        return Err(ConstructError::InvalidWitness(format!(
            "chain has {} entries, expected {}",
            w.xi.len(),
            k.saturating_sub(1)
        )));
    }
    for (i, inter) in running_intersections(s).iter().enumerate() {
        let t = w.t(i + 1);
        if multiset_intersection(&t, inter).len() != t.len() {
            return Err(ConstructError::InvalidWitness(format!(
                "T_{} is not contained in the first {} sets",
                i + 1,
                i + 1
            )));
        }
    }
    Ok(())
}

fn check_set_sizes(s: &SetSystem) -> Result<(), ConstructError> {
    let k = s.k();
    match s.sets().iter().position(|set| set.len() >= k.max(1)) {
        Some(i) => Err(ConstructError::SetTooLarge {
            index: i + 1,
            size: s.sets()[i].len(),
            k,
        }),
        None => Ok(()),
    }
}

/// Multiset difference `a \ b` of sorted multisets.
fn multiset_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut left: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in b {
        *left.entry(e).or_default() += 1;
    }
    a.iter()
        .copied()
        .filter(|e| match left.get_mut(e) {
            Some(c) if *c > 0 => {
                *c -= 1;
                false
            }
            _ => true,
        })
        .collect()
}

/// The linear factors `(ξ, j)`, meaning `x_ξ - x_j`, of the triangular formula.
pub fn triangular_det_factors(
    s: &SetSystem,
    w: &WitnessChain,
) -> Result<Vec<(usize, usize)>, ConstructError> {
    check_set_sizes(s)?;
    validate_witness(s, w)?;
    let k = s.k();
    let mut factors = Vec::new();
    for i in 2..=k {
        let head = w.xi[k - i];
        for j in multiset_difference(s.set(i), &w.t(i)) {
            factors.push((head, j));
        }
    }
    Ok(factors)
}

/// `prod_{i=2..k} prod_{j in S_i \ T_i} (x_{ξ_{k-i+1}} - x_j)`, expanded.
pub fn triangular_det(s: &SetSystem, w: &WitnessChain) -> Result<MultiPoly, ConstructError> {
    let nvars = s.n();
    Ok(triangular_det_factors(s, w)?
        .into_iter()
        .fold(MultiPoly::one(nvars), |acc, (a, b)| {
            &acc * &MultiPoly::difference(nvars, a, b)
        }))
}

/// `p(S_1), .., p(S_k)` in the variables `x_1..x_n`.
pub fn symbolic_polys(s: &SetSystem) -> Vec<SymUniPoly> {
    s.sets()
        .iter()
        .map(|set| SymUniPoly::from_multiset(s.n(), set).expect("elements lie in the ground set"))
        .collect()
}

/// `C(P)` for `P = {p(S_1), .., p(S_k)}`.
pub fn symbolic_coefficient_matrix(s: &SetSystem) -> Result<PolyMatrix, ConstructError> {
    Ok(coefficient_matrix(&symbolic_polys(s), s.k())?)
}

/// `Q = {x^{k-2}(x - x_ξ), .., (x - x_ξ), p(S)}`.
fn shifted_linears(nvars: usize, xi: usize, k: usize) -> Result<Vec<SymUniPoly>, PolyError> {
    let lin = SymUniPoly::linear(nvars, xi)?;
    Ok((0..k.saturating_sub(1)).rev().map(|e| lin.shift(e)).collect())
}

/// `det C(Q)` for `Q = {x^{k-2}(x - x_ξ), .., (x - x_ξ), p(S)}`.
pub fn shifted_linears_det(
    nvars: usize,
    xi: usize,
    multiset: &[usize],
    k: usize,
) -> Result<MultiPoly, ConstructError> {
    let mut q = shifted_linears(nvars, xi, k)?;
    q.push(SymUniPoly::from_multiset(nvars, multiset)?);
    Ok(coefficient_matrix(&q, k)?.det()?)
}

/// The two factors of `C(P) = blockdiag(C(P'), 1) · C(Q)` for a common element `ξ`
/// of `S_1..S_{k-1}`.
#[derive(Debug, Clone)]
pub struct Factorisation {
    pub c_p: PolyMatrix,
    pub block: PolyMatrix,
    pub c_q: PolyMatrix,
}

impl Factorisation {
    pub fn holds(&self) -> Result<bool, ConstructError> {
        Ok(self.block.mul(&self.c_q)? == self.c_p)
    }
}

pub fn factorise(s: &SetSystem, xi: usize) -> Result<Factorisation, ConstructError> {
    check_set_sizes(s)?;
    let (k, nvars) = (s.k(), s.n());
    if k == 0 {
        return Err(ConstructError::ShapeInvalid("empty set system".into()));
    }
    if let Some(i) = (1..k).find(|&i| !s.set(i).contains(&xi)) {
        return Err(ConstructError::HypothesisViolated {
            check: "common-element",
            detail: format!("x{xi} is not in S_{i}"),
        });
    }
    let c_p = symbolic_coefficient_matrix(s)?;
    let reduced: Vec<SymUniPoly> = (1..k)
        .map(|i| SymUniPoly::from_multiset(nvars, &multiset_difference(s.set(i), &[xi])))
        .collect::<Result<_, _>>()?;
    let c_reduced = coefficient_matrix(&reduced, k - 1)?;
    let mut rows: Vec<Vec<MultiPoly>> = c_reduced
        .to_rows()
        .into_iter()
        .map(|mut r| {
            r.push(MultiPoly::zero(nvars));
            r
        })
        .collect();
    let mut last = vec![MultiPoly::zero(nvars); k];
    last[k - 1] = MultiPoly::one(nvars);
    rows.push(last);
    let block = PolyMatrix::from_rows(nvars, rows)?;
    let mut q = shifted_linears(nvars, xi, k)?;
    q.push(SymUniPoly::from_multiset(nvars, s.set(k))?);
    let c_q = coefficient_matrix(&q, k)?;
    Ok(Factorisation { c_p, block, c_q })
}

/// Direct and (when a chain exists) closed-form determinants of `C(P)`.
#[derive(Debug, Clone)]
pub struct SymbolicDet {
    pub witness: Option<WitnessChain>,
    pub factors: Option<Vec<(usize, usize)>>,
    pub direct: MultiPoly,
    pub triangular: Option<MultiPoly>,
}

impl SymbolicDet {
    pub fn matches_direct(&self) -> bool {
        self.triangular.as_ref() == Some(&self.direct)
    }
}

pub fn symbolic_det(s: &SetSystem) -> Result<SymbolicDet, ConstructError> {
    check_set_sizes(s)?;
    let direct = symbolic_coefficient_matrix(s)?.det()?;
    let witness = find_witness_chain(s);
    let (factors, triangular) = match &witness {
        Some(w) => (
            Some(triangular_det_factors(s, w)?),
            Some(triangular_det(s, w)?),
        ),
        None => (None, None),
    };
    Ok(SymbolicDet {
        witness,
        factors,
        direct,
        triangular,
    })
}

/// Evaluation points: canonical field enumeration or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Points {
    Auto,
    Explicit(Vec<FieldElem>),
}

fn resolve_points(
    ctx: &FieldCtx,
    points: &Points,
    needed: usize,
) -> Result<Vec<FieldElem>, ConstructError> {
    if (ctx.order() as u128) < needed as u128 {
        return Err(ConstructError::FieldTooSmall {
            q: ctx.order(),
            needed,
        });
    }
    let pts = match points {
        Points::Auto => ctx.enumerate(needed)?,
        Points::Explicit(p) => {
            if p.len() != needed {
                return Err(ConstructError::PointCount {
                    expected: needed,
                    got: p.len(),
                });
            }
            if let Some(e) = p.iter().find(|e| !ctx.contains(**e)) {
                return Err(FieldError::InvalidElement(format!("index {}", e.index())).into());
            }
            p.clone()
        }
    };
    for j in 0..pts.len() {
        if let Some(i) = (0..j).find(|&i| pts[i] == pts[j]) {
            return Err(ConstructError::DuplicatePoints {
                first: i + 1,
                second: j + 1,
            });
        }
    }
    Ok(pts)
}

fn evaluation_matrix(
    ctx: &FieldCtx,
    rows: &[FieldUniPoly],
    points: &[FieldElem],
) -> Result<FieldMatrix, ConstructError> {
    let grid = rows
        .iter()
        .map(|r| points.iter().map(|&a| r.eval(ctx, a)).collect())
        .collect();
    let mut m = FieldMatrix::new(ctx.clone(), grid)?;
    m.n = points.len();
    Ok(m)
}

fn certificate_value(
    ctx: &FieldCtx,
    factors: &[(usize, usize)],
    points: &[FieldElem],
) -> FieldElem {
    factors.iter().fold(ctx.one(), |acc, &(a, b)| {
        ctx.mul(acc, ctx.sub(points[a - 1], points[b - 1]))
    })
}

/// MDS matrix with zero pattern `S` for a system whose running intersections
/// have sizes exactly `k-1, .., 0` and which satisfies the MDS condition.
pub fn construct_nested(
    s: &SetSystem,
    ctx: &FieldCtx,
    points: &Points,
) -> Result<FieldMatrix, ConstructError> {
    s.require_plain()?;
    if let MdsConditionReport::Violated { subset, intersection } = s.check_mds_condition()? {
        return Err(ConstructError::HypothesisViolated {
            check: "mds-condition",
            detail: format!("rows {subset:?} share {intersection} elements"),
        });
    }
    if let NestedChainReport::Failed {
        index,
        size,
        expected,
    } = s.check_nested_chain()
    {
        return Err(ConstructError::HypothesisViolated {
            check: "nested-chain",
            detail: format!("intersection of the first {index} sets has size {size}, expected {expected}"),
        });
    }
    let pts = resolve_points(ctx, points, s.n())?;
    let w = find_witness_chain(s).expect("nested chain admits a witness");
    if certificate_value(ctx, &triangular_det_factors(s, &w)?, &pts).is_zero() {
        return Err(ConstructError::CertificateFailed);
    }
    let rows: Vec<FieldUniPoly> = s
        .sets()
        .iter()
        .map(|set| {
            let roots: Vec<FieldElem> = set.iter().map(|&l| pts[l - 1]).collect();
            FieldUniPoly::from_roots(ctx, &roots)
        })
        .collect();
    evaluation_matrix(ctx, &rows, &pts)
}

/// MDS matrix with zero pattern `S` for a system with `|S_i| ≤ i - 1`, built by
/// padding with an extra root `x_{n+1}` and substituting the symbolic rows.
/// Needs `n + 1` points; the last one is the padding root.
pub fn construct_staircase(
    s: &SetSystem,
    ctx: &FieldCtx,
    points: &Points,
) -> Result<FieldMatrix, ConstructError> {
    s.require_plain()?;
    let u = s.pad_to_u().map_err(|e| match e {
        SetSystemError::StaircaseViolated { index, size } => {
            ConstructError::StaircaseViolated { index, size }
        }
        other => other.into(),
    })?;
    let pts = resolve_points(ctx, points, s.n() + 1)?;
    let w = find_witness_chain(&u).expect("padded system admits a witness");
    if certificate_value(ctx, &triangular_det_factors(&u, &w)?, &pts).is_zero() {
        return Err(ConstructError::CertificateFailed);
    }
    let rows = symbolic_polys(&u)
        .iter()
        .map(|p| p.substitute(ctx, &pts))
        .collect::<Result<Vec<_>, _>>()?;
    evaluation_matrix(ctx, &rows, &pts[..s.n()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::elementary_symmetric;

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn gf(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    fn pts(ctx: &FieldCtx, v: &[i64]) -> Points {
        Points::Explicit(v.iter().map(|&x| ctx.from_int(x)).collect())
    }

    fn rows(m: &FieldMatrix) -> Vec<Vec<u64>> {
        (0..m.k())
            .map(|i| m.row(i).iter().map(|e| e.index()).collect())
            .collect()
    }

    fn d(n: usize, a: usize, b: usize) -> MultiPoly {
        MultiPoly::difference(n, a, b)
    }

    fn product(factors: &[MultiPoly], n: usize) -> MultiPoly {
        factors.iter().fold(MultiPoly::one(n), |acc, f| &acc * f)
    }

    fn nested_fixture() -> SetSystem {
        sys(7, &[&[1, 2, 3], &[1, 2, 6], &[1, 5, 7], &[3, 4, 5]])
    }

    fn staircase_fixture() -> SetSystem {
        sys(6, &[&[], &[3], &[2, 5], &[1, 4, 6]])
    }

    #[test]
    fn witness_chains() {
        let w = find_witness_chain(&nested_fixture()).unwrap();
        assert_eq!(w.xi(), &[1, 2, 3]);
        assert_eq!(w.t(1), vec![1, 2, 3]);
        assert_eq!(w.t(2), vec![1, 2]);
        assert_eq!(w.t(3), vec![1]);
        assert!(w.t(4).is_empty());
        let u = staircase_fixture().pad_to_u().unwrap();
        assert_eq!(find_witness_chain(&u).unwrap().xi(), &[7, 7, 7]);
        assert_eq!(find_witness_chain(&sys(2, &[&[1]])).unwrap().xi(), &[] as &[usize]);
        let chainless = sys(7, &[&[1, 5, 6], &[1, 3, 5], &[2, 6, 7], &[2, 4, 7]]);
        assert!(find_witness_chain(&chainless).is_none());
        assert!(validate_witness(&nested_fixture(), &WitnessChain::new(vec![1, 2, 4])).is_err());
        assert!(validate_witness(&nested_fixture(), &WitnessChain::new(vec![1, 1, 2])).is_err());
    }

    #[test]
    fn triangular_formula_on_fixtures() {
        let s = nested_fixture();
        let w = find_witness_chain(&s).unwrap();
        let expect = product(
            &[d(7, 1, 3), d(7, 1, 4), d(7, 1, 5), d(7, 2, 5), d(7, 2, 7), d(7, 3, 6)],
            7,
        );
        let tri = triangular_det(&s, &w).unwrap();
        assert_eq!(tri, expect);
        assert_eq!(symbolic_coefficient_matrix(&s).unwrap().det().unwrap(), expect);

        let u = staircase_fixture().pad_to_u().unwrap();
        let w = find_witness_chain(&u).unwrap();
        let expect = product(&(1..=6).map(|j| d(7, 7, j)).collect::<Vec<_>>(), 7);
        assert_eq!(triangular_det(&u, &w).unwrap(), expect);
        assert_eq!(symbolic_coefficient_matrix(&u).unwrap().det().unwrap(), expect);

        let one = sys(1, &[&[]]);
        assert_eq!(
            triangular_det(&one, &find_witness_chain(&one).unwrap()).unwrap(),
            MultiPoly::one(1)
        );
    }

    #[test]
    fn chainless_six_factor_determinant() {
        let s = sys(7, &[&[1, 5, 6], &[1, 3, 5], &[2, 6, 7], &[2, 4, 7]]);
        let expect = product(
            &[d(7, 1, 2), d(7, 1, 7), d(7, 2, 5), d(7, 3, 6), d(7, 5, 7), d(7, 6, 4)],
            7,
        );
        let sd = symbolic_det(&s).unwrap();
        assert_eq!(sd.direct, expect);
        assert!(sd.witness.is_none() && !sd.matches_direct());
    }

    #[test]
    fn shifted_linears_det_cases() {
        assert_eq!(shifted_linears_det(2, 1, &[2], 2).unwrap(), d(2, 1, 2));
        assert!(shifted_linears_det(3, 1, &[1], 3).unwrap().is_zero());
        assert_eq!(shifted_linears_det(3, 1, &[], 3).unwrap(), MultiPoly::one(3));
        let expect = product(&[d(4, 2, 3), d(4, 2, 3), d(4, 2, 4), d(4, 2, 1)], 4);
        assert_eq!(shifted_linears_det(4, 2, &[1, 3, 3, 4], 5).unwrap(), expect);
        assert_eq!(shifted_linears_det(2, 1, &[], 1).unwrap(), MultiPoly::one(2));
    }

    #[test]
    fn factorisation_identity() {
        let f = factorise(&nested_fixture(), 1).unwrap();
        assert!(f.holds().unwrap());
        let m = sys(4, &[&[2, 2, 3], &[1, 2, 2], &[2, 4, 4], &[1, 3]]);
        assert!(factorise(&m, 2).unwrap().holds().unwrap());
        assert!(matches!(
            factorise(&nested_fixture(), 3),
            Err(ConstructError::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn nested_golden_matrix() {
        let f = gf(7);
        let a = construct_nested(&nested_fixture(), &f, &pts(&f, &[1, 0, 3, 6, 5, 2, 4])).unwrap();
        assert_eq!(
            rows(&a),
            vec![
                vec![0, 0, 0, 6, 5, 5, 5],
                vec![0, 0, 6, 1, 4, 0, 3],
                vec![0, 1, 4, 3, 0, 6, 0],
                vec![2, 1, 0, 0, 0, 2, 2],
            ]
        );
        assert_eq!(verify_mds(&a).unwrap(), MdsReport::Ok);
        assert_eq!(zero_pattern(&a), nested_fixture());
        let auto = construct_nested(&nested_fixture(), &f, &Points::Auto).unwrap();
        assert_eq!(verify_mds(&auto).unwrap(), MdsReport::Ok);
        assert_eq!(zero_pattern(&auto), nested_fixture());
    }

    #[test]
    fn staircase_golden_matrix() {
        let f = gf(7);
        let a = construct_staircase(&staircase_fixture(), &f, &pts(&f, &[6, 4, 0, 3, 2, 5, 1])).unwrap();
        assert_eq!(
            rows(&a),
            vec![
                vec![6, 6, 6, 1, 1, 1],
                vec![3, 1, 0, 5, 2, 3],
                vec![5, 0, 6, 5, 0, 5],
                vec![0, 2, 1, 0, 2, 0],
            ]
        );
        assert_eq!(verify_mds(&a).unwrap(), MdsReport::Ok);
        assert_eq!(zero_pattern(&a), staircase_fixture());
        let g8 = gf(8);
        let b = construct_staircase(&staircase_fixture(), &g8, &Points::Auto).unwrap();
        assert_eq!(verify_mds(&b).unwrap(), MdsReport::Ok);
        assert_eq!(zero_pattern(&b), staircase_fixture());
    }

    #[test]
    fn trivial_constructions() {
        let f = gf(5);
        let a = construct_nested(&sys(3, &[&[]]), &f, &Points::Auto).unwrap();
        assert_eq!(rows(&a), vec![vec![1, 1, 1]]);
        let g2 = gf(2);
        let b = construct_staircase(&sys(1, &[&[]]), &g2, &pts(&g2, &[0, 1])).unwrap();
        assert_eq!(rows(&b), vec![vec![1]]);
    }

    #[test]
    fn construction_errors() {
        let f = gf(5);
        assert_eq!(
            construct_nested(&nested_fixture(), &f, &Points::Auto),
            Err(ConstructError::FieldTooSmall { q: 5, needed: 7 })
        );
        let f7 = gf(7);
        assert_eq!(
            construct_nested(&nested_fixture(), &f7, &pts(&f7, &[1, 1, 3, 6, 5, 2, 4])),
            Err(ConstructError::DuplicatePoints { first: 1, second: 2 })
        );
        let chainless = sys(7, &[&[1, 5, 6], &[1, 3, 5], &[2, 6, 7], &[2, 4, 7]]);
        assert!(matches!(
            construct_nested(&chainless, &f7, &Points::Auto),
            Err(ConstructError::HypothesisViolated { check: "nested-chain", .. })
        ));
        let bad = sys(3, &[&[1, 2], &[1, 2], &[3]]);
        assert!(matches!(
            construct_nested(&bad, &f7, &Points::Auto),
            Err(ConstructError::HypothesisViolated { check: "mds-condition", .. })
        ));
        assert_eq!(
            construct_staircase(&nested_fixture(), &gf(8), &Points::Auto),
            Err(ConstructError::StaircaseViolated { index: 1, size: 3 })
        );
        assert_eq!(
            construct_staircase(&staircase_fixture(), &f7, &Points::Auto).map(|m| m.n()),
            Ok(6)
        );
        assert_eq!(
            construct_staircase(&staircase_fixture(), &gf(5), &Points::Auto),
            Err(ConstructError::FieldTooSmall { q: 5, needed: 7 })
        );
    }

    #[test]
    fn chainless_reference_matrix() {
        let f = gf(7);
        let reference: Vec<Vec<FieldElem>> = [
            [0, 6, 4, 1, 0, 0, 3],
            [0, 1, 0, 3, 0, 4, 6],
            [2, 0, 1, 2, 2, 0, 0],
            [5, 0, 5, 0, 6, 5, 0],
        ]
        .iter()
        .map(|r| r.iter().map(|&v| f.from_int(v)).collect())
        .collect();
        let a = FieldMatrix::new(f, reference).unwrap();
        assert_eq!(verify_mds(&a).unwrap(), MdsReport::Ok);
        assert_eq!(
            zero_pattern(&a),
            sys(7, &[&[1, 5, 6], &[1, 3, 5], &[2, 6, 7], &[2, 4, 7]])
        );
    }

    #[test]
    fn singular_subsets() {
        let f = gf(7);
        let grid: Vec<Vec<FieldElem>> = [[1, 2, 1, 3], [4, 5, 4, 6]]
            .iter()
            .map(|r| r.iter().map(|&v| f.from_int(v)).collect())
            .collect();
        let a = FieldMatrix::new(f.clone(), grid).unwrap();
        assert_eq!(
            verify_mds(&a).unwrap(),
            MdsReport::Singular { columns: vec![1, 3] }
        );
        let tall = FieldMatrix::new(f.clone(), vec![vec![f.one()], vec![f.one()]]).unwrap();
        assert!(matches!(verify_mds(&tall), Err(ConstructError::ShapeInvalid(_))));
        let ones = FieldMatrix::new(f.clone(), vec![vec![f.one(); 3]; 2]).unwrap();
        assert!(zero_pattern(&ones).sets().iter().all(Vec::is_empty));
    }

    #[test]
    fn field_det_matches_cofactor_oracle() {
        // 3x3 over GF(5) against the rule of Sarrus
        let f = gf(5);
        let v = [2, 3, 1, 4, 0, 2, 1, 1, 3];
        let mut a: Vec<FieldElem> = v.iter().map(|&x| f.from_int(x)).collect();
        let sarrus = v[0] * v[4] * v[8] + v[1] * v[5] * v[6] + v[2] * v[3] * v[7]
            - v[2] * v[4] * v[6]
            - v[1] * v[3] * v[8]
            - v[0] * v[5] * v[7];
        assert_eq!(field_det(&f, &mut a, 3), f.from_int(sarrus));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn matrix_doc_round_trip() {
        let f = gf(4);
        let a = construct_nested(&sys(3, &[&[1], &[]]), &f, &Points::Auto).unwrap();
        let doc = a.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.contains("[0,0]"));
        let back: MatrixDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(FieldMatrix::from_doc(&back).unwrap(), a);
        let prime: MatrixDoc = serde_json::from_str(r#"{"q":7,"k":1,"n":2,"rows":[[3,4]]}"#).unwrap();
        assert_eq!(rows(&FieldMatrix::from_doc(&prime).unwrap()), vec![vec![3, 4]]);
    }

    #[test]
    fn vieta_rows() {
        let p = &symbolic_polys(&sys(3, &[&[1, 2, 3]]))[0];
        assert_eq!(p.coeff(1), elementary_symmetric(3, &[1, 2, 3], 2).unwrap());
    }
}
