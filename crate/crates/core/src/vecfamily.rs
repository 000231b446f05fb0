//! Exponent-vector families `V ⊆ N^n`, the polynomial sets `P(k, V)` they
//! generate, the `V_l(k)` property, and exact independence testing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multipoly::{elementary_symmetric, MultiPoly, PolyError};
use crate::unipoly::{coefficient_matrix, SymUniPoly, UniPolyError};

/// Largest family size accepted by the subset enumeration of clause II.
pub const MAX_SUBSET_M: usize = 20;
/// Primes below this bound are tested against pivot contents.
const CAVEAT_PRIME_BOUND: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VecFamilyError {
    #[error("the subset is empty")]
    EmptySubset,
    #[error("index {index} is outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("vector {index} has {len} entries, expected {n}")]
    DimensionMismatch { index: usize, len: usize, n: usize },
    #[error("{m} vectors exceed the subset enumeration bound {max}")]
    TooManyVectors { m: usize, max: usize },
    #[error("level {l} exceeds the dimension {n}")]
    LevelTooHigh { l: usize, n: usize },
    #[error("vector {index} has weight {weight}, which needs k > {weight} (k = {k})")]
    WeightTooLarge { index: usize, weight: u64, k: usize },
    #[error("b = {0} is below the minimum 2")]
    BTooSmall(usize),
    #[error("invalid shape: {0}")]
    ShapeInvalid(String),
    #[error("property V(k) fails: {0}")]
    PropertyViolated(String),
    #[error("sweep would enumerate {needed} instances, above the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("polynomial {index} has degree {degree}, which does not fit {k} columns")]
    DegreeTooHigh { index: usize, degree: usize, k: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<UniPolyError> for VecFamilyError {
    fn from(e: UniPolyError) -> Self {
        match e {
            UniPolyError::DegreeTooHigh { index, degree, k } => {
                VecFamilyError::DegreeTooHigh { index, degree, k }
            }
            UniPolyError::Poly(p) => VecFamilyError::Poly(p),
        }
    }
}

/// The JSON form: `{"n": 3, "k": 4, "vectors": [[3,0,0], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VecSetDoc {
    pub n: usize,
    pub k: usize,
    pub vectors: Vec<Vec<u32>>,
}

/// An ordered family of `m` vectors in `N^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VecSet {
    n: usize,
    vectors: Vec<Vec<u32>>,
}

impl VecSet {
    pub fn new(n: usize, vectors: Vec<Vec<u32>>) -> Result<Self, VecFamilyError> {
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != n) {
            return Err(VecFamilyError::DimensionMismatch {
                index: i + 1,
                len: v.len(),
                n,
            });
        }
        Ok(VecSet { n, vectors })
    }

    /// Returns the family and the `k` recorded in the document.
    pub fn from_doc(doc: VecSetDoc) -> Result<(Self, usize), VecFamilyError> {
        Ok((Self::new(doc.n, doc.vectors)?, doc.k))
    }

    pub fn to_doc(&self, k: usize) -> VecSetDoc {
        VecSetDoc {
            n: self.n,
            k,
            vectors: self.vectors.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    /// `|v_i|` for 1-based `i`.
    pub fn weight(&self, i: usize) -> u64 {
        weight(&self.vectors[i - 1])
    }

    /// Coordinatewise minimum over the 1-based indices in `subset`.
    pub fn mu_min(&self, subset: &[usize]) -> Result<Vec<u32>, VecFamilyError> {
        let (&first, rest) = subset.split_first().ok_or(VecFamilyError::EmptySubset)?;
        let m = self.m();
        let get = |i: usize| {
            if i == 0 || i > m {
                Err(VecFamilyError::IndexOutOfRange { index: i, m })
            } else {
                Ok(&self.vectors[i - 1])
            }
        };
        let mut mu = get(first)?.clone();
        for &i in rest {
            for (a, b) in mu.iter_mut().zip(get(i)?) {
                *a = (*a).min(*b);
            }
        }
        Ok(mu)
    }

    fn mu_mask(&self, mask: u32) -> Vec<u32> {
        let mut mu: Option<Vec<u32>> = None;
        for (i, v) in self.vectors.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            match mu.as_mut() {
                None => mu = Some(v.clone()),
                Some(mu) => {
                    for (a, b) in mu.iter_mut().zip(v) {
                        *a = (*a).min(*b);
                    }
                }
            }
        }
        mu.unwrap_or_default()
    }

    /// `sum_{i in I} (k - |v_i|) + |mu(I)|` for every nonempty `I`, in bitmask order.
    fn subset_sums(&self, k: usize) -> Result<impl Iterator<Item = (u32, i64)> + '_, VecFamilyError> {
        let m = self.m();
        if m > MAX_SUBSET_M {
            return Err(VecFamilyError::TooManyVectors {
                m,
                max: MAX_SUBSET_M,
            });
        }
        let slack: Vec<i64> = self
            .vectors
            .iter()
            .map(|v| k as i64 - weight(v) as i64)
            .collect();
        Ok((1u32..(1u32 << m)).map(move |mask| {
            let s: i64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| slack[i]).sum();
            (mask, s + weight(&self.mu_mask(mask)) as i64)
        }))
    }
}

fn weight(v: &[u32]) -> u64 {
    v.iter().map(|&e| e as u64).sum()
}

fn mask_to_subset(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Outcome of [`check_vlk`]; clause failures carry a 1-based witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VlkReport {
    Ok,
    /// Clause I: `|v_index| > k - 1`.
    WeightTooLarge { index: usize, weight: u64 },
    /// Clause II: `sum_{i in I} (k - |v_i|) + |mu(I)| > k`.
    SubsetTooLarge { subset: Vec<usize>, value: i64 },
    /// Clause III: a coordinate among the first `n - l` exceeds 1.
    ShapeViolated {
        index: usize,
        coordinate: usize,
        value: u32,
    },
}

impl VlkReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, VlkReport::Ok)
    }

    /// `"I"`, `"II"` or `"III"` for failures.
    pub fn clause(&self) -> Option<&'static str> {
        match self {
            VlkReport::Ok => None,
            VlkReport::WeightTooLarge { .. } => Some("I"),
            VlkReport::SubsetTooLarge { .. } => Some("II"),
            VlkReport::ShapeViolated { .. } => Some("III"),
        }
    }
}

/// Clauses I and II only, i.e. the property `V(k)`.
pub fn check_vk(v: &VecSet, k: usize) -> Result<VlkReport, VecFamilyError> {
    for i in 1..=v.m() {
        let w = v.weight(i);
        if w + 1 > k as u64 {
            return Ok(VlkReport::WeightTooLarge { index: i, weight: w });
        }
    }
    for (mask, value) in v.subset_sums(k)? {
        if value > k as i64 {
            return Ok(VlkReport::SubsetTooLarge {
                subset: mask_to_subset(mask),
                value,
            });
        }
    }
    Ok(VlkReport::Ok)
}

/// Checks `V_l(k)`: clauses I, II and the shape `{0,1}^{n-l} x N^l`.
pub fn check_vlk(v: &VecSet, k: usize, l: usize) -> Result<VlkReport, VecFamilyError> {
    if l > v.n() {
        return Err(VecFamilyError::LevelTooHigh { l, n: v.n() });
    }
    let report = check_vk(v, k)?;
    if !report.is_ok() {
        return Ok(report);
    }
    Ok(shape_violation(v, l).unwrap_or(VlkReport::Ok))
}

fn shape_violation(v: &VecSet, l: usize) -> Option<VlkReport> {
    let free_from = v.n() - l;
    v.vectors.iter().enumerate().find_map(|(i, vec)| {
        vec[..free_from]
            .iter()
            .position(|&e| e > 1)
            .map(|c| VlkReport::ShapeViolated {
                index: i + 1,
                coordinate: c + 1,
                value: vec[c],
            })
    })
}

/// Smallest `l` for which `V_l(k)` holds.
pub fn min_level(v: &VecSet, k: usize) -> Result<Option<usize>, VecFamilyError> {
    if !check_vk(v, k)?.is_ok() {
        return Ok(None);
    }
    Ok((0..=v.n()).find(|&l| shape_violation(v, l).is_none()))
}

/// `P(k, V)` with the `(vector index, e)` pair behind each polynomial.
#[derive(Debug, Clone)]
pub struct PolySet {
    pub k: usize,
    pub nvars: usize,
    pub polys: Vec<SymUniPoly>,
    /// 1-based vector index and the power of `x`.
    pub provenance: Vec<(usize, usize)>,
}

impl PolySet {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// `prod_j (x - x_j)^{v(j)} * x^e` for `e = 0..k-1-|v|`, over every `v`.
pub fn gen_pkv(v: &VecSet, k: usize) -> Result<PolySet, VecFamilyError> {
    let nvars = v.n();
    let mut polys = Vec::new();
    let mut provenance = Vec::new();
    for (i, vec) in v.vectors.iter().enumerate() {
        let w = weight(vec);
        if w + 1 > k as u64 {
            return Err(VecFamilyError::WeightTooLarge {
                index: i + 1,
                weight: w,
                k,
            });
        }
        let roots: Vec<usize> = vec
            .iter()
            .enumerate()
            .flat_map(|(j, &e)| std::iter::repeat_n(j + 1, e as usize))
            .collect();
        let base = SymUniPoly::from_multiset(nvars, &roots)?;
        for e in 0..k - w as usize {
            polys.push(base.shift(e));
            provenance.push((i + 1, e));
        }
    }
    Ok(PolySet {
        k,
        nvars,
        polys,
        provenance,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub rank: usize,
    pub size: usize,
    pub independent: bool,
    /// Small primes dividing every coefficient of some elimination pivot; the
    /// rank may be smaller over fields of these characteristics.
    pub caveat_primes: Vec<u64>,
}

/// Rank of `C(P)` over the fraction field of `Z[x1..xN]`.
pub fn independence_rank(p: &PolySet) -> Result<IndependenceReport, VecFamilyError> {
    let info = coefficient_matrix(&p.polys, p.k)?.rank();
    let mut caveat_primes: Vec<u64> = info
        .pivots
        .iter()
        .flat_map(|piv| small_prime_factors(&piv.content()))
        .collect();
    caveat_primes.sort_unstable();
    caveat_primes.dedup();
    Ok(IndependenceReport {
        rank: info.rank,
        size: p.len(),
        independent: info.rank == p.len(),
        caveat_primes,
    })
}

fn small_prime_factors(n: &BigInt) -> Vec<u64> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    (2..CAVEAT_PRIME_BOUND)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .filter(|&p| (&n % p).is_zero())
        .collect()
}

/// `W_b`: `(2b-1) e_i` for `i < 2b` and the all-ones vector, in `N^{2b-1}`; `k = 2b`.
pub fn make_wb(b: usize) -> Result<VecSet, VecFamilyError> {
    if b < 2 {
        return Err(VecFamilyError::BTooSmall(b));
    }
    let n = 2 * b - 1;
    let mut vectors: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = n as u32;
            v
        })
        .collect();
    vectors.push(vec![1; n]);
    VecSet::new(n, vectors)
}

/// The four vectors `(1^{n-3}, 3, 0, 0)`, `(1^{n-3}, 0, 3, 0)`, `(1^{n-3}, 0, 0, 3)`
/// and `1^n`, for `n >= 3` and `k = n + 1`.
pub fn make_padded_family(n: usize, k: usize) -> Result<VecSet, VecFamilyError> {
    if n < 3 || k != n + 1 {
        return Err(VecFamilyError::ShapeInvalid(format!(
            "need n >= 3 and k = n + 1, got n = {n}, k = {k}"
        )));
    }
    let mut vectors: Vec<Vec<u32>> = (0..3)
        .map(|t| {
            let mut v = vec![1; n - 3];
            v.extend((0..3).map(|s| if s == t { 3 } else { 0 }));
            v
        })
        .collect();
    vectors.push(vec![1; n]);
    VecSet::new(n, vectors)
}

/// An integer null vector of `M = C(P(2b, W_b))`.
#[derive(Debug, Clone)]
pub struct NullCertificate {
    pub b: usize,
    pub c: Vec<BigInt>,
    /// `u(j) = c(j) e_{2b-j}` in `x_1..x_{2b-1}`.
    pub u: Vec<MultiPoly>,
    pub rank: usize,
    pub gcd_is_one: bool,
    pub annihilates: bool,
}

impl NullCertificate {
    pub fn verified(&self) -> bool {
        self.gcd_is_one && self.annihilates && self.rank < 2 * self.b
    }
}

/// `c(j) = lcm(C(2b-1, 0..b-1)) / C(2b-1, j-1)` for `j <= b`, mirrored above `b`.
pub fn certificate_coefficients(b: usize) -> Result<Vec<BigInt>, VecFamilyError> {
    if b < 2 {
        return Err(VecFamilyError::BTooSmall(b));
    }
    let top = BigInt::from(2 * b - 1);
    let binoms: Vec<BigInt> = (0..b)
        .map(|r| num_integer::binomial(top.clone(), BigInt::from(r)))
        .collect();
    let l = binoms.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    let half: Vec<BigInt> = binoms.iter().map(|x| &l / x).collect();
    Ok(half.iter().chain(half.iter().rev()).cloned().collect())
}

pub fn null_certificate(b: usize) -> Result<NullCertificate, VecFamilyError> {
    let c = certificate_coefficients(b)?;
    let w = make_wb(b)?;
    let (n, k) = (2 * b - 1, 2 * b);
    let vars: Vec<usize> = (1..=n).collect();
    let u = (1..=k)
        .map(|j| Ok(elementary_symmetric(n, &vars, k - j)?.scale(&c[j - 1])))
        .collect::<Result<Vec<_>, PolyError>>()?;
    let m = coefficient_matrix(&gen_pkv(&w, k)?.polys, k)?;
    let annihilates = m.mul_vec(&u)?.iter().all(MultiPoly::is_zero);
    let gcd_is_one = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).is_one();
    Ok(NullCertificate {
        b,
        c,
        u,
        rank: m.rank().rank,
        gcd_is_one,
        annihilates,
    })
}

/// All nonempty `I` (1-based, bitmask order) with equality in clause II.
pub fn tight_sets(v: &VecSet, k: usize) -> Result<Vec<Vec<usize>>, VecFamilyError> {
    let report = check_vk(v, k)?;
    if !report.is_ok() {
        return Err(VecFamilyError::PropertyViolated(format!("{report:?}")));
    }
    Ok(v
        .subset_sums(k)?
        .filter(|&(_, s)| s == k as i64)
        .map(|(mask, _)| mask_to_subset(mask))
        .collect())
}

/// Bounds for [`exhaustive_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub m_max: usize,
    /// Coordinates that may exceed 1 (the last `level` ones; capped at `n`).
    pub level: usize,
    /// Largest entry; `None` means `k - 1`.
    pub entry_cap: Option<u32>,
    /// Upper bound on enumerated families.
    pub budget: u128,
}

impl SweepConfig {
    pub const DEFAULT_BUDGET: u128 = 2_000_000;

    pub fn new(k_max: usize, n_max: usize, m_max: usize) -> Self {
        SweepConfig {
            k_min: 1,
            k_max,
            n_min: 1,
            n_max,
            m_max,
            level: 2,
            entry_cap: None,
            budget: Self::DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeStats {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub instances: usize,
    pub satisfying: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepViolation {
    pub n: usize,
    pub k: usize,
    pub vectors: Vec<Vec<u32>>,
    pub rank: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub instances: usize,
    pub satisfying: usize,
    pub violations: Vec<SweepViolation>,
    pub shapes: Vec<ShapeStats>,
}

/// Vectors in `{0,1}^{n-l} x {0..cap}^l` of weight at most `k - 1`, by (weight, lex).
fn candidate_vectors(n: usize, k: usize, level: usize, cap: u32) -> Vec<Vec<u32>> {
    let bounds: Vec<u32> = (0..n).map(|j| if j < n - level { 1 } else { cap }).collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if weight(&cur) < k as u64 {
            out.push(cur.clone());
        }
        let Some(j) = (0..n).rev().find(|&j| cur[j] < bounds[j]) else {
            break;
        };
        cur[j] += 1;
        cur[j + 1..].iter_mut().for_each(|c| *c = 0);
    }
    out.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)));
    out
}

fn binomial_u128(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn subsets_of(count: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    if m > count {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < count - m + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Enumerates every family of `m` distinct vectors within the bounds, keeps
/// those satisfying `V_l(k)`, and reports any whose `P(k, V)` is dependent.
pub fn exhaustive_check(cfg: &SweepConfig) -> Result<SweepReport, VecFamilyError> {
    let mut plan = Vec::new();
    let mut needed: u128 = 0;
    for n in cfg.n_min.max(1)..=cfg.n_max {
        let level = cfg.level.min(n);
        for k in cfg.k_min.max(1)..=cfg.k_max {
            let cap = cfg.entry_cap.unwrap_or(k as u32 - 1);
            let cands = candidate_vectors(n, k, level, cap);
            for m in 1..=cfg.m_max {
                needed = needed.saturating_add(binomial_u128(cands.len(), m));
            }
            plan.push((n, k, level, cands));
        }
    }
    if needed > cfg.budget {
        return Err(VecFamilyError::BudgetExceeded {
            needed,
            budget: cfg.budget,
        });
    }

    let mut report = SweepReport {
        config: cfg.clone(),
        instances: 0,
        satisfying: 0,
        violations: Vec::new(),
        shapes: Vec::new(),
    };
    for (n, k, level, cands) in &plan {
        for m in 1..=cfg.m_max {
            let mut families = subsets_of(cands.len(), m);
            families.sort_by_key(|f| f.iter().map(|&i| weight(&cands[i])).sum::<u64>());
            let outcomes: Vec<Result<Option<Option<SweepViolation>>, VecFamilyError>> = families
                .par_iter()
                .map(|f| {
                    let vs = VecSet::new(*n, f.iter().map(|&i| cands[i].clone()).collect())?;
                    if !check_vlk(&vs, *k, *level)?.is_ok() {
                        return Ok(None);
                    }
                    let ind = independence_rank(&gen_pkv(&vs, *k)?)?;
                    Ok(Some((!ind.independent).then_some(SweepViolation {
                        n: *n,
                        k: *k,
                        vectors: vs.vectors,
                        rank: ind.rank,
                        size: ind.size,
                    })))
                })
                .collect();
            let mut stats = ShapeStats {
                n: *n,
                k: *k,
                m,
                instances: families.len(),
                satisfying: 0,
                violations: 0,
            };
            for o in outcomes {
                if let Some(v) = o? {
                    stats.satisfying += 1;
                    if let Some(v) = v {
                        stats.violations += 1;
                        report.violations.push(v);
                    }
                }
            }
            report.instances += stats.instances;
            report.satisfying += stats.satisfying;
            report.shapes.push(stats);
        }
    }
    Ok(report)
}

/// Renders `c` as decimal strings, as used in JSON output.
pub fn decimal_strings(c: &[BigInt]) -> Vec<String> {
    c.iter().map(|x| x.to_string()).collect()
}

/// `c` as `u64` when every entry fits.
pub fn small_coefficients(c: &[BigInt]) -> Option<Vec<u64>> {
    c.iter().map(|x| x.to_u64()).collect()
}
