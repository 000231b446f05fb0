#![allow(dead_code, clippy::needless_range_loop)]

use cmds_core::construct::WitnessChain;
use cmds_core::field::{FieldCtx, FieldElem};
use cmds_core::vecfamily::VecSet;
use cmds_core::multipoly::{MultiPoly, PolyMatrix};
use cmds_core::setsystem::{MdsConditionReport, NestedChainReport, SetSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const PRIME_POWERS_TO_16: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A multiset system built around a random chain `xi`, so that the chain is
/// valid by construction: `S_i = T_i ⊎ (up to i-1 random extras)`.
pub fn random_witness_system(
    rng: &mut StdRng,
    k_max: usize,
    n_max: usize,
) -> (SetSystem, WitnessChain) {
    let k = rng.gen_range(1..=k_max);
    let n = rng.gen_range(1..=n_max);
    let xi: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(1..=n)).collect();
    let sets = (1..=k)
        .map(|i| {
            let mut s = xi[..k - i].to_vec();
            let extra = rng.gen_range(0..i);
            s.extend((0..extra).map(|_| rng.gen_range(1..=n)));
            s
        })
        .collect();
    (
        SetSystem::new(n, sets).unwrap(),
        WitnessChain::new(xi),
    )
}

/// A plain set system with `k <= n` meeting the nested-chain and MDS-condition hypotheses.
pub fn random_nested_system(rng: &mut StdRng, k_max: usize, n_max: usize) -> SetSystem {
    loop {
        let k = rng.gen_range(1..=k_max);
        let n = rng.gen_range(k..=n_max);
        let mut ground: Vec<usize> = (1..=n).collect();
        ground.shuffle(rng);
        let xi = &ground[..k - 1];
        let sets: Vec<Vec<usize>> = (1..=k)
            .map(|i| {
                let mut s: Vec<usize> = xi[..k - i].to_vec();
                let extra = rng.gen_range(0..i);
                let mut rest: Vec<usize> = (1..=n).filter(|e| !s.contains(e)).collect();
                rest.shuffle(rng);
                s.extend(rest.into_iter().take(extra));
                s
            })
            .collect();
        let s = SetSystem::new(n, sets).unwrap();
        if matches!(s.check_nested_chain(), NestedChainReport::Ok { .. })
            && s.check_mds_condition().unwrap() == MdsConditionReport::Ok
        {
            return s;
        }
    }
}

/// A plain set system with `|S_i| <= i - 1` and `k <= n`.
pub fn random_staircase_system(rng: &mut StdRng, k_max: usize, n_max: usize) -> SetSystem {
    let k = rng.gen_range(1..=k_max);
    let n = rng.gen_range(k..=n_max);
    let sets = (1..=k)
        .map(|i| {
            let size = rng.gen_range(0..i).min(n);
            let mut all: Vec<usize> = (1..=n).collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        })
        .collect();
    SetSystem::new(n, sets).unwrap()
}

/// `count` distinct elements of the field in random order.
pub fn shuffled_points(rng: &mut StdRng, ctx: &FieldCtx, count: usize) -> Vec<FieldElem> {
    let mut all = ctx.enumerate(ctx.order() as usize).unwrap();
    all.shuffle(rng);
    all.truncate(count);
    all
}

pub fn random_vecset(rng: &mut StdRng, n: usize, m: usize, max_entry: u32) -> VecSet {
    let vectors = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max_entry)).collect())
        .collect();
    VecSet::new(n, vectors).unwrap()
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Evaluates at rational values of `x_1..x_N`.
pub fn eval_rational(p: &MultiPoly, at: &[BigRational]) -> BigRational {
    p.terms()
        .map(|(exps, c)| {
            exps.iter()
                .zip(at)
                .fold(BigRational::from_integer(c), |acc, (&e, v)| {
                    acc * num_traits::pow(v.clone(), e as usize)
                })
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn eval_matrix(m: &PolyMatrix, at: &[BigRational]) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|p| eval_rational(p, at)).collect())
        .collect()
}

/// Gaussian elimination over Q.
pub fn rational_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            let f = &a[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &a[rank][j] * &f;
                a[r][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            let f = &a[r][c] / &pivot;
            for j in c..n {
                let v = &a[c][j] * &f;
                a[r][j] -= v;
            }
        }
    }
    det
}
