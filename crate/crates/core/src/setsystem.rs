//! Set systems `S_1..S_k` over the ground set `[n]`: the MDS condition,
//! the nested-intersection and staircase hypotheses, and row reordering.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `k` accepted by the exhaustive order search.
pub const MAX_ORDER_SEARCH_K: usize = 12;
/// Largest `k` accepted by the subset enumeration of the MDS condition.
pub const MAX_MDS_CHECK_K: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetSystemError {
    #[error("set {set} contains {element}, outside the ground set 1..={n}")]
    ElementOutOfRange { set: usize, element: usize, n: usize },
    #[error("k = {k} but {len} sets were given")]
    CountMismatch { k: usize, len: usize },
    #[error("set {set} repeats an element; only plain sets are allowed here")]
    MultisetNotAllowed { set: usize },
    #[error("k = {k} exceeds the search bound {max}")]
    TooLarge { k: usize, max: usize },
    #[error("|S_{index}| = {size} exceeds {index} - 1")]
    StaircaseViolated { index: usize, size: usize },
}

/// The JSON form: `{"n": 7, "k": 4, "sets": [[1,2,3], ...]}` with 1-based elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemDoc {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

/// `k` multisets over `[n]`, each stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MdsConditionReport {
    Ok,
    /// `subset` is 1-based; `|subset| + intersection > k`.
    Violated { subset: Vec<usize>, intersection: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestedChainReport {
    /// Sizes of `S_1 ∩ .. ∩ S_i` for `i = 1..=k`.
    Ok { sizes: Vec<usize> },
    /// The first 1-based `index` whose running intersection has the wrong size.
    Failed { index: usize, size: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderMode {
    Nested,
    Staircase,
}

impl SetSystem {
    pub fn new(n: usize, mut sets: Vec<Vec<usize>>) -> Result<Self, SetSystemError> {
        for (i, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            if let Some(&e) = s.iter().find(|&&e| e == 0 || e > n) {
                return Err(SetSystemError::ElementOutOfRange {
                    set: i + 1,
                    element: e,
                    n,
                });
            }
        }
        Ok(SetSystem { n, sets })
    }

    pub fn from_doc(doc: SetSystemDoc) -> Result<Self, SetSystemError> {
        if doc.k != doc.sets.len() {
            return Err(SetSystemError::CountMismatch {
                k: doc.k,
                len: doc.sets.len(),
            });
        }
        Self::new(doc.n, doc.sets)
    }

    pub fn to_doc(&self) -> SetSystemDoc {
        SetSystemDoc {
            n: self.n,
            k: self.k(),
            sets: self.sets.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// The `i`-th set, 1-based.
    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i - 1]
    }

    pub fn is_plain(&self) -> bool {
        self.first_multiset().is_none()
    }

    fn first_multiset(&self) -> Option<usize> {
        self.sets
            .iter()
            .position(|s| s.windows(2).any(|w| w[0] == w[1]))
            .map(|i| i + 1)
    }

    pub fn require_plain(&self) -> Result<(), SetSystemError> {
        match self.first_multiset() {
            Some(set) => Err(SetSystemError::MultisetNotAllowed { set }),
            None => Ok(()),
        }
    }

    /// Rows reordered so that row `i` is the old row `perm[i]` (1-based).
    pub fn permuted(&self, perm: &[usize]) -> SetSystem {
        SetSystem {
            n: self.n,
            sets: perm.iter().map(|&p| self.sets[p - 1].clone()).collect(),
        }
    }

    /// Checks `|I| + |∩_{i∈I} S_i| ≤ k` for every nonempty `I ⊆ [k]`.
    /// Subsets are scanned in increasing bitmask order (bit `i-1` for row `i`).
    pub fn check_mds_condition(&self) -> Result<MdsConditionReport, SetSystemError> {
        self.require_plain()?;
        let k = self.k();
        if k > MAX_MDS_CHECK_K {
            return Err(SetSystemError::TooLarge {
                k,
                max: MAX_MDS_CHECK_K,
            });
        }
        let bits: Vec<Bitset> = self.sets.iter().map(|s| Bitset::from_elems(self.n, s)).collect();
        for mask in 1u32..(1u32 << k) {
            let size = mask.count_ones() as usize;
            let mut rows = (0..k).filter(|&i| mask >> i & 1 == 1);
            let mut acc = bits[rows.next().expect("nonempty mask")].clone();
            for i in rows {
                acc.intersect(&bits[i]);
            }
            let inter = acc.count();
            if size + inter > k {
                return Ok(MdsConditionReport::Violated {
                    subset: (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
                    intersection: inter,
                });
            }
        }
        Ok(MdsConditionReport::Ok)
    }

    /// Checks `|S_1 ∩ .. ∩ S_i| = k - i` for `i = 1..=k` in the given order.
    /// Intersections are taken with multiplicity.
    pub fn check_nested_chain(&self) -> NestedChainReport {
        let k = self.k();
        let mut sizes = Vec::with_capacity(k);
        let mut acc: Option<Vec<usize>> = None;
        for (i, s) in self.sets.iter().enumerate() {
            let cur = match acc {
                None => s.clone(),
                Some(a) => multiset_intersection(&a, s),
            };
            let expected = k - (i + 1);
            if cur.len() != expected {
                return NestedChainReport::Failed {
                    index: i + 1,
                    size: cur.len(),
                    expected,
                };
            }
            sizes.push(cur.len());
            acc = Some(cur);
        }
        NestedChainReport::Ok { sizes }
    }

    /// `|S_i| ≤ i - 1` for every `i`.
    pub fn is_staircase(&self) -> bool {
        self.staircase_violation().is_none()
    }

    fn staircase_violation(&self) -> Option<(usize, usize)> {
        self.sets
            .iter()
            .enumerate()
            .find(|(i, s)| s.len() > *i)
            .map(|(i, s)| (i + 1, s.len()))
    }

    /// A 1-based permutation under which the chosen hypothesis holds.
    pub fn find_construction_order(
        &self,
        mode: OrderMode,
    ) -> Result<Option<Vec<usize>>, SetSystemError> {
        let k = self.k();
        if k > MAX_ORDER_SEARCH_K {
            return Err(SetSystemError::TooLarge {
                k,
                max: MAX_ORDER_SEARCH_K,
            });
        }
        let mut by_size: Vec<usize> = (1..=k).collect();
        match mode {
            OrderMode::Staircase => {
                by_size.sort_by_key(|&i| self.sets[i - 1].len());
                Ok(self.permuted(&by_size).is_staircase().then_some(by_size))
            }
            OrderMode::Nested => {
                by_size.sort_by_key(|&i| std::cmp::Reverse(self.sets[i - 1].len()));
                let mut used = vec![false; k];
                let mut perm = Vec::with_capacity(k);
                Ok(self
                    .nested_search(&by_size, &mut used, &mut perm, None)
                    .then_some(perm))
            }
        }
    }

    fn nested_search(
        &self,
        candidates: &[usize],
        used: &mut [bool],
        perm: &mut Vec<usize>,
        acc: Option<&[usize]>,
    ) -> bool {
        let k = self.k();
        if perm.len() == k {
            return true;
        }
        let expected = k - perm.len() - 1;
        for &c in candidates {
            if used[c - 1] {
                continue;
            }
            let s = &self.sets[c - 1];
            if s.len() < expected {
                // candidates are sorted by decreasing size
                break;
            }
            let next = match acc {
                None => s.clone(),
                Some(a) => multiset_intersection(a, s),
            };
            if next.len() != expected {
                continue;
            }
            used[c - 1] = true;
            perm.push(c);
            if self.nested_search(candidates, used, perm, Some(&next)) {
                return true;
            }
            perm.pop();
            used[c - 1] = false;
        }
        false
    }

    /// `U_i = S_i ⊎ {n+1}^(k-i)` over the ground set `[n+1]`.
    pub fn pad_to_u(&self) -> Result<SetSystem, SetSystemError> {
        if let Some((index, size)) = self.staircase_violation() {
            return Err(SetSystemError::StaircaseViolated { index, size });
        }
        let k = self.k();
        let pad = self.n + 1;
        let sets = self
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut u = s.clone();
                u.extend(std::iter::repeat_n(pad, k - i - 1));
                u
            })
            .collect();
        Ok(SetSystem { n: pad, sets })
    }
}

/// Intersection of two sorted multisets, keeping the smaller multiplicity.
pub fn multiset_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn from_elems(n: usize, elems: &[usize]) -> Self {
        let mut words = vec![0u64; n.div_ceil(64).max(1)];
        for &e in elems {
            words[(e - 1) / 64] |= 1 << ((e - 1) % 64);
        }
        Bitset(words)
    }

    fn intersect(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn nested_fixture() -> SetSystem {
        sys(7, &[&[1, 2, 3], &[1, 2, 6], &[1, 5, 7], &[3, 4, 5]])
    }

    fn staircase_fixture() -> SetSystem {
        sys(6, &[&[], &[3], &[2, 5], &[1, 4, 6]])
    }

    fn chainless_fixture() -> SetSystem {
        sys(7, &[&[1, 5, 6], &[1, 3, 5], &[2, 6, 7], &[2, 4, 7]])
    }

    #[test]
    fn mds_condition() {
        assert_eq!(nested_fixture().check_mds_condition(), Ok(MdsConditionReport::Ok));
        assert_eq!(chainless_fixture().check_mds_condition(), Ok(MdsConditionReport::Ok));
        assert_eq!(sys(4, &[&[], &[], &[]]).check_mds_condition(), Ok(MdsConditionReport::Ok));
        let dup = sys(3, &[&[1, 2, 3], &[1, 2, 3], &[]]);
        // {1} is the first violator by bitmask; {1,2} violates as well
        assert_eq!(
            dup.check_mds_condition(),
            Ok(MdsConditionReport::Violated {
                subset: vec![1],
                intersection: 3
            })
        );
        let pair = sys(3, &[&[1, 2], &[1, 2], &[3]]);
        assert_eq!(
            pair.check_mds_condition(),
            Ok(MdsConditionReport::Violated {
                subset: vec![1, 2],
                intersection: 2
            })
        );
        assert_eq!(
            sys(3, &[&[1, 1], &[]]).check_mds_condition(),
            Err(SetSystemError::MultisetNotAllowed { set: 1 })
        );
    }

    #[test]
    fn nested_chain() {
        assert_eq!(
            nested_fixture().check_nested_chain(),
            NestedChainReport::Ok {
                sizes: vec![3, 2, 1, 0]
            }
        );
        assert_eq!(
            sys(1, &[&[1], &[1]]).check_nested_chain(),
            NestedChainReport::Failed {
                index: 2,
                size: 1,
                expected: 0
            }
        );
        assert_eq!(
            sys(1, &[&[]]).check_nested_chain(),
            NestedChainReport::Ok { sizes: vec![0] }
        );
    }

    #[test]
    fn construction_orders() {
        let rev = staircase_fixture().permuted(&[4, 3, 2, 1]);
        assert_eq!(
            rev.find_construction_order(OrderMode::Staircase),
            Ok(Some(vec![4, 3, 2, 1]))
        );
        assert_eq!(
            nested_fixture().find_construction_order(OrderMode::Nested),
            Ok(Some(vec![1, 2, 3, 4]))
        );
        assert_eq!(chainless_fixture().find_construction_order(OrderMode::Nested), Ok(None));
        let shuffled = nested_fixture().permuted(&[3, 1, 4, 2]);
        let perm = shuffled
            .find_construction_order(OrderMode::Nested)
            .unwrap()
            .unwrap();
        assert!(matches!(
            shuffled.permuted(&perm).check_nested_chain(),
            NestedChainReport::Ok { .. }
        ));
        let big = SetSystem::new(1, vec![vec![]; 13]).unwrap();
        assert_eq!(
            big.find_construction_order(OrderMode::Staircase),
            Err(SetSystemError::TooLarge { k: 13, max: 12 })
        );
    }

    #[test]
    fn padding() {
        let u = staircase_fixture().pad_to_u().unwrap();
        assert_eq!(u.n(), 7);
        assert_eq!(
            u.sets(),
            &[vec![7, 7, 7], vec![3, 7, 7], vec![2, 5, 7], vec![1, 4, 6]]
        );
        assert_eq!(sys(1, &[&[]]).pad_to_u().unwrap().sets(), &[Vec::<usize>::new()]);
        let u = sys(1, &[&[], &[1]]).pad_to_u().unwrap();
        assert_eq!(u.sets(), &[vec![2], vec![1]]);
        assert_eq!(
            nested_fixture().pad_to_u(),
            Err(SetSystemError::StaircaseViolated { index: 1, size: 3 })
        );
    }

    #[test]
    fn validation_and_doc() {
        assert_eq!(
            SetSystem::new(3, vec![vec![4]]),
            Err(SetSystemError::ElementOutOfRange {
                set: 1,
                element: 4,
                n: 3
            })
        );
        let doc: SetSystemDoc =
            serde_json::from_str(r#"{"n":7,"k":4,"sets":[[3,2,1],[1,2,6],[1,5,7],[3,4,5]]}"#)
                .unwrap();
        let s = SetSystem::from_doc(doc).unwrap();
        assert_eq!(s, nested_fixture());
        assert_eq!(s.to_doc().sets[0], vec![1, 2, 3]);
        let bad = SetSystemDoc {
            n: 2,
            k: 2,
            sets: vec![vec![]],
        };
        assert_eq!(
            SetSystem::from_doc(bad),
            Err(SetSystemError::CountMismatch { k: 2, len: 1 })
        );
    }

    fn staircase_system() -> impl Strategy<Value = SetSystem> {
        (1usize..=6, 1usize..=9).prop_flat_map(|(k, n)| {
            let sets: Vec<_> = (0..k)
                .map(|i| proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 0..=i.min(n)))
                .collect();
            sets.prop_map(move |sets| SetSystem::new(n, sets).unwrap())
        })
    }

    fn any_system() -> impl Strategy<Value = SetSystem> {
        (1usize..=6, 1usize..=7).prop_flat_map(|(k, n)| {
            proptest::collection::vec(
                proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 0..=n),
                k,
            )
            .prop_map(move |sets| SetSystem::new(n, sets).unwrap())
        })
    }

    proptest! {
        #[test]
        fn staircase_implies_mds_condition(s in staircase_system()) {
            prop_assert_eq!(s.check_mds_condition().unwrap(), MdsConditionReport::Ok);
        }

        #[test]
        fn padded_running_intersections(s in staircase_system()) {
            let u = s.pad_to_u().unwrap();
            let pad = s.n() + 1;
            let mut acc = u.set(1).to_vec();
            for i in 1..=s.k() {
                acc = multiset_intersection(&acc, u.set(i));
                prop_assert_eq!(&acc, &vec![pad; s.k() - i]);
                prop_assert!(u.set(i).len() < s.k().max(1));
            }
        }

        #[test]
        fn nested_ok_bounds_set_sizes(s in any_system()) {
            if let NestedChainReport::Ok { .. } = s.check_nested_chain() {
                for i in 1..=s.k() {
                    prop_assert!(s.set(i).len() >= s.k() - i);
                }
            }
        }

        #[test]
        fn found_orders_satisfy_their_mode(s in any_system()) {
            if let Some(p) = s.find_construction_order(OrderMode::Nested).unwrap() {
                let is_ok = matches!(s.permuted(&p).check_nested_chain(), NestedChainReport::Ok { .. });
                prop_assert!(is_ok);
            }
            if let Some(p) = s.find_construction_order(OrderMode::Staircase).unwrap() {
                prop_assert!(s.permuted(&p).is_staircase());
            }
        }

        #[test]
        fn nested_search_is_complete(s in any_system()) {
            // brute force over all permutations for small k
            prop_assume!(s.k() <= 5);
            let found = s.find_construction_order(OrderMode::Nested).unwrap().is_some();
            let mut perm: Vec<usize> = (1..=s.k()).collect();
            let mut exists = false;
            permute(&mut perm, 0, &mut |p| {
                if matches!(s.permuted(p).check_nested_chain(), NestedChainReport::Ok { .. }) {
                    exists = true;
                }
            });
            prop_assert_eq!(found, exists);
        }
    }

    fn permute(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
        if start == v.len() {
            f(v);
            return;
        }
        for i in start..v.len() {
            v.swap(start, i);
            permute(v, start + 1, f);
            v.swap(start, i);
        }
    }
}
