//! Restoration functions computed bottom-up, without running the abacus.
//!
//! For the subtree `T_k` rooted at `k` with children `c_1..c_m`:
//!
//! * `R(k) = 1` for a leaf, otherwise `lcm(P(T_c1), ..., P(T_cm))`;
//! * `P(T_k) = (m + 2) R(k) - sum_i R_{T_k}(c_i)`, which is 2 for a leaf;
//! * a vertex `w` inside `T_c` has `R_{T_k}(w) = R(k) / P(T_c) * R_{T_c}(w)`.
//!
//! The first two are filled in post-order into a [`PeriodCache`]; the third
//! is applied top-down as a running scale factor per vertex.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::tree::{RootedTree, VertexId};

pub type ExactRational = BigRational;

/// `R_T(v)` for every vertex, plus their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestorationTable {
    values: Vec<BigUint>,
    total: BigUint,
}

impl RestorationTable {
    /// Panics if `values` is empty or holds a zero.
    pub fn new(values: Vec<BigUint>) -> Self {
        assert!(!values.is_empty(), "restoration table needs a vertex");
        assert!(
            values.iter().all(|v| !v.is_zero()),
            "restoration values are positive"
        );
        let total = values.iter().sum();
        RestorationTable { values, total }
    }

    pub fn get(&self, v: VertexId) -> Option<&BigUint> {
        self.values.get((v as usize).checked_sub(1)?)
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// `(vertex, value)` in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &BigUint)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, r)| (i as VertexId + 1, r))
    }
}

/// Local restoration numbers and periods of every subtree, keyed by the
/// subtree's root.
#[derive(Debug, Clone, Default)]
pub struct PeriodCache {
    local_restoration: Vec<Option<BigUint>>,
    period: Vec<Option<BigUint>>,
}

impl PeriodCache {
    pub fn new(n: usize) -> Self {
        PeriodCache {
            local_restoration: vec![None; n],
            period: vec![None; n],
        }
    }

    /// Fills every entry of `tree` in post-order.
    pub fn build(tree: &RootedTree) -> Self {
        let mut cache = PeriodCache::new(tree.len());
        for k in tree.post_order() {
            cache.fill(tree, k);
        }
        cache
    }

    /// Computes and stores `R` and `P` for the subtree at `k`. Children must
    /// already be filled.
    pub fn fill(&mut self, tree: &RootedTree, k: VertexId) {
        let r = subtree_restoration_at_root(tree, k, self);
        self.local_restoration[k as usize - 1] = Some(r);
        let p = subtree_period(tree, k, self);
        self.period[k as usize - 1] = Some(p);
    }

    /// `R(T_k)`: the restoration number of the subtree rooted at `k`.
    pub fn local_restoration(&self, k: VertexId) -> Option<&BigUint> {
        self.local_restoration.get(k as usize - 1)?.as_ref()
    }

    /// `P(T_k)`.
    pub fn period(&self, k: VertexId) -> Option<&BigUint> {
        self.period.get(k as usize - 1)?.as_ref()
    }

    fn expect_period(&self, k: VertexId) -> &BigUint {
        self.period(k)
            .unwrap_or_else(|| panic!("period of subtree {k} requested before it was computed"))
    }

    fn expect_local(&self, k: VertexId) -> &BigUint {
        self.local_restoration(k).unwrap_or_else(|| {
            panic!("restoration of subtree {k} requested before it was computed")
        })
    }
}

/// `R(T_k)`: 1 at a leaf, else the lcm of the children's periods folded in
/// ascending child order. Children's periods must be cached.
pub fn subtree_restoration_at_root(tree: &RootedTree, k: VertexId, cache: &PeriodCache) -> BigUint {
    let children = tree.children(k).expect("vertex in range");
    let Some((&first, rest)) = children.split_first() else {
        return BigUint::one();
    };
    rest.iter()
        .fold(cache.expect_period(first).clone(), |acc, &c| {
            lcm(&acc, cache.expect_period(c))
        })
}

/// `a * b / gcd(a, b)`. One Euclid step first: num's binary gcd is slow when
/// the operands differ greatly in size, as a leaf's period 2 and a long
/// path's period do.
fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    let (large, small) = if a >= b { (a, b) } else { (b, a) };
    if small.is_zero() {
        return BigUint::zero();
    }
    let g = small.gcd(&(large % small));
    large / g * small
}

/// `P(T_k) = (m + 2) R(k) - sum_i R_{T_k}(c_i)`. Needs `R` cached at `k`
/// and both `R` and `P` cached at each child.
pub fn subtree_period(tree: &RootedTree, k: VertexId, cache: &PeriodCache) -> BigUint {
    let children = tree.children(k).expect("vertex in range");
    let r_k = cache.expect_local(k);
    let gross = r_k * BigUint::from(children.len() + 2);
    let from_children: BigUint = children
        .iter()
        .map(|&c| scale_factor(r_k, cache.expect_period(c)) * cache.expect_local(c))
        .sum();
    gross - from_children
}

/// `R(parent) / P(child)`. The period always divides the lcm it came from;
/// a remainder means the cache is corrupt.
fn scale_factor(parent_restoration: &BigUint, child_period: &BigUint) -> BigUint {
    let (q, r) = parent_restoration.div_rem(child_period);
    assert!(
        r.is_zero(),
        "period {child_period} does not divide restoration number {parent_restoration}"
    );
    q
}

/// The full restoration function of `tree`.
pub fn restoration_full(tree: &RootedTree) -> RestorationTable {
    let cache = PeriodCache::build(tree);
    restoration_from_cache(tree, &cache)
}

pub fn restoration_from_cache(tree: &RootedTree, cache: &PeriodCache) -> RestorationTable {
    let n = tree.len();
    // scale[v] turns R_{T_v} values into R_T values.
    let mut scale: Vec<BigUint> = vec![BigUint::zero(); n];
    let mut values: Vec<BigUint> = vec![BigUint::zero(); n];
    scale[tree.root() as usize - 1] = BigUint::one();
    for v in tree.pre_order() {
        let vi = v as usize - 1;
        let r_v = cache.expect_local(v);
        values[vi] = &scale[vi] * r_v;
        for &c in tree.children(v).expect("vertex in range") {
            let factor = scale_factor(r_v, cache.expect_period(c));
            scale[c as usize - 1] = &scale[vi] * factor;
        }
    }
    RestorationTable::new(values)
}

/// Win probability of each vertex when the buck starts at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinDistribution {
    probabilities: Vec<ExactRational>,
}

impl WinDistribution {
    pub fn from_probabilities(probabilities: Vec<ExactRational>) -> Self {
        WinDistribution { probabilities }
    }

    pub fn get(&self, v: VertexId) -> Option<&ExactRational> {
        self.probabilities.get((v as usize).checked_sub(1)?)
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn as_slice(&self) -> &[ExactRational] {
        &self.probabilities
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &ExactRational)> {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(i, p)| (i as VertexId + 1, p))
    }

    pub fn sum(&self) -> ExactRational {
        self.probabilities.iter().sum()
    }
}

pub fn win_probabilities(table: &RestorationTable) -> WinDistribution {
    let total = BigInt::from(table.total().clone());
    let probabilities = table
        .values()
        .iter()
        .map(|r| BigRational::new(r.clone().into(), total.clone()))
        .collect();
    WinDistribution { probabilities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::EdgeList;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn test1() -> RootedTree {
        RootedTree::from_parents(vec![4, 4, 4, 8, 6, 7, 8, 0]).unwrap()
    }

    #[test]
    fn leaf_base_case() {
        let t = RootedTree::single();
        let cache = PeriodCache::build(&t);
        assert_eq!(subtree_restoration_at_root(&t, 1, &cache), big(1));
        assert_eq!(subtree_period(&t, 1, &cache), big(2));
        assert_eq!(restoration_full(&t).values(), &[big(1)]);
    }

    #[test]
    fn three_leaf_star() {
        let t = RootedTree::star(4).unwrap();
        let cache = PeriodCache::build(&t);
        assert_eq!(subtree_restoration_at_root(&t, 1, &cache), big(2));
        assert_eq!(subtree_period(&t, 1, &cache), big(7));
        assert_eq!(
            restoration_full(&t).values(),
            &[big(2), big(1), big(1), big(1)]
        );
    }

    #[test]
    fn three_path() {
        let t = RootedTree::path(3).unwrap();
        let cache = PeriodCache::build(&t);
        assert_eq!(cache.period(1), Some(&big(13)));
        assert_eq!(restoration_full(&t).values(), &[big(5), big(2), big(1)]);
    }

    #[test]
    fn test1_table() {
        let t = test1();
        let cache = PeriodCache::build(&t);
        assert_eq!(cache.period(4), Some(&big(7)));
        assert_eq!(cache.period(7), Some(&big(13)));
        assert_eq!(subtree_restoration_at_root(&t, 8, &cache), big(91));
        let table = restoration_from_cache(&t, &cache);
        let want: Vec<_> = [13u64, 13, 13, 26, 7, 14, 35, 91]
            .into_iter()
            .map(big)
            .collect();
        assert_eq!(table.values(), &want[..]);
        assert_eq!(table.total(), &big(212));
        let dist = win_probabilities(&table);
        assert_eq!(dist.get(8), Some(&BigRational::new(91.into(), 212.into())));
        assert_eq!(dist.get(4), Some(&BigRational::new(13.into(), 106.into())));
        assert!(dist.sum().is_one());
    }

    #[test]
    fn two_vertex_path() {
        let t = RootedTree::from_edge_list(&EdgeList::new(vec![(1, 2)], 1)).unwrap();
        let dist = win_probabilities(&restoration_full(&t));
        assert_eq!(dist.get(1), Some(&BigRational::new(2.into(), 3.into())));
        assert_eq!(dist.get(2), Some(&BigRational::new(1.into(), 3.into())));
        assert_eq!(
            win_probabilities(&restoration_full(&RootedTree::single())).get(1),
            Some(&BigRational::one())
        );
    }

    #[test]
    #[should_panic(expected = "before it was computed")]
    fn missing_child_period_panics() {
        let t = RootedTree::star(3).unwrap();
        let cache = PeriodCache::new(3);
        subtree_restoration_at_root(&t, 1, &cache);
    }

    #[test]
    fn lcm_helper() {
        assert_eq!(lcm(&big(7), &big(13)), big(91));
        assert_eq!(lcm(&big(12), &big(18)), big(36));
        assert_eq!(lcm(&big(2), &big(2)), big(2));
        assert_eq!(lcm(&big(1), &big(5)), big(5));
        let huge = BigUint::from(3u32).pow(500);
        assert_eq!(lcm(&huge, &big(2)), &huge * 2u32);
        assert_eq!(lcm(&huge, &big(9)), huge);
    }

    #[test]
    fn table_accessors() {
        let table = restoration_full(&test1());
        assert_eq!(table.get(0), None);
        assert_eq!(table.get(9), None);
        assert_eq!(table.iter().last(), Some((8, &big(91))));
    }
}
