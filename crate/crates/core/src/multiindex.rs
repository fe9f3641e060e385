//! Multi-indices α = (α_1, …, α_n) label partial derivatives ∂^|α|/∂x^α.
//!
//! Enumeration is graded lexicographic: ascending total order, and within a
//! grade indices with larger early entries come first, e.g. for n = 2:
//! (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), …  `Ord` matches this order, so
//! sorting a set of multi-indices reproduces the enumeration.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Per-direction derivative orders.  Immutable; arithmetic returns new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Box<[u32]>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        MultiIndex(entries.into().into_boxed_slice())
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n].into_boxed_slice())
    }

    /// The multi-index of the single first-order derivative ∂/∂x_dir.
    pub fn unit(n: usize, dir: usize) -> Self {
        assert!(dir < n, "direction {dir} out of range for {n} variables");
        let mut e = vec![0; n];
        e[dir] = 1;
        MultiIndex(e.into_boxed_slice())
    }

    /// Number of variables n.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total order |α| = α_1 + … + α_n.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entry(&self, t: usize) -> u32 {
        self.0[t]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// α + (dir): bump the derivative order in one direction.
    pub fn add_unit(&self, dir: usize) -> Self {
        assert!(dir < self.dim(), "direction {dir} out of range");
        let mut e = self.0.to_vec();
        e[dir] += 1;
        MultiIndex(e.into_boxed_slice())
    }

    /// α − (dir), or `None` if α_dir = 0.
    pub fn sub_unit_checked(&self, dir: usize) -> Option<Self> {
        assert!(dir < self.dim(), "direction {dir} out of range");
        if self.0[dir] == 0 {
            return None;
        }
        let mut e = self.0.to_vec();
        e[dir] -= 1;
        Some(MultiIndex(e.into_boxed_slice()))
    }

    /// Componentwise difference α − β, or `None` unless β ≤ α slotwise.
    pub fn sub_checked(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let mut e = Vec::with_capacity(self.dim());
        for (&a, &b) in self.0.iter().zip(other.0.iter()) {
            e.push(a.checked_sub(b)?);
        }
        Some(MultiIndex(e.into_boxed_slice()))
    }

    /// Componentwise sum α + β.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let e: Vec<u32> = self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a + b).collect();
        MultiIndex(e.into_boxed_slice())
    }

    /// Does β ≤ α hold slotwise?
    pub fn dominates(&self, other: &Self) -> bool {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| b <= a)
    }

    /// Product of per-slot binomials C(α, β) = Π_t C(α_t, β_t); zero when β
    /// is not dominated by α, matching the combinatorial convention.
    pub fn binomial(&self, lower: &Self) -> BigInt {
        assert_eq!(self.dim(), lower.dim(), "dimension mismatch");
        let mut acc = BigInt::one();
        for (&a, &b) in self.0.iter().zip(lower.0.iter()) {
            if b > a {
                return BigInt::zero();
            }
            acc *= choose(a as u64, b as u64);
        }
        acc
    }

    /// α! = Π_t α_t!
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &a in self.0.iter() {
            for k in 2..=a as u64 {
                acc *= k;
            }
        }
        acc
    }

    /// All β with β ≤ α slotwise, in graded-lexicographic order.
    pub fn dominated(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.dim())];
        for t in 0..self.dim() {
            let reps = self.0[t];
            let mut next = Vec::with_capacity(out.len() * (reps as usize + 1));
            for base in &out {
                for v in 0..=reps {
                    let mut e = base.0.to_vec();
                    e[t] = v;
                    next.push(MultiIndex(e.into_boxed_slice()));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.order()
            .cmp(&other.order())
            // Within a grade, larger leading entries come first.
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (t, e) in self.0.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Binomial coefficient C(n, k) as a big integer (0 when k > n).
pub fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// C(n, k) as usize; panics on overflow (dimensions in range never overflow).
pub fn choose_usize(n: u64, k: u64) -> usize {
    use num_traits::ToPrimitive;
    choose(n, k).to_usize().expect("binomial exceeds usize")
}

/// All multi-indices with |α| ≤ max_order in graded-lexicographic order.
pub fn enumerate(n: usize, max_order: u32) -> Vec<MultiIndex> {
    assert!(n > 0, "need at least one variable");
    let mut out = Vec::with_capacity(choose_usize((n as u64) + max_order as u64, max_order as u64));
    let mut scratch = vec![0u32; n];
    for d in 0..=max_order {
        grade_into(&mut scratch, 0, d, &mut out);
    }
    out
}

fn grade_into(scratch: &mut Vec<u32>, slot: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if slot + 1 == scratch.len() {
        scratch[slot] = remaining;
        out.push(MultiIndex::new(scratch.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        scratch[slot] = v;
        grade_into(scratch, slot + 1, remaining - v, out);
    }
}

/// Enumerated multi-indices of order ≤ max_order with O(1) rank lookup.
/// Ranks follow the graded-lexicographic enumeration.
#[derive(Clone, Debug)]
pub struct JetIndexSet {
    n: usize,
    max_order: u32,
    list: Vec<MultiIndex>,
    pos: HashMap<MultiIndex, usize>,
}

impl JetIndexSet {
    pub fn new(n: usize, max_order: u32) -> Self {
        let list = enumerate(n, max_order);
        let pos = list.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        JetIndexSet { n, max_order, list, pos }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Position of α in the enumeration; `None` if |α| exceeds the bound or
    /// the number of variables differs.
    pub fn rank(&self, alpha: &MultiIndex) -> Option<usize> {
        self.pos.get(alpha).copied()
    }

    pub fn unrank(&self, i: usize) -> &MultiIndex {
        &self.list[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> {
        self.list.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_n2_r2() {
        let idx = enumerate(2, 2);
        let want: Vec<MultiIndex> = [
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ]
        .into_iter()
        .map(MultiIndex::new)
        .collect();
        assert_eq!(idx, want);
    }

    #[test]
    fn enumeration_counts_match_binomial() {
        for n in 1..=5usize {
            for r in 0..=6u32 {
                let idx = enumerate(n, r);
                assert_eq!(idx.len(), choose_usize(n as u64 + r as u64, r as u64));
            }
        }
    }

    #[test]
    fn ord_matches_enumeration() {
        for n in 1..=4usize {
            for r in 0..=4u32 {
                let idx = enumerate(n, r);
                let mut sorted = idx.clone();
                sorted.sort();
                assert_eq!(idx, sorted);
            }
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for n in 1..=5usize {
            for r in 0..=5u32 {
                let set = JetIndexSet::new(n, r);
                for i in 0..set.len() {
                    let a = set.unrank(i).clone();
                    assert_eq!(set.rank(&a), Some(i));
                }
            }
        }
    }

    #[test]
    fn rank_rejects_out_of_range() {
        let set = JetIndexSet::new(2, 2);
        assert_eq!(set.rank(&MultiIndex::new(vec![3, 0])), None);
        assert_eq!(set.rank(&MultiIndex::new(vec![1, 2])), None);
    }

    #[test]
    fn binomial_examples() {
        let a = MultiIndex::new(vec![2, 1]);
        assert_eq!(a.binomial(&MultiIndex::new(vec![1, 0])), BigInt::from(2));
        assert_eq!(a.binomial(&MultiIndex::new(vec![2, 1])), BigInt::from(1));
        assert_eq!(a.binomial(&MultiIndex::new(vec![0, 0])), BigInt::from(1));
        // Not dominated: convention C(α, β) = 0.
        assert_eq!(a.binomial(&MultiIndex::new(vec![0, 2])), BigInt::from(0));
    }

    #[test]
    fn sub_checked_examples() {
        let a = MultiIndex::new(vec![2, 1]);
        assert_eq!(a.sub_checked(&MultiIndex::new(vec![1, 1])), Some(MultiIndex::new(vec![1, 0])));
        assert_eq!(a.sub_checked(&MultiIndex::new(vec![0, 2])), None);
        assert_eq!(a.sub_unit_checked(1), Some(MultiIndex::new(vec![2, 0])));
        assert_eq!(MultiIndex::zero(2).sub_unit_checked(0), None);
    }

    #[test]
    fn factorials() {
        assert_eq!(MultiIndex::new(vec![3, 2]).factorial(), BigInt::from(12));
        assert_eq!(MultiIndex::zero(3).factorial(), BigInt::from(1));
    }

    #[test]
    fn dominated_set_is_box() {
        let a = MultiIndex::new(vec![2, 1]);
        let dom = a.dominated();
        assert_eq!(dom.len(), 6);
        assert!(dom.iter().all(|b| a.dominates(b)));
        let mut sorted = dom.clone();
        sorted.sort();
        assert_eq!(dom, sorted);
    }

    /// Vandermonde-style check: Σ_{β ≤ α} C(α, β) = Π_t 2^{α_t}.
    #[test]
    fn binomial_row_sums() {
        for n in 1..=3usize {
            for alpha in enumerate(n, 4) {
                let sum: BigInt = alpha.dominated().iter().map(|b| alpha.binomial(b)).sum();
                let mut want = BigInt::one();
                for &e in alpha.entries() {
                    want *= BigInt::from(2u32).pow(e);
                }
                assert_eq!(sum, want, "α = {alpha}");
            }
        }
    }

    /// Subset-of-subset identity: C(α,β)·C(β,γ) = C(α,γ)·C(α−γ, β−γ).
    #[test]
    fn binomial_subset_identity() {
        for alpha in enumerate(2, 3) {
            for beta in alpha.dominated() {
                for gamma in beta.dominated() {
                    let lhs = alpha.binomial(&beta) * beta.binomial(&gamma);
                    let amg = alpha.sub_checked(&gamma).unwrap();
                    let bmg = beta.sub_checked(&gamma).unwrap();
                    let rhs = alpha.binomial(&gamma) * amg.binomial(&bmg);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn choose_values() {
        assert_eq!(choose(6, 2), BigInt::from(15));
        assert_eq!(choose(4, 0), BigInt::from(1));
        assert_eq!(choose(3, 5), BigInt::from(0));
        assert_eq!(choose_usize(8, 4), 70);
    }
}
