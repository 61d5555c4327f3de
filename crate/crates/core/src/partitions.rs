//! Integer partitions and permutations.
//!
//! A [`Partition`] is stored as its weakly decreasing list of parts; the
//! multiplicity view is computed when needed.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Partition::from_parts(vec![n])
    }

    /// `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Pairs `(part, multiplicity)` with parts in decreasing order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, r)) if *q == p => *r += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_λ = ∏ i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (part, mult) in self.multiplicities() {
            for r in 1..=mult {
                z *= BigInt::from(part) * BigInt::from(r);
            }
        }
        z
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// The union of the two multisets of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = j == other.parts.len()
                || (i < self.parts.len() && self.parts[i] >= other.parts[j]);
            if take_left {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Partition { parts }
    }

    /// Every part multiplied by `k`.
    pub fn scaled(&self, k: u32) -> Partition {
        Partition { parts: self.parts.iter().map(|&p| p * k).collect() }
    }

    /// `λ! = ∏ λ_i!`.
    pub fn factorial(&self) -> BigInt {
        self.parts.iter().map(|&p| factorial(p as u64)).product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// All partitions of `n` in reverse-lexicographic order, e.g.
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n as u32, n as u32, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// All partitions with size at most `n`, grouped by size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// A permutation of `0..n` stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Build from 1-indexed cycles, e.g. `[[1,2,3],[4,5]]` in S_5.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &from) in cycle.iter().enumerate() {
                let to = cycle[(idx + 1) % cycle.len()];
                if from == 0 || from > n || to == 0 || to > n || touched[from - 1] {
                    return Err(Error::NotAPermutation(n));
                }
                touched[from - 1] = true;
                images[from - 1] = to - 1;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_parts(lengths)
    }
}

/// Cycle type of a permutation given by its images on `0..n`.
pub fn cycle_type(images: &[usize]) -> Result<Partition> {
    Ok(Permutation::new(images.to_vec())?.cycle_type())
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation(v.clone()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(1), vec![p(&[1])]);
        assert_eq!(
            partitions(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    // Brute force: all compositions of n, sorted and deduplicated.
    fn partitions_by_compositions(n: u32) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(Vec::new());
            return out;
        }
        for mask in 0u32..(1 << (n - 1)) {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..n - 1 {
                if mask & (1 << bit) != 0 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts.sort_unstable_by(|a, b| b.cmp(a));
            out.insert(parts);
        }
        out
    }

    #[test]
    fn counts_match_compositions() {
        for n in 0..=20u32 {
            let ours: BTreeSet<Vec<u32>> =
                partitions(n as usize).into_iter().map(|l| l.parts).collect();
            assert_eq!(ours, partitions_by_compositions(n), "n = {n}");
            assert_eq!(partitions(n as usize).len(), ours.len());
        }
    }

    #[test]
    fn reverse_lexicographic_order() {
        let ps = partitions(9);
        for w in ps.windows(2) {
            assert!(w[0].parts > w[1].parts);
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(p(&[3]).z(), BigInt::from(3));
        assert_eq!(p(&[2, 1]).z(), BigInt::from(2));
        assert_eq!(Partition::empty().z(), BigInt::from(1));
        assert_eq!(p(&[2, 2, 1]).z(), BigInt::from(8));
    }

    #[test]
    fn z_counts_permutations_by_cycle_type() {
        for n in 0..=6 {
            let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
            for sigma in all_permutations(n) {
                *counts.entry(sigma.cycle_type()).or_default() += 1;
            }
            for lambda in partitions(n) {
                let expected = factorial(n as u64) / lambda.z();
                assert_eq!(BigInt::from(counts[&lambda]), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[5]).conjugate(), Partition::column(5));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..=15 {
            for lambda in partitions(n) {
                assert_eq!(lambda.conjugate().conjugate(), lambda);
                assert_eq!(lambda.conjugate().size(), n);
            }
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&[0, 1, 2, 3]).unwrap(), p(&[1, 1, 1, 1]));
        let sigma = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(sigma.cycle_type(), p(&[3, 2]));
        assert_eq!(cycle_type(&[1, 2, 3, 4, 5, 0]).unwrap(), p(&[6]));
        assert_eq!(cycle_type(&[0, 0, 1]), Err(Error::NotAPermutation(3)));
        assert_eq!(cycle_type(&[0, 3]), Err(Error::NotAPermutation(2)));
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_parts(vec![1, 3, 0, 2]), p(&[3, 2, 1]));
        assert_eq!(p(&[3, 1]).union(&p(&[2, 1])), p(&[3, 2, 1, 1]));
    }
}
