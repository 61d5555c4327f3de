//! Weighted rooted trees indexing a permutation basis of `H^{2k}(M̄_{0,n+1})`,
//! their stabilizers, and brute-force coloring counts.

use crate::error::{Error, Result};
use crate::partitions::{all_permutations, factorial, Permutation};
use crate::scalar::Rational;
use crate::symfunc::SymFunc;
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Default largest `n` accepted by [`oracle_q`] and [`oracle_qplus`].
pub const DEFAULT_ORACLE_BOUND: usize = 9;

/// Largest `m₀^n` accepted by the coloring oracles.
pub const COLORING_BOUND: usize = 1 << 20;

type Sym = SymFunc<Rational>;
type UPoly = UniPoly<Rational>;

/// An unlabeled weighted rooted tree. Children are kept sorted, so two trees
/// are isomorphic exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedRootedTree {
    weight: usize,
    inputs: usize,
    children: Vec<WeightedRootedTree>,
}

impl WeightedRootedTree {
    pub fn new(weight: usize, inputs: usize, mut children: Vec<WeightedRootedTree>) -> Self {
        children.sort();
        WeightedRootedTree { weight, inputs, children }
    }

    /// One vertex carrying `inputs` legs.
    pub fn corolla(weight: usize, inputs: usize) -> Self {
        Self::new(weight, inputs, Vec::new())
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Inputs attached directly to this vertex.
    pub fn local_inputs(&self) -> usize {
        self.inputs
    }

    pub fn children(&self) -> &[WeightedRootedTree] {
        &self.children
    }

    /// Half-edges at this vertex: children, inputs, and the edge (or output) above it.
    pub fn valency(&self) -> usize {
        self.children.len() + self.inputs + 1
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs + self.children.iter().map(Self::num_inputs).sum::<usize>()
    }

    pub fn total_weight(&self) -> usize {
        self.weight + self.children.iter().map(Self::total_weight).sum::<usize>()
    }

    pub fn num_vertices(&self) -> usize {
        1 + self.children.iter().map(Self::num_vertices).sum::<usize>()
    }

    fn vertex_ok(&self, is_root: bool) -> bool {
        let lo = usize::from(!is_root);
        self.weight >= lo && self.weight + 3 <= self.valency()
    }

    fn branches_ok(&self) -> bool {
        self.children.iter().all(|c| c.vertex_ok(false) && c.branches_ok())
    }

    /// Valency conditions with `self` as the root.
    pub fn is_valid(&self) -> bool {
        self.vertex_ok(true) && self.branches_ok()
    }

    /// Distinct child subtrees with their multiplicities.
    pub fn child_groups(&self) -> Vec<(&WeightedRootedTree, usize)> {
        let mut groups: Vec<(&WeightedRootedTree, usize)> = Vec::new();
        for c in &self.children {
            match groups.last_mut() {
                Some((t, r)) if *t == c => *r += 1,
                _ => groups.push((c, 1)),
            }
        }
        groups
    }

    /// `|Stab(T)| = n₀! · ∏_j |Stab(T_j)|^{r_j} · r_j!`.
    pub fn stab_order(&self) -> BigInt {
        self.child_groups()
            .into_iter()
            .fold(factorial(self.inputs as u64), |acc, (t, r)| {
                acc * t.stab_order().pow(r as u32) * factorial(r as u64)
            })
    }

    /// `ch U_T = h_{n₀} · ∏_j h_{r_j} ∘ ch U_{T_j}`.
    pub fn ch(&self) -> Sym {
        self.child_groups()
            .into_iter()
            .fold(Sym::h(self.inputs), |acc, (t, r)| &acc * &Sym::h(r).plethysm(&t.ch()))
    }

    /// `𝒮_{U_T} = ⟨⟨m, n₀⟩⟩ · ∏_j ⟨⟨𝒮_{U_{T_j}}, r_j⟩⟩`.
    pub fn char_poly(&self) -> UPoly {
        self.child_groups()
            .into_iter()
            .fold(UPoly::rising(self.inputs), |acc, (t, r)| &acc * &t.char_poly().multichoose(r))
    }

    /// `𝒮^ω_{U_T} = C(m, n₀) · ∏_{n_j even} ⟨⟨𝒮^ω_{T_j}, r_j⟩⟩ · ∏_{n_j odd} C(𝒮^ω_{T_j}, r_j)`,
    /// with `n_j` the number of inputs of `T_j`.
    pub fn omega_char_poly(&self) -> UPoly {
        self.child_groups().into_iter().fold(UPoly::falling(self.inputs), |acc, (t, r)| {
            let inner = t.omega_char_poly();
            let factor = if t.num_inputs() % 2 == 0 { inner.multichoose(r) } else { inner.choose(r) };
            &acc * &factor
        })
    }

    /// A labeling of the inputs by `0..n` in depth-first order.
    pub fn labeled(&self) -> LabeledTree {
        fn go(t: &WeightedRootedTree, next: &mut usize) -> LabeledTree {
            let inputs: Vec<usize> = (*next..*next + t.inputs).collect();
            *next += t.inputs;
            let children = t.children.iter().map(|c| go(c, next)).collect();
            LabeledTree { weight: t.weight, inputs, children }
        }
        go(self, &mut 0)
    }

    /// Permutations of the input labels of [`labeled`](Self::labeled) fixing
    /// the labeled tree up to isomorphism, found by trying all of `S_n`.
    pub fn explicit_stabilizer(&self) -> Result<Vec<Permutation>> {
        let n = self.num_inputs();
        if n > 8 {
            return Err(Error::BoundExceeded { what: "inputs for an explicit stabilizer", bound: 8 });
        }
        let lab = self.labeled();
        let base = lab.key(&|i| i);
        Ok(all_permutations(n)
            .into_iter()
            .filter(|s| lab.key(&|i| s.apply(i)) == base)
            .collect())
    }
}

impl fmt::Display for WeightedRootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(w={}, in={}, [", self.weight, self.inputs)?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// A weighted rooted tree whose inputs carry labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    pub weight: usize,
    pub inputs: Vec<usize>,
    pub children: Vec<LabeledTree>,
}

/// Canonical form of a tree whose inputs are decorated by values (labels or colors).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedKey {
    weight: usize,
    leaves: Vec<usize>,
    children: Vec<DecoratedKey>,
}

impl LabeledTree {
    /// Canonical form after decorating input `i` with `f(i)`.
    pub fn key(&self, f: &dyn Fn(usize) -> usize) -> DecoratedKey {
        let mut leaves: Vec<usize> = self.inputs.iter().map(|&i| f(i)).collect();
        leaves.sort_unstable();
        let mut children: Vec<DecoratedKey> = self.children.iter().map(|c| c.key(f)).collect();
        children.sort();
        DecoratedKey { weight: self.weight, leaves, children }
    }

    fn num_inputs(&self) -> usize {
        self.inputs.len() + self.children.iter().map(Self::num_inputs).sum::<usize>()
    }

    fn vertices<'a>(&'a self, out: &mut Vec<&'a LabeledTree>) {
        out.push(self);
        for c in &self.children {
            c.vertices(out);
        }
    }
}

/// Shape of a tree with one vertex singled out; two vertices get the same
/// marked shape exactly when an automorphism moves one to the other.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct MarkedShape {
    weight: usize,
    inputs: usize,
    marked: bool,
    children: Vec<MarkedShape>,
}

fn marked_shape(t: &LabeledTree, target: *const LabeledTree) -> MarkedShape {
    let mut children: Vec<MarkedShape> = t.children.iter().map(|c| marked_shape(c, target)).collect();
    children.sort();
    MarkedShape { weight: t.weight, inputs: t.inputs.len(), marked: std::ptr::eq(t, target), children }
}

fn check_coloring_size(n: usize, m0: usize) -> Result<()> {
    let total = (m0 as f64).powi(n as i32);
    if total > COLORING_BOUND as f64 {
        return Err(Error::BoundExceeded { what: "number of colorings", bound: COLORING_BOUND });
    }
    Ok(())
}

fn for_each_coloring(n: usize, m0: usize, mut f: impl FnMut(&[usize])) {
    if m0 == 0 {
        if n == 0 {
            f(&[]);
        }
        return;
    }
    let mut colors = vec![0usize; n];
    loop {
        f(&colors);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            colors[i] += 1;
            if colors[i] < m0 {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

/// Number of colorings of the inputs by `m0` colors, up to `Stab(T)`.
pub fn coloring_count_oracle(tree: &WeightedRootedTree, m0: usize) -> Result<u64> {
    let n = tree.num_inputs();
    check_coloring_size(n, m0)?;
    let lab = tree.labeled();
    let mut seen = BTreeSet::new();
    for_each_coloring(n, m0, |c| {
        seen.insert(lab.key(&|i| c[i]));
    });
    Ok(seen.len() as u64)
}

/// Number of proper colorings of the inputs by `m0` colors, up to `Stab(T)`.
///
/// Proper: inputs at a common vertex get distinct colors, and among the
/// subtrees `T_v` that an automorphism of `T` permutes, those with an odd
/// number of inputs are pairwise distinct as colored trees.
pub fn proper_coloring_count_oracle(tree: &WeightedRootedTree, m0: usize) -> Result<u64> {
    let n = tree.num_inputs();
    check_coloring_size(n, m0)?;
    let lab = tree.labeled();
    let mut vertices = Vec::new();
    lab.vertices(&mut vertices);
    let mut classes: BTreeMap<MarkedShape, Vec<&LabeledTree>> = BTreeMap::new();
    for &v in &vertices {
        if v.num_inputs() % 2 == 1 {
            classes.entry(marked_shape(&lab, v)).or_default().push(v);
        }
    }
    let classes: Vec<Vec<&LabeledTree>> = classes.into_values().filter(|c| c.len() > 1).collect();
    let mut seen = BTreeSet::new();
    for_each_coloring(n, m0, |c| {
        let distinct_at_vertices = vertices.iter().all(|v| {
            let colors: BTreeSet<usize> = v.inputs.iter().map(|&i| c[i]).collect();
            colors.len() == v.inputs.len()
        });
        if !distinct_at_vertices {
            return;
        }
        let distinct_subtrees = classes.iter().all(|class| {
            let keys: BTreeSet<DecoratedKey> = class.iter().map(|v| v.key(&|i| c[i])).collect();
            keys.len() == class.len()
        });
        if distinct_subtrees {
            seen.insert(lab.key(&|i| c[i]));
        }
    });
    Ok(seen.len() as u64)
}

/// Enumerates weighted rooted trees by input count and total weight.
#[derive(Default)]
pub struct TreeEnumerator {
    branches: HashMap<(usize, usize), Vec<WeightedRootedTree>>,
}

impl TreeEnumerator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Trees with `n` inputs and total weight `k`; with `positive_root_weight`
    /// only those whose root weight is at least one.
    pub fn trees(&mut self, n: usize, k: usize, positive_root_weight: bool) -> Vec<WeightedRootedTree> {
        let mut out = Vec::new();
        for w0 in usize::from(positive_root_weight)..=k {
            for n0 in 0..=n {
                let candidates = self.candidates(n - n0, k - w0);
                let mut chosen = Vec::new();
                multisets(&candidates, 0, n - n0, k - w0, &mut chosen, &mut |children| {
                    let t = WeightedRootedTree::new(w0, n0, children.to_vec());
                    if t.vertex_ok(true) {
                        out.push(t);
                    }
                });
            }
        }
        out.sort_by(|a, b| (a.num_vertices(), a).cmp(&(b.num_vertices(), b)));
        out.dedup();
        out
    }

    /// All possible non-root subtrees with at most `n` inputs and weight at most `k`.
    fn candidates(&mut self, n: usize, k: usize) -> Vec<WeightedRootedTree> {
        let mut c = Vec::new();
        for ni in 1..=n {
            for ki in 1..=k {
                c.extend(self.branches(ni, ki));
            }
        }
        c.sort();
        c
    }

    /// Subtrees that may hang below another vertex: the root weight is positive.
    fn branches(&mut self, n: usize, k: usize) -> Vec<WeightedRootedTree> {
        if let Some(b) = self.branches.get(&(n, k)) {
            return b.clone();
        }
        let b = if n < 3 || k == 0 { Vec::new() } else { self.trees(n, k, true) };
        self.branches.insert((n, k), b.clone());
        b
    }
}

fn multisets(
    candidates: &[WeightedRootedTree],
    start: usize,
    n: usize,
    k: usize,
    chosen: &mut Vec<WeightedRootedTree>,
    emit: &mut dyn FnMut(&[WeightedRootedTree]),
) {
    if n == 0 && k == 0 {
        emit(chosen);
    }
    for i in start..candidates.len() {
        let c = &candidates[i];
        let (cn, ck) = (c.num_inputs(), c.total_weight());
        if cn <= n && ck <= k {
            chosen.push(c.clone());
            multisets(candidates, i, n - cn, k - ck, chosen, emit);
            chosen.pop();
        }
    }
}

/// `𝒯_{n,k}` (or `𝒯⁺_{n,k}`) in a fixed order.
pub fn enumerate_trees(n: usize, k: usize, positive_root_weight: bool) -> Vec<WeightedRootedTree> {
    TreeEnumerator::new().trees(n, k, positive_root_weight)
}

fn oracle(n: usize, k: usize, positive: bool, bound: usize) -> Result<UPoly> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "tree oracle size", bound });
    }
    Ok(enumerate_trees(n, k, positive).iter().map(WeightedRootedTree::char_poly).sum())
}

/// `Σ_{T∈𝒯_{n,k}} 𝒮_{U_T}`.
pub fn oracle_q(n: usize, k: usize, bound: usize) -> Result<UPoly> {
    oracle(n, k, false, bound)
}

/// `Σ_{T∈𝒯⁺_{n,k}} 𝒮_{U_T}`.
pub fn oracle_qplus(n: usize, k: usize, bound: usize) -> Result<UPoly> {
    oracle(n, k, true, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::stanley::char_poly;
    use crate::symfunc::DEFAULT_GROUP_BOUND;

    type T = WeightedRootedTree;

    fn stab3(n: usize, a: usize) -> T {
        T::new(0, n - 2 * a, vec![T::corolla(1, a), T::corolla(1, a)])
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(4, 0, false), vec![T::corolla(0, 4)]);
        let four_one = enumerate_trees(4, 1, false);
        assert_eq!(four_one, vec![T::corolla(1, 4), T::new(0, 1, vec![T::corolla(1, 3)])]);
        assert!(enumerate_trees(2, 1, false).is_empty());
        assert!(four_one.iter().all(T::is_valid));
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(T::corolla(0, 5).stab_order(), factorial(5));
        let two = T::new(0, 2, vec![T::corolla(1, 4)]);
        assert_eq!(two.stab_order(), factorial(2) * factorial(4));
        assert_eq!(stab3(8, 3).stab_order(), factorial(2) * factorial(3) * factorial(3) * 2);
    }

    #[test]
    fn ch_examples() {
        assert_eq!(T::corolla(0, 4).ch(), Sym::h(4));
        let t = stab3(8, 3);
        assert_eq!(t.ch(), &Sym::h(2) * &Sym::h(2).plethysm(&Sym::h(3)));
        let expect = &UPoly::rising(2) * &UPoly::rising(3).multichoose(2);
        assert_eq!(t.char_poly(), expect);
        assert_eq!(char_poly(&t.ch(), 8).unwrap(), expect);
        let omega = &UPoly::falling(2) * &UPoly::falling(3).choose(2);
        assert_eq!(t.omega_char_poly(), omega);
    }

    #[test]
    fn stabilizer_matches_subgroup_character() {
        for n in 2..=6 {
            for k in 0..=n - 2usize {
                for t in enumerate_trees(n, k, false) {
                    let group = t.explicit_stabilizer().unwrap();
                    assert_eq!(BigInt::from(group.len()), t.stab_order(), "{t}");
                    let ch = Sym::ch_of_subgroup(n, &group, DEFAULT_GROUP_BOUND).unwrap();
                    assert_eq!(ch, t.ch(), "{t}");
                }
            }
        }
    }

    #[test]
    fn colorings() {
        let t = T::new(0, 2, vec![T::corolla(1, 3)]);
        for m0 in 1..=3 {
            let expect = UPoly::rising(2).eval(&int(m0)) * UPoly::rising(3).eval(&int(m0));
            assert_eq!(int(coloring_count_oracle(&t, m0 as usize).unwrap() as i64), expect);
            assert_eq!(coloring_count_oracle(&t, 1).unwrap(), 1);
        }
        assert_eq!(proper_coloring_count_oracle(&T::corolla(0, 4), 3).unwrap(), 0);
        assert_eq!(proper_coloring_count_oracle(&T::corolla(0, 3), 4).unwrap(), 4);
    }

    #[test]
    fn display_form() {
        let t = T::new(0, 1, vec![T::corolla(1, 3)]);
        assert_eq!(t.to_string(), "(w=0, in=1, [(w=1, in=3, [])])");
    }

    #[test]
    fn oracle_values() {
        let q41 = oracle_q(4, 1, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(q41, &UPoly::rising(4) + &(&UPoly::rising(1) * &UPoly::rising(3)));
        assert!(oracle_q(2, 1, DEFAULT_ORACLE_BOUND).unwrap().is_zero());
        assert_eq!(oracle_q(6, 0, DEFAULT_ORACLE_BOUND).unwrap(), UPoly::rising(6));
        assert!(oracle_q(12, 0, DEFAULT_ORACLE_BOUND).is_err());
    }
}
