//! Symmetric functions in the power-sum basis.

use crate::error::{Error, Result};
use crate::partitions::{partitions, Partition, Permutation};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Default cap on the order of a subgroup closed under its generators.
pub const DEFAULT_GROUP_BOUND: usize = 1_000_000;

/// Largest partition size accepted by [`SymFunc::schur`].
pub const SCHUR_SIZE_BOUND: usize = 24;

/// `1 / z_λ` as a scalar.
pub fn inv_z<C: Scalar>(lambda: &Partition) -> C {
    C::one() / C::from_bigint(&lambda.z())
}

/// A finite linear combination `Σ c_λ p_λ`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc<C> {
    terms: BTreeMap<Partition, C>,
}

impl<C: Scalar> Default for SymFunc<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> SymFunc<C> {
    pub fn zero() -> Self {
        SymFunc { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::p_basis(Partition::empty())
    }

    pub fn constant(c: C) -> Self {
        Self::zero().with_term(Partition::empty(), c)
    }

    pub fn p_basis(lambda: Partition) -> Self {
        Self::zero().with_term(lambda, C::one())
    }

    /// The power sum `p_n`; `p_0 = 1`.
    pub fn p(n: u32) -> Self {
        Self::p_basis(Partition::row(n))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (lambda, c) in terms {
            out.add_term(lambda, c);
        }
        out
    }

    fn with_term(mut self, lambda: Partition, c: C) -> Self {
        self.add_term(lambda, c);
        self
    }

    /// Add `c·p_λ` in place.
    pub fn add_term(&mut self, lambda: Partition, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Complete homogeneous `h_n = Σ_{λ⊢n} z_λ⁻¹ p_λ`.
    pub fn h(n: usize) -> Self {
        Self::from_terms(partitions(n).into_iter().map(|l| {
            let c = inv_z(&l);
            (l, c)
        }))
    }

    /// Elementary `e_n = Σ_{λ⊢n} (−1)^{n−ℓ} z_λ⁻¹ p_λ`.
    pub fn e(n: usize) -> Self {
        Self::h(n).omega()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, lambda: &Partition) -> C {
        self.terms.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Partition::empty())
    }

    /// Largest `|λ|` in the support, `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).min()
    }

    /// Degree-`n` homogeneous component.
    pub fn component(&self, n: usize) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop every term with `|λ| > max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() <= max_degree)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Checks that every term has degree `n`.
    pub fn check_homogeneous(&self, n: usize) -> Result<()> {
        match self.terms.keys().find(|l| l.size() != n) {
            Some(l) => Err(Error::NotHomogeneous { expected: n, found: l.size() }),
            None => Ok(()),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, a)| (l.clone(), a.clone() * c.clone())))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> SymFunc<D> {
        SymFunc::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    /// Product keeping only terms of degree at most `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.size() + b.size() <= max_degree {
                    out.add_term(a.union(b), ca.clone() * cb.clone());
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `p_k ∘ F`: every `p_μ` becomes `p_{kμ}`.
    pub fn power_plethysm(&self, k: u32) -> Self {
        SymFunc {
            terms: self.terms.iter().map(|(l, c)| (l.scaled(k), c.clone())).collect(),
        }
    }

    /// `F ∘ G`. Every `SymFunc` is a polynomial in the power sums, so a
    /// constant term in `G` is harmless.
    pub fn plethysm(&self, g: &Self) -> Self {
        let mut cache: BTreeMap<u32, Self> = BTreeMap::new();
        let mut out = Self::zero();
        for (lambda, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for &part in lambda.parts() {
                let factor = cache.entry(part).or_insert_with(|| g.power_plethysm(part));
                prod = &prod * factor;
            }
            out = &out + &prod;
        }
        out
    }

    /// `ω`: `p_λ ↦ (−1)^{|λ|−ℓ(λ)} p_λ`.
    pub fn omega(&self) -> Self {
        SymFunc {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| {
                    let c = if (l.size() - l.len()) % 2 == 1 { -c.clone() } else { c.clone() };
                    (l.clone(), c)
                })
                .collect(),
        }
    }

    /// Hall inner product, `⟨p_λ, p_μ⟩ = z_λ δ_{λμ}`.
    pub fn inner(&self, other: &Self) -> C {
        self.terms
            .iter()
            .filter_map(|(l, c)| {
                other
                    .terms
                    .get(l)
                    .map(|d| c.clone() * d.clone() * C::from_bigint(&l.z()))
            })
            .fold(C::zero(), |a, b| a + b)
    }

    /// `h_0∘F, …, h_R∘F` truncated at `max_degree`, by Newton's identity
    /// `r·h_r = Σ_{i=1}^r p_i·h_{r−i}` applied under plethysm.
    pub fn complete_plethysms(&self, max_r: usize, max_degree: usize) -> Vec<Self> {
        let powers: Vec<Self> = (0..=max_r)
            .map(|i| if i == 0 { Self::one() } else { self.power_plethysm(i as u32).truncate(max_degree) })
            .collect();
        let mut hs = vec![Self::one()];
        for r in 1..=max_r {
            let mut acc = Self::zero();
            for i in 1..=r {
                acc = &acc + &powers[i].mul_truncated(&hs[r - i], max_degree);
            }
            hs.push(acc.scale(&(C::one() / C::from_i64(r as i64))));
        }
        hs
    }

    /// Plethystic exponential `Σ_{r≥0} h_r∘F` through degree `max_degree`.
    pub fn exp_plethystic(&self, max_degree: usize) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(self
            .complete_plethysms(max_degree, max_degree)
            .iter()
            .fold(Self::zero(), |acc, x| &acc + x))
    }

    /// Plethystic exponential by `exp(Σ_{r≥1} p_r∘F / r)`, through degree `max_degree`.
    pub fn exp_plethystic_via_log(&self, max_degree: usize) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut log = Self::zero();
        for r in 1..=max_degree {
            log = &log
                + &self
                    .power_plethysm(r as u32)
                    .truncate(max_degree)
                    .scale(&(C::one() / C::from_i64(r as i64)));
        }
        let mut out = Self::one();
        let mut term = Self::one();
        for k in 1..=max_degree {
            term = term
                .mul_truncated(&log, max_degree)
                .scale(&(C::one() / C::from_i64(k as i64)));
            out = &out + &term;
        }
        Ok(out)
    }

    /// Schur function from the Jacobi–Trudi determinant `det(h_{λ_i−i+j})`.
    pub fn schur(lambda: &Partition) -> Result<Self> {
        if lambda.size() > SCHUR_SIZE_BOUND {
            return Err(Error::BoundExceeded { what: "schur partition size", bound: SCHUR_SIZE_BOUND });
        }
        let parts = lambda.parts();
        let l = parts.len();
        let hs: Vec<Self> = (0..=lambda.size()).map(Self::h).collect();
        let entry = |i: usize, j: usize| -> Option<&Self> {
            let idx = parts[i] as i64 - i as i64 + j as i64;
            (idx >= 0).then(|| &hs[idx as usize])
        };
        // dp over the set of columns already assigned to rows 0..popcount
        let mut dp: Vec<Option<Self>> = vec![None; 1 << l];
        dp[0] = Some(Self::one());
        for mask in 0..(1usize << l) {
            let Some(cur) = dp[mask].take() else { continue };
            let row = mask.count_ones() as usize;
            if row == l {
                dp[mask] = Some(cur);
                continue;
            }
            for col in 0..l {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let Some(h) = entry(row, col) else { continue };
                let inversions = (mask >> (col + 1)).count_ones();
                let mut term = &cur * h;
                if inversions % 2 == 1 {
                    term = -&term;
                }
                let next = mask | (1 << col);
                dp[next] = Some(match dp[next].take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
            dp[mask] = Some(cur);
        }
        Ok(dp[(1 << l) - 1].take().unwrap_or_else(Self::zero))
    }

    /// `(1/|H|) Σ_{σ∈H} p_{λ(σ)}` for the subgroup `H ⊆ S_n` generated by `generators`.
    pub fn ch_of_subgroup(n: usize, generators: &[Permutation], bound: usize) -> Result<Self> {
        let group = subgroup_closure(n, generators, bound)?;
        let weight = C::one() / C::from_i64(group.len() as i64);
        Ok(Self::from_terms(group.iter().map(|g| (g.cycle_type(), weight.clone()))))
    }

    /// Render with the given coefficient formatter.
    pub fn display(&self) -> String
    where
        C: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(l, c)| format!("({c})*p{l}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All elements of the subgroup of `S_n` generated by `generators`, by
/// breadth-first closure.
pub fn subgroup_closure(n: usize, generators: &[Permutation], bound: usize) -> Result<Vec<Permutation>> {
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::InvalidArgument(format!(
            "generator of degree {} in S_{n}",
            g.degree()
        )));
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(Error::SubgroupTooLarge { bound });
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

impl<C: Scalar> Add for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn add(self, rhs: &SymFunc<C>) -> SymFunc<C> {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn sub(self, rhs: &SymFunc<C>) -> SymFunc<C> {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> Neg for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn neg(self) -> SymFunc<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Mul for &SymFunc<C> {
    type Output = SymFunc<C>;
    fn mul(self, rhs: &SymFunc<C>) -> SymFunc<C> {
        let mut out = SymFunc::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.union(b), ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// `Σ_k F_k t^k` with each `F_k` a symmetric function.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSymFunc<C> {
    by_degree: Vec<SymFunc<C>>,
}

impl<C: Scalar> Default for GradedSymFunc<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> GradedSymFunc<C> {
    pub fn zero() -> Self {
        GradedSymFunc { by_degree: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_parts(vec![SymFunc::one()])
    }

    /// `F·t^k`.
    pub fn monomial(f: SymFunc<C>, k: usize) -> Self {
        let mut v = vec![SymFunc::zero(); k];
        v.push(f);
        Self::from_parts(v)
    }

    pub fn from_parts(mut by_degree: Vec<SymFunc<C>>) -> Self {
        while by_degree.last().is_some_and(SymFunc::is_zero) {
            by_degree.pop();
        }
        GradedSymFunc { by_degree }
    }

    pub fn parts(&self) -> &[SymFunc<C>] {
        &self.by_degree
    }

    pub fn t_coeff(&self, k: usize) -> SymFunc<C> {
        self.by_degree.get(k).cloned().unwrap_or_default()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.by_degree.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![SymFunc::zero(); k];
        v.extend(self.by_degree.iter().cloned());
        GradedSymFunc { by_degree: v }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_parts(self.by_degree.iter().map(|f| f.scale(c)).collect())
    }

    /// `p_k ∘ G`, with `t ↦ t^k`.
    pub fn power_plethysm(&self, k: u32) -> Self {
        let mut v = vec![SymFunc::zero(); self.by_degree.len().saturating_sub(1) * k as usize + 1];
        for (i, f) in self.by_degree.iter().enumerate() {
            v[i * k as usize] = f.power_plethysm(k);
        }
        Self::from_parts(v)
    }

    /// `F ∘ G` for an ungraded `F`.
    pub fn sym_apply(f: &SymFunc<C>, g: &Self) -> Self {
        let mut out = Self::zero();
        let mut cache: BTreeMap<u32, Self> = BTreeMap::new();
        for (lambda, c) in f.terms() {
            let mut prod = Self::from_parts(vec![SymFunc::constant(c.clone())]);
            for &part in lambda.parts() {
                let factor = cache.entry(part).or_insert_with(|| g.power_plethysm(part));
                prod = &prod * factor;
            }
            out = &out + &prod;
        }
        out
    }

    /// Exact division by `1 + t`.
    pub fn div_one_plus_t(&self) -> Result<Self> {
        let mut rem = self.by_degree.clone();
        if rem.is_empty() {
            return Ok(Self::zero());
        }
        let mut quot = vec![SymFunc::zero(); rem.len() - 1];
        for i in (0..quot.len()).rev() {
            let q = rem[i + 1].clone();
            rem[i] = &rem[i] - &q;
            rem[i + 1] = SymFunc::zero();
            quot[i] = q;
        }
        if rem[0].is_zero() {
            Ok(Self::from_parts(quot))
        } else {
            Err(Error::InexactDivision { remainder: format!("{:?}", rem[0]) })
        }
    }
}

impl<C: Scalar> Add for &GradedSymFunc<C> {
    type Output = GradedSymFunc<C>;
    fn add(self, rhs: &GradedSymFunc<C>) -> GradedSymFunc<C> {
        let n = self.by_degree.len().max(rhs.by_degree.len());
        GradedSymFunc::from_parts((0..n).map(|k| &self.t_coeff(k) + &rhs.t_coeff(k)).collect())
    }
}

impl<C: Scalar> Sub for &GradedSymFunc<C> {
    type Output = GradedSymFunc<C>;
    fn sub(self, rhs: &GradedSymFunc<C>) -> GradedSymFunc<C> {
        let n = self.by_degree.len().max(rhs.by_degree.len());
        GradedSymFunc::from_parts((0..n).map(|k| &self.t_coeff(k) - &rhs.t_coeff(k)).collect())
    }
}

impl<C: Scalar> Mul for &GradedSymFunc<C> {
    type Output = GradedSymFunc<C>;
    fn mul(self, rhs: &GradedSymFunc<C>) -> GradedSymFunc<C> {
        if self.is_zero() || rhs.is_zero() {
            return GradedSymFunc::zero();
        }
        let mut v = vec![SymFunc::zero(); self.by_degree.len() + rhs.by_degree.len() - 1];
        for (i, a) in self.by_degree.iter().enumerate() {
            for (j, b) in rhs.by_degree.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        GradedSymFunc::from_parts(v)
    }
}
