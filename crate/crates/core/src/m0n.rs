//! Characteristic polynomials of the cohomology of `M̄_{0,n}` and `M̄_{0,n+1}`.
//!
//! `Q⁺_n`, `Q_n`, `P_n` below are the characteristic polynomials (in `m` and
//! the cohomological degree `t`) for the `S_n`-actions; `P_n` belongs to
//! `M̄_{0,n}` and `Q_n` to `M̄_{0,n+1}`.

use crate::biseries::{complete_plethysm_block_by_partitions, complete_plethysm_blocks, BivarPoly, QSeries};
use crate::error::{Error, Result};
use crate::partitions::{factorial, partitions};
use crate::scalar::{int, rat, Rational};
use crate::stanley::char_poly_graded;
use crate::symfunc::{GradedSymFunc, SymFunc};
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

type Poly = BivarPoly<Rational>;
type Graded = GradedSymFunc<Rational>;

/// Exact division of a polynomial by `t^k`.
fn div_t_power(p: &Poly, k: usize) -> Result<Poly> {
    if p.rows().iter().take(k).any(|r| !r.is_zero()) {
        return Err(Error::InexactDivision { remainder: format!("{:?}", p.terms()) });
    }
    Ok(Poly::from_rows(p.rows().iter().skip(k).cloned().collect()))
}

/// `Q⁺_1, …, Q⁺_N` (index 0 holds zero) together with `Q_0, …, Q_N`.
///
/// Two running tables over the part sizes processed so far hold
/// `A[s] = Σ_λ X_λ` and `B[s] = Σ_λ t^{ℓ(λ)} X_λ`, where `λ ⊢ s` and
/// `X_λ = ∏_j h_{r_j}∘Q⁺_{n_j}`. Since `Σ_{i=1}^{ℓ−2} t^i = (t − t^{ℓ−1})/(1 − t)`,
/// once all parts below `n` are in, `Q⁺_n = (t·A[n] − B[n]/t)/(1 − t)`.
pub fn compute_qplus_and_q(max_n: usize) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let mut qplus = vec![Poly::zero(); max_n + 1];
    let mut q = vec![Poly::one(); max_n + 1];
    let mut a = vec![Poly::zero(); max_n + 1];
    let mut b = vec![Poly::zero(); max_n + 1];
    a[0] = Poly::one();
    b[0] = Poly::one();
    let one_minus_t = &Poly::one() - &Poly::t();
    for n in 1..=max_n {
        if n == 1 {
            qplus[1] = Poly::m();
        } else {
            let num = &a[n].shift_t(1) - &div_t_power(&b[n], 1)?;
            qplus[n] = num.div_exact(&one_minus_t)?;
        }
        q[n] = &a[n] + &qplus[n];
        if qplus[n].is_zero() {
            continue;
        }
        let hs = complete_plethysm_blocks(&qplus[n], max_n / n);
        let weighted: Vec<Poly> = hs.iter().enumerate().map(|(r, h)| h.shift_t(r)).collect();
        let (a_old, b_old) = (a.clone(), b.clone());
        let updates: Vec<(Poly, Poly)> = (n..=max_n)
            .into_par_iter()
            .map(|size| {
                let mut da = Poly::zero();
                let mut db = Poly::zero();
                for r in 1..=size / n {
                    let (xa, xb) = (&a_old[size - r * n], &b_old[size - r * n]);
                    if !xa.is_zero() {
                        da = &da + &(xa * &hs[r]);
                    }
                    if !xb.is_zero() {
                        db = &db + &(xb * &weighted[r]);
                    }
                }
                (da, db)
            })
            .collect();
        for (size, (da, db)) in (n..=max_n).zip(updates) {
            a[size] = &a[size] + &da;
            b[size] = &b[size] + &db;
        }
    }
    Ok((qplus, q))
}

/// `Q⁺_n` straight from the partition sum, with each `h_r∘Q⁺_s` expanded as
/// `Σ_{μ⊢r} z_μ⁻¹ (Q⁺_s)^{[μ]}`. Slow; a reference for small `n`.
pub fn compute_qplus_and_q_literal(max_n: usize) -> (Vec<Poly>, Vec<Poly>) {
    let mut qplus = vec![Poly::zero(); max_n + 1];
    let mut q = vec![Poly::one(); max_n + 1];
    if max_n >= 1 {
        qplus[1] = Poly::m();
        q[1] = Poly::m();
    }
    for n in 2..=max_n {
        let mut qp = Poly::zero();
        let mut qn = Poly::zero();
        for lambda in partitions(n) {
            let x = lambda
                .multiplicities()
                .iter()
                .fold(Poly::one(), |acc, &(part, mult)| {
                    &acc * &complete_plethysm_block_by_partitions(&qplus[part as usize], mult as usize)
                });
            let ell = lambda.len();
            let weight = Poly::from_t_poly(&UniPoly::from_coeffs(
                (0..ell.saturating_sub(1)).map(|i| if i == 0 { int(0) } else { int(1) }).collect(),
            ));
            if lambda.len() > 1 {
                qn = &qn + &x;
            }
            qp = &qp + &(&weight * &x);
        }
        qplus[n] = qp;
        q[n] = &qn + &qplus[n];
    }
    (qplus, q)
}

/// `P_0, …, P_N` from `(1+t)P_n = Q_n − ½t(Σ_{h=2}^{n−2} Q_h Q_{n−h} − Q_{n/2}(m,t²))`.
pub fn compute_p(q: &[Poly]) -> Result<Vec<Poly>> {
    let opt = Poly::one_plus_t();
    (0..q.len())
        .into_par_iter()
        .map(|n| match n {
            0 => Ok(Poly::one()),
            1 => Ok(Poly::m()),
            2 => Ok(Poly::from_m_poly(UniPoly::rising(2))),
            _ => {
                let mut s = Poly::zero();
                for h in 2..=n - 2 {
                    s = &s + &(&q[h] * &q[n - h]);
                }
                if n % 2 == 0 {
                    s = &s - &q[n / 2].substitute_t_power(2);
                }
                let rhs = &q[n] - &s.shift_t(1).scale(&rat(1, 2));
                rhs.div_exact(&opt).map_err(|e| {
                    Error::Consistency(format!("(1+t) does not divide the right side for n = {n}: {e}"))
                })
            }
        })
        .collect()
}

/// Write-once table of `Q⁺_n`, `Q_n`, `P_n` for `n ≤ max_n`.
#[derive(Clone, Debug)]
pub struct M0nTable {
    qplus: Vec<Poly>,
    q: Vec<Poly>,
    p: Vec<Poly>,
}

impl M0nTable {
    pub fn build(max_n: usize) -> Result<Self> {
        let (qplus, q) = compute_qplus_and_q(max_n)?;
        let p = compute_p(&q)?;
        Ok(M0nTable { qplus, q, p })
    }

    pub fn max_n(&self) -> usize {
        self.q.len() - 1
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            Err(Error::InvalidArgument(format!("n = {n} exceeds the table bound {}", self.max_n())))
        } else {
            Ok(())
        }
    }

    pub fn qplus(&self, n: usize) -> &Poly {
        &self.qplus[n]
    }

    pub fn q(&self, n: usize) -> &Poly {
        &self.q[n]
    }

    pub fn p(&self, n: usize) -> &Poly {
        &self.p[n]
    }

    pub fn qplus_series(&self) -> QSeries<Rational> {
        QSeries::from_coeffs(self.max_n(), self.qplus.clone())
    }

    pub fn q_series(&self) -> QSeries<Rational> {
        QSeries::from_coeffs(self.max_n(), self.q.clone())
    }

    pub fn p_series(&self) -> QSeries<Rational> {
        QSeries::from_coeffs(self.max_n(), self.p.clone())
    }

    /// `Q = Exp(Q⁺)` through `q^{bound}`.
    pub fn check_exp_form(&self, bound: usize) -> Result<()> {
        let bound = bound.min(self.max_n());
        let exp = self.qplus_series().restrict(bound).exp_plethystic()?;
        for n in 0..=bound {
            if exp.coeff(n) != self.q(n) {
                return Err(Error::Consistency(format!("Q_{n} differs from the q^{n} coefficient of Exp(Q+)")));
            }
        }
        Ok(())
    }

    /// `Exp(tQ⁺) = t²Exp(Q⁺) + (1−t)(1+t+mqt)`, coefficientwise through `q^{bound}`.
    pub fn exponential_identity_check(&self, bound: usize) -> Result<()> {
        self.check_n(bound)?;
        let qp = self.qplus_series().restrict(bound);
        let lhs = QSeries::from_coeffs(bound, qp.coeffs().iter().map(|c| c.shift_t(1)).collect())
            .exp_plethystic()?;
        let one_minus_t = &Poly::one() - &Poly::t();
        let mut rhs = qp.exp_plethystic()?.mul_poly(&Poly::monomial(int(1), 0, 2));
        rhs = &rhs + &QSeries::monomial(bound, &one_minus_t * &Poly::one_plus_t(), 0);
        rhs = &rhs + &QSeries::monomial(bound, &one_minus_t * &Poly::monomial(int(1), 1, 1), 1);
        for n in 0..=bound {
            let (l, r) = (lhs.coeff(n), rhs.coeff(n));
            if l != r {
                let diff = l - r;
                let (j, k, c) = diff.terms()[0].clone();
                return Err(Error::Consistency(format!(
                    "exponential identity fails at q^{n} m^{j} t^{k}: difference {c}"
                )));
            }
        }
        Ok(())
    }

    /// `P_{n,k} + P_{n,k−1} = Q_{n,k} − ½ Σ_{h=2}^{n−2} Σ_{j<k} Q_{h,j} Q_{n−h,k−j−1} + ½ Q_{n/2,(k−1)/2}` for every `k`.
    pub fn wallcrossing_check(&self, n: usize) -> Result<()> {
        self.check_n(n)?;
        if n < 3 {
            return Err(Error::InvalidArgument(format!("wall-crossing identity needs n ≥ 3, got {n}")));
        }
        let q = |h: usize, j: usize| self.q[h].row(j);
        let top = self.q[n].t_degree().unwrap_or(0) + 1;
        for k in 0..=top {
            let mut lhs = self.p[n].row(k);
            if k >= 1 {
                lhs = &lhs + &self.p[n].row(k - 1);
            }
            let mut rhs = q(n, k);
            let mut double = UniPoly::zero();
            for h in 2..=n.saturating_sub(2) {
                for j in 0..k {
                    double = &double + &(&q(h, j) * &q(n - h, k - j - 1));
                }
            }
            rhs = &rhs - &double.scale(&rat(1, 2));
            if n % 2 == 0 && k % 2 == 1 {
                rhs = &rhs + &q(n / 2, (k - 1) / 2).scale(&rat(1, 2));
            }
            if lhs != rhs {
                return Err(Error::Consistency(format!("wall-crossing identity fails for n = {n}, k = {k}")));
            }
        }
        Ok(())
    }

    fn betti_of(poly: &Poly, n: usize) -> Result<Vec<BigInt>> {
        let nf = Rational::from_integer(factorial(n as u64));
        poly.rows()
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let d = row.coeff(n) * &nf;
                if !d.is_integer() || d.is_negative() {
                    return Err(Error::Consistency(format!("Betti number b_{k} = {d} for n = {n}")));
                }
                Ok(d.to_integer())
            })
            .collect()
    }

    /// `dim H^{2k}(M̄_{0,n+1})` for `k = 0, 1, …`.
    pub fn betti_q(&self, n: usize) -> Result<Vec<BigInt>> {
        self.check_n(n)?;
        Self::betti_of(&self.q[n], n)
    }

    /// `dim H^{2k}(M̄_{0,n})` for `k = 0, 1, …`.
    pub fn betti_p(&self, n: usize) -> Result<Vec<BigInt>> {
        self.check_n(n)?;
        Self::betti_of(&self.p[n], n)
    }

    /// `(P_n(1,t), Q_n(1,t))`, the Poincaré polynomials of the invariant parts.
    pub fn invariant_poincare(&self, n: usize) -> Result<(UniPoly<Rational>, UniPoly<Rational>)> {
        self.check_n(n)?;
        Ok((self.p[n].eval_m(&int(1)), self.q[n].eval_m(&int(1))))
    }

    /// Degree bounds, palindromic `P_n`, nonnegative coefficients.
    pub fn check_structure(&self, n: usize) -> Result<()> {
        self.check_n(n)?;
        let fail = |what: &str| Err(Error::Consistency(format!("{what} for n = {n}")));
        let (p, q) = (&self.p[n], &self.q[n]);
        if p.terms().iter().chain(q.terms().iter()).any(|(_, _, c)| c.is_negative()) {
            return fail("negative coefficient");
        }
        if n >= 3 {
            if q.t_degree().unwrap_or(0) > n - 2 || p.t_degree().unwrap_or(0) > n - 3 {
                return fail("t-degree out of range");
            }
            let d = n - 3;
            if (0..=d).any(|k| p.row(k) != p.row(d - k)) {
                return fail("P_n not palindromic");
            }
        }
        Ok(())
    }
}

/// The same recursion run in `Λ[t]`, for `n ≤ max_n`.
#[derive(Clone, Debug)]
pub struct SymTable {
    pub qplus: Vec<Graded>,
    pub q: Vec<Graded>,
    pub p: Vec<Graded>,
}

/// Build `Q⁺_n`, `Q_n` from the recursion in `Λ[t]`, and `P_n` from
/// `(1+t)P_n = Q_n − t(Σ_{2≤h<n/2} Q_h Q_{n−h} + s_{(1,1)}∘Q_{n/2})`.
pub fn sym_tables(max_n: usize) -> Result<SymTable> {
    let mut qplus = vec![Graded::zero(); max_n + 1];
    let mut q = vec![Graded::one(); max_n + 1];
    if max_n >= 1 {
        qplus[1] = Graded::from_parts(vec![SymFunc::p(1)]);
        q[1] = qplus[1].clone();
    }
    for n in 2..=max_n {
        let mut qp = Graded::zero();
        let mut qn = Graded::zero();
        for lambda in partitions(n) {
            let x = lambda.multiplicities().iter().fold(Graded::one(), |acc, &(part, mult)| {
                &acc * &Graded::sym_apply(&SymFunc::h(mult as usize), &qplus[part as usize])
            });
            if lambda.len() > 1 {
                qn = &qn + &x;
            }
            for i in 1..=lambda.len().saturating_sub(2) {
                qp = &qp + &x.shift(i);
            }
        }
        qplus[n] = qp;
        q[n] = &qn + &qplus[n];
    }
    let s11 = SymFunc::schur(&crate::partitions::Partition::column(2))?;
    let mut p = vec![Graded::zero(); max_n + 1];
    for (n, slot) in p.iter_mut().enumerate() {
        *slot = match n {
            0 => Graded::one(),
            1 => Graded::from_parts(vec![SymFunc::p(1)]),
            2 => Graded::from_parts(vec![SymFunc::h(2)]),
            _ => {
                let mut s = Graded::zero();
                for h in 2..n {
                    if 2 * h < n {
                        s = &s + &(&q[h] * &q[n - h]);
                    }
                }
                if n % 2 == 0 {
                    s = &s + &Graded::sym_apply(&s11, &q[n / 2]);
                }
                (&q[n] - &s.shift(1)).div_one_plus_t()?
            }
        };
    }
    Ok(SymTable { qplus, q, p })
}

impl SymTable {
    /// Specialize every entry; must reproduce the polynomial-level table.
    pub fn check_against(&self, table: &M0nTable) -> Result<()> {
        let max = (self.q.len() - 1).min(table.max_n());
        for n in 0..=max {
            let pairs = [
                ("Q+", &self.qplus[n], table.qplus(n)),
                ("Q", &self.q[n], table.q(n)),
                ("P", &self.p[n], table.p(n)),
            ];
            for (name, sym, poly) in pairs {
                if &char_poly_graded(sym, n)? != poly {
                    return Err(Error::Consistency(format!(
                        "{name}_{n}: symmetric-function pipeline disagrees with the polynomial recursion"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `Q¹_{n,k} = 1/n + (1/n) Σ_{k₀=0}^{k−2} #{r > 1 : k₀+2 ≤ r ≤ (n−k+k₀)/2, r | gcd(n, k−k₀)}`.
pub fn linear_coeff_formula(n: usize, k: usize) -> Rational {
    let mut count = 0i64;
    for k0 in 0..k.saturating_sub(1) {
        if n + k0 < k {
            continue;
        }
        let g = num_integer::gcd(n, k - k0);
        let hi = (n + k0 - k) / 2;
        count += ((k0 + 2).max(2)..=hi).filter(|r| g % r == 0).count() as i64;
    }
    rat(1 + count, n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(coeffs: &[(i64, i64)]) -> UniPoly<Rational> {
        UniPoly::from_coeffs(coeffs.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    #[test]
    fn small_values() {
        let t = M0nTable::build(6).unwrap();
        assert_eq!(t.qplus(1), &Poly::m());
        assert!(t.qplus(2).is_zero());
        assert_eq!(t.q(0), &Poly::one());
        assert_eq!(t.q(2), &Poly::from_m_poly(UniPoly::rising(2)));
        assert_eq!(t.p(3), &Poly::from_m_poly(UniPoly::rising(3)));
        assert_eq!(t.qplus(3), &Poly::from_m_poly(UniPoly::rising(3)).shift_t(1));
    }

    #[test]
    fn p5_matches_display() {
        let t = M0nTable::build(5).unwrap();
        let outer = row(&[(0, 1), (1, 5), (5, 12), (7, 24), (1, 12), (1, 120)]);
        let middle = row(&[(0, 1), (0, 1), (1, 4), (11, 24), (1, 4), (1, 24)]);
        assert_eq!(t.p(5), &Poly::from_rows(vec![outer.clone(), middle, outer]));
    }

    #[test]
    fn dp_matches_literal_sum() {
        let (qp, q) = compute_qplus_and_q(9).unwrap();
        let (qp2, q2) = compute_qplus_and_q_literal(9);
        assert_eq!(qp, qp2);
        assert_eq!(q, q2);
    }

    #[test]
    fn betti_and_poincare() {
        let t = M0nTable::build(6).unwrap();
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(t.betti_p(5).unwrap(), b(&[1, 5, 1]));
        assert_eq!(t.betti_q(4).unwrap(), b(&[1, 5, 1]));
        assert_eq!(t.betti_p(3).unwrap(), b(&[1]));
        let (p5, _) = t.invariant_poincare(5).unwrap();
        assert_eq!(p5, UniPoly::from_i64(&[1, 1, 1]));
        assert_eq!(t.invariant_poincare(3).unwrap().0, UniPoly::one());
        assert_eq!(t.invariant_poincare(4).unwrap().0, UniPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn identities() {
        let t = M0nTable::build(8).unwrap();
        t.check_exp_form(8).unwrap();
        t.exponential_identity_check(6).unwrap();
        for n in 3..=8 {
            t.wallcrossing_check(n).unwrap();
            t.check_structure(n).unwrap();
        }
    }

    #[test]
    fn symmetric_pipeline_agrees() {
        let t = M0nTable::build(6).unwrap();
        sym_tables(6).unwrap().check_against(&t).unwrap();
    }

    #[test]
    fn linear_coefficients() {
        let t = M0nTable::build(9).unwrap();
        let q6: Vec<Rational> = (0..=4).map(|k| t.q(6).coeff(1, k)).collect();
        assert_eq!(q6, vec![rat(1, 6), rat(1, 6), rat(1, 3), rat(1, 6), rat(1, 6)]);
        for n in 3..=9 {
            for k in 0..=n - 2 {
                assert_eq!(t.q(n).coeff(1, k), linear_coeff_formula(n, k), "n={n} k={k}");
            }
        }
    }
}
