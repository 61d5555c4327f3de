//! The Stanley map `Σ c_λ p_λ ↦ Σ c_λ m^{ℓ(λ)}` and what it says about representations.

use crate::biseries::{BivarPoly, QSeries};
use crate::error::{Error, Result};
use crate::partitions::{factorial, Partition};
use crate::scalar::{Rational, Scalar};
use crate::symfunc::{GradedSymFunc, SymFunc};
use crate::unipoly::UniPoly;
use num_bigint::BigInt;

/// Specialize every term without any degree check.
fn specialize<C: Scalar>(f: &SymFunc<C>) -> UniPoly<C> {
    let mut coeffs = vec![C::zero(); f.terms().map(|(l, _)| l.len() + 1).max().unwrap_or(0)];
    for (l, c) in f.terms() {
        coeffs[l.len()] = coeffs[l.len()].clone() + c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

/// `𝒮_F(m)` for `F` homogeneous of degree `n`.
pub fn char_poly<C: Scalar>(f: &SymFunc<C>, n: usize) -> Result<UniPoly<C>> {
    f.check_homogeneous(n)?;
    Ok(specialize(f))
}

/// `𝒮_F(m,t) = Σ_k 𝒮_{F_k}(m) t^k` for `F ∈ Λ_n[t]`.
pub fn char_poly_graded<C: Scalar>(f: &GradedSymFunc<C>, n: usize) -> Result<BivarPoly<C>> {
    let rows = f.parts().iter().map(|fk| char_poly(fk, n)).collect::<Result<Vec<_>>>()?;
    Ok(BivarPoly::from_rows(rows))
}

/// `m ↦ (−1)^n S(−m)`, the characteristic polynomial of `ωF`.
pub fn omega_char_poly<C: Scalar>(s: &UniPoly<C>, n: usize) -> UniPoly<C> {
    let flipped = s.negate_var();
    if n % 2 == 1 {
        -&flipped
    } else {
        flipped
    }
}

/// Graded version of [`omega_char_poly`].
pub fn omega_char_poly_graded<C: Scalar>(s: &BivarPoly<C>, n: usize) -> BivarPoly<C> {
    BivarPoly::from_rows(s.rows().iter().map(|r| omega_char_poly(r, n)).collect())
}

/// Numbers read off the characteristic polynomial of a representation of `S_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepInvariants<C> {
    /// Coefficient of `m^n`, i.e. `dim V / n!`.
    pub dim_over_nfact: C,
    /// `S(1) = dim V^{S_n}`.
    pub invariant_dim: C,
    /// `(−1)^n S(−1)`, the multiplicity of the sign representation.
    pub sign_mult: C,
}

impl RepInvariants<Rational> {
    /// `dim V`, provided it is an integer.
    pub fn dim(&self, n: usize) -> Result<BigInt> {
        let d = &self.dim_over_nfact * Rational::from_integer(factorial(n as u64));
        if d.is_integer() {
            Ok(d.to_integer())
        } else {
            Err(Error::Consistency(format!("dimension {d} is not an integer")))
        }
    }
}

pub fn char_poly_rep_invariants<C: Scalar>(s: &UniPoly<C>, n: usize) -> RepInvariants<C> {
    RepInvariants {
        dim_over_nfact: s.coeff(n),
        invariant_dim: s.eval(&C::one()),
        sign_mult: omega_char_poly(s, n).eval(&C::one()),
    }
}

/// `𝒮` of the permutation module `M^λ`: `∏_i ⟨⟨m, λ_i⟩⟩`.
pub fn perm_module_char_poly<C: Scalar>(lambda: &Partition) -> UniPoly<C> {
    lambda
        .parts()
        .iter()
        .fold(UniPoly::one(), |acc, &p| &acc * &UniPoly::rising(p as usize))
}

fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::from_integer(0.into());
    }
    Rational::from_integer(factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64)))
}

/// `B_{ij} = 𝒮_{M^{(n−j,j)}}(i − n)` for `0 ≤ i, j ≤ ⌊n/2⌋`.
pub fn length_two_matrix(n: usize) -> Vec<Vec<Rational>> {
    let r = n / 2;
    let sign = if n % 2 == 1 { -1 } else { 1 };
    let (n, sign) = (n as i64, Rational::from_integer(sign.into()));
    (0..=r as i64)
        .map(|i| {
            (0..=r as i64)
                .map(|j| {
                    if i > j {
                        Rational::from_integer(0.into())
                    } else {
                        &sign * binomial(n - i, n - j) * binomial(n - i, j)
                    }
                })
                .collect()
        })
        .collect()
}

/// Recover `c_j` in `V = Σ_j c_j M^{(n−j,j)}` from the values `𝒮_V(i − n)`,
/// `i = 0..=⌊n/2⌋`, by back substitution.
pub fn recover_length_two(values: &[Rational], n: usize) -> Result<Vec<Rational>> {
    let r = n / 2;
    if values.len() != r + 1 {
        return Err(Error::InvalidArgument(format!(
            "expected {} values for n = {n}, got {}",
            r + 1,
            values.len()
        )));
    }
    let b = length_two_matrix(n);
    let mut c = vec![Rational::from_integer(0.into()); r + 1];
    for i in (0..=r).rev() {
        let mut acc = values[i].clone();
        for j in i + 1..=r {
            acc -= &b[i][j] * &c[j];
        }
        c[i] = acc / &b[i][i];
    }
    Ok(c)
}

/// Weyl dimension `∏_{1≤i<j≤m₀} (1 + (λ_i − λ_j)/(j − i))`, i.e. `𝒮_{s_λ}(m₀)`.
pub fn schur_char_value(lambda: &Partition, m0: usize) -> Result<Rational> {
    if m0 < lambda.len() {
        return Err(Error::InvalidArgument(format!(
            "need at least {} variables, got {m0}",
            lambda.len()
        )));
    }
    let part = |i: usize| lambda.parts().get(i).copied().unwrap_or(0) as i64;
    let mut out = Rational::from_integer(1.into());
    for i in 0..m0 {
        for j in i + 1..m0 {
            out *= Rational::new((part(i) - part(j) + (j - i) as i64).into(), ((j - i) as i64).into());
        }
    }
    Ok(out)
}

/// `Ŝ_F = Σ_n 𝒮_{F_n}(m) q^n`, truncated at `q^N`.
pub fn hat_stanley<C: Scalar>(f: &SymFunc<C>, trunc: usize) -> QSeries<C> {
    let coeffs = (0..=trunc)
        .map(|n| BivarPoly::from_m_poly(specialize(&f.component(n))))
        .collect();
    QSeries::from_coeffs(trunc, coeffs)
}

/// Graded `Ŝ`: `p_λ t^k ↦ m^{ℓ(λ)} q^{|λ|} t^k`.
pub fn hat_stanley_graded<C: Scalar>(f: &GradedSymFunc<C>, trunc: usize) -> QSeries<C> {
    let coeffs = (0..=trunc)
        .map(|n| BivarPoly::from_rows(f.parts().iter().map(|fk| specialize(&fk.component(n))).collect()))
        .collect();
    QSeries::from_coeffs(trunc, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::symfunc::DEFAULT_GROUP_BOUND;
    use crate::partitions::Permutation;

    type S = SymFunc<Rational>;
    type P = UniPoly<Rational>;

    #[test]
    fn basic_char_polys() {
        for n in 0..=7 {
            assert_eq!(char_poly(&S::h(n), n).unwrap(), P::rising(n));
            assert_eq!(char_poly(&S::e(n), n).unwrap(), P::falling(n));
            assert_eq!(omega_char_poly(&P::rising(n), n), P::falling(n));
        }
        assert_eq!(char_poly(&S::p(4), 4).unwrap(), P::var());
        assert!(char_poly(&(&S::h(2) + &S::h(3)), 3).is_err());
    }

    #[test]
    fn invariants() {
        let inv = char_poly_rep_invariants(&P::rising(4), 4);
        assert_eq!(inv, RepInvariants { dim_over_nfact: rat(1, 24), invariant_dim: int(1), sign_mult: int(0) });
        let inv = char_poly_rep_invariants(&P::falling(4), 4);
        assert_eq!((inv.invariant_dim, inv.sign_mult), (int(0), int(1)));
        let c3 = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let ch = S::ch_of_subgroup(3, &[c3], DEFAULT_GROUP_BOUND).unwrap();
        let s = char_poly(&ch, 3).unwrap();
        assert_eq!(s, P::from_coeffs(vec![int(0), rat(2, 3), int(0), rat(1, 3)]));
        assert_eq!(char_poly_rep_invariants(&s, 3).invariant_dim, int(1));
    }

    #[test]
    fn permutation_modules() {
        let s = perm_module_char_poly::<Rational>(&Partition::from_parts(vec![4, 1]));
        let inv = char_poly_rep_invariants(&s, 5);
        assert_eq!(inv.dim(5).unwrap(), BigInt::from(5));
        for n in 1..=6u32 {
            let s = perm_module_char_poly::<Rational>(&Partition::column(n));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.eval(&int(-1)), int(sign));
        }
    }

    #[test]
    fn length_two_round_trip() {
        let n = 6;
        let coeffs = [int(2), int(0), int(3), int(1)];
        let mut poly = P::zero();
        for (j, c) in coeffs.iter().enumerate() {
            let lam = Partition::from_parts(vec![(n - j) as u32, j as u32]);
            poly = &poly + &perm_module_char_poly::<Rational>(&lam).scale(c);
        }
        let values: Vec<Rational> = (0..=n / 2).map(|i| poly.eval(&int(i as i64 - n as i64))).collect();
        assert_eq!(recover_length_two(&values, n).unwrap(), coeffs.to_vec());
        assert!(recover_length_two(&values[..2], n).is_err());
        // matrix entries agree with direct evaluation
        let b = length_two_matrix(7);
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let lam = Partition::from_parts(vec![(7 - j) as u32, j as u32]);
                assert_eq!(&perm_module_char_poly::<Rational>(&lam).eval(&int(i as i64 - 7)), v);
            }
        }
    }

    #[test]
    fn weyl_dimension() {
        let l21 = Partition::from_parts(vec![2, 1]);
        assert_eq!(schur_char_value(&l21, 3).unwrap(), int(8));
        assert!(schur_char_value(&l21, 1).is_err());
        for m0 in 2..6 {
            let l11 = Partition::from_parts(vec![1, 1]);
            assert_eq!(schur_char_value(&l11, m0).unwrap(), int((m0 * (m0 - 1) / 2) as i64));
            for l in crate::partitions::partitions(5) {
                if l.len() <= m0 {
                    let s = char_poly(&S::schur(&l).unwrap(), 5).unwrap();
                    assert_eq!(schur_char_value(&l, m0).unwrap(), s.eval(&int(m0 as i64)));
                }
            }
        }
    }

    #[test]
    fn hat_stanley_composes() {
        let f = S::h(2);
        let g = &S::e(2) + &S::p(2).scale(&rat(1, 3));
        let lhs = hat_stanley(&f.plethysm(&g), 6);
        let outer: Vec<P> = hat_stanley(&f, 2).coeffs().iter().map(|p| p.row(0)).collect();
        let rhs = QSeries::compose_series(&outer, &hat_stanley(&g, 6));
        assert_eq!(lhs, rhs);
    }
}
