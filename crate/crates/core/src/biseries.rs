//! Polynomials in `m` and `t`, and truncated `q`-series with such coefficients.

use crate::error::{Error, Result};
use crate::partitions::{partitions_up_to, Partition};
use crate::scalar::{Rational, Scalar};
use crate::symfunc::{inv_z, SymFunc};
use crate::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `A(m,t) = Σ_k A_k(m) t^k`, stored as one `m`-polynomial per power of `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivarPoly<C> {
    rows: Vec<UniPoly<C>>,
}

impl<C: Scalar> Default for BivarPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> BivarPoly<C> {
    pub fn zero() -> Self {
        BivarPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_rows(vec![UniPoly::constant(c)])
    }

    pub fn m() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// `c·m^j·t^k`.
    pub fn monomial(c: C, m_exp: usize, t_exp: usize) -> Self {
        let mut rows = vec![UniPoly::zero(); t_exp];
        rows.push(UniPoly::monomial(c, m_exp));
        Self::from_rows(rows)
    }

    pub fn from_rows(mut rows: Vec<UniPoly<C>>) -> Self {
        while rows.last().is_some_and(UniPoly::is_zero) {
            rows.pop();
        }
        BivarPoly { rows }
    }

    /// Embed a polynomial in `m` (no `t`).
    pub fn from_m_poly(p: UniPoly<C>) -> Self {
        Self::from_rows(vec![p])
    }

    /// Embed a polynomial in `t` (no `m`).
    pub fn from_t_poly(p: &UniPoly<C>) -> Self {
        Self::from_rows(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, usize, C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (j, k, c) in terms {
            out = &out + &Self::monomial(c, j, k);
        }
        out
    }

    pub fn rows(&self) -> &[UniPoly<C>] {
        &self.rows
    }

    /// `A_k(m)`, the coefficient of `t^k`.
    pub fn row(&self, k: usize) -> UniPoly<C> {
        self.rows.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// `A^j(t)`, the coefficient of `m^j`.
    pub fn column(&self, j: usize) -> UniPoly<C> {
        UniPoly::from_coeffs(self.rows.iter().map(|r| r.coeff(j)).collect())
    }

    /// Coefficient of `m^j t^k`.
    pub fn coeff(&self, j: usize, k: usize) -> C {
        self.rows.get(k).map_or_else(C::zero, |r| r.coeff(j))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn m_degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(UniPoly::degree).max()
    }

    /// Nonzero terms `(m-exponent, t-exponent, coefficient)` ordered by `(t, m)`.
    pub fn terms(&self) -> Vec<(usize, usize, C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, r)| {
                r.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(j, c)| (j, k, c.clone()))
            })
            .collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D + Copy) -> BivarPoly<D> {
        BivarPoly::from_rows(self.rows.iter().map(|r| r.map(f)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift_t(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![UniPoly::zero(); k];
        rows.extend(self.rows.iter().cloned());
        BivarPoly { rows }
    }

    /// `A(m, t^r)`.
    pub fn substitute_t_power(&self, r: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![UniPoly::zero(); (self.rows.len() - 1) * r + 1];
        for (k, row) in self.rows.iter().enumerate() {
            rows[k * r] = row.clone();
        }
        Self::from_rows(rows)
    }

    /// `A(g(m), t)`.
    pub fn compose_m(&self, g: &UniPoly<C>) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.compose(g)).collect())
    }

    /// `A(−m, t)`.
    pub fn negate_m(&self) -> Self {
        Self::from_rows(self.rows.iter().map(UniPoly::negate_var).collect())
    }

    /// `A(m₀, t)` as a polynomial in `t`.
    pub fn eval_m(&self, m0: &C) -> UniPoly<C> {
        UniPoly::from_coeffs(self.rows.iter().map(|r| r.eval(m0)).collect())
    }

    /// `A(m, t₀)` as a polynomial in `m`.
    pub fn eval_t(&self, t0: &C) -> UniPoly<C> {
        self.rows
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, r| &acc.scale(t0) + r)
    }

    pub fn eval(&self, m0: &C, t0: &C) -> C {
        self.eval_m(m0).eval(t0)
    }

    /// Exact quotient `self / divisor`, by long division in `t` over `Q[m]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let dk = divisor
            .t_degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = &divisor.rows[dk];
        let mut rem = self.rows.clone();
        if rem.len() <= dk {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::InexactDivision { remainder: format!("{:?}", self.terms()) })
            };
        }
        let mut quot = vec![UniPoly::zero(); rem.len() - dk];
        for i in (0..quot.len()).rev() {
            if rem[i + dk].is_zero() {
                continue;
            }
            let q = rem[i + dk].div_exact(lead).map_err(|_| Error::InexactDivision {
                remainder: format!("{:?}", BivarPoly::from_rows(rem.clone()).terms()),
            })?;
            for (j, d) in divisor.rows.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&q * d);
            }
            quot[i] = q;
        }
        let rem = BivarPoly::from_rows(rem);
        if rem.is_zero() {
            Ok(Self::from_rows(quot))
        } else {
            Err(Error::InexactDivision { remainder: format!("{:?}", rem.terms()) })
        }
    }

    /// `1 + t`.
    pub fn one_plus_t() -> Self {
        &Self::one() + &Self::t()
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for BivarPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(k, r)| match k {
                0 => format!("[{}]", r.display("m")),
                1 => format!("[{}]*t", r.display("m")),
                _ => format!("[{}]*t^{k}", r.display("m")),
            })
            .collect();
        write!(f, "{}", rows.join(" + "))
    }
}

impl<C: Scalar> Add for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn add(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        let n = self.rows.len().max(rhs.rows.len());
        BivarPoly::from_rows((0..n).map(|k| &self.row(k) + &rhs.row(k)).collect())
    }
}

impl<C: Scalar> Sub for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn sub(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        let n = self.rows.len().max(rhs.rows.len());
        BivarPoly::from_rows((0..n).map(|k| &self.row(k) - &rhs.row(k)).collect())
    }
}

impl<C: Scalar> Neg for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn neg(self) -> BivarPoly<C> {
        BivarPoly::from_rows(self.rows.iter().map(|r| -r).collect())
    }
}

impl<C: Scalar> Mul for &BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn mul(self, rhs: &BivarPoly<C>) -> BivarPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero();
        }
        let mut rows = vec![UniPoly::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                if !b.is_zero() {
                    rows[i + j] = &rows[i + j] + &(a * b);
                }
            }
        }
        BivarPoly::from_rows(rows)
    }
}

impl<C: Scalar> Add for BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn add(self, rhs: BivarPoly<C>) -> BivarPoly<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn sub(self, rhs: BivarPoly<C>) -> BivarPoly<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for BivarPoly<C> {
    type Output = BivarPoly<C>;
    fn mul(self, rhs: BivarPoly<C>) -> BivarPoly<C> {
        &self * &rhs
    }
}

/// One serialized term of a rational `BivarPoly`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub m: u32,
    pub t: u32,
    pub num: String,
    pub den: String,
}

impl BivarPoly<Rational> {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .into_iter()
            .map(|(j, k, c)| TermRecord {
                m: j as u32,
                t: k as u32,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    /// Strict inverse of [`to_records`](Self::to_records): rejects unsorted,
    /// duplicate, zero or non-reduced entries.
    pub fn from_records(records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero();
        let mut prev: Option<(u32, u32)> = None;
        for r in records {
            let key = (r.t, r.m);
            if prev.is_some_and(|p| p >= key) {
                return Err(Error::Parse(format!("term (m={}, t={}) out of order", r.m, r.t)));
            }
            prev = Some(key);
            let num: BigInt = r.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", r.num)))?;
            let den: BigInt = r.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", r.den)))?;
            if !den.is_positive() || num.is_zero() || !num.gcd(&den).is_one() {
                return Err(Error::Parse(format!("non-canonical coefficient {}/{}", r.num, r.den)));
            }
            out = &out + &Self::monomial(Rational::new(num, den), r.m as usize, r.t as usize);
        }
        Ok(out)
    }
}

impl Serialize for BivarPoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        Self::from_records(&records).map_err(serde::de::Error::custom)
    }
}

/// `Σ_{a=0}^{N} A_a(m,t) q^a`, with everything past `q^N` discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C> {
    coeffs: Vec<BivarPoly<C>>,
}

impl<C: Scalar> QSeries<C> {
    pub fn zero(trunc: usize) -> Self {
        QSeries { coeffs: vec![BivarPoly::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(trunc, BivarPoly::one(), 0)
    }

    /// `A·q^a` (zero if `a > trunc`).
    pub fn monomial(trunc: usize, a_poly: BivarPoly<C>, a: usize) -> Self {
        let mut s = Self::zero(trunc);
        if a <= trunc {
            s.coeffs[a] = a_poly;
        }
        s
    }

    /// Pads with zeros or drops coefficients so that exactly `trunc + 1` remain.
    pub fn from_coeffs(trunc: usize, mut coeffs: Vec<BivarPoly<C>>) -> Self {
        coeffs.resize(trunc + 1, BivarPoly::zero());
        QSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BivarPoly<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &BivarPoly<C> {
        &self.coeffs[a]
    }

    pub fn set_coeff(&mut self, a: usize, p: BivarPoly<C>) {
        self.coeffs[a] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BivarPoly::is_zero)
    }

    /// Same series at a smaller truncation.
    pub fn restrict(&self, trunc: usize) -> Self {
        Self::from_coeffs(trunc, self.coeffs[..=trunc.min(self.truncation())].to_vec())
    }

    pub fn scale(&self, c: &C) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiply every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &BivarPoly<C>) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|a| a * p).collect() }
    }

    /// `f^{[r]}`: `(m, q, t) ↦ (m, q^r, t^r)`.
    pub fn substitute_power(&self, r: usize) -> Self {
        assert!(r >= 1, "substitution power must be positive");
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (a, p) in self.coeffs.iter().enumerate() {
            if a * r <= n {
                out.coeffs[a * r] = p.substitute_t_power(r);
            }
        }
        out
    }

    /// Lowest `a` with a nonzero `q^a` coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    /// `F ∘ f = Σ_λ c_λ ∏_i f^{[λ_i]}`.
    pub fn sym_apply(f_sym: &SymFunc<C>, f: &Self) -> Self {
        let n = f.truncation();
        let mut cache: Vec<Option<Self>> = vec![None; 1];
        let mut out = Self::zero(n);
        for (lambda, c) in f_sym.terms() {
            let mut prod = Self::monomial(n, BivarPoly::constant(c.clone()), 0);
            for &part in lambda.parts() {
                let part = part as usize;
                if cache.len() <= part {
                    cache.resize(part + 1, None);
                }
                let factor = cache[part].get_or_insert_with(|| f.substitute_power(part));
                prod = &prod * &*factor;
            }
            out = &out + &prod;
        }
        out
    }

    /// `[h_0∘f, h_1∘f, …, h_R∘f]` from `r·(h_r∘f) = Σ_{i=1}^r f^{[i]}·(h_{r−i}∘f)`.
    pub fn complete_plethysms(&self, max_r: usize) -> Vec<Self> {
        let n = self.truncation();
        let powers: Vec<Self> = (0..=max_r)
            .map(|i| if i == 0 { Self::one(n) } else { self.substitute_power(i) })
            .collect();
        let mut hs = vec![Self::one(n)];
        for r in 1..=max_r {
            let mut acc = Self::zero(n);
            for i in 1..=r {
                acc = &acc + &(&powers[i] * &hs[r - i]);
            }
            hs.push(acc.scale(&(C::one() / C::from_i64(r as i64))));
        }
        hs
    }

    fn check_exp_input(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// `Exp(f) = Σ_{λ∈Par} z_λ⁻¹ f^{[λ]}`, truncated at `q^N`.
    ///
    /// Grouping `λ` by multiplicities, `z_λ⁻¹ f^{[λ]} = ∏_i (f^{[i]})^{m_i} / (i^{m_i} m_i!)`,
    /// so the sum factors as `∏_i Σ_k (f^{[i]}/i)^k / k!`.
    pub fn exp_plethystic(&self) -> Result<Self> {
        self.check_exp_input()?;
        let n = self.truncation();
        let mut out = Self::one(n);
        for i in 1..=n {
            let base = self.substitute_power(i).scale(&(C::one() / C::from_i64(i as i64)));
            let mut factor = Self::one(n);
            let mut power = Self::one(n);
            for k in 1..=n / i {
                power = (&power * &base).scale(&(C::one() / C::from_i64(k as i64)));
                factor = &factor + &power;
            }
            out = &out * &factor;
        }
        Ok(out)
    }

    /// The flat sum `Σ_{|λ|≤N} z_λ⁻¹ f^{[λ]}`, term by term.
    pub fn exp_plethystic_by_partitions(&self) -> Result<Self> {
        self.check_exp_input()?;
        let n = self.truncation();
        let powers: Vec<Self> = (0..=n)
            .map(|i| if i == 0 { Self::one(n) } else { self.substitute_power(i) })
            .collect();
        let mut out = Self::zero(n);
        for lambda in partitions_up_to(n) {
            let mut prod = Self::monomial(n, BivarPoly::constant(inv_z::<C>(&lambda)), 0);
            for &part in lambda.parts() {
                prod = &prod * &powers[part as usize];
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// `exp(Σ_{r≥1} f^{[r]}/r)` by the recurrence `a·E_a = Σ_{i=1}^a i·L_i·E_{a−i}`.
    pub fn exp_plethystic_via_log(&self) -> Result<Self> {
        self.check_exp_input()?;
        let n = self.truncation();
        let mut log = Self::zero(n);
        for r in 1..=n {
            log = &log + &self.substitute_power(r).scale(&(C::one() / C::from_i64(r as i64)));
        }
        let mut e = vec![BivarPoly::one()];
        for a in 1..=n {
            let mut acc = BivarPoly::zero();
            for i in 1..=a {
                acc = &acc + &(&log.coeffs[i] * &e[a - i]).scale(&C::from_i64(i as i64));
            }
            e.push(acc.scale(&(C::one() / C::from_i64(a as i64))));
        }
        Ok(Self::from_coeffs(n, e))
    }

    /// `(Σ_i g_i(m) q^i) ∘ (Σ_{j,k} f_{jk}(m) q^j t^k) = Σ g_i(f_{jk}(m)) q^{ij} t^{ik}`,
    /// summed over the nonzero blocks `f_{jk}`.
    pub fn compose_series(outer: &[UniPoly<C>], inner: &Self) -> Self {
        let n = inner.truncation();
        let mut out = Self::zero(n);
        for (j, p) in inner.coeffs.iter().enumerate() {
            for (k, block) in p.rows().iter().enumerate() {
                if block.is_zero() {
                    continue;
                }
                for (i, g) in outer.iter().enumerate() {
                    if i * j > n || g.is_zero() {
                        continue;
                    }
                    let term = BivarPoly::from_m_poly(g.compose(block)).shift_t(i * k);
                    out.coeffs[i * j] = &out.coeffs[i * j] + &term;
                }
            }
        }
        out
    }
}

impl<C: Scalar> Add for &QSeries<C> {
    type Output = QSeries<C>;
    fn add(self, rhs: &QSeries<C>) -> QSeries<C> {
        let n = self.truncation().min(rhs.truncation());
        QSeries { coeffs: (0..=n).map(|a| &self.coeffs[a] + &rhs.coeffs[a]).collect() }
    }
}

impl<C: Scalar> Sub for &QSeries<C> {
    type Output = QSeries<C>;
    fn sub(self, rhs: &QSeries<C>) -> QSeries<C> {
        let n = self.truncation().min(rhs.truncation());
        QSeries { coeffs: (0..=n).map(|a| &self.coeffs[a] - &rhs.coeffs[a]).collect() }
    }
}

impl<C: Scalar> Mul for &QSeries<C> {
    type Output = QSeries<C>;
    fn mul(self, rhs: &QSeries<C>) -> QSeries<C> {
        let n = self.truncation().min(rhs.truncation());
        let coeffs = (0..=n)
            .map(|a| {
                (0..=a).fold(BivarPoly::zero(), |acc, i| {
                    let (x, y) = (&self.coeffs[i], &rhs.coeffs[a - i]);
                    if x.is_zero() || y.is_zero() {
                        acc
                    } else {
                        &acc + &(x * y)
                    }
                })
            })
            .collect();
        QSeries { coeffs }
    }
}

/// `[h_0∘A, …, h_R∘A]` for a single polynomial block `A`, by
/// `r·(h_r∘A) = Σ_{i=1}^r A(m,t^i)·(h_{r−i}∘A)`.
pub fn complete_plethysm_blocks<C: Scalar>(a: &BivarPoly<C>, max_r: usize) -> Vec<BivarPoly<C>> {
    let powers: Vec<BivarPoly<C>> = (0..=max_r).map(|i| a.substitute_t_power(i.max(1))).collect();
    let mut hs = vec![BivarPoly::one()];
    for k in 1..=max_r {
        let mut acc = BivarPoly::zero();
        for i in 1..=k {
            acc = &acc + &(&powers[i] * &hs[k - i]);
        }
        hs.push(acc.scale(&(C::one() / C::from_i64(k as i64))));
    }
    hs
}

/// `h_r∘A` for a single polynomial block `A`.
pub fn complete_plethysm_block<C: Scalar>(a: &BivarPoly<C>, r: usize) -> BivarPoly<C> {
    complete_plethysm_blocks(a, r).pop().unwrap_or_else(BivarPoly::one)
}

/// Literal `Σ_{λ⊢r} z_λ⁻¹ ∏_i A(m, t^{λ_i})`; the reference for [`complete_plethysm_block`].
pub fn complete_plethysm_block_by_partitions<C: Scalar>(a: &BivarPoly<C>, r: usize) -> BivarPoly<C> {
    crate::partitions::partitions(r)
        .iter()
        .map(|lambda: &Partition| {
            lambda
                .parts()
                .iter()
                .fold(BivarPoly::constant(inv_z::<C>(lambda)), |acc, &p| {
                    &acc * &a.substitute_t_power(p as usize)
                })
        })
        .fold(BivarPoly::zero(), |acc, x| &acc + &x)
}
