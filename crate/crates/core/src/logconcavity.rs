//! Log-concavity of sequences and of bivariate polynomials, the `M̄_{0,n}`
//! conjecture sweep, and numeric asymptotic trend reports.

use crate::biseries::BivarPoly;
use crate::error::{Error, Result};
use crate::m0n::M0nTable;
use crate::partitions::factorial;
use crate::scalar::{int, to_decimal, OrderedScalar, Rational};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

type Poly = BivarPoly<Rational>;

/// Digits after the decimal point in exported reports.
pub const REPORT_DIGITS: usize = 20;

/// Which slice of a coefficient array a report is about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Notion {
    Sequence,
    Ultra,
    /// `A_k(m)` for a fixed `k`.
    LengthInDegree(usize),
    /// `A(m, t₀)`.
    LengthAt(Rational),
    /// `A^j(t)` for a fixed `j`.
    DegreeInLength(usize),
    /// `A(m₀, t)`.
    DegreeAt(Rational),
    /// All rows `A_k(m)` at once.
    LengthInEveryDegree,
    /// All columns `A^j(t)` at once.
    DegreeInEveryLength,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Notion::Sequence => write!(f, "sequence"),
            Notion::Ultra => write!(f, "ultra"),
            Notion::LengthInDegree(k) => write!(f, "length@degree-{k}"),
            Notion::LengthAt(t) => write!(f, "length@t={t}"),
            Notion::DegreeInLength(j) => write!(f, "degree@length-{j}"),
            Notion::DegreeAt(m) => write!(f, "degree@m={m}"),
            Notion::LengthInEveryDegree => write!(f, "length@every-degree"),
            Notion::DegreeInEveryLength => write!(f, "degree@every-length"),
        }
    }
}

impl Serialize for Notion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of one log-concavity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LCReport {
    pub notion: Notion,
    pub subject: String,
    pub pass: bool,
    /// First `(k−1, k, k+1)` with `a_k² < a_{k−1} a_{k+1}`.
    pub violation: Option<(usize, usize, usize)>,
    /// Row or column in which the violation sits, for whole-array notions.
    pub slice: Option<usize>,
    pub internal_zeros: bool,
}

impl LCReport {
    fn with(mut self, notion: Notion, subject: &str) -> Self {
        self.notion = notion;
        self.subject = subject.to_string();
        self
    }
}

fn has_internal_zeros<C: OrderedScalar>(seq: &[C]) -> bool {
    let nonzero: Vec<usize> = (0..seq.len()).filter(|&i| !seq[i].is_zero()).collect();
    match (nonzero.first(), nonzero.last()) {
        (Some(&a), Some(&b)) => b - a + 1 != nonzero.len(),
        _ => false,
    }
}

/// `|a_k|² ≥ |a_{k−1}| |a_{k+1}|` for every interior `k`.
pub fn is_logconcave<C: OrderedScalar>(seq: &[C], check_internal_zeros: bool) -> LCReport {
    let violation = (1..seq.len().saturating_sub(1)).find_map(|k| {
        let mid = seq[k].abs();
        (mid.clone() * mid < seq[k - 1].abs() * seq[k + 1].abs()).then_some((k - 1, k, k + 1))
    });
    LCReport {
        notion: Notion::Sequence,
        subject: String::new(),
        pass: violation.is_none(),
        violation,
        slice: None,
        internal_zeros: check_internal_zeros && has_internal_zeros(seq),
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64))
}

/// Log-concavity of `a_k / C(n, k)`.
pub fn is_ultra_logconcave(seq: &[Rational], n: usize) -> Result<LCReport> {
    if seq.len() != n + 1 {
        return Err(Error::InvalidArgument(format!("expected {} terms, got {}", n + 1, seq.len())));
    }
    let normalized: Vec<Rational> =
        seq.iter().enumerate().map(|(k, a)| a / Rational::from_integer(binomial(n, k))).collect();
    Ok(is_logconcave(&normalized, false).with(Notion::Ultra, ""))
}

fn slices(polys: &[crate::unipoly::UniPoly<Rational>], notion: Notion, subject: &str) -> LCReport {
    for (i, p) in polys.iter().enumerate() {
        let r = is_logconcave(p.coeffs(), true);
        if !r.pass {
            return LCReport { slice: Some(i), ..r.with(notion, subject) };
        }
    }
    LCReport {
        notion,
        subject: subject.to_string(),
        pass: true,
        violation: None,
        slice: None,
        internal_zeros: polys.iter().any(|p| has_internal_zeros(p.coeffs())),
    }
}

/// Row `A_k(m)` of `A`.
pub fn length_in_degree(a: &Poly, k: usize, subject: &str) -> LCReport {
    is_logconcave(a.row(k).coeffs(), true).with(Notion::LengthInDegree(k), subject)
}

/// `A(m, t₀)`.
pub fn length_at(a: &Poly, t0: &Rational, subject: &str) -> LCReport {
    is_logconcave(a.eval_t(t0).coeffs(), true).with(Notion::LengthAt(t0.clone()), subject)
}

/// Column `A^j(t)` of `A`.
pub fn degree_in_length(a: &Poly, j: usize, subject: &str) -> LCReport {
    is_logconcave(a.column(j).coeffs(), true).with(Notion::DegreeInLength(j), subject)
}

/// `A(m₀, t)`.
pub fn degree_at(a: &Poly, m0: &Rational, subject: &str) -> LCReport {
    is_logconcave(a.eval_m(m0).coeffs(), true).with(Notion::DegreeAt(m0.clone()), subject)
}

/// The four notions: every row, `A(m,t₀)`, every column, `A(m₀,t)`.
pub fn check_bivariate(a: &Poly, t0: &Rational, m0: &Rational, subject: &str) -> [LCReport; 4] {
    let columns: Vec<_> = (0..=a.m_degree().unwrap_or(0)).map(|j| a.column(j)).collect();
    [
        slices(a.rows(), Notion::LengthInEveryDegree, subject),
        length_at(a, t0, subject),
        slices(&columns, Notion::DegreeInEveryLength, subject),
        degree_at(a, m0, subject),
    ]
}

/// Smallest length checked by the degree-in-length part of the sweep: `⌈√n⌉ + 2`.
pub fn length_threshold(n: usize) -> usize {
    let r = n.sqrt();
    (if r * r == n { r } else { r + 1 }) + 2
}

/// One line of the conjecture sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub family: char,
    pub n: usize,
    /// Whether the conjecture claims this report passes.
    pub in_scope: bool,
    pub report: LCReport,
}

fn sweep_one(family: char, n: usize, a: &Poly) -> Vec<ConjectureRow> {
    let subject = format!("{family}_{n}");
    let one = Rational::one();
    let row = |in_scope, report| ConjectureRow { family, n, in_scope, report };
    let mut out = vec![row(true, length_at(a, &one, &subject))];
    for k in 0..=a.t_degree().unwrap_or(0) {
        out.push(row(true, length_in_degree(a, k, &subject)));
    }
    out.push(row(true, degree_at(a, &one, &subject)));
    let threshold = length_threshold(n);
    for j in 1..=n {
        out.push(row(j >= threshold, degree_in_length(a, j, &subject)));
    }
    out
}

/// All four conjectured checks on `P_n` and `Q_n` for `3 ≤ n ≤ max_n`; rows for
/// lengths below the threshold are kept but marked out of scope.
pub fn verify_m0n_conjecture(table: &M0nTable, max_n: usize) -> Result<Vec<ConjectureRow>> {
    if max_n > table.max_n() {
        return Err(Error::InvalidArgument(format!("table only reaches n = {}", table.max_n())));
    }
    Ok((3..=max_n)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut rows = sweep_one('P', n, table.p(n));
            rows.extend(sweep_one('Q', n, table.q(n)));
            rows
        })
        .collect())
}

/// Signless Stirling number of the first kind, by `c(n,j) = c(n−1,j−1) + (n−1)c(n−1,j)`.
pub fn stirling_c(n: usize, j: usize) -> Result<BigInt> {
    if j > n {
        return Err(Error::InvalidArgument(format!("c({n}, {j}) needs j ≤ n")));
    }
    let mut row = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); i + 1];
        for (jj, slot) in next.iter_mut().enumerate() {
            if jj >= 1 {
                *slot += &row[jj - 1];
            }
            if jj < i {
                *slot += &row[jj] * BigInt::from(i - 1);
            }
        }
        row = next;
    }
    Ok(row[j].clone())
}

/// `(c_k, d_k) = ((k+1)^{k−1}/k!, (k+1)^{k−2}/k!)`.
pub fn cayley_constants(k: usize) -> (Rational, Rational) {
    let kf = Rational::from_integer(factorial(k as u64));
    let base = int(k as i64 + 1);
    let c = num_traits::pow(base.clone(), k) / &base / &kf;
    let d = &c / &base;
    (c, d)
}

/// One row of an asymptotic trend table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrendRow {
    pub family: char,
    pub n: usize,
    pub k: usize,
    /// `m₀` for value reports, `j` for coefficient reports.
    pub param: usize,
    pub value: Rational,
    /// `value` divided by the `n`-dependent part of the main term; tends to the constant.
    pub normalized: Rational,
    /// `c_k` or `d_k`.
    pub prediction: Rational,
    /// `normalized / prediction`.
    pub ratio: Rational,
}

fn trend_row(family: char, n: usize, k: usize, param: usize, value: Rational, scale: &Rational, constant: &Rational) -> TrendRow {
    let normalized = &value / scale;
    let ratio = &normalized / constant;
    TrendRow { family, n, k, param, value, normalized, prediction: constant.clone(), ratio }
}

fn check_trend_args(table: &M0nTable, k: usize, max_n: usize) -> Result<()> {
    if max_n > table.max_n() {
        return Err(Error::InvalidArgument(format!("table only reaches n = {}", table.max_n())));
    }
    if k + 3 > max_n {
        return Err(Error::InvalidArgument(format!("need max_n ≥ k + 3 = {}", k + 3)));
    }
    Ok(())
}

/// `Q_{n,k}(m₀)` and `P_{n,k}(m₀)` against `c · n^e / e!` with `e = (k+1)m₀ − 1`.
pub fn asymptotic_value_report(table: &M0nTable, k: usize, m0: usize, max_n: usize) -> Result<Vec<TrendRow>> {
    check_trend_args(table, k, max_n)?;
    if m0 == 0 {
        return Err(Error::InvalidArgument("m₀ must be at least 1".into()));
    }
    let (c, d) = cayley_constants(k);
    let e = (k + 1) * m0 - 1;
    let m = int(m0 as i64);
    let mut rows = Vec::new();
    for n in k + 3..=max_n {
        let scale = num_traits::pow(int(n as i64), e) / Rational::from_integer(factorial(e as u64));
        rows.push(trend_row('Q', n, k, m0, table.q(n).row(k).eval(&m), &scale, &c));
        rows.push(trend_row('P', n, k, m0, table.p(n).row(k).eval(&m), &scale, &d));
    }
    Ok(rows)
}

/// `Q^{n−j}_{n,k}` and `P^{n−j}_{n,k}` against `c · (k+1)^{n−j} c(n,n−j) / n!`.
pub fn asymptotic_coeff_report(table: &M0nTable, k: usize, j: usize, max_n: usize) -> Result<Vec<TrendRow>> {
    check_trend_args(table, k, max_n)?;
    let (c, d) = cayley_constants(k);
    let mut rows = Vec::new();
    for n in (k + 3).max(j)..=max_n {
        let scale = num_traits::pow(int(k as i64 + 1), n - j) * Rational::from_integer(stirling_c(n, n - j)?)
            / Rational::from_integer(factorial(n as u64));
        rows.push(trend_row('Q', n, k, j, table.q(n).coeff(n - j, k), &scale, &c));
        rows.push(trend_row('P', n, k, j, table.p(n).coeff(n - j, k), &scale, &d));
    }
    Ok(rows)
}

/// Smallest `n₀` such that `A_{n,k}(m₀)² ≥ A_{n,k−1}(m₀) A_{n,k+1}(m₀)` for all
/// `n₀ ≤ n ≤ max_n`, or `None` if it fails at `max_n`.
pub fn value_lc_crossover(table: &M0nTable, family: char, k: usize, m0: usize, max_n: usize) -> Result<Option<usize>> {
    if k == 0 || max_n > table.max_n() {
        return Err(Error::InvalidArgument(format!("need k ≥ 1 and max_n ≤ {}", table.max_n())));
    }
    let m = int(m0 as i64);
    let holds = |n: usize| {
        let a = if family == 'P' { table.p(n) } else { table.q(n) };
        let v = |i: usize| a.row(i).eval(&m);
        v(k) * v(k) >= v(k - 1) * v(k + 1)
    };
    let mut start = None;
    for n in (3..=max_n).rev() {
        if holds(n) {
            start = Some(n);
        } else {
            break;
        }
    }
    Ok(start)
}

/// Whether the last `window` ratios move monotonically (either direction).
pub fn monotone_tail(values: &[Rational], window: usize) -> bool {
    let tail = &values[values.len().saturating_sub(window)..];
    let up = tail.windows(2).all(|w| w[0] <= w[1]);
    let down = tail.windows(2).all(|w| w[0] >= w[1]);
    up || down
}

/// Trend rows as CSV with a header, decimals at [`REPORT_DIGITS`] digits.
pub fn trend_csv(rows: &[TrendRow], param_name: &str) -> String {
    let mut out = format!("family,n,k,{param_name},value,normalized,prediction,ratio\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.family,
            r.n,
            r.k,
            r.param,
            to_decimal(&r.value, REPORT_DIGITS),
            to_decimal(&r.normalized, REPORT_DIGITS),
            to_decimal(&r.prediction, REPORT_DIGITS),
            to_decimal(&r.ratio, REPORT_DIGITS)
        ));
    }
    out
}

impl Serialize for TrendRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TrendRow", 8)?;
        st.serialize_field("family", &self.family.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("param", &self.param)?;
        st.serialize_field("value", &to_decimal(&self.value, REPORT_DIGITS))?;
        st.serialize_field("normalized", &to_decimal(&self.normalized, REPORT_DIGITS))?;
        st.serialize_field("prediction", &to_decimal(&self.prediction, REPORT_DIGITS))?;
        st.serialize_field("ratio", &to_decimal(&self.ratio, REPORT_DIGITS))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::unipoly::UniPoly;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn sequences() {
        assert!(is_logconcave(&ints(&[1, 2, 3, 2, 1]), true).pass);
        let r = is_logconcave(&ints(&[1, 1, 2, 1, 1]), true);
        assert_eq!((r.pass, r.violation), (false, Some((0, 1, 2))));
        let r = is_logconcave(&ints(&[1, 0, 1]), true);
        assert!(!r.pass);
        let r = is_logconcave(&ints(&[0, 1, 0, 0, 1]), true);
        assert!(r.pass && r.internal_zeros);
        assert!(!is_logconcave(&ints(&[0, 1, 0, 0, 1]), false).internal_zeros);
        assert!(is_logconcave(&ints(&[-1, 2, -3, 2, -1]), false).pass);
        assert!(is_logconcave::<f64>(&[1.0, 2.0, 1.0], false).pass);
        assert!(is_logconcave::<Rational>(&[], true).pass);
    }

    #[test]
    fn ultra() {
        assert!(is_ultra_logconcave(&ints(&[1, 4, 6, 4, 1]), 4).unwrap().pass);
        assert!(is_ultra_logconcave(&ints(&[1, 5, 1]), 2).unwrap().pass);
        assert!(!is_ultra_logconcave(&ints(&[1, 1, 10]), 2).unwrap().pass);
        assert!(is_ultra_logconcave(&ints(&[1, 1]), 2).is_err());
    }

    #[test]
    fn stirling_and_cayley() {
        assert_eq!(stirling_c(4, 2).unwrap(), BigInt::from(11));
        for n in 1..=8 {
            assert_eq!(stirling_c(n, n).unwrap(), BigInt::one());
            assert_eq!(stirling_c(n, 1).unwrap(), factorial(n as u64 - 1));
            let rising = UniPoly::<Rational>::rising(n).scale(&Rational::from_integer(factorial(n as u64)));
            for j in 0..=n {
                assert_eq!(Rational::from_integer(stirling_c(n, j).unwrap()), rising.coeff(j));
            }
        }
        assert!(stirling_c(2, 3).is_err());
        assert_eq!(cayley_constants(0), (int(1), int(1)));
        assert_eq!(cayley_constants(1), (int(1), rat(1, 2)));
        assert_eq!(cayley_constants(2), (rat(3, 2), rat(1, 2)));
        for k in 0..6 {
            let (c, d) = cayley_constants(k);
            assert_eq!(d, c / int(k as i64 + 1));
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(length_threshold(4), 4);
        assert_eq!(length_threshold(5), 5);
        assert_eq!(length_threshold(9), 5);
        assert_eq!(length_threshold(10), 6);
    }

    #[test]
    fn small_tables() {
        let table = M0nTable::build(6).unwrap();
        let p5 = table.p(5);
        assert!(!degree_in_length(p5, 1, "P_5").pass);
        assert!(!degree_in_length(p5, 2, "P_5").pass);
        assert!(!degree_in_length(table.q(6), 1, "Q_6").pass);
        let [rows, at_t, cols, at_m] = check_bivariate(p5, &int(1), &int(1), "P_5");
        assert!(rows.pass && at_t.pass && at_m.pass);
        assert_eq!((cols.pass, cols.slice), (false, Some(1)));
        let sweep = verify_m0n_conjecture(&table, 6).unwrap();
        assert!(sweep.iter().filter(|r| r.in_scope).all(|r| r.report.pass));
        let k0 = asymptotic_value_report(&table, 0, 1, 6).unwrap();
        assert!(k0.iter().all(|r| r.ratio == int(1)));
        let k0 = asymptotic_coeff_report(&table, 0, 0, 6).unwrap();
        assert!(k0.iter().all(|r| r.ratio == int(1)));
        let csv = trend_csv(&k0, "j");
        assert!(csv.starts_with("family,n,k,j,value"));
        assert!(csv.lines().nth(1).unwrap().ends_with(",1.00000000000000000000"));
    }
}
