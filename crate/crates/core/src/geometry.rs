//! Closed forms for products `Xⁿ`, GIT quotients `Yₙ` and Hessenberg varieties,
//! plus chromatic polynomials of graphs.

use crate::biseries::BivarPoly;
use crate::error::{Error, Result};
use crate::partitions::{partitions, Partition};
use crate::scalar::{int, Rational};
use crate::symfunc::{inv_z, SymFunc};
use crate::unipoly::UniPoly;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

type UPoly = UniPoly<Rational>;
type Poly = BivarPoly<Rational>;

/// Largest vertex count accepted by [`chromatic_by_counting`] by default.
pub const DEFAULT_COUNTING_BOUND: usize = 12;
/// Largest vertex count accepted by [`chromatic_polynomial`].
pub const DELETION_CONTRACTION_BOUND: usize = 40;
/// Largest edge count accepted by [`csf_p_expansion`] by default.
pub const DEFAULT_CSF_EDGE_BOUND: usize = 20;

/// Even Betti numbers `b₀, …, b_d` of a space without odd cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiProfile(Vec<u64>);

impl BettiProfile {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        match b.first() {
            Some(&b0) if b0 >= 1 => Ok(BettiProfile(b)),
            _ => Err(Error::InvalidArgument("b₀ must be at least 1".into())),
        }
    }

    /// Betti profile of `P^d`.
    pub fn projective_space(d: usize) -> Self {
        BettiProfile(vec![1; d + 1])
    }

    pub fn numbers(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `p_X(t) = Σ b_k t^k`.
    pub fn poincare(&self) -> UPoly {
        UPoly::from_coeffs(self.0.iter().map(|&b| int(b as i64)).collect())
    }
}

impl FromStr for BettiProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let b = s
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(b)
    }
}

/// `𝒮_{Xⁿ}(m,t) = Σ_{λ⊢n} z_λ⁻¹ ∏_i p_X(t^{λ_i}) m^{ℓ(λ)}`.
pub fn nfold_char_poly(b: &BettiProfile, n: usize) -> Poly {
    let px = b.poincare();
    partitions(n)
        .iter()
        .map(|l: &Partition| {
            let tpart = l
                .parts()
                .iter()
                .fold(UPoly::one(), |acc, &p| &acc * &px.substitute_power(p as usize));
            &Poly::from_t_poly(&tpart.scale(&inv_z::<Rational>(l))) * &Poly::monomial(Rational::one(), l.len(), 0)
        })
        .fold(Poly::zero(), |acc, x| acc + x)
}

/// `𝒮_{Xⁿ}(m,t) = Σ_{n₀+…+n_d=n} ∏_i ⟨⟨b_i m, n_i⟩⟩ t^{Σ i·n_i}`.
pub fn nfold_char_poly_multiset(b: &BettiProfile, n: usize) -> Poly {
    fn go(b: &[u64], i: usize, left: usize, acc: Poly, out: &mut Poly) {
        if i == b.len() {
            if left == 0 {
                *out = &*out + &acc;
            }
            return;
        }
        let bm = UPoly::linear(Rational::zero(), int(b[i] as i64));
        for ni in 0..=left {
            let factor = Poly::from_m_poly(bm.multichoose(ni)).shift_t(i * ni);
            go(b, i + 1, left - ni, &acc * &factor, out);
        }
    }
    let mut out = Poly::zero();
    go(b.numbers(), 0, n, Poly::one(), &mut out);
    out
}

fn t_factorial(a: usize) -> UPoly {
    (1..=a).fold(UPoly::one(), |acc, i| &acc * &UPoly::q_integer(i))
}

/// `[a choose b]_t = [a]_t! / ([a−b]_t! [b]_t!)`.
pub fn gaussian_binomial(a: usize, b: usize) -> Result<UPoly> {
    if b > a {
        return Err(Error::InvalidArgument(format!("gaussian binomial needs a ≥ b, got {a} < {b}")));
    }
    t_factorial(a).div_exact(&(&t_factorial(a - b) * &t_factorial(b)))
}

/// `𝒮_{Yₙ}(m,t) = Σ_{j<r} t^j (1 + t² + … + t^{2(r−j−1)}) ⟨⟨m,n−j⟩⟩⟨⟨m,j⟩⟩` for `n = 2r+1`.
pub fn git_char_poly(n: usize) -> Result<Poly> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("GIT quotient needs odd n ≥ 3, got {n}")));
    }
    let r = (n - 1) / 2;
    Ok((0..r)
        .map(|j| {
            let m_part = &UPoly::rising(n - j) * &UPoly::rising(j);
            let evens = UPoly::from_coeffs(
                (0..=2 * (r - j - 1)).map(|i| if i % 2 == 0 { Rational::one() } else { Rational::zero() }).collect(),
            );
            &Poly::from_m_poly(m_part) * &Poly::from_t_poly(&evens.shift(j))
        })
        .fold(Poly::zero(), |acc, x| acc + x))
}

/// A non-decreasing `h: [n] → [n]` with `h(i) ≥ i`, stored 1-indexed in values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HessenbergFunction(Vec<usize>);

impl HessenbergFunction {
    pub fn new(h: Vec<usize>) -> Result<Self> {
        let n = h.len();
        for (i, &v) in h.iter().enumerate() {
            if v < i + 1 || v > n || (i > 0 && v < h[i - 1]) {
                return Err(Error::InvalidArgument(format!("not a Hessenberg function: {h:?}")));
            }
        }
        Ok(HessenbergFunction(h))
    }

    pub fn identity(n: usize) -> Self {
        HessenbergFunction((1..=n).collect())
    }

    pub fn full(n: usize) -> Self {
        HessenbergFunction(vec![n; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `h(i) − i` for `i = 1..=n`.
    fn gaps(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().map(|(i, &v)| v - (i + 1))
    }

    /// Every Hessenberg function on `[n]`, lexicographically.
    pub fn all(n: usize) -> Vec<Self> {
        fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<HessenbergFunction>) {
            let i = cur.len();
            if i == n {
                out.push(HessenbergFunction(cur.clone()));
                return;
            }
            let lo = cur.last().copied().unwrap_or(1).max(i + 1);
            for v in lo..=n {
                cur.push(v);
                go(n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for HessenbergFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let h = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(h)
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `𝒮_{X_h}(m,1) = ∏_i (m + h(i) − i)`.
pub fn hessenberg_char_poly_t1(h: &HessenbergFunction) -> UPoly {
    h.gaps()
        .fold(UPoly::one(), |acc, g| &acc * &UPoly::linear(int(g as i64), Rational::one()))
}

/// `𝒳_{Γ_h}(m) = ∏_i (m − (h(i) − i))`.
pub fn hessenberg_chromatic(h: &HessenbergFunction) -> UPoly {
    h.gaps()
        .fold(UPoly::one(), |acc, g| &acc * &UPoly::linear(int(-(g as i64)), Rational::one()))
}

/// `𝒮_{X_h}(1,t) = ∏_i [h(i) − i + 1]_t`.
pub fn hessenberg_invariant_poincare(h: &HessenbergFunction) -> UPoly {
    h.gaps().fold(UPoly::one(), |acc, g| &acc * &UPoly::q_integer(g + 1))
}

/// Coefficient of `m` in `𝒮_{X_h}(m,t)`: `(1/n)[n]_t ∏_{i<n} [h(i) − i]_t`.
pub fn hessenberg_linear_coeff(h: &HessenbergFunction) -> UPoly {
    let n = h.n();
    if n == 0 {
        return UPoly::zero();
    }
    h.gaps()
        .take(n - 1)
        .fold(UPoly::q_integer(n).scale(&Rational::new(1.into(), (n as i64).into())), |acc, g| {
            &acc * &UPoly::q_integer(g)
        })
}

/// A simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("bad edge ({a}, {b}) on {n} vertices")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidArgument(format!("repeated edge ({a}, {b})")));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn edgeless(n: usize) -> Self {
        SimpleGraph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        SimpleGraph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph { n, edges: (1..n).map(|i| (i - 1, i)).collect() }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Parses `n` on the first line, then one 1-indexed `i j` pair per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph description".into()))?;
        let n: usize = header.parse().map_err(|e| Error::Parse(format!("vertex count {header:?}: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|x| x.parse().map_err(|e| Error::Parse(format!("{line:?}: {e}"))))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [a, b] if *a >= 1 && *b >= 1 => edges.push((a - 1, b - 1)),
                _ => return Err(Error::Parse(format!("expected two 1-indexed vertices, got {line:?}"))),
            }
        }
        Self::new(n, edges)
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (a, b) in &self.edges {
            writeln!(f, "{} {}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// `Γ_h`: vertices `1..=n`, edges `{i, j}` with `i < j ≤ h(i)`.
pub fn incomparability_graph(h: &HessenbergFunction) -> SimpleGraph {
    let edges = h
        .values()
        .iter()
        .enumerate()
        .flat_map(|(i, &hi)| (i + 1..hi).map(move |j| (i, j)))
        .collect();
    SimpleGraph { n: h.n(), edges }
}

/// Chromatic polynomial by deletion–contraction, memoized on relabeled edge sets.
pub fn chromatic_polynomial(g: &SimpleGraph) -> Result<UPoly> {
    if g.n > DELETION_CONTRACTION_BOUND {
        return Err(Error::BoundExceeded { what: "vertices for deletion-contraction", bound: DELETION_CONTRACTION_BOUND });
    }
    let mut memo = HashMap::new();
    Ok(deletion_contraction(g.n, g.edges.iter().copied().collect(), &mut memo))
}

type GraphKey = (usize, Vec<(usize, usize)>);

fn deletion_contraction(n: usize, edges: Vec<(usize, usize)>, memo: &mut HashMap<GraphKey, UPoly>) -> UPoly {
    if edges.is_empty() {
        return UPoly::monomial(Rational::one(), n);
    }
    if edges.len() == n * (n - 1) / 2 {
        return (0..n).fold(UPoly::one(), |acc, i| &acc * &UPoly::linear(int(-(i as i64)), Rational::one()));
    }
    let key = (n, edges.clone());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let (a, b) = *edges.last().expect("nonempty");
    let deleted: Vec<(usize, usize)> = edges[..edges.len() - 1].to_vec();
    // merge b into a, then move the last vertex into b's slot
    let relabel = |v: usize| {
        let v = if v == b { a } else { v };
        if v == n - 1 { b } else { v }
    };
    let contracted: BTreeSet<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| (relabel(x), relabel(y)))
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let p = &deletion_contraction(n, deleted, memo)
        - &deletion_contraction(n - 1, contracted.into_iter().collect(), memo);
    memo.insert(key, p.clone());
    p
}

fn count_proper_colorings(g: &SimpleGraph, m0: usize) -> u64 {
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for &(a, b) in &g.edges {
        earlier[b].push(a);
    }
    fn go(v: usize, m0: usize, earlier: &[Vec<usize>], colors: &mut Vec<usize>) -> u64 {
        if v == earlier.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..m0 {
            if earlier[v].iter().all(|&u| colors[u] != c) {
                colors.push(c);
                total += go(v + 1, m0, earlier, colors);
                colors.pop();
            }
        }
        total
    }
    go(0, m0, &earlier, &mut Vec::with_capacity(g.n))
}

/// The unique polynomial of degree at most `points.len() − 1` through `(i, points[i])`.
pub fn interpolate(points: &[Rational]) -> UPoly {
    let xs: Vec<Rational> = (0..points.len()).map(|i| int(i as i64)).collect();
    let mut out = UPoly::zero();
    for (i, y) in points.iter().enumerate() {
        let mut basis = UPoly::constant(y.clone());
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                let denom = &xs[i] - xj;
                basis = &basis * &UPoly::linear(-xj / &denom, Rational::one() / &denom);
            }
        }
        out = &out + &basis;
    }
    out
}

/// Chromatic polynomial by counting proper colorings with `0..=n` colors and interpolating.
pub fn chromatic_by_counting(g: &SimpleGraph, bound: usize) -> Result<UPoly> {
    if g.n > bound {
        return Err(Error::BoundExceeded { what: "vertices for counting colorings", bound });
    }
    let values: Vec<Rational> = (0..=g.n).map(|m0| int(count_proper_colorings(g, m0) as i64)).collect();
    Ok(interpolate(&values))
}

/// `csf_Γ = Σ_{S⊆E} (−1)^{|S|} p_{λ(S)}`, `λ(S)` the component sizes of `([n], S)`.
pub fn csf_p_expansion(g: &SimpleGraph, edge_bound: usize) -> Result<SymFunc<Rational>> {
    if g.num_edges() > edge_bound {
        return Err(Error::BoundExceeded { what: "edges for the chromatic symmetric function", bound: edge_bound });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut counts: HashMap<Partition, i64> = HashMap::new();
    for mask in 0u64..(1u64 << edges.len()) {
        let mut parent: Vec<usize> = (0..g.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let mut sizes = vec![0u32; g.n];
        for v in 0..g.n {
            sizes[find(&mut parent, v)] += 1;
        }
        let lambda = Partition::from_parts(sizes.into_iter().filter(|&s| s > 0).collect());
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *counts.entry(lambda).or_default() += sign;
    }
    Ok(SymFunc::from_terms(counts.into_iter().map(|(l, c)| (l, int(c)))))
}
