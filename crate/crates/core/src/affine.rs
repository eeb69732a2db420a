//! Exact affine geometry over the cube: affine closure of vertex sets,
//! intersection patterns, rational hyperplanes and their traces.
//!
//! Nothing here touches floating point. Affine hulls are maintained as
//! integer echelon forms of difference vectors; hyperplanes carry
//! arbitrary-precision rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cube::{CubeAutomorphism, Dim, Point, PointSet};
use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ParseRational(format!("{num}/0")));
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

/// Prints `p/q`; the denominator is always present.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Accepts `p/q` or a bare integer `p`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

/// The hyperplane `{x : <coeffs, x> = offset}` in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    dim: Dim,
    coeffs: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(dim: Dim, coeffs: Vec<Rational>, offset: Rational) -> Result<Self> {
        if coeffs.len() != dim.n() {
            return Err(Error::DimMismatch { expected: dim.n(), found: coeffs.len() });
        }
        if coeffs.iter().all(Rational::is_zero) {
            return Err(Error::ZeroHyperplane);
        }
        Ok(Hyperplane { dim, coeffs, offset })
    }

    pub fn from_ints(dim: Dim, coeffs: &[i64], offset: i64) -> Result<Self> {
        Hyperplane::new(dim, coeffs.iter().map(|&c| Rational::from_int(c)).collect(), Rational::from_int(offset))
    }

    /// `x_{i+1} = value`.
    pub fn facet(dim: Dim, i: usize, value: bool) -> Self {
        let mut c = vec![0i64; dim.n()];
        c[i] = 1;
        Hyperplane::from_ints(dim, &c, value as i64).expect("facet is nonzero")
    }

    /// `sum_{i in coords} x_{i+1} = level`.
    pub fn level(dim: Dim, coords: &[usize], level: i64) -> Self {
        let mut c = vec![0i64; dim.n()];
        for &i in coords {
            c[i] = 1;
        }
        Hyperplane::from_ints(dim, &c, level).expect("level set over a nonempty block")
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Exact membership test for one vertex.
    pub fn contains(&self, p: Point) -> bool {
        let mut sum = BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if p.coord(i) {
                sum += &c.0;
            }
        }
        sum == self.offset.0
    }

    /// The equation scaled to integers: `(coeffs, offset)` with common denominator cleared.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let mut l = BigInt::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.offset)) {
            l = l.lcm(c.denom());
        }
        let scale = |r: &Rational| (r.numer() * &l) / r.denom();
        (self.coeffs.iter().map(scale).collect(), scale(&self.offset))
    }

    /// Vertices on the hyperplane.
    pub fn trace(&self) -> PointSet {
        hyperplane_trace(self)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.0.is_negative();
            let mag = c.0.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{} x{}", mag, i + 1)?;
            }
        }
        write!(f, " = {}", self.offset.0)
    }
}

/// Vertices `p` of the cube with `<v, p> = alpha`.
pub fn hyperplane_trace(h: &Hyperplane) -> PointSet {
    let dim = h.dim;
    let (coeffs, offset) = h.integer_form();
    let small: Option<Vec<i64>> = coeffs.iter().map(|c| c.to_i64()).collect();
    let total: Option<i128> = small.as_ref().map(|v| v.iter().map(|&c| (c as i128).abs()).sum());
    match (small, total, offset.to_i128()) {
        (Some(c), Some(t), Some(target)) if t < i128::MAX / 2 => gray_trace(dim, &c, target),
        _ => {
            let mut out = PointSet::empty(dim);
            for p in dim.points() {
                let mut s = BigInt::zero();
                for (i, c) in coeffs.iter().enumerate() {
                    if p.coord(i) {
                        s += c;
                    }
                }
                if s == offset {
                    out.insert(p);
                }
            }
            out
        }
    }
}

// Walks the cube in Gray-code order so each step updates the running sum by one coefficient.
fn gray_trace(dim: Dim, coeffs: &[i64], target: i128) -> PointSet {
    let mut out = PointSet::empty(dim);
    let mut point = 0u32;
    let mut value = 0i128;
    if target == 0 {
        out.insert(Point(0));
    }
    for k in 1..dim.num_points() as u32 {
        let i = k.trailing_zeros();
        point ^= 1 << i;
        if point >> i & 1 == 1 {
            value += coeffs[i as usize] as i128;
        } else {
            value -= coeffs[i as usize] as i128;
        }
        if value == target {
            out.insert(Point(point));
        }
    }
    out
}

/// Image of `h` under `a`: its trace is `a(trace(h))`.
pub fn transform_hyperplane(a: &CubeAutomorphism, h: &Hyperplane) -> Result<Hyperplane> {
    a.dim().check(h.dim)?;
    let perm = a.perm();
    let flips = a.flips();
    let mut coeffs = vec![Rational::zero(); h.dim.n()];
    let mut offset = h.offset.0.clone();
    for (i, c) in h.coeffs.iter().enumerate() {
        let j = perm[i];
        if flips >> j & 1 == 1 {
            coeffs[j] = Rational(-c.0.clone());
            offset -= &c.0;
        } else {
            coeffs[j] = c.clone();
        }
    }
    Hyperplane::new(h.dim, coeffs, Rational(offset))
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    v: Vec<i64>,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Affine hull of a set of cube vertices, kept as an integer echelon basis of
/// the difference vectors `q - base`.
///
/// Rows are stored primitive (gcd 1). Their entries are bounded by the
/// Hadamard bound for `{-1,0,1}` matrices, `24^12 < 2^63`, so `i64` storage
/// with `i128` intermediates is exact for every supported dimension.
#[derive(Clone, Debug)]
pub struct AffineHull {
    dim: Dim,
    base: Point,
    rows: Vec<Row>,
}

impl AffineHull {
    pub fn new(dim: Dim, base: Point) -> Self {
        AffineHull { dim, base, rows: Vec::new() }
    }

    pub fn of(set: &PointSet) -> Result<Self> {
        let base = set.first().ok_or(Error::EmptySet)?;
        let mut h = AffineHull::new(set.dim(), base);
        for q in set.iter() {
            h.add(q);
            if h.rank() == set.dim().n() {
                break;
            }
        }
        Ok(h)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Affine dimension.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn diff(&self, q: Point, out: &mut [i64]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = q.coord(i) as i64 - self.base.coord(i) as i64;
        }
    }

    fn reduce(&self, d: &mut [i64]) {
        for row in &self.rows {
            let x = d[row.pivot];
            if x == 0 {
                continue;
            }
            let p = row.v[row.pivot] as i128;
            let x = x as i128;
            let mut g = 0i128;
            let mut tmp = [0i128; 24];
            for (j, t) in tmp.iter_mut().enumerate().take(d.len()) {
                *t = p * d[j] as i128 - x * row.v[j] as i128;
                g = gcd_i128(g, *t);
            }
            for j in 0..d.len() {
                d[j] = if g > 1 { tmp[j] / g } else { tmp[j] } as i64;
            }
        }
    }

    pub fn contains(&self, q: Point) -> bool {
        if self.rows.len() == self.dim.n() {
            return true;
        }
        let n = self.dim.n();
        let mut d = [0i64; 24];
        self.diff(q, &mut d[..n]);
        self.reduce(&mut d[..n]);
        d[..n].iter().all(|&x| x == 0)
    }

    /// Adds `q`; returns whether the affine dimension grew.
    pub fn add(&mut self, q: Point) -> bool {
        let n = self.dim.n();
        if self.rows.len() == n {
            return false;
        }
        let mut d = [0i64; 24];
        self.diff(q, &mut d[..n]);
        self.reduce(&mut d[..n]);
        match d[..n].iter().position(|&x| x != 0) {
            None => false,
            Some(pivot) => {
                let mut v = d[..n].to_vec();
                if v[pivot] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.rows.push(Row { pivot, v });
                true
            }
        }
    }

    /// All cube vertices in the hull.
    pub fn points(&self) -> PointSet {
        if self.rows.len() == self.dim.n() {
            return PointSet::full(self.dim);
        }
        let mut out = PointSet::empty(self.dim);
        for q in self.dim.points() {
            if self.contains(q) {
                out.insert(q);
            }
        }
        out
    }

    /// Whether every vertex of the hull lies in `within`; stops at the first
    /// vertex that does not.
    pub fn points_within(&self, within: &PointSet) -> Option<PointSet> {
        if self.rows.len() == self.dim.n() {
            return within.is_full().then(|| PointSet::full(self.dim));
        }
        let mut out = PointSet::empty(self.dim);
        for q in self.dim.points() {
            if self.contains(q) {
                if !within.contains(q) {
                    return None;
                }
                out.insert(q);
            }
        }
        Some(out)
    }

    /// A basis of linear equations `(w, beta)` cutting out the hull:
    /// `x` is in the hull iff `<w, x> = beta` for every pair. Each `w` is a
    /// primitive integer vector. Empty when the hull is all of `R^n`.
    pub fn equations(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        let n = self.dim.n();
        // Reduced row echelon form over Q.
        let mut rows: Vec<(usize, Vec<BigRational>)> = self
            .rows
            .iter()
            .map(|r| {
                let p = BigRational::from_integer(BigInt::from(r.v[r.pivot]));
                (r.pivot, r.v.iter().map(|&x| BigRational::from_integer(BigInt::from(x)) / &p).collect())
            })
            .collect();
        rows.sort_by_key(|r| r.0);
        for k in 0..rows.len() {
            let (pk, rk) = rows[k].clone();
            for (j, (_, rj)) in rows.iter_mut().enumerate() {
                if j == k || rj[pk].is_zero() {
                    continue;
                }
                let f = rj[pk].clone();
                for (a, b) in rj.iter_mut().zip(&rk) {
                    *a -= &f * b;
                }
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|r| r.0).collect();
        let mut eqs = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut w = vec![BigRational::zero(); n];
            w[free] = BigRational::one();
            for (p, r) in &rows {
                w[*p] = -r[free].clone();
            }
            let w = primitive(&w);
            let beta = (0..n).filter(|&i| self.base.coord(i)).map(|i| w[i].clone()).sum();
            eqs.push((w, beta));
        }
        eqs
    }
}

/// Scales a rational vector to a primitive integer vector with the same direction.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &l / x.denom()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// `aff(P) ∩ {0,1}^n`.
pub fn affine_closure(set: &PointSet) -> Result<PointSet> {
    Ok(AffineHull::of(set)?.points())
}

/// Whether `set` is the trace of some hyperplane: nonempty, affinely closed and proper.
pub fn is_pattern(set: &PointSet) -> bool {
    if set.is_empty() || set.is_full() {
        return false;
    }
    // Only the full cube has affine dimension n, so closure == set is enough.
    match AffineHull::of(set) {
        Ok(h) => h.rank() < set.dim().n() && h.points() == *set,
        Err(_) => false,
    }
}

/// A vertex set known to be an intersection pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(PointSet);

impl Pattern {
    pub fn new(points: PointSet) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NotAPattern("empty"));
        }
        if points.is_full() {
            return Err(Error::NotAPattern("full cube"));
        }
        if !is_pattern(&points) {
            return Err(Error::NotAPattern("not affinely closed"));
        }
        Ok(Pattern(points))
    }

    pub(crate) fn new_unchecked(points: PointSet) -> Self {
        debug_assert!(is_pattern(&points));
        Pattern(points)
    }

    pub fn points(&self) -> &PointSet {
        &self.0
    }

    pub fn into_points(self) -> PointSet {
        self.0
    }

    pub fn dim(&self) -> Dim {
        self.0.dim()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An explicit hyperplane whose trace is exactly `pattern`.
///
/// The hull equations `w_j x = beta_j` are combined with weights
/// `1, t, t^2, ...` for `t = 1, 2, ...`; each vertex off the pattern rules
/// out finitely many `t`, so the search terminates. Every candidate is
/// checked against the full trace.
pub fn realize_hyperplane(pattern: &Pattern) -> Result<Hyperplane> {
    let set = pattern.points();
    let dim = set.dim();
    let hull = AffineHull::of(set)?;
    let eqs = hull.equations();
    if eqs.is_empty() {
        return Err(Error::NotAPattern("full cube"));
    }
    let outside = dim.num_points() - set.len();
    let max_t = (eqs.len() - 1) * outside + 1;
    for t in 1..=max_t as u64 {
        let t = BigInt::from(t);
        let mut v = vec![BigInt::zero(); dim.n()];
        let mut alpha = BigInt::zero();
        let mut weight = BigInt::one();
        for (w, beta) in &eqs {
            for (a, b) in v.iter_mut().zip(w) {
                *a += &weight * b;
            }
            alpha += &weight * beta;
            weight *= &t;
        }
        let h = Hyperplane::new(
            dim,
            v.into_iter().map(|c| Rational(BigRational::from_integer(c))).collect(),
            Rational(BigRational::from_integer(alpha)),
        );
        if let Ok(h) = h {
            if hyperplane_trace(&h) == *set {
                return Ok(h);
            }
        }
        if eqs.len() == 1 {
            break;
        }
    }
    Err(Error::NotAPattern("no realizing hyperplane found"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::CubeAutomorphism;

    fn d(n: usize) -> Dim {
        Dim::new(n).unwrap()
    }

    fn set(items: &[&str]) -> PointSet {
        PointSet::parse_strs(None, items).unwrap()
    }

    /// Independent oracle: q is in aff(P) iff rank([P - p0]) == rank([P - p0, q - p0]),
    /// with ranks computed by exact rational elimination.
    fn rank_rational(vectors: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            let prow = m[rank].clone();
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = m[r][c].clone() / &pivot;
                    for (a, b) in m[r].iter_mut().zip(&prow) {
                        *a -= &f * b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn closure_oracle(s: &PointSet) -> PointSet {
        let dim = s.dim();
        let pts = s.to_vec();
        let p0 = pts[0];
        let diff = |q: Point| (0..dim.n()).map(|i| q.coord(i) as i64 - p0.coord(i) as i64).collect::<Vec<_>>();
        let base: Vec<Vec<i64>> = pts.iter().map(|&q| diff(q)).collect();
        let r = rank_rational(&base);
        let mut out = PointSet::empty(dim);
        for q in dim.points() {
            let mut m = base.clone();
            m.push(diff(q));
            if rank_rational(&m) == r {
                out.insert(q);
            }
        }
        out
    }

    #[test]
    fn rational_format() {
        assert_eq!(Rational::from_str("6/4").unwrap().to_string(), "3/2");
        assert_eq!(Rational::from_str("3").unwrap().to_string(), "3/1");
        assert_eq!(Rational::from_str("1/-2").unwrap().to_string(), "-1/2");
        assert!(Rational::from_str("1/0").is_err());
        assert!(Rational::from_str("a").is_err());
    }

    #[test]
    fn closure_examples() {
        let p = set(&["000", "110", "101"]);
        assert_eq!(affine_closure(&p).unwrap(), p);
        let q = set(&["000", "110", "101", "011"]);
        assert_eq!(affine_closure(&q).unwrap(), PointSet::full(d(3)));
        let single = set(&["010"]);
        assert_eq!(affine_closure(&single).unwrap(), single);
        assert!(affine_closure(&PointSet::empty(d(3))).is_err());
    }

    #[test]
    fn closure_matches_rank_oracle_exhaustive_n3() {
        for mask in 1u64..256 {
            let s = PointSet::from_mask(d(3), mask);
            assert_eq!(affine_closure(&s).unwrap(), closure_oracle(&s), "{s:?}");
        }
    }

    #[test]
    fn closure_laws_exhaustive_n3() {
        for a in 1u64..256 {
            let sa = PointSet::from_mask(d(3), a);
            let ca = affine_closure(&sa).unwrap();
            assert!(sa.is_subset(&ca));
            assert_eq!(affine_closure(&ca).unwrap(), ca);
            for b in (1u64..256).filter(|b| a & !b == 0) {
                let cb = affine_closure(&PointSet::from_mask(d(3), b)).unwrap();
                assert!(ca.is_subset(&cb));
            }
        }
    }

    #[test]
    fn pattern_examples() {
        assert!(is_pattern(&set(&["100", "010", "001"])));
        assert!(!is_pattern(&set(&["0", "1"])));
        assert!(!is_pattern(&set(&["00", "01", "10"])));
        assert!(!is_pattern(&PointSet::empty(d(2))));
    }

    #[test]
    fn trace_examples() {
        let h = Hyperplane::from_ints(d(3), &[1, 1, 1], 1).unwrap();
        assert_eq!(h.trace(), set(&["100", "010", "001"]));
        let h = Hyperplane::from_ints(d(2), &[1, 0], 1).unwrap();
        assert_eq!(h.trace(), set(&["10", "11"]));
        let h = Hyperplane::from_ints(d(2), &[1, 2], 0).unwrap();
        assert_eq!(h.trace(), set(&["00"]));
        let h = Hyperplane::from_ints(d(2), &[1, 1], 5).unwrap();
        assert!(h.trace().is_empty());
        assert!(Hyperplane::from_ints(d(2), &[0, 0], 1).is_err());
    }

    #[test]
    fn trace_agrees_with_pointwise_and_bigint_paths() {
        let h = Hyperplane::new(
            d(4),
            vec![
                Rational::from_str("1/2").unwrap(),
                Rational::from_str("1/2").unwrap(),
                Rational::from_str("-1/3").unwrap(),
                Rational::from_int(0),
            ],
            Rational::from_str("2/3").unwrap(),
        )
        .unwrap();
        let expected = PointSet::from_points(d(4), d(4).points().filter(|&p| h.contains(p))).unwrap();
        assert_eq!(h.trace(), expected);
        let huge = Hyperplane::new(
            d(3),
            vec![Rational::from_str("100000000000000000000000000000").unwrap(), Rational::from_int(1), Rational::from_int(0)],
            Rational::from_int(1),
        )
        .unwrap();
        assert_eq!(huge.trace(), set(&["010", "011"]));
    }

    #[test]
    fn realize_examples() {
        let sphere = Pattern::new(set(&["100", "010", "001"])).unwrap();
        let h = realize_hyperplane(&sphere).unwrap();
        assert_eq!(h, Hyperplane::from_ints(d(3), &[1, 1, 1], 1).unwrap());
        let origin = Pattern::new(set(&["00"])).unwrap();
        assert_eq!(realize_hyperplane(&origin).unwrap().trace(), set(&["00"]));
        let pair = Pattern::new(set(&["000", "110"])).unwrap();
        assert_eq!(realize_hyperplane(&pair).unwrap().trace(), set(&["000", "110"]));
        assert!(Pattern::new(set(&["00", "01", "10"])).is_err());
        assert!(Pattern::new(PointSet::full(d(2))).is_err());
    }

    #[test]
    fn transform_examples() {
        let h = Hyperplane::from_ints(d(1), &[1], 0).unwrap();
        let flip = CubeAutomorphism::new(d(1), vec![0], 1).unwrap();
        let t = transform_hyperplane(&flip, &h).unwrap();
        assert_eq!(t, Hyperplane::from_ints(d(1), &[-1], -1).unwrap());
        assert_eq!(t.trace(), set(&["1"]));
        let id = CubeAutomorphism::identity(d(3));
        let h = Hyperplane::from_ints(d(3), &[1, 2, 0], 1).unwrap();
        assert_eq!(transform_hyperplane(&id, &h).unwrap(), h);
    }

    #[test]
    fn transform_equivariance_exhaustive_n3() {
        let dim = d(3);
        let planes: Vec<Hyperplane> = [
            (vec![1, 1, 1], 1),
            (vec![1, -1, 0], 0),
            (vec![2, 1, 0], 1),
            (vec![1, 0, 0], 1),
            (vec![1, 2, 4], 3),
        ]
        .into_iter()
        .map(|(c, o)| Hyperplane::from_ints(dim, &c, o).unwrap())
        .collect();
        for a in CubeAutomorphism::all(dim) {
            for h in &planes {
                let lhs = transform_hyperplane(&a, h).unwrap().trace();
                let rhs = a.apply_set(&h.trace()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn equations_cut_out_hull() {
        let s = set(&["0000", "1100", "1010"]);
        let hull = AffineHull::of(&s).unwrap();
        let eqs = hull.equations();
        assert_eq!(eqs.len(), 4 - hull.rank());
        for q in d(4).points() {
            let on_all = eqs.iter().all(|(w, b)| {
                let v: BigInt = (0..4).filter(|&i| q.coord(i)).map(|i| w[i].clone()).sum();
                v == *b
            });
            assert_eq!(on_all, hull.contains(q));
        }
    }
}
