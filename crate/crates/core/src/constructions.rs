//! Explicit exact covers: small avoided sets (`|S| <= 4`), single points
//! removed from a layer, the fixed-`k` dimension reduction, and covers built
//! from Hamming spheres around a total dominating set.
//!
//! Every builder returns a verified [`CoverCertificate`]; a failed check is
//! reported as [`Error::Construction`].
//!
//! The small-set builders follow one pipeline: translate the lexicographically
//! smallest member of `S` to the origin, permute coordinates into a normal
//! form, write down the hyperplanes there, and map them back.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fs;
use std::ops::Range;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::affine::{transform_hyperplane, Hyperplane, Rational};
use crate::catalog::cache_dir;
use crate::cube::{hamming_distance, CubeAutomorphism, Dim, Point, PointSet};
use crate::error::{Error, Result};
use crate::solver::{
    find_cover_within_budget, min_exact_cover, three_covered_one_missed, verify_exact_cover, verify_layer_cover,
    CoverCertificate, BUDGETED_CAP, CERTIFIED_CAP, DEFAULT_NODE_LIMIT,
};

fn certify(hs: Vec<Hyperplane>, avoided: &PointSet) -> Result<CoverCertificate> {
    let cert = verify_exact_cover(&hs, avoided)?;
    if !cert.verified {
        return Err(Error::Construction(format!(
            "covered avoided {:?}, missed {:?}",
            cert.report.covered_avoided, cert.report.uncovered
        )));
    }
    Ok(cert)
}

fn expect_size(s: &PointSet, k: usize) -> Result<()> {
    if s.len() != k {
        return Err(Error::WrongSize { expected: k, found: s.len() });
    }
    Ok(())
}

/// Lexicographically smallest member (by bit string).
fn lex_min(s: &PointSet) -> Point {
    let dim = s.dim();
    s.iter().min_by_key(|p| p.lex_key(dim)).expect("nonempty set")
}

/// Permutation sending `order[k]` to position `k`.
fn ordering(dim: Dim, order: &[usize]) -> CubeAutomorphism {
    let mut perm = vec![0; dim.n()];
    for (k, &i) in order.iter().enumerate() {
        perm[i] = k;
    }
    CubeAutomorphism::permutation(dim, perm).expect("ordering is a permutation")
}

/// Coordinates in `mask` first (ascending), then the rest.
fn support_first(dim: Dim, masks: &[u32]) -> Vec<usize> {
    let mut order = Vec::with_capacity(dim.n());
    for &m in masks {
        order.extend((0..dim.n()).filter(|&i| m >> i & 1 == 1));
    }
    let used = masks.iter().fold(0, |a, &m| a | m);
    order.extend((0..dim.n()).filter(|&i| used >> i & 1 == 0));
    order
}

fn frac(p: usize, q: usize) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `sum_k w_k * (sum_{i in block_k} x_i) = offset`.
fn block_plane(dim: Dim, blocks: &[(Range<usize>, BigRational)], offset: BigRational) -> Hyperplane {
    let mut coeffs = vec![Rational::zero(); dim.n()];
    for (r, w) in blocks {
        for i in r.clone() {
            coeffs[i] = Rational(w.clone());
        }
    }
    Hyperplane::new(dim, coeffs, Rational(offset)).expect("block plane is nonzero")
}

/// Level sets `sum_{block} x = j` for `j = 1..len-1`.
fn inner_levels(dim: Dim, block: Range<usize>, out: &mut Vec<Hyperplane>) {
    let coords: Vec<usize> = block.collect();
    for j in 1..coords.len() {
        out.push(Hyperplane::level(dim, &coords, j as i64));
    }
}

fn facets_one(dim: Dim, coords: Range<usize>, out: &mut Vec<Hyperplane>) {
    out.extend(coords.map(|i| Hyperplane::facet(dim, i, true)));
}

fn pull_back(to_normal: &CubeAutomorphism, hs: Vec<Hyperplane>) -> Result<Vec<Hyperplane>> {
    let inv = to_normal.inverse();
    hs.iter().map(|h| transform_hyperplane(&inv, h)).collect()
}

/// `{x1 = 0}` and `{x1 = 1}`.
pub fn cover_full_cube(dim: Dim) -> Result<CoverCertificate> {
    certify(vec![Hyperplane::facet(dim, 0, false), Hyperplane::facet(dim, 0, true)], &PointSet::empty(dim))
}

/// The facets through the far side of each coordinate, moved to `s`.
pub fn cover_minus_one(s: &PointSet) -> Result<CoverCertificate> {
    expect_size(s, 1)?;
    let dim = s.dim();
    let t = CubeAutomorphism::translation(dim, lex_min(s));
    let mut hs = Vec::new();
    facets_one(dim, 0..dim.n(), &mut hs);
    certify(pull_back(&t, hs)?, s)
}

/// `S = {0, u}` after normalization, with `supp(u) = {1..ell}`.
#[derive(Clone, Debug)]
pub struct TwoPointForm {
    pub translation: CubeAutomorphism,
    pub permutation: CubeAutomorphism,
    pub ell: usize,
}

impl TwoPointForm {
    pub fn of(s: &PointSet) -> Result<Self> {
        expect_size(s, 2)?;
        let dim = s.dim();
        let s0 = lex_min(s);
        let u = s.iter().find(|&p| p != s0).expect("two points").0 ^ s0.0;
        Ok(TwoPointForm {
            translation: CubeAutomorphism::translation(dim, s0),
            permutation: ordering(dim, &support_first(dim, &[u])),
            ell: u.count_ones() as usize,
        })
    }

    pub fn to_normal(&self) -> CubeAutomorphism {
        self.permutation.compose(&self.translation).expect("same dimension")
    }
}

/// Exactly `n - 1` hyperplanes for `|S| = 2`.
pub fn cover_minus_two(s: &PointSet) -> Result<CoverCertificate> {
    let form = TwoPointForm::of(s)?;
    let dim = s.dim();
    let mut hs = Vec::new();
    facets_one(dim, form.ell..dim.n(), &mut hs);
    inner_levels(dim, 0..form.ell, &mut hs);
    certify(pull_back(&form.to_normal(), hs)?, s)
}

/// `S = {0, u, w}` after normalization, with `supp(u) = A ∪ B` and
/// `supp(w) = A ∪ C` laid out as consecutive blocks of sizes `a, b, c`.
#[derive(Clone, Debug)]
pub struct ThreePointForm {
    pub translation: CubeAutomorphism,
    pub permutation: CubeAutomorphism,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl ThreePointForm {
    pub fn of(s: &PointSet) -> Result<Self> {
        expect_size(s, 3)?;
        let dim = s.dim();
        let s0 = lex_min(s);
        let rest: Vec<u32> = s.iter().filter(|&p| p != s0).map(|p| p.0 ^ s0.0).collect();
        let (p, q) = if rest[0] < rest[1] { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
        // The point contributing `c` must have support outside the other's.
        let (u, w) = if q & !p != 0 { (p, q) } else { (q, p) };
        let (a, b, c) = (u & w, u & !w, w & !u);
        Ok(ThreePointForm {
            translation: CubeAutomorphism::translation(dim, s0),
            permutation: ordering(dim, &support_first(dim, &[a, b, c])),
            a: a.count_ones() as usize,
            b: b.count_ones() as usize,
            c: c.count_ones() as usize,
        })
    }

    pub fn to_normal(&self) -> CubeAutomorphism {
        self.permutation.compose(&self.translation).expect("same dimension")
    }
}

/// Exactly `n - 1` hyperplanes for `|S| = 3`.
pub fn cover_minus_three(s: &PointSet) -> Result<CoverCertificate> {
    let f = ThreePointForm::of(s)?;
    let dim = s.dim();
    let (a, b, c) = (f.a, f.b, f.c);
    let (ra, rb, rc) = (0..a, a..a + b, a + b..a + b + c);
    let mut hs = Vec::new();
    facets_one(dim, a + b + c..dim.n(), &mut hs);
    inner_levels(dim, ra.clone(), &mut hs);
    inner_levels(dim, rb.clone(), &mut hs);
    inner_levels(dim, rc.clone(), &mut hs);
    let one = || BigRational::from_integer(1.into());
    if b == 0 {
        hs.push(block_plane(dim, &[(ra, -frac(1, a)), (rc, frac(1, c))], one()));
    } else if a == 0 {
        hs.push(block_plane(dim, &[(rb, frac(1, b)), (rc, frac(1, c))], frac(2, 1)));
    } else {
        hs.push(block_plane(dim, &[(ra, frac(1, a)), (rb.clone(), frac(1, b)), (rc.clone(), frac(1, c))], one()));
        hs.push(block_plane(dim, &[(rb, frac(1, b)), (rc, frac(1, c))], frac(2, 1)));
    }
    certify(pull_back(&f.to_normal(), hs)?, s)
}

/// Replaces the first variable of `h` by the block average
/// `(x_1 + ... + x_a) / a`, shifting the other coordinates up by `a - 1`.
pub fn merge_lift(h: &Hyperplane, a: usize) -> Result<Hyperplane> {
    if a == 0 {
        return Err(Error::InvalidArgument("merge block must be nonempty".into()));
    }
    let dim = Dim::new(h.dim().n() + a - 1)?;
    let first = Rational(&h.coeffs()[0].0 / BigInt::from(a));
    let mut coeffs = vec![first; a];
    coeffs.extend(h.coeffs()[1..].iter().cloned());
    Hyperplane::new(dim, coeffs, h.offset().clone())
}

/// Column types of the 4-point template, as `(u, v, w)` bit triples.
pub const VENN_TYPES: [u8; 7] = [0b111, 0b110, 0b101, 0b011, 0b100, 0b010, 0b001];

/// `S = {0, u, v, w}` after normalization: coordinates grouped by column type
/// in [`VENN_TYPES`] order, then the all-zero columns.
#[derive(Clone, Debug)]
pub struct VennForm {
    pub translation: CubeAutomorphism,
    pub permutation: CubeAutomorphism,
    pub multiplicities: [usize; 7],
    pub zero_columns: usize,
}

impl VennForm {
    pub fn of(s: &PointSet) -> Result<Self> {
        expect_size(s, 4)?;
        let dim = s.dim();
        let s0 = lex_min(s);
        let mut rows: Vec<Point> = s.iter().filter(|&p| p != s0).map(|p| Point(p.0 ^ s0.0)).collect();
        rows.sort_by_key(|p| (Reverse(p.weight()), Reverse(p.lex_key(dim))));
        let mut masks = [0u32; 7];
        for i in 0..dim.n() {
            let ty = (rows[0].coord(i) as u8) << 2 | (rows[1].coord(i) as u8) << 1 | rows[2].coord(i) as u8;
            if let Some(t) = VENN_TYPES.iter().position(|&x| x == ty) {
                masks[t] |= 1 << i;
            }
        }
        let multiplicities = masks.map(|m| m.count_ones() as usize);
        Ok(VennForm {
            translation: CubeAutomorphism::translation(dim, s0),
            permutation: ordering(dim, &support_first(dim, &masks)),
            zero_columns: dim.n() - multiplicities.iter().sum::<usize>(),
            multiplicities,
        })
    }

    pub fn to_normal(&self) -> CubeAutomorphism {
        self.permutation.compose(&self.translation).expect("same dimension")
    }

    /// Bit `t` set when column type `t` occurs.
    pub fn presence(&self) -> u8 {
        (0..7).filter(|&t| self.multiplicities[t] > 0).fold(0, |m, t| m | 1 << t)
    }
}

/// The base instance `{0, u, v, w}` with one column of each type in
/// `presence`, or `None` when the four rows are not distinct.
pub fn venn_base_instance(presence: u8) -> Option<PointSet> {
    let types: Vec<u8> = (0..7).filter(|&t| presence >> t & 1 == 1).map(|t| VENN_TYPES[t]).collect();
    let dim = Dim::new(types.len()).ok()?;
    let row = |bit: u8| Point(types.iter().enumerate().filter(|(_, &ty)| ty & bit != 0).fold(0, |m, (j, _)| m | 1 << j));
    let s = PointSet::from_points(dim, [Point(0), row(4), row(2), row(1)]).ok()?;
    (s.len() == 4).then_some(s)
}

/// Budget for a 4-point instance: `n - 2` for a 2-face, else `n - 1`.
pub fn minus_four_size(s: &PointSet) -> Result<usize> {
    let n = s.dim().n();
    Ok(if three_covered_one_missed(s)? { n - 1 } else { n - 2 })
}

#[derive(Serialize, Deserialize)]
struct BaseEntry {
    venn_multiplicities: [u8; 7],
    size: usize,
    hyperplanes: Vec<Hyperplane>,
}

fn base_cache_path() -> Option<PathBuf> {
    cache_dir().map(|d| d.join("venn-base.json"))
}

fn base_cache() -> &'static Mutex<BTreeMap<u8, Vec<Hyperplane>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u8, Vec<Hyperplane>>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut map = BTreeMap::new();
        let entries: Vec<BaseEntry> = base_cache_path()
            .and_then(|p| fs::read_to_string(p).ok())
            .and_then(|t| serde_json::from_str(&t).ok())
            .unwrap_or_default();
        for e in entries {
            let key = (0..7).filter(|&t| e.venn_multiplicities[t] > 0).fold(0u8, |m, t| m | 1 << t);
            // Only entries that still verify are trusted.
            let ok = venn_base_instance(key).is_some_and(|s| {
                verify_exact_cover(&e.hyperplanes, &s).is_ok_and(|c| c.verified)
                    && minus_four_size(&s).is_ok_and(|k| e.hyperplanes.len() <= k)
            });
            if ok {
                map.insert(key, e.hyperplanes);
            }
        }
        Mutex::new(map)
    })
}

fn persist_base_cache(map: &BTreeMap<u8, Vec<Hyperplane>>) {
    let Some(path) = base_cache_path() else { return };
    let entries: Vec<BaseEntry> = map
        .iter()
        .map(|(&key, hs)| BaseEntry {
            venn_multiplicities: std::array::from_fn(|t| key >> t & 1),
            size: hs.len(),
            hyperplanes: hs.clone(),
        })
        .collect();
    // Best effort: an unwritable cache only costs a recomputation.
    if let (Some(dir), Ok(text)) = (path.parent(), serde_json::to_string_pretty(&entries)) {
        let tmp = path.with_extension("tmp");
        if fs::create_dir_all(dir).is_ok() && fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

/// Cover of the base instance for `presence`, found by budgeted search and
/// cached in memory and (when configured) on disk.
pub fn venn_base_cover(presence: u8) -> Result<Vec<Hyperplane>> {
    if let Some(hs) = base_cache().lock().expect("cache poisoned").get(&presence) {
        return Ok(hs.clone());
    }
    let s = venn_base_instance(presence)
        .ok_or_else(|| Error::InvalidArgument(format!("column types {presence:#09b} do not give four distinct points")))?;
    let budget = minus_four_size(&s)?;
    let hs = find_cover_within_budget(&s, budget, DEFAULT_NODE_LIMIT)?.certificate.hyperplanes;
    let mut map = base_cache().lock().expect("cache poisoned");
    let hs = map.entry(presence).or_insert(hs).clone();
    persist_base_cache(&map);
    Ok(hs)
}

/// `n - 1` hyperplanes for `|S| = 4`, or `n - 2` when `S` is a 2-face.
pub fn cover_minus_four(s: &PointSet) -> Result<CoverCertificate> {
    let f = VennForm::of(s)?;
    let dim = s.dim();
    let mut hs = Vec::new();
    let used = dim.n() - f.zero_columns;
    facets_one(dim, used..dim.n(), &mut hs);
    let mut blocks = Vec::new();
    let mut start = 0;
    for &m in &f.multiplicities {
        if m > 0 {
            blocks.push(start..start + m);
            inner_levels(dim, start..start + m, &mut hs);
        }
        start += m;
    }
    for h in venn_base_cover(f.presence())? {
        let mut coeffs = vec![Rational::zero(); dim.n()];
        for (c, block) in h.coeffs().iter().zip(&blocks) {
            let w = &c.0 / BigInt::from(block.len());
            for i in block.clone() {
                coeffs[i] = Rational(w.clone());
            }
        }
        hs.push(Hyperplane::new(dim, coeffs, h.offset().clone())?);
    }
    certify(pull_back(&f.to_normal(), hs)?, s)
}

/// Dispatches on `|S|` for `1 <= |S| <= 4`.
pub fn cover_small(s: &PointSet) -> Result<CoverCertificate> {
    match s.len() {
        1 => cover_minus_one(s),
        2 => cover_minus_two(s),
        3 => cover_minus_three(s),
        4 => cover_minus_four(s),
        k => Err(Error::InvalidArgument(format!("no explicit construction for |S| = {k}"))),
    }
}

/// `min(i, n - i)` hyperplanes whose union meets layer `i` exactly in
/// `layer \ {b}`. Verified on the layer only.
pub fn layer_cover(dim: Dim, b: Point) -> Result<CoverCertificate> {
    let n = dim.n();
    let i = b.weight() as usize;
    let avoided = PointSet::from_points(dim, [b])?;
    let inside: Vec<usize> = (0..n).filter(|&j| b.coord(j)).collect();
    let outside: Vec<usize> = (0..n).filter(|&j| !b.coord(j)).collect();
    let hs: Vec<Hyperplane> = if i <= n - i {
        (0..i).map(|t| Hyperplane::level(dim, &inside, t as i64)).collect()
    } else {
        (1..=n - i).map(|t| Hyperplane::level(dim, &outside, t as i64)).collect()
    };
    let cert = verify_layer_cover(&hs, &avoided, i as u32)?;
    if !cert.verified {
        return Err(Error::Construction(format!("layer cover failed: {:?}", cert.report)));
    }
    Ok(cert)
}

/// Injective affine map from `{0,1}^i` onto part of layer `i` of `{0,1}^n`
/// sending the origin to `b`: `x -> (1-x_1, .., 1-x_i, 0, .., 0, x_i, .., x_1)`
/// up to the coordinate permutation taking `1^i 0^{n-i}` to `b`.
#[derive(Clone, Debug)]
pub struct LayerEmbedding {
    pub dim: Dim,
    pub i: usize,
    /// `flip[j]`: target coordinate receiving `1 - x_j`.
    flip: Vec<usize>,
    /// `copy[j]`: target coordinate receiving `x_j`.
    copy: Vec<usize>,
}

impl LayerEmbedding {
    /// Embedding with base point `b` (of weight `i`, `2i <= n`).
    pub fn new(dim: Dim, b: Point) -> Result<Self> {
        let n = dim.n();
        let i = b.weight() as usize;
        if 2 * i > n {
            return Err(Error::InvalidArgument(format!("layer embedding needs 2i <= n, got i={i}, n={n}")));
        }
        let flip: Vec<usize> = (0..n).filter(|&j| b.coord(j)).collect();
        let outside: Vec<usize> = (0..n).filter(|&j| !b.coord(j)).collect();
        let copy: Vec<usize> = (0..i).map(|j| outside[outside.len() - 1 - j]).collect();
        Ok(LayerEmbedding { dim, i, flip, copy })
    }

    /// The standard embedding with base point `1^i 0^{n-i}`.
    pub fn standard(i: usize, dim: Dim) -> Result<Self> {
        if i > dim.n() {
            return Err(Error::InvalidArgument(format!("i={i} exceeds n={}", dim.n())));
        }
        LayerEmbedding::new(dim, Point((1u32 << i) - 1))
    }

    pub fn source(&self) -> Result<Dim> {
        Dim::new(self.i)
    }

    pub fn apply(&self, x: Point) -> Point {
        let mut y = 0u32;
        for j in 0..self.i {
            if !x.coord(j) {
                y |= 1 << self.flip[j];
            }
            if x.coord(j) {
                y |= 1 << self.copy[j];
            }
        }
        Point(y)
    }

    /// `h ∘ ι` as a hyperplane in `{0,1}^i`, or `None` when no point of the
    /// image lies on `h`.
    pub fn pullback(&self, h: &Hyperplane) -> Result<Option<Hyperplane>> {
        self.dim.check(h.dim())?;
        let src = self.source()?;
        let v = h.coeffs();
        let mut offset = h.offset().0.clone();
        let mut coeffs = Vec::with_capacity(self.i);
        for j in 0..self.i {
            offset -= &v[self.flip[j]].0;
            coeffs.push(Rational(&v[self.copy[j]].0 - &v[self.flip[j]].0));
        }
        if coeffs.iter().all(Rational::is_zero) {
            return if offset == BigRational::from_integer(0.into()) {
                Err(Error::InvalidArgument("hyperplane contains the whole embedded cube".into()))
            } else {
                Ok(None)
            };
        }
        Ok(Some(Hyperplane::new(src, coeffs, Rational(offset))?))
    }
}

/// Pulls a layer cover of `layer_i \ {b}` back to an exact cover of
/// `{0,1}^i \ {0}`.
pub fn pull_back_layer_cover(cert: &CoverCertificate, b: Point) -> Result<CoverCertificate> {
    let emb = LayerEmbedding::new(cert.dim, b)?;
    let mut hs = Vec::new();
    for h in &cert.hyperplanes {
        if let Some(p) = emb.pullback(h)? {
            hs.push(p);
        }
    }
    let src = emb.source()?;
    verify_exact_cover(&hs, &PointSet::from_points(src, [Point(0)])?)
}

#[derive(Clone, Copy, Debug)]
enum Reduction {
    /// Coordinate constant zero on `S`: facet `x_i = 1`, recurse on `x_i = 0`.
    Zero(usize),
    /// Equal coordinates on `S`: `x_i + x_j = 1`, recurse on `x_i = x_j`.
    Equal(usize, usize),
}

fn drop_coord(p: u32, j: usize) -> u32 {
    let low = p & ((1 << j) - 1);
    low | (p >> (j + 1)) << j
}

fn find_reduction(points: &[u32], n: usize) -> Option<Reduction> {
    let column = |i: usize| points.iter().enumerate().fold(0u64, |m, (r, &p)| m | ((p >> i & 1) as u64) << r);
    let cols: Vec<u64> = (0..n).map(column).collect();
    if let Some(i) = cols.iter().position(|&c| c == 0) {
        return Some(Reduction::Zero(i));
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for (j, &c) in cols.iter().enumerate() {
        if let Some(&i) = seen.get(&c) {
            return Some(Reduction::Equal(i, j));
        }
        seen.insert(c, j);
    }
    None
}

/// Dimension at which the fixed-`k` reduction stops and a base cover is used.
pub fn reduction_floor(k: usize) -> usize {
    let pigeonhole = (1usize << (k - 1).min(31)) - 1;
    if k <= 4 {
        pigeonhole.max(1)
    } else {
        pigeonhole.max(CERTIFIED_CAP)
    }
}

fn base_cover(s: &PointSet) -> Result<Vec<Hyperplane>> {
    let n = s.dim().n();
    if s.len() == s.dim().num_points() {
        return Ok(Vec::new());
    }
    if s.len() <= 4 {
        return Ok(cover_small(s)?.hyperplanes);
    }
    if n <= CERTIFIED_CAP {
        return Ok(min_exact_cover(s)?.certificate.hyperplanes);
    }
    if n <= BUDGETED_CAP {
        if let Ok(r) = find_cover_within_budget(s, n, DEFAULT_NODE_LIMIT) {
            return Ok(r.certificate.hyperplanes);
        }
    }
    Ok(hamming_sphere_cover(&s.complement())?.hyperplanes)
}

/// Strips one coordinate at a time (a coordinate that is zero on all of `S`,
/// or two coordinates that agree on all of `S`), adding one hyperplane per
/// step, until [`reduction_floor`] is reached; then covers the base instance.
pub fn reduce_fixed_k(s: &PointSet) -> Result<CoverCertificate> {
    let k = s.len();
    if k == 0 {
        return Err(Error::EmptySet);
    }
    let dim = s.dim();
    let floor = reduction_floor(k);
    let s0 = lex_min(s);
    let translation = CubeAutomorphism::translation(dim, s0);
    let mut points: Vec<u32> = s.iter().map(|p| p.0 ^ s0.0).collect();
    let mut n = dim.n();
    let mut steps = Vec::new();
    while n > floor {
        let Some(r) = find_reduction(&points, n) else { break };
        let j = match r {
            Reduction::Zero(i) => i,
            Reduction::Equal(_, j) => j,
        };
        points.iter_mut().for_each(|p| *p = drop_coord(*p, j));
        steps.push((r, n));
        n -= 1;
    }
    let base_dim = Dim::new(n)?;
    let base = PointSet::from_points(base_dim, points.iter().map(|&p| Point(p)))?;
    let mut hs = base_cover(&base)?;
    for &(r, m) in steps.iter().rev() {
        let up = Dim::new(m)?;
        let lift = |h: &Hyperplane, at: usize, share: Option<usize>| -> Result<Hyperplane> {
            let mut c: Vec<Rational> = h.coeffs().to_vec();
            match share {
                None => c.insert(at, Rational::zero()),
                Some(i) => {
                    let half = Rational(&c[i].0 / BigInt::from(2));
                    c[i] = half.clone();
                    c.insert(at, half);
                }
            }
            Hyperplane::new(up, c, h.offset().clone())
        };
        hs = match r {
            Reduction::Zero(i) => {
                let mut out: Vec<Hyperplane> = hs.iter().map(|h| lift(h, i, None)).collect::<Result<_>>()?;
                out.push(Hyperplane::facet(up, i, true));
                out
            }
            Reduction::Equal(i, j) => {
                let mut out: Vec<Hyperplane> = hs.iter().map(|h| lift(h, j, Some(i))).collect::<Result<_>>()?;
                out.push(Hyperplane::level(up, &[i, j], 1));
                out
            }
        };
    }
    certify(pull_back(&translation, hs)?, s)
}

/// Greedy total dominating set: repeatedly take the vertex with the most
/// undominated neighbours (smallest index on ties).
pub fn greedy_total_dominating_set(dim: Dim) -> PointSet {
    static CACHE: OnceLock<Mutex<HashMap<usize, PointSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cache poisoned").get(&dim.n()) {
        return d.clone();
    }
    let n = dim.n();
    let np = dim.num_points();
    let mut dominated = vec![false; np];
    let mut left = np;
    let mut heap: BinaryHeap<(usize, Reverse<u32>)> = (0..np as u32).map(|v| (n, Reverse(v))).collect();
    let mut out = PointSet::empty(dim);
    while left > 0 {
        let (gain, Reverse(v)) = heap.pop().expect("undominated vertices remain");
        let fresh = (0..n).filter(|&i| !dominated[(v ^ 1 << i) as usize]).count();
        if fresh < gain {
            heap.push((fresh, Reverse(v)));
            continue;
        }
        out.insert(Point(v));
        for i in 0..n {
            let w = (v ^ 1 << i) as usize;
            if !dominated[w] {
                dominated[w] = true;
                left -= 1;
            }
        }
    }
    cache.lock().expect("cache poisoned").insert(n, out.clone());
    out
}

/// `2^{n+1} / n`.
pub fn total_domination_bound(dim: Dim) -> f64 {
    2f64.powi(dim.n() as i32 + 1) / dim.n() as f64
}

/// Hyperplane meeting the cube exactly in `t`, a nonempty subset of the
/// neighbours of `center`.
pub fn sphere_subset_hyperplane(center: Point, t: &PointSet) -> Result<Hyperplane> {
    let dim = t.dim();
    if t.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut support = 0u32;
    for p in t.iter() {
        if hamming_distance(p, center) != 1 {
            return Err(Error::InvalidArgument(format!("{} is not a neighbour of {}", p.to_bits(dim), center.to_bits(dim))));
        }
        support |= p.0 ^ center.0;
    }
    let coeffs: Vec<i64> = (0..dim.n()).map(|i| if support >> i & 1 == 1 { 1 } else { 3 }).collect();
    let h = Hyperplane::from_ints(dim, &coeffs, 1)?;
    transform_hyperplane(&CubeAutomorphism::translation(dim, center), &h)
}

/// Cover of `B` by one hyperplane per dominating vertex: each point of `B`
/// goes to the first vertex of the greedy total dominating set adjacent to it.
pub fn hamming_sphere_cover(b: &PointSet) -> Result<CoverCertificate> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = b.dim();
    let d = greedy_total_dominating_set(dim);
    let mut pieces: BTreeMap<u32, PointSet> = BTreeMap::new();
    for p in b.iter() {
        let center = (0..dim.n()).map(|i| p.0 ^ 1 << i).filter(|&c| d.contains(Point(c))).min().expect("total domination");
        pieces.entry(center).or_insert_with(|| PointSet::empty(dim)).insert(p);
    }
    let hs = pieces.iter().map(|(&c, t)| sphere_subset_hyperplane(Point(c), t)).collect::<Result<Vec<_>>>()?;
    certify(hs, &b.complement())
}
