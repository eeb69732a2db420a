//! Catalogs of intersection patterns and candidate generation for the solver.
//!
//! Full catalogs are produced by next-closure enumeration over the affine
//! closure operator and exist for `n <= 5`. For larger cubes the solver asks
//! for the maximal patterns inside one target set instead.

use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use crate::affine::{AffineHull, Pattern};
use crate::cube::{Dim, Point, PointSet};
use crate::error::{Error, Result};

/// Largest dimension with a full catalog.
pub const CATALOG_CAP: usize = 5;
/// Largest dimension for per-instance maximal pattern generation.
pub const MAXIMAL_CAP: usize = 10;

const HEADER: &str = "hypercover-patterns v1";

/// Every intersection pattern of `Q_n`, in lectic order.
///
/// Patterns are stored as membership masks (bit `p` = point `p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCatalog {
    dim: Dim,
    masks: Vec<u64>,
}

impl PatternCatalog {
    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.masks.len()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn patterns(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.masks.iter().map(|&m| Pattern::new_unchecked(PointSet::from_mask(self.dim, m)))
    }

    pub fn contains(&self, set: &PointSet) -> bool {
        set.dim() == self.dim && self.masks.contains(&set.mask())
    }

    pub fn max_size(&self) -> usize {
        self.masks.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Writes the catalog file format: a header line, then one hex mask per line.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{HEADER} n={} count={}", self.dim, self.masks.len())?;
        for &m in &self.masks {
            writeln!(w, "{}", PointSet::from_mask(self.dim, m).to_hex())?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Format("missing header".into()))??;
        let rest = header
            .strip_prefix(HEADER)
            .ok_or_else(|| Error::Format(format!("unexpected header {header:?}")))?;
        let mut n = None;
        let mut count = None;
        for field in rest.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("count", v)) => count = v.parse::<usize>().ok(),
                _ => return Err(Error::Format(format!("unexpected header field {field:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Format("header lacks n".into()))?;
        let count = count.ok_or_else(|| Error::Format("header lacks count".into()))?;
        let dim = Dim::new(n)?;
        if n > CATALOG_CAP {
            return Err(Error::DimAboveCap { op: "catalog", cap: CATALOG_CAP, n });
        }
        let mut masks = Vec::with_capacity(count);
        for line in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            masks.push(PointSet::from_hex(dim, line.trim())?.mask());
        }
        if masks.len() != count {
            return Err(Error::Format(format!("header says {count} patterns, found {}", masks.len())));
        }
        Ok(PatternCatalog { dim, masks })
    }
}

fn closure_mask(dim: Dim, mask: u64) -> u64 {
    if mask == 0 {
        return 0;
    }
    let set = PointSet::from_mask(dim, mask);
    AffineHull::of(&set).expect("nonempty").points().mask()
}

/// All intersection patterns of `Q_n` by next-closure enumeration.
///
/// Points are the ground elements `0..2^n`; the closure operator is affine
/// closure with `cl(∅) = ∅`. Closed sets come out in lectic order, and the
/// empty set and the full cube are dropped.
pub fn enumerate_patterns(dim: Dim) -> Result<PatternCatalog> {
    let n = dim.n();
    if n > CATALOG_CAP {
        return Err(Error::DimAboveCap { op: "enumerate_patterns", cap: CATALOG_CAP, n });
    }
    let m = dim.num_points();
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut masks = Vec::new();
    let mut a = closure_mask(dim, 0);
    while a != full {
        let mut advanced = false;
        for i in (0..m).rev() {
            let bit = 1u64 << i;
            if a & bit != 0 {
                continue;
            }
            let below = bit - 1;
            let b = closure_mask(dim, (a & below) | bit);
            if b & below == a & below {
                a = b;
                advanced = true;
                break;
            }
        }
        debug_assert!(advanced, "next-closure stalls only at the full set");
        if a != full && a != 0 {
            masks.push(a);
        }
    }
    Ok(PatternCatalog { dim, masks })
}

/// Number of intersection patterns of `Q_n`.
pub fn count_patterns(dim: Dim) -> Result<usize> {
    Ok(catalog(dim)?.count())
}

/// `2^{n^2}`, as an upper bound on the pattern count.
pub fn pattern_count_bound(dim: Dim) -> u128 {
    let e = dim.n() * dim.n();
    if e >= 128 {
        u128::MAX
    } else {
        1u128 << e
    }
}

/// Directory for on-disk catalogs, from `HYPERCOVER_CACHE_DIR`.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("HYPERCOVER_CACHE_DIR").filter(|s| !s.is_empty()).map(PathBuf::from)
}

pub fn catalog_path(dir: &Path, dim: Dim) -> PathBuf {
    dir.join(format!("patterns-n{}.txt", dim.n()))
}

/// Shared catalog for `dim`, loaded from the cache directory when present,
/// otherwise enumerated (and persisted if a cache directory is configured).
pub fn catalog(dim: Dim) -> Result<Arc<PatternCatalog>> {
    static CACHE: OnceLock<Mutex<Vec<Option<Arc<PatternCatalog>>>>> = OnceLock::new();
    let n = dim.n();
    if n > CATALOG_CAP {
        return Err(Error::DimAboveCap { op: "catalog", cap: CATALOG_CAP, n });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(vec![None; CATALOG_CAP + 1]));
    let mut guard = cache.lock().expect("catalog cache poisoned");
    if let Some(c) = &guard[n] {
        return Ok(c.clone());
    }
    let built = match cache_dir() {
        Some(dir) => {
            let path = catalog_path(&dir, dim);
            match fs::File::open(&path).map(BufReader::new).map_err(Error::from).and_then(PatternCatalog::read_from) {
                Ok(c) if c.dim == dim => c,
                _ => {
                    let c = enumerate_patterns(dim)?;
                    // Best effort: an unwritable cache only costs a recomputation.
                    if fs::create_dir_all(&dir).is_ok() {
                        let tmp = path.with_extension("tmp");
                        if let Ok(f) = fs::File::create(&tmp) {
                            if c.write_to(std::io::BufWriter::new(f)).is_ok() {
                                let _ = fs::rename(&tmp, &path);
                            }
                        }
                    }
                    c
                }
            }
        }
        None => enumerate_patterns(dim)?,
    };
    let arc = Arc::new(built);
    guard[n] = Some(arc.clone());
    Ok(arc)
}

/// Sorts by descending size, keeping the incoming order among equal sizes,
/// and drops every set contained in an earlier one.
fn keep_maximal(mut sets: Vec<PointSet>) -> Vec<PointSet> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<PointSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept
}

/// Inclusion-maximal patterns contained in `within`.
///
/// Order: descending size, then lectic. For `n <= 5` the full catalog is
/// filtered; for `6 <= n <= 10` the maximal closed subsets are generated
/// directly (see [`maximal_patterns_within_limited`]).
pub fn maximal_patterns_within(within: &PointSet) -> Result<Vec<Pattern>> {
    let (found, complete) = maximal_patterns_within_limited(within, u64::MAX)?;
    debug_assert!(complete);
    Ok(found)
}

/// Like [`maximal_patterns_within`], but stops after `node_limit` search
/// nodes for `n >= 6`. The flag reports whether the enumeration finished.
pub fn maximal_patterns_within_limited(within: &PointSet, node_limit: u64) -> Result<(Vec<Pattern>, bool)> {
    if within.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = within.dim();
    let n = dim.n();
    if n <= CATALOG_CAP {
        let cat = catalog(dim)?;
        let b = within.mask();
        let inside: Vec<PointSet> =
            cat.masks().iter().filter(|&&m| m & !b == 0).map(|&m| PointSet::from_mask(dim, m)).collect();
        return Ok((keep_maximal(inside).into_iter().map(Pattern::new_unchecked).collect(), true));
    }
    if n > MAXIMAL_CAP {
        return Err(Error::DimAboveCap { op: "maximal_patterns_within", cap: MAXIMAL_CAP, n });
    }
    let mut search = MaximalSearch {
        within,
        avoided: within.complement().to_vec(),
        found: HashSet::new(),
        order: Vec::new(),
        nodes: 0,
        limit: node_limit,
    };
    for seed in within.iter() {
        let mut hull = AffineHull::new(dim, seed);
        hull.add(seed);
        if search.exhausted() {
            break;
        }
        // Seeds smaller than `seed` are excluded: sets containing them were
        // produced from their own seed.
        let closed = PointSet::from_points(dim, [seed])?;
        let cand: Vec<Point> = within.iter().filter(|&q| q > seed && search.addable(&hull, q)).collect();
        let excl: Vec<Point> = within.iter().filter(|&q| q < seed && search.addable(&hull, q)).collect();
        search.extend(&hull, &closed, &cand, &excl);
    }
    let complete = !search.exhausted();
    let sets = keep_maximal(search.order);
    Ok((sets.into_iter().map(Pattern::new_unchecked).collect(), complete))
}

/// Include/exclude backtracking over points, growing affinely closed sets that
/// stay inside the target. A leaf is reported when no remaining or excluded
/// point can be added.
struct MaximalSearch<'a> {
    within: &'a PointSet,
    avoided: Vec<Point>,
    found: HashSet<PointSet>,
    order: Vec<PointSet>,
    nodes: u64,
    limit: u64,
}

impl MaximalSearch<'_> {
    fn exhausted(&self) -> bool {
        self.nodes >= self.limit
    }

    fn addable(&self, hull: &AffineHull, q: Point) -> bool {
        if hull.contains(q) {
            return true;
        }
        let mut h = hull.clone();
        h.add(q);
        !self.avoided.iter().any(|&s| h.contains(s))
    }

    fn extend(&mut self, hull: &AffineHull, closed: &PointSet, cand: &[Point], excl: &[Point]) {
        self.nodes += 1;
        if self.exhausted() {
            return;
        }
        let Some((&p, rest)) = cand.split_first() else {
            if !excl.iter().any(|&e| self.addable(hull, e)) && closed.len() < closed.dim().num_points() {
                if self.found.insert(closed.clone()) {
                    self.order.push(closed.clone());
                }
            }
            return;
        };
        // Include p.
        let mut grown = hull.clone();
        grown.add(p);
        if let Some(points) = grown.points_within(self.within) {
            if !excl.iter().any(|&e| points.contains(e)) {
                let cand2: Vec<Point> =
                    rest.iter().copied().filter(|&q| !points.contains(q) && self.addable(&grown, q)).collect();
                let excl2: Vec<Point> = excl.iter().copied().filter(|&e| self.addable(&grown, e)).collect();
                self.extend(&grown, &points, &cand2, &excl2);
            }
        }
        // Exclude p.
        let mut excl3 = excl.to_vec();
        excl3.push(p);
        self.extend(hull, closed, rest, &excl3);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::{affine_closure, is_pattern, realize_hyperplane};

    fn d(n: usize) -> Dim {
        Dim::new(n).unwrap()
    }

    /// Oracle: every nonempty subset, kept iff it passes the closure test.
    fn brute_force_patterns(dim: Dim) -> Vec<u64> {
        let m = dim.num_points();
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        (1..full)
            .filter(|&mask| {
                let s = PointSet::from_mask(dim, mask);
                affine_closure(&s).unwrap() == s
            })
            .collect()
    }

    #[test]
    fn small_counts() {
        let c1 = enumerate_patterns(d(1)).unwrap();
        assert_eq!(c1.count(), 2);
        let c2 = enumerate_patterns(d(2)).unwrap();
        assert_eq!(c2.count(), 10);
        assert_eq!(brute_force_patterns(d(2)).len(), 10);
        assert!(c2.masks().iter().all(|m| (1..=2).contains(&m.count_ones())));
    }

    #[test]
    fn n3_catalog_matches_oracle() {
        let cat = enumerate_patterns(d(3)).unwrap();
        let mut got = cat.masks().to_vec();
        got.sort();
        assert_eq!(got, brute_force_patterns(d(3)));
        assert!(cat.count() as u128 <= pattern_count_bound(d(3)));
        for m in 1u64..255 {
            let s = PointSet::from_mask(d(3), m);
            assert_eq!(cat.contains(&s), is_pattern(&s));
        }
    }

    #[test]
    fn catalog_is_lectic_sorted_without_duplicates() {
        let cat = enumerate_patterns(d(3)).unwrap();
        let uniq: HashSet<u64> = cat.masks().iter().copied().collect();
        assert_eq!(uniq.len(), cat.count());
        // Lectic order: the smallest differing element belongs to the later set.
        for w in cat.masks().windows(2) {
            let diff = w[0] ^ w[1];
            let low = diff.trailing_zeros();
            assert!(w[1] >> low & 1 == 1);
        }
    }

    #[test]
    fn realizations_round_trip_n3() {
        for p in enumerate_patterns(d(3)).unwrap().patterns() {
            let h = realize_hyperplane(&p).unwrap();
            assert_eq!(h.trace(), *p.points());
        }
    }

    #[test]
    fn file_format_round_trip() {
        let cat = enumerate_patterns(d(2)).unwrap();
        let mut buf = Vec::new();
        cat.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("hypercover-patterns v1 n=2 count=10\n"));
        let back = PatternCatalog::read_from(&buf[..]).unwrap();
        assert_eq!(back, cat);
        let bad = b"hypercover-patterns v1 n=2 count=3\n1\n2\n";
        assert!(PatternCatalog::read_from(&bad[..]).is_err());
        assert!(PatternCatalog::read_from(&b"nope\n"[..]).is_err());
    }

    #[test]
    fn cap_enforced() {
        assert!(enumerate_patterns(d(6)).is_err());
        assert!(maximal_patterns_within(&PointSet::full(d(11))).is_err());
        assert!(maximal_patterns_within(&PointSet::empty(d(3))).is_err());
    }

    #[test]
    fn maximal_within_square_minus_origin() {
        let dim = d(2);
        let b = PointSet::parse_strs(None, &["01", "10", "11"]).unwrap();
        let got: HashSet<PointSet> = maximal_patterns_within(&b).unwrap().into_iter().map(Pattern::into_points).collect();
        let expected: HashSet<PointSet> = [["01", "11"], ["10", "11"], ["01", "10"]]
            .iter()
            .map(|s| PointSet::parse_strs(Some(dim), s).unwrap())
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn maximal_within_full_q3_are_the_planes() {
        let got = maximal_patterns_within(&PointSet::full(d(3))).unwrap();
        // 6 facets and 6 diagonal planes with four vertices each, then the 8
        // corner planes such as x1 + x2 + x3 = 1 that meet only three.
        assert_eq!(got.len(), 20);
        assert_eq!(got.iter().filter(|p| p.len() == 4).count(), 12);
        assert_eq!(got.iter().filter(|p| p.len() == 3).count(), 8);
        assert!(got.iter().all(|p| is_pattern(p.points())));
        assert!(got.windows(2).all(|w| w[0].len() >= w[1].len()));
    }

    #[test]
    fn maximal_within_avoids_origin() {
        let b = PointSet::full(d(3)).difference(&PointSet::from_indices(d(3), &[0]).unwrap());
        let got = maximal_patterns_within(&b).unwrap();
        for p in &got {
            assert!(!p.points().contains(Point(0)));
            assert!(is_pattern(p.points()));
        }
        for (i, a) in got.iter().enumerate() {
            for (j, c) in got.iter().enumerate() {
                if i != j {
                    assert!(!a.points().is_subset(c.points()));
                }
            }
        }
        let union = got.iter().fold(PointSet::empty(d(3)), |acc, p| acc.union(p.points()));
        assert_eq!(union, b);
    }

    #[test]
    fn generator_matches_catalog_filter() {
        // A subset of the face x5 = x6 = 0 of Q_6 has the same maximal patterns as
        // the corresponding subset of Q_4, which the catalog answers independently.
        let dim4 = d(4);
        let dim6 = d(6);
        for b4mask in [0xfffeu64, 0x7ff6, 0x96e9, 0x1f3d] {
            let b4 = PointSet::from_mask(dim4, b4mask);
            let b6 = PointSet::from_points(dim6, b4.iter()).unwrap();
            let mut expected: Vec<PointSet> = maximal_patterns_within(&b4)
                .unwrap()
                .into_iter()
                .map(|p| PointSet::from_points(dim6, p.points().iter()).unwrap())
                .collect();
            let mut got: Vec<PointSet> =
                maximal_patterns_within(&b6).unwrap().into_iter().map(Pattern::into_points).collect();
            expected.sort();
            got.sort();
            assert_eq!(got, expected, "B4 mask {b4mask:#x}");
        }
    }
}
