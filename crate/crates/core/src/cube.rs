//! Vertices and vertex subsets of the hypercube `{0,1}^n`, Hamming geometry,
//! and the signed-permutation symmetry group.
//!
//! A point is stored as its index in `0..2^n`; bit `i` of the index is the
//! coordinate `x_{i+1}`. Points print as binary strings with coordinate 1
//! leftmost, so `"100"` is the index `1`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension. A full point set at this size is 2 MiB.
pub const MAX_DIM: usize = 24;

/// Dimension of the ambient cube, `1 <= n <= 24`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u8);

impl Dim {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_DIM).contains(&n) {
            Ok(Dim(n as u8))
        } else {
            Err(Error::InvalidDim(n))
        }
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0 as usize
    }

    /// Number of vertices, `2^n`.
    #[inline]
    pub fn num_points(self) -> usize {
        1usize << self.0
    }

    #[inline]
    pub fn all_coords_mask(self) -> u32 {
        ((1u64 << self.0) - 1) as u32
    }

    pub fn points(self) -> impl Iterator<Item = Point> {
        (0..self.num_points() as u32).map(Point)
    }

    pub(crate) fn check(self, other: Dim) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimMismatch { expected: self.n(), found: other.n() })
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex of the cube, encoded by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub u32);

impl Point {
    pub const ORIGIN: Point = Point(0);

    pub fn new(dim: Dim, index: u64) -> Result<Self> {
        if index < dim.num_points() as u64 {
            Ok(Point(index as u32))
        } else {
            Err(Error::PointOutOfRange { index, n: dim.n() })
        }
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    /// Coordinate `x_{i+1}` (zero-based `i`).
    #[inline]
    pub fn coord(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Parses a binary string, coordinate 1 leftmost. The dimension is the
    /// string length.
    pub fn parse(s: &str) -> Result<(Dim, Point)> {
        let s = s.trim();
        let dim = Dim::new(s.len()).map_err(|_| Error::ParsePoint(s.to_string()))?;
        let mut idx = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => idx |= 1 << i,
                _ => return Err(Error::ParsePoint(s.to_string())),
            }
        }
        Ok((dim, Point(idx)))
    }

    pub fn parse_in(dim: Dim, s: &str) -> Result<Point> {
        let (d, p) = Point::parse(s)?;
        dim.check(d)?;
        Ok(p)
    }

    pub fn to_bits(self, dim: Dim) -> String {
        (0..dim.n()).map(|i| if self.coord(i) { '1' } else { '0' }).collect()
    }

    /// Key ordering points by their binary strings (coordinate 1 most significant).
    pub fn lex_key(self, dim: Dim) -> u32 {
        self.0.reverse_bits() >> (32 - dim.n())
    }
}

pub fn weight(p: Point) -> u32 {
    p.weight()
}

pub fn hamming_distance(p: Point, q: Point) -> u32 {
    (p.0 ^ q.0).count_ones()
}

/// Hamming distance with explicit dimensions.
pub fn hamming_distance_in(dp: Dim, p: Point, dq: Dim, q: Point) -> Result<u32> {
    dp.check(dq)?;
    Ok(hamming_distance(p, q))
}

/// A subset of the vertices of `{0,1}^dim`, as a `2^n`-bit membership set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: Dim,
    words: Vec<u64>,
}

fn word_count(dim: Dim) -> usize {
    dim.num_points().div_ceil(64)
}

impl PointSet {
    pub fn empty(dim: Dim) -> Self {
        PointSet { dim, words: vec![0; word_count(dim)] }
    }

    pub fn full(dim: Dim) -> Self {
        let mut s = PointSet::empty(dim);
        let np = dim.num_points();
        if np < 64 {
            s.words[0] = (1u64 << np) - 1;
        } else {
            s.words.iter_mut().for_each(|w| *w = u64::MAX);
        }
        s
    }

    pub fn from_points<I: IntoIterator<Item = Point>>(dim: Dim, points: I) -> Result<Self> {
        let mut s = PointSet::empty(dim);
        for p in points {
            if p.0 as usize >= dim.num_points() {
                return Err(Error::PointOutOfRange { index: p.0 as u64, n: dim.n() });
            }
            s.insert(p);
        }
        Ok(s)
    }

    pub fn from_indices(dim: Dim, idx: &[u32]) -> Result<Self> {
        PointSet::from_points(dim, idx.iter().map(|&i| Point(i)))
    }

    /// Parses binary strings; all must share one length, which fixes the dimension
    /// unless `dim` is given.
    pub fn parse_strs<S: AsRef<str>>(dim: Option<Dim>, items: &[S]) -> Result<Self> {
        let mut d = dim;
        let mut pts = Vec::with_capacity(items.len());
        for s in items {
            let (pd, p) = Point::parse(s.as_ref())?;
            match d {
                Some(d) => d.check(pd)?,
                None => d = Some(pd),
            }
            pts.push(p);
        }
        let d = d.ok_or(Error::EmptySet)?;
        PointSet::from_points(d, pts)
    }

    /// Builds a set from a mask whose bit `p` marks point `p` (n <= 6).
    pub fn from_mask(dim: Dim, mask: u64) -> Self {
        debug_assert!(dim.n() <= 6);
        let mut s = PointSet::empty(dim);
        s.words[0] = mask;
        s
    }

    /// Mask form for n <= 6.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.dim.n() <= 6);
        self.words[0]
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(dim: Dim, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(dim));
        PointSet { dim, words }
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        let i = p.0 as usize;
        i < self.dim.num_points() && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, p: Point) {
        let i = p.0 as usize;
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, p: Point) {
        let i = p.0 as usize;
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == PointSet::full(self.dim)
    }

    pub fn first(&self) -> Option<Point> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, word: 0, cur: self.words[0] }
    }

    pub fn complement(&self) -> PointSet {
        let mut c = PointSet::full(self.dim);
        for (a, b) in c.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        c
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut r = self.clone();
        for (a, b) in r.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        r
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn union_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Points sorted by index.
    pub fn to_vec(&self) -> Vec<Point> {
        self.iter().collect()
    }

    /// Members as binary strings, sorted lexicographically.
    pub fn to_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.iter().map(|p| p.to_bits(self.dim)).collect();
        v.sort();
        v
    }

    /// Hexadecimal membership mask, most significant digit first, `ceil(2^n/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.dim.num_points().div_ceil(4);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nib = (self.words[bit >> 6] >> (bit & 63)) & 0xf;
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(dim: Dim, s: &str) -> Result<Self> {
        let digits = dim.num_points().div_ceil(4);
        if s.len() != digits {
            return Err(Error::Format(format!("mask {s:?} should have {digits} hex digits")));
        }
        let mut set = PointSet::empty(dim);
        for (k, ch) in s.chars().enumerate() {
            let nib = ch.to_digit(16).ok_or_else(|| Error::Format(format!("bad hex digit in {s:?}")))? as u64;
            let bit = (digits - 1 - k) * 4;
            set.words[bit >> 6] |= nib << (bit & 63);
        }
        if set != set.intersection(&PointSet::full(dim)) {
            return Err(Error::Format(format!("mask {s:?} has bits beyond 2^{}", dim.n())));
        }
        Ok(set)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.to_bits(self.dim))).finish()
    }
}

/// Orders by dimension, then lexicographically by sorted member indices.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros();
                self.cur &= self.cur - 1;
                return Some(Point((self.word as u32) << 6 | b));
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.word];
        }
    }
}

/// The Hamming sphere of radius 1: the `n` neighbours of `center`.
pub fn sphere(center: Point, dim: Dim) -> PointSet {
    let mut s = PointSet::empty(dim);
    for i in 0..dim.n() {
        s.insert(Point(center.0 ^ (1 << i)));
    }
    s
}

/// A signed permutation of the coordinates: first move coordinate `i` to
/// position `perm[i]`, then complement the coordinates in `flips`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeAutomorphism {
    dim: Dim,
    perm: Vec<u8>,
    flips: u32,
}

impl CubeAutomorphism {
    pub fn new(dim: Dim, perm: Vec<usize>, flips: u32) -> Result<Self> {
        let n = dim.n();
        if perm.len() != n {
            return Err(Error::InvalidAutomorphism(format!("permutation has length {}, expected {n}", perm.len())));
        }
        let mut seen = 0u32;
        for &p in &perm {
            if p >= n || seen & (1 << p) != 0 {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation of 0..{n}")));
            }
            seen |= 1 << p;
        }
        if flips & !dim.all_coords_mask() != 0 {
            return Err(Error::InvalidAutomorphism(format!("flip mask {flips:#x} exceeds n={n}")));
        }
        Ok(CubeAutomorphism { dim, perm: perm.into_iter().map(|p| p as u8).collect(), flips })
    }

    pub fn identity(dim: Dim) -> Self {
        CubeAutomorphism { dim, perm: (0..dim.n() as u8).collect(), flips: 0 }
    }

    /// The translation `x -> x XOR p`, which sends `p` to the origin.
    pub fn translation(dim: Dim, p: Point) -> Self {
        CubeAutomorphism { dim, perm: (0..dim.n() as u8).collect(), flips: p.0 }
    }

    /// A pure coordinate permutation.
    pub fn permutation(dim: Dim, perm: Vec<usize>) -> Result<Self> {
        CubeAutomorphism::new(dim, perm, 0)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// `perm()[i]` is the new position of coordinate `i`.
    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p as usize).collect()
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    #[inline]
    fn permute_bits(&self, x: u32) -> u32 {
        let mut q = 0u32;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            q |= 1 << self.perm[i as usize];
        }
        q
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        Point(self.permute_bits(p.0) ^ self.flips)
    }

    pub fn apply_set(&self, s: &PointSet) -> Result<PointSet> {
        self.dim.check(s.dim())?;
        let mut out = PointSet::empty(self.dim);
        for p in s.iter() {
            out.insert(self.apply(p));
        }
        Ok(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CubeAutomorphism) -> Result<CubeAutomorphism> {
        self.dim.check(other.dim)?;
        let perm = other.perm.iter().map(|&j| self.perm[j as usize]).collect();
        let flips = self.permute_bits(other.flips) ^ self.flips;
        Ok(CubeAutomorphism { dim: self.dim, perm, flips })
    }

    pub fn inverse(&self) -> CubeAutomorphism {
        let mut inv = vec![0u8; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        let a = CubeAutomorphism { dim: self.dim, perm: inv, flips: 0 };
        let flips = a.permute_bits(self.flips);
        CubeAutomorphism { flips, ..a }
    }

    /// Point map as a lookup table.
    pub fn table(&self) -> Vec<u32> {
        self.dim.points().map(|p| self.apply(p).0).collect()
    }

    /// Every element of the group, `2^n * n!` of them.
    pub fn all(dim: Dim) -> Vec<CubeAutomorphism> {
        let n = dim.n();
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        permutations(&mut cur, 0, &mut perms);
        let mut out = Vec::with_capacity(perms.len() << n);
        for p in perms {
            for flips in 0..(1u32 << n) {
                out.push(CubeAutomorphism::new(dim, p.clone(), flips).expect("valid permutation"));
            }
        }
        out
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Largest dimension accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 6;

/// Lexicographic comparison of sorted member lists, for masks over at most 64 points.
pub(crate) fn lex_cmp_masks(a: u64, b: u64) -> Ordering {
    let d = a ^ b;
    if d == 0 {
        return Ordering::Equal;
    }
    let p = d.trailing_zeros();
    let above = if p == 63 { 0 } else { !0u64 << (p + 1) };
    if a >> p & 1 == 1 {
        // a continues with p; b continues with something larger, or stops.
        if b & above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & above == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Point-map tables of the whole automorphism group, cached per dimension.
pub(crate) fn group_tables(dim: Dim) -> &'static [Vec<u32>] {
    use std::sync::OnceLock;
    static TABLES: [OnceLock<Vec<Vec<u32>>>; CANONICAL_CAP + 1] =
        [const { OnceLock::new() }; CANONICAL_CAP + 1];
    TABLES[dim.n()].get_or_init(|| CubeAutomorphism::all(dim).iter().map(|a| a.table()).collect())
}

pub(crate) fn map_mask(table: &[u32], mut mask: u64) -> u64 {
    let mut out = 0u64;
    while mask != 0 {
        let i = mask.trailing_zeros();
        mask &= mask - 1;
        out |= 1 << table[i as usize];
    }
    out
}

/// The lexicographically smallest image of `s` under the automorphism group.
pub fn canonical_form(s: &PointSet) -> Result<PointSet> {
    let dim = s.dim();
    if dim.n() > CANONICAL_CAP {
        return Err(Error::DimAboveCap { op: "canonical_form", cap: CANONICAL_CAP, n: dim.n() });
    }
    let mask = s.mask();
    let best = group_tables(dim)
        .iter()
        .map(|t| map_mask(t, mask))
        .min_by(|a, b| lex_cmp_masks(*a, *b))
        .unwrap_or(mask);
    Ok(PointSet::from_mask(dim, best))
}
