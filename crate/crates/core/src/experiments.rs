//! Small-scale experiments: random sets hitting every large pattern, the
//! missing-vertex count for non-covering hyperplane families, hitting sets for
//! axis-aligned subcubes, and the 8-point set in `{0,1}^4` lifted to `n = 6`.
//!
//! Randomness comes from ChaCha8 seeded with `seed`; trial `t` uses stream
//! `t`, so results do not depend on scheduling or thread count.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{catalog, maximal_patterns_within, CATALOG_CAP};
use crate::cube::{Dim, Point, PointSet};
use crate::error::{Error, Result};
use crate::io::{certificate_json, FORMAT_VERSION};
use crate::solver::{find_cover_within_budget, min_exact_cover, CoverCertificate};

/// Trials per JSON-lines batch record.
pub const BATCH: u64 = 1024;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn require_catalog(op: &'static str, dim: Dim) -> Result<()> {
    if dim.n() > CATALOG_CAP {
        return Err(Error::DimAboveCap { op, cap: CATALOG_CAP, n: dim.n() });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchSummary {
    pub first_trial: u64,
    pub trials: u64,
    pub successes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingExperimentReport {
    pub n: usize,
    pub threshold: usize,
    pub trials: u64,
    pub successes: u64,
    /// First successful sample and the lower bound it implies.
    pub witness: Option<(PointSet, usize)>,
    pub batches: Vec<BatchSummary>,
}

impl HittingExperimentReport {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }

    pub fn to_json_lines(&self) -> Vec<Value> {
        let mut out: Vec<Value> = self
            .batches
            .iter()
            .map(|b| json!({"v": FORMAT_VERSION, "kind": "batch", "first_trial": b.first_trial, "trials": b.trials, "successes": b.successes}))
            .collect();
        out.push(json!({
            "v": FORMAT_VERSION,
            "kind": "summary",
            "experiment": "hitting",
            "n": self.n,
            "threshold": self.threshold,
            "trials": self.trials,
            "successes": self.successes,
            "success_rate": format!("{}/{}", self.successes, self.trials),
            "witness": self.witness.as_ref().map(|(s, lb)| json!({"S": s.to_strings(), "lower_bound": lb})),
        }));
        out
    }
}

/// `⌈|B| / (threshold - 1)⌉`: with every pattern of size `>= threshold`
/// meeting `S`, each hyperplane of an exact cover of `B` holds fewer than
/// `threshold` points.
pub fn hitting_lower_bound(dim: Dim, s: &PointSet, threshold: usize) -> usize {
    let b = dim.num_points() - s.len();
    if b == 0 {
        0
    } else {
        b.div_ceil(threshold.saturating_sub(1).max(1))
    }
}

/// Samples `S` with each vertex present independently with probability 1/2 and
/// checks whether `S` meets every pattern of at least `threshold` points.
pub fn random_hitting_experiment(dim: Dim, threshold: usize, trials: u64, seed: u64) -> Result<HittingExperimentReport> {
    require_catalog("random_hitting_experiment", dim)?;
    let cat = catalog(dim)?;
    let large: Vec<u64> = cat.masks().iter().copied().filter(|m| m.count_ones() as usize >= threshold).collect();
    let full = PointSet::full(dim).mask();
    let outcomes: Vec<Option<u64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_rng(seed, t).gen::<u64>() & full;
            large.iter().all(|m| m & s != 0).then_some(s)
        })
        .collect();
    let batches = outcomes
        .chunks(BATCH as usize)
        .enumerate()
        .map(|(i, c)| BatchSummary {
            first_trial: i as u64 * BATCH,
            trials: c.len() as u64,
            successes: c.iter().flatten().count() as u64,
        })
        .collect();
    let witness = outcomes.iter().flatten().next().map(|&s| {
        let s = PointSet::from_mask(dim, s);
        let lb = hitting_lower_bound(dim, &s, threshold);
        (s, lb)
    });
    Ok(HittingExperimentReport {
        n: dim.n(),
        threshold,
        trials,
        successes: outcomes.iter().flatten().count() as u64,
        witness,
        batches,
    })
}

/// `⌈|B| / max pattern inside B⌉`, from a direct scan of the catalog.
pub fn rescan_lower_bound(s: &PointSet) -> Result<usize> {
    let b = s.complement();
    if b.is_empty() {
        return Ok(0);
    }
    let largest = maximal_patterns_within(&b)?.first().map_or(1, |p| p.len());
    Ok(b.len().div_ceil(largest))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfViolation {
    pub sample: u64,
    pub patterns: Vec<PointSet>,
    pub missed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfMissingReport {
    pub n: usize,
    pub m: usize,
    pub samples: u64,
    /// Samples whose union misses at least one vertex.
    pub non_covering: u64,
    pub min_missed: Option<usize>,
    pub violations: Vec<AfViolation>,
}

impl AfMissingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v": FORMAT_VERSION,
            "kind": "summary",
            "experiment": "afmiss",
            "n": self.n,
            "m": self.m,
            "samples": self.samples,
            "non_covering": self.non_covering,
            "required_missed": 1usize << self.n.saturating_sub(self.m),
            "min_missed": self.min_missed,
            "violations": self.violations.iter().map(|v| json!({
                "sample": v.sample,
                "patterns": v.patterns.iter().map(|p| p.to_strings()).collect::<Vec<_>>(),
                "missed": v.missed,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

/// Draws `m` distinct patterns (each the trace of a hyperplane) and checks
/// that a union missing any vertex misses at least `2^{n-m}`.
pub fn af_missing_property_test(dim: Dim, m: usize, samples: u64, seed: u64) -> Result<AfMissingReport> {
    require_catalog("af_missing_property_test", dim)?;
    let cat = catalog(dim)?;
    let masks = cat.masks();
    if m == 0 || m > masks.len() {
        return Err(Error::InvalidArgument(format!("m={m} outside 1..={}", masks.len())));
    }
    let full = PointSet::full(dim).mask();
    let need = 1usize << dim.n().saturating_sub(m);
    let results: Vec<Option<(usize, Option<AfViolation>)>> = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let picks: Vec<u64> = sample(&mut rng, masks.len(), m).into_iter().map(|i| masks[i]).collect();
            let union = picks.iter().fold(0u64, |a, &p| a | p);
            let missed = (full & !union).count_ones() as usize;
            (missed > 0).then(|| {
                let v = (missed < need).then(|| AfViolation {
                    sample: t,
                    patterns: picks.iter().map(|&p| PointSet::from_mask(dim, p)).collect(),
                    missed,
                });
                (missed, v)
            })
        })
        .collect();
    let hits: Vec<&(usize, Option<AfViolation>)> = results.iter().flatten().collect();
    Ok(AfMissingReport {
        n: dim.n(),
        m,
        samples,
        non_covering: hits.len() as u64,
        min_missed: hits.iter().map(|h| h.0).min(),
        violations: hits.iter().filter_map(|h| h.1.clone()).collect(),
    })
}

/// All `d`-dimensional axis-aligned subcubes of `{0,1}^n`, as bit masks.
pub fn axis_aligned_subcubes(dim: Dim, d: usize) -> Result<Vec<u64>> {
    let n = dim.n();
    if n > CATALOG_CAP || d > n {
        return Err(Error::InvalidArgument(format!("axis-aligned subcubes need d <= n <= {CATALOG_CAP}")));
    }
    let mut out = Vec::new();
    for free in 0u32..1 << n {
        if free.count_ones() as usize != d {
            continue;
        }
        for base in 0u32..1 << n {
            if base & free != 0 {
                continue;
            }
            let mut mask = 0u64;
            let mut sub = free;
            // Enumerate subsets of `free`.
            loop {
                mask |= 1 << (base | sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            out.push(mask);
        }
    }
    Ok(out)
}

/// The even-weight vertices, which meet every axis-aligned subcube of
/// dimension at least 1.
pub fn every_other_layer(dim: Dim) -> PointSet {
    PointSet::from_points(dim, dim.points().filter(|p| p.weight() % 2 == 0)).expect("points of dim")
}

pub fn hits_all_axis_aligned(set: &PointSet, d: usize) -> Result<bool> {
    let s = set.mask();
    Ok(axis_aligned_subcubes(set.dim(), d)?.iter().all(|c| c & s != 0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcubeHittingResult {
    pub n: usize,
    pub d: usize,
    pub g_value: usize,
    pub witness_set: PointSet,
    /// Size of the every-other-layer set for `d >= 1`; `2^n` for `d = 0`.
    pub baseline_size: usize,
    pub nodes: u64,
}

impl SubcubeHittingResult {
    pub fn to_json(&self) -> Value {
        json!({
            "v": FORMAT_VERSION,
            "experiment": "gsubcube",
            "n": self.n,
            "d": self.d,
            "g": self.g_value,
            "witness": self.witness_set.to_strings(),
            "baseline_size": self.baseline_size,
            "nodes": self.nodes,
            "upper_density": 1.0 / (self.d as f64 + 1.0),
            "lower_density": if self.d >= 1 { (self.d as f64).log2() / 2f64.powi(self.d as i32 + 2) } else { 1.0 },
            "density": self.g_value as f64 / 2f64.powi(self.n as i32),
        })
    }
}

struct HitSearch {
    per_point: usize,
    best: u64,
    best_len: u32,
    nodes: u64,
}

impl HitSearch {
    fn dfs(&mut self, chosen: u64, alive: &[u64]) {
        self.nodes += 1;
        let Some(&first) = alive.first() else {
            if chosen.count_ones() < self.best_len {
                self.best = chosen;
                self.best_len = chosen.count_ones();
            }
            return;
        };
        let have = chosen.count_ones() as usize;
        // Pairwise disjoint unhit subcubes each need their own point.
        let mut used = 0u64;
        let mut packing = 0usize;
        for &c in alive {
            if c & used == 0 {
                used |= c;
                packing += 1;
            }
        }
        let lb = packing.max(alive.len().div_ceil(self.per_point));
        if have + lb >= self.best_len as usize {
            return;
        }
        let mut pts = first;
        while pts != 0 {
            let p = pts.trailing_zeros();
            pts &= pts - 1;
            let next: Vec<u64> = alive.iter().copied().filter(|c| c >> p & 1 == 0).collect();
            self.dfs(chosen | 1 << p, &next);
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `g(n, d)`: the fewest vertices meeting every `d`-dimensional axis-aligned
/// subcube, with a witness, by exhaustive branch-and-bound (`n <= 5`).
pub fn g_axis_aligned(dim: Dim, d: usize) -> Result<SubcubeHittingResult> {
    let n = dim.n();
    let cubes = axis_aligned_subcubes(dim, d)?;
    let baseline = if d == 0 { PointSet::full(dim) } else { every_other_layer(dim) };
    let mut search = HitSearch {
        per_point: binomial(n, d),
        best: baseline.mask(),
        best_len: baseline.len() as u32,
        nodes: 0,
    };
    // Search only for strict improvements on the baseline.
    search.dfs(0, &cubes);
    let witness_set = PointSet::from_mask(dim, search.best);
    debug_assert!(hits_all_axis_aligned(&witness_set, d)?);
    Ok(SubcubeHittingResult {
        n,
        d,
        g_value: witness_set.len(),
        witness_set,
        baseline_size: baseline.len(),
        nodes: search.nodes,
    })
}

fn to_vec_i8(p: Point, n: usize) -> Vec<i8> {
    (0..n).map(|i| p.coord(i) as i8).collect()
}

fn is_subcube_of(points: &[Vec<i8>], d: u32) -> bool {
    if points.len() != 1 << d {
        return false;
    }
    if d == 0 {
        return true;
    }
    let set: HashSet<&Vec<i8>> = points.iter().collect();
    let u = &points[0];
    for q in &points[1..] {
        let w: Vec<i8> = q.iter().zip(u).map(|(a, b)| a - b).collect();
        let plus = |a: &Vec<i8>| a.iter().zip(&w).map(|(x, y)| x + y).collect::<Vec<i8>>();
        let minus = |a: &Vec<i8>| a.iter().zip(&w).map(|(x, y)| x - y).collect::<Vec<i8>>();
        // Translates along `w` pair up at most two cube points, so the split is forced.
        let half: Vec<Vec<i8>> = points.iter().filter(|a| set.contains(&plus(a))).cloned().collect();
        let paired = points.iter().all(|a| set.contains(&plus(a)) || set.contains(&minus(a)));
        if paired && half.len() * 2 == points.len() && is_subcube_of(&half, d - 1) {
            return true;
        }
    }
    false
}

/// Whether `set = {u + a_1 w_1 + ... + a_d w_d : a in {0,1}^d}` for some
/// real vectors `u, w_1, .., w_d` (with `2^d` distinct points).
pub fn is_subcube(set: &PointSet) -> bool {
    let k = set.len();
    if k == 0 || !k.is_power_of_two() {
        return false;
    }
    let n = set.dim().n();
    let points: Vec<Vec<i8>> = set.iter().map(|p| to_vec_i8(p, n)).collect();
    is_subcube_of(&points, k.trailing_zeros())
}

/// All `d`-dimensional subcubes of `{0,1}^n` (`n <= 4`), as bit masks.
pub fn all_subcubes(dim: Dim, d: usize) -> Result<Vec<u64>> {
    let n = dim.n();
    if n > 4 || d > n {
        return Err(Error::InvalidArgument(format!("general subcubes need d <= n <= 4, got n={n}, d={d}")));
    }
    let np = dim.num_points() as u32;
    let mut level: Vec<u64> = (0..np).map(|p| 1u64 << p).collect();
    for _ in 0..d {
        let mut next = HashSet::new();
        for &a in &level {
            let base = a.trailing_zeros();
            for q in 0..np {
                if a >> q & 1 == 1 {
                    continue;
                }
                // Shift `a` by `q - base` coordinatewise; it must stay in the cube.
                let mut shifted = 0u64;
                let ok = PointSet::from_mask(dim, a).iter().all(|p| {
                    let mut r = 0u32;
                    for i in 0..n {
                        let v = (p.0 >> i & 1) as i32 + (q >> i & 1) as i32 - (base >> i & 1) as i32;
                        if !(0..=1).contains(&v) {
                            return false;
                        }
                        r |= (v as u32) << i;
                    }
                    shifted |= 1 << r;
                    true
                });
                if ok && shifted & a == 0 {
                    next.insert(a | shifted);
                }
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

/// Whether `set` meets every `d`-dimensional subcube (`n <= 4`).
pub fn hits_all_subcubes(set: &PointSet, d: usize) -> Result<bool> {
    let s = set.mask();
    Ok(all_subcubes(set.dim(), d)?.iter().all(|c| c & s != 0))
}

pub const WAGNER_SET: [&str; 8] = ["1000", "1111", "1001", "1011", "0110", "0001", "0010", "0111"];

#[derive(Clone, Debug)]
pub enum LiftedOutcome {
    Found(CoverCertificate),
    NotFound { nodes: u64, exhaustive: bool },
}

#[derive(Clone, Debug)]
pub struct WagnerReport {
    pub set: PointSet,
    pub e4: usize,
    pub e4_certificate: CoverCertificate,
    pub lifted: PointSet,
    pub budget: usize,
    pub outcome: LiftedOutcome,
}

impl WagnerReport {
    /// Whether a cover of the lifted complement with fewer than `e4 + 2`
    /// hyperplanes was exhibited.
    pub fn inequality_shown(&self) -> bool {
        matches!(&self.outcome, LiftedOutcome::Found(c) if c.verified && c.size() < self.e4 + 2)
    }

    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            LiftedOutcome::Found(c) => json!({"found": true, "size": c.size(), "certificate": certificate_json(c)}),
            LiftedOutcome::NotFound { nodes, exhaustive } => {
                json!({"found": false, "nodes": nodes, "exhaustive": exhaustive})
            }
        };
        json!({
            "v": FORMAT_VERSION,
            "experiment": "wagner",
            "S": self.set.to_strings(),
            "e4": self.e4,
            "e4_certificate": certificate_json(&self.e4_certificate),
            "budget_n6": self.budget,
            "n6": outcome,
            "inequality_shown": self.inequality_shown(),
        })
    }
}

/// Certified `ec({0,1}^4 \ S)` for the 8-point set, then a budgeted search for
/// a cover of `{0,1}^6 \ (S x {00})` with at most `e4 + 1` hyperplanes.
pub fn wagner_check(node_limit: u64) -> Result<WagnerReport> {
    let set = PointSet::parse_strs(None, &WAGNER_SET)?;
    let solved = min_exact_cover(&set)?;
    let e4 = solved.size;
    let d6 = Dim::new(6)?;
    let lifted = PointSet::from_points(d6, set.iter())?;
    let budget = e4 + 1;
    let outcome = match find_cover_within_budget(&lifted, budget, node_limit) {
        Ok(r) => LiftedOutcome::Found(r.certificate),
        Err(Error::BudgetExhausted { nodes, exhaustive, .. }) => LiftedOutcome::NotFound { nodes, exhaustive },
        Err(e) => return Err(e),
    };
    Ok(WagnerReport { set, e4, e4_certificate: solved.certificate, lifted, budget, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> Dim {
        Dim::new(n).unwrap()
    }

    #[test]
    fn hitting_thresholds() {
        let r = random_hitting_experiment(d(3), 9, 200, 1).unwrap();
        assert_eq!(r.successes, 200);
        let r = random_hitting_experiment(d(3), 1, 200, 1).unwrap();
        assert!(r.witness.iter().all(|(s, _)| s.is_full()));
        let r = random_hitting_experiment(d(4), 32, 100, 7).unwrap();
        assert_eq!(r.success_rate(), 1.0);
    }

    #[test]
    fn hitting_is_deterministic() {
        let a = random_hitting_experiment(d(4), 5, 3000, 42).unwrap();
        let b = random_hitting_experiment(d(4), 5, 3000, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.batches.len(), 3);
    }

    #[test]
    fn af_examples() {
        let r = af_missing_property_test(d(3), 1, 500, 3).unwrap();
        assert!(r.passed());
        assert!(r.min_missed.unwrap() >= 4);
        assert!(af_missing_property_test(d(3), 3, 500, 3).unwrap().passed());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_axis_aligned(d(3), 3).unwrap().g_value, 1);
        assert_eq!(g_axis_aligned(d(3), 0).unwrap().g_value, 8);
        let r = g_axis_aligned(d(3), 1).unwrap();
        assert_eq!(r.g_value, 4);
        assert_eq!(r.baseline_size, 4);
        assert_eq!(axis_aligned_subcubes(d(3), 1).unwrap().len(), 12);
    }

    #[test]
    fn baseline_hits_everything() {
        for n in 1..=5 {
            for dd in 1..=n {
                assert!(hits_all_axis_aligned(&every_other_layer(d(n)), dd).unwrap());
            }
        }
    }

    #[test]
    fn subcube_predicate() {
        let face = PointSet::parse_strs(None, &["000", "100", "010", "110"]).unwrap();
        assert!(is_subcube(&face));
        let skew = PointSet::parse_strs(None, &["0000", "1100", "0011", "1111"]).unwrap();
        assert!(is_subcube(&skew));
        let not = PointSet::parse_strs(None, &["0000", "1100", "1010", "0110"]).unwrap();
        assert!(!is_subcube(&not));
        // Every enumerated subcube satisfies the predicate.
        for dd in 0..=3 {
            for m in all_subcubes(d(3), dd).unwrap() {
                assert!(is_subcube(&PointSet::from_mask(d(3), m)));
            }
        }
        assert_eq!(all_subcubes(d(3), 3).unwrap().len(), 1);
    }
}
