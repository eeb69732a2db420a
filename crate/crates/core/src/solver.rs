//! Exact-cover verification, the Alon–Füredi lower bound, and minimum exact
//! covers by branch-and-bound.
//!
//! The search works purely on point sets: each candidate is a pattern inside
//! the target `B = cube \ S`, and a cover is a family of candidates whose union
//! is `B`. Hyperplanes are realized from the chosen patterns once, at the end.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::affine::{realize_hyperplane, AffineHull, Hyperplane, Pattern};
use crate::catalog::{maximal_patterns_within, CATALOG_CAP, MAXIMAL_CAP};
use crate::cube::{canonical_form, Dim, Point, PointSet};
use crate::error::{Error, Result};

/// Largest dimension where the solver certifies optimality.
pub const CERTIFIED_CAP: usize = CATALOG_CAP;
/// Largest dimension for budgeted search.
pub const BUDGETED_CAP: usize = MAXIMAL_CAP;
/// Default node limit for budgeted search.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;
/// Largest dimension for exhaustive `ec(n, k)`.
pub const EC_NK_CAP: usize = 4;

/// Outcome of checking a hyperplane family against an avoided set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverReport {
    /// Avoided vertices that some hyperplane hits.
    pub covered_avoided: Vec<Point>,
    /// Required vertices that no hyperplane hits.
    pub uncovered: Vec<Point>,
}

impl CoverReport {
    pub fn is_ok(&self) -> bool {
        self.covered_avoided.is_empty() && self.uncovered.is_empty()
    }
}

/// A family of hyperplanes together with the avoided set `S`, checked to cover
/// `cube \ S` exactly. When `layer` is set, only vertices of that Hamming
/// weight are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub dim: Dim,
    pub avoided: PointSet,
    pub hyperplanes: Vec<Hyperplane>,
    pub layer: Option<u32>,
    pub verified: bool,
    pub report: CoverReport,
}

impl CoverCertificate {
    pub fn size(&self) -> usize {
        self.hyperplanes.len()
    }

    /// Re-runs verification from scratch.
    pub fn recheck(&self) -> Result<CoverCertificate> {
        match self.layer {
            None => verify_exact_cover(&self.hyperplanes, &self.avoided),
            Some(i) => verify_layer_cover(&self.hyperplanes, &self.avoided, i),
        }
    }
}

fn union_of_traces(dim: Dim, hs: &[Hyperplane]) -> Result<PointSet> {
    let mut covered = PointSet::empty(dim);
    for h in hs {
        dim.check(h.dim())?;
        covered.union_with(&h.trace());
    }
    Ok(covered)
}

/// Checks that the union of the hyperplanes meets the cube in exactly `cube \ avoided`.
pub fn verify_exact_cover(hs: &[Hyperplane], avoided: &PointSet) -> Result<CoverCertificate> {
    let dim = avoided.dim();
    let covered = union_of_traces(dim, hs)?;
    let report = CoverReport {
        covered_avoided: covered.intersection(avoided).to_vec(),
        uncovered: covered.union(avoided).complement().to_vec(),
    };
    Ok(CoverCertificate {
        dim,
        avoided: avoided.clone(),
        hyperplanes: hs.to_vec(),
        layer: None,
        verified: report.is_ok(),
        report,
    })
}

/// Like [`verify_exact_cover`], restricted to the vertices of weight `layer`.
pub fn verify_layer_cover(hs: &[Hyperplane], avoided: &PointSet, layer: u32) -> Result<CoverCertificate> {
    let dim = avoided.dim();
    let covered = union_of_traces(dim, hs)?;
    let on_layer = PointSet::from_points(dim, dim.points().filter(|p| p.weight() == layer))?;
    let report = CoverReport {
        covered_avoided: covered.intersection(avoided).intersection(&on_layer).to_vec(),
        uncovered: on_layer.difference(&covered).difference(avoided).to_vec(),
    };
    Ok(CoverCertificate {
        dim,
        avoided: avoided.clone(),
        hyperplanes: hs.to_vec(),
        layer: Some(layer),
        verified: report.is_ok(),
        report,
    })
}

/// Least `m` with `2^{n-m} <= |S|`: fewer hyperplanes that miss something miss
/// at least `2^{n-m} > |S|` vertices.
pub fn af_lower_bound(avoided: &PointSet) -> Result<usize> {
    let k = avoided.len();
    if k == 0 {
        return Err(Error::EmptySet);
    }
    let log = (usize::BITS - 1 - k.leading_zeros()) as usize;
    Ok(avoided.dim().n().saturating_sub(log))
}

/// Whether some hyperplane contains exactly three of the four points, i.e.
/// some point lies outside the affine hull of the other three.
pub fn three_covered_one_missed(set: &PointSet) -> Result<bool> {
    if set.len() != 4 {
        return Err(Error::WrongSize { expected: 4, found: set.len() });
    }
    let pts = set.to_vec();
    for skip in 0..4 {
        let rest = PointSet::from_points(set.dim(), pts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &p)| p))?;
        if !AffineHull::of(&rest)?.contains(pts[skip]) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A minimum (or budget-bounded) exact cover.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub certificate: CoverCertificate,
    pub size: usize,
    pub optimal: bool,
    pub lower_bound_used: usize,
    pub nodes: u64,
}

/// Candidate patterns stored as a flat array of bitset words.
pub(crate) struct Candidates {
    words: usize,
    data: Vec<u64>,
}

impl Candidates {
    pub(crate) fn new(dim: Dim) -> Self {
        Candidates { words: dim.num_points().div_ceil(64), data: Vec::new() }
    }

    pub(crate) fn push(&mut self, s: &PointSet) {
        self.data.extend_from_slice(s.words());
    }

    fn len(&self) -> usize {
        self.data.len() / self.words
    }

    fn get(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }
}

fn popcount(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

struct Search<'a> {
    dim: Dim,
    avoided: Vec<Point>,
    cands: &'a Candidates,
    by_point: Vec<Vec<u32>>,
    best: Option<Vec<PointSet>>,
    /// Largest cover size still worth finding.
    bound: usize,
    lower: usize,
    stop_at_first: bool,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(target: &'a PointSet, cands: &'a Candidates, bound: usize, lower: usize, limit: u64) -> Self {
        let dim = target.dim();
        let mut by_point = vec![Vec::new(); dim.num_points()];
        for i in 0..cands.len() {
            for p in PointSet::from_words(dim, cands.get(i).to_vec()).iter() {
                by_point[p.0 as usize].push(i as u32);
            }
        }
        Search {
            dim,
            avoided: target.complement().to_vec(),
            cands,
            by_point,
            best: None,
            bound,
            lower,
            stop_at_first: false,
            nodes: 0,
            limit,
            aborted: false,
        }
    }

    fn done(&self) -> bool {
        self.aborted || (self.best.is_some() && (self.stop_at_first || self.bound < self.lower))
    }

    fn record(&mut self, cover: Vec<PointSet>) {
        self.bound = cover.len().saturating_sub(1);
        self.best = Some(cover);
    }

    /// The closure of `u` if it is a pattern inside the target.
    fn closing_pattern(&self, u: &PointSet) -> Option<PointSet> {
        let hull = AffineHull::of(u).ok()?;
        if hull.rank() == self.dim.n() || self.avoided.iter().any(|&s| hull.contains(s)) {
            return None;
        }
        Some(hull.points())
    }

    fn dfs(&mut self, uncovered: &PointSet, chosen: &mut Vec<PointSet>) {
        if self.nodes >= self.limit {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        if uncovered.is_empty() {
            if chosen.len() <= self.bound {
                self.record(chosen.clone());
            }
            return;
        }
        if chosen.len() >= self.bound {
            return;
        }
        let remaining = self.bound - chosen.len();
        // One more hyperplane suffices iff the uncovered points close up inside the target.
        if let Some(last) = self.closing_pattern(uncovered) {
            let mut cover = chosen.clone();
            cover.push(last);
            self.record(cover);
            return;
        }
        if remaining == 1 {
            return;
        }
        let u = uncovered.words();
        let need = uncovered.len();
        let cov: Vec<usize> = (0..self.cands.len()).map(|i| and_count(self.cands.get(i), u)).collect();
        // Union bound: the `remaining` best candidates must reach every uncovered point.
        let mut top = vec![0usize; remaining];
        for &c in &cov {
            if c > top[remaining - 1] {
                let mut j = remaining - 1;
                while j > 0 && top[j - 1] < c {
                    top[j] = top[j - 1];
                    j -= 1;
                }
                top[j] = c;
            }
        }
        if top.iter().sum::<usize>() < need {
            return;
        }
        // Either some candidate through the most constrained point, or some candidate
        // covering at least a `1/remaining` share; branch on the smaller family.
        let pivot = uncovered
            .iter()
            .min_by_key(|p| self.by_point[p.0 as usize].len())
            .expect("nonempty");
        let through: Vec<u32> = self.by_point[pivot.0 as usize].clone();
        let share = need.div_ceil(remaining);
        let heavy_count = cov.iter().filter(|&&c| c >= share).count();
        let mut branch: Vec<u32> = if heavy_count < through.len() {
            (0..self.cands.len() as u32).filter(|&i| cov[i as usize] >= share).collect()
        } else {
            through
        };
        branch.sort_by_key(|&i| (std::cmp::Reverse(cov[i as usize]), i));
        // Drop candidates whose contribution is contained in an earlier one's.
        let mut kept: Vec<Vec<u64>> = Vec::new();
        let mut order = Vec::new();
        let mut seen = HashSet::new();
        for &i in &branch {
            let part: Vec<u64> = self.cands.get(i as usize).iter().zip(u).map(|(a, b)| a & b).collect();
            if !seen.insert(part.clone()) {
                continue;
            }
            if branch.len() <= 4096 && kept.iter().any(|k| part.iter().zip(k).all(|(a, b)| a & !b == 0)) {
                continue;
            }
            kept.push(part);
            order.push(i);
        }
        for i in order {
            let mut next = uncovered.clone();
            let c = PointSet::from_words(self.dim, self.cands.get(i as usize).to_vec());
            next.difference_with(&c);
            chosen.push(c);
            self.dfs(&next, chosen);
            chosen.pop();
            if self.done() || chosen.len() >= self.bound {
                return;
            }
        }
    }
}

/// Greedy cover: repeatedly take the candidate covering most uncovered points.
fn greedy_cover(target: &PointSet, cands: &Candidates) -> Option<Vec<PointSet>> {
    let dim = target.dim();
    let mut u = target.clone();
    let mut out = Vec::new();
    while !u.is_empty() {
        let (best, c) = (0..cands.len()).map(|i| (i, and_count(cands.get(i), u.words()))).max_by_key(|&(i, c)| (c, std::cmp::Reverse(i)))?;
        if c == 0 {
            return None;
        }
        let s = PointSet::from_words(dim, cands.get(best).to_vec());
        u.difference_with(&s);
        out.push(s);
    }
    Some(out)
}

fn realize_all(patterns: &[PointSet]) -> Result<Vec<Hyperplane>> {
    patterns.iter().map(|p| realize_hyperplane(&Pattern::new_unchecked(p.clone()))).collect()
}

fn finish(avoided: &PointSet, patterns: &[PointSet], optimal: bool, lower: usize, nodes: u64) -> Result<SolveResult> {
    let hs = realize_all(patterns)?;
    let certificate = verify_exact_cover(&hs, avoided)?;
    if !certificate.verified {
        return Err(Error::Construction(format!("solver cover failed verification: {:?}", certificate.report)));
    }
    Ok(SolveResult { size: hs.len(), certificate, optimal, lower_bound_used: lower, nodes })
}

fn lower_bound(avoided: &PointSet, largest: usize) -> usize {
    let target = avoided.dim().num_points() - avoided.len();
    let af = af_lower_bound(avoided).unwrap_or(0);
    let share = if largest == 0 { 0 } else { target.div_ceil(largest) };
    af.max(share)
}

fn catalog_candidates(target: &PointSet) -> Result<Candidates> {
    let mut cands = Candidates::new(target.dim());
    for p in maximal_patterns_within(target)? {
        cands.push(p.points());
    }
    Ok(cands)
}

/// A minimum exact cover of `cube \ avoided`, certified optimal by exhausting
/// the search (`n <= 5`).
pub fn min_exact_cover(avoided: &PointSet) -> Result<SolveResult> {
    let dim = avoided.dim();
    if dim.n() > CERTIFIED_CAP {
        return Err(Error::DimAboveCap { op: "min_exact_cover", cap: CERTIFIED_CAP, n: dim.n() });
    }
    let target = avoided.complement();
    if target.is_empty() {
        return finish(avoided, &[], true, 0, 0);
    }
    let cands = catalog_candidates(&target)?;
    let largest = (0..cands.len()).map(|i| popcount(cands.get(i))).max().unwrap_or(0);
    let lower = lower_bound(avoided, largest);
    let incumbent = greedy_cover(&target, &cands).expect("maximal patterns cover the target");
    if incumbent.len() <= lower {
        return finish(avoided, &incumbent, true, lower, 0);
    }
    let mut search = Search::new(&target, &cands, incumbent.len() - 1, lower, u64::MAX);
    search.dfs(&target, &mut Vec::new());
    let best = search.best.take().unwrap_or(incumbent);
    finish(avoided, &best, true, lower, search.nodes)
}

/// Candidate traces of hyperplanes with integer coefficients in `-c..=c`
/// that stay inside the target.
pub(crate) fn coefficient_pool(target: &PointSet, c: i32) -> Candidates {
    let dim = target.dim();
    let n = dim.n();
    let np = dim.num_points();
    let span = (2 * c as usize) * n + 1;
    let shift = c * n as i32;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut cands = Candidates::new(dim);
    let mut v = vec![-c; n];
    let mut values = vec![0i32; np];
    let mut buckets: Vec<PointSet> = vec![PointSet::empty(dim); span];
    let mut forbidden = vec![false; span];
    let avoided = target.complement();
    loop {
        let leading = v.iter().find(|&&x| x != 0).copied();
        let g = v.iter().fold(0i32, |g, &x| gcd(g, x.abs()));
        if leading.is_some_and(|l| l > 0) && g == 1 {
            for p in 1..np {
                let low = p.trailing_zeros() as usize;
                values[p] = values[p & (p - 1)] + v[low];
            }
            forbidden.iter_mut().for_each(|f| *f = false);
            for s in avoided.iter() {
                forbidden[(values[s.0 as usize] + shift) as usize] = true;
            }
            for b in buckets.iter_mut() {
                *b = PointSet::empty(dim);
            }
            for p in target.iter() {
                let k = (values[p.0 as usize] + shift) as usize;
                if !forbidden[k] {
                    buckets[k].insert(p);
                }
            }
            for b in &buckets {
                if !b.is_empty() && seen.insert(b.words().to_vec()) {
                    cands.push(b);
                }
            }
        }
        // Odometer over {-c..c}^n.
        let mut i = 0;
        loop {
            if i == n {
                return cands;
            }
            if v[i] < c {
                v[i] += 1;
                break;
            }
            v[i] = -c;
            i += 1;
        }
    }
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest normal-vector count tried by the budgeted pool.
const POOL_LIMIT: f64 = 500_000.0;

/// A verified exact cover with at most `budget` hyperplanes, or an explicit
/// failure. Never claims optimality.
///
/// For `n <= 5` the candidate family is complete, so a failure with
/// `exhaustive: true` proves no such cover exists. For `6 <= n <= 10` the
/// candidates are traces of hyperplanes with small integer coefficients,
/// escalating the coefficient range until a cover is found or the node limit
/// is spent; failures there prove nothing.
pub fn find_cover_within_budget(avoided: &PointSet, budget: usize, node_limit: u64) -> Result<SolveResult> {
    let dim = avoided.dim();
    let n = dim.n();
    if n > BUDGETED_CAP {
        return Err(Error::DimAboveCap { op: "find_cover_within_budget", cap: BUDGETED_CAP, n });
    }
    let target = avoided.complement();
    if target.is_empty() {
        return finish(avoided, &[], false, 0, 0);
    }
    let af = af_lower_bound(avoided).unwrap_or(0);
    if budget < af.max(1) {
        return Err(Error::BudgetExhausted { budget, nodes: 0, exhaustive: true });
    }
    let mut nodes = 0u64;
    if n <= CERTIFIED_CAP {
        let cands = catalog_candidates(&target)?;
        return match run_budgeted(&target, &cands, budget, node_limit, &mut nodes) {
            (Some(cover), _) => finish(avoided, &cover, false, af, nodes),
            (None, aborted) => Err(Error::BudgetExhausted { budget, nodes, exhaustive: !aborted }),
        };
    }
    let mut c = 1;
    while ((2 * c + 1) as f64).powi(n as i32) / 2.0 <= POOL_LIMIT && nodes < node_limit {
        let cands = coefficient_pool(&target, c);
        if let (Some(cover), _) = run_budgeted(&target, &cands, budget, node_limit, &mut nodes) {
            return finish(avoided, &cover, false, af, nodes);
        }
        c += 1;
    }
    Err(Error::BudgetExhausted { budget, nodes, exhaustive: false })
}

fn run_budgeted(target: &PointSet, cands: &Candidates, budget: usize, node_limit: u64, nodes: &mut u64) -> (Option<Vec<PointSet>>, bool) {
    let mut search = Search::new(target, cands, budget, 0, node_limit.saturating_sub(*nodes));
    search.stop_at_first = true;
    search.dfs(target, &mut Vec::new());
    *nodes += search.nodes;
    (search.best, search.aborted)
}

/// One symmetry class of avoided sets in an `ec(n, k)` computation.
#[derive(Clone, Debug)]
pub struct OrbitEntry {
    pub representative: PointSet,
    pub orbit_size: usize,
    pub ec: usize,
}

#[derive(Clone, Debug)]
pub struct EcNkReport {
    pub n: usize,
    pub k: usize,
    pub value: usize,
    pub orbits: Vec<OrbitEntry>,
}

/// `ec(n, k)`: the largest minimum exact cover of `cube \ S` over `|S| = k`,
/// with one certified solve per symmetry class.
pub fn ec_n_k(dim: Dim, k: usize) -> Result<EcNkReport> {
    let n = dim.n();
    if n > EC_NK_CAP {
        return Err(Error::DimAboveCap { op: "ec_n_k", cap: EC_NK_CAP, n });
    }
    let np = dim.num_points();
    if k > np {
        return Err(Error::InvalidArgument(format!("k={k} exceeds 2^{n}")));
    }
    let mut orbits: BTreeMap<PointSet, usize> = BTreeMap::new();
    for mask in 0u64..(1u64 << np) {
        if mask.count_ones() as usize == k {
            let canon = canonical_form(&PointSet::from_mask(dim, mask))?;
            *orbits.entry(canon).or_default() += 1;
        }
    }
    let reps: Vec<(PointSet, usize)> = orbits.into_iter().collect();
    let solved: Vec<Result<OrbitEntry>> = reps
        .into_par_iter()
        .map(|(representative, orbit_size)| {
            let ec = min_exact_cover(&representative)?.size;
            Ok(OrbitEntry { representative, orbit_size, ec })
        })
        .collect();
    let orbits: Vec<OrbitEntry> = solved.into_iter().collect::<Result<_>>()?;
    let value = orbits.iter().map(|o| o.ec).max().unwrap_or(0);
    Ok(EcNkReport { n, k, value, orbits })
}
