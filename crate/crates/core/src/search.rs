//! Exact search for minimum k-dense sets, MRD subsets, and the small-plane
//! blocking-set lemma.
//!
//! A k-dense set is a blocking set for the `(m-k)`-flats of `RAG(m, n, q)`.
//! Points are bits of a `u128` (so at most 128 points), indexed by
//! [`Mat::index`].

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{is_mrd, MatrixCode};
use crate::error::{Error, Result};
use crate::geometry::{self, enumerate_flats, PointSet};
use crate::gf::FieldSpec;
use crate::matrix::{enumerate, enumerate_full_rank, Mat, Side, DEFAULT_CAP};

/// Largest geometry the bitset search handles.
pub const MAX_POINTS: u128 = 128;

/// Largest flat that gets an exact minimal-completion table.
const LOCAL_TABLE_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Minimum,
    /// Is there a k-dense set with at most this many points?
    Decide(usize),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub field: FieldSpec,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub target: Target,
    pub symmetry: bool,
    /// Node budget for each decision; split evenly over root branches.
    pub node_budget: u64,
    /// Randomizes the order in which points of a flat are tried.
    pub seed: Option<u64>,
}

impl SearchConfig {
    pub fn new(field: &FieldSpec, m: usize, n: usize, k: usize) -> SearchConfig {
        SearchConfig {
            field: field.clone(),
            m,
            n,
            k,
            target: Target::Minimum,
            symmetry: true,
            node_budget: 1 << 32,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The minimum was found and every smaller size was refuted.
    Optimal,
    /// Decide: a set of at most the given size exists.
    Feasible,
    /// Decide: no such set exists.
    Infeasible,
    BudgetExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub status: Status,
    /// Proven minimum (`Minimum`) or size of the witness (`Decide`).
    pub minimum: Option<usize>,
    /// Largest size refuted so far plus one.
    pub lower_bound: usize,
    #[serde(skip)]
    pub witness: Option<PointSet>,
    pub witness_size: Option<usize>,
    pub nodes: u64,
    /// Set only if the search space was exhausted.
    pub proof: bool,
    pub root_branches: usize,
}

/// A flat with a table of its minimal blocking sets (in local coordinates).
#[derive(Debug, Clone)]
struct Section {
    mask: u128,
    local: Vec<usize>,
    minimal: Vec<u32>,
}

impl Section {
    fn localize(&self, global: u128) -> u32 {
        self.local.iter().enumerate().fold(0, |acc, (i, &p)| acc | (((global >> p) & 1) as u32) << i)
    }

    fn globalize(&self, local: u32) -> u128 {
        self.local.iter().enumerate().fold(0, |acc, (i, &p)| acc | (((local >> i) & 1) as u128) << p)
    }

    /// Fewest further points inside the section needed to block all of its
    /// subflats, or `None` if the forbidden points make it impossible.
    fn need(&self, inc: u128, forb: u128) -> Option<usize> {
        let (inc, forb) = (self.localize(inc), self.localize(forb));
        self.minimal.iter().filter(|&&b| b & forb == 0).map(|&b| (b & !inc).count_ones() as usize).min()
    }
}

/// The incidence structure of `RAG(m, n, q)` restricted to what the search
/// needs.
#[derive(Debug, Clone)]
struct Instance {
    field: FieldSpec,
    m: usize,
    n: usize,
    k: usize,
    npts: usize,
    /// `(m-k)`-flats grouped by parallel class.
    flats: Vec<u128>,
    classes: Vec<Vec<usize>>,
    /// `(m-k+1)`-flats, when they are proper and small enough.
    sections: Vec<Section>,
    section_classes: Vec<Vec<usize>>,
}

fn masks_of(fl: &[geometry::FlatDescriptor]) -> Vec<u128> {
    fl.iter().map(|f| f.points().iter().fold(0u128, |a, p| a | 1u128 << p.index())).collect()
}

fn classes_of(fl: &[geometry::FlatDescriptor]) -> Vec<Vec<usize>> {
    let mut dirs: Vec<&Mat> = fl.iter().map(|f| &f.direction).collect::<BTreeSet<_>>().into_iter().collect();
    dirs.sort();
    dirs.iter().map(|d| (0..fl.len()).filter(|&i| &fl[i].direction == *d).collect()).collect()
}

/// All minimal blocking sets of `subflats` inside a section of `size` points.
fn minimal_blocking_sets(size: usize, subflats: &[u32]) -> Vec<u32> {
    let blocking: Vec<bool> = (0..1u32 << size).map(|s| subflats.iter().all(|&f| f & s != 0)).collect();
    let mut out: Vec<u32> = (0..1u32 << size)
        .filter(|&s| blocking[s as usize] && (0..size).all(|i| s >> i & 1 == 0 || !blocking[(s ^ 1 << i) as usize]))
        .collect();
    out.sort_by_key(|s| (s.count_ones(), *s));
    out
}

impl Instance {
    fn new(field: &FieldSpec, m: usize, n: usize, k: usize) -> Result<Instance> {
        if k < 1 || k > m.min(n) {
            return Err(Error::ParameterOutOfRange(format!("k={k} outside 1..=min(m,n)={}", m.min(n))));
        }
        let npts = crate::matrix::space_size(field.order(), m, n);
        if npts > MAX_POINTS {
            return Err(Error::EnumerationTooLarge { requested: npts, cap: MAX_POINTS });
        }
        let fl = enumerate_flats(Side::Right, m, n, field, m - k, DEFAULT_CAP)?;
        let flats = masks_of(&fl);
        let classes = classes_of(&fl);
        let mut sections = Vec::new();
        let mut section_classes = Vec::new();
        let section_size = (field.order() as usize).pow(((m - k + 1) * n) as u32);
        if k >= 2 && section_size <= LOCAL_TABLE_POINTS {
            let sf = enumerate_flats(Side::Right, m, n, field, m - k + 1, DEFAULT_CAP)?;
            section_classes = classes_of(&sf);
            let mut cache: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for mask in masks_of(&sf) {
                let local: Vec<usize> = (0..npts as usize).filter(|&p| mask >> p & 1 == 1).collect();
                let mut sec = Section { mask, local, minimal: Vec::new() };
                let mut sub: Vec<u32> = flats.iter().filter(|&&f| f & mask == f).map(|&f| sec.localize(f)).collect();
                sub.sort();
                let size = sec.local.len();
                sec.minimal = cache.entry(sub).or_insert_with_key(|sub| minimal_blocking_sets(size, sub)).clone();
                sections.push(sec);
            }
        }
        Ok(Instance { field: field.clone(), m, n, k, npts: npts as usize, flats, classes, sections, section_classes })
    }


    fn blocks_all(&self, set: u128) -> bool {
        self.flats.iter().all(|&f| f & set != 0)
    }

    /// `None` if the state cannot be completed; otherwise a lower bound on the
    /// final size. `rooted` demands at least `s0` points in every section of
    /// section class 0.
    fn lower_bound(&self, inc: u128, forb: u128, rooted: Option<usize>) -> Option<usize> {
        let mut best = 0;
        for class in &self.classes {
            let mut open = 0;
            for &f in class {
                let flat = self.flats[f];
                if flat & inc == 0 {
                    if flat & !forb == 0 {
                        return None;
                    }
                    open += 1;
                }
            }
            best = best.max(open);
        }
        for (c, class) in self.section_classes.iter().enumerate() {
            let mut total = 0;
            for &s in class {
                let sec = &self.sections[s];
                let mut need = sec.need(inc, forb)?;
                if c == 0 {
                    if let Some(s0) = rooted {
                        let have = (sec.mask & inc).count_ones() as usize;
                        need = need.max(s0.saturating_sub(have));
                    }
                }
                total += need;
            }
            best = best.max(total);
        }
        Some(inc.count_ones() as usize + best)
    }

    fn to_point_set(&self, set: u128) -> PointSet {
        let pts = (0..self.npts).filter(|&p| set >> p & 1 == 1).map(|p| Mat::from_index(&self.field, self.m, self.n, p as u128)).collect();
        PointSet::new(&self.field, self.m, self.n, pts).expect("valid points")
    }

    /// Point permutations `X -> U X V + C` fixing the section `sec`.
    fn section_stabilizer(&self, sec: &Section) -> Result<Vec<Vec<usize>>> {
        let f = &self.field;
        let pts: Vec<Mat> = enumerate(f, self.m, self.n, DEFAULT_CAP)?.collect();
        let us: Vec<Mat> = enumerate_full_rank(f, self.m, self.m, DEFAULT_CAP)?.collect();
        let vs: Vec<Mat> = enumerate_full_rank(f, self.n, self.n, DEFAULT_CAP)?.collect();
        let mut perms = BTreeSet::new();
        for u in &us {
            let mapped: Vec<usize> = (0..self.npts).map(|p| u.matmul(&pts[p]).expect("square").index() as usize).collect();
            let image = sec.local.iter().fold(0u128, |a, &p| a | 1u128 << mapped[p]);
            // The section is a subspace, so U either fixes it or moves it to
            // another class.
            if image != sec.mask {
                continue;
            }
            for v in &vs {
                for &c in &sec.local {
                    let perm: Vec<usize> = (0..self.npts)
                        .map(|p| {
                            let x = u.matmul(&pts[p]).and_then(|y| y.matmul(v)).and_then(|y| y.add(&pts[c]));
                            x.expect("shapes agree").index() as usize
                        })
                        .collect();
                    perms.insert(perm);
                }
            }
        }
        Ok(perms.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Found(u128),
    Exhausted,
    Budget,
}

struct Dfs<'a> {
    inst: &'a Instance,
    order: &'a [usize],
    limit: usize,
    rooted: Option<usize>,
    budget: u64,
    nodes: u64,
}

impl Dfs<'_> {
    fn run(&mut self, inc: u128, forb: u128) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Budget;
        }
        match self.inst.lower_bound(inc, forb, self.rooted) {
            None => return Outcome::Exhausted,
            Some(lb) if lb > self.limit => return Outcome::Exhausted,
            _ => {}
        }
        // Branch on the open flat with the fewest allowed points.
        let mut pick: Option<u128> = None;
        for &f in &self.inst.flats {
            if f & inc != 0 {
                continue;
            }
            let allowed = f & !forb;
            if pick.map_or(true, |p| allowed.count_ones() < p.count_ones()) {
                pick = Some(allowed);
            }
        }
        let Some(allowed) = pick else {
            if let Some(s0) = self.rooted {
                let ok = self.inst.section_classes[0]
                    .iter()
                    .all(|&s| (self.inst.sections[s].mask & inc).count_ones() as usize >= s0);
                if !ok {
                    return Outcome::Exhausted;
                }
            }
            return Outcome::Found(inc);
        };
        let mut forb = forb;
        for &p in self.order {
            if allowed >> p & 1 == 0 {
                continue;
            }
            match self.run(inc | 1u128 << p, forb) {
                Outcome::Exhausted => {}
                other => return other,
            }
            forb |= 1u128 << p;
        }
        Outcome::Exhausted
    }
}

/// A root branch: included and forbidden points and the section minimum.
#[derive(Debug, Clone)]
struct Root {
    inc: u128,
    forb: u128,
    rooted: Option<usize>,
}

fn roots(inst: &Instance, limit: usize, symmetry: bool) -> Result<Vec<Root>> {
    if !symmetry {
        return Ok(vec![Root { inc: 0, forb: 0, rooted: None }]);
    }
    if inst.sections.is_empty() {
        // Translations act transitively, so some dense set contains 0.
        return Ok(vec![Root { inc: 1, forb: 0, rooted: None }]);
    }
    // Translate the least-hit section of class 0 onto the one through 0 and
    // reduce its contents modulo the stabilizer of that section.
    let class0 = &inst.section_classes[0];
    let sec = &inst.sections[class0[0]];
    debug_assert!(sec.mask & 1 == 1);
    let perms = inst.section_stabilizer(sec)?;
    let local_perms: BTreeSet<Vec<usize>> = perms
        .iter()
        .map(|perm| sec.local.iter().map(|&p| sec.local.iter().position(|&x| x == perm[p]).expect("stabilized")).collect())
        .collect();
    let min_size = sec.minimal.iter().map(|b| b.count_ones() as usize).min().unwrap_or(0);
    let per_class = class0.len();
    let size = sec.local.len();
    let mut out = Vec::new();
    for s0 in min_size..=limit / per_class {
        for local in 0u32..1 << size {
            if local.count_ones() as usize != s0 || !sec.minimal.iter().any(|&b| b & local == b) {
                continue;
            }
            let canonical = local_perms.iter().all(|perm| {
                let img = (0..size).fold(0u32, |a, i| a | ((local >> i) & 1) << perm[i]);
                img >= local
            });
            if canonical {
                let inc = sec.globalize(local);
                out.push(Root { inc, forb: sec.mask & !inc, rooted: Some(s0) });
            }
        }
    }
    Ok(out)
}

struct Decision {
    outcome: Outcome,
    nodes: u64,
    roots: usize,
}

fn decide(inst: &Instance, limit: usize, cfg: &SearchConfig) -> Result<Decision> {
    let mut order: Vec<usize> = (0..inst.npts).collect();
    if let Some(seed) = cfg.seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let roots = roots(inst, limit, cfg.symmetry)?;
    if roots.is_empty() {
        return Ok(Decision { outcome: Outcome::Exhausted, nodes: 0, roots: 0 });
    }
    let per_root = (cfg.node_budget / roots.len() as u64).max(1);
    let results: Vec<(Outcome, u64)> = roots
        .par_iter()
        .map(|r| {
            let mut dfs = Dfs { inst, order: &order, limit, rooted: r.rooted, budget: per_root, nodes: 0 };
            let out = dfs.run(r.inc, r.forb);
            (out, dfs.nodes)
        })
        .collect();
    let nodes = results.iter().map(|r| r.1).sum();
    let outcome = results
        .iter()
        .find(|r| matches!(r.0, Outcome::Found(_)))
        .or_else(|| results.iter().find(|r| r.0 == Outcome::Budget))
        .map_or(Outcome::Exhausted, |r| r.0);
    Ok(Decision { outcome, nodes, roots: roots.len() })
}

/// A blocking set built greedily, used as a fallback witness.
fn greedy(inst: &Instance) -> u128 {
    let mut set = 0u128;
    while !inst.blocks_all(set) {
        let best = (0..inst.npts)
            .filter(|&p| set >> p & 1 == 0)
            .max_by_key(|&p| (inst.flats.iter().filter(|&&f| f & set == 0 && f >> p & 1 == 1).count(), std::cmp::Reverse(p)))
            .expect("points remain");
        set |= 1u128 << best;
    }
    set
}

fn verified_witness(inst: &Instance, set: u128) -> Result<PointSet> {
    let ps = inst.to_point_set(set);
    for j in 1..=inst.k {
        if !geometry::is_k_dense(&ps, j)?.dense {
            return Err(Error::Internal(format!("search witness is not {j}-dense")));
        }
    }
    Ok(ps)
}

/// `ν_k(m, n, q)`, or a decision on a given size.
pub fn min_dense_size(cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.node_budget == 0 {
        return Err(Error::ParameterOutOfRange("node budget must be positive".into()));
    }
    let inst = Instance::new(&cfg.field, cfg.m, cfg.n, cfg.k)?;
    let floor = inst.lower_bound(0, 0, None).expect("the full space blocks everything");
    let mut nodes = 0;
    let mut root_branches = 0;
    let result = |status, minimum, lower_bound, witness: Option<PointSet>, nodes, proof, root_branches| SearchResult {
        status,
        minimum,
        lower_bound,
        witness_size: witness.as_ref().map(PointSet::len),
        witness,
        nodes,
        proof,
        root_branches,
    };
    match cfg.target {
        Target::Decide(s) => {
            if s == 0 {
                return Err(Error::ParameterOutOfRange("decided size must be at least 1".into()));
            }
            if s < floor {
                return Ok(result(Status::Infeasible, None, s + 1, None, 0, true, 0));
            }
            let d = decide(&inst, s, cfg)?;
            Ok(match d.outcome {
                Outcome::Found(set) => {
                    let w = verified_witness(&inst, set)?;
                    result(Status::Feasible, Some(w.len()), floor, Some(w), d.nodes, true, d.roots)
                }
                Outcome::Exhausted => result(Status::Infeasible, None, s + 1, None, d.nodes, true, d.roots),
                Outcome::Budget => result(Status::BudgetExhausted, None, floor, None, d.nodes, false, d.roots),
            })
        }
        Target::Minimum => {
            let mut s = floor;
            loop {
                let d = decide(&inst, s, cfg)?;
                nodes += d.nodes;
                root_branches += d.roots;
                match d.outcome {
                    Outcome::Found(set) => {
                        let w = verified_witness(&inst, set)?;
                        if w.len() != s {
                            return Err(Error::Internal(format!("witness of size {} at level {s}", w.len())));
                        }
                        return Ok(result(Status::Optimal, Some(s), s, Some(w), nodes, true, root_branches));
                    }
                    Outcome::Exhausted => s += 1,
                    Outcome::Budget => {
                        let w = verified_witness(&inst, greedy(&inst))?;
                        return Ok(result(Status::BudgetExhausted, None, s, Some(w), nodes, false, root_branches));
                    }
                }
            }
        }
    }
}

/// An MRD code inside `s`, found by a clique search on the graph joining
/// points at rank distance at least `min(m,n) - k + 1`.
pub fn find_mrd_subset(s: &PointSet, k: usize, node_budget: u64) -> Result<Option<MatrixCode>> {
    let (m, n) = s.shape();
    if k < 1 || k > m.min(n) {
        return Err(Error::ParameterOutOfRange(format!("k={k} outside 1..=min(m,n)")));
    }
    if s.len() > 128 {
        return Err(Error::EnumerationTooLarge { requested: s.len() as u128, cap: 128 });
    }
    let q = s.field().order() as u128;
    let target = q.pow((k * m.max(n)) as u32);
    if (s.len() as u128) < target {
        return Ok(None);
    }
    let target = target as usize;
    let d = m.min(n) - k + 1;
    let pts = s.points();
    let adj: Vec<u128> = (0..pts.len())
        .map(|i| {
            (0..pts.len())
                .filter(|&j| j != i && pts[i].sub(&pts[j]).expect("same shape").rank() >= d)
                .fold(0u128, |a, j| a | 1u128 << j)
        })
        .collect();
    fn grow(adj: &[u128], chosen: u128, cand: u128, target: usize, nodes: &mut u64, budget: u64) -> Result<Option<u128>> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExhausted(budget));
        }
        let have = chosen.count_ones() as usize;
        if have == target {
            return Ok(Some(chosen));
        }
        if have + cand.count_ones() as usize >= target {
            let mut cand = cand;
            while cand != 0 {
                if have + (cand.count_ones() as usize) < target {
                    break;
                }
                let v = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                if let Some(c) = grow(adj, chosen | 1u128 << v, cand & adj[v], target, nodes, budget)? {
                    return Ok(Some(c));
                }
            }
        }
        Ok(None)
    }
    let all = if pts.len() == 128 { u128::MAX } else { (1u128 << pts.len()) - 1 };
    let mut nodes = 0;
    let Some(found) = grow(&adj, 0, all, target, &mut nodes, node_budget)? else {
        return Ok(None);
    };
    let words = (0..pts.len()).filter(|&i| found >> i & 1 == 1).map(|i| pts[i].clone()).collect();
    let code = MatrixCode::new(s.field(), m, n, words)?;
    if !is_mrd(&code, k)?.is_mrd {
        return Err(Error::Internal("clique search returned a non-MRD set".into()));
    }
    Ok(Some(code))
}

/// Counts for one size in [`verify_plane_lemma`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneLemmaRow {
    pub size: usize,
    pub candidates: usize,
    pub blocking_sets: usize,
    pub satisfying: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneLemmaReport {
    pub mrd_codes: usize,
    /// Blocking sets of size 4, which should be exactly the MRD codes.
    pub minimum_blocking_sets: usize,
    pub rows: Vec<PlaneLemmaRow>,
    pub holds: bool,
}

/// Exhaustive check of the structure of blocking sets of sizes 5 to 8 in
/// `RAG(2, 2, 2)`: size 5 contains an MRD code and misses another, size 6
/// misses an MRD code, sizes 7 and 8 leave three pairwise non-collinear
/// points outside.
pub fn verify_plane_lemma() -> Result<PlaneLemmaReport> {
    let f = FieldSpec::prime(2)?;
    let pts: Vec<Mat> = enumerate(&f, 2, 2, DEFAULT_CAP)?.collect();
    let lines = masks_of(&enumerate_flats(Side::Right, 2, 2, &f, 1, DEFAULT_CAP)?);
    let mask_of = |ps: &PointSet| ps.points().iter().fold(0u32, |a, p| a | 1 << p.index());
    let mrd: Vec<u32> = geometry::four_set_sweep()?.mrd_codes.iter().map(mask_of).collect();
    let blocking = |s: u32| lines.iter().all(|&l| l as u32 & s != 0);
    let non_collinear: Vec<Vec<bool>> =
        (0..16).map(|i| (0..16).map(|j| i != j && pts[i].sub(&pts[j]).expect("same shape").rank() == 2).collect()).collect();
    let triangle_outside = |s: u32| {
        let out: Vec<usize> = (0..16).filter(|&p| s >> p & 1 == 0).collect();
        out.iter().enumerate().any(|(a, &x)| {
            out[a + 1..].iter().enumerate().any(|(b, &y)| {
                non_collinear[x][y] && out[a + 1 + b + 1..].iter().any(|&z| non_collinear[x][z] && non_collinear[y][z])
            })
        })
    };
    let minimum_blocking_sets = (0u32..1 << 16).filter(|s| s.count_ones() == 4 && blocking(*s)).count();
    let mut rows = Vec::new();
    for size in 5..=8 {
        let mut row = PlaneLemmaRow { size, candidates: 0, blocking_sets: 0, satisfying: 0 };
        for s in (0u32..1 << 16).filter(|s| s.count_ones() as usize == size) {
            row.candidates += 1;
            if !blocking(s) {
                continue;
            }
            row.blocking_sets += 1;
            let contains = mrd.iter().any(|&c| c & s == c);
            let misses = mrd.iter().any(|&c| c & s == 0);
            let ok = match size {
                5 => contains && misses,
                6 => misses,
                _ => triangle_outside(s),
            };
            row.satisfying += ok as usize;
        }
        rows.push(row);
    }
    let holds = minimum_blocking_sets == mrd.len()
        && mrd.iter().all(|&c| blocking(c))
        && rows.iter().all(|r| r.blocking_sets > 0 && r.satisfying == r.blocking_sets);
    Ok(PlaneLemmaReport { mrd_codes: mrd.len(), minimum_blocking_sets, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn tiny_minima() {
        let r = min_dense_size(&SearchConfig::new(&gf2(), 2, 1, 1)).unwrap();
        assert_eq!((r.status, r.minimum), (Status::Optimal, Some(3)));
        let r = min_dense_size(&SearchConfig::new(&gf2(), 2, 2, 1)).unwrap();
        assert_eq!(r.minimum, Some(4));
        let c = MatrixCode::new(&gf2(), 2, 2, r.witness.unwrap().points().to_vec()).unwrap();
        assert!(is_mrd(&c, 1).unwrap().is_mrd);
    }

    #[test]
    fn symmetry_does_not_change_minima() {
        for (m, n) in [(2, 1), (2, 2), (3, 1)] {
            let mut cfg = SearchConfig::new(&gf2(), m, n, 1);
            let on = min_dense_size(&cfg).unwrap().minimum;
            cfg.symmetry = false;
            assert_eq!(min_dense_size(&cfg).unwrap().minimum, on);
        }
    }

    #[test]
    fn decide_and_budget() {
        let mut cfg = SearchConfig::new(&gf2(), 3, 2, 1);
        cfg.target = Target::Decide(5);
        assert_eq!(min_dense_size(&cfg).unwrap().status, Status::Infeasible);
        cfg.target = Target::Decide(6);
        assert_eq!(min_dense_size(&cfg).unwrap().status, Status::Feasible);
        cfg.target = Target::Minimum;
        cfg.node_budget = 1;
        let r = min_dense_size(&cfg).unwrap();
        assert_eq!(r.status, Status::BudgetExhausted);
        assert!(!r.proof);
        assert!(is_k_dense_ok(r.witness.as_ref().unwrap()));
    }

    fn is_k_dense_ok(s: &PointSet) -> bool {
        geometry::is_k_dense(s, 1).unwrap().dense
    }

    #[test]
    fn plane_sections_table() {
        let inst = Instance::new(&gf2(), 3, 2, 2).unwrap();
        assert_eq!(inst.sections.len(), 28);
        assert_eq!(inst.section_classes.len(), 7);
        for s in &inst.sections {
            assert_eq!(s.minimal.iter().filter(|b| b.count_ones() == 4).count(), 8);
            assert_eq!(s.need(0, 0), Some(4));
        }
        assert_eq!(inst.lower_bound(0, 0, None), Some(16));
    }

    #[test]
    fn mrd_subsets() {
        let full = PointSet::full(&gf2(), 2, 2).unwrap();
        let c = find_mrd_subset(&full, 1, 1 << 20).unwrap().unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(find_mrd_subset(&geometry::two_by_three_subspace(), 1, 1 << 24).unwrap(), None);
    }

    #[test]
    fn plane_lemma() {
        let r = verify_plane_lemma().unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.rows[0].candidates, 4368);
    }
}
