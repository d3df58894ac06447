//! The reproduction battery: every headline number, recomputed.
//!
//! Each [`Criterion`] runs a group of [`Check`]s and carries its runtime
//! limit. The `mrdlab verify` command and the acceptance tests both drive
//! this list.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{self, gabidulin, is_mrd, map_to_mrd, mrd_to_map, MatrixCode, VectorMap};
use crate::counting::{self, gaussian_binomial as gb};
use crate::distributions::{self, is_k_good, k_good, MatrixDistribution};
use crate::error::Result;
use crate::geometry::{self, PointSet};
use crate::gf::{field_make, FieldSpec};
use crate::homweight::{self, coset_weight_sums, HomogeneousWeight, Submodule};
use crate::matrix::{enumerate, enumerate_full_rank, Mat, Side, DEFAULT_CAP};
use crate::oracle;
use crate::randomcoding::{self, Mode, PatternFamily, VectorProperty, VectorSet};
use crate::search::{self, SearchConfig, Status};

/// One comparison of an expected and a computed value.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn eq(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.into(), pass: expected == actual, expected, actual }
    }

    fn holds(name: impl Into<String>, ok: bool) -> Check {
        Check::eq(name, true, ok)
    }
}

/// A named group of checks with a runtime limit.
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    /// The statement being reproduced, in words.
    pub claim: &'static str,
    pub limit: Duration,
    /// Has parts skipped by the fast scope.
    pub slow: bool,
    pub run: fn(Scope) -> Result<Vec<Check>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    All,
    Fast,
}

impl std::str::FromStr for Scope {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Scope, String> {
        match s {
            "all" => Ok(Scope::All),
            "fast" => Ok(Scope::Fast),
            other => Err(format!("unknown scope {other:?}, expected all or fast")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub claim: String,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub seconds: f64,
    pub limit_seconds: f64,
    pub within_limit: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scope: Scope,
    pub criteria: Vec<CriterionReport>,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub pass: bool,
}

impl RunReport {
    /// Human-readable table, one line per check.
    pub fn table(&self) -> String {
        let mut out = String::from("criterion\tcheck\texpected\tactual\tresult\tseconds\n");
        for c in &self.criteria {
            if let Some(e) = &c.error {
                out.push_str(&format!("{}\t{}\t-\terror: {e}\tFAIL\t{:.3}\n", c.id, c.title, c.seconds));
            }
            for ch in &c.checks {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{:.3}\n",
                    c.id,
                    ch.name,
                    ch.expected,
                    ch.actual,
                    if ch.pass { "ok" } else { "FAIL" },
                    c.seconds
                ));
            }
            if !c.within_limit {
                out.push_str(&format!("{}\truntime\t<{}s\t{:.3}s\tFAIL\t{:.3}\n", c.id, c.limit_seconds, c.seconds, c.seconds));
            }
        }
        out
    }
}

/// Runs one criterion, catching errors into the report.
pub fn run_criterion(c: &Criterion, scope: Scope) -> CriterionReport {
    let start = Instant::now();
    let outcome = (c.run)(scope);
    let elapsed = start.elapsed();
    let (checks, error) = match outcome {
        Ok(v) => (v, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let within_limit = elapsed <= c.limit;
    let pass = error.is_none() && !checks.is_empty() && checks.iter().all(|ch| ch.pass) && within_limit;
    CriterionReport {
        id: c.id,
        title: c.title.to_string(),
        claim: c.claim.to_string(),
        checks,
        error,
        seconds: elapsed.as_secs_f64(),
        limit_seconds: c.limit.as_secs_f64(),
        within_limit,
        pass,
    }
}

/// Runs every criterion in scope. Failures are report entries.
pub fn run_battery(scope: Scope) -> RunReport {
    let criteria: Vec<CriterionReport> = criteria().iter().map(|c| run_criterion(c, scope)).collect();
    let checks_passed = criteria.iter().flat_map(|c| &c.checks).filter(|c| c.pass).count();
    let checks_failed = criteria.iter().map(|c| c.checks.iter().filter(|ch| !ch.pass).count() + c.error.is_some() as usize).sum();
    let pass = criteria.iter().all(|c| c.pass);
    RunReport { scope, criteria, checks_passed, checks_failed, pass }
}

fn gf2() -> FieldSpec {
    FieldSpec::prime(2).expect("prime")
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "homogeneous weight tables",
            claim: "normalized left weight on F_2^{2x3} is (1/42, 1/84), right is (1/56, 5/336)",
            limit: secs(1),
            slow: false,
            run: weight_tables,
        },
        Criterion {
            id: 2,
            title: "total homogeneous weight",
            claim: "c_{2,3} = 56, c_{3,2} = 64; closed form equals brute sum for m, n <= 3, q in {2, 3}",
            limit: secs(1),
            slow: false,
            run: total_weights,
        },
        Criterion {
            id: 3,
            title: "goodness of normalized weights",
            claim: "the normalized right weight is 1-good, the normalized left weight is not",
            limit: secs(1),
            slow: false,
            run: weight_goodness,
        },
        Criterion {
            id: 4,
            title: "coset rank censuses",
            claim: "size-8 right submodules of F_2^{2x3}: cosets {2, 6}; size-16 of F_2^{3x2}: {1,9,6} and {0,4,12}",
            limit: secs(1),
            slow: false,
            run: coset_censuses,
        },
        Criterion {
            id: 5,
            title: "Gabidulin codes",
            claim: "Gabidulin codes are MRD, their uniform distributions are k-good with minimum support",
            limit: secs(5),
            slow: false,
            run: gabidulin_codes,
        },
        Criterion {
            id: 6,
            title: "transpose duality",
            claim: "k-goodness is invariant under transposition and (k+1)-good implies k-good",
            limit: secs(30),
            slow: false,
            run: duality_corpus,
        },
        Criterion {
            id: 7,
            title: "subspace counting",
            claim: "closed forms for intersecting subspaces and rank-k products equal brute force",
            limit: secs(60),
            slow: false,
            run: counting_checks,
        },
        Criterion {
            id: 8,
            title: "nu_1(3,2,2)",
            claim: "the minimum dense set of F_2^{3x2} has 6 points",
            limit: secs(10),
            slow: false,
            run: nu1_322,
        },
        Criterion {
            id: 9,
            title: "nu_2(3,2,2)",
            claim: "the minimum line-blocking set of RAG(3,2,2) has 22 points",
            limit: secs(600),
            slow: true,
            run: nu2_322,
        },
        Criterion {
            id: 10,
            title: "small minima",
            claim: "nu_1(2,1,2) = 3 = 1 + m(q-1) and nu_k = q^{kn} with MRD witnesses when m <= n",
            limit: secs(30),
            slow: false,
            run: small_minima,
        },
        Criterion {
            id: 11,
            title: "blocking sets of the 2x2 plane",
            claim: "blocking sets of sizes 5 to 8 have the stated MRD structure; lines and MRD codes form the affine plane of order 4",
            limit: secs(60),
            slow: false,
            run: plane_lemma,
        },
        Criterion {
            id: 12,
            title: "a 1-good vertex that is not MRD-based",
            claim: "a 16-point subspace of F_2^{2x3} meets every line in 2 points and contains no (2,3,1) MRD code",
            limit: secs(10),
            slow: false,
            run: vertex_example,
        },
        Criterion {
            id: 13,
            title: "complete mapping bridge",
            claim: "x -> xM with M the companion of x^2+x+1 gives a (2,2,1) MRD code; the identity does not",
            limit: secs(1),
            slow: false,
            run: orthomorphism_bridge,
        },
        Criterion {
            id: 14,
            title: "independence of codeword maps",
            claim: "joint laws equal q^{-kn} and q^{-(k+1)n}; exact failure probability is below the bound",
            limit: secs(30),
            slow: false,
            run: joint_laws,
        },
        Criterion {
            id: 15,
            title: "F-set extraction",
            claim: "extracted sets are F-sets on 100 seeded trials",
            limit: secs(30),
            slow: false,
            run: fset_trials,
        },
    ]
}

fn rat(s: &str) -> String {
    s.to_string()
}

fn weight_tables(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let left = HomogeneousWeight::new(Side::Left, 2, 3, &f)?;
    let right = HomogeneousWeight::new(Side::Right, 2, 3, &f)?;
    Ok(vec![
        Check::eq("left rank 1", rat("1/42"), left.normalized(1)),
        Check::eq("left rank 2", rat("1/84"), left.normalized(2)),
        Check::eq("right rank 1", rat("1/56"), right.normalized(1)),
        Check::eq("right rank 2", rat("5/336"), right.normalized(2)),
    ])
}

fn total_weights(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let mut out = vec![
        Check::eq("c_{2,3} closed form", 56, HomogeneousWeight::new(Side::Left, 2, 3, &f)?.total()),
        Check::eq("c_{2,3} brute", 56, HomogeneousWeight::new(Side::Left, 2, 3, &f)?.brute_total()?),
        Check::eq("c_{3,2} closed form", 64, HomogeneousWeight::new(Side::Left, 3, 2, &f)?.total()),
        Check::eq("c_{3,2} brute", 64, HomogeneousWeight::new(Side::Left, 3, 2, &f)?.brute_total()?),
    ];
    let mut agree = true;
    for q in [2, 3] {
        let fq = FieldSpec::prime(q)?;
        for m in 1..=3 {
            for n in 1..=3 {
                for side in [Side::Left, Side::Right] {
                    // The constructor already rejects a closed-form mismatch.
                    let w = HomogeneousWeight::new(side, m, n, &fq)?;
                    agree &= *w.total() == w.brute_total()?;
                }
            }
        }
    }
    out.push(Check::holds("closed form = brute for all m, n <= 3, q in {2,3}", agree));
    Ok(out)
}

fn weight_goodness(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let right = homweight::normalized_distribution(Side::Right, 2, 3, &f)?;
    let left = homweight::normalized_distribution(Side::Left, 2, 3, &f)?;
    let lr = is_k_good(&left, 1, DEFAULT_CAP)?;
    Ok(vec![
        Check::holds("normalized right weight is 1-good", is_k_good(&right, 1, DEFAULT_CAP)?.good),
        Check::holds("normalized left weight is not 1-good", !lr.good),
        Check::holds("left failure has a witness", lr.witness.is_some()),
    ])
}

fn censuses(side_weight: Side, m: usize, n: usize, dim: usize) -> Result<BTreeMap<(bool, Vec<usize>), usize>> {
    let f = gf2();
    let w = HomogeneousWeight::new(side_weight, m, n, &f)?;
    let mut seen = BTreeMap::new();
    for v in counting::SubspaceIterator::new(&f, m, dim) {
        let u = Submodule::new(Side::Right, m, n, &v)?;
        for c in coset_weight_sums(&w, &u)? {
            *seen.entry((c.representative.is_zero(), c.census)).or_insert(0) += 1;
        }
    }
    Ok(seen)
}

fn fmt_census(c: &BTreeMap<(bool, Vec<usize>), usize>) -> String {
    c.iter().map(|((zero, v), n)| format!("{}{v:?}x{n}", if *zero { "U:" } else { "coset:" })).collect::<Vec<_>>().join(" ")
}

fn coset_censuses(_: Scope) -> Result<Vec<Check>> {
    // 3 submodules of size 8 with 7 nontrivial cosets each; 7 of size 16 with 3.
    Ok(vec![
        Check::eq("F_2^{2x3}, |U| = 8", "coset:[0, 2, 6]x21 U:[1, 7, 0]x3", fmt_census(&censuses(Side::Right, 2, 3, 1)?)),
        Check::eq("F_2^{3x2}, |U| = 16", "coset:[0, 4, 12]x21 U:[1, 9, 6]x7", fmt_census(&censuses(Side::Left, 3, 2, 2)?)),
    ])
}

fn gabidulin_codes(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let mut out = Vec::new();
    let cases: Vec<(&str, MatrixCode, usize)> = vec![
        ("(3,3,1)", gabidulin(3, 3, 1, &f, DEFAULT_CAP)?, 1),
        ("(3,3,2)", gabidulin(3, 3, 2, &f, DEFAULT_CAP)?, 2),
        ("(3,2,1)", gabidulin(3, 2, 1, &f, DEFAULT_CAP)?, 1),
        ("(2,3,1) transposed", gabidulin(3, 2, 1, &f, DEFAULT_CAP)?.transpose(), 1),
    ];
    for (name, code, k) in cases {
        let size = 2usize.pow((k * code.m().max(code.n())) as u32);
        out.push(Check::holds(format!("{name} is MRD"), is_mrd(&code, k)?.is_mrd));
        out.push(Check::eq(format!("{name} size"), size, code.len()));
        let d = MatrixDistribution::uniform_over_code(&code)?;
        out.push(Check::holds(format!("{name} uniform is {k}-good"), k_good(&d, k)?));
        let cls = distributions::classify_min_support(&d, k)?;
        out.push(Check::holds(format!("{name} has minimum support"), cls.is_minimum && cls.mrd_support));
    }
    Ok(out)
}

/// The seeded duality corpus: random supports, transformed MRD codes,
/// their mixtures, the uniform distribution and the homogeneous weights.
pub fn duality_corpus_members(seed: u64) -> Result<Vec<MatrixDistribution>> {
    let f = gf2();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = gabidulin(2, 3, 1, &f, DEFAULT_CAP)?;
    let ps: Vec<Mat> = enumerate_full_rank(&f, 2, 2, DEFAULT_CAP)?.collect();
    let qs: Vec<Mat> = enumerate_full_rank(&f, 3, 3, DEFAULT_CAP)?.collect();
    let transformed = |rng: &mut ChaCha8Rng| -> Result<MatrixDistribution> {
        let p = &ps[rng.gen_range(0..ps.len())];
        let q = &qs[rng.gen_range(0..qs.len())];
        let b = Mat::from_index(&f, 2, 3, rng.gen_range(0..64));
        let d = MatrixDistribution::uniform_over_code(&base)?;
        Ok(d.map(2, 3, |a| p.matmul(a).and_then(|x| x.matmul(q)).and_then(|x| x.add(&b)).expect("shapes agree")))
    };
    let mut out = vec![
        MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP)?,
        homweight::normalized_distribution(Side::Right, 2, 3, &f)?,
        homweight::normalized_distribution(Side::Left, 2, 3, &f)?,
    ];
    while out.len() < 50 {
        let d = match out.len() % 4 {
            0 => {
                let size = rng.gen_range(1..=24);
                distributions::random_distribution(&f, 2, 3, size, 5, &mut rng)?
            }
            1 => transformed(&mut rng)?,
            2 => {
                let (a, b) = (transformed(&mut rng)?, transformed(&mut rng)?);
                let w = distributions::recip(rng.gen_range(2..6));
                distributions::mix(&[(w.clone(), &a), (<distributions::Weight as num::One>::one() - w, &b)])?
            }
            _ => {
                // An MRD code with one codeword moved: usually not good.
                let mut words = transformed(&mut rng)?.support().cloned().collect::<Vec<_>>();
                words.pop();
                let extra = (0..64).map(|i| Mat::from_index(&f, 2, 3, i)).find(|x| !words.contains(x)).expect("room");
                words.push(extra);
                MatrixDistribution::uniform_over(&f, 2, 3, &words)?
            }
        };
        out.push(d);
    }
    Ok(out)
}

fn duality_corpus(_: Scope) -> Result<Vec<Check>> {
    let corpus = duality_corpus_members(2024)?;
    let mut dual = true;
    let mut nested = true;
    let mut good_counts = [0usize; 2];
    for d in &corpus {
        let t = d.transpose();
        let g: Vec<bool> = (1..=2).map(|k| k_good(d, k)).collect::<Result<_>>()?;
        for k in 1..=2 {
            dual &= g[k - 1] == k_good(&t, k)?;
            good_counts[k - 1] += g[k - 1] as usize;
        }
        nested &= !g[1] || g[0];
    }
    Ok(vec![
        Check::eq("corpus size", 50, corpus.len()),
        Check::holds("k-good(D) = k-good(D^T) for k in {1, 2}", dual),
        Check::holds("2-good implies 1-good", nested),
        Check::holds("corpus has good and bad members", good_counts[0] > 0 && good_counts[0] < corpus.len()),
    ])
}

fn counting_checks(_: Scope) -> Result<Vec<Check>> {
    let (mut intersect_ok, mut intersect_n) = (true, 0);
    let (mut product_ok, mut product_n) = (true, 0);
    for q in [2u32, 3] {
        for n in 1..=4u64 {
            for m in 0..=n {
                for l in 0..=n {
                    for k in 0..=l.min(m) {
                        if l + m > n + k {
                            continue;
                        }
                        let brute = oracle::count_intersecting_subspaces(k as u32, l as u32, m as u32, n as u32, q)?;
                        intersect_ok &= counting::anzahl_intersecting_subspaces(k, l, m, n, q)? == BigUint::from(brute);
                        intersect_n += 1;
                    }
                }
            }
            for m in 1..=n {
                for l in 0..=m {
                    for k in 0..=l {
                        if k + n < l + m {
                            continue;
                        }
                        let brute = oracle::count_rank_k_products(k as u32, l as u32, m as u32, n as u32, q)?;
                        product_ok &= counting::anzahl_rank_k_products(k, l, m, n, q)? == BigUint::from(brute);
                        product_n += 1;
                    }
                }
            }
        }
    }
    let mut identities = true;
    for q in [2u32, 3] {
        for n in 0..=5i64 {
            for m in 0..=n {
                for k in 0..=m {
                    for l in 0..=n {
                        identities &= gb(n, l, q) * gb(l, k, q) * gb(n - l, m - k, q) == gb(n, m, q) * gb(m, k, q) * gb(n - m, l - k, q);
                    }
                    let mut sum = BigUint::from(0u32);
                    for l in k..=m.min(n - m + k) {
                        sum += gb(n - m, l - k, q) * counting::q_product(q, (m - k) as u64, 0, (l - k) as u64);
                    }
                    identities &= sum == counting::qpow(q, ((m - k) * (n - m)) as u64);
                }
            }
        }
    }
    Ok(vec![
        Check::holds(format!("intersecting subspaces, {intersect_n} tuples"), intersect_ok),
        Check::holds(format!("rank-k products, {product_n} tuples"), product_ok),
        Check::holds("Gaussian binomial identities, n <= 5", identities),
    ])
}

fn search_checks(cfg: &SearchConfig, expected: usize, name: &str) -> Result<Vec<Check>> {
    let r = search::min_dense_size(cfg)?;
    let mut out = vec![
        Check::eq(format!("{name} minimum"), expected, r.minimum.map_or("none".into(), |m| m.to_string())),
        Check::holds(format!("{name} optimality proof"), r.status == Status::Optimal && r.proof),
    ];
    if let Some(w) = &r.witness {
        out.push(Check::holds(format!("{name} witness is {}-dense", cfg.k), geometry::is_k_dense(w, cfg.k)?.dense));
    }
    Ok(out)
}

fn nu1_322(_: Scope) -> Result<Vec<Check>> {
    let mut out = search_checks(&SearchConfig::new(&gf2(), 3, 2, 1), 6, "nu_1(3,2,2)")?;
    out.push(Check::holds("explicit 6-set is 1-dense", geometry::is_k_dense(&geometry::dense_six(), 1)?.dense));
    Ok(out)
}

fn nu2_322(scope: Scope) -> Result<Vec<Check>> {
    let f8 = field_make(2, 3, None)?;
    let s = geometry::build_22set(&f8)?;
    let mut out = vec![
        Check::eq("22-set size", 22, s.len()),
        Check::holds("22-set blocks every line", geometry::is_k_dense(&s, 2)?.dense),
        Check::eq("22-set line histogram", "{1: 91, 3: 21}", format!("{:?}", geometry::intersection_pattern(&s, 1, Side::Right)?)),
    ];
    if scope == Scope::All {
        out.extend(search_checks(&SearchConfig::new(&gf2(), 3, 2, 2), 22, "nu_2(3,2,2)")?);
    }
    Ok(out)
}

fn small_minima(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let mut out = search_checks(&SearchConfig::new(&f, 2, 1, 1), 3, "nu_1(2,1,2)")?;
    for (m, n) in [(2, 2), (2, 3)] {
        let cfg = SearchConfig::new(&f, m, n, 1);
        out.extend(search_checks(&cfg, 2usize.pow(n as u32), &format!("nu_1({m},{n},2)"))?);
        let w = search::min_dense_size(&cfg)?.witness.expect("optimal");
        let code = MatrixCode::new(&f, m, n, w.points().to_vec())?;
        out.push(Check::holds(format!("nu_1({m},{n},2) witness is MRD"), is_mrd(&code, 1)?.is_mrd));
    }
    Ok(out)
}

fn plane_lemma(_: Scope) -> Result<Vec<Check>> {
    let r = search::verify_plane_lemma()?;
    let mut out = vec![
        Check::eq("MRD codes in F_2^{2x2}", 8, r.mrd_codes),
        Check::eq("blocking sets of size 4", 8, r.minimum_blocking_sets),
    ];
    for row in &r.rows {
        out.push(Check::eq(
            format!("size {} blocking sets satisfying the lemma", row.size),
            row.blocking_sets,
            row.satisfying,
        ));
    }
    let blocks = geometry::affine_plane_of_order_four()?;
    let pts: Vec<Mat> = enumerate(&gf2(), 2, 2, DEFAULT_CAP)?.collect();
    out.push(Check::eq("lines plus MRD codes", 20, blocks.len()));
    out.push(Check::holds("any two points on exactly one block", geometry::is_linear_space(&pts, &blocks)));
    let sweep = geometry::four_set_sweep()?;
    out.push(Check::holds("dense 4-sets are exactly the MRD codes", sweep.dense == sweep.mrd_codes));
    Ok(out)
}

fn vertex_example(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let s = geometry::two_by_three_subspace();
    let hist = geometry::intersection_pattern(&s, 1, Side::Right)?;
    let lines0: Vec<PointSet> = geometry::enumerate_flats(Side::Right, 2, 3, &f, 1, DEFAULT_CAP)?
        .into_iter()
        .filter(|l| l.rep.is_zero())
        .map(|l| PointSet::new(&f, 2, 3, l.points()))
        .collect::<Result<_>>()?;
    let mut singles = Vec::new();
    let mut meets = true;
    for l in &lines0 {
        let common: Vec<&Mat> = l.points().iter().filter(|p| s.contains(p)).collect();
        meets &= common.len() == 2 && common[0].is_zero();
        if let Some(a) = common.get(1) {
            singles.push((*a).clone());
        }
    }
    let sum = singles.iter().try_fold(Mat::zeros(&f, 2, 3), |acc, a| acc.add(a))?;
    Ok(vec![
        Check::eq("points", 16, s.len()),
        Check::eq("line intersections", "{2: 24}", format!("{hist:?}")),
        Check::eq("lines through 0", 3, lines0.len()),
        Check::holds("A meets each L_i in {0, A_i}", meets),
        Check::holds("A_1 + A_2 + A_3 = 0", singles.len() == 3 && sum.is_zero()),
        Check::holds("no (2,3,1) MRD subset", search::find_mrd_subset(&s, 1, 1 << 24)?.is_none()),
    ])
}

fn orthomorphism_bridge(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let companion = Mat::from_rows(&f, &[[0, 1], [1, 1]])?;
    let map = VectorMap::linear(&companion)?;
    let code = map_to_mrd(&map)?;
    let back = mrd_to_map(&code)?;
    let identity = VectorMap::linear(&Mat::identity(&f, 2))?;
    let id_code = map_to_mrd(&identity)?;
    Ok(vec![
        Check::holds("x -> xM is a complete mapping", map.is_complete_mapping()),
        Check::holds("its graph is a (2,2,1) MRD code", is_mrd(&code, 1)?.is_mrd),
        Check::holds("the code round-trips to the map", back == map),
        Check::holds("identity is not a complete mapping", !identity.is_complete_mapping()),
        Check::holds("identity graph is not MRD", !is_mrd(&id_code, 1)?.is_mrd),
        Check::holds("the pair of linear codes are MRD", {
            let (a, b) = codes::binary_2x2_mrd_pair();
            is_mrd(&a, 1)?.is_mrd && is_mrd(&b, 1)?.is_mrd
        }),
    ])
}

fn joint_laws(scope: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let d22 = MatrixDistribution::uniform_full(&f, 2, 2, DEFAULT_CAP)?;
    let pairs = randomcoding::joint_law_check(&d22, &VectorSet::nonzero(&f, 2, VectorProperty::AnyKIndependent(2))?, Mode::Linear)?;
    // A 2-good distribution with small support: a (2,2,2) code is the full
    // space, so use the (2,2,1) MRD codes for k = 1.
    let (mrd, _) = codes::binary_2x2_mrd_pair();
    let d_mrd = MatrixDistribution::uniform_over_code(&mrd)?;
    let singles = randomcoding::joint_law_check(&d_mrd, &VectorSet::nonzero(&f, 2, VectorProperty::AnyKIndependent(1))?, Mode::Linear)?;
    let triples = randomcoding::joint_law_check(&d22, &VectorSet::all(&f, 2, VectorProperty::Cap(2))?, Mode::Affine)?;
    let pairs_affine = randomcoding::joint_law_check(&d_mrd, &VectorSet::all(&f, 2, VectorProperty::Cap(1))?, Mode::Affine)?;
    let mut out = vec![
        Check::holds("pairwise law 2^{-2n}", pairs.holds && pairs.expected == "1/16"),
        Check::holds("1-good singleton law 2^{-n}", singles.holds && singles.expected == "1/4"),
        Check::holds("triple law 2^{-3n}", triples.holds && triples.expected == "1/64"),
        Check::holds("affine pair law from a 1-good code", pairs_affine.holds && pairs_affine.expected == "1/16"),
    ];
    let d23 = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP)?;
    for k in [1, 2] {
        let r = randomcoding::intersecting_failure(&d23, k, 0, 0)?;
        out.push(Check::holds(format!("exact failure <= bound, k = {k}"), r.exact.is_some() && r.within_bound));
    }
    out.push(Check::eq("bound at (2,3,2,k=2)", "81/32", randomcoding::intersecting_failure_bound(2, 3, 2, 2)));
    if scope == Scope::All {
        let exact = randomcoding::intersecting_failure_exact(&d23, 2)?;
        let p = distributions::weight_to_f64(&exact);
        let trials = 20_000;
        let (hits, _) = randomcoding::intersecting_failure_estimate(&d23, 2, trials, 1)?;
        let hat = randomcoding::frequency(hits, trials);
        let tol = 4.0 * (hat * (1.0 - hat) / trials as f64).sqrt();
        out.push(Check::holds(format!("Monte Carlo {hat:.4} within 4 sigma of exact {exact}"), (hat - p).abs() <= tol));
    }
    Ok(out)
}

fn fset_trials(_: Scope) -> Result<Vec<Check>> {
    let f = gf2();
    let families: Vec<(&str, PatternFamily, usize)> = vec![
        ("singletons of F_2^2", PatternFamily::singletons(&f, 2)?, 6),
        ("separating (2,1)", randomcoding::separating_2_1(), 8),
    ];
    let mut out = Vec::new();
    for (name, fam, n) in families {
        let mut ok = true;
        let mut kept = 0;
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(trial);
            let c = randomcoding::random_vectors(&f, n, 8, &mut rng);
            let e = randomcoding::f_set_extract(&c, &fam, DEFAULT_CAP)?;
            let kept_vecs: Vec<randomcoding::Vector> = e.kept_indices.iter().map(|&i| c[i].clone()).collect();
            ok &= randomcoding::is_f_set(&kept_vecs, &fam, DEFAULT_CAP)?;
            kept += kept_vecs.len();
        }
        out.push(Check::holds(format!("{name}: 100 extractions verified"), ok));
        out.push(Check::holds(format!("{name}: some vectors survive"), kept > 0));
    }
    Ok(out)
}
