use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use mrdlab::battery::{self, Scope};
use mrdlab::codes::{gabidulin, MatrixCode};
use mrdlab::counting;
use mrdlab::distributions::{self, MatrixDistribution};
use mrdlab::error::Error;
use mrdlab::geometry::{self, PointSet};
use mrdlab::gf::{field_of_order, FieldSpec};
use mrdlab::homweight::HomogeneousWeight;
use mrdlab::matrix::{parse_matrices, Mat};
use mrdlab::oracle;
use mrdlab::randomcoding::{self, Mode, PatternFamily, Vector, VectorProperty, VectorSet};
use mrdlab::search::{self, SearchConfig, Status, Target};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{self, count, print};
use crate::{CodeCmd, Command, CountCmd, DistCmd, DistSource, FamilyArg, GeomCmd, Global, HomweightCmd, ModeArg, RcCmd, SearchCmd};

pub enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn report(&self) {
        match self {
            CliError::Lib(e) => {
                let debug = format!("{e:?}");
                let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error");
                output::error(kind, &e.to_string());
            }
            CliError::Io(path, e) => output::error("Io", &format!("{}: {e}", path.display())),
            CliError::Usage(msg) => output::error("Usage", msg),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn field(g: &Global) -> Result<FieldSpec> {
    Ok(field_of_order(g.q, g.poly.as_deref())?)
}

fn mat_rows(a: &Mat) -> Value {
    (0..a.rows()).map(|i| a.row(i).iter().map(|e| e.index()).collect::<Vec<_>>()).collect()
}

fn load_distribution(g: &Global, src: &DistSource) -> Result<MatrixDistribution> {
    let given = [src.input.is_some(), src.uniform.is_some(), src.full].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(CliError::Usage("give exactly one of --in, --uniform, --full".into()));
    }
    if let Some(p) = &src.input {
        return Ok(MatrixDistribution::from_text(&read(p)?)?);
    }
    if let Some(p) = &src.uniform {
        let file = parse_matrices(&read(p)?)?;
        return Ok(MatrixDistribution::uniform_over(&file.field, file.rows, file.cols, &file.matrices)?);
    }
    match (src.m, src.n) {
        (Some(m), Some(n)) => Ok(MatrixDistribution::uniform_full(&field(g)?, m, n, g.cap)?),
        _ => Err(CliError::Usage("--full needs --m and --n".into())),
    }
}

pub fn run(g: &Global, cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Count(c) => count_cmd(g, c),
        Command::Code(c) => code_cmd(g, c),
        Command::Dist(c) => dist_cmd(g, c),
        Command::Homweight(c) => homweight_cmd(g, c),
        Command::Geom(c) => geom_cmd(g, c),
        Command::Search(c) => search_cmd(g, c),
        Command::Rc(c) => rc_cmd(g, c),
        Command::Verify { fast, scope, json } => {
            let scope = if fast { Scope::Fast } else { scope.unwrap_or(Scope::All) };
            let report = battery::run_battery(scope);
            if json {
                print(&report);
            } else {
                print!("{}", report.table());
            }
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn count_cmd(g: &Global, cmd: CountCmd) -> Result<ExitCode> {
    let q = g.q;
    // The brute-force oracles work over prime fields only.
    let prime = mrdlab::gf::prime_power(q).is_some_and(|(_, e)| e == 1);
    let brute = |f: &dyn Fn(u32) -> mrdlab::error::Result<u64>| if prime { f(q).ok() } else { None };
    let (formula, brute_force) = match cmd {
        CountCmd::Gaussian { n, m } => {
            let b = if n >= 0 && m >= 0 && m <= n { brute(&|p| oracle::count_subspaces(n as u32, m as u32, p)) } else { Some(0) };
            (counting::gaussian_binomial(n, m, q), b)
        }
        CountCmd::Intersecting { k, l, m, n } => (
            counting::anzahl_intersecting_subspaces(k, l, m, n, q)?,
            brute(&|p| oracle::count_intersecting_subspaces(k as u32, l as u32, m as u32, n as u32, p)),
        ),
        CountCmd::Products { k, l, m, n } => (
            counting::anzahl_rank_k_products(k, l, m, n, q)?,
            brute(&|p| oracle::count_rank_k_products(k as u32, l as u32, m as u32, n as u32, p)),
        ),
        CountCmd::Orbits { m, n } => (counting::mrd_orbit_count(m, n, q)?, None),
    };
    let formula = formula.to_string();
    let matches = brute_force.is_some_and(|b| b.to_string() == formula);
    print(&json!({ "formula": count(&formula), "brute_force": brute_force, "match": matches }));
    Ok(ExitCode::SUCCESS)
}

fn code_cmd(g: &Global, cmd: CodeCmd) -> Result<ExitCode> {
    match cmd {
        CodeCmd::Gabidulin { m, n, k, out } => {
            // Gabidulin codes are built tall; wide shapes are transposes.
            let code = if m >= n { gabidulin(m, n, k, &field(g)?, g.cap)? } else { gabidulin(n, m, k, &field(g)?, g.cap)?.transpose() };
            if let Some(p) = out {
                write(&p, &code.to_text())?;
            }
            print(&code.sidecar(k)?);
        }
        CodeCmd::Check { k, input } => {
            let file = parse_matrices(&read(&input)?)?;
            let code = MatrixCode::new(&file.field, file.rows, file.cols, file.matrices)?;
            print(&code.sidecar(k)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dist_cmd(g: &Global, cmd: DistCmd) -> Result<ExitCode> {
    match cmd {
        DistCmd::Check { k, source } => {
            let d = load_distribution(g, &source)?;
            let r = distributions::is_k_good(&d, k, g.cap)?;
            match r.witness {
                None => print(&json!({ "k_good": true })),
                Some(w) => print(&json!({
                    "k_good": false,
                    "witness": { "m": mat_rows(&w.m), "k": mat_rows(&w.k), "probability": w.probability.to_string() },
                })),
            }
        }
        DistCmd::Classify { k, source } => {
            let d = load_distribution(g, &source)?;
            print(&distributions::classify_min_support(&d, k)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn homweight_cmd(g: &Global, cmd: HomweightCmd) -> Result<ExitCode> {
    let HomweightCmd::Table { m, n, side } = cmd;
    let w = HomogeneousWeight::new(side, m, n, &field(g)?)?;
    println!("rank\tweight");
    for r in 0..=m.min(n) {
        println!("{r}\t{}", w.normalized(r));
    }
    Ok(ExitCode::SUCCESS)
}

fn geom_cmd(g: &Global, cmd: GeomCmd) -> Result<ExitCode> {
    match cmd {
        GeomCmd::Stats { m, n } => {
            let s = geometry::stats(m, n, &field(g)?);
            let flats_of = |r: usize| s.flats.get(r).map(|f| count(&f.flats));
            print(&json!({
                "m": m,
                "n": n,
                "q": s.q,
                "points": count(&s.points.to_string()),
                "lines": flats_of(1),
                "planes": flats_of(2),
                "flats": s.flats,
            }));
        }
        GeomCmd::CheckDense { k, input } => {
            let s = PointSet::from_text(&read(&input)?)?;
            print(&geometry::is_k_dense(&s, k)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn search_cmd(g: &Global, cmd: SearchCmd) -> Result<ExitCode> {
    let SearchCmd::MinDense { m, n, k, decide, budget_nodes, no_symmetry, witness } = cmd;
    let mut cfg = SearchConfig::new(&field(g)?, m, n, k);
    cfg.target = decide.map_or(Target::Minimum, Target::Decide);
    cfg.node_budget = budget_nodes;
    cfg.symmetry = !no_symmetry;
    cfg.seed = Some(g.seed);
    let r = search::min_dense_size(&cfg)?;
    if let (Some(p), Some(w)) = (&witness, &r.witness) {
        write(p, &w.to_text())?;
    }
    print(&r);
    Ok(if r.status == Status::BudgetExhausted { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn parse_vectors(f: &FieldSpec, text: &str) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: Option<Vector> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().ok().and_then(|i| f.element(i)))
            .collect();
        out.push(v.ok_or(Error::Parse { line: no + 1, msg: format!("bad vector {line:?}") })?);
    }
    Ok(out)
}

fn rc_cmd(g: &Global, cmd: RcCmd) -> Result<ExitCode> {
    match cmd {
        RcCmd::JointCheck { k, mode, source } => {
            let d = load_distribution(g, &source)?;
            let f = d.field().clone();
            let (vectors, mode) = match mode {
                ModeArg::Linear => (VectorSet::nonzero(&f, d.m(), VectorProperty::AnyKIndependent(k))?, Mode::Linear),
                ModeArg::Affine => (VectorSet::all(&f, d.m(), VectorProperty::Cap(k))?, Mode::Affine),
            };
            print(&randomcoding::joint_law_check(&d, &vectors, mode)?);
        }
        RcCmd::Intersect { m, n, k, bound, estimate, trials } => {
            if bound {
                let b = randomcoding::intersecting_failure_bound(m, n, g.q, k);
                print(&json!({ "bound": b.to_string() }));
                return Ok(ExitCode::SUCCESS);
            }
            let d = MatrixDistribution::uniform_full(&field(g)?, m, n, g.cap)?;
            if estimate {
                let (hits, trials) = randomcoding::intersecting_failure_estimate(&d, k, trials, g.seed)?;
                let freq = num::BigRational::new(hits.into(), trials.max(1).into());
                print(&json!({ "hits": hits, "trials": trials, "frequency": freq.to_string() }));
            } else {
                print(&randomcoding::intersecting_failure(&d, k, trials, g.seed)?);
            }
        }
        RcCmd::FsetExtract { input, random, length, family, k } => {
            let f = field(g)?;
            let vectors = match (input, random, length) {
                (Some(p), _, _) => parse_vectors(&f, &read(&p)?)?,
                (None, Some(count), Some(len)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
                    randomcoding::random_vectors(&f, len, count, &mut rng)
                }
                _ => return Err(CliError::Usage("give --in or --random with --length".into())),
            };
            if vectors.is_empty() {
                return Err(CliError::Usage("no vectors given".into()));
            }
            let fam = match family {
                FamilyArg::Singletons => PatternFamily::singletons(&f, k)?,
                FamilyArg::Separating => randomcoding::separating_2_1(),
            };
            print(&randomcoding::f_set_extract(&vectors, &fam, g.cap)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
