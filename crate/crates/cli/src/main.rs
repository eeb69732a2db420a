use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypercover_core::catalog::{catalog, pattern_count_bound};
use hypercover_core::constructions::{
    cover_full_cube, cover_minus_four, cover_minus_one, cover_minus_three, cover_minus_two, cover_small,
    greedy_total_dominating_set, hamming_sphere_cover, layer_cover, reduce_fixed_k, total_domination_bound,
};
use hypercover_core::experiments::{af_missing_property_test, g_axis_aligned, random_hitting_experiment, wagner_check};
use hypercover_core::io::{certificate_json, parse_cover, solve_json, FORMAT_VERSION};
use hypercover_core::solver::{
    af_lower_bound, ec_n_k, find_cover_within_budget, min_exact_cover, verify_exact_cover, verify_layer_cover,
    SolveResult, BUDGETED_CAP, CERTIFIED_CAP, DEFAULT_NODE_LIMIT,
};
use hypercover_core::{CoverCertificate, Dim, Error, Point, PointSet};

#[derive(Parser)]
#[command(name = "hypercover", version, about = "Exact hyperplane covers of the Boolean hypercube")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    n: usize,
    /// Avoided points as bit strings, comma separated, or `@file`.
    #[arg(long, value_delimiter = ',')]
    avoid: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum exact cover (certified for n <= 5, budgeted up to n = 10).
    Solve {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Build an explicit cover.
    Construct {
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        inst: Instance,
        /// Layer index (for `layer`; defaults to the weight of `--b`).
        #[arg(long)]
        i: Option<usize>,
        /// Removed layer point (for `layer`).
        #[arg(long)]
        b: Option<String>,
    },
    /// Check a cover file against an avoided set.
    Verify {
        #[command(flatten)]
        inst: Instance,
        /// JSON file with hyperplanes (`-` for stdin).
        #[arg(long)]
        cover: String,
        /// Check only the vertices of this weight.
        #[arg(long)]
        layer: Option<u32>,
    },
    /// Enumerate or count the intersection patterns of `{0,1}^n`.
    Patterns {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Also write the catalog file to this path.
        #[arg(long)]
        write: Option<String>,
    },
    /// Run an experiment.
    #[command(subcommand)]
    Experiment(Experiment),
    /// ec(n, k) with a per-orbit breakdown (n <= 4).
    Eck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Full,
    Minus1,
    Minus2,
    Minus3,
    Minus4,
    Layer,
    Fixedk,
    Hamming,
}

#[derive(Subcommand)]
enum Experiment {
    /// Random sets hitting every pattern of at least `threshold` points.
    Hitting {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        threshold: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Missing-vertex counts of random non-covering pattern families.
    Afmiss {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// g(n, d) for axis-aligned subcubes.
    Gsubcube {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// The 8-point set in {0,1}^4 and its lift to n = 6.
    Wagner {
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::BudgetExhausted { .. } => (1, "budget"),
            Error::Construction(_) => (1, "construction"),
            Error::Io(_) => (1, "io"),
            _ => (2, "usage"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "usage", message: message.into() }
}

/// Output plus the exit code it implies.
struct Output {
    lines: Vec<Value>,
    ok: bool,
}

impl Output {
    fn one(v: Value) -> Self {
        Output { lines: vec![v], ok: true }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::from(Error::from(e)))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
    }
}

fn parse_avoid(dim: Dim, items: &[String]) -> Result<PointSet, Failure> {
    let mut points: Vec<String> = Vec::new();
    for item in items {
        if let Some(path) = item.strip_prefix('@') {
            let text = read_source(path)?;
            points.extend(text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from));
        } else if !item.trim().is_empty() {
            points.push(item.trim().to_string());
        }
    }
    Ok(hypercover_core::io::parse_points(Some(dim), &points)?)
}

fn instance(inst: &Instance) -> Result<(Dim, PointSet), Failure> {
    let dim = Dim::new(inst.n)?;
    Ok((dim, parse_avoid(dim, &inst.avoid)?))
}

fn solve(inst: &Instance, node_limit: u64) -> Result<Output, Failure> {
    let (dim, s) = instance(inst)?;
    let n = dim.n();
    if n <= CERTIFIED_CAP {
        return Ok(Output::one(solve_json(&min_exact_cover(&s)?)));
    }
    if n > BUDGETED_CAP {
        return Err(Error::DimAboveCap { op: "solve", cap: BUDGETED_CAP, n }.into());
    }
    let lower = if s.is_empty() { 2 } else { af_lower_bound(&s)? };
    let b = s.complement();
    if b.is_empty() {
        return Ok(Output::one(solve_json(&find_cover_within_budget(&s, 0, node_limit)?)));
    }
    // Start from an explicit cover, then search for smaller ones.
    let start = if s.is_empty() {
        cover_full_cube(dim)?
    } else if s.len() <= 4 {
        cover_small(&s)?
    } else {
        hamming_sphere_cover(&b)?
    };
    let mut best = SolveResult {
        size: start.size(),
        certificate: start,
        optimal: false,
        lower_bound_used: lower,
        nodes: 0,
    };
    let mut spent = 0u64;
    while best.size > lower && spent < node_limit {
        match find_cover_within_budget(&s, best.size - 1, node_limit - spent) {
            Ok(r) => {
                spent += r.nodes;
                best = SolveResult { nodes: spent, lower_bound_used: lower, ..r };
            }
            Err(Error::BudgetExhausted { nodes, .. }) => {
                spent += nodes;
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    best.nodes = spent;
    Ok(Output::one(solve_json(&best)))
}

fn construct(method: Method, inst: &Instance, i: Option<usize>, b: Option<&str>) -> Result<Output, Failure> {
    let (dim, s) = instance(inst)?;
    let cert: CoverCertificate = match method {
        Method::Full => cover_full_cube(dim)?,
        Method::Minus1 => cover_minus_one(&s)?,
        Method::Minus2 => cover_minus_two(&s)?,
        Method::Minus3 => cover_minus_three(&s)?,
        Method::Minus4 => cover_minus_four(&s)?,
        Method::Fixedk => reduce_fixed_k(&s)?,
        Method::Hamming => {
            let cert = hamming_sphere_cover(&s.complement())?;
            let dset = greedy_total_dominating_set(dim).len();
            let mut v = certificate_json(&cert);
            v["dominating_set_size"] = json!(dset);
            v["domination_bound"] = json!(total_domination_bound(dim));
            return Ok(Output { lines: vec![v], ok: cert.verified });
        }
        Method::Layer => {
            let b = b.ok_or_else(|| usage("--method layer needs --b"))?;
            let p = Point::parse_in(dim, b)?;
            if let Some(i) = i {
                if i != p.weight() as usize {
                    return Err(usage(format!("--b {b} has weight {}, not {i}", p.weight())));
                }
            }
            layer_cover(dim, p)?
        }
    };
    Ok(Output { ok: cert.verified, lines: vec![certificate_json(&cert)] })
}

fn verify(inst: &Instance, cover: &str, layer: Option<u32>) -> Result<Output, Failure> {
    let (dim, s) = instance(inst)?;
    let hs = parse_cover(dim, &read_source(cover)?)?;
    let cert = match layer {
        Some(i) => verify_layer_cover(&hs, &s, i)?,
        None => verify_exact_cover(&hs, &s)?,
    };
    let mut v = certificate_json(&cert);
    v["covered_avoided"] = json!(cert.report.covered_avoided.iter().map(|p| p.to_bits(dim)).collect::<Vec<_>>());
    v["uncovered"] = json!(cert.report.uncovered.iter().map(|p| p.to_bits(dim)).collect::<Vec<_>>());
    Ok(Output { ok: cert.verified, lines: vec![v] })
}

fn patterns(n: usize, count_only: bool, write: Option<&str>) -> Result<Output, Failure> {
    let dim = Dim::new(n)?;
    let cat = catalog(dim)?;
    if let Some(path) = write {
        let f = fs::File::create(path).map_err(|e| Failure::from(Error::from(e)))?;
        cat.write_to(io::BufWriter::new(f))?;
    }
    let mut v = json!({
        "v": FORMAT_VERSION,
        "n": n,
        "count": cat.count(),
        "bound": pattern_count_bound(dim).to_string(),
        "max_size": cat.max_size(),
    });
    if !count_only {
        v["patterns"] = json!(cat.patterns().map(|p| p.points().to_hex()).collect::<Vec<_>>());
    }
    Ok(Output::one(v))
}

fn experiment(e: &Experiment) -> Result<Output, Failure> {
    Ok(match *e {
        Experiment::Hitting { n, threshold, trials, seed } => {
            let r = random_hitting_experiment(Dim::new(n)?, threshold, trials, seed)?;
            Output { lines: r.to_json_lines(), ok: true }
        }
        Experiment::Afmiss { n, m, samples, seed } => {
            let r = af_missing_property_test(Dim::new(n)?, m, samples, seed)?;
            Output { ok: r.passed(), lines: vec![r.to_json()] }
        }
        Experiment::Gsubcube { n, d } => Output::one(g_axis_aligned(Dim::new(n)?, d)?.to_json()),
        Experiment::Wagner { node_limit } => Output::one(wagner_check(node_limit)?.to_json()),
    })
}

fn eck(n: usize, k: usize) -> Result<Output, Failure> {
    let dim = Dim::new(n)?;
    let r = ec_n_k(dim, k)?;
    Ok(Output::one(json!({
        "v": FORMAT_VERSION,
        "n": r.n,
        "k": r.k,
        "ec": r.value,
        "orbits": r.orbits.iter().map(|o| json!({
            "representative": o.representative.to_strings(),
            "orbit_size": o.orbit_size,
            "ec": o.ec,
        })).collect::<Vec<_>>(),
    })))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Solve { inst, node_limit } => solve(inst, *node_limit),
        Command::Construct { method, inst, i, b } => construct(*method, inst, *i, b.as_deref()),
        Command::Verify { inst, cover, layer } => verify(inst, cover, *layer),
        Command::Patterns { n, count_only, write } => patterns(*n, *count_only, write.as_deref()),
        Command::Experiment(e) => experiment(e),
        Command::Eck { n, k } => eck(*n, *k),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            a.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

/// Plain-text view: scalar fields as `key: value`, hyperplanes one per line.
fn table(v: &Value, out: &mut impl Write) -> io::Result<()> {
    let Value::Object(map) = v else { return writeln!(out, "{v}") };
    for (k, val) in map {
        if k == "hyperplanes" {
            continue;
        }
        writeln!(out, "{k}: {}", scalar(val))?;
    }
    if let Some(Value::Array(hs)) = map.get("hyperplanes") {
        for h in hs {
            let coeffs = h["coeffs"].as_array().map(|c| c.iter().map(scalar).collect::<Vec<_>>().join(" "));
            writeln!(out, "  [{}] = {}", coeffs.unwrap_or_default(), scalar(&h["offset"]))?;
        }
    }
    writeln!(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = json!({"v": FORMAT_VERSION, "error": {"kind": "usage", "message": e.to_string().trim_end()}});
            eprintln!("{err}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("{}", json!({"v": FORMAT_VERSION, "error": {"kind": "usage", "message": e.to_string()}}));
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            for line in &out.lines {
                let r = match cli.format {
                    Format::Json => writeln!(lock, "{line}"),
                    Format::Table => table(line, &mut lock),
                };
                if r.is_err() {
                    return ExitCode::from(1);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("{}", json!({"v": FORMAT_VERSION, "error": {"kind": f.kind, "message": f.message}}));
            ExitCode::from(f.code)
        }
    }
}
