use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use monocover::bounds::certify_lower_bound;
use monocover::clique::PackMode;
use monocover::experiment::{records_to_csv, run_algo, run_grid, scaling_fit, worker_count, Algo, AlgoConfig, GenSpec, Generator};
use monocover::oracle::{min_cover, OracleKind};
use monocover::render::{render_svg, RenderOptions};
use monocover::{check_coverage, Cover, Error, PointSet};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_SIZE_GUARD: u8 = 4;
const EXIT_INFEASIBLE: u8 = 5;
const EXIT_GEOMETRY: u8 = 6;
const EXIT_INTERNAL: u8 = 7;

#[derive(Parser)]
#[command(name = "monocover", version, about = "Cover complete geometric graphs by monotone paths, plane matchings and zig-zag paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set as JSON.
    Gen(GenArgs),
    /// Cover K_n on a point set; writes Cover JSON, stats go to stderr.
    Cover(CoverArgs),
    /// Check a cover; exit status 0 iff it passes.
    Verify(VerifyArgs),
    /// Certify the inter-group maximum of a clustered instance.
    Bounds(BoundsArgs),
    /// Exact minimum cover for tiny sets.
    Oracle(OracleArgs),
    /// Run a grid of (n, seed) cells and fit a scaling exponent.
    Experiment(ExperimentArgs),
    /// Draw points, a cover, or a lower-bound witness as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Uniform,
    Dense,
    Convex,
    Tripartite,
    Bipartite,
}

impl From<GenKind> for Generator {
    fn from(g: GenKind) -> Self {
        match g {
            GenKind::Uniform => Generator::Uniform,
            GenKind::Dense => Generator::Dense,
            GenKind::Convex => Generator::Convex,
            GenKind::Tripartite => Generator::Tripartite,
            GenKind::Bipartite => Generator::Bipartite,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Phase1,
    Phase12,
    Dense,
    K6,
    Zigzagham,
    Twoedge,
    Convex,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Phase1 => Algo::Phase1,
            AlgoArg::Phase12 => Algo::Phase12,
            AlgoArg::Dense => Algo::Dense,
            AlgoArg::K6 => Algo::K6,
            AlgoArg::Zigzagham => Algo::Zigzagham,
            AlgoArg::Twoedge => Algo::Twoedge,
            AlgoArg::Convex => Algo::Convex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    MonotonePath,
    NoncrossingPath,
    PlaneMatching,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Pieces,
    Residual,
    Wall,
}

#[derive(Args)]
struct GenParams {
    #[arg(long, value_enum, default_value = "uniform")]
    generator: GenKind,
    /// Number of points; group size k for the clustered generators.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, default_value_t = 100.0)]
    lambda: f64,
}

impl GenParams {
    fn spec(&self) -> GenSpec {
        GenSpec {
            generator: self.generator.into(),
            alpha: self.alpha,
            lambda: self.lambda,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    params: GenParams,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Density parameter for the dense cover; defaults to the tightest value.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value = "greedy")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall time in the stats.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Point set with group labels; otherwise one is generated.
    #[arg(long, conflicts_with_all = ["k"])]
    points: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tripartite")]
    generator: GenKind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100.0)]
    lambda: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long, value_enum, default_value = "monotone-path")]
    kind: KindArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    generator: GenKind,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    /// `a..b` for powers of two from a to b, or a comma list.
    #[arg(long)]
    ns: String,
    /// Number of seeds, starting at `--seed`.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 2.0)]
    t: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(long, default_value_t = 100.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "greedy")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "pieces")]
    metric: Metric,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Overlay the certified lower-bound witness (needs group labels).
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    max_pieces: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Input(String),
    Usage(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_points(path: &Path) -> Result<PointSet, Failure> {
    PointSet::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_cover(path: &Path) -> Result<Cover, Failure> {
    Cover::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn pack_mode(m: ModeArg) -> PackMode {
    match m {
        ModeArg::Exact => PackMode::Exact,
        ModeArg::Greedy => PackMode::Greedy,
    }
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let ps = a.params.spec().generate(a.params.n, a.params.seed)?;
    emit(&a.out, &ps.to_json())
}

fn cmd_cover(a: CoverArgs) -> CmdResult {
    let ps = load_points(&a.points)?;
    let cfg = AlgoConfig {
        c: a.c,
        alpha: a.alpha,
        pack: pack_mode(a.mode),
        ..Default::default()
    };
    let start = Instant::now();
    let (cover, stats) = run_algo(&ps, a.algo.into(), &cfg, a.seed)?;
    let mut summary = json!({
        "algorithm": Algo::from(a.algo).name(),
        "n": ps.len(),
        "pieces": cover.len(),
        "residual": stats.residual,
        "directions": stats.directions,
    });
    if a.timing {
        summary["wall_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    eprintln!("{summary}");
    emit(&a.out, &cover.to_json())
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let ps = load_points(&a.points)?;
    let cover = load_cover(&a.cover)?;
    let report = check_coverage(&ps, &cover);
    emit(&a.out, &report.to_json())?;
    if report.pass {
        return Ok(());
    }
    for e in report.uncovered.iter().take(20) {
        eprintln!("uncovered edge ({}, {})", e.u, e.v);
    }
    for f in report.failures.iter().take(20) {
        eprintln!("piece {} failed: {}", f.index, f.reason);
    }
    if !report.hash_matches {
        eprintln!("cover was built for a different point set");
    }
    Err(Failure::Verify)
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    let ps = match (&a.points, a.k) {
        (Some(p), _) => load_points(p)?,
        (None, Some(k)) => {
            let spec = GenSpec {
                generator: a.generator.into(),
                alpha: 2.0,
                lambda: a.lambda,
            };
            spec.generate(k, a.seed)?
        }
        (None, None) => return Err(Failure::Usage("bounds needs --points or --k".into())),
    };
    let labels = ps
        .groups
        .clone()
        .ok_or_else(|| Failure::Input("point set has no group labels".into()))?;
    let cert = certify_lower_bound(&ps, &labels)?;
    emit(&a.out, &serde_json::to_string_pretty(&cert).expect("serializable"))
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let ps = load_points(&a.points)?;
    let kind = match a.kind {
        KindArg::MonotonePath => OracleKind::MonotonePath,
        KindArg::NoncrossingPath => OracleKind::NoncrossingPath,
        KindArg::PlaneMatching => OracleKind::PlaneMatching,
    };
    emit(&a.out, &min_cover(&ps, kind)?.to_json())
}

fn parse_ns(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("cannot parse --ns {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi): (usize, usize) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        let mut ns = vec![];
        let mut n = lo;
        while n <= hi {
            ns.push(n);
            n *= 2;
        }
        Ok(ns)
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    }
}

fn cmd_experiment(a: ExperimentArgs) -> CmdResult {
    let ns = parse_ns(&a.ns)?;
    let seeds: Vec<u64> = (a.seed..a.seed + a.seeds).collect();
    let spec = GenSpec {
        generator: a.generator.into(),
        alpha: a.alpha,
        lambda: a.lambda,
    };
    let cfg = AlgoConfig {
        c: a.c,
        t: a.t,
        alpha: None,
        pack: pack_mode(a.mode),
    };
    let timing = a.timing || matches!(a.metric, Metric::Wall);
    let records = run_grid(&spec, a.algo.into(), &cfg, &ns, &seeds, timing, worker_count())?;
    if let Some(r) = records.iter().find(|r| !r.verified) {
        eprintln!("cover for n={} seed={} failed verification", r.n, r.seed);
        return Err(Failure::Verify);
    }
    let samples: Vec<(usize, f64)> = records
        .iter()
        .filter_map(|r| {
            let v = match a.metric {
                Metric::Pieces => Some(r.pieces as f64),
                Metric::Residual => r.residual.map(|x| x as f64),
                Metric::Wall => r.wall_ms.map(|x| x.max(1) as f64),
            };
            v.map(|v| (r.n, v))
        })
        .collect();
    let fit = scaling_fit(&samples).ok();
    match a.format {
        Format::Json => emit(
            &a.out,
            &serde_json::to_string_pretty(&json!({ "records": records, "fit": fit })).expect("serializable"),
        ),
        Format::Csv => {
            match &fit {
                Some(f) => eprintln!("{}", serde_json::to_string(f).expect("serializable")),
                None => eprintln!("no scaling fit: fewer than four n values"),
            }
            emit(&a.out, &records_to_csv(&records)?)
        }
        Format::Svg => Err(Failure::Usage("experiment output is csv or json".into())),
    }
}

fn cmd_render(a: RenderArgs) -> CmdResult {
    let ps = load_points(&a.points)?;
    let cover = a.cover.as_deref().map(load_cover).transpose()?;
    let cert = if a.witness {
        let labels = ps
            .groups
            .clone()
            .ok_or_else(|| Failure::Input("--witness needs group labels".into()))?;
        Some(certify_lower_bound(&ps, &labels)?)
    } else {
        None
    };
    let opts = RenderOptions {
        cover: cover.as_ref(),
        highlight: cert.as_ref().map(|c| c.witness.as_slice()),
        direction: cert.as_ref().map(|c| c.witness_direction),
        max_pieces: a.max_pieces,
    };
    emit(&a.out, &render_svg(&ps, &opts))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Json(_) | Error::Csv(_) | Error::InvalidId { .. } | Error::InvalidPiece(_) => EXIT_INPUT,
        Error::SizeGuard { .. } => EXIT_SIZE_GUARD,
        Error::InfeasibleAlpha { .. }
        | Error::NotDense { .. }
        | Error::DenseBudget { .. }
        | Error::PackingInfeasible { .. }
        | Error::FanTooCoarse { .. }
        | Error::Precondition(_)
        | Error::NotConvex(_) => EXIT_INFEASIBLE,
        Error::NotGeneralPosition(..) | Error::CoordinateRange { .. } | Error::RepairFailed { .. } | Error::Tie(_) => EXIT_GEOMETRY,
        Error::NoDecomposition(_) | Error::Construction(_) => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Cover(a) => cmd_cover(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
