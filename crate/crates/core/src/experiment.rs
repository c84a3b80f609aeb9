//! Reproducible experiment cells, CSV records and log-log scaling fits.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::certify_lower_bound;
use crate::clique::{pack_k6, k6_packing_cover, two_edge_cover, PackMode};
use crate::covers::{check_coverage, convex_matching_decomposition, Cover, PieceKind};
use crate::error::{Error, Result};
use crate::pointgen::{gen_bipartite, gen_convex, gen_dense, gen_tripartite, gen_uniform, PointSet, DEFAULT_LAMBDA};
use crate::sweep::{dense_cover, sweep_cover, tight_alpha, SweepConfig};
use crate::zigzag::zigzag_ham_cover;

pub const SCHEMA_VERSION: u32 = 1;

/// Worker count for parallel experiment cells.
pub const WORKERS_ENV: &str = "MONOCOVER_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Phase1,
    Phase12,
    Dense,
    K6,
    Zigzagham,
    Twoedge,
    Convex,
}

impl Algo {
    pub const ALL: [Algo; 7] = [
        Algo::Phase1,
        Algo::Phase12,
        Algo::Dense,
        Algo::K6,
        Algo::Zigzagham,
        Algo::Twoedge,
        Algo::Convex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Phase1 => "phase1",
            Algo::Phase12 => "phase12",
            Algo::Dense => "dense",
            Algo::K6 => "k6",
            Algo::Zigzagham => "zigzagham",
            Algo::Twoedge => "twoedge",
            Algo::Convex => "convex",
        }
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Uniform,
    Dense,
    Convex,
    Tripartite,
    Bipartite,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Uniform => "uniform",
            Generator::Dense => "dense",
            Generator::Convex => "convex",
            Generator::Tripartite => "tripartite",
            Generator::Bipartite => "bipartite",
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            Generator::Uniform,
            Generator::Dense,
            Generator::Convex,
            Generator::Tripartite,
            Generator::Bipartite,
        ]
        .into_iter()
        .find(|g| g.name() == s)
        .ok_or_else(|| format!("unknown generator {s:?}"))
    }
}

/// Generator plus its parameters. For the clustered generators `n` is the
/// group size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub generator: Generator,
    pub alpha: f64,
    pub lambda: f64,
}

impl GenSpec {
    pub fn new(generator: Generator) -> Self {
        GenSpec {
            generator,
            alpha: 2.0,
            lambda: DEFAULT_LAMBDA,
        }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<PointSet> {
        Ok(match self.generator {
            Generator::Uniform => gen_uniform(n, seed)?,
            Generator::Dense => gen_dense(n, self.alpha, seed)?,
            Generator::Convex => gen_convex(n, seed)?,
            Generator::Tripartite => gen_tripartite(n, seed, self.lambda)?.0,
            Generator::Bipartite => gen_bipartite(n, seed, self.lambda)?.0,
        })
    }

    fn params(&self) -> String {
        match self.generator {
            Generator::Dense => format!("alpha={}", self.alpha),
            Generator::Tripartite | Generator::Bipartite => format!("lambda={}", self.lambda),
            _ => String::new(),
        }
    }
}

/// Algorithm knobs shared by every cell of an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgoConfig {
    pub c: f64,
    /// Markov slack applied to the residual bound when reporting.
    pub t: f64,
    /// Density parameter for the dense cover; `None` uses the tightest
    /// value the set satisfies.
    pub alpha: Option<f64>,
    pub pack: PackMode,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        AlgoConfig {
            c: 1.0,
            t: 2.0,
            alpha: None,
            pack: PackMode::Greedy,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub residual: Option<usize>,
    pub directions: Option<usize>,
}

/// Runs one algorithm on a point set.
pub fn run_algo(ps: &PointSet, algo: Algo, cfg: &AlgoConfig, seed: u64) -> Result<(Cover, RunStats)> {
    let sweep = |phase2| {
        let sc = SweepConfig {
            c: cfg.c,
            phase2,
            ..Default::default()
        };
        sweep_cover(ps, &sc).map(|(cover, st)| {
            (
                cover,
                RunStats {
                    residual: Some(st.residual_edges),
                    directions: Some(st.directions),
                },
            )
        })
    };
    match algo {
        Algo::Phase1 => sweep(false),
        Algo::Phase12 => sweep(true),
        Algo::Dense => {
            let alpha = cfg.alpha.unwrap_or_else(|| tight_alpha(ps));
            let (cover, st) = dense_cover(ps, alpha, cfg.c)?;
            Ok((
                cover,
                RunStats {
                    residual: None,
                    directions: Some(st.directions),
                },
            ))
        }
        Algo::K6 => {
            let plan = pack_k6(ps.len(), cfg.pack, seed)?;
            Ok((k6_packing_cover(ps, &plan)?, RunStats::default()))
        }
        Algo::Zigzagham => Ok((zigzag_ham_cover(ps)?, RunStats::default())),
        Algo::Twoedge => Ok((two_edge_cover(ps)?, RunStats::default())),
        Algo::Convex => Ok((convex_matching_decomposition(ps)?, RunStats::default())),
    }
}

/// One CSV row. Everything except `wall_ms` is a function of the inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub generator: String,
    pub params: String,
    pub algorithm: String,
    pub c: f64,
    pub t: f64,
    pub n: usize,
    pub seed: u64,
    pub pieces: usize,
    pub monotone_paths: usize,
    pub monotone_matchings: usize,
    pub noncrossing_paths: usize,
    pub plane_matchings: usize,
    pub zigzag_paths: usize,
    pub residual: Option<usize>,
    pub max_e0: Option<usize>,
    pub verified: bool,
    pub wall_ms: Option<u64>,
}

/// One experiment cell: generate, cover, verify, and for the clustered
/// generators certify the inter-group maximum.
pub fn run_cell(spec: &GenSpec, algo: Algo, cfg: &AlgoConfig, n: usize, seed: u64, timing: bool) -> Result<ExperimentRecord> {
    let ps = spec.generate(n, seed)?;
    let start = Instant::now();
    let (cover, stats) = run_algo(&ps, algo, cfg, seed)?;
    let wall = start.elapsed();
    let report = check_coverage(&ps, &cover);
    let max_e0 = match (&ps.groups, spec.generator) {
        (Some(labels), Generator::Tripartite | Generator::Bipartite) => Some(certify_lower_bound(&ps, labels)?.max_e0),
        _ => None,
    };
    Ok(ExperimentRecord {
        schema_version: SCHEMA_VERSION,
        generator: spec.generator.name().into(),
        params: spec.params(),
        algorithm: algo.name().into(),
        c: cfg.c,
        t: cfg.t,
        n: ps.len(),
        seed,
        pieces: cover.len(),
        monotone_paths: cover.count_kind(PieceKind::MonotonePath),
        monotone_matchings: cover.count_kind(PieceKind::MonotoneMatching),
        noncrossing_paths: cover.count_kind(PieceKind::NoncrossingPath),
        plane_matchings: cover.count_kind(PieceKind::PlaneMatching),
        zigzag_paths: cover.count_kind(PieceKind::ZigzagPath),
        residual: stats.residual,
        max_e0,
        verified: report.pass,
        wall_ms: timing.then_some(wall.as_millis() as u64),
    })
}

/// Worker count from the environment, defaulting to the available cores.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

/// Runs every `(n, seed)` cell in parallel; records come back in input
/// order regardless of scheduling.
pub fn run_grid(
    spec: &GenSpec,
    algo: Algo,
    cfg: &AlgoConfig,
    ns: &[usize],
    seeds: &[u64],
    timing: bool,
    workers: usize,
) -> Result<Vec<ExperimentRecord>> {
    let cells: Vec<(usize, u64)> = ns.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(n, s)| run_cell(spec, algo, cfg, n, s, timing))
            .collect()
    })
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Precondition(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn records_from_csv(s: &str) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(s.as_bytes());
    let records = r.deserialize().collect::<std::result::Result<Vec<ExperimentRecord>, _>>()?;
    if let Some(bad) = records.iter().find(|r| r.schema_version != SCHEMA_VERSION) {
        return Err(Error::Precondition(format!("unsupported schema version {}", bad.schema_version)));
    }
    Ok(records)
}

/// Least-squares slope of `log metric` against `log n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub stderr: f64,
    pub n_min: usize,
    pub n_max: usize,
    /// Distinct `n` values used.
    pub points: usize,
    /// Smallest `n` values left out of the fit.
    pub dropped: Vec<usize>,
}

pub const MIN_FIT_POINTS: usize = 4;

/// Fits the per-`n` means. The two smallest `n` are dropped when at least
/// four values remain afterwards.
pub fn scaling_fit(samples: &[(usize, f64)]) -> Result<ScalingFit> {
    let mut ns: Vec<usize> = samples.iter().map(|s| s.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < MIN_FIT_POINTS {
        return Err(Error::Precondition(format!(
            "scaling fit needs {MIN_FIT_POINTS} distinct n values, got {}",
            ns.len()
        )));
    }
    let dropped: Vec<usize> = if ns.len() >= MIN_FIT_POINTS + 2 { ns.drain(..2).collect() } else { Vec::new() };
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let vals: Vec<f64> = samples.iter().filter(|s| s.0 == n).map(|s| s.1).collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            ((n as f64).ln(), mean.ln())
        })
        .collect();
    if pts.iter().any(|p| !p.1.is_finite()) {
        return Err(Error::Precondition("scaling fit needs positive metrics".into()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (sse / (k - 2.0) / sxx).sqrt();
    Ok(ScalingFit {
        exponent: slope,
        stderr,
        n_min: ns[0],
        n_max: *ns.last().expect("nonempty"),
        points: ns.len(),
        dropped,
    })
}
