//! Point-set families: uniform random, alpha-dense jittered grids, convex
//! position, and the clustered tripartite/bipartite lower-bound instances.
//!
//! All generators are deterministic functions of their parameters and seed
//! and return points in general position on the integer grid.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geom::{find_collinear_triple, orient, Point, COORD_LIMIT};

/// Above this size the O(n^2) collinearity scan is skipped and general
/// position rests on the size of the sampling grid.
pub const EXHAUSTIVE_GP_LIMIT: usize = 1024;

/// Default separation factor between successive cluster diameters.
pub const DEFAULT_LAMBDA: f64 = 100.0;

const MAX_REDRAWS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    A,
    B,
    C,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::A => "A",
            Group::B => "B",
            Group::C => "C",
        };
        f.write_str(s)
    }
}

/// Per-point group labels of a clustered instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupLabels(pub Vec<Group>);

impl GroupLabels {
    pub fn group(&self, id: usize) -> Group {
        self.0[id]
    }

    /// True iff `u` and `v` are in different groups, i.e. `uv` is in E_0.
    #[inline]
    pub fn inter(&self, u: usize, v: usize) -> bool {
        self.0[u] != self.0[v]
    }

    pub fn members(&self, g: Group) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == g).collect()
    }

    /// Number of inter-group edges.
    pub fn e0_count(&self) -> usize {
        let mut sizes: BTreeMap<Group, usize> = BTreeMap::new();
        for g in &self.0 {
            *sizes.entry(*g).or_default() += 1;
        }
        let total: usize = sizes.values().sum();
        let same: usize = sizes.values().map(|s| s * s.saturating_sub(1) / 2).sum();
        total * total.saturating_sub(1) / 2 - same
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: u64,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl Provenance {
    pub fn new(generator: &str, seed: u64) -> Self {
        Provenance {
            generator: generator.to_string(),
            seed,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// Points with ids `0..n`, plus where they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub provenance: Provenance,
    pub groups: Option<GroupLabels>,
}

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    n: usize,
    provenance: Provenance,
    points: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    groups: Option<GroupLabels>,
}

impl PointSet {
    /// Builds a set from raw coordinates, checking range and distinctness.
    pub fn from_coords(coords: &[(i64, i64)], provenance: Provenance) -> Result<Self> {
        let points: Vec<Point> = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Point::new(x, y, i))
            .collect();
        for p in &points {
            if !p.in_range() {
                return Err(Error::CoordinateRange { x: p.x, y: p.y });
            }
        }
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert((p.x, p.y)) {
                return Err(Error::NotGeneralPosition(p.id, p.id, p.id));
            }
        }
        Ok(PointSet {
            points,
            provenance,
            groups: None,
        })
    }

    /// Unlabelled set from coordinates; panics on invalid input. Handy in tests.
    pub fn from_xy(coords: &[(i64, i64)]) -> Self {
        PointSet::from_coords(coords, Provenance::new("manual", 0)).expect("valid coordinates")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, id: usize) -> &Point {
        &self.points[id]
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.points.len() {
            Ok(())
        } else {
            Err(Error::InvalidId {
                id,
                n: self.points.len(),
            })
        }
    }

    /// Exhaustive general-position check (O(n^2) expected).
    pub fn check_general_position(&self) -> Result<()> {
        match find_collinear_triple(&self.points) {
            Some((i, j, k)) => Err(Error::NotGeneralPosition(i, j, k)),
            None => Ok(()),
        }
    }

    /// The set restricted to `ids`, re-indexed `0..ids.len()`.
    pub fn subset(&self, ids: &[usize]) -> PointSet {
        let coords: Vec<(i64, i64)> = ids.iter().map(|&i| (self.points[i].x, self.points[i].y)).collect();
        PointSet::from_coords(&coords, Provenance::new("subset", self.provenance.seed))
            .expect("subset of a valid set")
    }

    /// Hex SHA-256 of the coordinate list, used to tie covers to point sets.
    pub fn hash(&self) -> String {
        let coords: Vec<[i64; 2]> = self.points.iter().map(|p| [p.x, p.y]).collect();
        let bytes = serde_json::to_vec(&coords).expect("serializable");
        let digest = Sha256::digest(&bytes);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        let j = PointSetJson {
            n: self.points.len(),
            provenance: self.provenance.clone(),
            points: self.points.iter().map(|p| [p.x, p.y]).collect(),
            groups: self.groups.clone(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PointSetJson = serde_json::from_str(s)?;
        if j.n != j.points.len() {
            return Err(Error::Precondition(format!(
                "declared n = {} but {} points listed",
                j.n,
                j.points.len()
            )));
        }
        let coords: Vec<(i64, i64)> = j.points.iter().map(|c| (c[0], c[1])).collect();
        let mut ps = PointSet::from_coords(&coords, j.provenance)?;
        if let Some(g) = &j.groups {
            if g.0.len() != j.n {
                return Err(Error::Precondition("group labels do not match n".into()));
            }
        }
        ps.groups = j.groups;
        Ok(ps)
    }

    /// Squared shortest and longest pairwise distances (O(n^2)).
    pub fn distance_extremes(&self) -> Option<(i128, i128)> {
        extremes(&self.points)
    }

    /// ratio(longest / shortest) / sqrt(n), the smallest alpha for which the
    /// set is alpha-dense. Zero for fewer than two points.
    pub fn density_alpha(&self) -> f64 {
        match self.distance_extremes() {
            Some((lo, hi)) => ((hi as f64) / (lo as f64)).sqrt() / (self.len() as f64).sqrt(),
            None => 0.0,
        }
    }

    /// Exact test of `longest / shortest <= alpha * sqrt(n)`.
    pub fn is_alpha_dense(&self, alpha: f64) -> bool {
        match self.distance_extremes() {
            None => true,
            Some((lo, hi)) => {
                let a = match BigRational::from_f64(alpha) {
                    Some(a) if alpha > 0.0 => a,
                    _ => return false,
                };
                let n = BigRational::from_integer(BigInt::from(self.len()));
                let lhs = BigRational::from_integer(BigInt::from(hi));
                let rhs = &a * &a * n * BigRational::from_integer(BigInt::from(lo));
                lhs <= rhs
            }
        }
    }

    /// Diameter (squared) of the points with the given ids.
    pub fn diameter2(&self, ids: &[usize]) -> i128 {
        let mut best = 0;
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                best = best.max(self.points[i].dist2(&self.points[j]));
            }
        }
        best
    }
}

fn extremes(points: &[Point]) -> Option<(i128, i128)> {
    if points.len() < 2 {
        return None;
    }
    let mut lo = i128::MAX;
    let mut hi = 0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = p.dist2(q);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    Some((lo, hi))
}

/// Re-draws points until distinct and (for small n) in general position.
/// `draw(rng, i)` produces a fresh candidate for slot `i`.
fn repair<F>(coords: &mut [(i64, i64)], rng: &mut ChaCha8Rng, mut draw: F) -> Result<()>
where
    F: FnMut(&mut ChaCha8Rng, usize) -> (i64, i64),
{
    for _ in 0..MAX_REDRAWS {
        let mut seen = HashSet::with_capacity(coords.len());
        let mut dup = None;
        for (i, c) in coords.iter().enumerate() {
            if !seen.insert(*c) {
                dup = Some(i);
                break;
            }
        }
        if let Some(i) = dup {
            coords[i] = draw(rng, i);
            continue;
        }
        if coords.len() > EXHAUSTIVE_GP_LIMIT {
            return Ok(());
        }
        let pts: Vec<Point> = coords.iter().enumerate().map(|(i, &(x, y))| Point::new(x, y, i)).collect();
        match find_collinear_triple(&pts) {
            None => return Ok(()),
            Some((_, _, k)) => coords[k] = draw(rng, k),
        }
    }
    Err(Error::RepairFailed {
        attempts: MAX_REDRAWS,
    })
}

/// `n` i.i.d. uniform points on the grid `{0..2^30}^2`.
pub fn gen_uniform(n: usize, seed: u64) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::Precondition("gen_uniform needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng, _: usize| (rng.gen_range(0..=COORD_LIMIT), rng.gen_range(0..=COORD_LIMIT));
    let mut coords: Vec<(i64, i64)> = (0..n).map(|i| draw(&mut rng, i)).collect();
    repair(&mut coords, &mut rng, draw)?;
    PointSet::from_coords(&coords, Provenance::new("uniform", seed).with("n", n as f64))
}

/// Jittered `s x s` grid (`s = ceil(sqrt n)`, first `n` cells row-major) whose
/// longest/shortest distance ratio is certified `<= alpha * sqrt(n)`.
pub fn gen_dense(n: usize, alpha: f64, seed: u64) -> Result<PointSet> {
    let prov = Provenance::new("dense", seed).with("n", n as f64).with("alpha", alpha);
    if n <= 1 {
        let coords = vec![(0, 0); n];
        return PointSet::from_coords(&coords, prov);
    }
    let s = (n as f64).sqrt().ceil() as i64;
    let sqrt_n = (n as f64).sqrt();
    let spacing = COORD_LIMIT / s;
    // worst case ratio with jitter fraction t = 2J/G:
    //   sqrt(2) (s - 1 + t) / (1 - t) <= alpha sqrt(n)
    let room = (alpha * sqrt_n - 2f64.sqrt() * (s - 1) as f64) / (alpha * sqrt_n + 2f64.sqrt());
    let t = (0.9 * room).min(0.25);
    let jitter = (t * spacing as f64 / 2.0).floor() as i64;
    if jitter < 8 {
        let zero_jitter = 2f64.sqrt() * (s - 1) as f64 / sqrt_n;
        return Err(Error::InfeasibleAlpha {
            requested: alpha,
            achieved: zero_jitter,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cell = move |rng: &mut ChaCha8Rng, i: usize| {
        let (row, col) = (i as i64 / s, i as i64 % s);
        (
            col * spacing + spacing / 2 + rng.gen_range(-jitter..=jitter),
            row * spacing + spacing / 2 + rng.gen_range(-jitter..=jitter),
        )
    };
    let mut coords: Vec<(i64, i64)> = (0..n).map(|i| cell(&mut rng, i)).collect();
    repair(&mut coords, &mut rng, cell)?;
    let mut ps = PointSet::from_coords(&coords, prov)?;
    if !ps.is_alpha_dense(alpha) {
        return Err(Error::InfeasibleAlpha {
            requested: alpha,
            achieved: ps.density_alpha(),
        });
    }
    ps.provenance.params.insert("achieved_alpha".into(), ps.density_alpha());
    Ok(ps)
}

/// True iff the points, in index order, are the vertices of a strictly
/// convex polygon traversed counterclockwise.
pub fn check_convex_order(points: &[Point]) -> Result<()> {
    let n = points.len();
    if n < 3 {
        return Ok(());
    }
    for i in 0..n {
        if orient(&points[i], &points[(i + 1) % n], &points[(i + 2) % n]) <= 0 {
            return Err(Error::NotConvex(i));
        }
    }
    // fan from the first vertex rules out polygons that wind more than once
    for i in 1..n - 1 {
        if orient(&points[0], &points[i], &points[i + 1]) <= 0 {
            return Err(Error::NotConvex(i));
        }
    }
    Ok(())
}

/// `n` points on a perturbed circle, indexed in counterclockwise hull order.
pub fn gen_convex(n: usize, seed: u64) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::Precondition("gen_convex needs n >= 3".into()));
    }
    let radius = (COORD_LIMIT / 2) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let coords: Vec<(i64, i64)> = (0..n)
            .map(|k| {
                let a = 2.0 * PI * (k as f64 + rng.gen_range(-0.25..0.25)) / n as f64;
                ((radius * a.cos()).round() as i64, (radius * a.sin()).round() as i64)
            })
            .collect();
        let pts: Vec<Point> = coords.iter().enumerate().map(|(i, &(x, y))| Point::new(x, y, i)).collect();
        if check_convex_order(&pts).is_ok() {
            return PointSet::from_coords(&coords, Provenance::new("convex", seed).with("n", n as f64));
        }
    }
    Err(Error::RepairFailed { attempts: 100 })
}

/// Side length of the triangle (or separation of the two clusters) that
/// carries the clustered instances.
const CLUSTER_FRAME: f64 = 1.5e9;
/// Diameters are scaled down by `MARGIN * lambda` per level so the measured
/// chain clears `lambda` after rounding.
const MARGIN: f64 = 1.25;
/// Sagitta of a cluster arc relative to its diameter.
const BOW: f64 = 0.1;

/// `k` roughly equidistant points on a shallow parabolic arc of the given
/// diameter, centred at `center`, with chords close to `angle`.
///
/// Arcs are built exactly on integers along the x axis and rotated; for
/// quarter-turn angles the rotation is exact, so even tiny clusters stay in
/// strictly convex position.
fn arc_cluster(center: (f64, f64), angle: f64, diameter: f64, k: usize) -> Vec<(i64, i64)> {
    if k == 1 {
        return vec![(center.0.round() as i64, center.1.round() as i64)];
    }
    let km1 = (k - 1) as i64;
    let spacing = ((diameter / km1 as f64).floor() as i64).max(1);
    let quarter = (km1 * km1) as f64 / 4.0;
    let q = ((BOW * diameter / quarter).round() as i64).max(1);
    let local: Vec<(i64, i64)> = (0..k as i64)
        .map(|i| (2 * i * spacing - km1 * spacing, 2 * q * i * (i - km1)))
        .collect();
    // local coordinates are doubled to keep the centring exact
    let quarter_turns = angle / (PI / 2.0);
    let (cx, cy) = (center.0.round() as i64, center.1.round() as i64);
    if (quarter_turns - quarter_turns.round()).abs() < 1e-12 {
        let r = (quarter_turns.round() as i64).rem_euclid(4);
        local
            .iter()
            .map(|&(x, y)| {
                let (x, y) = (x / 2, y / 2);
                let (rx, ry) = match r {
                    0 => (x, y),
                    1 => (-y, x),
                    2 => (-x, -y),
                    _ => (y, -x),
                };
                (cx + rx, cy + ry)
            })
            .collect()
    } else {
        let (c, s) = (angle.cos(), angle.sin());
        local
            .iter()
            .map(|&(x, y)| {
                let (x, y) = (x as f64 / 2.0, y as f64 / 2.0);
                (
                    (center.0 + c * x - s * y).round() as i64,
                    (center.1 + s * x + c * y).round() as i64,
                )
            })
            .collect()
    }
}

/// Checks `diam(next) * lambda <= diam(prev)` along the chain of groups,
/// starting from the frame scale.
fn check_chain(ps: &PointSet, labels: &GroupLabels, chain: &[Group], frame: f64, lambda: f64) -> Result<()> {
    let mut prev = frame;
    for &g in chain {
        let d = (ps.diameter2(&labels.members(g)) as f64).sqrt();
        if d * lambda > prev {
            return Err(Error::Construction(format!(
                "diameter chain broken at group {g}: {d} * {lambda} > {prev}"
            )));
        }
        prev = d;
    }
    Ok(())
}

struct ClusterSpec {
    group: Group,
    center: (f64, f64),
    angle: f64,
    diameter: f64,
}

fn clustered(k: usize, seed: u64, lambda: f64, specs: &[ClusterSpec], prov: Provenance) -> Result<(PointSet, GroupLabels)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frame_jitter = CLUSTER_FRAME / 1000.0;
    let mut centers: Vec<(f64, f64)> = specs
        .iter()
        .map(|s| {
            (
                s.center.0 + rng.gen_range(-frame_jitter..frame_jitter),
                s.center.1 + rng.gen_range(-frame_jitter..frame_jitter),
            )
        })
        .collect();
    let mut labels = Vec::with_capacity(k * specs.len());
    for s in specs {
        labels.extend(std::iter::repeat_n(s.group, k));
    }
    let labels = GroupLabels(labels);
    for _ in 0..1000 {
        let coords: Vec<(i64, i64)> = specs
            .iter()
            .zip(&centers)
            .flat_map(|(s, &c)| arc_cluster(c, s.angle, s.diameter, k))
            .collect();
        let ps = PointSet::from_coords(&coords, prov.clone())?;
        if let Some((i, _, _)) = find_collinear_triple(&ps.points) {
            // nudge the cluster holding the offending apex
            let g = i / k;
            let step = specs[g].diameter / 10.0 + 1.0;
            centers[g].0 += rng.gen_range(-step..step);
            centers[g].1 += rng.gen_range(-step..step);
            continue;
        }
        let mut ps = ps;
        let chain: Vec<Group> = specs.iter().map(|s| s.group).collect();
        check_chain(&ps, &labels, &chain, CLUSTER_FRAME, lambda)?;
        ps.groups = Some(labels.clone());
        return Ok((ps, labels));
    }
    Err(Error::RepairFailed { attempts: 1000 })
}

/// `3k` points in three clusters near the corners of an equilateral triangle
/// with `diam(C) <= diam(B)/lambda`, `diam(B) <= diam(A)/lambda` and
/// `diam(A) <= side/lambda`.
///
/// Each cluster is an arc whose chords stay at least ~35 degrees away from
/// both directions towards the other two clusters.
pub fn gen_tripartite(k: usize, seed: u64, lambda: f64) -> Result<(PointSet, GroupLabels)> {
    if k == 0 {
        return Err(Error::Precondition("group size must be >= 1".into()));
    }
    let side = CLUSTER_FRAME;
    let h = side * 3f64.sqrt() / 2.0;
    let step = MARGIN * lambda;
    let d_a = side / step;
    let specs = [
        ClusterSpec {
            group: Group::A,
            center: (-side / 2.0, -h / 3.0),
            angle: 2.0 * PI / 3.0,
            diameter: d_a,
        },
        ClusterSpec {
            group: Group::B,
            center: (side / 2.0, -h / 3.0),
            angle: PI / 3.0,
            diameter: d_a / step,
        },
        ClusterSpec {
            group: Group::C,
            center: (0.0, 2.0 * h / 3.0),
            angle: 0.0,
            diameter: d_a / (step * step),
        },
    ];
    let prov = Provenance::new("tripartite", seed).with("k", k as f64).with("lambda", lambda);
    clustered(k, seed, lambda, &specs, prov)
}

/// `2k` points in two clusters with `diam(B) <= diam(A)/lambda` and
/// `diam(A) <= separation/lambda`.
pub fn gen_bipartite(k: usize, seed: u64, lambda: f64) -> Result<(PointSet, GroupLabels)> {
    if k == 0 {
        return Err(Error::Precondition("group size must be >= 1".into()));
    }
    let sep = CLUSTER_FRAME;
    let step = MARGIN * lambda;
    let specs = [
        ClusterSpec {
            group: Group::A,
            center: (-sep / 2.0, 0.0),
            angle: PI / 2.0,
            diameter: sep / step,
        },
        ClusterSpec {
            group: Group::B,
            center: (sep / 2.0, 0.0),
            angle: PI / 2.0,
            diameter: sep / (step * step),
        },
    ];
    let prov = Provenance::new("bipartite", seed).with("k", k as f64).with("lambda", lambda);
    clustered(k, seed, lambda, &specs, prov)
}
