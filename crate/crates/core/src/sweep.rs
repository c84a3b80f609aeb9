//! Direction sweeps: the two-phase cover for random sets, the skip-path
//! cover for dense sets, and the locus predicate behind both.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::covers::{find_crossing, Cover, Piece, PieceKind};
use crate::edges::{Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::geom::{cross, dot, monotonicity_interval, sweep_key, Direction, Point};
use crate::pointgen::PointSet;

/// Fan directions are rounded from unit vectors scaled by this factor.
pub const FAN_SCALE: f64 = (1u64 << 30) as f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanMode {
    /// `N = round(pi / theta)` directions in `[0, pi)`, `theta = c n^{-4/3}`.
    Half,
    /// `N = round(2 pi / phi)` directions in `[0, 2 pi)`, `phi = c n^{-1/2}`.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    /// Two monotone matchings per direction.
    Matchings,
    /// One monotone spanning path per direction.
    Paths,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub c: f64,
    pub phase2: bool,
    pub emit: Emit,
    pub directions: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            c: 1.0,
            phase2: false,
            emit: Emit::Matchings,
            directions: None,
        }
    }
}

/// Number of fan directions for `n` points.
pub fn fan_size(n: usize, mode: FanMode, c: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::Precondition("a direction fan needs n >= 2".into()));
    }
    let nf = n as f64;
    let count = match mode {
        FanMode::Half => (PI * nf.powf(4.0 / 3.0) / c).round(),
        FanMode::Full => (2.0 * PI * nf.sqrt() / c).round(),
    };
    // also rejects NaN from a nonpositive or NaN c
    if count.is_nan() || count < 1.0 {
        return Err(Error::FanTooCoarse { n, c });
    }
    Ok(count as usize)
}

/// `count` directions at angles `k * span / count`, starting with `(1, 0)`.
pub fn fan_directions(count: usize, mode: FanMode) -> Vec<Direction> {
    let span = match mode {
        FanMode::Half => PI,
        FanMode::Full => 2.0 * PI,
    };
    (0..count)
        .map(|k| Direction::from_angle(k as f64 * span / count as f64, FAN_SCALE))
        .collect()
}

pub fn direction_fan(n: usize, mode: FanMode, c: f64) -> Result<Vec<Direction>> {
    Ok(fan_directions(fan_size(n, mode, c)?, mode))
}

/// Point ids sorted along `u`, ties resolved by the sweep order.
pub fn sorted_along(ps: &PointSet, u: Direction) -> Vec<usize> {
    let mut keyed: Vec<((i128, i128), usize)> = ps.points.iter().map(|p| (sweep_key(p, u), p.id)).collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, id)| id).collect()
}

/// A direction in which `order` is strictly monotone: `u` itself when no
/// two consecutive points project equally, else an exact interval witness.
fn order_witness(ps: &PointSet, order: &[usize], u: Direction) -> Direction {
    let tied = order.windows(2).any(|w| u.dot(ps.point(w[0])) == u.dot(ps.point(w[1])));
    if !tied {
        return u;
    }
    let dirs: Vec<Direction> = order
        .windows(2)
        .map(|w| Direction::between(ps.point(w[0]), ps.point(w[1])).expect("distinct points"))
        .collect();
    monotonicity_interval(&dirs).expect("sweep order is monotone").witness()
}

/// The spanning path through all points in the order of `u`.
pub fn monotone_spanning_path(ps: &PointSet, u: Direction) -> Piece {
    let order = sorted_along(ps, u);
    let w = order_witness(ps, &order, u);
    Piece::path(PieceKind::MonotonePath, order, Some(w))
}

/// The locus of points on some line that meets segment `ab` at an angle of
/// at most `theta`, with `tan(theta) = tan_num / tan_den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocusQuery {
    pub a: Point,
    pub b: Point,
    pub tan_num: i64,
    pub tan_den: i64,
}

impl LocusQuery {
    /// Rational tangent with denominator 2^20.
    pub fn with_angle(a: Point, b: Point, theta: f64) -> Self {
        let den = 1i64 << 20;
        LocusQuery {
            a,
            b,
            tan_num: (theta.tan() * den as f64).round() as i64,
            tan_den: den,
        }
    }
}

/// Lines through `p` meeting segment `ab` sweep the directions between `pa`
/// and `pb`; the smallest angle with `ab` is attained at an endpoint. So `p`
/// is in the locus iff line `pa` or line `pb` is within the angle of `ab`.
pub fn locus_contains(q: &LocusQuery, p: &Point) -> bool {
    let (ex, ey) = q.a.to(&q.b);
    let within = |o: &Point| {
        let (vx, vy) = o.to(p);
        let c = cross(vx, vy, ex, ey).abs();
        let d = dot(vx, vy, ex, ey).abs();
        c * q.tan_den as i128 <= d * q.tan_num as i128
    };
    within(&q.a) || within(&q.b)
}

/// Edges never adjacent in the materialized orders of the given directions.
pub fn spanning_union(ps: &PointSet, fan: &[Direction]) -> EdgeSet {
    let mut covered = EdgeSet::new(ps.len());
    for &u in fan {
        for w in sorted_along(ps, u).windows(2) {
            covered.insert(Edge::new(w[0], w[1]));
        }
    }
    covered
}

/// Pair swap in the kinetic sweep: the canonical axis perpendicular to
/// `q - p`, at which `p` and `q` exchange places.
struct SwapEvent {
    dx: i64,
    dy: i64,
    p: u32,
    q: u32,
}

impl SwapEvent {
    fn cmp_angle(&self, other: &SwapEvent) -> Ordering {
        0.cmp(&cross(self.dx, self.dy, other.dx, other.dy))
    }
}

/// Union of consecutive pairs over the spanning paths of a fan of
/// directions in `[0, pi)`, computed by a kinetic sweep instead of one sort
/// per direction.
///
/// Rotating `u` from angle 0 to `pi`, every pair swaps exactly once, at the
/// axis perpendicular to its difference. The order sampled at fan
/// direction `t` is the initial order with every swap at angle `<= t`
/// applied. A pair adjacency that starts after swap `s` and ends at swap
/// `e` is seen by some fan direction iff the first fan index at or after
/// `s` precedes the first fan index at or after `e`.
///
/// `fan` must be sorted counterclockwise, lie in `[0, pi)` and start with
/// `(1, 0)`. Fails if a swap involves non-adjacent points, which only
/// happens with collinear triples.
pub fn kinetic_spanning_union(ps: &PointSet, fan: &[Direction]) -> Result<EdgeSet> {
    let n = ps.len();
    assert!(n < u32::MAX as usize);
    if fan.first() != Some(&Direction::X) || !fan.iter().all(|d| d.upper()) {
        return Err(Error::Precondition("fan must start at (1, 0) and stay in [0, pi)".into()));
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&i| (ps.points[i as usize].x, ps.points[i as usize].y));
    let mut pos = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i as u32;
    }

    let mut events = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (i, p) in ps.points.iter().enumerate() {
        for q in &ps.points[i + 1..] {
            let d = Direction::between(p, q).expect("distinct points").perp_ccw().axis();
            if d.dy() == 0 {
                continue;
            }
            events.push(SwapEvent {
                dx: d.dx(),
                dy: d.dy(),
                p: p.id as u32,
                q: q.id as u32,
            });
        }
    }
    events.sort_unstable_by(|a, b| a.cmp_angle(b).then((a.p, a.q).cmp(&(b.p, b.q))));

    let total = fan.len() as u32;
    let mut covered = EdgeSet::new(n);
    // since[i]: first fan index that can see the adjacency at (i, i + 1)
    let mut since = vec![0u32; n.saturating_sub(1)];
    let mut k = 0usize;
    let close = |covered: &mut EdgeSet, since: &mut [u32], order: &[u32], i: usize, now: u32| {
        if since[i] < now {
            covered.insert(Edge::new(order[i] as usize, order[i + 1] as usize));
        }
        since[i] = now;
    };
    for ev in &events {
        while k < fan.len() && cross(fan[k].dx(), fan[k].dy(), ev.dx, ev.dy) > 0 {
            k += 1;
        }
        let now = k as u32;
        let (a, b) = (pos[ev.p as usize], pos[ev.q as usize]);
        let i = a.min(b) as usize;
        if a.abs_diff(b) != 1 {
            return Err(Error::NotGeneralPosition(ev.p as usize, order[i + 1] as usize, ev.q as usize));
        }
        if i > 0 {
            close(&mut covered, &mut since, &order, i - 1, now);
        }
        if i + 2 < n {
            close(&mut covered, &mut since, &order, i + 1, now);
        }
        order.swap(i, i + 1);
        pos[order[i] as usize] = i as u32;
        pos[order[i + 1] as usize] = (i + 1) as u32;
    }
    for i in 0..n.saturating_sub(1) {
        close(&mut covered, &mut since, &order, i, total);
    }
    Ok(covered)
}

/// Residual of the first phase: edges in no spanning path of the half fan.
pub fn phase1_residual(ps: &PointSet, c: f64) -> Result<Vec<Edge>> {
    let fan = direction_fan(ps.len(), FanMode::Half, c)?;
    Ok(kinetic_spanning_union(ps, &fan)?.complement())
}

/// First phase materialized: per fan direction either the spanning path or
/// its two matchings, plus the residual edges.
pub fn phase1_cover(ps: &PointSet, cfg: &SweepConfig) -> Result<(Cover, Vec<Edge>)> {
    let n = ps.len();
    let count = match cfg.directions {
        Some(k) if k >= 1 => k,
        Some(_) => return Err(Error::FanTooCoarse { n, c: cfg.c }),
        None => fan_size(n, FanMode::Half, cfg.c)?,
    };
    let fan = fan_directions(count, FanMode::Half);
    let mut pieces = Vec::with_capacity(2 * count);
    let mut covered = EdgeSet::new(n);
    for &u in &fan {
        let path = monotone_spanning_path(ps, u);
        let order = path.as_path().expect("path").vertices.clone();
        for w in order.windows(2) {
            covered.insert(Edge::new(w[0], w[1]));
        }
        match cfg.emit {
            Emit::Paths => pieces.push(path),
            Emit::Matchings => {
                let edges: Vec<Edge> = order.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
                for parity in 0..2 {
                    let half: Vec<Edge> = edges.iter().skip(parity).step_by(2).copied().collect();
                    if !half.is_empty() {
                        pieces.push(Piece::matching(PieceKind::MonotoneMatching, half, path.witness));
                    }
                }
            }
        }
    }
    Ok((Cover::new(ps, pieces), covered.complement()))
}

/// Greedy plane-matching extraction: each round scans the remaining edges
/// by increasing length and keeps an edge if both endpoints are free and it
/// crosses no edge kept so far in the round.
pub fn phase2_cover(ps: &PointSet, residual: &[Edge]) -> Result<Cover> {
    for e in residual {
        ps.check_id(e.v)?;
    }
    let mut rest: Vec<Edge> = residual.to_vec();
    rest.sort_unstable_by_key(|e| (ps.point(e.u).dist2(ps.point(e.v)), e.u, e.v));
    rest.dedup();
    let mut pieces = Vec::new();
    let mut stamp = vec![usize::MAX; ps.len()];
    let mut round = 0usize;
    while !rest.is_empty() {
        let mut taken: Vec<Edge> = Vec::new();
        let mut boxes: Vec<(i64, i64, i64, i64)> = Vec::new();
        let mut keep = Vec::with_capacity(rest.len());
        for e in rest {
            if stamp[e.u] == round || stamp[e.v] == round {
                keep.push(e);
                continue;
            }
            let (a, b) = (ps.point(e.u), ps.point(e.v));
            let bx = (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y));
            let hit = taken.iter().zip(&boxes).any(|(f, fb)| {
                !(bx.1 < fb.0 || fb.1 < bx.0 || bx.3 < fb.2 || fb.3 < bx.2)
                    && crate::geom::segments_cross(a, b, ps.point(f.u), ps.point(f.v))
            });
            if hit {
                keep.push(e);
            } else {
                stamp[e.u] = round;
                stamp[e.v] = round;
                taken.push(e);
                boxes.push(bx);
            }
        }
        debug_assert!(find_crossing(ps, &taken).is_none());
        pieces.push(Piece::matching(PieceKind::PlaneMatching, taken, None));
        rest = keep;
        round += 1;
    }
    Ok(Cover::new(ps, pieces))
}

/// Counts reported next to a sweep cover.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepStats {
    pub directions: usize,
    pub pieces_phase1: usize,
    pub residual_edges: usize,
    pub pieces_phase2: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// Both phases: phase-one pieces followed by plane matchings covering the
/// residual.
pub fn sweep_cover(ps: &PointSet, cfg: &SweepConfig) -> Result<(Cover, SweepStats)> {
    let (mut cover, residual) = phase1_cover(ps, cfg)?;
    let mut stats = SweepStats {
        directions: match cfg.emit {
            Emit::Paths => cover.len(),
            Emit::Matchings => cfg.directions.unwrap_or(fan_size(ps.len(), FanMode::Half, cfg.c)?),
        },
        pieces_phase1: cover.len(),
        residual_edges: residual.len(),
        ..Default::default()
    };
    if cfg.phase2 {
        let extra = phase2_cover(ps, &residual)?;
        stats.pieces_phase2 = extra.len();
        cover.pieces.extend(extra.pieces);
    }
    Ok((cover, stats))
}

/// `beta = (8c + 4 sqrt(2) alpha) / (pi alpha^2)`.
pub fn dense_beta(alpha: f64, c: f64) -> f64 {
    (8.0 * c + 4.0 * 2f64.sqrt() * alpha) / (PI * alpha * alpha)
}

/// Skip budget `B = floor(beta sqrt(n))`.
pub fn dense_budget(n: usize, alpha: f64, c: f64) -> usize {
    (dense_beta(alpha, c) * (n as f64).sqrt()).floor() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseStats {
    pub directions: usize,
    pub budget: usize,
    pub pieces: usize,
}

/// Smallest alpha for which `ps` passes the exact density test, padded so
/// the floating-point value still passes it.
pub fn tight_alpha(ps: &PointSet) -> f64 {
    let mut a = ps.density_alpha();
    while !ps.is_alpha_dense(a) {
        a *= 1.0 + 1e-12;
    }
    a
}

/// Streams the dense cover: for every direction of the full fan and every
/// `1 <= j <= i <= B`, the path through positions `j, j+i, j+2i, ...` of the
/// sorted order (1-based). `visit` receives each path and its witness.
pub fn dense_cover_visit<F>(ps: &PointSet, alpha: f64, c: f64, mut visit: F) -> Result<DenseStats>
where
    F: FnMut(&[usize], Direction),
{
    let n = ps.len();
    if !ps.is_alpha_dense(alpha) {
        return Err(Error::NotDense {
            alpha,
            achieved: ps.density_alpha(),
        });
    }
    if n < 2 {
        return Ok(DenseStats {
            directions: 0,
            budget: 0,
            pieces: 0,
        });
    }
    let fan = direction_fan(n, FanMode::Full, c)?;
    let budget = dense_budget(n, alpha, c);
    let mut pieces = 0;
    let mut buf = Vec::with_capacity(n);
    for &u in &fan {
        let order = sorted_along(ps, u);
        let w = order_witness(ps, &order, u);
        for i in 1..=budget {
            for j in 1..=i {
                buf.clear();
                buf.extend(order.iter().skip(j - 1).step_by(i).copied());
                if buf.len() >= 2 {
                    visit(&buf, w);
                    pieces += 1;
                }
            }
        }
    }
    Ok(DenseStats {
        directions: fan.len(),
        budget,
        pieces,
    })
}

/// Materialized dense cover. The budget only suffices when the minimum
/// distance is large against `alpha / sqrt(n)` in the unit square, which
/// fails for sparse sets with a large tight alpha, so coverage is checked
/// and a shortfall is an error rather than a partial cover.
pub fn dense_cover(ps: &PointSet, alpha: f64, c: f64) -> Result<(Cover, DenseStats)> {
    let mut pieces = Vec::new();
    let mut covered = EdgeSet::new(ps.len());
    let stats = dense_cover_visit(ps, alpha, c, |path, w| {
        for e in path.windows(2) {
            covered.insert(Edge::new(e[0], e[1]));
        }
        pieces.push(Piece::path(PieceKind::MonotonePath, path.to_vec(), Some(w)));
    })?;
    if !covered.is_full() {
        return Err(Error::DenseBudget {
            budget: stats.budget,
            uncovered: covered.complement().len(),
        });
    }
    Ok((Cover::new(ps, pieces), stats))
}
