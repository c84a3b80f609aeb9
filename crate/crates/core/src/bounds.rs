//! Exact certification of the clustered lower-bound instances: the most
//! inter-group edges any monotone path can carry, over all directions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covers::{cell_samples, critical_axes, is_monotone_path, PathPiece};
use crate::error::{Error, Result};
use crate::geom::{Direction, Point};
use crate::pointgen::{Group, GroupLabels, PointSet};

/// Critical directions of a point set (in `[0, pi)`, sorted) and one exact
/// interior direction per cell between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalFan {
    pub axes: Vec<Direction>,
    pub samples: Vec<Direction>,
}

pub fn build_critical_fan(ps: &PointSet) -> CriticalFan {
    let pts: Vec<&Point> = ps.points.iter().collect();
    let axes = critical_axes(&pts);
    let samples = cell_samples(&axes);
    CriticalFan { axes, samples }
}

/// Point ids sorted by projection on `u`; fails on any tie.
pub fn strict_order(ps: &PointSet, u: Direction) -> Result<Vec<usize>> {
    let mut keyed: Vec<(i128, usize)> = ps.points.iter().map(|p| (u.dot(p), p.id)).collect();
    keyed.sort_unstable();
    if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Tie(u));
    }
    Ok(keyed.into_iter().map(|(_, id)| id).collect())
}

/// Largest number of inter-group edges on a `u`-monotone path, with a
/// witness. Any increasing sequence in the projection order is such a
/// path, so this is a longest-path DP over that order.
pub fn max_e0_on_monotone_path(ps: &PointSet, labels: &GroupLabels, u: Direction) -> Result<(usize, PathPiece)> {
    if labels.0.len() != ps.len() {
        return Err(Error::Precondition("labels do not match the point set".into()));
    }
    if ps.len() < 2 {
        return Err(Error::Precondition("need at least two points".into()));
    }
    let order = strict_order(ps, u)?;
    let (best, path) = longest_inter_group(&order, labels);
    Ok((best, PathPiece::new(path)))
}

fn longest_inter_group(order: &[usize], labels: &GroupLabels) -> (usize, Vec<usize>) {
    let n = order.len();
    let mut dp = vec![0usize; n];
    let mut prev = vec![usize::MAX; n];
    for j in 0..n {
        for i in 0..j {
            let w = labels.inter(order[i], order[j]) as usize;
            if dp[i] + w > dp[j] || prev[j] == usize::MAX && dp[i] + w == dp[j] {
                dp[j] = dp[i] + w;
                prev[j] = i;
            }
        }
    }
    let end = (0..n).max_by_key(|&j| (dp[j], std::cmp::Reverse(j))).expect("nonempty");
    let mut seq = vec![end];
    while prev[*seq.last().expect("nonempty")] != usize::MAX {
        seq.push(prev[*seq.last().expect("nonempty")]);
    }
    seq.reverse();
    if seq.len() == 1 {
        // no inter-group edge anywhere: a single edge carries the count 0
        seq = if end + 1 < n { vec![end, end + 1] } else { vec![end - 1, end] };
    }
    (dp[end], seq.into_iter().map(|i| order[i]).collect())
}

/// Structural conditions on the group sequence of a monotone path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// Group of each vertex with repeats collapsed.
    pub sequence: Vec<Group>,
    /// No `X -> Y -> Z -> X` through all three groups.
    pub no_three_cycle: bool,
    /// No two distinct group pairs both traversed in both directions.
    pub no_double_reversal: bool,
    /// At most four edges between any two groups, and with four, the path
    /// starts or ends in the group of larger diameter.
    pub pair_limits: bool,
    pub e0_edges: usize,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.no_three_cycle && self.no_double_reversal && self.pair_limits
    }
}

/// Records the collapsed group sequence of a monotone path and checks the
/// three structural conditions on it.
pub fn classify_path_conditions(ps: &PointSet, labels: &GroupLabels, path: &PathPiece) -> Result<ConditionReport> {
    if is_monotone_path(ps, path)?.is_none() {
        return Err(Error::InvalidPiece("path is not monotone".into()));
    }
    let groups: Vec<Group> = path.vertices.iter().map(|&v| labels.group(v)).collect();
    let mut sequence = groups.clone();
    sequence.dedup();

    let no_three_cycle = !sequence
        .windows(4)
        .any(|w| w[0] == w[3] && w[0] != w[1] && w[1] != w[2] && w[0] != w[2]);

    let mut directed: BTreeMap<(Group, Group), usize> = BTreeMap::new();
    for w in groups.windows(2) {
        if w[0] != w[1] {
            *directed.entry((w[0], w[1])).or_default() += 1;
        }
    }
    let reversed_pairs: Vec<(Group, Group)> = directed
        .keys()
        .filter(|&&(x, y)| x < y && directed.contains_key(&(y, x)))
        .copied()
        .collect();
    let no_double_reversal = reversed_pairs.len() < 2;

    let diam = |g: Group| ps.diameter2(&labels.members(g));
    let mut pair_limits = true;
    let mut per_pair: BTreeMap<(Group, Group), usize> = BTreeMap::new();
    for (&(x, y), &c) in &directed {
        *per_pair.entry((x.min(y), x.max(y))).or_default() += c;
    }
    for (&(x, y), &c) in &per_pair {
        if c > 4 {
            pair_limits = false;
        } else if c == 4 {
            let big = if diam(x) >= diam(y) { x } else { y };
            let first = labels.group(path.vertices[0]);
            let last = labels.group(*path.vertices.last().expect("nonempty"));
            if first != big && last != big {
                pair_limits = false;
            }
        }
    }
    let e0_edges = directed.values().sum();
    Ok(ConditionReport {
        sequence,
        no_three_cycle,
        no_double_reversal,
        pair_limits,
        e0_edges,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCertificate {
    pub n: usize,
    pub groups: usize,
    pub e0_edges: usize,
    /// Generator parameters, when known.
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
    /// Directions evaluated (both orientations of every cell sample).
    pub directions: usize,
    /// Number of evaluated directions attaining each maximum.
    pub histogram: BTreeMap<usize, usize>,
    pub max_e0: usize,
    pub witness: Vec<usize>,
    pub witness_direction: Direction,
    pub witness_conditions: Option<ConditionReport>,
    /// Any monotone-path cover needs at least `ceil(e0 / max)` pieces.
    pub min_pieces: usize,
}

/// Maximizes the DP over both orientations of every cell of the critical
/// fan and re-verifies the best witness.
pub fn certify_lower_bound(ps: &PointSet, labels: &GroupLabels) -> Result<LowerBoundCertificate> {
    let fan = build_critical_fan(ps);
    let mut histogram = BTreeMap::new();
    let mut best: Option<(usize, PathPiece, Direction)> = None;
    for &s in &fan.samples {
        for u in [s, -s] {
            let (m, path) = max_e0_on_monotone_path(ps, labels, u)?;
            *histogram.entry(m).or_insert(0) += 1;
            if best.as_ref().is_none_or(|b| m > b.0) {
                best = Some((m, path, u));
            }
        }
    }
    let (max_e0, path, dir) = best.ok_or_else(|| Error::Precondition("empty fan".into()))?;
    let iv = is_monotone_path(ps, &path)?.ok_or_else(|| Error::Construction("witness is not monotone".into()))?;
    if !iv.contains(dir) {
        return Err(Error::Construction("witness direction outside its interval".into()));
    }
    let counted = path.vertices.windows(2).filter(|w| labels.inter(w[0], w[1])).count();
    if counted != max_e0 {
        return Err(Error::Construction(format!("witness carries {counted} edges, expected {max_e0}")));
    }
    let distinct: std::collections::BTreeSet<Group> = labels.0.iter().copied().collect();
    let conditions = if distinct.len() >= 2 {
        Some(classify_path_conditions(ps, labels, &path)?)
    } else {
        None
    };
    let e0 = labels.e0_count();
    Ok(LowerBoundCertificate {
        n: ps.len(),
        groups: distinct.len(),
        e0_edges: e0,
        params: ps.provenance.params.clone(),
        seed: ps.provenance.seed,
        directions: 2 * fan.samples.len(),
        histogram,
        max_e0,
        witness: path.vertices,
        witness_direction: dir,
        witness_conditions: conditions,
        min_pieces: if max_e0 == 0 { 0 } else { e0.div_ceil(max_e0) },
    })
}

/// Exhaustive maximum over all vertex sequences that form a monotone path
/// (extending only monotone prefixes). Independent of the DP and the fan.
pub fn brute_force_max_e0(ps: &PointSet, labels: &GroupLabels) -> Result<(usize, Vec<usize>)> {
    const LIMIT: usize = 10;
    if ps.len() > LIMIT {
        return Err(Error::SizeGuard {
            what: "brute-force monotone path enumeration",
            n: ps.len(),
            limit: LIMIT,
        });
    }
    fn rec(ps: &PointSet, labels: &GroupLabels, seq: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut (usize, Vec<usize>)) {
        if seq.len() >= 2 {
            let path = PathPiece::new(seq.clone());
            if is_monotone_path(ps, &path).expect("valid path").is_none() {
                return;
            }
            let c = seq.windows(2).filter(|w| labels.inter(w[0], w[1])).count();
            if c > best.0 || best.1.is_empty() {
                *best = (c, seq.clone());
            }
        }
        for v in 0..ps.len() {
            if !used[v] {
                used[v] = true;
                seq.push(v);
                rec(ps, labels, seq, used, best);
                seq.pop();
                used[v] = false;
            }
        }
    }
    let mut best = (0, Vec::new());
    rec(ps, labels, &mut Vec::new(), &mut vec![false; ps.len()], &mut best);
    Ok(best)
}
