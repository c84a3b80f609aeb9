//! Cover representation and exact verifiers for every piece kind.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edges::{total_edges, Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::geom::{monotonicity_interval, orient, segments_cross, AngularInterval, Direction, Point};
use crate::pointgen::{check_convex_order, PointSet};

/// Above this many matching endpoints the critical-direction decision
/// procedure is not attempted and a matching without a valid witness fails.
pub const MATCHING_DECISION_LIMIT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    MonotonePath,
    MonotoneMatching,
    NoncrossingPath,
    PlaneMatching,
    /// A plane path in which every three consecutive edges zig-zag.
    ZigzagPath,
}

impl PieceKind {
    pub fn is_path(self) -> bool {
        !matches!(self, PieceKind::MonotoneMatching | PieceKind::PlaneMatching)
    }

    pub fn name(self) -> &'static str {
        match self {
            PieceKind::MonotonePath => "monotone_path",
            PieceKind::MonotoneMatching => "monotone_matching",
            PieceKind::NoncrossingPath => "noncrossing_path",
            PieceKind::PlaneMatching => "plane_matching",
            PieceKind::ZigzagPath => "zigzag_path",
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPiece {
    pub vertices: Vec<usize>,
}

impl PathPiece {
    pub fn new(vertices: Vec<usize>) -> Self {
        PathPiece { vertices }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn reversed(&self) -> PathPiece {
        PathPiece::new(self.vertices.iter().rev().copied().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingPiece {
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Path(PathPiece),
    Matching(MatchingPiece),
}

impl Shape {
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Shape::Path(p) => p.edges().collect(),
            Shape::Matching(m) => m.edges.clone(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Shape::Path(p) => p.edge_count(),
            Shape::Matching(m) => m.edges.len(),
        }
    }
}

/// One piece of a cover with its claimed kind and, optionally, a direction
/// certifying monotonicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PieceJson", into = "PieceJson")]
pub struct Piece {
    pub kind: PieceKind,
    pub shape: Shape,
    pub witness: Option<Direction>,
}

#[derive(Serialize, Deserialize)]
struct PieceJson {
    kind: PieceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<Edge>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Direction>,
}

impl TryFrom<PieceJson> for Piece {
    type Error = String;

    fn try_from(j: PieceJson) -> std::result::Result<Self, String> {
        let shape = match (j.kind.is_path(), j.vertices, j.edges) {
            (true, Some(v), None) => Shape::Path(PathPiece::new(v)),
            (false, None, Some(e)) => Shape::Matching(MatchingPiece { edges: e }),
            _ => return Err(format!("{} piece needs exactly the matching field", j.kind)),
        };
        Ok(Piece {
            kind: j.kind,
            shape,
            witness: j.witness,
        })
    }
}

impl From<Piece> for PieceJson {
    fn from(p: Piece) -> Self {
        let (vertices, edges) = match p.shape {
            Shape::Path(path) => (Some(path.vertices), None),
            Shape::Matching(m) => (None, Some(m.edges)),
        };
        PieceJson {
            kind: p.kind,
            vertices,
            edges,
            witness: p.witness,
        }
    }
}

impl Piece {
    pub fn path(kind: PieceKind, vertices: Vec<usize>, witness: Option<Direction>) -> Self {
        debug_assert!(kind.is_path());
        Piece {
            kind,
            shape: Shape::Path(PathPiece::new(vertices)),
            witness,
        }
    }

    pub fn matching(kind: PieceKind, edges: Vec<Edge>, witness: Option<Direction>) -> Self {
        debug_assert!(!kind.is_path());
        Piece {
            kind,
            shape: Shape::Matching(MatchingPiece { edges }),
            witness,
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.shape.edges()
    }

    pub fn as_path(&self) -> Option<&PathPiece> {
        match &self.shape {
            Shape::Path(p) => Some(p),
            Shape::Matching(_) => None,
        }
    }
}

/// An ordered collection of pieces claimed to cover every edge of `K_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub pointset_hash: String,
    pub pieces: Vec<Piece>,
    /// Six-point blocks the cover was assembled from, for audit.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<[usize; 6]>,
}

impl Cover {
    pub fn new(ps: &PointSet, pieces: Vec<Piece>) -> Self {
        Cover {
            pointset_hash: ps.hash(),
            pieces,
            blocks: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn count_kind(&self, kind: PieceKind) -> usize {
        self.pieces.iter().filter(|p| p.kind == kind).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn check_path(ps: &PointSet, p: &PathPiece) -> Result<()> {
    if p.vertices.len() < 2 {
        return Err(Error::InvalidPiece("path needs at least two vertices".into()));
    }
    let mut seen = vec![false; ps.len()];
    for &v in &p.vertices {
        ps.check_id(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidPiece(format!("vertex {v} repeated in path")));
        }
    }
    Ok(())
}

fn check_matching(ps: &PointSet, m: &MatchingPiece) -> Result<()> {
    if m.edges.is_empty() {
        return Err(Error::InvalidPiece("empty matching".into()));
    }
    let mut seen = vec![false; ps.len()];
    for e in &m.edges {
        ps.check_id(e.v)?;
        if e.u == e.v {
            return Err(Error::InvalidPiece(format!("loop at {}", e.u)));
        }
        for w in [e.u, e.v] {
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::InvalidPiece(format!("vertex {w} matched twice")));
            }
        }
    }
    Ok(())
}

/// Open interval of directions in which the path is monotone, or `None`.
pub fn is_monotone_path(ps: &PointSet, p: &PathPiece) -> Result<Option<AngularInterval>> {
    check_path(ps, p)?;
    let dirs: Vec<Direction> = p
        .vertices
        .windows(2)
        .map(|w| Direction::between(ps.point(w[0]), ps.point(w[1])).expect("distinct points"))
        .collect();
    Ok(monotonicity_interval(&dirs))
}

/// True iff the projections of the matching edges onto `u` are pairwise
/// disjoint closed intervals.
pub fn separates(ps: &PointSet, edges: &[Edge], u: Direction) -> bool {
    let mut spans: Vec<(i128, i128)> = edges
        .iter()
        .map(|e| {
            let (a, b) = (u.dot(ps.point(e.u)), u.dot(ps.point(e.v)));
            (a.min(b), a.max(b))
        })
        .collect();
    spans.sort_unstable();
    spans.windows(2).all(|w| w[0].1 < w[1].0)
}

/// Directions `u` in `[0, pi)` perpendicular to some difference of the given
/// points, deduplicated and sorted counterclockwise.
pub fn critical_axes(points: &[&Point]) -> Vec<Direction> {
    let mut axes = Vec::with_capacity(points.len() * points.len() / 2);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if let Some(d) = Direction::between(p, q) {
                axes.push(d.perp_ccw().axis());
            }
        }
    }
    axes.sort_unstable_by(|a, b| a.angle_cmp(b));
    axes.dedup();
    axes
}

/// One exact direction strictly inside every cell of the half-circle
/// arrangement cut out by `axes` (sorted, deduplicated, in `[0, pi)`).
pub fn cell_samples(axes: &[Direction]) -> Vec<Direction> {
    match axes.len() {
        0 => vec![Direction::X],
        1 => vec![axes[0].perp_ccw()],
        r => {
            let mut out: Vec<Direction> = axes.windows(2).map(|w| w[0].sum(w[1]).expect("angle below pi")).collect();
            out.push(axes[r - 1].sum(-axes[0]).expect("angle below pi"));
            out
        }
    }
}

/// Decides whether the matching is monotone, returning a separating
/// direction. A supplied witness is tried first; otherwise every cell of
/// the critical-direction arrangement is tested.
pub fn is_monotone_matching(ps: &PointSet, m: &MatchingPiece, hint: Option<Direction>) -> Result<Option<Direction>> {
    check_matching(ps, m)?;
    if let Some(u) = hint {
        if separates(ps, &m.edges, u) {
            return Ok(Some(u));
        }
    }
    if m.edges.len() == 1 {
        let e = &m.edges[0];
        return Ok(Direction::between(ps.point(e.u), ps.point(e.v)));
    }
    if 2 * m.edges.len() > MATCHING_DECISION_LIMIT {
        return Err(Error::SizeGuard {
            what: "monotone matching decision without a valid witness",
            n: 2 * m.edges.len(),
            limit: MATCHING_DECISION_LIMIT,
        });
    }
    let pts: Vec<&Point> = m.edges.iter().flat_map(|e| [ps.point(e.u), ps.point(e.v)]).collect();
    let axes = critical_axes(&pts);
    Ok(cell_samples(&axes).into_iter().find(|&u| separates(ps, &m.edges, u)))
}

/// First crossing pair among the edges, if any. Edges sharing an endpoint
/// are never tested.
pub fn find_crossing(ps: &PointSet, edges: &[Edge]) -> Option<(Edge, Edge)> {
    let boxes: Vec<(i64, i64, i64, i64)> = edges
        .iter()
        .map(|e| {
            let (a, b) = (ps.point(e.u), ps.point(e.v));
            (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y))
        })
        .collect();
    // sweep in order of left box edge; only x-overlapping boxes meet
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_unstable_by_key(|&i| (boxes[i].0, i));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            let (bi, bj) = (boxes[i], boxes[j]);
            if bj.0 > bi.1 {
                break;
            }
            let (e, f) = (edges[i], edges[j]);
            if e.shares_vertex(&f) || bi.3 < bj.2 || bj.3 < bi.2 {
                continue;
            }
            if segments_cross(ps.point(e.u), ps.point(e.v), ps.point(f.u), ps.point(f.v)) {
                return Some(if i < j { (e, f) } else { (f, e) });
            }
        }
    }
    None
}

/// `None` when the piece is noncrossing, else a crossing pair.
pub fn is_noncrossing(ps: &PointSet, shape: &Shape) -> Result<Option<(Edge, Edge)>> {
    match shape {
        Shape::Path(p) => check_path(ps, p)?,
        Shape::Matching(m) => check_matching(ps, m)?,
    }
    Ok(find_crossing(ps, &shape.edges()))
}

/// True iff for every three consecutive edges `abcd`, `a` and `d` lie in
/// opposite open halfplanes of line `bc`. Vacuous below three edges.
pub fn is_zigzag_path(ps: &PointSet, p: &PathPiece) -> Result<bool> {
    check_path(ps, p)?;
    Ok(p.vertices.windows(4).all(|w| {
        let (a, b, c, d) = (ps.point(w[0]), ps.point(w[1]), ps.point(w[2]), ps.point(w[3]));
        orient(b, c, a) * orient(b, c, d) < 0
    }))
}

/// Checks a single piece against its claimed kind. `Ok(None)` on success,
/// `Ok(Some(reason))` on a property violation.
pub fn verify_piece(ps: &PointSet, piece: &Piece) -> Result<Option<String>> {
    match (piece.kind, &piece.shape) {
        (PieceKind::MonotonePath, Shape::Path(p)) => Ok(match is_monotone_path(ps, p)? {
            Some(_) => None,
            None => Some("edge vectors do not fit in an open halfplane".into()),
        }),
        (PieceKind::NoncrossingPath, Shape::Path(p)) => Ok(is_noncrossing(ps, &Shape::Path(p.clone()))?
            .map(|(e, f)| format!("edges {e:?} and {f:?} cross"))),
        (PieceKind::ZigzagPath, Shape::Path(p)) => {
            if !is_zigzag_path(ps, p)? {
                return Ok(Some("consecutive edges do not zig-zag".into()));
            }
            Ok(find_crossing(ps, &p.edges().collect::<Vec<_>>()).map(|(e, f)| format!("edges {e:?} and {f:?} cross")))
        }
        (PieceKind::MonotoneMatching, Shape::Matching(m)) => Ok(match is_monotone_matching(ps, m, piece.witness) {
            Ok(Some(_)) => None,
            Ok(None) => Some("no direction separates the edge projections".into()),
            Err(Error::SizeGuard { .. }) => Some("witness does not separate the edge projections".into()),
            Err(e) => return Err(e),
        }),
        (PieceKind::PlaneMatching, Shape::Matching(m)) => {
            check_matching(ps, m)?;
            Ok(find_crossing(ps, &m.edges).map(|(e, f)| format!("edges {e:?} and {f:?} cross")))
        }
        (kind, _) => Err(Error::InvalidPiece(format!("{kind} piece has the wrong shape"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceFailure {
    pub index: usize,
    pub kind: PieceKind,
    pub reason: String,
}

/// Outcome of [`check_coverage`]. Only failing pieces are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub n: usize,
    pub total_edges: usize,
    pub covered_edges: usize,
    pub uncovered: Vec<Edge>,
    pub pieces: usize,
    pub failures: Vec<PieceFailure>,
    pub kinds: BTreeMap<PieceKind, usize>,
    pub hash_matches: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Verifies every piece against its kind and that all `C(n, 2)` edges are
/// covered. Duplicates across pieces are allowed.
pub fn check_coverage(ps: &PointSet, cover: &Cover) -> VerificationReport {
    let n = ps.len();
    let failures: Vec<PieceFailure> = cover
        .pieces
        .par_iter()
        .enumerate()
        .filter_map(|(index, piece)| {
            let reason = match verify_piece(ps, piece) {
                Ok(r) => r,
                Err(e) => Some(e.to_string()),
            };
            reason.map(|reason| PieceFailure {
                index,
                kind: piece.kind,
                reason,
            })
        })
        .collect();
    let mut covered = EdgeSet::new(n);
    let mut kinds = BTreeMap::new();
    for piece in &cover.pieces {
        *kinds.entry(piece.kind).or_insert(0) += 1;
        for e in piece.edges() {
            if e.v < n && e.u != e.v {
                covered.insert(e);
            }
        }
    }
    let uncovered = covered.complement();
    let hash_matches = cover.pointset_hash.is_empty() || cover.pointset_hash == ps.hash();
    VerificationReport {
        pass: failures.is_empty() && uncovered.is_empty() && hash_matches,
        n,
        total_edges: total_edges(n),
        covered_edges: covered.len(),
        uncovered,
        pieces: cover.pieces.len(),
        failures,
        kinds,
        hash_matches,
    }
}

/// Splits every path into its odd- and even-numbered edges. Monotone paths
/// become monotone matchings carrying the path's witness; other paths
/// become plane matchings. Empty halves are dropped.
pub fn paths_to_matchings(cover: &Cover) -> Cover {
    let mut pieces = Vec::with_capacity(2 * cover.pieces.len());
    for piece in &cover.pieces {
        let path = match &piece.shape {
            Shape::Path(p) => p,
            Shape::Matching(_) => {
                pieces.push(piece.clone());
                continue;
            }
        };
        let kind = match piece.kind {
            PieceKind::MonotonePath => PieceKind::MonotoneMatching,
            _ => PieceKind::PlaneMatching,
        };
        let edges: Vec<Edge> = path.edges().collect();
        for parity in 0..2 {
            let half: Vec<Edge> = edges.iter().skip(parity).step_by(2).copied().collect();
            if !half.is_empty() {
                pieces.push(Piece::matching(kind, half, piece.witness));
            }
        }
    }
    Cover {
        pointset_hash: cover.pointset_hash.clone(),
        pieces,
        blocks: cover.blocks.clone(),
    }
}

/// Partition of the edges of a convex-position set (indexed in hull order)
/// into `n` plane matchings, the classes `i + j = c (mod n)`.
///
/// Each class is a family of parallel chords of the polygon, hence plane.
/// For odd `n` every class has `(n-1)/2` edges. For even `n` the classes
/// with odd `c` are perfect and the others miss two vertices; `n` is the
/// minimum, because an edge with an odd number of points on either side
/// lies in no plane perfect matching.
pub fn convex_matching_decomposition(ps: &PointSet) -> Result<Cover> {
    check_convex_order(&ps.points)?;
    let n = ps.len();
    if n < 2 {
        return Ok(Cover::new(ps, Vec::new()));
    }
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            classes[(i + j) % n].push(Edge::new(i, j));
        }
    }
    let mut pieces = Vec::with_capacity(n);
    for class in classes.into_iter().filter(|c| !c.is_empty()) {
        if let Some((e, f)) = find_crossing(ps, &class) {
            return Err(Error::Construction(format!("chord class has crossing edges {e:?}, {f:?}")));
        }
        pieces.push(Piece::matching(PieceKind::PlaneMatching, class, None));
    }
    Ok(Cover::new(ps, pieces))
}
