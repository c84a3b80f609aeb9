//! Exact minimum covers for tiny point sets by exhaustive candidate
//! enumeration and branch-and-bound set cover.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bounds::{build_critical_fan, strict_order};
use crate::covers::{is_monotone_path, is_noncrossing, Cover, PathPiece, Piece, PieceKind, Shape};
use crate::edges::{all_edges, Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::pointgen::PointSet;

pub const ENUMERATION_LIMIT: usize = 8;
pub const MONOTONE_COVER_LIMIT: usize = 7;
pub const OTHER_COVER_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    MonotonePath,
    NoncrossingPath,
    PlaneMatching,
}

impl OracleKind {
    pub fn piece_kind(self) -> PieceKind {
        match self {
            OracleKind::MonotonePath => PieceKind::MonotonePath,
            OracleKind::NoncrossingPath => PieceKind::NoncrossingPath,
            OracleKind::PlaneMatching => PieceKind::PlaneMatching,
        }
    }

    fn limit(self) -> usize {
        match self {
            OracleKind::MonotonePath => MONOTONE_COVER_LIMIT,
            _ => OTHER_COVER_LIMIT,
        }
    }
}

impl std::str::FromStr for OracleKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "monotone_path" | "monotone" => Ok(OracleKind::MonotonePath),
            "noncrossing_path" | "noncrossing" => Ok(OracleKind::NoncrossingPath),
            "plane_matching" | "matching" => Ok(OracleKind::PlaneMatching),
            _ => Err(format!("unknown piece kind {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub kind: OracleKind,
    pub n: usize,
    pub optimum: usize,
    pub witness: Cover,
    /// Maximal candidate pieces the search branched over.
    pub candidates: usize,
    pub nodes: u64,
}

impl OracleResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Every monotone path with at least one edge, one representative per
/// reversal class (the lexicographically smaller orientation).
pub fn enumerate_monotone_paths(ps: &PointSet) -> Result<Vec<PathPiece>> {
    let n = ps.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            what: "monotone path enumeration",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    ps.check_general_position()?;
    let mut seen = BTreeSet::new();
    // one orientation per cell suffices: the opposite cell reverses every path
    for u in build_critical_fan(ps).samples {
        let order = strict_order(ps, u)?;
        for mask in 1u32..(1 << n) {
            if mask.count_ones() < 2 {
                continue;
            }
            let seq: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| order[i]).collect();
            seen.insert(canonical(seq));
        }
    }
    Ok(seen.into_iter().map(PathPiece::new).collect())
}

fn canonical(seq: Vec<usize>) -> Vec<usize> {
    let rev: Vec<usize> = seq.iter().rev().copied().collect();
    seq.min(rev)
}

struct Candidate {
    mask: u32,
    piece: Piece,
}

fn edge_mask(n: usize, edges: impl IntoIterator<Item = Edge>) -> u32 {
    let mut set = EdgeSet::new(n);
    let mut mask = 0;
    for e in edges {
        set.insert(e);
        mask |= 1 << set.index(e);
    }
    mask
}

fn candidates(ps: &PointSet, kind: OracleKind) -> Result<Vec<Candidate>> {
    let n = ps.len();
    let mut out = Vec::new();
    match kind {
        OracleKind::MonotonePath => {
            for p in enumerate_monotone_paths(ps)? {
                let iv = is_monotone_path(ps, &p)?.ok_or_else(|| Error::Construction("enumerated path is not monotone".into()))?;
                let mask = edge_mask(n, p.edges());
                out.push(Candidate {
                    mask,
                    piece: Piece::path(PieceKind::MonotonePath, p.vertices, Some(iv.witness())),
                });
            }
        }
        OracleKind::NoncrossingPath => {
            let mut seqs = Vec::new();
            all_sequences(n, &mut Vec::new(), &mut vec![false; n], &mut seqs);
            for seq in seqs {
                let p = PathPiece::new(seq);
                if is_noncrossing(ps, &Shape::Path(p.clone()))?.is_none() {
                    out.push(Candidate {
                        mask: edge_mask(n, p.edges()),
                        piece: Piece::path(PieceKind::NoncrossingPath, p.vertices, None),
                    });
                }
            }
        }
        OracleKind::PlaneMatching => {
            let edges: Vec<Edge> = all_edges(n).collect();
            let mut stack = Vec::new();
            matchings(&edges, 0, 0, &mut stack, &mut |m: &[Edge]| {
                if !m.is_empty() {
                    let shape = Shape::Matching(crate::covers::MatchingPiece { edges: m.to_vec() });
                    if is_noncrossing(ps, &shape).expect("valid matching").is_none() {
                        out.push(Candidate {
                            mask: edge_mask(n, m.iter().copied()),
                            piece: Piece::matching(PieceKind::PlaneMatching, m.to_vec(), None),
                        });
                    }
                }
            });
        }
    }
    Ok(maximal(out))
}

fn all_sequences(n: usize, seq: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if seq.len() >= 2 && seq[0] < seq[seq.len() - 1] {
        out.push(seq.clone());
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            seq.push(v);
            all_sequences(n, seq, used, out);
            seq.pop();
            used[v] = false;
        }
    }
}

fn matchings(edges: &[Edge], from: usize, used: u32, stack: &mut Vec<Edge>, f: &mut impl FnMut(&[Edge])) {
    f(stack);
    for (i, e) in edges.iter().enumerate().skip(from) {
        let bits = 1 << e.u | 1 << e.v;
        if used & bits == 0 {
            stack.push(*e);
            matchings(edges, i + 1, used | bits, stack, f);
            stack.pop();
        }
    }
}

/// Drops candidates whose edge set is contained in another's; pieces may
/// overlap in a cover, so the optimum is unchanged. Ties keep the first.
fn maximal(mut cands: Vec<Candidate>) -> Vec<Candidate> {
    cands.sort_by_key(|c| std::cmp::Reverse(c.mask.count_ones()));
    let mut kept: Vec<Candidate> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| k.mask & c.mask == c.mask) {
            kept.push(c);
        }
    }
    kept
}

struct Search<'a> {
    cands: &'a [Candidate],
    /// Candidate indices containing each edge, largest first.
    by_edge: Vec<Vec<usize>>,
    max_size: u32,
    best: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, uncovered: u32, chosen: &mut Vec<usize>) {
        self.nodes += 1;
        if uncovered == 0 {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        let bound = uncovered.count_ones().div_ceil(self.max_size) as usize;
        if chosen.len() + bound >= self.best.len() {
            return;
        }
        let e = uncovered.trailing_zeros() as usize;
        for i in 0..self.by_edge[e].len() {
            let c = self.by_edge[e][i];
            chosen.push(c);
            self.run(uncovered & !self.cands[c].mask, chosen);
            chosen.pop();
        }
    }
}

/// Exact minimum number of pieces of the given kind covering `K_n`.
pub fn min_cover(ps: &PointSet, kind: OracleKind) -> Result<OracleResult> {
    let n = ps.len();
    if n > kind.limit() {
        return Err(Error::SizeGuard {
            what: "exact minimum cover",
            n,
            limit: kind.limit(),
        });
    }
    if n < 2 {
        return Err(Error::Precondition("need at least two points".into()));
    }
    ps.check_general_position()?;
    let cands = candidates(ps, kind)?;
    let m = n * (n - 1) / 2;
    let mut by_edge = vec![Vec::new(); m];
    for (i, c) in cands.iter().enumerate() {
        for (e, list) in by_edge.iter_mut().enumerate() {
            if c.mask >> e & 1 == 1 {
                list.push(i);
            }
        }
    }
    let mut search = Search {
        cands: &cands,
        by_edge,
        max_size: cands.iter().map(|c| c.mask.count_ones()).max().unwrap_or(1),
        // one candidate per edge is always a cover; start just above it
        best: (0..=m).collect(),
        nodes: 0,
    };
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    search.run(full, &mut Vec::new());
    let pieces: Vec<Piece> = search.best.iter().map(|&i| cands[i].piece.clone()).collect();
    Ok(OracleResult {
        kind,
        n,
        optimum: pieces.len(),
        witness: Cover::new(ps, pieces),
        candidates: cands.len(),
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::check_coverage;
    use crate::pointgen::{gen_convex, gen_uniform, Provenance};

    fn brute_monotone(ps: &PointSet) -> BTreeSet<Vec<usize>> {
        let mut seqs = Vec::new();
        all_sequences(ps.len(), &mut Vec::new(), &mut vec![false; ps.len()], &mut seqs);
        seqs.into_iter()
            .filter(|s| is_monotone_path(ps, &PathPiece::new(s.clone())).unwrap().is_some())
            .collect()
    }

    #[test]
    fn two_points_one_path() {
        let ps = PointSet::from_xy(&[(0, 0), (5, 2)]);
        assert_eq!(enumerate_monotone_paths(&ps).unwrap().len(), 1);
        assert_eq!(min_cover(&ps, OracleKind::MonotonePath).unwrap().optimum, 1);
    }

    #[test]
    fn triangle_paths() {
        let ps = PointSet::from_xy(&[(0, 0), (10, 1), (3, 8)]);
        let paths = enumerate_monotone_paths(&ps).unwrap();
        // three edges plus the three 2-edge paths through each middle vertex
        assert_eq!(paths.len(), 6);
        let got: BTreeSet<Vec<usize>> = paths.into_iter().map(|p| p.vertices).collect();
        assert_eq!(got, brute_monotone(&ps));
    }

    #[test]
    fn enumeration_matches_sequence_brute_force() {
        for n in 3..=6 {
            for seed in 0..4 {
                let ps = gen_uniform(n, seed).unwrap();
                let got: BTreeSet<Vec<usize>> = enumerate_monotone_paths(&ps).unwrap().into_iter().map(|p| p.vertices).collect();
                assert_eq!(got, brute_monotone(&ps), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn triangle_needs_two() {
        let ps = PointSet::from_xy(&[(0, 0), (10, 1), (3, 8)]);
        for kind in [OracleKind::MonotonePath, OracleKind::NoncrossingPath] {
            assert_eq!(min_cover(&ps, kind).unwrap().optimum, 2);
        }
        assert_eq!(min_cover(&ps, OracleKind::PlaneMatching).unwrap().optimum, 3);
    }

    #[test]
    fn convex_pentagon_needs_five_matchings() {
        let ps = gen_convex(5, 3).unwrap();
        let r = min_cover(&ps, OracleKind::PlaneMatching).unwrap();
        assert_eq!(r.optimum, 5);
        assert!(check_coverage(&ps, &r.witness).pass);
    }

    #[test]
    fn witnesses_verify() {
        for kind in [OracleKind::MonotonePath, OracleKind::NoncrossingPath, OracleKind::PlaneMatching] {
            for n in 2..=6 {
                let ps = gen_uniform(n, 11).unwrap();
                let r = min_cover(&ps, kind).unwrap();
                let rep = check_coverage(&ps, &r.witness);
                assert!(rep.pass, "{kind:?} n={n}: {:?}", rep.failures);
                assert_eq!(r.witness.len(), r.optimum);
            }
        }
    }

    #[test]
    fn size_guards() {
        let ps = gen_uniform(7, 0).unwrap();
        assert!(matches!(min_cover(&ps, OracleKind::PlaneMatching), Err(Error::SizeGuard { .. })));
        let ps = gen_uniform(9, 0).unwrap();
        assert!(matches!(enumerate_monotone_paths(&ps), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn invariant_under_scaling_and_translation() {
        let ps = gen_uniform(6, 4).unwrap();
        let small: Vec<(i64, i64)> = ps.points.iter().map(|p| (p.x >> 8, p.y >> 8)).collect();
        let small = PointSet::from_coords(&small, Provenance::default()).unwrap();
        let moved: Vec<(i64, i64)> = small.points.iter().map(|p| (3 * p.x - 777, 3 * p.y + 5)).collect();
        let moved = PointSet::from_coords(&moved, Provenance::default()).unwrap();
        for kind in [OracleKind::MonotonePath, OracleKind::PlaneMatching] {
            assert_eq!(min_cover(&small, kind).unwrap().optimum, min_cover(&moved, kind).unwrap().optimum);
        }
    }
}
