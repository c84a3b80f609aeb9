//! Six-point blocks: zig-zag decompositions of `K_6`, order types of six
//! points, `K_6` packings of `K_n`, and the covers assembled from them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::covers::{is_monotone_path, is_zigzag_path, Cover, PathPiece, Piece, PieceKind};
use crate::edges::{all_edges, total_edges, Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::geom::{orient, Point};
use crate::pointgen::PointSet;

/// The 15 pairs of `0..6` in lexicographic order.
const K6_PAIRS: [(usize, usize); 15] = {
    let mut out = [(0, 0); 15];
    let mut k = 0;
    let mut i = 0;
    while i < 6 {
        let mut j = i + 1;
        while j < 6 {
            out[k] = (i, j);
            k += 1;
            j += 1;
        }
        i += 1;
    }
    out
};

fn pair_bit(a: usize, b: usize) -> u16 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let k = K6_PAIRS.iter().position(|&p| p == (a, b)).expect("pair of 0..6");
    1 << k
}

/// Six point ids and five 3-edge zig-zag paths partitioning their 15 pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K6Block {
    pub ids: [usize; 6],
    pub paths: Vec<Vec<usize>>,
}

/// Local 3-edge zig-zag paths on six points, as (vertex sequence, edge mask),
/// one per reversal class.
fn zigzag_candidates(pts: &[Point; 6]) -> Vec<([usize; 4], u16)> {
    let mut out = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                for d in 0..6 {
                    let seq = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| seq[i] != seq[j]));
                    if !distinct || a > d {
                        continue;
                    }
                    if orient(&pts[b], &pts[c], &pts[a]) * orient(&pts[b], &pts[c], &pts[d]) < 0 {
                        out.push((seq, pair_bit(a, b) | pair_bit(b, c) | pair_bit(c, d)));
                    }
                }
            }
        }
    }
    out
}

fn exact_cover(cands: &[([usize; 4], u16)], used: u16, chosen: &mut Vec<usize>) -> bool {
    if used == 0x7fff {
        return true;
    }
    let low = 1u16 << (!used).trailing_zeros();
    for (i, &(_, mask)) in cands.iter().enumerate() {
        if mask & low != 0 && mask & used == 0 {
            chosen.push(i);
            if exact_cover(cands, used | mask, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Partitions the 15 edges among six points into five 3-edge zig-zag
/// paths by exhaustive search (first solution in a fixed order).
pub fn k6_zigzag_decomposition(ps: &PointSet, ids: [usize; 6]) -> Result<K6Block> {
    for &i in &ids {
        ps.check_id(i)?;
    }
    let pts: [Point; 6] = ids.map(|i| *ps.point(i));
    for (i, j, k) in triples6() {
        if orient(&pts[i], &pts[j], &pts[k]) == 0 {
            return Err(Error::NotGeneralPosition(ids[i], ids[j], ids[k]));
        }
    }
    let cands = zigzag_candidates(&pts);
    let mut chosen = Vec::new();
    if !exact_cover(&cands, 0, &mut chosen) {
        return Err(Error::NoDecomposition(ids));
    }
    let paths = chosen.iter().map(|&c| cands[c].0.iter().map(|&l| ids[l]).collect()).collect();
    Ok(K6Block { ids, paths })
}

fn triples6() -> impl Iterator<Item = (usize, usize, usize)> {
    (0..6).flat_map(|i| (i + 1..6).flat_map(move |j| (j + 1..6).map(move |k| (i, j, k))))
}

/// Order-type signature of six points: the lexicographically smallest
/// vector of the 20 orientation signs `(i < j < k)` over all relabelings,
/// with reflections (all signs negated) identified.
pub fn order_type_signature(pts: &[Point]) -> Result<[i8; 20]> {
    if pts.len() != 6 {
        return Err(Error::Precondition("order type signatures are for six points".into()));
    }
    let mut table = [[[0i8; 6]; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                if i != j && j != k && i != k {
                    let s = orient(&pts[i], &pts[j], &pts[k]);
                    if s == 0 {
                        return Err(Error::NotGeneralPosition(pts[i].id, pts[j].id, pts[k].id));
                    }
                    table[i][j][k] = s;
                }
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> = triples6().collect();
    let mut best = [i8::MAX; 20];
    let mut perm = [0usize, 1, 2, 3, 4, 5];
    loop {
        for flip in [1i8, -1] {
            // compare lazily against the best so far
            let mut cand = [0i8; 20];
            let mut state = std::cmp::Ordering::Equal;
            for (t, &(i, j, k)) in triples.iter().enumerate() {
                let s = flip * table[perm[i]][perm[j]][perm[k]];
                cand[t] = s;
                if state == std::cmp::Ordering::Equal {
                    state = s.cmp(&best[t]);
                    if state == std::cmp::Ordering::Greater {
                        break;
                    }
                }
            }
            if state == std::cmp::Ordering::Less {
                best = cand;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (0..a.len().saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackMode {
    Exact,
    Greedy,
}

/// Edge-disjoint six-point blocks of the abstract `K_n` and the edges they
/// leave uncovered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingPlan {
    pub n: usize,
    pub blocks: Vec<[usize; 6]>,
    pub leftover: Vec<Edge>,
}

impl PackingPlan {
    /// Edge-disjointness of the blocks and exact accounting of the leftover.
    pub fn validate(&self) -> Result<()> {
        let mut count = vec![0u8; total_edges(self.n)];
        let set = EdgeSet::new(self.n);
        for b in &self.blocks {
            for &(i, j) in &K6_PAIRS {
                if b[i] >= self.n || b[j] >= self.n || b[i] == b[j] {
                    return Err(Error::Construction(format!("bad block {b:?}")));
                }
                count[set.index(Edge::new(b[i], b[j]))] += 1;
            }
        }
        for e in &self.leftover {
            count[set.index(*e)] += 1;
        }
        match count.iter().position(|&c| c != 1) {
            None => Ok(()),
            Some(i) => Err(Error::Construction(format!(
                "edge {:?} used {} times",
                set.edge_at(i),
                count[i]
            ))),
        }
    }
}

fn plan_from_blocks(n: usize, blocks: Vec<[usize; 6]>) -> PackingPlan {
    let mut used = EdgeSet::new(n);
    for b in &blocks {
        for &(i, j) in &K6_PAIRS {
            used.insert(Edge::new(b[i], b[j]));
        }
    }
    PackingPlan {
        n,
        blocks,
        leftover: used.complement(),
    }
}

/// Lines of the projective plane of order 5: 31 points, 31 lines of six
/// points, every pair on exactly one line.
fn projective_plane_5() -> Vec<[usize; 6]> {
    // points: normalized vectors of GF(5)^3
    let mut pts: Vec<[u8; 3]> = Vec::new();
    for a in 0..5u8 {
        for b in 0..5u8 {
            for c in 0..5u8 {
                let v = [a, b, c];
                if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                    if lead == 1 {
                        pts.push(v);
                    }
                }
            }
        }
    }
    // lines are indexed by the same normalized vectors
    pts.iter()
        .map(|l| {
            let on: Vec<usize> = (0..pts.len())
                .filter(|&i| (0..3).map(|t| l[t] as u32 * pts[i][t] as u32).sum::<u32>() % 5 == 0)
                .collect();
            on.try_into().expect("six points per line")
        })
        .collect()
}

/// Packs `K_6` blocks into `K_n`.
///
/// Exact mode returns a decomposition with no leftover. The necessary
/// conditions are `5 | n - 1` and `15 | C(n, 2)`; beyond them a design
/// needs `b >= n` blocks (Fisher's inequality) with `b = n(n-1)/30`, which
/// rules out 16 and 21. Exact constructions are provided for 6 and 31.
///
/// Greedy mode repeatedly finds a `K_6` in the graph of unused edges with a
/// randomized depth-first clique search, until a search over the whole
/// graph fails or the node budget runs out.
pub fn pack_k6(n: usize, mode: PackMode, seed: u64) -> Result<PackingPlan> {
    match mode {
        PackMode::Exact => pack_exact(n),
        PackMode::Greedy => pack_greedy(n, seed, 50_000_000),
    }
}

fn pack_exact(n: usize) -> Result<PackingPlan> {
    let divisible = n >= 6 && (n - 1).is_multiple_of(5) && total_edges(n).is_multiple_of(15);
    if !divisible {
        return Err(Error::PackingInfeasible {
            n,
            reason: "needs 5 | n-1 and 15 | C(n,2)".into(),
        });
    }
    let b = total_edges(n) / 15;
    match n {
        6 => Ok(plan_from_blocks(6, vec![[0, 1, 2, 3, 4, 5]])),
        31 => Ok(plan_from_blocks(31, projective_plane_5())),
        _ if b < n => Err(Error::PackingInfeasible {
            n,
            reason: format!("a decomposition would have {b} blocks on {n} points, below Fisher's bound b >= n"),
        }),
        _ => Err(Error::PackingInfeasible {
            n,
            reason: "no exact construction implemented for this order".into(),
        }),
    }
}

/// Largest number of pairwise edge-disjoint `K_6` that can fit in `K_n` by
/// the pairwise-intersection count: `m` blocks meeting pairwise in at most
/// one vertex span at least `6m - C(m, 2)` vertices.
pub fn k6_packing_counting_bound(n: usize) -> usize {
    let trivial = total_edges(n) / 15;
    match (1..=6).take_while(|&m| 6 * m - m * (m - 1) / 2 <= n).last() {
        Some(m) if m < 6 => m.min(trivial),
        _ => trivial,
    }
}

/// Adjacency bitsets of the unused-edge graph.
struct Graph {
    words: usize,
    adj: Vec<Vec<u64>>,
}

impl Graph {
    fn complete(n: usize) -> Self {
        let words = n.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; n];
        for (v, row) in adj.iter_mut().enumerate() {
            for u in 0..n {
                if u != v {
                    row[u / 64] |= 1 << (u % 64);
                }
            }
        }
        Graph { words, adj }
    }

    fn set(&mut self, a: usize, b: usize, present: bool) {
        for (x, y) in [(a, b), (b, a)] {
            if present {
                self.adj[x][y / 64] |= 1 << (y % 64);
            } else {
                self.adj[x][y / 64] &= !(1 << (y % 64));
            }
        }
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + t)
        })
    })
}

/// Depth-first search for a clique of size 6 within `cand`, visiting
/// vertices in `rank` order. Returns false when the budget is exhausted.
fn find_k6(g: &Graph, rank: &[usize], clique: &mut Vec<usize>, cand: &[u64], budget: &mut u64) -> Option<bool> {
    if clique.len() == 6 {
        return Some(true);
    }
    let need = 6 - clique.len();
    let count: usize = cand.iter().map(|w| w.count_ones() as usize).sum();
    if count < need {
        return Some(false);
    }
    let mut order: Vec<usize> = bits(cand).collect();
    order.sort_unstable_by_key(|&v| rank[v]);
    let mut rest = cand.to_vec();
    for v in order {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        rest[v / 64] &= !(1 << (v % 64));
        let next: Vec<u64> = (0..g.words).map(|w| rest[w] & g.adj[v][w]).collect();
        clique.push(v);
        match find_k6(g, rank, clique, &next, budget) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        clique.pop();
    }
    Some(false)
}

/// Adds `K_6` blocks to `blocks` until none is left in `g` whose first
/// (lowest-rank) vertex lies in `roots`. Returns false if the node budget ran out.
fn greedy_fill(g: &mut Graph, blocks: &mut Vec<[usize; 6]>, roots: &[u64], rng: &mut ChaCha8Rng, budget: &mut u64) -> bool {
    let n = g.adj.len();
    let mut rank = vec![0; n];
    let mut shuffled: Vec<usize> = (0..n).collect();
    loop {
        // low-degree vertices first, random among equals
        shuffled.shuffle(rng);
        for (pos, &v) in shuffled.iter().enumerate() {
            let degree: usize = g.adj[v].iter().map(|w| w.count_ones() as usize).sum();
            rank[v] = degree * n + pos;
        }
        let mut found = None;
        let mut starts: Vec<usize> = bits(roots).collect();
        starts.sort_unstable_by_key(|&v| rank[v]);
        for v in starts {
            let mut clique = vec![v];
            match find_k6(g, &rank, &mut clique, &g.adj[v].clone(), budget) {
                Some(true) => {
                    found = Some(clique);
                    break;
                }
                Some(false) => {}
                None => return false,
            }
        }
        let Some(clique) = found else {
            return true;
        };
        let mut b: [usize; 6] = clique.try_into().expect("six vertices");
        b.sort_unstable();
        for &(i, j) in &K6_PAIRS {
            g.set(b[i], b[j], false);
        }
        blocks.push(b);
    }
}

/// Local-search rounds after the initial greedy packing: remove a few
/// random blocks, refill greedily around their vertices, and keep the
/// result unless it has fewer blocks.
const REPACK_ROUNDS: usize = 4000;

fn pack_greedy(n: usize, seed: u64, node_budget: u64) -> Result<PackingPlan> {
    if n < 6 {
        return Ok(plan_from_blocks(n, Vec::new()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::complete(n);
    let mut blocks = Vec::new();
    let mut budget = node_budget;
    let everyone: Vec<u64> = {
        let mut w = vec![0u64; g.words];
        for v in 0..n {
            w[v / 64] |= 1 << (v % 64);
        }
        w
    };
    let mut live = greedy_fill(&mut g, &mut blocks, &everyone, &mut rng, &mut budget);
    for _ in 0..REPACK_ROUNDS {
        if !live || blocks.len() < 2 {
            break;
        }
        let saved_blocks = blocks.clone();
        let saved_adj = g.adj.clone();
        let mut roots = vec![0u64; g.words];
        for _ in 0..2 {
            let b = blocks.swap_remove(rng.gen_range(0..blocks.len()));
            for &(i, j) in &K6_PAIRS {
                g.set(b[i], b[j], true);
            }
            for v in b {
                roots[v / 64] |= 1 << (v % 64);
            }
        }
        live = greedy_fill(&mut g, &mut blocks, &roots, &mut rng, &mut budget);
        if blocks.len() < saved_blocks.len() {
            blocks = saved_blocks;
            g.adj = saved_adj;
        }
    }
    blocks.sort_unstable();
    let plan = plan_from_blocks(n, blocks);
    plan.validate()?;
    Ok(plan)
}

/// Groups the edges into 2-edge paths sharing a vertex, plus one single
/// edge per component with an odd edge count: `sum ceil(m_c / 2)` pieces.
///
/// Vertices are processed in depth-first post-order; each pairs its unused
/// edges other than the tree edge to its parent, and an odd one out is
/// paired with that tree edge.
pub fn pair_edges(n: usize, edges: &[Edge]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        adj[e.u].push((e.v, k));
        adj[e.v].push((e.u, k));
    }
    let mut used = vec![false; edges.len()];
    let mut visited = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if visited[root] || adj[root].is_empty() {
            continue;
        }
        // iterative DFS recording post-order and parent edges
        let mut post = Vec::new();
        let mut parent_edge = vec![usize::MAX; n];
        let mut stack = vec![(root, 0usize)];
        visited[root] = true;
        while let Some(&mut (v, ref mut it)) = stack.last_mut() {
            if *it < adj[v].len() {
                let (w, k) = adj[v][*it];
                *it += 1;
                if !visited[w] {
                    visited[w] = true;
                    parent_edge[w] = k;
                    stack.push((w, 0));
                }
            } else {
                post.push(v);
                stack.pop();
            }
        }
        for v in post {
            let pe = parent_edge[v];
            let mut pending = Vec::new();
            for &(w, k) in &adj[v] {
                if k != pe && !used[k] {
                    used[k] = true;
                    pending.push(w);
                }
            }
            while pending.len() >= 2 {
                let (a, b) = (pending.pop().expect("two"), pending.pop().expect("two"));
                out.push(vec![a, v, b]);
            }
            if let Some(a) = pending.pop() {
                if pe != usize::MAX {
                    used[pe] = true;
                    let e = edges[pe];
                    let parent = if e.u == v { e.v } else { e.u };
                    out.push(vec![a, v, parent]);
                } else {
                    out.push(vec![a, v]);
                }
            }
        }
    }
    out
}

/// Five zig-zag monotone paths per block, plus the leftover edges paired
/// into 2-edge paths.
pub fn k6_packing_cover(ps: &PointSet, plan: &PackingPlan) -> Result<Cover> {
    if plan.n != ps.len() {
        return Err(Error::Precondition(format!(
            "plan is for {} points, set has {}",
            plan.n,
            ps.len()
        )));
    }
    let mut pieces = Vec::new();
    for &b in &plan.blocks {
        let block = k6_zigzag_decomposition(ps, b)?;
        for p in block.paths {
            pieces.push(monotone_piece(ps, p)?);
        }
    }
    for p in pair_edges(ps.len(), &plan.leftover) {
        pieces.push(monotone_piece(ps, p)?);
    }
    let mut cover = Cover::new(ps, pieces);
    cover.blocks = plan.blocks.clone();
    Ok(cover)
}

fn monotone_piece(ps: &PointSet, vertices: Vec<usize>) -> Result<Piece> {
    let path = PathPiece::new(vertices);
    if !is_zigzag_path(ps, &path)? {
        return Err(Error::Construction(format!("path {:?} is not zig-zag", path.vertices)));
    }
    let iv = is_monotone_path(ps, &path)?
        .ok_or_else(|| Error::Construction(format!("path {:?} is not monotone", path.vertices)))?;
    Ok(Piece::path(PieceKind::MonotonePath, path.vertices, Some(iv.witness())))
}

/// Every edge of `K_n` in a 2-edge path (one single edge when `C(n, 2)` is
/// odd).
pub fn two_edge_cover(ps: &PointSet) -> Result<Cover> {
    let edges: Vec<Edge> = all_edges(ps.len()).collect();
    let pieces = pair_edges(ps.len(), &edges)
        .into_iter()
        .map(|p| monotone_piece(ps, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cover::new(ps, pieces))
}
