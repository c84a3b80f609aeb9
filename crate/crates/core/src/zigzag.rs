//! Plane Hamiltonian zig-zag paths through a prescribed edge, built by
//! greedy minimum-angle steps on each side of the edge's line.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;

use crate::covers::{is_noncrossing, is_zigzag_path, Cover, PathPiece, Piece, PieceKind, Shape};
use crate::edges::{Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::geom::{dot, orient, Point};
use crate::pointgen::PointSet;

/// Compares the angles `p q x` and `p q y` at `q` exactly.
pub fn angle_cmp_at(p: &Point, q: &Point, x: &Point, y: &Point) -> Ordering {
    let (sx, sy) = (orient(q, p, x).signum(), orient(q, p, y).signum());
    if sx == sy && sx != 0 {
        // same side of the ray q->p: y is farther round iff x, y turn the same way
        let t = orient(q, x, y).signum();
        return if t == 0 {
            Ordering::Equal
        } else if t == sx {
            Ordering::Less
        } else {
            Ordering::Greater
        };
    }
    // compare cosines: dot(v, x-q) / |x-q| against dot(v, y-q) / |y-q|
    let cos_key = |z: &Point| {
        let ((vx, vy), (wx, wy)) = (q.to(p), q.to(z));
        let d = BigInt::from(dot(vx, vy, wx, wy));
        let l = BigInt::from(q.dist2(z));
        (d.sign() == num_bigint::Sign::Minus, d.clone() * d, l)
    };
    let (nx, dx2, lx) = cos_key(x);
    let (ny, dy2, ly) = cos_key(y);
    match (nx, ny) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        // both cosines nonnegative: larger cosine is the smaller angle
        (false, false) => (&dy2 * &lx).cmp(&(&dx2 * &ly)),
        (true, true) => (&dx2 * &ly).cmp(&(&dy2 * &lx)),
    }
}

/// Greedy half-path `prev, cur, ...` through all of `rest`. Each chosen
/// point leaves every remaining one on the far side of the new edge from
/// `prev`, so all candidates share a side of the ray `cur -> prev` and one
/// orientation test ranks two of them.
fn grow(ps: &PointSet, mut prev: usize, mut cur: usize, mut rest: Vec<usize>) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let (p, q) = (ps.point(prev), ps.point(cur));
        let side = orient(q, p, ps.point(rest[0]));
        let mut best = 0;
        for i in 0..rest.len() {
            let x = ps.point(rest[i]);
            if orient(q, p, x) != side || side == 0 {
                return Err(Error::Construction(format!("greedy step at {cur} sees both sides of its last edge")));
            }
            if i > 0 && orient(q, x, ps.point(rest[best])) == side {
                best = i;
            }
        }
        let next = rest.swap_remove(best);
        out.push(next);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Hamiltonian path containing the edge `ab` that is plane and zig-zag.
/// The construction is checked before returning.
pub fn zigzag_ham_path(ps: &PointSet, a: usize, b: usize) -> Result<PathPiece> {
    ps.check_id(a)?;
    ps.check_id(b)?;
    if a == b {
        return Err(Error::Precondition("endpoints must differ".into()));
    }
    let (pa, pb) = (ps.point(a), ps.point(b));
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for p in &ps.points {
        if p.id != a && p.id != b {
            match orient(pa, pb, p).signum() {
                1 => left.push(p.id),
                -1 => right.push(p.id),
                _ => return Err(Error::NotGeneralPosition(a, b, p.id)),
            }
        }
    }
    let ahead = grow(ps, a, b, left)?;
    let behind = grow(ps, b, a, right)?;
    let mut vertices: Vec<usize> = behind.iter().rev().copied().collect();
    vertices.extend([a, b]);
    vertices.extend(&ahead);

    for (side, ids) in [(1, &ahead), (-1, &behind)] {
        if ids.iter().any(|&v| orient(pa, pb, ps.point(v)).signum() != side) {
            return Err(Error::Construction(format!("half-path for ({a},{b}) left its halfplane")));
        }
    }
    let path = PathPiece::new(vertices);
    if path.vertices.len() != ps.len() {
        return Err(Error::Construction(format!("path for ({a},{b}) is not Hamiltonian")));
    }
    if let Some((e, f)) = is_noncrossing(ps, &Shape::Path(path.clone()))? {
        return Err(Error::Construction(format!("path for ({a},{b}) crosses itself at {e:?} and {f:?}")));
    }
    if !is_zigzag_path(ps, &path)? {
        return Err(Error::Construction(format!("path for ({a},{b}) is not zig-zag")));
    }
    Ok(path)
}

/// Covers `K_n` by zig-zag Hamiltonian paths: one path per pair not yet
/// covered in lexicographic order, then a greedy set-cover pass drops
/// redundant ones.
pub fn zigzag_ham_cover(ps: &PointSet) -> Result<Cover> {
    let n = ps.len();
    if n < 2 {
        return Err(Error::Precondition("need at least two points".into()));
    }
    let mut covered = EdgeSet::new(n);
    let mut paths = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !covered.contains(Edge::new(a, b)) {
                let p = zigzag_ham_path(ps, a, b)?;
                p.edges().for_each(|e| {
                    covered.insert(e);
                });
                paths.push(p);
            }
        }
    }
    // lazy greedy: stale gains only overestimate, so re-score on pop
    let sets: Vec<Vec<usize>> = paths.iter().map(|p| p.edges().map(|e| covered.index(e)).collect()).collect();
    let mut done = vec![false; covered.len()];
    let mut remaining = done.len();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = sets.iter().enumerate().map(|(i, s)| (s.len(), Reverse(i))).collect();
    let mut pieces = Vec::new();
    while remaining > 0 {
        let (stale, Reverse(i)) = heap.pop().expect("paths cover every edge");
        let gain = sets[i].iter().filter(|&&e| !done[e]).count();
        if gain < stale {
            heap.push((gain, Reverse(i)));
            continue;
        }
        for &e in &sets[i] {
            if !done[e] {
                done[e] = true;
                remaining -= 1;
            }
        }
        pieces.push(Piece::path(PieceKind::ZigzagPath, paths[i].vertices.clone(), None));
    }
    Ok(Cover::new(ps, pieces))
}
