//! Exact predicates on integer points.
//!
//! Coordinates are bounded by [`COORD_LIMIT`] in absolute value, so every
//! determinant and dot product below is evaluated exactly in `i128`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

/// Largest admissible absolute coordinate value (2^30).
pub const COORD_LIMIT: i64 = 1 << 30;

/// A point of a [`PointSet`](crate::pointgen::PointSet), identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
    pub id: usize,
}

impl Point {
    pub const fn new(x: i64, y: i64, id: usize) -> Self {
        Point { x, y, id }
    }

    /// Difference vector `other - self`.
    #[inline]
    pub fn to(&self, other: &Point) -> (i64, i64) {
        (other.x - self.x, other.y - self.y)
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }

    #[inline]
    pub fn dist2(&self, other: &Point) -> i128 {
        let (dx, dy) = self.to(other);
        dx as i128 * dx as i128 + dy as i128 * dy as i128
    }
}

#[inline]
pub fn cross(ax: i64, ay: i64, bx: i64, by: i64) -> i128 {
    ax as i128 * by as i128 - ay as i128 * bx as i128
}

#[inline]
pub fn dot(ax: i64, ay: i64, bx: i64, by: i64) -> i128 {
    ax as i128 * bx as i128 + ay as i128 * by as i128
}

/// Sign of the determinant `(b - a) x (c - a)`: +1 for a counterclockwise
/// turn, -1 for clockwise, 0 for collinear.
#[inline]
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let (ux, uy) = a.to(b);
    let (vx, vy) = a.to(c);
    match cross(ux, uy, vx, vy).cmp(&0) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// True iff the open segments `ab` and `cd` share a point.
///
/// Callers pass segments without common endpoints; a shared endpoint is
/// never reported as a crossing.
pub fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        // collinear: compare extents along the dominant axis
        let (dx, dy) = a.to(b);
        let key = |p: &Point| if dx.abs() >= dy.abs() { p.x } else { p.y };
        let (lo1, hi1) = minmax(key(a), key(b));
        let (lo2, hi2) = minmax(key(c), key(d));
        return lo1.max(lo2) < hi1.min(hi2);
    }
    false
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A nonzero integer direction, reduced by the gcd of its components.
///
/// Orientation is kept: `u` and `-u` are distinct directions. Use
/// [`Direction::axis`] for the sign-canonical representative of the line.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Direction {
    dx: i64,
    dy: i64,
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

impl TryFrom<[i64; 2]> for Direction {
    type Error = String;

    fn try_from(v: [i64; 2]) -> Result<Self, Self::Error> {
        Direction::new(v[0], v[1]).ok_or_else(|| "direction must be nonzero".to_string())
    }
}

impl From<Direction> for [i64; 2] {
    fn from(d: Direction) -> Self {
        [d.dx, d.dy]
    }
}

impl Direction {
    pub const X: Direction = Direction { dx: 1, dy: 0 };
    pub const Y: Direction = Direction { dx: 0, dy: 1 };

    pub fn new(dx: i64, dy: i64) -> Option<Self> {
        if dx == 0 && dy == 0 {
            return None;
        }
        let g = gcd(dx, dy);
        Some(Direction {
            dx: dx / g,
            dy: dy / g,
        })
    }

    /// Direction of the vector from `p` to `q`.
    pub fn between(p: &Point, q: &Point) -> Option<Self> {
        let (dx, dy) = p.to(q);
        Direction::new(dx, dy)
    }

    /// Nearest integer vector of length ~`scale` at the given angle.
    pub fn from_angle(theta: f64, scale: f64) -> Self {
        let dx = (scale * theta.cos()).round() as i64;
        let dy = (scale * theta.sin()).round() as i64;
        Direction::new(dx, dy).expect("scale too small for a nonzero direction")
    }

    #[inline]
    pub fn dx(&self) -> i64 {
        self.dx
    }

    #[inline]
    pub fn dy(&self) -> i64 {
        self.dy
    }

    /// Rotation by +90 degrees.
    pub fn perp_ccw(self) -> Self {
        Direction {
            dx: -self.dy,
            dy: self.dx,
        }
    }

    /// Rotation by -90 degrees.
    pub fn perp_cw(self) -> Self {
        Direction {
            dx: self.dy,
            dy: -self.dx,
        }
    }

    /// True for directions with angle in `[0, pi)`.
    #[inline]
    pub fn upper(&self) -> bool {
        self.dy > 0 || (self.dy == 0 && self.dx > 0)
    }

    /// Sign-canonical representative: `dy > 0`, or `dy == 0` and `dx > 0`.
    pub fn axis(self) -> Self {
        if self.upper() {
            self
        } else {
            -self
        }
    }

    #[inline]
    pub fn cross(&self, other: &Direction) -> i128 {
        cross(self.dx, self.dy, other.dx, other.dy)
    }

    #[inline]
    pub fn dot_dir(&self, other: &Direction) -> i128 {
        dot(self.dx, self.dy, other.dx, other.dy)
    }

    /// Inner product with the position vector of `p`.
    #[inline]
    pub fn dot(&self, p: &Point) -> i128 {
        dot(self.dx, self.dy, p.x, p.y)
    }

    /// Inner product with a raw vector.
    #[inline]
    pub fn dot_vec(&self, v: (i64, i64)) -> i128 {
        dot(self.dx, self.dy, v.0, v.1)
    }

    /// Vector sum, reduced. `None` for opposite directions.
    pub fn sum(self, other: Direction) -> Option<Direction> {
        Direction::new(self.dx + other.dx, self.dy + other.dy)
    }

    pub fn angle(&self) -> f64 {
        (self.dy as f64).atan2(self.dx as f64)
    }

    /// Counterclockwise angular order starting at the positive x axis,
    /// i.e. comparison of angles in `[0, 2pi)`.
    pub fn angle_cmp(&self, other: &Direction) -> Ordering {
        match (self.upper(), other.upper()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => 0.cmp(&self.cross(other)),
        }
    }
}

impl Neg for Direction {
    type Output = Direction;

    fn neg(self) -> Direction {
        Direction {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

/// Compare the projections of `p` and `q` onto `u`.
#[inline]
pub fn project_compare(p: &Point, q: &Point, u: Direction) -> Ordering {
    u.dot(p).cmp(&u.dot(q))
}

/// Total order along `u` with projection ties resolved along `u` rotated by
/// +90 degrees. This is the projection order for the direction `u` turned
/// counterclockwise by an infinitesimal angle, so every sorted sequence is
/// a monotone order for a direction arbitrarily close to `u`.
#[inline]
pub fn sweep_cmp(p: &Point, q: &Point, u: Direction) -> Ordering {
    project_compare(p, q, u).then_with(|| project_compare(p, q, u.perp_ccw()))
}

/// Sort key realizing [`sweep_cmp`].
#[inline]
pub fn sweep_key(p: &Point, u: Direction) -> (i128, i128) {
    (u.dot(p), u.perp_ccw().dot(p))
}

/// Open arc of directions from `lo` counterclockwise to `hi`, of angular
/// length in `(0, pi]`. Both ends are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngularInterval {
    pub lo: Direction,
    pub hi: Direction,
}

impl AngularInterval {
    /// The open half-circle of directions with positive inner product with `e`.
    pub fn halfplane(e: Direction) -> Self {
        AngularInterval {
            lo: e.perp_cw(),
            hi: e.perp_ccw(),
        }
    }

    pub fn contains(&self, u: Direction) -> bool {
        if self.lo.cross(&self.hi) > 0 {
            self.lo.cross(&u) > 0 && u.cross(&self.hi) > 0
        } else {
            self.lo.cross(&u) > 0
        }
    }

    /// An exact direction strictly inside the arc.
    pub fn witness(&self) -> Direction {
        if self.lo.cross(&self.hi) > 0 {
            self.lo.sum(self.hi).expect("arc shorter than pi")
        } else {
            self.lo.perp_ccw()
        }
    }
}

/// The open set of directions `u` with `<e, u> > 0` for every `e`, or `None`
/// when the vectors do not fit in an open half-plane.
pub fn monotonicity_interval(edge_vectors: &[Direction]) -> Option<AngularInterval> {
    let (&first, rest) = edge_vectors.split_first()?;
    let mut ccw_ext = first;
    let mut cw_ext = first;
    for e in rest {
        let c = first.cross(e);
        if c > 0 {
            if ccw_ext.cross(e) > 0 {
                ccw_ext = *e;
            }
        } else if c < 0 {
            if cw_ext.cross(e) < 0 {
                cw_ext = *e;
            }
        } else if first.dot_dir(e) < 0 {
            return None;
        }
    }
    if ccw_ext != first || cw_ext != first {
        // angular span from cw_ext to ccw_ext must stay below pi
        if cw_ext.cross(&ccw_ext) <= 0 {
            return None;
        }
    }
    Some(AngularInterval {
        lo: ccw_ext.perp_cw(),
        hi: cw_ext.perp_ccw(),
    })
}

/// Some collinear triple `(i, j, k)` with `i < j < k`, or `None` when the
/// points are in general position. Coincident points count as collinear.
/// Runs in `O(n^2)` expected time by hashing reduced directions per apex.
pub fn find_collinear_triple(points: &[Point]) -> Option<(usize, usize, usize)> {
    use std::collections::HashMap;
    let n = points.len();
    let mut seen: HashMap<(i64, i64), usize> = HashMap::with_capacity(n);
    for i in 0..n {
        seen.clear();
        for j in i + 1..n {
            let d = match Direction::between(&points[i], &points[j]) {
                Some(d) => d.axis(),
                None => return Some((i, j, j)),
            };
            if let Some(&prev) = seen.get(&(d.dx, d.dy)) {
                return Some((i, prev, j));
            }
            seen.insert((d.dx, d.dy), j);
        }
    }
    None
}
