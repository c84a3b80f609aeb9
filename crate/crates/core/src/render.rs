//! Static SVG drawings of point sets, cover pieces and witness paths.

use std::fmt::Write;

use crate::covers::{Cover, Shape};
use crate::geom::Direction;
use crate::pointgen::{Group, PointSet};

pub const CANVAS: f64 = 800.0;
const PAD: f64 = 20.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Clone, Debug, Default)]
pub struct RenderOptions<'a> {
    pub cover: Option<&'a Cover>,
    /// Drawn on top in black, e.g. a lower-bound witness.
    pub highlight: Option<&'a [usize]>,
    /// Arrow from the canvas center.
    pub direction: Option<Direction>,
    /// Cap on the number of pieces drawn.
    pub max_pieces: Option<usize>,
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(ps: &PointSet) -> Self {
        let xs = ps.points.iter().map(|p| p.x as f64);
        let ys = ps.points.iter().map(|p| p.y as f64);
        let (min_x, max_x) = xs.fold((f64::MAX, f64::MIN), |(a, b), x| (a.min(x), b.max(x)));
        let (min_y, max_y) = ys.fold((f64::MAX, f64::MIN), |(a, b), y| (a.min(y), b.max(y)));
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        Frame {
            min_x,
            max_y,
            scale: (CANVAS - 2.0 * PAD) / span,
        }
    }

    fn map(&self, ps: &PointSet, id: usize) -> (f64, f64) {
        let p = ps.point(id);
        (
            PAD + (p.x as f64 - self.min_x) * self.scale,
            PAD + (self.max_y - p.y as f64) * self.scale,
        )
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], color: &str, width: f64) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}" stroke-opacity="0.8"/>"#,
        coords.join(" ")
    )
    .expect("string write");
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
    writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="{width}" stroke-opacity="0.8"/>"#,
        a.0, a.1, b.0, b.1
    )
    .expect("string write");
}

pub fn render_svg(ps: &PointSet, opts: &RenderOptions) -> String {
    let f = Frame::new(ps);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .expect("string write");
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).expect("string write");

    if let Some(cover) = opts.cover {
        let limit = opts.max_pieces.unwrap_or(usize::MAX);
        for (i, piece) in cover.pieces.iter().take(limit).enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            match &piece.shape {
                Shape::Path(p) => {
                    let pts: Vec<(f64, f64)> = p.vertices.iter().map(|&v| f.map(ps, v)).collect();
                    polyline(&mut out, &pts, color, 1.5);
                }
                Shape::Matching(m) => {
                    for e in &m.edges {
                        line(&mut out, f.map(ps, e.u), f.map(ps, e.v), color, 1.5);
                    }
                }
            }
        }
    }
    if let Some(h) = opts.highlight {
        let pts: Vec<(f64, f64)> = h.iter().map(|&v| f.map(ps, v)).collect();
        polyline(&mut out, &pts, "black", 3.0);
    }
    if let Some(u) = opts.direction {
        let c = CANVAS / 2.0;
        let len = (u.dx() as f64).hypot(u.dy() as f64);
        let tip = (c + 60.0 * u.dx() as f64 / len, c - 60.0 * u.dy() as f64 / len);
        line(&mut out, (c, c), tip, "black", 2.0);
        writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/>"#, tip.0, tip.1).expect("string write");
    }
    for p in &ps.points {
        let (x, y) = f.map(ps, p.id);
        let fill = match ps.groups.as_ref().map(|g| g.group(p.id)) {
            Some(Group::A) => "#d62728",
            Some(Group::B) => "#2ca02c",
            Some(Group::C) => "#1f77b4",
            None => "#333333",
        };
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{fill}"><title>{}</title></circle>"#, p.id)
            .expect("string write");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{Piece, PieceKind};

    #[test]
    fn draws_every_point_and_piece() {
        let ps = PointSet::from_xy(&[(0, 0), (10, 2), (4, 9), (7, 5)]);
        let cover = Cover::new(&ps, vec![Piece::path(PieceKind::MonotonePath, vec![0, 3, 1], None)]);
        let svg = render_svg(
            &ps,
            &RenderOptions {
                cover: Some(&cover),
                highlight: Some(&[0, 2]),
                direction: Some(Direction::X),
                max_pieces: None,
            },
        );
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 5);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg, render_svg(&ps, &RenderOptions { cover: Some(&cover), highlight: Some(&[0, 2]), direction: Some(Direction::X), max_pieces: None }));
    }
}
