//! SVG pictures of boards and grids. Coordinates become floats only at the
//! last step, for drawing.

use std::fmt::Write;

use crate::board::{Owner, PointSet};
use crate::game::Overlay;
use crate::geom::{convex_hull, to_f64, Direction, Point};
use crate::grid::GridPointSet;
use crate::oracle::HoleCertificate;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const BLOCK_COLORS: [&str; 3] = ["#d95f02", "#1b9e77", "#7570b3"];

/// Affine map from board coordinates to the picture, y pointing up.
struct View {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl View {
    fn fit(points: &[(f64, f64)]) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        View {
            // center the shorter side
            x0: x0 - (span - (x1 - x0)) / 2.0,
            y0: y0 - (span - (y1 - y0)) / 2.0,
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.x0) * self.scale,
            SIZE - MARGIN - (y - self.y0) * self.scale,
        )
    }

    fn pt(&self, p: &Point) -> (f64, f64) {
        self.map(p.to_f64())
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn polygon(out: &mut String, view: &View, pts: &[Point], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = view.pt(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(out, r#"<polygon points="{}" {style}/>"#, coords.join(" "));
}

fn polyline(out: &mut String, view: &View, pts: &[(f64, f64)], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = view.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" {style}/>"#, coords.join(" "));
}

fn dot(out: &mut String, view: &View, p: &Point, r: f64, fill: &str) {
    let (x, y) = view.pt(p);
    let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"/>"#);
}

fn circle(out: &mut String, view: &View, c: &Point, radius: f64, style: &str) {
    let (x, y) = view.pt(c);
    let r = radius * view.scale;
    let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="none" {style}/>"#);
}

/// The region of a strip, with its rays cut off at the picture's size.
fn strip_outline(view: &View, points: &[Point], direction: &Direction) -> Vec<(f64, f64)> {
    let (dx, dy) = direction.to_f64();
    let len = (dx * dx + dy * dy).sqrt().max(1e-300);
    let reach = 2.0 * SIZE / view.scale;
    let far = |p: &Point| {
        let (x, y) = p.to_f64();
        (x + dx / len * reach, y + dy / len * reach)
    };
    let mut outline = vec![far(&points[0])];
    outline.extend(points.iter().map(Point::to_f64));
    outline.push(far(&points[points.len() - 1]));
    outline
}

/// A board with Maker points in blue and Breaker points in red, optional
/// strategy overlays, and the certified hole if any.
pub fn render_board(board: &PointSet, overlays: &[Overlay], hole: Option<&HoleCertificate>) -> String {
    let mut extent: Vec<(f64, f64)> = board.points().iter().map(Point::to_f64).collect();
    for o in overlays {
        if let Overlay::Disk { center, radius_squared } | Overlay::Circle { center, radius_squared, .. } = o {
            let (x, y) = center.to_f64();
            let r = to_f64(radius_squared).sqrt();
            extent.extend([(x - r, y - r), (x + r, y + r)]);
        }
    }
    let view = View::fit(&extent);
    let mut out = String::new();
    header(&mut out);
    for o in overlays {
        match o {
            Overlay::Strip { points, direction } if !points.is_empty() => {
                polyline(
                    &mut out,
                    &view,
                    &strip_outline(&view, points, direction),
                    r##"stroke="#4daf4a" stroke-width="1.5" stroke-dasharray="4 3""##,
                );
            }
            Overlay::Disk { center, radius_squared } => {
                circle(&mut out, &view, center, to_f64(radius_squared).sqrt(), r##"stroke="#999" stroke-width="1""##);
            }
            Overlay::Circle {
                center,
                radius_squared,
                guards,
            } => {
                circle(
                    &mut out,
                    &view,
                    center,
                    to_f64(radius_squared).sqrt(),
                    r##"stroke="#e41a1c" stroke-width="0.8" stroke-dasharray="2 2""##,
                );
                for g in guards {
                    dot(&mut out, &view, g, 1.5, "#e41a1c");
                }
            }
            _ => {}
        }
    }
    if let Some(h) = hole {
        polygon(
            &mut out,
            &view,
            &h.vertices,
            r##"fill="#ffd92f" fill-opacity="0.5" stroke="#b8860b" stroke-width="2""##,
        );
    }
    for (p, owner) in board.iter() {
        let fill = match owner {
            Owner::Maker => "#377eb8",
            Owner::Breaker => "#e41a1c",
        };
        dot(&mut out, &view, p, 3.0, fill);
    }
    out.push_str("</svg>\n");
    out
}

/// The bent grid with sibling lines drawn in one color per block, Breaker
/// points in red and an extracted hole if given.
pub fn render_grid(g: &GridPointSet, breaker: &[Point], hole: Option<&HoleCertificate>) -> String {
    let extent: Vec<(f64, f64)> = g.points.iter().chain(breaker).map(Point::to_f64).collect();
    let view = View::fit(&extent);
    let mut out = String::new();
    header(&mut out);
    for (block, ids) in g.sibling_lines.iter().enumerate() {
        for &l in ids {
            let pts: Vec<(f64, f64)> = g.line_points(l).iter().map(Point::to_f64).collect();
            polyline(
                &mut out,
                &view,
                &pts,
                &format!(r#"stroke="{}" stroke-width="0.8" stroke-opacity="0.7""#, BLOCK_COLORS[block]),
            );
        }
    }
    if let Some(h) = hole {
        polygon(
            &mut out,
            &view,
            &convex_hull(&h.vertices),
            r##"fill="#ffd92f" fill-opacity="0.6" stroke="#b8860b" stroke-width="2""##,
        );
    }
    for p in &g.points {
        dot(&mut out, &view, p, 2.5, "#377eb8");
    }
    for p in breaker {
        dot(&mut out, &view, p, 2.5, "#e41a1c");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::int;
    use crate::oracle::{find_k_hole, HoleRule};

    #[test]
    fn board_picture_has_every_point() {
        let set = PointSet::from_labeled(
            &[Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(1, 3)],
            &[Point::from_ints(9, 9)],
        );
        let hole = find_k_hole(&set, 3, HoleRule::Monochromatic);
        let overlays = vec![
            Overlay::Strip {
                points: vec![Point::from_ints(0, 0), Point::from_ints(1, 3)],
                direction: Direction::down(),
            },
            Overlay::Disk {
                center: Point::from_ints(4, 0),
                radius_squared: int(1),
            },
        ];
        let svg = render_board(&set, &overlays, hole.as_ref());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches(r##"fill="#377eb8""##).count(), 3);
        assert_eq!(svg.matches(r##"fill="#e41a1c""##).count(), 1);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn empty_board_renders() {
        let svg = render_board(&PointSet::new(), &[], None);
        assert!(svg.contains("<rect"));
    }

    #[test]
    fn grid_picture_colors_blocks() {
        let g = crate::grid::build_sampled(3, 3, 0, 8).unwrap();
        let svg = render_grid(&g, &[], None);
        for (j, c) in BLOCK_COLORS.iter().enumerate() {
            assert_eq!(svg.matches(*c).count(), g.sibling_lines[j].len());
        }
        assert_eq!(svg.matches("<circle").count(), g.len());
    }
}
