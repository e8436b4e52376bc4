//! SVG drawings of disk tilings and stereographic circle images.

use std::fmt::Write as _;

use kaleido_core::hyperbolic::{DiskPoint, DiskTriangle, HLine};
use kaleido_core::projection::{image_of_cut, PlaneCircle, PlaneCut};

const SIZE: f64 = 800.0;

fn disk_xy(p: DiskPoint) -> (f64, f64) {
    (SIZE / 2.0 * (1.0 + p.u()), SIZE / 2.0 * (1.0 - p.v()))
}

/// The unit circle with every tile drawn as a path of circular arcs, shaded by orientation.
pub fn tiling(tiles: &[DiskTriangle]) -> String {
    let mut out = String::new();
    let half = SIZE / 2.0;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ =
        writeln!(out, r##"<circle cx="{half}" cy="{half}" r="{half}" fill="#fff" stroke="#000" stroke-width="1.5"/>"##);
    for tile in tiles {
        let v = tile.vertices;
        let sides = tile.sides();
        let (x0, y0) = disk_xy(v[0]);
        let mut d = format!("M{x0:.3} {y0:.3}");
        for k in 0..3 {
            let (p, q) = (v[k], v[(k + 1) % 3]);
            let (qx, qy) = disk_xy(q);
            match sides[k] {
                HLine::Arc { cx, cy, radius } => {
                    let cross = (p.u() - cx) * (q.v() - cy) - (p.v() - cy) * (q.u() - cx);
                    let sweep = u8::from(cross > 0.0);
                    let r = radius * half;
                    let _ = write!(d, " A{r:.3} {r:.3} 0 0 {sweep} {qx:.3} {qy:.3}");
                }
                _ => {
                    let _ = write!(d, " L{qx:.3} {qy:.3}");
                }
            }
        }
        let signed_area = (v[1].u() - v[0].u()) * (v[2].v() - v[0].v()) - (v[1].v() - v[0].v()) * (v[2].u() - v[0].u());
        let fill = if signed_area > 0.0 { "#2b4c7e" } else { "#e8eef7" };
        let _ = writeln!(out, r##"<path d="{d} Z" fill="{fill}" stroke="#333" stroke-width="0.3"/>"##);
    }
    out.push_str("</svg>\n");
    out
}

/// Images of a latitude and longitude grid, with `highlight` drawn on top, in the square
/// `[-extent, extent]²` of the plane.
pub fn sphere_grid(highlight: &PlaneCut, extent: f64) -> String {
    let scale = SIZE / (2.0 * extent);
    let to_px = |x: f64, y: f64| ((x + extent) * scale, (extent - y) * scale);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let mut draw = |circle: PlaneCircle, stroke: &str, width: f64| match circle {
        PlaneCircle::Circle { cx, cy, r } => {
            let (x, y) = to_px(cx, cy);
            let _ = writeln!(
                out,
                r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
                r * scale
            );
        }
        PlaneCircle::Line { nx, ny, offset } => {
            let reach = 4.0 * extent;
            let (px, py) = (nx * offset, ny * offset);
            let (x1, y1) = to_px(px - ny * reach, py + nx * reach);
            let (x2, y2) = to_px(px + ny * reach, py - nx * reach);
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="{width}"/>"#
            );
        }
    };
    for k in 1..12 {
        let z = -1.0 + k as f64 / 6.0;
        if let Ok(c) = image_of_cut(&PlaneCut { a: 0.0, b: 0.0, c: 1.0, d: -z }) {
            draw(c, "#999", 0.8);
        }
    }
    for k in 0..12 {
        let t = std::f64::consts::PI * k as f64 / 12.0;
        if let Ok(c) = image_of_cut(&PlaneCut { a: t.sin(), b: -t.cos(), c: 0.0, d: 0.0 }) {
            draw(c, "#999", 0.8);
        }
    }
    if let Ok(c) = image_of_cut(highlight) {
        draw(c, "#c0392b", 2.5);
    }
    out.push_str("</svg>\n");
    out
}
