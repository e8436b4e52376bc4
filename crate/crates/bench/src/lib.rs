//! Shared inputs for the benchmarks.

use kaleido_core::isometry::{Polyline, Viewport};
use kaleido_core::knots::{GaussCode, KnotDiagram};

/// A wavy stroke inside the unit cell.
pub fn sample_stroke(points: usize) -> Polyline {
    let pts = (0..points)
        .map(|k| {
            let t = k as f64 / (points.max(2) - 1) as f64;
            [0.1 + 0.6 * t, 0.3 + 0.2 * (6.0 * t).sin()]
        })
        .collect();
    Polyline::new(pts)
}

/// A square viewport of side `cells` lattice units anchored at the origin.
pub fn square_view(cells: f64) -> Viewport {
    Viewport::new([0.0, 0.0], [cells, cells]).expect("positive side")
}

/// The alternating diagram of the `(2, n)` torus curve, `n` odd.
pub fn torus_knot(n: u32) -> KnotDiagram {
    let labels: Vec<String> = (1..=n).chain(1..=n).map(|k| format!("{k}+")).collect();
    let code = GaussCode::parse(&labels.join(" ")).expect("planar torus curve");
    let [even_over, _] = code.alternating_diagrams();
    even_over
}

/// Points spread over the unit sphere by the golden-angle spiral.
pub fn sphere_points(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}
