use std::f64::consts::PI;

use nalgebra::Vector3;

use super::{PolyhedralSurface, SurfaceError};

pub const SOLIDS: [&str; 5] = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"];

/// One of the five regular solids, centred at the origin with unit edges.
pub fn builtin(name: &str) -> Result<PolyhedralSurface, SurfaceError> {
    let surface = match name {
        "tetrahedron" => triangulated_solid(&[
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(1.0, -1.0, -1.0),
            Vector3::new(-1.0, 1.0, -1.0),
            Vector3::new(-1.0, -1.0, 1.0),
        ]),
        "octahedron" => triangulated_solid(&octahedron_points()),
        "icosahedron" => triangulated_solid(&icosahedron_points()),
        "cube" => triangulated_solid(&octahedron_points()).dual_map()?,
        "dodecahedron" => triangulated_solid(&icosahedron_points()).dual_map()?,
        other => return Err(SurfaceError::UnknownSolid(other.to_string())),
    };
    let edge = surface.edge_lengths()[0];
    Ok(surface.scaled(1.0 / edge))
}

fn octahedron_points() -> Vec<Vector3<f64>> {
    let mut pts = Vec::new();
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let mut p = Vector3::zeros();
            p[axis] = sign;
            pts.push(p);
        }
    }
    pts
}

fn icosahedron_points() -> Vec<Vector3<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            pts.push(Vector3::new(0.0, s1, s2 * phi));
            pts.push(Vector3::new(s1, s2 * phi, 0.0));
            pts.push(Vector3::new(s2 * phi, 0.0, s1));
        }
    }
    pts
}

/// Faces of a convex deltahedron whose vertices all lie on a sphere: every triple of
/// mutually adjacent vertices at the shortest distance, oriented outward.
fn triangulated_solid(points: &[Vector3<f64>]) -> PolyhedralSurface {
    let n = points.len();
    let mut shortest = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            shortest = shortest.min((points[i] - points[j]).norm());
        }
    }
    let adjacent = |i: usize, j: usize| ((points[i] - points[j]).norm() - shortest).abs() < 1e-9 * shortest;
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    let normal = (points[j] - points[i]).cross(&(points[k] - points[i]));
                    if normal.dot(&points[i]) > 0.0 {
                        faces.push(vec![i, j, k]);
                    } else {
                        faces.push(vec![i, k, j]);
                    }
                }
            }
        }
    }
    PolyhedralSurface::new(points.to_vec(), faces).expect("regular deltahedron is a closed surface")
}

/// A torus of revolution sampled on a `rings x segments` grid of planar quadrilaterals.
pub fn torus_grid(rings: usize, segments: usize, major: f64, minor: f64) -> Result<PolyhedralSurface, SurfaceError> {
    let mut vertices = Vec::with_capacity(rings * segments);
    for i in 0..rings {
        let u = 2.0 * PI * i as f64 / rings as f64;
        for j in 0..segments {
            let v = 2.0 * PI * j as f64 / segments as f64;
            let r = major + minor * v.cos();
            vertices.push(Vector3::new(r * u.cos(), r * u.sin(), minor * v.sin()));
        }
    }
    let idx = |i: usize, j: usize| (i % rings) * segments + (j % segments);
    let mut faces = Vec::with_capacity(rings * segments);
    for i in 0..rings {
        for j in 0..segments {
            faces.push(vec![idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
        }
    }
    PolyhedralSurface::new(vertices, faces)
}
