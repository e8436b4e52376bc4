use std::collections::HashMap;

use nalgebra::Vector3;
use thiserror::Error;

use super::{PolyhedralSurface, SurfaceError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HullError {
    #[error("need at least four points, got {0}")]
    TooFewPoints(usize),
    #[error("points are coplanar")]
    Coplanar,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Triangulated convex hull by incremental insertion. Points inside the hull, or on it to
/// within tolerance, are dropped and the surviving vertices renumbered in input order.
pub fn convex_hull(points: &[Vector3<f64>]) -> Result<PolyhedralSurface, HullError> {
    if points.len() < 4 {
        return Err(HullError::TooFewPoints(points.len()));
    }
    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
    let eps = 1e-10 * scale * scale * scale;

    let (a, b, c, d) = initial_simplex(points, eps).ok_or(HullError::Coplanar)?;
    let mut faces: Vec<[usize; 3]> = vec![[a, b, c], [a, c, d], [a, d, b], [b, d, c]];
    if volume(points, [a, b, c], d) > 0.0 {
        for f in &mut faces {
            f.swap(1, 2);
        }
    }

    for p in 0..points.len() {
        if [a, b, c, d].contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|&f| volume(points, f, p) > eps).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut directed: HashMap<(usize, usize), bool> = HashMap::new();
        for (f, &vis) in faces.iter().zip(&visible) {
            for k in 0..3 {
                directed.insert((f[k], f[(k + 1) % 3]), vis);
            }
        }
        let mut next = Vec::with_capacity(faces.len() + 2);
        for (f, &vis) in faces.iter().zip(&visible) {
            if vis {
                for k in 0..3 {
                    let (u, v) = (f[k], f[(k + 1) % 3]);
                    if directed.get(&(v, u)) == Some(&false) {
                        next.push([u, v, p]);
                    }
                }
            } else {
                next.push(*f);
            }
        }
        faces = next;
    }

    let mut used: Vec<usize> = faces.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let vertices = used.iter().map(|&v| points[v]).collect();
    let faces = faces.iter().map(|f| f.iter().map(|v| remap[v]).collect()).collect();
    Ok(PolyhedralSurface::new(vertices, faces)?)
}

/// Six times the signed volume of the tetrahedron on face `f` and point `p`; positive when
/// `p` lies on the outer side of a counterclockwise face.
fn volume(points: &[Vector3<f64>], f: [usize; 3], p: usize) -> f64 {
    let (a, b, c) = (points[f[0]], points[f[1]], points[f[2]]);
    (b - a).cross(&(c - a)).dot(&(points[p] - a))
}

fn initial_simplex(points: &[Vector3<f64>], eps: f64) -> Option<(usize, usize, usize, usize)> {
    let a = 0;
    let b =
        (1..points.len()).max_by(|&i, &j| (points[i] - points[a]).norm().total_cmp(&(points[j] - points[a]).norm()))?;
    let ab = points[b] - points[a];
    let c = (0..points.len()).max_by(|&i, &j| {
        ab.cross(&(points[i] - points[a])).norm().total_cmp(&ab.cross(&(points[j] - points[a])).norm())
    })?;
    let d = (0..points.len())
        .max_by(|&i, &j| volume(points, [a, b, c], i).abs().total_cmp(&volume(points, [a, b, c], j).abs()))?;
    (volume(points, [a, b, c], d).abs() > eps).then_some((a, b, c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_corners_with_interior_point() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push(Vector3::new((i & 1) as f64, ((i >> 1) & 1) as f64 + 0.01 * i as f64, ((i >> 2) & 1) as f64));
        }
        pts.push(Vector3::new(0.5, 0.5, 0.5));
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.vertex_count(), 8);
        assert_eq!(hull.euler_number(), 2);
    }

    #[test]
    fn degenerate_inputs() {
        let flat: Vec<_> = (0..5).map(|i| Vector3::new(i as f64, (i * i) as f64, 0.0)).collect();
        assert_eq!(convex_hull(&flat).unwrap_err(), HullError::Coplanar);
        assert_eq!(convex_hull(&flat[..3]).unwrap_err(), HullError::TooFewPoints(3));
    }
}
