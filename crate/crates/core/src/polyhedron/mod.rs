//! Closed polyhedral surfaces: Euler number, angle defects and the Gauss image.
//!
//! Faces are cyclic vertex lists oriented consistently, so that every undirected edge is
//! used once in each direction. Corner angles are measured from the actual edge vectors,
//! which keeps the defect well defined on skew faces.

mod builtin;
mod hull;
mod off;

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use builtin::{builtin, torus_grid, SOLIDS};
pub use hull::{convex_hull, HullError};
pub use off::{load_off, write_off};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("OFF parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("face {face} refers to vertex {index}, but there are only {count} vertices")]
    IndexOutOfRange { face: usize, index: usize, count: usize },
    #[error("face {face} is degenerate: {reason}")]
    DegenerateFace { face: usize, reason: String },
    #[error("non-manifold edges (each must border exactly 2 faces): {}", fmt_edges(.0))]
    NonManifoldEdges(Vec<(usize, usize, usize)>),
    #[error("faces around edge {a}-{b} are not oriented consistently")]
    InconsistentOrientation { a: usize, b: usize },
    #[error("a closed surface needs V >= 4, E >= 6, F >= 4 (got {v}, {e}, {f})")]
    TooSmall { v: usize, e: usize, f: usize },
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("vertex {vertex} has only {faces} incident faces")]
    TooFewFaces { vertex: usize, faces: usize },
    #[error("unknown solid {0:?}")]
    UnknownSolid(String),
}

fn fmt_edges(edges: &[(usize, usize, usize)]) -> String {
    edges.iter().map(|(a, b, n)| format!("{a}-{b} ({n} faces)")).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussImageError {
    #[error("vertex {0} is not convex; its Gauss image area is ambiguous")]
    NonConvex(usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A validated closed orientable polyhedral surface.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralSurface {
    vertices: Vec<Vector3<f64>>,
    faces: Vec<Vec<usize>>,
    /// directed edge (a, b) -> face that traverses it
    half_edges: HashMap<(usize, usize), usize>,
    vertex_faces: Vec<Vec<usize>>,
}

/// Angle defects at every vertex, their total, and the gap to `2π (V - E + F)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub per_vertex: Vec<(usize, f64)>,
    pub total: f64,
    pub euler_number: i64,
    pub descartes_residual: f64,
}

impl PolyhedralSurface {
    pub fn new(vertices: Vec<Vector3<f64>>, faces: Vec<Vec<usize>>) -> Result<Self, SurfaceError> {
        let count = vertices.len();
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(SurfaceError::DegenerateFace { face: fi, reason: format!("only {} vertices", face.len()) });
            }
            for &i in face {
                if i >= count {
                    return Err(SurfaceError::IndexOutOfRange { face: fi, index: i, count });
                }
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(SurfaceError::DegenerateFace { face: fi, reason: "repeated vertex".into() });
            }
        }

        let mut undirected: HashMap<(usize, usize), usize> = HashMap::new();
        for face in &faces {
            for (a, b) in cyclic_pairs(face) {
                *undirected.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut bad: Vec<(usize, usize, usize)> =
            undirected.iter().filter(|(_, &n)| n != 2).map(|(&(a, b), &n)| (a, b, n)).collect();
        if !bad.is_empty() {
            bad.sort_unstable();
            return Err(SurfaceError::NonManifoldEdges(bad));
        }

        let mut half_edges = HashMap::new();
        for (fi, face) in faces.iter().enumerate() {
            for (a, b) in cyclic_pairs(face) {
                if half_edges.insert((a, b), fi).is_some() {
                    return Err(SurfaceError::InconsistentOrientation { a: a.min(b), b: a.max(b) });
                }
            }
        }

        let (v, e, f) = (count, undirected.len(), faces.len());
        if v < 4 || e < 6 || f < 4 {
            return Err(SurfaceError::TooSmall { v, e, f });
        }

        let mut vertex_faces = vec![Vec::new(); count];
        for (fi, face) in faces.iter().enumerate() {
            for &i in face {
                vertex_faces[i].push(fi);
            }
        }
        Ok(PolyhedralSurface { vertices, faces, half_edges, vertex_faces })
    }

    pub fn vertices(&self) -> &[Vector3<f64>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Undirected edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.half_edges.keys().filter(|(a, b)| a < b).copied().collect();
        e.sort_unstable();
        e
    }

    pub fn euler_number(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    fn check_vertex(&self, vertex: usize) -> Result<(), SurfaceError> {
        if vertex >= self.vertices.len() {
            return Err(SurfaceError::InvalidVertex(vertex));
        }
        let n = self.vertex_faces[vertex].len();
        if n < 3 {
            return Err(SurfaceError::TooFewFaces { vertex, faces: n });
        }
        Ok(())
    }

    /// Angle of `face` at the position `k` of its vertex list.
    fn corner_angle(&self, face: usize, k: usize) -> f64 {
        let f = &self.faces[face];
        let n = f.len();
        let here = self.vertices[f[k]];
        let prev = self.vertices[f[(k + n - 1) % n]] - here;
        let next = self.vertices[f[(k + 1) % n]] - here;
        prev.cross(&next).norm().atan2(prev.dot(&next))
    }

    /// `2π` minus the sum of the face angles at `vertex`.
    pub fn angle_defect(&self, vertex: usize) -> Result<f64, SurfaceError> {
        self.check_vertex(vertex)?;
        let sum: f64 = self.vertex_faces[vertex]
            .iter()
            .map(|&fi| {
                let k = self.faces[fi].iter().position(|&i| i == vertex).expect("incidence");
                self.corner_angle(fi, k)
            })
            .sum();
        Ok(2.0 * PI - sum)
    }

    pub fn total_defect(&self) -> Result<DefectReport, SurfaceError> {
        let per_vertex =
            (0..self.vertex_count()).map(|v| self.angle_defect(v).map(|d| (v, d))).collect::<Result<Vec<_>, _>>()?;
        let total: f64 = per_vertex.iter().map(|(_, d)| d).sum();
        let euler_number = self.euler_number();
        let descartes_residual = (total - 2.0 * PI * euler_number as f64).abs();
        Ok(DefectReport { per_vertex, total, euler_number, descartes_residual })
    }

    /// Sum of the interior angles of `face`.
    pub fn face_angle_sum(&self, face: usize) -> f64 {
        (0..self.faces[face].len()).map(|k| self.corner_angle(face, k)).sum()
    }

    /// Largest distance of a face vertex from the face's best plane (through the centroid,
    /// normal by Newell's method).
    pub fn face_flatness(&self, face: usize) -> f64 {
        let n = self.face_normal(face);
        let c = self.face_centroid(face);
        self.faces[face].iter().map(|&i| (self.vertices[i] - c).dot(&n).abs()).fold(0.0, f64::max)
    }

    /// Unit normal by Newell's method; outward for counter-clockwise faces.
    pub fn face_normal(&self, face: usize) -> Vector3<f64> {
        let f = &self.faces[face];
        let mut n = Vector3::zeros();
        for (a, b) in cyclic_pairs(f) {
            let (p, q) = (self.vertices[a], self.vertices[b]);
            n += Vector3::new((p.y - q.y) * (p.z + q.z), (p.z - q.z) * (p.x + q.x), (p.x - q.x) * (p.y + q.y));
        }
        n.normalize()
    }

    pub fn face_centroid(&self, face: usize) -> Vector3<f64> {
        let f = &self.faces[face];
        f.iter().map(|&i| self.vertices[i]).sum::<Vector3<f64>>() / f.len() as f64
    }

    /// Faces around `vertex`, counterclockwise seen from outside.
    pub fn faces_around(&self, vertex: usize) -> Result<Vec<usize>, SurfaceError> {
        self.check_vertex(vertex)?;
        let start = self.vertex_faces[vertex][0];
        let mut ring = vec![start];
        let mut face = start;
        loop {
            let previous = self.predecessor(face, vertex);
            face = self.half_edges[&(vertex, previous)];
            if face == start {
                break;
            }
            ring.push(face);
            assert!(ring.len() <= self.vertex_faces[vertex].len(), "vertex {vertex} is not a disk");
        }
        Ok(ring)
    }

    fn predecessor(&self, face: usize, vertex: usize) -> usize {
        let f = &self.faces[face];
        let k = f.iter().position(|&i| i == vertex).expect("vertex on face");
        f[(k + f.len() - 1) % f.len()]
    }

    fn successor(&self, face: usize, vertex: usize) -> usize {
        let f = &self.faces[face];
        let k = f.iter().position(|&i| i == vertex).expect("vertex on face");
        f[(k + 1) % f.len()]
    }

    /// Convex when every edge at `vertex` folds by less than π, i.e. each neighbouring face
    /// lies strictly below the plane of the face across the edge.
    pub fn is_convex_vertex(&self, vertex: usize) -> Result<bool, SurfaceError> {
        self.check_vertex(vertex)?;
        for &fi in &self.vertex_faces[vertex] {
            let w = self.successor(fi, vertex);
            let across = self.half_edges[&(w, vertex)];
            let x = self.successor(across, vertex);
            let n = self.face_normal(fi);
            if n.dot(&(self.vertices[x] - self.vertices[vertex])) >= -1e-12 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Area of the spherical polygon traced by the unit face normals around `vertex`.
    pub fn gauss_image_area(&self, vertex: usize) -> Result<f64, GaussImageError> {
        if !self.is_convex_vertex(vertex)? {
            return Err(GaussImageError::NonConvex(vertex));
        }
        let normals: Vec<Vector3<f64>> = self.faces_around(vertex)?.into_iter().map(|f| self.face_normal(f)).collect();
        let m = normals.len();
        let angle_sum: f64 = (0..m)
            .map(|i| {
                let here = normals[i];
                let tangent = |other: Vector3<f64>| other - here * here.dot(&other);
                let a = tangent(normals[(i + m - 1) % m]);
                let b = tangent(normals[(i + 1) % m]);
                a.cross(&b).norm().atan2(a.dot(&b))
            })
            .sum();
        Ok(angle_sum - (m as f64 - 2.0) * PI)
    }

    /// The dual map: one vertex per face (at its centroid) and one face per vertex, listing
    /// the surrounding faces in rotational order.
    pub fn dual_map(&self) -> Result<PolyhedralSurface, SurfaceError> {
        let vertices = (0..self.face_count()).map(|f| self.face_centroid(f)).collect();
        let faces = (0..self.vertex_count()).map(|v| self.faces_around(v)).collect::<Result<Vec<_>, _>>()?;
        PolyhedralSurface::new(vertices, faces)
    }

    pub fn scaled(&self, factor: f64) -> PolyhedralSurface {
        let mut s = self.clone();
        s.vertices.iter_mut().for_each(|v| *v *= factor);
        s
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges().into_iter().map(|(a, b)| (self.vertices[a] - self.vertices[b]).norm()).collect()
    }
}

fn cyclic_pairs(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    face.iter().copied().zip(face.iter().copied().cycle().skip(1))
}
