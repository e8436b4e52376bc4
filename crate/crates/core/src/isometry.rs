//! The 17 wallpaper groups as concrete groups of planar isometries, and stroke replication.
//!
//! Each group is stored as a lattice plus a hard-coded generator table. From the generators
//! we close a set of coset representatives modulo the lattice (one per point-group element);
//! every group element is then a representative followed by a lattice translation.

use nalgebra::{Matrix2, Vector2};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::chi::{classify, GeometryClass};
use crate::notation::OrbifoldSignature;

/// Tolerance for deciding that two isometries are the same element.
pub const DEDUP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsometryError {
    #[error("{0} is not one of the 17 Euclidean signatures")]
    NotEuclidean(String),
    #[error("cell scale must be positive and finite (got {0})")]
    BadScale(f64),
    #[error("viewport is degenerate: max must exceed min in both coordinates")]
    DegenerateViewport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// `x -> linear * x + translation` with an orthogonal linear part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry2 {
    pub linear: Matrix2<f64>,
    pub translation: Vector2<f64>,
    pub orientation: Orientation,
}

impl Isometry2 {
    /// Panics unless `linear` is orthogonal to within `1e-12`.
    pub fn new(linear: Matrix2<f64>, translation: Vector2<f64>) -> Self {
        let gram = linear.transpose() * linear;
        assert!((gram - Matrix2::identity()).abs().max() < 1e-12, "linear part is not orthogonal: {linear}");
        let orientation = if linear.determinant() > 0.0 { Orientation::Preserving } else { Orientation::Reversing };
        Isometry2 { linear, translation, orientation }
    }

    pub fn identity() -> Self {
        Isometry2::new(Matrix2::identity(), Vector2::zeros())
    }

    pub fn translation(t: Vector2<f64>) -> Self {
        Isometry2::new(Matrix2::identity(), t)
    }

    /// Rotation by `angle` about the origin.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Isometry2::new(Matrix2::new(c, -s, s, c), Vector2::zeros())
    }

    pub fn apply(&self, p: Vector2<f64>) -> Vector2<f64> {
        self.linear * p + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry2) -> Isometry2 {
        Isometry2::new(self.linear * other.linear, self.linear * other.translation + self.translation)
    }

    pub fn inverse(&self) -> Isometry2 {
        let inv = self.linear.transpose();
        Isometry2::new(inv, -(inv * self.translation))
    }

    pub fn approx_eq(&self, other: &Isometry2, tol: f64) -> bool {
        (self.linear - other.linear).abs().max() <= tol && (self.translation - other.translation).abs().max() <= tol
    }

    pub fn is_translation(&self, tol: f64) -> bool {
        (self.linear - Matrix2::identity()).abs().max() <= tol
    }
}

#[derive(Serialize, Deserialize)]
struct IsometryRepr {
    m: [[f64; 2]; 2],
    t: [f64; 2],
}

impl Serialize for Isometry2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let l = &self.linear;
        IsometryRepr {
            m: [[l[(0, 0)], l[(0, 1)]], [l[(1, 0)], l[(1, 1)]]],
            t: [self.translation.x, self.translation.y],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Isometry2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IsometryRepr::deserialize(d)?;
        let linear = Matrix2::new(r.m[0][0], r.m[0][1], r.m[1][0], r.m[1][1]);
        let gram = linear.transpose() * linear;
        if (gram - Matrix2::identity()).abs().max() >= 1e-9 {
            return Err(D::Error::custom("linear part is not orthogonal"));
        }
        Ok(Isometry2::new_unchecked(linear, Vector2::new(r.t[0], r.t[1])))
    }
}

impl Isometry2 {
    fn new_unchecked(linear: Matrix2<f64>, translation: Vector2<f64>) -> Self {
        let orientation = if linear.determinant() > 0.0 { Orientation::Preserving } else { Orientation::Reversing };
        Isometry2 { linear, translation, orientation }
    }
}

/// Axis-aligned window in pattern units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Viewport {
    pub fn new(min: [f64; 2], max: [f64; 2]) -> Result<Self, IsometryError> {
        let v = Viewport { min, max };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<(), IsometryError> {
        let ok = (0..2).all(|i| self.min[i].is_finite() && self.max[i].is_finite() && self.max[i] > self.min[i]);
        if ok {
            Ok(())
        } else {
            Err(IsometryError::DegenerateViewport)
        }
    }

    /// Grow (or with a negative margin, shrink) by `margin` on every side.
    pub fn expanded(&self, margin: f64) -> Viewport {
        Viewport {
            min: [self.min[0] - margin, self.min[1] - margin],
            max: [self.max[0] + margin, self.max[1] + margin],
        }
    }

    pub fn contains(&self, p: Vector2<f64>) -> bool {
        p.x >= self.min[0] && p.x <= self.max[0] && p.y >= self.min[1] && p.y <= self.max[1]
    }

    fn corners(&self) -> [Vector2<f64>; 4] {
        [
            Vector2::new(self.min[0], self.min[1]),
            Vector2::new(self.max[0], self.min[1]),
            Vector2::new(self.max[0], self.max[1]),
            Vector2::new(self.min[0], self.max[1]),
        ]
    }
}

/// An open polyline in pattern units. Serialized as `{"points": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<[f64; 2]>,
}

impl Polyline {
    pub fn new(points: Vec<[f64; 2]>) -> Self {
        Polyline { points }
    }

    fn transformed(&self, g: &Isometry2) -> Polyline {
        Polyline {
            points: self
                .points
                .iter()
                .map(|p| {
                    let q = g.apply(Vector2::new(p[0], p[1]));
                    [q.x, q.y]
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LatticeKind {
    Square,
    Hexagonal,
}

#[derive(Debug, Clone)]
pub struct WallpaperGroup {
    pub signature: OrbifoldSignature,
    pub lattice: [Vector2<f64>; 2],
    pub generators: Vec<Isometry2>,
    pub point_group_order: usize,
    cosets: Vec<Isometry2>,
}

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

fn mat(a: f64, b: f64, c: f64, d: f64) -> Matrix2<f64> {
    Matrix2::new(a, b, c, d)
}

fn gen(m: Matrix2<f64>, tx: f64, ty: f64) -> Isometry2 {
    Isometry2::new(m, Vector2::new(tx, ty))
}

/// Non-translation generators for the unit cell, keyed by canonical signature.
fn generator_table(sig: &str) -> Option<(LatticeKind, Vec<Isometry2>)> {
    use LatticeKind::*;
    let half_turn = mat(-1.0, 0.0, 0.0, -1.0);
    let quarter_turn = mat(0.0, -1.0, 1.0, 0.0);
    let third_turn = mat(-0.5, -HALF_SQRT3, HALF_SQRT3, -0.5);
    let sixth_turn = mat(0.5, -HALF_SQRT3, HALF_SQRT3, 0.5);
    let flip_y = mat(1.0, 0.0, 0.0, -1.0);
    let flip_x = mat(-1.0, 0.0, 0.0, 1.0);
    let swap = mat(0.0, 1.0, 1.0, 0.0);
    let anti_swap = mat(0.0, -1.0, -1.0, 0.0);
    let table = match sig {
        "o" => (Square, vec![]),
        "2222" => (Square, vec![gen(half_turn, 0.0, 0.0)]),
        "442" => (Square, vec![gen(quarter_turn, 0.0, 0.0)]),
        "333" => (Hexagonal, vec![gen(third_turn, 0.0, 0.0)]),
        "632" => (Hexagonal, vec![gen(sixth_turn, 0.0, 0.0)]),
        "*2222" => (Square, vec![gen(flip_x, 0.0, 0.0), gen(flip_y, 0.0, 0.0)]),
        "*442" => (Square, vec![gen(quarter_turn, 0.0, 0.0), gen(flip_y, 0.0, 0.0)]),
        // mirrors through every 3-fold centre
        "*333" => (Hexagonal, vec![gen(third_turn, 0.0, 0.0), gen(flip_x, 0.0, 0.0)]),
        "*632" => (Hexagonal, vec![gen(sixth_turn, 0.0, 0.0), gen(flip_y, 0.0, 0.0)]),
        // mirror in x + y = 1/2, missing the 4-fold centres
        "4*2" => (Square, vec![gen(quarter_turn, 0.0, 0.0), gen(anti_swap, 0.5, 0.5)]),
        // mirror along a lattice direction swaps two of the 3-fold centres
        "3*3" => (Hexagonal, vec![gen(third_turn, 0.0, 0.0), gen(flip_y, 0.0, 0.0)]),
        // mirrors in y = 1/4 + k/2, half-turns at the lattice half-points
        "22*" => (Square, vec![gen(half_turn, 0.0, 0.0), gen(flip_y, 0.0, 0.5)]),
        // diagonal mirrors on the square lattice
        "2*22" => (Square, vec![gen(swap, 0.0, 0.0), gen(anti_swap, 0.0, 0.0)]),
        "**" => (Square, vec![gen(flip_y, 0.0, 0.0)]),
        "*x" => (Square, vec![gen(swap, 0.0, 0.0)]),
        // glide along y = 1/4
        "22x" => (Square, vec![gen(half_turn, 0.0, 0.0), gen(flip_y, 0.5, 0.5)]),
        "xx" => (Square, vec![gen(flip_y, 0.5, 0.0)]),
        _ => return None,
    };
    Some(table)
}

/// The wallpaper group for one of the 17 Euclidean signatures, scaled so that the lattice
/// vectors have length `cell_scale`.
pub fn group_for(sig: &OrbifoldSignature, cell_scale: f64) -> Result<WallpaperGroup, IsometryError> {
    if !(cell_scale.is_finite() && cell_scale > 0.0) {
        return Err(IsometryError::BadScale(cell_scale));
    }
    let canonical = sig.canonicalize();
    let key = canonical.to_string();
    if classify(&canonical) != GeometryClass::Euclidean {
        return Err(IsometryError::NotEuclidean(key));
    }
    let (kind, unit_gens) = generator_table(&key).ok_or_else(|| IsometryError::NotEuclidean(key.clone()))?;
    let lattice = match kind {
        LatticeKind::Square => [Vector2::new(cell_scale, 0.0), Vector2::new(0.0, cell_scale)],
        LatticeKind::Hexagonal => {
            [Vector2::new(cell_scale, 0.0), Vector2::new(0.5 * cell_scale, HALF_SQRT3 * cell_scale)]
        }
    };
    let mut generators = vec![Isometry2::translation(lattice[0]), Isometry2::translation(lattice[1])];
    generators.extend(unit_gens.iter().map(|g| Isometry2::new(g.linear, g.translation * cell_scale)));
    let cosets = close_cosets(&generators, &lattice);
    let point_group_order = cosets.len();
    Ok(WallpaperGroup { signature: canonical, lattice, generators, point_group_order, cosets })
}

fn lattice_matrix(lattice: &[Vector2<f64>; 2]) -> Matrix2<f64> {
    Matrix2::from_columns(lattice)
}

/// Translate `g` by a lattice vector so its translation has fractional coordinates in [0, 1).
fn reduce_mod_lattice(g: &Isometry2, lattice: &[Vector2<f64>; 2]) -> Isometry2 {
    let basis = lattice_matrix(lattice);
    let inv = basis.try_inverse().expect("lattice vectors are independent");
    let frac = (inv * g.translation).map(|f| {
        let r = f - f.floor();
        if r > 1.0 - 1e-9 {
            0.0
        } else {
            r
        }
    });
    Isometry2::new(g.linear, basis * frac)
}

fn close_cosets(generators: &[Isometry2], lattice: &[Vector2<f64>; 2]) -> Vec<Isometry2> {
    let mut reps = vec![Isometry2::identity()];
    let mut frontier = 0;
    while frontier < reps.len() {
        let current = reps[frontier];
        frontier += 1;
        for g in generators {
            let next = reduce_mod_lattice(&g.compose(&current), lattice);
            if !reps.iter().any(|r| r.approx_eq(&next, DEDUP_TOL)) {
                reps.push(next);
                assert!(reps.len() <= 12, "coset closure exceeded 12 elements");
            }
        }
    }
    reps
}

impl WallpaperGroup {
    /// Coset representatives modulo the lattice, one per point-group element.
    pub fn coset_representatives(&self) -> &[Isometry2] {
        &self.cosets
    }

    pub fn has_reversing_elements(&self) -> bool {
        self.cosets.iter().any(|g| g.orientation == Orientation::Reversing)
    }

    /// Corners of the unit cell: the parallelogram spanned by the lattice vectors.
    pub fn unit_cell(&self) -> [Vector2<f64>; 4] {
        let [a, b] = self.lattice;
        [Vector2::zeros(), a, a + b, b]
    }

    pub fn to_lattice_coords(&self, p: Vector2<f64>) -> Vector2<f64> {
        lattice_matrix(&self.lattice).try_inverse().expect("independent lattice") * p
    }
}

/// Every group element whose image of the unit cell meets `view` (boundary contact counts),
/// ordered by lattice offset and then by coset.
pub fn orbit_isometries(group: &WallpaperGroup, view: &Viewport) -> Result<Vec<Isometry2>, IsometryError> {
    view.validate()?;
    let cell = group.unit_cell();
    let view_poly = view.corners();
    let view_frac: Vec<Vector2<f64>> = view_poly.iter().map(|&p| group.to_lattice_coords(p)).collect();
    let (vmin, vmax) = bounds(&view_frac);
    let [a, b] = group.lattice;

    let mut out: Vec<((i64, i64, usize), Isometry2)> = Vec::new();
    for (idx, rep) in group.cosets.iter().enumerate() {
        let image: Vec<Vector2<f64>> = cell.iter().map(|&p| rep.apply(p)).collect();
        let image_frac: Vec<Vector2<f64>> = image.iter().map(|&p| group.to_lattice_coords(p)).collect();
        let (imin, imax) = bounds(&image_frac);
        let m_lo = (vmin.x - imax.x).floor() as i64 - 1;
        let m_hi = (vmax.x - imin.x).ceil() as i64 + 1;
        let n_lo = (vmin.y - imax.y).floor() as i64 - 1;
        let n_hi = (vmax.y - imin.y).ceil() as i64 + 1;
        for m in m_lo..=m_hi {
            for n in n_lo..=n_hi {
                let shift = a * m as f64 + b * n as f64;
                let moved: Vec<Vector2<f64>> = image.iter().map(|p| p + shift).collect();
                if convex_polygons_meet(&moved, &view_poly) {
                    out.push(((m, n, idx), Isometry2::translation(shift).compose(rep)));
                }
            }
        }
    }
    out.sort_by_key(|(k, _)| *k);
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

fn bounds(points: &[Vector2<f64>]) -> (Vector2<f64>, Vector2<f64>) {
    let mut lo = Vector2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vector2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (lo, hi)
}

/// Separating-axis test for two convex polygons; touching counts as meeting.
fn convex_polygons_meet(p: &[Vector2<f64>], q: &[Vector2<f64>]) -> bool {
    const EPS: f64 = 1e-12;
    for poly in [p, q] {
        for i in 0..poly.len() {
            let e = poly[(i + 1) % poly.len()] - poly[i];
            let axis = Vector2::new(-e.y, e.x);
            if axis.norm_squared() == 0.0 {
                continue;
            }
            let project = |pts: &[Vector2<f64>]| {
                pts.iter()
                    .map(|v| v.dot(&axis))
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
            };
            let (plo, phi) = project(p);
            let (qlo, qhi) = project(q);
            let scale = axis.norm() * EPS;
            if phi < qlo - scale || qhi < plo - scale {
                return false;
            }
        }
    }
    true
}

/// Apply every isometry of the orbit over `view` to every stroke and clip the images to
/// `view`. Images that miss the view entirely are dropped; coincident images are kept.
pub fn replicate(
    group: &WallpaperGroup,
    strokes: &[Polyline],
    view: &Viewport,
) -> Result<Vec<Polyline>, IsometryError> {
    let orbit = orbit_isometries(group, view)?;
    let mut out = Vec::new();
    for g in &orbit {
        for stroke in strokes {
            out.extend(clip_polyline(&stroke.transformed(g), view));
        }
    }
    Ok(out)
}

/// Clip a polyline to the closed viewport, splitting it where it leaves and re-enters.
pub fn clip_polyline(line: &Polyline, view: &Viewport) -> Vec<Polyline> {
    let pts: Vec<Vector2<f64>> = line.points.iter().map(|p| Vector2::new(p[0], p[1])).collect();
    match pts.len() {
        0 => return vec![],
        1 => {
            return if view.contains(pts[0]) { vec![line.clone()] } else { vec![] };
        }
        _ => {}
    }
    let mut pieces: Vec<Vec<[f64; 2]>> = Vec::new();
    let mut open = false;
    for w in pts.windows(2) {
        match clip_segment(w[0], w[1], view) {
            Some((p, q, start_clipped, end_clipped)) => {
                if !(open && !start_clipped) {
                    pieces.push(vec![[p.x, p.y]]);
                }
                pieces.last_mut().expect("piece started").push([q.x, q.y]);
                open = !end_clipped;
            }
            None => open = false,
        }
    }
    pieces.into_iter().map(Polyline::new).collect()
}

/// Liang–Barsky. Returns the clipped endpoints and whether each end was moved.
fn clip_segment(p: Vector2<f64>, q: Vector2<f64>, view: &Viewport) -> Option<(Vector2<f64>, Vector2<f64>, bool, bool)> {
    let d = q - p;
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    let checks =
        [(-d.x, p.x - view.min[0]), (d.x, view.max[0] - p.x), (-d.y, p.y - view.min[1]), (d.y, view.max[1] - p.y)];
    for (pk, qk) in checks {
        if pk == 0.0 {
            if qk < 0.0 {
                return None;
            }
        } else {
            let r = qk / pk;
            if pk < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let a = if t0 > 0.0 { p + d * t0 } else { p };
    let b = if t1 < 1.0 { p + d * t1 } else { q };
    Some((a, b, t0 > 0.0, t1 < 1.0))
}
