//! The upper half-plane and unit disk models of the hyperbolic plane.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const ON_LINE_TOL: f64 = 1e-9;
const DEDUP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperbolicError {
    #[error("({0}, {1}) is not in the upper half-plane")]
    NotInHalfPlane(f64, f64),
    #[error("({0}, {1}) is not in the open unit disk")]
    NotInDisk(f64, f64),
    #[error("a geodesic needs two distinct points")]
    SamePoint,
    #[error("point lies on the line")]
    PointOnLine,
    #[error("point is too close to the line to separate {0} parallels")]
    TooCloseToLine(usize),
    #[error("line belongs to the other model")]
    WrongModel,
    #[error("triangle orders must be at least 2, got ({0}, {1}, {2})")]
    OrderTooSmall(u32, u32, u32),
    #[error("1/{0} + 1/{1} + 1/{2} is not below 1")]
    NotHyperbolic(u32, u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UhpPoint {
    x: f64,
    y: f64,
}

impl UhpPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, HyperbolicError> {
        if !(y > 0.0 && x.is_finite() && y.is_finite()) {
            return Err(HyperbolicError::NotInHalfPlane(x, y));
        }
        Ok(UhpPoint { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }

    fn z(self) -> Complex<f64> {
        Complex::new(self.x, self.y)
    }

    pub fn distance(&self, other: &UhpPoint) -> f64 {
        distance(*self, *other)
    }

    pub fn to_disk(self) -> DiskPoint {
        uhp_to_disk(self)
    }

    pub fn reflect(&self, across: &HLine) -> Result<UhpPoint, HyperbolicError> {
        match across {
            HLine::Vertical { .. } | HLine::Semicircle { .. } => {
                let [x, y] = mirror([self.x, self.y], across);
                Ok(UhpPoint { x, y })
            }
            _ => Err(HyperbolicError::WrongModel),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    u: f64,
    v: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { u: 0.0, v: 0.0 };

    pub fn new(u: f64, v: f64) -> Result<Self, HyperbolicError> {
        if u.is_nan() || v.is_nan() || u * u + v * v >= 1.0 {
            return Err(HyperbolicError::NotInDisk(u, v));
        }
        Ok(DiskPoint { u, v })
    }

    pub fn u(&self) -> f64 {
        self.u
    }
    pub fn v(&self) -> f64 {
        self.v
    }

    fn w(self) -> Complex<f64> {
        Complex::new(self.u, self.v)
    }

    pub fn distance(&self, other: &DiskPoint) -> f64 {
        let (a, b) = (self.w(), other.w());
        2.0 * ((a - b) / (Complex::new(1.0, 0.0) - a.conj() * b)).norm().atanh()
    }

    pub fn to_uhp(self) -> UhpPoint {
        disk_to_uhp(self)
    }

    pub fn reflect(&self, across: &HLine) -> Result<DiskPoint, HyperbolicError> {
        match across {
            HLine::Diameter { .. } | HLine::Arc { .. } => {
                let [u, v] = mirror([self.u, self.v], across);
                Ok(DiskPoint { u, v })
            }
            _ => Err(HyperbolicError::WrongModel),
        }
    }
}

/// A hyperbolic line. The first two variants live in the half-plane, the last two in the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HLine {
    Vertical {
        x: f64,
    },
    Semicircle {
        center: f64,
        radius: f64,
    },
    /// The diameter through the origin in direction `angle`.
    Diameter {
        angle: f64,
    },
    /// A circle orthogonal to the unit circle.
    Arc {
        cx: f64,
        cy: f64,
        radius: f64,
    },
}

impl HLine {
    pub fn is_disk(&self) -> bool {
        matches!(self, HLine::Diameter { .. } | HLine::Arc { .. })
    }

    /// Whether `p` lies on the line, up to a small tolerance.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        match *self {
            HLine::Vertical { x } => (p[0] - x).abs() < ON_LINE_TOL,
            HLine::Semicircle { center, radius } => ((p[0] - center).hypot(p[1]) - radius).abs() < ON_LINE_TOL,
            HLine::Diameter { angle } => (p[1] * angle.cos() - p[0] * angle.sin()).abs() < ON_LINE_TOL,
            HLine::Arc { cx, cy, radius } => ((p[0] - cx).hypot(p[1] - cy) - radius).abs() < ON_LINE_TOL,
        }
    }

    /// The point where two half-plane lines cross, if they do.
    pub fn intersection(&self, other: &HLine) -> Option<UhpPoint> {
        match (*self, *other) {
            (HLine::Vertical { x }, HLine::Semicircle { center, radius })
            | (HLine::Semicircle { center, radius }, HLine::Vertical { x }) => {
                let dx = x - center;
                (dx.abs() < radius).then(|| UhpPoint { x, y: (radius * radius - dx * dx).sqrt() })
            }
            (HLine::Semicircle { center: c1, radius: r1 }, HLine::Semicircle { center: c2, radius: r2 }) => {
                let gap = (c2 - c1).abs();
                if !((r1 - r2).abs() < gap && gap < r1 + r2) {
                    return None;
                }
                let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
                let y2 = r1 * r1 - (x - c1) * (x - c1);
                (y2 > 0.0).then(|| UhpPoint { x, y: y2.sqrt() })
            }
            _ => None,
        }
    }
}

/// Euclidean mirror image of `p` in a straight line, or its inverse in a circle.
fn mirror(p: [f64; 2], across: &HLine) -> [f64; 2] {
    match *across {
        HLine::Vertical { x } => [2.0 * x - p[0], p[1]],
        HLine::Semicircle { center, radius } => invert(p, [center, 0.0], radius),
        HLine::Diameter { angle } => {
            let (s, c) = (2.0 * angle).sin_cos();
            [c * p[0] + s * p[1], s * p[0] - c * p[1]]
        }
        HLine::Arc { cx, cy, radius } => invert(p, [cx, cy], radius),
    }
}

fn invert(p: [f64; 2], center: [f64; 2], radius: f64) -> [f64; 2] {
    let d = [p[0] - center[0], p[1] - center[1]];
    let k = radius * radius / (d[0] * d[0] + d[1] * d[1]);
    [center[0] + k * d[0], center[1] + k * d[1]]
}

pub fn geodesic_through(a: UhpPoint, b: UhpPoint) -> Result<HLine, HyperbolicError> {
    if (a.x - b.x).abs() < 1e-12 {
        if (a.y - b.y).abs() < 1e-12 {
            return Err(HyperbolicError::SamePoint);
        }
        return Ok(HLine::Vertical { x: a.x });
    }
    let center = (b.x * b.x + b.y * b.y - a.x * a.x - a.y * a.y) / (2.0 * (b.x - a.x));
    Ok(HLine::Semicircle { center, radius: (a.x - center).hypot(a.y) })
}

/// Hyperbolic distance in the half-plane. Off a vertical line, the endpoints `p`, `q` of the
/// geodesic are sent to 0 and ∞ by `z ↦ (z - p)/(q - z)`, where the height rule applies.
pub fn distance(a: UhpPoint, b: UhpPoint) -> f64 {
    match geodesic_through(a, b) {
        Err(_) => 0.0,
        Ok(HLine::Vertical { .. }) => (a.y / b.y).ln().abs(),
        Ok(HLine::Semicircle { center, radius }) => {
            let (p, q) = (Complex::new(center - radius, 0.0), Complex::new(center + radius, 0.0));
            let m = |z: Complex<f64>| ((z - p) / (q - z)).norm();
            (m(a.z()) / m(b.z())).ln().abs()
        }
        Ok(_) => unreachable!("half-plane geodesic"),
    }
}

/// Carries the half-plane onto the disk: lift to the sphere, turn the upper half down, project.
pub fn uhp_to_disk(a: UhpPoint) -> DiskPoint {
    let i = Complex::i();
    let w = (i * a.z() + 1.0) / (a.z() + i);
    DiskPoint { u: w.re, v: w.im }
}

pub fn disk_to_uhp(d: DiskPoint) -> UhpPoint {
    let i = Complex::i();
    let z = (Complex::new(1.0, 0.0) - i * d.w()) / (d.w() - i);
    UhpPoint { x: z.re, y: z.im.max(f64::MIN_POSITIVE) }
}

/// The disk geodesic through two points.
pub fn disk_geodesic_through(a: DiskPoint, b: DiskPoint) -> Result<HLine, HyperbolicError> {
    if (a.u - b.u).abs() < 1e-12 && (a.v - b.v).abs() < 1e-12 {
        return Err(HyperbolicError::SamePoint);
    }
    let cross = a.u * b.v - a.v * b.u;
    let scale = (a.u.hypot(a.v)) * (b.u.hypot(b.v));
    if cross.abs() <= 1e-12 * scale.max(1e-300) || scale < 1e-15 {
        let (du, dv) = if a.u.hypot(a.v) > b.u.hypot(b.v) { (a.u, a.v) } else { (b.u, b.v) };
        return Ok(HLine::Diameter { angle: dv.atan2(du) });
    }
    // The orthogonal circle through a also passes through a's inverse in the unit circle, so
    // its centre c solves 2 c·a = |a|² + 1 and 2 c·b = |b|² + 1.
    let ra = a.u * a.u + a.v * a.v + 1.0;
    let rb = b.u * b.u + b.v * b.v + 1.0;
    let det = 2.0 * cross;
    let cx = (ra * b.v - rb * a.v) / det;
    let cy = (a.u * rb - b.u * ra) / det;
    Ok(HLine::Arc { cx, cy, radius: (cx * cx + cy * cy - 1.0).sqrt() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskTriangle {
    pub vertices: [DiskPoint; 3],
}

impl DiskTriangle {
    /// Side `k` joins vertex `k` to vertex `k + 1`.
    pub fn sides(&self) -> [HLine; 3] {
        let v = self.vertices;
        [0, 1, 2].map(|k| disk_geodesic_through(v[k], v[(k + 1) % 3]).expect("distinct vertices"))
    }

    /// Interior angles, measured between the tangents of the sides at each vertex.
    pub fn angles(&self) -> [f64; 3] {
        let v = self.vertices;
        [0, 1, 2].map(|k| {
            let here = v[k];
            let t1 = tangent_towards(here, v[(k + 1) % 3]);
            let t2 = tangent_towards(here, v[(k + 2) % 3]);
            (t1[0] * t2[1] - t1[1] * t2[0]).abs().atan2(t1[0] * t2[0] + t1[1] * t2[1])
        })
    }

    /// Hyperbolic side lengths, side `k` opposite vertex `k`.
    pub fn side_lengths(&self) -> [f64; 3] {
        let v = self.vertices;
        [0, 1, 2].map(|k| v[(k + 1) % 3].distance(&v[(k + 2) % 3]))
    }

    fn reflected(&self, side: usize) -> DiskTriangle {
        let line = self.sides()[side];
        DiskTriangle { vertices: self.vertices.map(|p| p.reflect(&line).expect("disk line")) }
    }

    fn centroid(&self) -> [f64; 2] {
        let v = self.vertices;
        [(v[0].u + v[1].u + v[2].u) / 3.0, (v[0].v + v[1].v + v[2].v) / 3.0]
    }

    fn same_tile(&self, other: &DiskTriangle) -> bool {
        self.vertices
            .iter()
            .all(|p| other.vertices.iter().any(|q| (p.u - q.u).abs() < DEDUP_TOL && (p.v - q.v).abs() < DEDUP_TOL))
    }
}

/// Unit tangent at `from` of the geodesic segment heading to `to`.
fn tangent_towards(from: DiskPoint, to: DiskPoint) -> [f64; 2] {
    let chord = [to.u - from.u, to.v - from.v];
    let t = match disk_geodesic_through(from, to).expect("distinct vertices") {
        HLine::Arc { cx, cy, .. } => {
            let perp = [-(from.v - cy), from.u - cx];
            if perp[0] * chord[0] + perp[1] * chord[1] >= 0.0 {
                perp
            } else {
                [-perp[0], -perp[1]]
            }
        }
        _ => chord,
    };
    let n = t[0].hypot(t[1]);
    [t[0] / n, t[1] / n]
}

/// The triangle with angles π/p at the origin, π/q on the positive real axis and π/r above it.
pub fn fundamental_triangle(p: u32, q: u32, r: u32) -> Result<DiskTriangle, HyperbolicError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(HyperbolicError::OrderTooSmall(p, q, r));
    }
    if (q * r + p * r + p * q) >= p * q * r {
        return Err(HyperbolicError::NotHyperbolic(p, q, r));
    }
    let (alpha, beta, gamma) = (PI / p as f64, PI / q as f64, PI / r as f64);
    let cosh_c = (alpha.cos() * beta.cos() + gamma.cos()) / (alpha.sin() * beta.sin());
    let cosh_b = (alpha.cos() * gamma.cos() + beta.cos()) / (alpha.sin() * gamma.sin());
    let rb = (cosh_c.acosh() / 2.0).tanh();
    let rc = (cosh_b.acosh() / 2.0).tanh();
    Ok(DiskTriangle {
        vertices: [
            DiskPoint::ORIGIN,
            DiskPoint { u: rb, v: 0.0 },
            DiskPoint { u: rc * alpha.cos(), v: rc * alpha.sin() },
        ],
    })
}

/// Tiles reachable from the fundamental triangle by at most `depth` reflections in sides,
/// in breadth-first order.
pub fn triangle_tiling(p: u32, q: u32, r: u32, depth: usize) -> Result<Vec<DiskTriangle>, HyperbolicError> {
    let start = fundamental_triangle(p, q, r)?;
    let cell = |t: &DiskTriangle| {
        let c = t.centroid();
        ((c[0] / DEDUP_TOL).floor() as i64, (c[1] / DEDUP_TOL).floor() as i64)
    };
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut tiles = vec![start];
    grid.entry(cell(&start)).or_default().push(0);
    let mut frontier = VecDeque::from([(0usize, 0usize)]);
    while let Some((index, level)) = frontier.pop_front() {
        if level == depth {
            continue;
        }
        for side in 0..3 {
            let next = tiles[index].reflected(side);
            let (cx, cy) = cell(&next);
            let seen = (-1..=1).any(|dx| {
                (-1..=1).any(|dy| {
                    grid.get(&(cx + dx, cy + dy)).is_some_and(|ids| ids.iter().any(|&i| tiles[i].same_tile(&next)))
                })
            });
            if !seen {
                grid.entry((cx, cy)).or_default().push(tiles.len());
                frontier.push_back((tiles.len(), level + 1));
                tiles.push(next);
            }
        }
    }
    Ok(tiles)
}

/// `count` distinct half-plane lines through `p` that never meet `line`.
pub fn disjoint_parallels(line: &HLine, p: UhpPoint, count: usize) -> Result<Vec<HLine>, HyperbolicError> {
    if line.is_disk() {
        return Err(HyperbolicError::WrongModel);
    }
    if line.contains([p.x, p.y]) {
        return Err(HyperbolicError::PointOnLine);
    }
    // Lines through p are indexed by the angle of their tangent at p.
    const STEPS: usize = 4096;
    let through = |theta: f64| {
        if (theta - PI / 2.0).abs() < 1e-15 {
            HLine::Vertical { x: p.x }
        } else {
            let center = p.x + p.y * theta.tan();
            HLine::Semicircle { center, radius: (p.x - center).hypot(p.y) }
        }
    };
    let mut disjoint = Vec::new();
    for k in 1..STEPS {
        let theta = PI * k as f64 / STEPS as f64;
        let candidate = through(theta);
        if candidate.intersection(line).is_none() && candidate != *line {
            disjoint.push(candidate);
        }
    }
    let n = disjoint.len();
    if n < count {
        return Err(HyperbolicError::TooCloseToLine(count));
    }
    let mut picked: Vec<HLine> = (0..count).map(|k| disjoint[n * (2 * k + 1) / (2 * count)]).collect();
    let vertical = through(PI / 2.0);
    if count > 0 && disjoint.contains(&vertical) && !picked.contains(&vertical) {
        picked[0] = vertical;
    }
    Ok(picked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uhp(x: f64, y: f64) -> UhpPoint {
        UhpPoint::new(x, y).unwrap()
    }

    #[test]
    fn geodesics() {
        assert_eq!(geodesic_through(uhp(0.0, 4.0), uhp(0.0, 8.0)).unwrap(), HLine::Vertical { x: 0.0 });
        assert_eq!(
            geodesic_through(uhp(-1.0, 1.0), uhp(1.0, 1.0)).unwrap(),
            HLine::Semicircle { center: 0.0, radius: 2f64.sqrt() }
        );
        match geodesic_through(uhp(0.0, 1.0), uhp(3.0, 2.0)).unwrap() {
            HLine::Semicircle { center, radius } => {
                assert!((center - 2.0).abs() < 1e-12);
                assert!((radius - 5f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(geodesic_through(uhp(1.0, 1.0), uhp(1.0, 1.0)), Err(HyperbolicError::SamePoint));
    }

    #[test]
    fn distances() {
        let d = distance(uhp(0.0, 4.0), uhp(0.0, 8.0));
        assert!((d - 2f64.ln()).abs() < 1e-15);
        assert_eq!(d, distance(uhp(0.0, 8.0), uhp(0.0, 16.0)));
        assert_eq!(distance(uhp(3.0, 1.0), uhp(3.0, 1.0)), 0.0);
        let d = distance(uhp(-1.0, 1.0), uhp(1.0, 1.0));
        assert!((d - 2.0 * (1.0 + 2f64.sqrt()).ln()).abs() < 1e-12);
    }

    #[test]
    fn model_transfer() {
        let o = uhp_to_disk(uhp(0.0, 1.0));
        assert!(o.u.abs() < 1e-15 && o.v.abs() < 1e-15);
        let near = uhp_to_disk(uhp(0.7, 1e-9));
        assert!(1.0 - near.u.hypot(near.v) < 1e-8);
        let back = disk_to_uhp(uhp_to_disk(uhp(-2.0, 0.5)));
        assert!((back.x + 2.0).abs() < 1e-12 && (back.y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reflections() {
        assert_eq!(uhp(2.0, 1.0).reflect(&HLine::Vertical { x: 0.0 }).unwrap(), uhp(-2.0, 1.0));
        let line = HLine::Semicircle { center: 1.0, radius: 2.0 };
        let p = uhp(0.5, 0.3);
        let twice = p.reflect(&line).unwrap().reflect(&line).unwrap();
        assert!((twice.x - p.x).abs() < 1e-12 && (twice.y - p.y).abs() < 1e-12);
        assert_eq!(p.reflect(&HLine::Diameter { angle: 0.0 }), Err(HyperbolicError::WrongModel));
    }

    #[test]
    fn tiling_counts() {
        let t0 = triangle_tiling(2, 3, 7, 0).unwrap();
        assert_eq!(t0.len(), 1);
        let angles = t0[0].angles();
        for (a, e) in angles.iter().zip([PI / 2.0, PI / 3.0, PI / 7.0]) {
            assert!((a - e).abs() < 1e-9, "{angles:?}");
        }
        assert_eq!(triangle_tiling(2, 3, 7, 1).unwrap().len(), 4);
    }

    #[test]
    fn tiling_rejects_non_hyperbolic() {
        assert_eq!(triangle_tiling(2, 3, 6, 1), Err(HyperbolicError::NotHyperbolic(2, 3, 6)));
        assert_eq!(triangle_tiling(2, 3, 5, 1), Err(HyperbolicError::NotHyperbolic(2, 3, 5)));
        assert_eq!(triangle_tiling(1, 3, 9, 1), Err(HyperbolicError::OrderTooSmall(1, 3, 9)));
    }

    #[test]
    fn parallels() {
        let line = HLine::Semicircle { center: 0.0, radius: 1.0 };
        let ps = disjoint_parallels(&line, uhp(0.0, 2.0), 3).unwrap();
        assert_eq!(ps.len(), 3);
        for (i, a) in ps.iter().enumerate() {
            assert!(a.intersection(&line).is_none());
            assert!(a.contains([0.0, 2.0]));
            for b in &ps[i + 1..] {
                assert_ne!(a, b);
            }
        }
        assert_eq!(disjoint_parallels(&line, uhp(0.0, 1.0), 2), Err(HyperbolicError::PointOnLine));
        let far = HLine::Semicircle { center: 5.0, radius: 1.0 };
        assert_eq!(disjoint_parallels(&far, uhp(0.0, 2.0), 1).unwrap(), vec![HLine::Vertical { x: 0.0 }]);
    }
}
