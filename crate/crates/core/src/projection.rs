//! Stereographic projection from the north pole of the unit sphere onto the equatorial plane.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const SPHERE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ProjectionError {
    #[error("point ({0}, {1}, {2}) is not on the unit sphere")]
    OffSphere(f64, f64, f64),
    #[error("plane normal (A, B, C) is zero")]
    ZeroNormal,
    #[error("plane misses the sphere or only touches it")]
    NoCircle,
    #[error("degenerate spherical triangle")]
    DegenerateTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    x: f64,
    y: f64,
    z: f64,
}

impl SpherePoint {
    pub const NORTH: SpherePoint = SpherePoint { x: 0.0, y: 0.0, z: 1.0 };
    pub const SOUTH: SpherePoint = SpherePoint { x: 0.0, y: 0.0, z: -1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, ProjectionError> {
        if ((x * x + y * y + z * z) - 1.0).abs() > SPHERE_TOL || !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(ProjectionError::OffSphere(x, y, z));
        }
        Ok(SpherePoint { x, y, z })
    }

    /// Radial projection of a nonzero vector onto the sphere.
    pub fn from_direction(v: Vector3<f64>) -> Result<Self, ProjectionError> {
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(ProjectionError::OffSphere(v.x, v.y, v.z));
        }
        Ok(SpherePoint { x: v.x / n, y: v.y / n, z: v.z / n })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }
}

/// A point of the plane together with the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendedPoint {
    Finite { x: f64, y: f64 },
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(x: f64, y: f64) -> Self {
        ExtendedPoint::Finite { x, y }
    }
}

/// The plane `A X + B Y + C Z + D = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneCut {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl PlaneCut {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, ProjectionError> {
        let norm = (a * a + b * b + c * c).sqrt();
        if norm == 0.0 {
            return Err(ProjectionError::ZeroNormal);
        }
        if d.is_nan() || !norm.is_finite() || d.abs() >= norm * (1.0 - 1e-12) {
            return Err(ProjectionError::NoCircle);
        }
        Ok(PlaneCut { a, b, c, d })
    }

    /// Points of the cut circle on the sphere, evenly spaced in angle.
    pub fn sample(&self, count: usize) -> Vec<SpherePoint> {
        let normal = Vector3::new(self.a, self.b, self.c);
        let n = normal.norm();
        let unit = normal / n;
        let center = -unit * (self.d / n);
        let radius = (1.0 - center.norm_squared()).sqrt();
        let helper = if unit.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        let u = unit.cross(&helper).normalize();
        let v = unit.cross(&u);
        (0..count)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / count as f64;
                let p = center + radius * (t.cos() * u + t.sin() * v);
                SpherePoint::from_direction(p).expect("nonzero")
            })
            .collect()
    }
}

/// A circle in the plane, or a line when the circle passes through infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlaneCircle {
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
    },
    /// Points with `nx x + ny y = offset`, `(nx, ny)` a unit vector.
    Line {
        nx: f64,
        ny: f64,
        offset: f64,
    },
}

pub fn project(p: SpherePoint) -> ExtendedPoint {
    if p.z == 1.0 {
        return ExtendedPoint::Infinity;
    }
    let t = 1.0 - p.z;
    ExtendedPoint::Finite { x: p.x / t, y: p.y / t }
}

pub fn unproject(q: ExtendedPoint) -> SpherePoint {
    match q {
        ExtendedPoint::Infinity => SpherePoint::NORTH,
        ExtendedPoint::Finite { x, y } => {
            let q = x * x + y * y;
            let t = 2.0 / (q + 1.0);
            SpherePoint { x: x * t, y: y * t, z: (q - 1.0) / (q + 1.0) }
        }
    }
}

/// The image under [`project`] of the circle where `cut` meets the sphere.
pub fn image_of_cut(cut: &PlaneCut) -> Result<PlaneCircle, ProjectionError> {
    let PlaneCut { a, b, c, d } = PlaneCut::new(cut.a, cut.b, cut.c, cut.d)?;
    let scale = (a * a + b * b + c * c).sqrt();
    let k = c + d;
    if k.abs() <= 1e-14 * scale {
        let n = (a * a + b * b).sqrt();
        return Ok(PlaneCircle::Line { nx: a / n, ny: b / n, offset: (c - d) / (2.0 * n) });
    }
    let r2 = (a * a + b * b + c * c - d * d) / (k * k);
    Ok(PlaneCircle::Circle { cx: 0.0 - a / k, cy: 0.0 - b / k, r: r2.sqrt() })
}

/// Area of the spherical triangle `abc`: the excess of its angle sum over π.
pub fn spherical_triangle_area(a: SpherePoint, b: SpherePoint, c: SpherePoint) -> Result<f64, ProjectionError> {
    let (a, b, c) = (a.to_vector(), b.to_vector(), c.to_vector());
    if a.cross(&b).dot(&c).abs() < 1e-14 {
        return Err(ProjectionError::DegenerateTriangle);
    }
    let angle = |p: Vector3<f64>, q: Vector3<f64>, r: Vector3<f64>| {
        let tq = q - p * p.dot(&q);
        let tr = r - p * p.dot(&r);
        tq.cross(&tr).norm().atan2(tq.dot(&tr))
    };
    Ok(angle(a, b, c) + angle(b, c, a) + angle(c, a, b) - PI)
}
