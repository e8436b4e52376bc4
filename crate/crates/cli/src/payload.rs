//! JSON shapes shared by the command line and the HTTP service.

use std::f64::consts::PI;

use kaleido_core::chi::{classify, conway_name, euler_characteristic};
use kaleido_core::isometry::{group_for, IsometryError};
use kaleido_core::notation::OrbifoldSignature;
use kaleido_core::polyhedron::{PolyhedralSurface, SurfaceError};
use kaleido_core::rational::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub signature: String,
    pub chi: Rational,
    pub class: String,
    pub order: Option<u64>,
    pub name: Option<String>,
}

impl Classification {
    pub fn of(sig: &OrbifoldSignature) -> Self {
        let class = classify(sig);
        Classification {
            signature: sig.to_string(),
            chi: euler_characteristic(sig),
            class: class.label().to_string(),
            order: class.order(),
            name: conway_name(sig).map(|n| n.full),
        }
    }

    /// `chi=0 euclidean dirhombic`, `chi=1/60 spherical order=120`, ...
    pub fn line(&self) -> String {
        let mut out = format!("chi={} {}", self.chi, self.class);
        if let Some(order) = self.order {
            out += &format!(" order={order}");
        }
        if let Some(name) = &self.name {
            out += &format!(" {name}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub signature: String,
    pub name: String,
    pub chi: Rational,
    pub point_group_order: usize,
    pub lattice: [[f64; 2]; 2],
}

impl GroupDescriptor {
    pub fn of(sig: &OrbifoldSignature) -> Result<Self, IsometryError> {
        let group = group_for(sig, 1.0)?;
        let [a, b] = group.lattice;
        Ok(GroupDescriptor {
            signature: group.signature.to_string(),
            name: conway_name(sig).map(|n| n.full).unwrap_or_default(),
            chi: euler_characteristic(sig),
            point_group_order: group.point_group_order,
            lattice: [[a.x, a.y], [b.x, b.y]],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct PolyReport {
    pub V: usize,
    pub E: usize,
    pub F: usize,
    pub chi: i64,
    pub total_defect: f64,
    /// `total_defect / π`
    pub total_defect_over_pi: f64,
    pub descartes_residual: f64,
    pub per_vertex: Vec<f64>,
}

impl PolyReport {
    pub fn of(surface: &PolyhedralSurface) -> Result<Self, SurfaceError> {
        let r = surface.total_defect()?;
        Ok(PolyReport {
            V: surface.vertex_count(),
            E: surface.edge_count(),
            F: surface.face_count(),
            chi: r.euler_number,
            total_defect: r.total,
            total_defect_over_pi: r.total / PI,
            descartes_residual: r.descartes_residual,
            per_vertex: r.per_vertex.iter().map(|&(_, d)| d).collect(),
        })
    }

    pub fn text(&self) -> String {
        format!(
            "V={} E={} F={} chi={} total_defect={:.12} ({:.9}π) residual={:.3e}",
            self.V, self.E, self.F, self.chi, self.total_defect, self.total_defect_over_pi, self.descartes_residual
        )
    }
}
