//! Orbifold Euler characteristic, part prices, geometric classification and Conway names.
//!
//! Every part of a signature has a price and a signature's Euler characteristic is
//! `2 - cost`. Signatures that cost exactly 2 are the 17 Euclidean wallpaper orbifolds;
//! cheaper ones are spherical unless they are one of four bad configurations, and dearer
//! ones are hyperbolic.

mod enumerate;
mod names;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::notation::OrbifoldSignature;
use crate::rational::Rational;

pub use enumerate::{
    enumerate_by_chi, enumerate_euclidean, enumerate_spherical, is_trivial, EnumerationError, EUCLIDEAN_SIGNATURES,
};
pub use names::{conway_name, prefix_for_order, ConwayName};

/// Total price of the parts of `sig`.
pub fn cost(sig: &OrbifoldSignature) -> Rational {
    let handles = Rational::from_integer(2 * sig.handles as i64);
    let crosscaps = Rational::from_integer(sig.crosscaps as i64);
    let cones: Rational = sig.cone_orders.iter().map(|&n| Rational::cone_cost(n)).sum();
    let mirrors: Rational = sig
        .boundaries
        .iter()
        .map(|b| Rational::ONE + b.corners.iter().map(|&n| Rational::corner_cost(n)).sum::<Rational>())
        .sum();
    handles + crosscaps + cones + mirrors
}

pub fn euler_characteristic(sig: &OrbifoldSignature) -> Rational {
    Rational::TWO - cost(sig)
}

/// Order of the symmetry group of a spherical orbifold, `2 / chi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupOrder {
    Finite(u64),
    /// `2 / chi` is not an integer. No good spherical signature lands here.
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryClass {
    Spherical(GroupOrder),
    Euclidean,
    Hyperbolic,
    Bad,
}

impl GeometryClass {
    pub fn label(&self) -> &'static str {
        match self {
            GeometryClass::Spherical(_) => "spherical",
            GeometryClass::Euclidean => "euclidean",
            GeometryClass::Hyperbolic => "hyperbolic",
            GeometryClass::Bad => "bad",
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GeometryClass::Spherical(GroupOrder::Finite(k)) => Some(*k),
            _ => None,
        }
    }
}

/// True for the four configurations too skimpy to come from a pattern on the sphere.
pub fn is_bad(sig: &OrbifoldSignature) -> bool {
    if sig.handles != 0 || sig.crosscaps != 0 {
        return false;
    }
    match (sig.cone_orders.as_slice(), sig.boundaries.as_slice()) {
        ([_], []) => true,
        ([a, b], []) => a != b,
        ([], [boundary]) => match boundary.corners.as_slice() {
            [_] => true,
            [a, b] => a != b,
            _ => false,
        },
        _ => false,
    }
}

pub fn classify(sig: &OrbifoldSignature) -> GeometryClass {
    if is_bad(sig) {
        return GeometryClass::Bad;
    }
    let chi = euler_characteristic(sig);
    if chi.is_zero() {
        GeometryClass::Euclidean
    } else if chi.is_negative() {
        GeometryClass::Hyperbolic
    } else {
        let order = Rational::TWO / chi;
        if order.is_integer() {
            GeometryClass::Spherical(GroupOrder::Finite(order.numer() as u64))
        } else {
            GeometryClass::Spherical(GroupOrder::Unbounded)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("weight {0} is not of the form 1/k")]
    BadWeight(Rational),
    #[error("cell count must be positive")]
    ZeroCount,
}

/// Cells of a map drawn on an orbifold, grouped by count and weight `1/k` where `k` is the
/// order of the local symmetry fixing the cell.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedMapCensus {
    pub vertex_weights: Vec<(u64, Rational)>,
    pub edge_weights: Vec<(u64, Rational)>,
    pub face_weights: Vec<(u64, Rational)>,
}

impl WeightedMapCensus {
    pub fn new(
        vertex_weights: Vec<(u64, Rational)>,
        edge_weights: Vec<(u64, Rational)>,
        face_weights: Vec<(u64, Rational)>,
    ) -> Result<Self, CensusError> {
        for &(count, w) in vertex_weights.iter().chain(&edge_weights).chain(&face_weights) {
            if count == 0 {
                return Err(CensusError::ZeroCount);
            }
            if !(w.numer() == 1 && w.denom() >= 1) {
                return Err(CensusError::BadWeight(w));
            }
        }
        Ok(WeightedMapCensus { vertex_weights, edge_weights, face_weights })
    }

    /// Every cell with weight 1.
    pub fn unweighted(vertices: u64, edges: u64, faces: u64) -> Self {
        let one = |n: u64| if n == 0 { vec![] } else { vec![(n, Rational::ONE)] };
        WeightedMapCensus { vertex_weights: one(vertices), edge_weights: one(edges), face_weights: one(faces) }
    }
}

/// Weighted `V - E + F`.
pub fn weighted_euler(census: &WeightedMapCensus) -> Rational {
    let total = |cells: &[(u64, Rational)]| -> Rational {
        cells.iter().map(|&(count, w)| Rational::from_integer(count as i64) * w).sum()
    };
    total(&census.vertex_weights) - total(&census.edge_weights) + total(&census.face_weights)
}
