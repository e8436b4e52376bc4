//! Symmetry and curvature toolkit.
//!
//! The crate is organised around a handful of independent subsystems:
//!
//! * [`notation`] parses and prints Conway orbifold signatures such as `*632` or `22x`.
//! * [`chi`] prices signatures exactly, classifies them as spherical, Euclidean, hyperbolic
//!   or bad, enumerates them, and names the 17 Euclidean ones.
//! * [`isometry`] realises the 17 wallpaper groups as concrete planar isometry groups and
//!   replicates strokes under them.
//! * [`polyhedron`] measures angle defects on closed meshes and checks them against
//!   `V - E + F`.
//! * [`projection`] is stereographic projection between the unit sphere and the extended plane.
//! * [`hyperbolic`] covers the upper half-plane and disk models, geodesics, distance and
//!   triangle tilings.
//! * [`knots`] treats unicursal curves as signed Gauss codes and computes diagram-level
//!   invariants.

pub mod chi;
pub mod hyperbolic;
pub mod isometry;
pub mod knots;
pub mod notation;
pub mod polyhedron;
pub mod projection;
pub mod rational;

pub use chi::{ConwayName, GeometryClass, GroupOrder, WeightedMapCensus};
pub use hyperbolic::{DiskPoint, HLine, UhpPoint};
pub use isometry::{Isometry2, Orientation, Polyline, Viewport, WallpaperGroup};
pub use knots::{GaussCode, KnotDiagram};
pub use notation::{MirrorBoundary, OrbifoldSignature};
pub use polyhedron::{DefectReport, PolyhedralSurface};
pub use projection::{ExtendedPoint, SpherePoint};
pub use rational::Rational;
