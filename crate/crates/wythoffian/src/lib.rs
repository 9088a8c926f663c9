//! Geometric Wythoffians of regular skeletal polyhedra in E³.
//!
//! The crate constructs the orbit structures P^I obtained by applying
//! Wythoff's construction to a regular skeletal polyhedron with symmetry
//! group ⟨r₀, r₁, r₂⟩, classifies their faces, computes padded vertex
//! symbols, decides uniformity, and exports meshes and analysis reports.
//!
//! Module map:
//! - [`geom`]: scalar-generic 3D isometry arithmetic (f64 aliases below);
//! - [`group`]: window-bounded enumeration of the discrete isometry group;
//! - [`catalog`]: the shipped polyhedra and the Petrie/dual/blend operators;
//! - [`wythoff`]: admissible initial vertices, base faces, orbit assembly;
//! - [`analysis`]: face classification, vertex symbols, uniformity search;
//! - [`mesh`], [`report`], [`cli`]: OFF export, JSON reports, command line.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod geom;
pub mod group;
pub mod mesh;
pub mod report;
pub mod wythoff;

/// Concrete scalar used by the pipeline.
pub type Real = f64;

pub type Vec3 = geom::Vec3<Real>;
pub type Mat3 = geom::Mat3<Real>;
pub type Plane = geom::Plane<Real>;
pub type Line = geom::Line<Real>;
pub type Isometry = geom::Isometry<Real>;
pub type MirrorInfo = geom::MirrorInfo<Real>;
pub type IsometryKind = geom::IsometryKind<Real>;
pub type AffineSubspace = geom::AffineSubspace<Real>;

/// Tolerances fixed for the f64 pipeline, in model units.
pub mod tol {
    /// Matrix-level orthogonality checks.
    pub const EPS_ORTHO: f64 = 1e-9;
    /// Point coincidence.
    pub const EPS_POINT: f64 = 1e-7;
    /// Relative tolerance for length/angle equality in regularity tests.
    pub const REL_TOL: f64 = 1e-8;
    /// Planarity residual per unit of edge scale.
    pub const EPS_GEO: f64 = 1e-7;
}
