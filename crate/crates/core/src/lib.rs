//! Relativistic kinematics as unit-vector rotations, the Dirac algebra that
//! quantizes them, and a spectral evolver for the Dirac equation with an
//! extra proper-time coordinate τ.
//!
//! * [`kinematics`]: classical (r̂, ŝ) states, proper-time timelines.
//! * [`spinor`]: Pauli/Dirac matrices, SU(2) rotations, quantization map.
//! * [`solver`]: plane-wave eigensystems and exact spectral evolution on a
//!   periodic (x, τ) grid.
//! * [`rng`]: the seeded generator used by randomized checks.

pub mod kinematics;
pub mod rng;
pub mod solver;
pub mod spinor;

pub use kinematics::{KinematicState, Sign, UnitVec3, Vec3};
pub use spinor::{Matrix2, Matrix4, Spinor2, Spinor4};

/// Crate version, recorded in verification reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
