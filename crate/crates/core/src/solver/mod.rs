//! Generalized Dirac equation i∂ₜψ = [α·(−i∂ₓ) + β(−i∂_τ)]ψ on a periodic
//! (x, τ) grid.
//!
//! The mass term of the ordinary Dirac Hamiltonian is replaced by the
//! operator −i∂_τ, so a Fourier mode e^{i(kx + κτ)} evolves with the 4×4
//! matrix H(k, κ) = α₁k + βκ and κ plays the role of mass. Evolution is
//! exact per mode: exp(−iHt) = cos(Et) − i sin(Et) H/E with E² = k² + κ².
//!
//! Conventions:
//! * forward transforms use e^{−ikx}; plane waves are e^{+i(kx + κτ − Et)},
//! * τ is periodic with length `ltau`, so masses are quantized in 2π/ltau,
//! * space is one-dimensional; k enters through α₁ only, while the mode
//!   eigensystem still accepts a 3D momentum.

mod dynamics;
mod field;
mod modes;
mod observables;
mod packets;

pub use dynamics::{
    apply_hamiltonian, compare_standard_dirac, evolve, lagrangian_residual,
    lagrangian_residual_of_pair, proper_time_reversal, project_mass_sector, standard_dirac_1d,
    translate_tau, tau_reversal_matrix,
};
pub use field::{grid_bin, Field, FieldDims, Sidecar};
pub use modes::{
    dirac_hamiltonian, helicity_operator, mode_hamiltonian, mode_propagator,
    plane_wave_eigensystem, ModeSolution,
};
pub use observables::{
    alpha1_expectation, ehrenfest_velocity, mass_spectrum, mean_position, uncertainty_check,
    write_spectrum_csv, EhrenfestSample, SpectrumRow, Uncertainty,
};
pub use packets::{gaussian_packet, gaussian_profile, make_plane_wave, Packet};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("grid size must be a power of two >= 4, got {0}")]
    GridSize(usize),
    #[error("period must be positive and finite, got {0}")]
    Period(f64),
    #[error("wavenumber {value} is not on the {axis} grid")]
    OffGrid { axis: &'static str, value: f64 },
    #[error("p = 0 and m = 0: Hamiltonian vanishes, eigenbasis undefined")]
    Degenerate,
    #[error("helicity operator needs nonzero momentum")]
    ZeroMomentum,
    #[error("profile has {got} samples, grid needs {expected}")]
    ProfileLength { expected: usize, got: usize },
    #[error("field has zero norm")]
    ZeroNorm,
    #[error("time step must be positive, got {0}")]
    TimeStep(f64),
    #[error("field grids differ")]
    GridMismatch,
    #[error("invalid snapshot: {0}")]
    Snapshot(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PartialEq for SolverError {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}

pub type Result<T, E = SolverError> = std::result::Result<T, E>;
