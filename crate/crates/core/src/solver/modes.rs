//! Plane-wave eigensystem of the Dirac Hamiltonian.

use num_complex::Complex64;
use serde::Serialize;

use super::{Result, SolverError};
use crate::kinematics::{Sign, Vec3};
use crate::spinor::{dirac_alphas, dirac_beta, kron, pauli_vector, Matrix2, Matrix4, Spinor4};

/// H = α·p + βm.
pub fn dirac_hamiltonian(p: Vec3, m: f64) -> Matrix4 {
    let [a1, a2, a3] = dirac_alphas();
    a1.scale_re(p.x) + a2.scale_re(p.y) + a3.scale_re(p.z) + dirac_beta().scale_re(m)
}

/// H for a mode of the (x, τ) grid: α₁k + βκ.
pub fn mode_hamiltonian(k: f64, kappa: f64) -> Matrix4 {
    dirac_hamiltonian(Vec3::new(k, 0.0, 0.0), kappa)
}

/// exp(−iHt) for H = α₁k + βκ, in closed form. The k = κ = 0 mode is the
/// identity.
pub fn mode_propagator(k: f64, kappa: f64, t: f64) -> Matrix4 {
    let e = k.hypot(kappa);
    if e == 0.0 {
        return Matrix4::identity();
    }
    let (s, c) = (e * t).sin_cos();
    Matrix4::identity().scale_re(c) + mode_hamiltonian(k, kappa).scale(Complex64::new(0.0, -s / e))
}

/// Σ·p̂ = (I ⊗ σ·p)/|p|.
pub fn helicity_operator(p: Vec3) -> Result<Matrix4> {
    let n = p.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(SolverError::ZeroMomentum);
    }
    let [sx, sy, sz] = pauli_vector();
    let sigma_p = (sx.scale_re(p.x) + sy.scale_re(p.y) + sz.scale_re(p.z)).scale_re(1.0 / n);
    Ok(kron(&Matrix2::identity(), &sigma_p))
}

/// One simultaneous eigenvector of H(p, m) and the helicity operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeSolution {
    pub momentum: Vec3,
    /// Internal-time momentum, i.e. the mass eigenvalue.
    pub kappa: f64,
    pub energy: f64,
    pub branch: Sign,
    pub helicity: Sign,
    pub spinor: Spinor4,
}

impl ModeSolution {
    pub fn k(&self) -> f64 {
        self.momentum.x
    }

    /// ‖(H − E)u‖∞
    pub fn residual(&self) -> f64 {
        let h = dirac_hamiltonian(self.momentum, self.kappa);
        (h * self.spinor).max_abs_diff(&self.spinor.scale(Complex64::new(self.energy, 0.0)))
    }
}

/// Four orthonormal eigenpairs of α·p + βm ordered (+E,+h), (+E,−h),
/// (−E,+h), (−E,−h).
///
/// Degenerate energies are split by helicity Σ·p̂, or by I ⊗ σ₃ when p = 0.
/// Each vector is the dominant column of the rank-one projector
/// (I + bH/E)/2 · (I + hΣ)/2, normalized, with its first nonvanishing
/// component made real and positive.
pub fn plane_wave_eigensystem(p: Vec3, m: f64) -> Result<[ModeSolution; 4]> {
    let e = (p.norm_sqr() + m * m).sqrt();
    if e == 0.0 {
        return Err(SolverError::Degenerate);
    }
    let h = dirac_hamiltonian(p, m);
    let spin = if p.norm() > 0.0 {
        helicity_operator(p)?
    } else {
        kron(&Matrix2::identity(), &pauli_vector()[2])
    };
    let id = Matrix4::identity();
    let solve = |branch: Sign, helicity: Sign| {
        let energy_proj = (id + h.scale_re(branch.value() / e)).scale_re(0.5);
        let spin_proj = (id + spin.scale_re(helicity.value())).scale_re(0.5);
        let proj = energy_proj * spin_proj;
        let column = (0..4)
            .map(|j| column(&proj, j))
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .expect("four columns");
        ModeSolution {
            momentum: p,
            kappa: m,
            energy: branch.value() * e,
            branch,
            helicity,
            spinor: column.normalized().with_canonical_phase(1e-12),
        }
    };
    Ok([
        solve(Sign::Plus, Sign::Plus),
        solve(Sign::Plus, Sign::Minus),
        solve(Sign::Minus, Sign::Plus),
        solve(Sign::Minus, Sign::Minus),
    ])
}

fn column(m: &Matrix4, j: usize) -> Spinor4 {
    crate::spinor::Spinor(std::array::from_fn(|i| m.0[i][j]))
}
