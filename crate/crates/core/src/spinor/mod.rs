//! Pauli and Dirac algebra, SU(2) rotations, and the map from classical
//! unit vectors to spinors.
//!
//! Two independent Pauli algebras are used: ρ acts on the kinematic-plane
//! vector r̂ and σ on the direction ŝ. Four-spinors live in ρ ⊗ σ with basis
//! order (ρ↑σ↑, ρ↑σ↓, ρ↓σ↑, ρ↓σ↓), which gives the standard (Dirac–Pauli)
//! representation α_i = ρ₁ ⊗ σ_i and β = ρ₃ ⊗ I.
//!
//! [`quantize`] replaces r_i → ρ_i and s_i → σ_i by building the product
//! state whose Bloch vectors are r̂ and ŝ, so ⟨β⟩ = τ̇ and ⟨α⟩ = ẋ. Entangled
//! spinors reproducing the same expectation values exist but are not built.

mod matrix;

pub use matrix::{Matrix, Matrix2, Matrix4, Spinor, Spinor2, Spinor4};

use num_complex::Complex64;
use thiserror::Error;

use crate::kinematics::{KinematicState, UnitVec3, Vec3};

/// Allowed deviation of ψ†ψ from 1 for operations that require a
/// normalized spinor.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinorError {
    #[error("matrix index {0} out of range 1..=3")]
    IndexOutOfRange(usize),
    #[error("spinor is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
}

pub type Result<T, E = SpinorError> = std::result::Result<T, E>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix σ_i, i ∈ {1, 2, 3}.
pub fn pauli(i: usize) -> Result<Matrix2> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match i {
        1 => Ok(Matrix([[z, one], [one, z]])),
        2 => Ok(Matrix([[z, -I], [I, z]])),
        3 => Ok(Matrix([[one, z], [z, -one]])),
        other => Err(SpinorError::IndexOutOfRange(other)),
    }
}

/// (σ₁, σ₂, σ₃)
pub fn pauli_vector() -> [Matrix2; 3] {
    [1, 2, 3].map(|i| pauli(i).expect("valid index"))
}

/// Kronecker product with `a` acting on the outer (ρ) factor.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    Matrix::from_fn(|i, j| a.0[i / 2][j / 2] * b.0[i % 2][j % 2])
}

/// Tensor product of two-component spinors, `a` outer.
pub fn kron_spinor(a: &Spinor2, b: &Spinor2) -> Spinor4 {
    Spinor(std::array::from_fn(|i| a.0[i / 2] * b.0[i % 2]))
}

/// α_i = ρ₁ ⊗ σ_i.
pub fn dirac_alpha(i: usize) -> Result<Matrix4> {
    Ok(kron(&pauli(1)?, &pauli(i)?))
}

/// β = ρ₃ ⊗ I.
pub fn dirac_beta() -> Matrix4 {
    kron(&pauli(3).expect("valid index"), &Matrix2::identity())
}

pub fn dirac_alphas() -> [Matrix4; 3] {
    [1, 2, 3].map(|i| dirac_alpha(i).expect("valid index"))
}

pub fn anticommutator<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    *a * *b + *b * *a
}

pub fn commutator<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    *a * *b - *b * *a
}

fn check_normalized<const N: usize>(psi: &Spinor<N>) -> Result<()> {
    let n2 = psi.norm_sqr();
    if (n2 - 1.0).abs() > NORM_TOL || !n2.is_finite() {
        return Err(SpinorError::NotNormalized(n2));
    }
    Ok(())
}

/// ψ† O ψ for normalized ψ.
pub fn expectation<const N: usize>(psi: &Spinor<N>, op: &Matrix<N>) -> Result<Complex64> {
    check_normalized(psi)?;
    Ok(psi.inner(&op.apply(psi)))
}

/// exp(−iθ n̂·σ/2) = cos(θ/2) I − i sin(θ/2) n̂·σ.
pub fn su2_rotation(axis: UnitVec3, theta: f64) -> Matrix2 {
    let (s, c) = (0.5 * theta).sin_cos();
    let [sx, sy, sz] = pauli_vector();
    let n_sigma = sx.scale_re(axis.x()) + sy.scale_re(axis.y()) + sz.scale_re(axis.z());
    Matrix2::identity().scale_re(c) + n_sigma.scale(-I * s)
}

/// Normalized χ with ⟨σ⟩ = u; first nonvanishing component real and ≥ 0.
pub fn bloch_to_spinor(u: UnitVec3) -> Spinor2 {
    let Vec3 { x, y, z } = u.vec();
    let transverse = Complex64::new(x, y);
    let (up, down) = if z >= 0.0 {
        let up = (0.5 * (1.0 + z)).sqrt();
        (up, transverse / (2.0 * up))
    } else {
        // |up|·|down| = |x + iy|/2 keeps ⟨σ_x⟩, ⟨σ_y⟩ exact near the south pole
        let down = (0.5 * (1.0 - z)).sqrt();
        let t = transverse.norm();
        if t > 0.0 {
            (t / (2.0 * down), transverse / t * down)
        } else {
            (0.0, Complex64::new(1.0, 0.0))
        }
    };
    Spinor([Complex64::new(up, 0.0), down]).normalized()
}

/// (⟨σ₁⟩, ⟨σ₂⟩, ⟨σ₃⟩) for normalized χ.
pub fn bloch_vector(chi: &Spinor2) -> Result<Vec3> {
    let [sx, sy, sz] = pauli_vector();
    Ok(Vec3::new(
        expectation(chi, &sx)?.re,
        expectation(chi, &sy)?.re,
        expectation(chi, &sz)?.re,
    ))
}

/// Product spinor χ(r̂) ⊗ χ(ŝ) for a classical kinematic state.
pub fn quantize(state: &KinematicState) -> Spinor4 {
    kron_spinor(&bloch_to_spinor(state.r()), &bloch_to_spinor(state.s()))
}

/// Returns (⟨α⟩, ⟨β⟩), the velocity and proper-time-rate expectations.
pub fn dequantize(psi: &Spinor4) -> Result<(Vec3, f64)> {
    let [a1, a2, a3] = dirac_alphas();
    let v = Vec3::new(
        expectation(psi, &a1)?.re,
        expectation(psi, &a2)?.re,
        expectation(psi, &a3)?.re,
    );
    Ok((v, expectation(psi, &dirac_beta())?.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{classify, Sign};
    use crate::rng::SplitMix64;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_standard_forms() {
        let z = c(0.0, 0.0);
        assert_eq!(pauli(1).unwrap().0, [[z, c(1.0, 0.0)], [c(1.0, 0.0), z]]);
        assert_eq!(pauli(2).unwrap().0, [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]]);
        assert_eq!(pauli(3).unwrap().0, [[c(1.0, 0.0), z], [z, c(-1.0, 0.0)]]);
        assert_eq!(pauli(0), Err(SpinorError::IndexOutOfRange(0)));
        assert_eq!(pauli(4), Err(SpinorError::IndexOutOfRange(4)));
        for p in pauli_vector() {
            assert!(p.is_hermitian(0.0));
            assert!(p.is_unitary(0.0));
            assert_eq!(p.trace(), z);
        }
    }

    #[test]
    fn kron_examples() {
        let id = Matrix2::identity();
        assert_eq!(kron(&id, &id), Matrix4::identity());
        assert_eq!(kron(&pauli(3).unwrap(), &id), Matrix4::diagonal([1.0, 1.0, -1.0, -1.0]));
        let alpha1 = Matrix4::from_real([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]);
        assert_eq!(kron(&pauli(1).unwrap(), &pauli(1).unwrap()), alpha1);
    }

    #[test]
    fn dirac_matrices_anticommute_exactly() {
        let alphas = dirac_alphas();
        let beta = dirac_beta();
        let id = Matrix4::identity();
        for (i, ai) in alphas.iter().enumerate() {
            assert!(ai.is_hermitian(0.0));
            assert_eq!(*ai * *ai, id);
            assert_eq!(anticommutator(ai, &beta), Matrix4::zero());
            for (j, aj) in alphas.iter().enumerate() {
                let expected = if i == j { id.scale_re(2.0) } else { Matrix4::zero() };
                assert_eq!(anticommutator(ai, aj), expected);
            }
        }
        assert_eq!(beta * beta, id);
        assert!(dirac_alpha(4).is_err());
    }

    #[test]
    fn commutator_identities() {
        let a = dirac_alpha(2).unwrap() + dirac_beta().scale(c(0.3, -1.0));
        assert_eq!(anticommutator(&Matrix4::identity(), &a), a.scale_re(2.0));
        assert_eq!(commutator(&a, &a), Matrix4::zero());
    }

    #[test]
    fn expectation_examples() {
        let e0 = Spinor4::basis(0);
        assert_eq!(expectation(&e0, &dirac_beta()).unwrap(), c(1.0, 0.0));
        assert_eq!(expectation(&e0, &dirac_alpha(1).unwrap()).unwrap(), c(0.0, 0.0));
        let psi = Spinor4::from_real([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0]);
        let a3 = expectation(&psi, &dirac_alpha(3).unwrap()).unwrap();
        assert!((a3 - c(1.0, 0.0)).norm() < 1e-15);
        let bad = Spinor4::from_real([1.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            expectation(&bad, &dirac_beta()),
            Err(SpinorError::NotNormalized(_))
        ));
    }

    #[test]
    fn su2_examples() {
        let axis = UnitVec3::new(0.2, -0.4, 0.9).unwrap();
        assert!(su2_rotation(axis, 0.0).max_abs_diff(&Matrix2::identity()) < 1e-15);
        let full = su2_rotation(UnitVec3::Z, 2.0 * PI);
        assert!(full.max_abs_diff(&-Matrix2::identity()) < 1e-15);
        let quarter = su2_rotation(UnitVec3::Z, PI / 2.0);
        let e = Complex64::from_polar(1.0, -PI / 4.0);
        let expected = Matrix([[e, c(0.0, 0.0)], [c(0.0, 0.0), e.conj()]]);
        assert!(quarter.max_abs_diff(&expected) < 1e-15);
        assert!(su2_rotation(axis, 1.3).is_unitary(1e-14));
    }

    #[test]
    fn bloch_examples() {
        assert_eq!(bloch_to_spinor(UnitVec3::Z), Spinor2::from_real([1.0, 0.0]));
        assert_eq!(bloch_to_spinor(-UnitVec3::Z), Spinor2::from_real([0.0, 1.0]));
        let chi = bloch_to_spinor(UnitVec3::X);
        assert!(chi.max_abs_diff(&Spinor2::from_real([FRAC_1_SQRT_2, FRAC_1_SQRT_2])) < 1e-15);
        let b = bloch_vector(&chi).unwrap();
        assert!(b.max_abs_diff(Vec3::new(1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn bloch_near_south_pole() {
        let u = UnitVec3::new(1e-9, -2e-9, -1.0).unwrap();
        let b = bloch_vector(&bloch_to_spinor(u)).unwrap();
        assert!(b.max_abs_diff(u.vec()) < 1e-14);
    }

    #[test]
    fn quantize_examples() {
        let rest = KinematicState::new(0.0, UnitVec3::Z);
        assert_eq!(quantize(&rest), Spinor4::basis(0));
        let (v, b) = dequantize(&quantize(&rest)).unwrap();
        assert_eq!((v, b), (Vec3::ZERO, 1.0));

        let moving = KinematicState::new(0.6f64.asin(), UnitVec3::Z);
        let (v, b) = dequantize(&quantize(&moving)).unwrap();
        assert!((b - 0.8).abs() < 1e-15);
        assert!(v.max_abs_diff(Vec3::new(0.0, 0.0, 0.6)) < 1e-15);

        let anti = KinematicState::new(PI, UnitVec3::Z);
        let (v, b) = dequantize(&quantize(&anti)).unwrap();
        assert!((b + 1.0).abs() < 1e-15);
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn dequantize_examples() {
        let st = KinematicState::new(0.6f64.asin(), UnitVec3::X);
        let (v, b) = dequantize(&quantize(&st)).unwrap();
        assert!(v.max_abs_diff(Vec3::new(0.6, 0.0, 0.0)) < 1e-15);
        assert!((b - 0.8).abs() < 1e-15);

        let psi = Spinor4::from_real([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0]);
        let (v, b) = dequantize(&psi).unwrap();
        assert!(v.max_abs_diff(Vec3::new(0.0, 0.0, 1.0)) < 1e-15);
        assert!(b.abs() < 1e-15);
        assert!(dequantize(&Spinor4::zero()).is_err());
    }

    #[test]
    fn quantized_signs_follow_classification() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..1000 {
            let st = rng.kinematic_state();
            let Ok(species) = classify(&st) else { continue };
            let (v, b) = dequantize(&quantize(&st)).unwrap();
            assert_eq!(Sign::of(b, 0.0), Some(species.matter));
            assert_eq!(Sign::of(v.dot(st.s().vec()), 0.0), Some(species.helicity));
        }
    }
}
