//! Initial fields: single modes and Gaussian packets.

use num_complex::Complex64;

use super::dynamics::apply_mode_hamiltonian;
use super::field::Fft2;
use super::modes::plane_wave_eigensystem;
use super::{Field, FieldDims, Result};
use crate::kinematics::{Sign, Vec3};
use crate::spinor::Spinor4;

/// ψ(x, τ) = u e^{i(kx + κτ)} / √(lx·ltau), with u the (branch, helicity)
/// eigenspinor of α₁k + βκ. For k = κ = 0, where the Hamiltonian vanishes,
/// u is the rest-frame basis spinor with the same labels.
pub fn make_plane_wave(dims: FieldDims, k: f64, kappa: f64, branch: Sign, helicity: Sign) -> Result<Field> {
    dims.validate()?;
    dims.k_bin(k)?;
    dims.kappa_bin(kappa)?;
    let p = Vec3::new(k, 0.0, 0.0);
    let modes = if k == 0.0 && kappa == 0.0 {
        plane_wave_eigensystem(p, 1.0)?
    } else {
        plane_wave_eigensystem(p, kappa)?
    };
    let u = modes
        .iter()
        .find(|m| m.branch == branch && m.helicity == helicity)
        .expect("all four labels present")
        .spinor;
    let amp = 1.0 / (dims.lx * dims.ltau).sqrt();
    Ok(Field::from_fn(dims, |x, tau| u.scale(Complex64::from_polar(amp, k * x + kappa * tau))))
}

/// A Gaussian packet in x carried by a single mass mode e^{iκτ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    /// Center in x.
    pub x0: f64,
    /// Standard deviation of the x density.
    pub sigma_x: f64,
    /// Mean wavenumber.
    pub k0: f64,
    /// Mass mode; must lie on the τ grid.
    pub kappa: f64,
    /// Spinor shared by every k component before projection.
    pub spinor: Spinor4,
    /// When set, each k component is projected onto that energy branch with
    /// (I ± H/E)/2. `None` keeps both branches (Zitterbewegung).
    pub branch: Option<Sign>,
}

impl Packet {
    /// Positive-energy spin-up packet centered in the box and moving along
    /// +x: σ = 4Δx, k0 = 1/σ, and κ the smallest grid mass ≥ 3/σ.
    ///
    /// Branch projection leaves tails ~ e^{σ²κ² − κ|x|}; κσ ≥ 3 keeps them
    /// negligible at the box edges once nx ≳ 128.
    pub fn default_for(dims: &FieldDims) -> Self {
        let sigma_x = 4.0 * dims.dx();
        let step = 2.0 * std::f64::consts::PI / dims.ltau;
        let bins = ((3.0 / sigma_x) / step).ceil().min((dims.ntau / 2 - 1) as f64);
        Self {
            x0: 0.5 * dims.lx,
            sigma_x,
            k0: 1.0 / sigma_x,
            kappa: bins * step,
            spinor: Spinor4::basis(0),
            branch: Some(Sign::Plus),
        }
    }
}

/// Builds a unit-norm packet in Fourier space:
/// ψ̂(k, κ) = exp(−σ²(k − k0)²) e^{−ikx0} P(k) χ at the packet's κ only.
pub fn gaussian_packet(dims: FieldDims, packet: &Packet) -> Result<Field> {
    dims.validate()?;
    let ikappa = dims.kappa_bin(packet.kappa)?;
    let kappa = dims.kappa(ikappa);
    let plans = Fft2::new(&dims);
    let (_, _, mut comps) = Field::zeros(dims).into_parts();
    let chi = packet.spinor.0;
    for ik in 0..dims.nx {
        let k = dims.k(ik);
        let envelope = (-(packet.sigma_x * (k - packet.k0)).powi(2)).exp();
        let amp = Complex64::from_polar(envelope, -k * packet.x0);
        let u = match packet.branch {
            None => chi,
            Some(b) => {
                let e = k.hypot(kappa);
                let hchi = apply_mode_hamiltonian(k, kappa, &chi);
                let s = if e > 0.0 { b.value() / e } else { 0.0 };
                std::array::from_fn(|c| (chi[c] + hchi[c] * s) * 0.5)
            }
        };
        let i = dims.index(ik, ikappa);
        for c in 0..4 {
            comps[c][i] = u[c] * amp;
        }
    }
    plans.inverse(&mut comps);
    let field = Field::from_parts(dims, 0.0, comps);
    if field.norm() == 0.0 {
        return Err(super::SolverError::ZeroNorm);
    }
    Ok(field.normalized())
}

/// Samples g(u) = exp(−(u − c)²/(4σ²) + i·carrier·(u − c)) at u_j = j·period/n,
/// so |g|² has standard deviation σ. Not periodized.
pub fn gaussian_profile(n: usize, period: f64, center: f64, sigma: f64, carrier: f64) -> Vec<Complex64> {
    let h = period / n as f64;
    (0..n)
        .map(|j| {
            let d = j as f64 * h - center;
            Complex64::from_polar((-d * d / (4.0 * sigma * sigma)).exp(), carrier * d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{mass_spectrum, mean_position};
    use std::f64::consts::PI;

    fn dims() -> FieldDims {
        FieldDims::new(128, 16, 32.0, 8.0).unwrap()
    }

    #[test]
    fn rest_mass_mode_is_tau_phase_times_rest_spinor() {
        let d = dims();
        let m = 2.0 * PI / d.ltau;
        let f = make_plane_wave(d, 0.0, m, Sign::Plus, Sign::Plus).unwrap();
        let amp = 1.0 / (d.lx * d.ltau).sqrt();
        for (ix, itau) in [(0, 0), (5, 3), (63, 15)] {
            let expected = Spinor4::basis(0).scale(Complex64::from_polar(amp, m * d.tau(itau)));
            assert!(f.get(ix, itau).max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn plane_waves_have_unit_norm() {
        let d = dims();
        for (n, j) in [(0, 0), (1, 0), (-3, 2), (5, -7)] {
            let k = 2.0 * PI * n as f64 / d.lx;
            let kappa = 2.0 * PI * j as f64 / d.ltau;
            for b in [Sign::Plus, Sign::Minus] {
                let f = make_plane_wave(d, k, kappa, b, Sign::Minus).unwrap();
                assert!((f.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn off_grid_wavenumbers_rejected() {
        let d = dims();
        assert!(make_plane_wave(d, 0.123, 0.0, Sign::Plus, Sign::Plus).is_err());
        assert!(make_plane_wave(d, 0.0, 0.5, Sign::Plus, Sign::Plus).is_err());
    }

    #[test]
    fn packet_is_centered_and_single_mass() {
        let d = dims();
        let mut p = Packet::default_for(&d);
        p.x0 = 12.0;
        let f = gaussian_packet(d, &p).unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-12);
        assert!((mean_position(&f).unwrap() - 12.0).abs() < 1e-6);
        assert!((p.kappa - PI).abs() < 1e-12);
        let spectrum = mass_spectrum(&f);
        let nonzero: Vec<_> = spectrum.iter().filter(|r| r.weight > 1e-14).collect();
        assert_eq!(nonzero.len(), 1);
        assert!((nonzero[0].kappa - p.kappa).abs() < 1e-12);
    }

    #[test]
    fn gaussian_profile_width() {
        let g = gaussian_profile(256, 32.0, 16.0, 1.5, 0.7);
        let h = 32.0 / 256.0;
        let w: Vec<f64> = g.iter().map(|a| a.norm_sqr()).collect();
        let total: f64 = w.iter().sum();
        let mean: f64 = w.iter().enumerate().map(|(j, p)| j as f64 * h * p).sum::<f64>() / total;
        let var: f64 =
            w.iter().enumerate().map(|(j, p)| (j as f64 * h - mean).powi(2) * p).sum::<f64>() / total;
        assert!((mean - 16.0).abs() < 1e-10);
        assert!((var.sqrt() - 1.5).abs() < 1e-10);
    }
}
