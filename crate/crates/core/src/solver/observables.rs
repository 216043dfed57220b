//! Expectation values and spectra of fields.

use std::io::Write;

use serde::Serialize;

use super::dynamics::evolve;
use super::field::Fft2;
use super::{Field, Result, SolverError};

/// Norm² carried by one mass mode κ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub kappa: f64,
    pub weight: f64,
}

/// Weight of every κ on the grid, ascending in κ. Weights sum to the field's
/// norm² (Parseval).
pub fn mass_spectrum(field: &Field) -> Vec<SpectrumRow> {
    let dims = field.dims();
    let plans = Fft2::new(&dims);
    let (_, _, mut comps) = field.clone().into_parts();
    plans.forward_tau(&mut comps);
    let mut weights = vec![0.0; dims.ntau];
    for c in &comps {
        for (i, a) in c.iter().enumerate() {
            weights[i % dims.ntau] += a.norm_sqr();
        }
    }
    let scale = dims.cell() / dims.ntau as f64;
    let mut rows: Vec<SpectrumRow> = weights
        .into_iter()
        .enumerate()
        .map(|(j, w)| SpectrumRow { kappa: dims.kappa(j), weight: w * scale })
        .collect();
    rows.sort_by(|a, b| a.kappa.total_cmp(&b.kappa));
    rows
}

/// CSV with header `kappa,weight`.
pub fn write_spectrum_csv<W: Write>(rows: &[SpectrumRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "kappa,weight")?;
    for r in rows {
        writeln!(w, "{:.16e},{:.16e}", r.kappa, r.weight)?;
    }
    Ok(())
}

fn nonzero_norm(field: &Field) -> Result<f64> {
    let n2 = field.norm_sqr();
    if n2 == 0.0 {
        return Err(SolverError::ZeroNorm);
    }
    Ok(n2)
}

/// ⟨x⟩ with x measured from the left edge of the box.
pub fn mean_position(field: &Field) -> Result<f64> {
    let n2 = nonzero_norm(field)?;
    let dims = field.dims();
    let m: f64 = field.x_marginal().iter().enumerate().map(|(ix, p)| dims.x(ix) * p).sum();
    Ok(m * dims.dx() / n2)
}

/// ⟨α₁⟩ = ∫ψ†α₁ψ / ∫ψ†ψ.
pub fn alpha1_expectation(field: &Field) -> Result<f64> {
    let n2 = nonzero_norm(field)?;
    let [c0, c1, c2, c3] = field.components();
    // α₁ swaps components 0↔3 and 1↔2
    let s: f64 = (0..c0.len())
        .map(|i| 2.0 * ((c0[i].conj() * c3[i]).re + (c1[i].conj() * c2[i]).re))
        .sum();
    Ok(s * field.dims().cell() / n2)
}

/// Fraction of the norm within one sixteenth of the box of either x edge.
fn edge_fraction(field: &Field) -> f64 {
    let marg = field.x_marginal();
    let n = marg.len();
    let band = (n / 16).max(1);
    let edge: f64 = marg[..band].iter().chain(&marg[n - band..]).sum();
    let total: f64 = marg.iter().sum();
    if total == 0.0 {
        0.0
    } else {
        edge / total
    }
}

const WRAP_THRESHOLD: f64 = 1e-10;

/// ⟨α₁⟩ at time `t` next to the centered slope of ⟨x⟩ over [t − dt, t + dt].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EhrenfestSample {
    pub t: f64,
    pub mean_x: f64,
    pub alpha1: f64,
    pub slope: f64,
    /// Set when the packet reaches the periodic boundary, which makes ⟨x⟩
    /// meaningless.
    pub wrapped: bool,
}

impl EhrenfestSample {
    pub fn mismatch(&self) -> f64 {
        (self.slope - self.alpha1).abs()
    }
}

/// Evolves `field` by `t` and compares d⟨x⟩/dt with ⟨α₁⟩ there.
pub fn ehrenfest_velocity(field: &Field, t: f64, dt: f64) -> Result<EhrenfestSample> {
    if !(dt > 0.0) {
        return Err(SolverError::TimeStep(dt));
    }
    let now = evolve(field, t);
    let before = evolve(&now, -dt);
    let after = evolve(&now, dt);
    let slope = (mean_position(&after)? - mean_position(&before)?) / (2.0 * dt);
    let wrapped = [&before, &now, &after].iter().any(|f| edge_fraction(f) > WRAP_THRESHOLD);
    Ok(EhrenfestSample {
        t: now.time(),
        mean_x: mean_position(&now)?,
        alpha1: alpha1_expectation(&now)?,
        slope,
        wrapped,
    })
}

/// Spreads of the τ and κ marginals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Uncertainty {
    pub delta_tau: f64,
    pub delta_kappa: f64,
    pub product: f64,
}

fn spread(points: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    let total: f64 = points.clone().map(|(_, w)| w).sum();
    let mean: f64 = points.clone().map(|(u, w)| u * w).sum::<f64>() / total;
    let var: f64 = points.map(|(u, w)| (u - mean).powi(2) * w).sum::<f64>() / total;
    var.max(0.0).sqrt()
}

/// Δτ from the τ marginal (τ ∈ [0, ltau)) and Δκ from the mass spectrum.
///
/// The product is bounded below by 1/2 for fields localized inside the τ
/// box. A single mass mode has Δκ = 0 and so a product of 0: on a compact τ
/// the bound does not apply to delocalized states.
pub fn uncertainty_check(field: &Field) -> Result<Uncertainty> {
    nonzero_norm(field)?;
    let dims = field.dims();
    let tau_marg = field.tau_marginal();
    let delta_tau = spread(tau_marg.iter().enumerate().map(|(j, &p)| (dims.tau(j), p)));
    let spectrum = mass_spectrum(field);
    let delta_kappa = spread(spectrum.iter().map(|r| (r.kappa, r.weight)));
    Ok(Uncertainty { delta_tau, delta_kappa, product: delta_tau * delta_kappa })
}
