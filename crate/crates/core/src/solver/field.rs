//! Four-component fields on a periodic (x, τ) grid and their Fourier modes.

use std::f64::consts::PI;
use std::io::{BufRead, Write};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::{Result, SolverError};
use crate::spinor::Spinor4;

/// Grid sizes and periods. Sample `(ix, itau)` sits at x = ix·Δx, τ = itau·Δτ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldDims {
    pub nx: usize,
    pub ntau: usize,
    pub lx: f64,
    pub ltau: f64,
}

impl FieldDims {
    pub fn new(nx: usize, ntau: usize, lx: f64, ltau: f64) -> Result<Self> {
        let dims = Self { nx, ntau, lx, ltau };
        dims.validate()?;
        Ok(dims)
    }

    pub fn validate(&self) -> Result<()> {
        for n in [self.nx, self.ntau] {
            if n < 4 || !n.is_power_of_two() {
                return Err(SolverError::GridSize(n));
            }
        }
        for l in [self.lx, self.ltau] {
            if !(l.is_finite() && l > 0.0) {
                return Err(SolverError::Period(l));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ntau
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dtau(&self) -> f64 {
        self.ltau / self.ntau as f64
    }

    pub fn cell(&self) -> f64 {
        self.dx() * self.dtau()
    }

    pub fn x(&self, ix: usize) -> f64 {
        ix as f64 * self.dx()
    }

    pub fn tau(&self, itau: usize) -> f64 {
        itau as f64 * self.dtau()
    }

    pub fn index(&self, ix: usize, itau: usize) -> usize {
        ix * self.ntau + itau
    }

    /// Wavenumber of FFT bin `ik` along x, in [−π/Δx, π/Δx).
    pub fn k(&self, ik: usize) -> f64 {
        wavenumber(ik, self.nx, self.lx)
    }

    /// Wavenumber (mass) of FFT bin `ikappa` along τ.
    pub fn kappa(&self, ikappa: usize) -> f64 {
        wavenumber(ikappa, self.ntau, self.ltau)
    }

    pub fn k_bin(&self, k: f64) -> Result<usize> {
        grid_bin(k, self.nx, self.lx).ok_or(SolverError::OffGrid { axis: "x", value: k })
    }

    pub fn kappa_bin(&self, kappa: f64) -> Result<usize> {
        grid_bin(kappa, self.ntau, self.ltau).ok_or(SolverError::OffGrid { axis: "tau", value: kappa })
    }
}

fn wavenumber(i: usize, n: usize, period: f64) -> f64 {
    let signed = if i < n / 2 { i as isize } else { i as isize - n as isize };
    2.0 * PI * signed as f64 / period
}

/// FFT bin of a wavenumber lying on the grid 2πn/period with n ∈ [−N/2, N/2).
pub fn grid_bin(value: f64, n: usize, period: f64) -> Option<usize> {
    if !value.is_finite() {
        return None;
    }
    let q = value * period / (2.0 * PI);
    let r = q.round();
    if (q - r).abs() > 1e-9 * r.abs().max(1.0) {
        return None;
    }
    let half = (n / 2) as f64;
    if r < -half || r >= half {
        return None;
    }
    Some((r as i64).rem_euclid(n as i64) as usize)
}

/// ψ(x, τ) at fixed reference time `t`, stored as four component planes.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    dims: FieldDims,
    time: f64,
    comps: [Vec<Complex64>; 4],
}

impl Field {
    pub fn zeros(dims: FieldDims) -> Self {
        let n = dims.len();
        Self { dims, time: 0.0, comps: std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); n]) }
    }

    /// Samples `f(x, τ)` on the grid.
    pub fn from_fn(dims: FieldDims, mut f: impl FnMut(f64, f64) -> Spinor4) -> Self {
        let mut field = Self::zeros(dims);
        for ix in 0..dims.nx {
            for itau in 0..dims.ntau {
                field.set(ix, itau, f(dims.x(ix), dims.tau(itau)));
            }
        }
        field
    }

    /// ψ(x, τ) = profile(x) · g(τ).
    pub fn separable(dims: FieldDims, xprofile: &[Spinor4], tauprofile: &[Complex64]) -> Result<Self> {
        if xprofile.len() != dims.nx {
            return Err(SolverError::ProfileLength { expected: dims.nx, got: xprofile.len() });
        }
        if tauprofile.len() != dims.ntau {
            return Err(SolverError::ProfileLength { expected: dims.ntau, got: tauprofile.len() });
        }
        let mut field = Self::zeros(dims);
        for (ix, u) in xprofile.iter().enumerate() {
            for (itau, g) in tauprofile.iter().enumerate() {
                field.set(ix, itau, u.scale(*g));
            }
        }
        Ok(field)
    }

    pub fn dims(&self) -> FieldDims {
        self.dims
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.time = t;
        self
    }

    pub fn components(&self) -> &[Vec<Complex64>; 4] {
        &self.comps
    }

    pub fn get(&self, ix: usize, itau: usize) -> Spinor4 {
        let i = self.dims.index(ix, itau);
        crate::spinor::Spinor(std::array::from_fn(|c| self.comps[c][i]))
    }

    pub fn set(&mut self, ix: usize, itau: usize, v: Spinor4) {
        let i = self.dims.index(ix, itau);
        for c in 0..4 {
            self.comps[c][i] = v.0[c];
        }
    }

    /// ∫ ψ†ψ dx dτ.
    pub fn norm_sqr(&self) -> f64 {
        let s: f64 = self.comps.iter().flatten().map(|a| a.norm_sqr()).sum();
        s * self.dims.cell()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ∫ ψ_self† ψ_other dx dτ.
    pub fn overlap(&self, other: &Field) -> Complex64 {
        let s: Complex64 = self
            .comps
            .iter()
            .zip(&other.comps)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.conj() * y))
            .sum();
        s * self.dims.cell()
    }

    pub fn scale(&self, s: Complex64) -> Field {
        self.map_values(|a| a * s)
    }

    /// Unit-norm copy. Zero fields are returned unchanged.
    pub fn normalized(&self) -> Field {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn add(&self, other: &Field) -> Field {
        self.zip_values(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field) -> Field {
        self.zip_values(other, |a, b| a - b)
    }

    /// Largest pointwise component modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Field) -> f64 {
        self.comps
            .iter()
            .zip(&other.comps)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }

    fn map_values(&self, f: impl Fn(Complex64) -> Complex64) -> Field {
        Field {
            dims: self.dims,
            time: self.time,
            comps: std::array::from_fn(|c| self.comps[c].iter().map(|&a| f(a)).collect()),
        }
    }

    fn zip_values(&self, other: &Field, f: impl Fn(Complex64, Complex64) -> Complex64) -> Field {
        assert_eq!(self.dims, other.dims, "field grids differ");
        Field {
            dims: self.dims,
            time: self.time,
            comps: std::array::from_fn(|c| {
                self.comps[c].iter().zip(&other.comps[c]).map(|(&a, &b)| f(a, b)).collect()
            }),
        }
    }

    pub(crate) fn from_parts(dims: FieldDims, time: f64, comps: [Vec<Complex64>; 4]) -> Self {
        Self { dims, time, comps }
    }

    pub(crate) fn into_parts(self) -> (FieldDims, f64, [Vec<Complex64>; 4]) {
        (self.dims, self.time, self.comps)
    }

    /// Marginal density of τ: ∫ ψ†ψ dx at each τ sample.
    pub fn tau_marginal(&self) -> Vec<f64> {
        let (nx, ntau) = (self.dims.nx, self.dims.ntau);
        let mut out = vec![0.0; ntau];
        for c in &self.comps {
            for ix in 0..nx {
                for (itau, o) in out.iter_mut().enumerate() {
                    *o += c[ix * ntau + itau].norm_sqr();
                }
            }
        }
        out.iter_mut().for_each(|o| *o *= self.dims.dx());
        out
    }

    /// Marginal density of x: ∫ ψ†ψ dτ at each x sample.
    pub fn x_marginal(&self) -> Vec<f64> {
        let ntau = self.dims.ntau;
        let mut out = vec![0.0; self.dims.nx];
        for c in &self.comps {
            for (ix, o) in out.iter_mut().enumerate() {
                *o += c[ix * ntau..(ix + 1) * ntau].iter().map(|a| a.norm_sqr()).sum::<f64>();
            }
        }
        out.iter_mut().for_each(|o| *o *= self.dims.dtau());
        out
    }

    /// CSV snapshot, header `ix,itau,c0re,c0im,...,c3im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "ix,itau,c0re,c0im,c1re,c1im,c2re,c2im,c3re,c3im")?;
        for ix in 0..self.dims.nx {
            for itau in 0..self.dims.ntau {
                write!(w, "{ix},{itau}")?;
                for a in self.get(ix, itau).0 {
                    write!(w, ",{:.16e},{:.16e}", a.re, a.im)?;
                }
                writeln!(w)?;
            }
        }
        Ok(())
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            nx: self.dims.nx,
            ntau: self.dims.ntau,
            lx: self.dims.lx,
            ltau: self.dims.ltau,
            t: self.time,
        }
    }

    /// Rebuilds a field from a CSV snapshot and its JSON sidecar.
    pub fn read_snapshot<R: BufRead>(csv: R, sidecar: &Sidecar) -> Result<Field> {
        let dims = FieldDims::new(sidecar.nx, sidecar.ntau, sidecar.lx, sidecar.ltau)?;
        let mut field = Field::zeros(dims).with_time(sidecar.t);
        let mut seen = vec![false; dims.len()];
        let mut lines = csv.lines();
        let header = lines.next().transpose()?.unwrap_or_default();
        if header.trim() != "ix,itau,c0re,c0im,c1re,c1im,c2re,c2im,c3re,c3im" {
            return Err(SolverError::Snapshot(format!("unexpected header {header:?}")));
        }
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |what: &str| SolverError::Snapshot(format!("row {}: {what}", lineno + 2));
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 10 {
                return Err(bad("expected 10 columns"));
            }
            let ix: usize = cols[0].trim().parse().map_err(|_| bad("bad ix"))?;
            let itau: usize = cols[1].trim().parse().map_err(|_| bad("bad itau"))?;
            if ix >= dims.nx || itau >= dims.ntau {
                return Err(bad("index out of range"));
            }
            let mut vals = [0.0; 8];
            for (v, s) in vals.iter_mut().zip(&cols[2..]) {
                *v = s.trim().parse().map_err(|_| bad("bad amplitude"))?;
            }
            let spinor = crate::spinor::Spinor(std::array::from_fn(|c| {
                Complex64::new(vals[2 * c], vals[2 * c + 1])
            }));
            field.set(ix, itau, spinor);
            seen[dims.index(ix, itau)] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(SolverError::Snapshot("missing grid rows".into()));
        }
        Ok(field)
    }
}

/// JSON metadata written next to a field snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub nx: usize,
    pub ntau: usize,
    pub lx: f64,
    pub ltau: f64,
    pub t: f64,
}

/// Cached FFT plans for one grid shape. Forward transforms use e^{−ikx};
/// inverses are normalized.
pub(crate) struct Fft2 {
    nx: usize,
    ntau: usize,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_tau: Arc<dyn Fft<f64>>,
    inv_tau: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub(crate) fn new(dims: &FieldDims) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx: dims.nx,
            ntau: dims.ntau,
            fwd_x: planner.plan_fft_forward(dims.nx),
            inv_x: planner.plan_fft_inverse(dims.nx),
            fwd_tau: planner.plan_fft_forward(dims.ntau),
            inv_tau: planner.plan_fft_inverse(dims.ntau),
        }
    }

    // rows are contiguous in τ, so one call transforms every row
    fn along_tau(&self, plane: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        fft.process(plane);
    }

    fn along_x(&self, plane: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let (nx, ntau) = (self.nx, self.ntau);
        let mut t = vec![Complex64::new(0.0, 0.0); plane.len()];
        for ix in 0..nx {
            for itau in 0..ntau {
                t[itau * nx + ix] = plane[ix * ntau + itau];
            }
        }
        fft.process(&mut t);
        for ix in 0..nx {
            for itau in 0..ntau {
                plane[ix * ntau + itau] = t[itau * nx + ix];
            }
        }
    }

    pub(crate) fn forward_tau(&self, comps: &mut [Vec<Complex64>; 4]) {
        for c in comps.iter_mut() {
            self.along_tau(c, &self.fwd_tau);
        }
    }

    pub(crate) fn inverse_tau(&self, comps: &mut [Vec<Complex64>; 4]) {
        let s = 1.0 / self.ntau as f64;
        for c in comps.iter_mut() {
            self.along_tau(c, &self.inv_tau);
            c.iter_mut().for_each(|a| *a *= s);
        }
    }

    pub(crate) fn forward(&self, comps: &mut [Vec<Complex64>; 4]) {
        for c in comps.iter_mut() {
            self.along_tau(c, &self.fwd_tau);
            self.along_x(c, &self.fwd_x);
        }
    }

    pub(crate) fn inverse(&self, comps: &mut [Vec<Complex64>; 4]) {
        let s = 1.0 / (self.nx * self.ntau) as f64;
        for c in comps.iter_mut() {
            self.along_x(c, &self.inv_x);
            self.along_tau(c, &self.inv_tau);
            c.iter_mut().for_each(|a| *a *= s);
        }
    }
}

/// 1-D transforms of a spinor profile along x.
pub(crate) fn fft_profile(profile: &[Spinor4], inverse: bool) -> Vec<Spinor4> {
    let n = profile.len();
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    let mut out = profile.to_vec();
    for c in 0..4 {
        let mut buf: Vec<Complex64> = profile.iter().map(|s| s.0[c]).collect();
        fft.process(&mut buf);
        let scale = if inverse { 1.0 / n as f64 } else { 1.0 };
        for (o, b) in out.iter_mut().zip(buf) {
            o.0[c] = b * scale;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims() -> FieldDims {
        FieldDims::new(8, 4, 4.0, 2.0).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert_eq!(FieldDims::new(100, 64, 1.0, 1.0), Err(SolverError::GridSize(100)));
        assert_eq!(FieldDims::new(2, 64, 1.0, 1.0), Err(SolverError::GridSize(2)));
        assert!(matches!(FieldDims::new(8, 8, 0.0, 1.0), Err(SolverError::Period(_))));
    }

    #[test]
    fn wavenumber_bins() {
        let d = dims();
        assert_eq!(d.k(1), 2.0 * PI / 4.0);
        assert_eq!(d.k(7), -2.0 * PI / 4.0);
        assert_eq!(d.k(4), -PI / d.dx());
        assert_eq!(d.k_bin(-2.0 * PI / 4.0), Ok(7));
        assert_eq!(d.kappa_bin(2.0 * PI / 2.0), Ok(1));
        assert!(d.k_bin(0.3).is_err());
        // +N/2 aliases onto the −N/2 bin and is rejected
        assert!(d.k_bin(PI / d.dx()).is_err());
    }

    #[test]
    fn fft_round_trip() {
        let d = dims();
        let f = Field::from_fn(d, |x, tau| {
            Spinor4::from_real([x, tau, x * tau, 1.0]).scale(Complex64::new(0.5, -0.25))
        });
        let plans = Fft2::new(&d);
        let (_, _, mut comps) = f.clone().into_parts();
        plans.forward(&mut comps);
        plans.inverse(&mut comps);
        let back = Field::from_parts(d, 0.0, comps);
        assert!(back.max_abs_diff(&f) < 1e-13);
    }

    #[test]
    fn forward_transform_sign() {
        // e^{+ikx} lands in bin +1 under the e^{-ikx} forward convention.
        let d = dims();
        let k = d.k(1);
        let f = Field::from_fn(d, |x, _| Spinor4::basis(0).scale(Complex64::from_polar(1.0, k * x)));
        let (_, _, mut comps) = f.into_parts();
        Fft2::new(&d).forward(&mut comps);
        let peak = comps[0]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap()
            .0;
        assert_eq!(peak, d.index(1, 0));
    }

    #[test]
    fn snapshot_round_trip() {
        let d = dims();
        let f = Field::from_fn(d, |x, tau| {
            Spinor4::from_real([x.sin(), tau.cos(), 1.0 / 3.0, -x]).scale(Complex64::new(0.1, 0.7))
        })
        .with_time(1.5);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = Field::read_snapshot(buf.as_slice(), &f.sidecar()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn snapshot_rejects_truncated_csv() {
        let d = dims();
        let f = Field::zeros(d);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(Field::read_snapshot(truncated.as_bytes(), &f.sidecar()).is_err());
    }

    #[test]
    fn marginals_integrate_to_norm() {
        let d = dims();
        let f = Field::from_fn(d, |x, tau| Spinor4::from_real([x, 0.0, tau, 1.0]));
        let n2 = f.norm_sqr();
        let tm: f64 = f.tau_marginal().iter().sum::<f64>() * d.dtau();
        let xm: f64 = f.x_marginal().iter().sum::<f64>() * d.dx();
        assert!((tm - n2).abs() < 1e-12 * n2);
        assert!((xm - n2).abs() < 1e-12 * n2);
    }
}
