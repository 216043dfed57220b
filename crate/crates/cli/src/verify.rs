//! The verification suite: every invariant of the kinematic, spinor and
//! solver layers, measured as a residual against a tolerance.
//!
//! Randomness: a master `SplitMix64(seed)` hands each claim, in table order,
//! one `next_u64()` as the seed of its own stream. Adding a claim at the end
//! leaves the draws of earlier claims unchanged.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use tauspinor::kinematics::{
    classify, gamma, integrate_timeline_fn, rotate_r, rotate_s, rotation_matrix,
    state_from_velocity, uniform_grid, velocity_from_state, KinematicState, Sign, Vec3,
};
use tauspinor::rng::SplitMix64;
use tauspinor::solver::{
    compare_standard_dirac, dirac_hamiltonian, ehrenfest_velocity, evolve, gaussian_packet,
    gaussian_profile, helicity_operator, lagrangian_residual, mass_spectrum, plane_wave_eigensystem,
    proper_time_reversal, project_mass_sector, translate_tau, uncertainty_check, Field, FieldDims,
    Packet, SpectrumRow,
};
use tauspinor::spinor::{
    anticommutator, bloch_vector, dequantize, dirac_alphas, dirac_beta, expectation, quantize,
    su2_rotation, Matrix4, Spinor4,
};

use crate::config::ScenarioConfig;

type Outcome = Result<f64, String>;

struct Ctx<'a> {
    cfg: &'a ScenarioConfig,
    dims: FieldDims,
}

struct Claim {
    id: &'static str,
    anchor: &'static str,
    tolerance: f64,
    run: fn(&Ctx, &mut SplitMix64) -> Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimRow {
    pub id: String,
    pub anchor: String,
    /// `None` when the check itself could not be carried out.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiracDump {
    pub alpha1: Matrix4,
    pub alpha2: Matrix4,
    pub alpha3: Matrix4,
    pub beta: Matrix4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: &'static str,
    pub versions: BTreeMap<&'static str, &'static str>,
    pub seed: u64,
    pub generator: &'static str,
    pub grid: FieldDims,
    pub summary: Summary,
    pub claims: Vec<ClaimRow>,
    pub dirac_matrices: DiracDump,
    /// Seconds since the Unix epoch. The only field that differs between
    /// runs with the same config.
    pub timestamp: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        text.push('\n');
        std::fs::write(path, text)
    }
}

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

pub fn run_verify(cfg: &ScenarioConfig) -> VerificationReport {
    let ctx = Ctx { cfg, dims: cfg.dims() };
    let mut master = SplitMix64::new(cfg.seed);
    let claims: Vec<ClaimRow> = CLAIMS
        .iter()
        .map(|c| {
            let mut rng = SplitMix64::new(master.next_u64());
            let tolerance = cfg.tolerance.unwrap_or(c.tolerance);
            let (residual, error) = match (c.run)(&ctx, &mut rng) {
                Ok(r) if r.is_finite() => (Some(r), None),
                Ok(r) => (None, Some(format!("non-finite residual {r}"))),
                Err(e) => (None, Some(e)),
            };
            ClaimRow {
                id: c.id.to_string(),
                anchor: c.anchor.to_string(),
                residual,
                tolerance,
                passed: residual.is_some_and(|r| r <= tolerance),
                error,
            }
        })
        .collect();
    let passed = claims.iter().filter(|c| c.passed).count();
    let [alpha1, alpha2, alpha3] = dirac_alphas();
    VerificationReport {
        tool: "tauspinor",
        versions: BTreeMap::from([
            ("tauspinor", tauspinor::VERSION),
            ("tauspinor-cli", env!("CARGO_PKG_VERSION")),
        ]),
        seed: cfg.seed,
        generator: "splitmix64",
        grid: ctx.dims,
        summary: Summary { total: claims.len(), passed, failed: claims.len() - passed },
        claims,
        dirac_matrices: DiracDump { alpha1, alpha2, alpha3, beta: dirac_beta() },
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn random_velocity(rng: &mut SplitMix64) -> Vec3 {
    rng.unit_vec3().vec() * rng.uniform(1e-3, 0.999)
}

/// A state safely away from the quadrant boundaries.
fn interior_state(rng: &mut SplitMix64) -> KinematicState {
    loop {
        let st = rng.kinematic_state();
        let (s, c) = st.phi().sin_cos();
        if s.abs() > 1e-6 && c.abs() > 1e-6 {
            return st;
        }
    }
}

fn sign_mismatch(a: Sign, b: Option<Sign>) -> f64 {
    if Some(a) == b {
        0.0
    } else {
        1.0
    }
}

// ---- kinematics ----

fn kin_unit_circle(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    Ok(max_of((0..10_000).map(|_| {
        let (v, td) = velocity_from_state(&rng.kinematic_state());
        (v.norm_sqr() + td * td - 1.0).abs()
    })))
}

fn kin_velocity_round_trip(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let v = random_velocity(rng);
        for branch in [Sign::Plus, Sign::Minus] {
            for helicity in [Sign::Plus, Sign::Minus] {
                let st = state_from_velocity(v, branch, helicity).map_err(err)?;
                let (back, td) = velocity_from_state(&st);
                let want = branch.value() / gamma(v).map_err(err)?;
                worst = worst.max(back.max_abs_diff(v)).max((td - want).abs());
            }
        }
    }
    Ok(worst)
}

fn kin_spin_rotation_norm(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut st = rng.kinematic_state();
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        st = rotate_s(&st, rng.unit_vec3(), rng.uniform(-PI, PI));
        worst = worst.max((st.s().vec().norm() - 1.0).abs());
    }
    Ok(worst)
}

fn kin_r_rotation_inverse(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    Ok(max_of((0..10_000).map(|_| {
        let st = rng.kinematic_state();
        let d = rng.uniform(-10.0, 10.0);
        let back = rotate_r(&rotate_r(&st, d), -d);
        let diff = (back.phi() - st.phi()).abs();
        diff.min(2.0 * PI - diff)
    })))
}

fn kin_helicity_pair(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    Ok(max_of((0..10_000).map(|_| {
        let st = rng.kinematic_state();
        let flipped = KinematicState::new(-st.phi(), -st.s());
        let (a, ta) = velocity_from_state(&st);
        let (b, tb) = velocity_from_state(&flipped);
        a.max_abs_diff(b).max((ta - tb).abs())
    })))
}

fn kin_classify_spin_invariant(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let st = interior_state(rng);
        let rotated = rotate_s(&st, rng.unit_vec3(), rng.uniform(-PI, PI));
        if classify(&st).map_err(err)? != classify(&rotated).map_err(err)? {
            mismatches += 1;
        }
    }
    Ok(mismatches as f64)
}

fn kin_timeline_constant(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for branch in [Sign::Plus, Sign::Minus] {
        let v = random_velocity(rng);
        let t = uniform_grid(0.0, 10.0, 101);
        let tl = integrate_timeline_fn(|_| v, &t, branch).map_err(err)?;
        let g = gamma(v).map_err(err)?;
        for (i, (t, tau)) in tl.t.iter().zip(&tl.tau).enumerate() {
            worst = worst.max((tau - branch.value() * t / g).abs());
            worst = worst.max(tl.x[i].max_abs_diff(v * *t));
        }
    }
    Ok(worst)
}

fn kin_timeline_order(_: &Ctx, _: &mut SplitMix64) -> Outcome {
    // v = sin(t/2) x̂ has τ(t) = 2 sin(t/2) in closed form
    let error = |n: usize| -> Outcome {
        let t = uniform_grid(0.0, 2.0, n + 1);
        let tl = integrate_timeline_fn(|t| Vec3::new((0.5 * t).sin(), 0.0, 0.0), &t, Sign::Plus).map_err(err)?;
        Ok((tl.tau.last().copied().unwrap_or(f64::NAN) - 2.0 * 1f64.sin()).abs())
    };
    Ok((error(50)? / error(100)? - 4.0).abs())
}

// ---- spinor ----

fn spin_dirac_algebra(_: &Ctx, _: &mut SplitMix64) -> Outcome {
    let alphas = dirac_alphas();
    let beta = dirac_beta();
    let id = Matrix4::identity();
    let mut worst = (beta * beta).max_abs_diff(&id);
    for (i, a) in alphas.iter().enumerate() {
        for (j, b) in alphas.iter().enumerate() {
            let want = if i == j { id.scale_re(2.0) } else { Matrix4::zero() };
            worst = worst.max(anticommutator(a, b).max_abs_diff(&want));
        }
        worst = worst.max(anticommutator(a, &beta).max_abs());
    }
    Ok(worst)
}

fn spin_quantize_expectations(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let st = rng.kinematic_state();
        let (v, td) = velocity_from_state(&st);
        let (a, b) = dequantize(&quantize(&st)).map_err(err)?;
        worst = worst.max(a.max_abs_diff(v)).max((b - td).abs());
    }
    Ok(worst)
}

fn spin_bloch_norm(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        worst = worst.max((bloch_vector(&rng.spinor::<2>()).map_err(err)?.norm_sqr() - 1.0).abs());
    }
    Ok(worst)
}

fn spin_rotation_covariance(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let chi = rng.spinor::<2>();
        let axis = rng.unit_vec3();
        let theta = rng.uniform(-2.0 * PI, 2.0 * PI);
        let b = bloch_vector(&chi).map_err(err)?.to_array();
        let r = rotation_matrix(axis, theta);
        let want = Vec3::new(
            r[0][0] * b[0] + r[0][1] * b[1] + r[0][2] * b[2],
            r[1][0] * b[0] + r[1][1] * b[1] + r[1][2] * b[2],
            r[2][0] * b[0] + r[2][1] * b[1] + r[2][2] * b[2],
        );
        let got = bloch_vector(&(su2_rotation(axis, theta) * chi)).map_err(err)?;
        worst = worst.max(got.max_abs_diff(want));
    }
    Ok(worst)
}

fn dirac_bloch_sum(psi: &Spinor4) -> Result<f64, String> {
    let [a1, a2, a3] = dirac_alphas();
    let mut total = 0.0;
    for m in [a1, a2, a3, dirac_beta()] {
        total += expectation(psi, &m).map_err(err)?.re.powi(2);
    }
    Ok(total)
}

fn spin_dirac_bound(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        // generic 4-spinors are entangled in the ρ ⊗ σ split
        worst = worst.max(dirac_bloch_sum(&rng.spinor::<4>())? - 1.0);
        worst = worst.max((dirac_bloch_sum(&quantize(&rng.kinematic_state()))? - 1.0).abs());
    }
    Ok(worst.max(0.0))
}

fn spin_quantize_classify(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut mismatches = 0.0;
    for _ in 0..10_000 {
        let st = interior_state(rng);
        let species = classify(&st).map_err(err)?;
        let (a, b) = dequantize(&quantize(&st)).map_err(err)?;
        mismatches += sign_mismatch(species.matter, Sign::of(b, 0.0));
        mismatches += sign_mismatch(species.helicity, Sign::of(a.dot(st.s().vec()), 0.0));
    }
    Ok(mismatches)
}

fn spin_su2_group(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    Ok(max_of((0..10_000).map(|_| {
        let axis = rng.unit_vec3();
        let (t1, t2) = (rng.uniform(-2.0 * PI, 2.0 * PI), rng.uniform(-2.0 * PI, 2.0 * PI));
        (su2_rotation(axis, t1) * su2_rotation(axis, t2)).max_abs_diff(&su2_rotation(axis, t1 + t2))
    })))
}

// ---- plane waves ----

fn random_momentum(rng: &mut SplitMix64) -> (Vec3, f64) {
    let p = Vec3::new(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
    (p, rng.uniform(-5.0, 5.0))
}

fn dirac_dispersion(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    Ok(max_of((0..1000).flat_map(|_| {
        let (p, m) = random_momentum(rng);
        let target = p.norm_sqr() + m * m;
        dirac_hamiltonian(p, m).hermitian_eigenvalues().map(move |e| (e * e - target).abs())
    })))
}

fn dirac_eigensystem(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (p, m) = random_momentum(rng);
        let hel = helicity_operator(p).map_err(err)?;
        for sol in plane_wave_eigensystem(p, m).map_err(err)? {
            let hu = hel * sol.spinor;
            let want = sol.spinor.scale(Complex64::new(sol.helicity.value(), 0.0));
            worst = worst.max(sol.residual()).max(hu.max_abs_diff(&want));
        }
    }
    Ok(worst)
}

fn breit_residual(p: Vec3, m: f64) -> Result<f64, String> {
    let [a1, a2, a3] = dirac_alphas();
    let beta = dirac_beta();
    let mut worst = 0.0f64;
    for sol in plane_wave_eigensystem(p, m).map_err(err)?.iter().filter(|s| s.energy > 0.0) {
        let u = &sol.spinor;
        let a = Vec3::new(
            expectation(u, &a1).map_err(err)?.re,
            expectation(u, &a2).map_err(err)?.re,
            expectation(u, &a3).map_err(err)?.re,
        );
        let b = expectation(u, &beta).map_err(err)?.re;
        worst = worst.max((a.dot(p) + b * m - sol.energy).abs());
    }
    Ok(worst)
}

fn dirac_breit(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (p, m) = random_momentum(rng);
        worst = worst.max(breit_residual(p, m)?);
    }
    // every (k, κ) mode of the configured grid
    let d = ctx.dims;
    for ik in 0..d.nx {
        for ikappa in 0..d.ntau {
            let (k, kappa) = (d.k(ik), d.kappa(ikappa));
            if k != 0.0 || kappa != 0.0 {
                worst = worst.max(breit_residual(Vec3::new(k, 0.0, 0.0), kappa)?);
            }
        }
    }
    Ok(worst)
}

// ---- fields ----

/// Packet built from the configured k0, κ0, width and branch.
pub fn config_packet(cfg: &ScenarioConfig) -> Packet {
    Packet {
        x0: 0.5 * cfg.lx,
        sigma_x: cfg.sigma_x,
        k0: cfg.k0,
        kappa: cfg.kappa0,
        spinor: Spinor4::basis(if cfg.helicity == Sign::Plus { 0 } else { 1 }),
        branch: cfg.branch.sign(),
    }
}

/// Sum of packets at four random mass modes with random spinors and both
/// energy branches. The self-mirrored Nyquist κ is never used.
fn mixed_field(dims: FieldDims, rng: &mut SplitMix64) -> Result<Field, String> {
    let half = (dims.ntau / 2) as i64;
    let mut field = Field::zeros(dims);
    for _ in 0..4 {
        let j = (rng.next_u64() % (2 * half - 1) as u64) as i64 - (half - 1);
        let packet = Packet {
            kappa: 2.0 * PI * j as f64 / dims.ltau,
            spinor: rng.spinor::<4>(),
            branch: None,
            x0: dims.lx * rng.uniform(0.3, 0.7),
            ..Packet::default_for(&dims)
        };
        let amp = rng.complex_normal();
        field = field.add(&gaussian_packet(dims, &packet).map_err(err)?.scale(amp));
    }
    Ok(field.normalized())
}

fn field_unitarity(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let mut f = mixed_field(ctx.dims, rng)?;
    let n0 = f.norm();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        f = evolve(&f, 0.01);
        worst = worst.max((f.norm() - n0).abs());
    }
    Ok(worst)
}

fn field_group(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let f = mixed_field(ctx.dims, rng)?;
    let (t1, t2) = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    Ok(evolve(&evolve(&f, t1), t2).max_abs_diff(&evolve(&f, t1 + t2)))
}

fn field_mass_closure(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let f = mixed_field(ctx.dims, rng)?;
    let t = rng.uniform(0.5, 5.0);
    let evolved = evolve(&f, t);
    let mut worst = 0.0f64;
    for ikappa in 0..ctx.dims.ntau {
        let kappa = ctx.dims.kappa(ikappa);
        let a = evolve(&project_mass_sector(&f, kappa).map_err(err)?, t);
        let b = project_mass_sector(&evolved, kappa).map_err(err)?;
        worst = worst.max(a.max_abs_diff(&b));
    }
    Ok(worst)
}

fn field_tau_translation(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let f = mixed_field(ctx.dims, rng)?;
    let t = rng.uniform(0.5, 5.0);
    let dtau = rng.uniform(-ctx.dims.ltau, ctx.dims.ltau);
    Ok(evolve(&translate_tau(&f, dtau), t).max_abs_diff(&translate_tau(&evolve(&f, t), dtau)))
}

fn weight_map(dims: &FieldDims, rows: &[SpectrumRow]) -> Result<BTreeMap<usize, f64>, String> {
    rows.iter().map(|r| Ok((dims.kappa_bin(r.kappa).map_err(err)?, r.weight))).collect()
}

fn field_tau_reversal(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let d = ctx.dims;
    let f = mixed_field(d, rng)?;
    let reversed = proper_time_reversal(&f);
    let t = rng.uniform(0.5, 5.0);
    let covariance = evolve(&reversed, t).max_abs_diff(&proper_time_reversal(&evolve(&f, t)));

    let before = weight_map(&d, &mass_spectrum(&f))?;
    let after = weight_map(&d, &mass_spectrum(&reversed))?;
    let mirror = max_of(before.iter().map(|(&bin, w)| {
        let mirrored = (d.ntau - bin) % d.ntau;
        (after[&mirrored] - w).abs()
    }));

    // energies: a positive-energy mode stays positive with the same E
    let mut energy = 0.0f64;
    for _ in 0..8 {
        let k = d.k((rng.next_u64() % d.nx as u64) as usize);
        let j = (rng.next_u64() % (d.ntau as u64 - 1)) as i64 - (d.ntau as i64 / 2 - 1);
        let kappa = 2.0 * PI * j as f64 / d.ltau;
        if k == 0.0 && kappa == 0.0 {
            continue;
        }
        let mode = tauspinor::solver::make_plane_wave(d, k, kappa, Sign::Plus, Sign::Plus).map_err(err)?;
        let rev = proper_time_reversal(&mode);
        let ov = rev.overlap(&evolve(&rev, t));
        let e = k.hypot(kappa);
        // compare phases on the unit circle to avoid 2π wrapping
        energy = energy.max((ov - Complex64::from_polar(1.0, -e * t)).norm());
    }
    Ok(covariance.max(mirror).max(energy))
}

fn field_parseval(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let f = mixed_field(ctx.dims, rng)?.scale(rng.complex_normal());
    let total: f64 = mass_spectrum(&f).iter().map(|r| r.weight).sum();
    Ok((total - f.norm_sqr()).abs() / f.norm_sqr().max(1.0))
}

fn field_standard_dirac(ctx: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let d = ctx.dims;
    let spin = rng.spinor::<4>();
    let profile: Vec<Spinor4> = gaussian_profile(d.nx, d.lx, 0.5 * d.lx, ctx.cfg.sigma_x, ctx.cfg.k0)
        .into_iter()
        .map(|g| spin.scale(g))
        .collect();
    compare_standard_dirac(d, &profile, ctx.cfg.kappa0, 5.0).map_err(err)
}

fn field_lagrangian_order(ctx: &Ctx, _: &mut SplitMix64) -> Outcome {
    let f = gaussian_packet(ctx.dims, &config_packet(ctx.cfg)).map_err(err)?;
    let r1 = lagrangian_residual(&f, 1e-3).map_err(err)?;
    let r2 = lagrangian_residual(&f, 5e-4).map_err(err)?;
    Ok((r1 / r2 - 4.0).abs())
}

fn field_lagrangian_value(ctx: &Ctx, _: &mut SplitMix64) -> Outcome {
    let f = gaussian_packet(ctx.dims, &config_packet(ctx.cfg)).map_err(err)?;
    lagrangian_residual(&f, 1e-3).map_err(err)
}

fn field_ehrenfest(ctx: &Ctx, _: &mut SplitMix64) -> Outcome {
    let f = gaussian_packet(ctx.dims, &config_packet(ctx.cfg)).map_err(err)?;
    let mut worst = 0.0f64;
    for i in 0..=8 {
        let s = ehrenfest_velocity(&f, 0.25 * i as f64, ctx.cfg.dt).map_err(err)?;
        if s.wrapped {
            return Err(format!("packet reached the x boundary at t = {}", s.t));
        }
        worst = worst.max(s.mismatch());
    }
    Ok(worst)
}

/// τ grid shared by the uncertainty claims, independent of the configured
/// one: the bound needs fields localized well inside the τ box.
fn uncertainty_dims() -> FieldDims {
    FieldDims { nx: 16, ntau: 64, lx: 16.0, ltau: 16.0 }
}

fn field_uncertainty(_: &Ctx, rng: &mut SplitMix64) -> Outcome {
    let d = uncertainty_dims();
    let mut deficit = 0.0f64;
    for _ in 0..1000 {
        let terms = 1 + (rng.next_u64() % 3) as usize;
        let mut f = Field::zeros(d);
        for _ in 0..terms {
            let g = gaussian_profile(
                d.ntau,
                d.ltau,
                0.5 * d.ltau + rng.uniform(-1.0, 1.0),
                rng.uniform(0.6, 1.1),
                rng.uniform(-4.0, 4.0),
            );
            let xs: Vec<Spinor4> = (0..d.nx).map(|_| rng.spinor::<4>().scale(rng.complex_normal())).collect();
            f = f.add(&Field::separable(d, &xs, &g).map_err(err)?);
        }
        deficit = deficit.max(0.5 - uncertainty_check(&f).map_err(err)?.product);
    }
    Ok(deficit.max(0.0))
}

fn field_uncertainty_gaussian(ctx: &Ctx, _: &mut SplitMix64) -> Outcome {
    let d = uncertainty_dims();
    let g = gaussian_profile(d.ntau, d.ltau, 0.5 * d.ltau, ctx.cfg.sigma_tau, 0.0);
    let xs = vec![Spinor4::basis(0); d.nx];
    let u = uncertainty_check(&Field::separable(d, &xs, &g).map_err(err)?).map_err(err)?;
    Ok((u.product - 0.5).abs())
}

const CLAIMS: &[Claim] = &[
    Claim { id: "kinematics.unit_circle", anchor: "velocity and proper-time rate are the components of one unit vector", tolerance: 1e-12, run: kin_unit_circle },
    Claim { id: "kinematics.velocity_round_trip", anchor: "velocity and branch determine the unit-vector state for either helicity convention", tolerance: 1e-12, run: kin_velocity_round_trip },
    Claim { id: "kinematics.spin_rotation_norm", anchor: "spin direction stays a unit vector under rotations", tolerance: 1e-12, run: kin_spin_rotation_norm },
    Claim { id: "kinematics.r_rotation_inverse", anchor: "rotations of the velocity-time unit vector are invertible", tolerance: 1e-12, run: kin_r_rotation_inverse },
    Claim { id: "kinematics.helicity_pair", anchor: "flipping both spin direction and angle describes the same motion", tolerance: 0.0, run: kin_helicity_pair },
    Claim { id: "kinematics.classify_spin_invariant", anchor: "quadrant species depend only on the velocity-time angle", tolerance: 0.0, run: kin_classify_spin_invariant },
    Claim { id: "kinematics.timeline_constant", anchor: "proper time along uniform motion is t/gamma", tolerance: 1e-10, run: kin_timeline_constant },
    Claim { id: "kinematics.timeline_order", anchor: "timeline integration converges at second order (|ratio - 4|)", tolerance: 0.5, run: kin_timeline_order },
    Claim { id: "spinor.dirac_algebra", anchor: "alpha and beta anticommute pairwise and square to the identity", tolerance: 0.0, run: spin_dirac_algebra },
    Claim { id: "spinor.quantize_expectations", anchor: "expectations of alpha and beta reproduce velocity and proper-time rate", tolerance: 1e-12, run: spin_quantize_expectations },
    Claim { id: "spinor.bloch_norm", anchor: "Pauli expectations of a two-spinor form a unit vector", tolerance: 1e-12, run: spin_bloch_norm },
    Claim { id: "spinor.rotation_covariance", anchor: "SU(2) rotation of a spinor rotates its Pauli expectations", tolerance: 1e-12, run: spin_rotation_covariance },
    Claim { id: "spinor.dirac_bound", anchor: "squared Dirac expectations sum to at most one, exactly one for product states", tolerance: 1e-12, run: spin_dirac_bound },
    Claim { id: "spinor.quantize_classify", anchor: "sign of <beta> gives matter, sign of <alpha>.s gives helicity", tolerance: 0.0, run: spin_quantize_classify },
    Claim { id: "spinor.su2_group", anchor: "rotations about one axis compose additively", tolerance: 1e-12, run: spin_su2_group },
    Claim { id: "solver.dispersion", anchor: "eigenvalues of the Dirac Hamiltonian obey E^2 = p^2 + m^2", tolerance: 1e-10, run: dirac_dispersion },
    Claim { id: "solver.eigensystem", anchor: "plane-wave spinors are joint energy and helicity eigenvectors", tolerance: 1e-10, run: dirac_eigensystem },
    Claim { id: "solver.breit", anchor: "<alpha>.p + <beta>m equals the energy for positive-energy modes", tolerance: 1e-10, run: dirac_breit },
    Claim { id: "solver.unitarity", anchor: "evolution conserves the probability norm", tolerance: 1e-10, run: field_unitarity },
    Claim { id: "solver.group", anchor: "evolution over t1 then t2 equals evolution over t1 + t2", tolerance: 1e-10, run: field_group },
    Claim { id: "solver.mass_closure", anchor: "evolution conserves the mass mode", tolerance: 1e-10, run: field_mass_closure },
    Claim { id: "solver.tau_translation", anchor: "evolution commutes with proper-time translation", tolerance: 1e-10, run: field_tau_translation },
    Claim { id: "solver.tau_reversal", anchor: "proper-time reversal commutes with evolution, mirrors mass, keeps energy", tolerance: 1e-10, run: field_tau_reversal },
    Claim { id: "solver.parseval", anchor: "mass-spectrum weights sum to the norm", tolerance: 1e-10, run: field_parseval },
    Claim { id: "solver.standard_dirac", anchor: "a single mass mode follows the ordinary Dirac equation", tolerance: 1e-10, run: field_standard_dirac },
    Claim { id: "solver.lagrangian_order", anchor: "field-equation residual of evolved fields falls at second order (|ratio - 4|)", tolerance: 0.5, run: field_lagrangian_order },
    Claim { id: "solver.lagrangian_value", anchor: "field-equation residual of evolved fields at dt = 1e-3", tolerance: 1e-6, run: field_lagrangian_value },
    Claim { id: "solver.ehrenfest", anchor: "d<x>/dt equals <alpha1>", tolerance: 1e-4, run: field_ehrenfest },
    Claim { id: "solver.uncertainty", anchor: "proper time and mass obey dtau dkappa >= 1/2 (deficit)", tolerance: 1e-6, run: field_uncertainty },
    Claim { id: "solver.uncertainty_gaussian", anchor: "a Gaussian in proper time saturates dtau dkappa = 1/2", tolerance: 1e-3, run: field_uncertainty_gaussian },
];
