//! Data scenarios. Each writes plot-ready CSVs into `<out>/<scenario>/` and a
//! `manifest.json` listing them together with the checks it made.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use tauspinor::kinematics::{classify, integrate_timeline_fn, uniform_grid, KinematicState, Sign, UnitVec3, Vec3};
use tauspinor::rng::SplitMix64;
use tauspinor::solver::{
    alpha1_expectation, ehrenfest_velocity, evolve, gaussian_packet, gaussian_profile,
    make_plane_wave, mass_spectrum, mean_position, proper_time_reversal, uncertainty_check,
    write_spectrum_csv, Field, Packet, SpectrumRow,
};
use tauspinor::spinor::{dequantize, quantize, Spinor4};
use thiserror::Error;

use crate::config::{as_map, ScenarioConfig};
use crate::verify::config_packet;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}`; run `tauspinor list-scenarios`")]
    Unknown(String),
    #[error("{0}")]
    Compute(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn compute<E: std::fmt::Display>(e: E) -> ScenarioError {
    ScenarioError::Compute(e.to_string())
}

pub const SCENARIOS: &[(&str, &str)] = &[
    ("timeline", "proper time and position along uniform motion, particle and antiparticle"),
    ("quadrants", "species of the velocity-time angle around the circle"),
    ("evolution", "field snapshots and observables of a Gaussian packet"),
    ("mass-spectrum", "mass spectrum of a single plane wave"),
    ("ehrenfest", "mean-position slope against <alpha1> for a boosted packet"),
    ("zitterbewegung", "<x> and <alpha1> of a packet carrying both energy branches"),
    ("tau-reversal", "mass spectra and energies before and after proper-time reversal"),
    ("uncertainty", "dtau, dkappa and their product for Gaussians of varying width"),
];

/// One pass/fail check recorded in the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, value: f64, tolerance: f64) -> Self {
        Self { name: name.to_string(), value, tolerance, passed: value <= tolerance }
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub scenario: String,
    pub seed: u64,
    pub config: BTreeMap<String, Value>,
    /// Paths of every data file written, relative to the scenario directory.
    pub files: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl Manifest {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Output {
    dir: PathBuf,
    files: Vec<String>,
    checks: Vec<Check>,
    notes: BTreeMap<String, Value>,
}

impl Output {
    fn new(dir: PathBuf) -> Result<Self, ScenarioError> {
        std::fs::create_dir_all(&dir).map_err(|source| ScenarioError::Io { path: dir.clone(), source })?;
        Ok(Self { dir, files: Vec::new(), checks: Vec::new(), notes: BTreeMap::new() })
    }

    fn io(&self, name: &str) -> impl Fn(std::io::Error) -> ScenarioError + '_ {
        let path = self.dir.join(name);
        move |source| ScenarioError::Io { path: path.clone(), source }
    }

    /// Writes `name` through `body` and records it.
    fn write(
        &mut self,
        name: &str,
        body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
    ) -> Result<(), ScenarioError> {
        let file = File::create(self.dir.join(name)).map_err(self.io(name))?;
        let mut w = BufWriter::new(file);
        body(&mut w).and_then(|_| w.flush()).map_err(self.io(name))?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), ScenarioError> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value).map_err(std::io::Error::other)?;
            writeln!(w)
        })
    }

    fn check(&mut self, name: &str, value: f64, tolerance: f64) {
        self.checks.push(Check::new(name, value, tolerance));
    }

    fn finish(self, cfg: &ScenarioConfig, scenario: &str) -> Result<Manifest, ScenarioError> {
        let manifest = Manifest {
            scenario: scenario.to_string(),
            seed: cfg.seed,
            config: as_map(cfg),
            files: self.files,
            checks: self.checks,
            notes: self.notes,
        };
        let path = self.dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest).map_err(compute)? + "\n";
        std::fs::write(&path, text).map_err(|source| ScenarioError::Io { path, source })?;
        Ok(manifest)
    }
}

pub fn scenario_dir(cfg: &ScenarioConfig, scenario: &str) -> PathBuf {
    cfg.out.join(scenario)
}

pub fn run_scenario(cfg: &ScenarioConfig, scenario: &str) -> Result<Manifest, ScenarioError> {
    let body: fn(&ScenarioConfig, &mut Output) -> Result<(), ScenarioError> = match scenario {
        "timeline" => timeline,
        "quadrants" => quadrants,
        "evolution" => evolution,
        "mass-spectrum" => spectrum,
        "ehrenfest" => ehrenfest,
        "zitterbewegung" => zitterbewegung,
        "tau-reversal" => tau_reversal,
        "uncertainty" => uncertainty,
        other => return Err(ScenarioError::Unknown(other.to_string())),
    };
    let mut out = Output::new(scenario_dir(cfg, scenario))?;
    body(cfg, &mut out)?;
    out.finish(cfg, scenario)
}

/// Sample times t_final·i/(n − 1), or just 0 for n = 1.
fn sample_times(cfg: &ScenarioConfig, n: usize) -> Vec<f64> {
    if n <= 1 {
        vec![0.0]
    } else {
        uniform_grid(0.0, cfg.t_final, n)
    }
}

fn plane_wave_branch(cfg: &ScenarioConfig) -> Sign {
    cfg.branch.sign().unwrap_or(Sign::Plus)
}

fn timeline(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let v = Vec3::new(cfg.velocity, 0.0, 0.0);
    let t = uniform_grid(0.0, cfg.t_final, 1001);
    let inv_gamma = (1.0 - cfg.velocity * cfg.velocity).sqrt();
    for (name, branch) in [("timeline_particle.csv", Sign::Plus), ("timeline_antiparticle.csv", Sign::Minus)] {
        let tl = integrate_timeline_fn(|_| v, &t, branch).map_err(compute)?;
        let last = *tl.tau.last().expect("nonempty grid");
        out.check(&format!("{name}: final tau vs t/gamma"), (last - branch.value() * cfg.t_final * inv_gamma).abs(), 1e-9);
        out.write(name, |w| tl.write_csv(w))?;
    }
    Ok(())
}

fn quadrants(_: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let n = 360;
    out.write("quadrants.csv", |w| {
        // r1 = sin φ is the speed along ŝ, r3 = cos φ the proper-time rate
        writeln!(w, "phi,r1,r3,matter,helicity,species")?;
        for i in 0..n {
            let phi = -PI + 2.0 * PI * (i + 1) as f64 / n as f64;
            let st = KinematicState::new(phi, UnitVec3::Z);
            let (s, c) = st.phi().sin_cos();
            let (matter, helicity, label) = match classify(&st) {
                Ok(sp) => (sp.matter.value(), sp.helicity.value(), sp.label()),
                Err(_) => (0.0, 0.0, "boundary"),
            };
            writeln!(w, "{:.16e},{s:.16e},{c:.16e},{matter},{helicity},{label}", st.phi())?;
        }
        Ok(())
    })?;

    let reps = [
        (PI / 4.0, "spin-up particle"),
        (3.0 * PI / 4.0, "spin-up antiparticle"),
        (-3.0 * PI / 4.0, "spin-down antiparticle"),
        (-PI / 4.0, "spin-down particle"),
    ];
    let mut rows = Vec::new();
    let mut mismatches = 0.0;
    for (phi, expected) in reps {
        let st = KinematicState::new(phi, UnitVec3::Z);
        let label = classify(&st).map_err(compute)?.label();
        let (a, b) = dequantize(&quantize(&st)).map_err(compute)?;
        if label != expected {
            mismatches += 1.0;
        }
        rows.push((phi, label, b, a.dot(st.s().vec())));
    }
    out.check("representative quadrant labels (mismatches)", mismatches, 0.0);
    out.write("representatives.csv", |w| {
        writeln!(w, "phi,species,beta,alpha_dot_s")?;
        for (phi, label, b, h) in &rows {
            writeln!(w, "{phi:.16e},{label},{b:.16e},{h:.16e}")?;
        }
        Ok(())
    })
}

fn evolution(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let field = gaussian_packet(cfg.dims(), &config_packet(cfg)).map_err(compute)?;
    let times = sample_times(cfg, cfg.n_snapshots);
    let mut obs = Vec::new();
    let mut drift = 0.0f64;
    for (i, &t) in times.iter().enumerate() {
        let f = evolve(&field, t);
        drift = drift.max((f.norm() - 1.0).abs());
        obs.push((t, f.norm(), mean_position(&f).map_err(compute)?, alpha1_expectation(&f).map_err(compute)?));
        out.write(&format!("snapshot_{i:03}.csv"), |w| f.write_csv(w))?;
        out.write_json(&format!("snapshot_{i:03}.json"), &f.sidecar())?;
    }
    out.check("norm drift", drift, 1e-10);
    out.write("observables.csv", |w| {
        writeln!(w, "t,norm,mean_x,alpha1")?;
        for (t, n, x, a) in &obs {
            writeln!(w, "{t:.16e},{n:.16e},{x:.16e},{a:.16e}")?;
        }
        Ok(())
    })
}

fn spectrum(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let f = make_plane_wave(cfg.dims(), cfg.k0, cfg.kappa0, plane_wave_branch(cfg), cfg.helicity).map_err(compute)?;
    let rows = nonzero(&mass_spectrum(&f));
    let total: f64 = rows.iter().map(|r| r.weight).sum();
    out.check("weight sum vs norm^2", (total - f.norm_sqr()).abs(), 1e-10);
    out.notes.insert("rows".into(), json!(rows.len()));
    out.write("spectrum.csv", |w| write_spectrum_csv(&rows, w))
}

/// Rows carrying more than 1e-12 of the total weight.
fn nonzero(rows: &[SpectrumRow]) -> Vec<SpectrumRow> {
    let total: f64 = rows.iter().map(|r| r.weight).sum();
    rows.iter().copied().filter(|r| r.weight > 1e-12 * total).collect()
}

fn ehrenfest(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let field = gaussian_packet(cfg.dims(), &config_packet(cfg)).map_err(compute)?;
    let mut samples = Vec::new();
    for t in sample_times(cfg, cfg.n_snapshots) {
        samples.push(ehrenfest_velocity(&field, t, cfg.dt).map_err(compute)?);
    }
    let worst = samples.iter().map(|s| s.mismatch()).fold(0.0, f64::max);
    let wrapped = samples.iter().filter(|s| s.wrapped).count();
    out.check("max |d<x>/dt - <alpha1>|", worst, 1e-4);
    out.check("samples touching the x boundary", wrapped as f64, 0.0);
    out.write("ehrenfest.csv", |w| {
        writeln!(w, "t,mean_x,alpha1,slope,mismatch,wrapped")?;
        for s in &samples {
            writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}", s.t, s.mean_x, s.alpha1, s.slope, s.mismatch(), s.wrapped as u8)?;
        }
        Ok(())
    })
}

fn zitterbewegung(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let packet = Packet { branch: None, ..config_packet(cfg) };
    let field = gaussian_packet(cfg.dims(), &packet).map_err(compute)?;
    let times = sample_times(cfg, cfg.n_snapshots.max(201));
    let mut rows = Vec::new();
    for &t in &times {
        let f = evolve(&field, t);
        rows.push((t, mean_position(&f).map_err(compute)?, alpha1_expectation(&f).map_err(compute)?));
    }
    let (lo, hi) = rows.iter().fold((f64::MAX, f64::MIN), |(lo, hi), r| (lo.min(r.2), hi.max(r.2)));
    out.notes.insert("alpha1_range".into(), json!([lo, hi]));
    out.write("zitterbewegung.csv", |w| {
        writeln!(w, "t,mean_x,alpha1")?;
        for (t, x, a) in &rows {
            writeln!(w, "{t:.16e},{x:.16e},{a:.16e}")?;
        }
        Ok(())
    })
}

fn tau_reversal(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let dims = cfg.dims();
    let step = 2.0 * PI / dims.ltau;
    // the configured packet plus a weaker one one mass unit higher
    let main = gaussian_packet(dims, &config_packet(cfg)).map_err(compute)?;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut second_kappa = cfg.kappa0 + step;
    if dims.kappa_bin(second_kappa).is_err() || dims.kappa_bin(-second_kappa).is_err() {
        second_kappa = cfg.kappa0 - step;
    }
    let extra = Packet { kappa: second_kappa, spinor: rng.spinor::<4>(), branch: None, ..config_packet(cfg) };
    let field = main.add(&gaussian_packet(dims, &extra).map_err(compute)?.scale(Complex64::new(0.5, 0.0))).normalized();
    let reversed = proper_time_reversal(&field);

    let before = mass_spectrum(&field);
    let after = mass_spectrum(&reversed);
    let mirror = before
        .iter()
        .map(|r| {
            let target = if dims.kappa_bin(-r.kappa).is_ok() { -r.kappa } else { r.kappa };
            let w = after.iter().find(|a| (a.kappa - target).abs() < 1e-9).map_or(f64::INFINITY, |a| a.weight);
            (w - r.weight).abs()
        })
        .fold(0.0, f64::max);
    out.check("spectrum mirror residual", mirror, 1e-10);
    let t = cfg.t_final.max(1.0);
    let covariance = evolve(&reversed, t).max_abs_diff(&proper_time_reversal(&evolve(&field, t)));
    out.check("reversal commutes with evolution", covariance, 1e-10);
    out.write("spectrum_before.csv", |w| write_spectrum_csv(&nonzero(&before), w))?;
    out.write("spectrum_after.csv", |w| write_spectrum_csv(&nonzero(&after), w))?;

    // energy read off the evolution phase of single modes, before and after
    let mut energies = Vec::new();
    let mut worst = 0.0f64;
    let t_phase = 0.1;
    for n in [0i32, 1, 3] {
        for j in [1i32, 2, -1] {
            let (k, kappa) = (2.0 * PI * n as f64 / dims.lx, j as f64 * step);
            if dims.k_bin(k).is_err() || dims.kappa_bin(kappa).is_err() || dims.kappa_bin(-kappa).is_err() {
                continue;
            }
            let mode = make_plane_wave(dims, k, kappa, Sign::Plus, Sign::Plus).map_err(compute)?;
            let measure = |f: &Field| -f.overlap(&evolve(f, t_phase)).arg() / t_phase;
            let (e0, e1) = (measure(&mode), measure(&proper_time_reversal(&mode)));
            worst = worst.max((e0 - e1).abs());
            energies.push((k, kappa, e0, e1));
        }
    }
    out.check("energy change under reversal", worst, 1e-10);
    out.write("energies.csv", |w| {
        writeln!(w, "k,kappa,energy_before,energy_after")?;
        for (k, kappa, e0, e1) in &energies {
            writeln!(w, "{k:.16e},{kappa:.16e},{e0:.16e},{e1:.16e}")?;
        }
        Ok(())
    })
}

fn uncertainty(cfg: &ScenarioConfig, out: &mut Output) -> Result<(), ScenarioError> {
    let dims = cfg.dims();
    let xs = vec![Spinor4::basis(0); dims.nx];
    let widths: Vec<f64> = (0..12).map(|i| 0.4 + (dims.ltau / 10.0 - 0.4) * i as f64 / 11.0).collect();
    let mut rows = Vec::new();
    for &s in widths.iter().chain(std::iter::once(&cfg.sigma_tau)) {
        let g = gaussian_profile(dims.ntau, dims.ltau, 0.5 * dims.ltau, s, 0.0);
        let u = uncertainty_check(&Field::separable(dims, &xs, &g).map_err(compute)?).map_err(compute)?;
        rows.push((s, u));
    }
    let configured = rows.last().expect("configured width").1;
    out.check("configured Gaussian |product - 1/2|", (configured.product - 0.5).abs(), 1e-3);
    out.write("uncertainty.csv", |w| {
        writeln!(w, "sigma_tau,delta_tau,delta_kappa,product")?;
        for (s, u) in &rows[..rows.len() - 1] {
            writeln!(w, "{s:.16e},{:.16e},{:.16e},{:.16e}", u.delta_tau, u.delta_kappa, u.product)?;
        }
        Ok(())
    })
}
