//! Special-relativistic kinematics as rotations of two unit vectors.
//!
//! A velocity `v` (units of c) is carried by the pair (r̂, ŝ):
//!
//! * r̂ = (sin φ, 0, cos φ) lives in the kinematic plane. Its third component
//!   is the proper-time rate τ̇ = dτ/dt and its first is the signed speed.
//! * ŝ is the 3D direction of motion.
//!
//! so that ẋ = sin φ · ŝ and τ̇ = cos φ, with |ẋ|² + τ̇² = 1.
//!
//! States with cos φ < 0 run backwards in proper time (antiparticles), and the
//! pair (ŝ, φ) describes the same velocity as (−ŝ, −φ), a classical twofold
//! degeneracy that maps onto helicity.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used to decide that cos φ or sin φ sits on a quadrant boundary.
pub const BOUNDARY_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("speed {0} is not subluminal (|v| must be < 1)")]
    Superluminal(f64),
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    #[error("momentum must be nonzero")]
    ZeroMomentum,
    #[error("mass must be nonnegative, got {0}")]
    NegativeMass(f64),
    #[error("massless particle at rest has no energy scale")]
    NullFourMomentum,
    #[error("light-like state: cos(phi) = 0, matter sign undefined")]
    LightLike,
    #[error("state at rest: sin(phi) = 0, helicity undefined")]
    AtRest,
    #[error("timeline needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("time grid must be strictly increasing (index {0})")]
    NonMonotonicTime(usize),
    #[error("velocity samples ({velocities}) and time grid ({times}) differ in length")]
    LengthMismatch { velocities: usize, times: usize },
    #[error("sample {index}: speed {speed} is not subluminal")]
    SuperluminalSample { index: usize, speed: f64 },
}

pub type Result<T, E = KinematicsError> = std::result::Result<T, E>;

/// A ±1 label: matter sign (particle/antiparticle), helicity, or energy branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Sign of `x`, or `None` when `|x| <= eps`.
    pub fn of(x: f64, eps: f64) -> Option<Sign> {
        if x > eps {
            Some(Sign::Plus)
        } else if x < -eps {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i32> for Sign {
    type Error = i32;

    fn try_from(v: i32) -> std::result::Result<Self, i32> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(other),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs_diff(self, o: Vec3) -> f64 {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// A direction on the unit sphere. Construction normalizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVec3 = UnitVec3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVec3 = UnitVec3(Vec3::new(0.0, 0.0, 1.0));

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::normalize(Vec3::new(x, y, z))
    }

    pub fn normalize(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(KinematicsError::NonFinite("unit vector"));
        }
        let n = v.norm();
        if n == 0.0 {
            return Err(KinematicsError::ZeroVector);
        }
        Ok(UnitVec3(v * (1.0 / n)))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;
    fn neg(self) -> UnitVec3 {
        UnitVec3(-self.0)
    }
}

/// Wraps an angle into (−π, π].
pub fn normalize_angle(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let r = (PI - a).rem_euclid(2.0 * PI);
    PI - r
}

/// Rotation matrix for a right-handed rotation by `theta` about `axis`.
pub fn rotation_matrix(axis: UnitVec3, theta: f64) -> [[f64; 3]; 3] {
    let (s, c) = theta.sin_cos();
    let t = 1.0 - c;
    let Vec3 { x, y, z } = axis.vec();
    [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ]
}

/// Rodrigues rotation of `v` about `axis`.
pub fn rotate_vector(v: Vec3, axis: UnitVec3, theta: f64) -> Vec3 {
    let k = axis.vec();
    let (s, c) = theta.sin_cos();
    v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c))
}

/// The classical pair (r̂, ŝ). Only φ is stored so that r̂ stays a unit
/// vector in the r₁–r₃ plane by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinematicState {
    phi: f64,
    s: UnitVec3,
}

impl KinematicState {
    pub fn new(phi: f64, s: UnitVec3) -> Self {
        Self { phi: normalize_angle(phi), s }
    }

    /// Kinematic-plane angle in (−π, π].
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn s(&self) -> UnitVec3 {
        self.s
    }

    /// r̂ = (sin φ, 0, cos φ).
    pub fn r(&self) -> UnitVec3 {
        let (s, c) = self.phi.sin_cos();
        UnitVec3(Vec3::new(s, 0.0, c))
    }

    /// τ̇ = cos φ.
    pub fn proper_time_rate(&self) -> f64 {
        self.phi.cos()
    }

    pub fn velocity(&self) -> Vec3 {
        self.s.vec() * self.phi.sin()
    }
}

/// Species label read off the kinematic-plane quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Species {
    pub matter: Sign,
    pub helicity: Sign,
}

impl Species {
    pub fn label(&self) -> &'static str {
        match (self.matter, self.helicity) {
            (Sign::Plus, Sign::Plus) => "spin-up particle",
            (Sign::Plus, Sign::Minus) => "spin-down particle",
            (Sign::Minus, Sign::Plus) => "spin-up antiparticle",
            (Sign::Minus, Sign::Minus) => "spin-down antiparticle",
        }
    }
}

fn check_subluminal(v: Vec3) -> Result<f64> {
    if !v.is_finite() {
        return Err(KinematicsError::NonFinite("velocity"));
    }
    let speed = v.norm();
    if speed >= 1.0 {
        return Err(KinematicsError::Superluminal(speed));
    }
    Ok(speed)
}

/// Lorentz factor (1 − v²)^(−1/2).
pub fn gamma(v: Vec3) -> Result<f64> {
    check_subluminal(v)?;
    Ok(1.0 / (1.0 - v.norm_sqr()).sqrt())
}

/// dτ/dt = ±1/γ, positive for particles and negative for antiparticles.
pub fn proper_time_rate(v: Vec3, branch: Sign) -> Result<f64> {
    check_subluminal(v)?;
    Ok(branch.value() * (1.0 - v.norm_sqr()).sqrt())
}

/// Builds the (r̂, ŝ) pair for velocity `v`.
///
/// Helicity +1 takes ŝ along `v` with sin φ = |v|; helicity −1 takes ŝ
/// against `v` with sin φ = −|v|. At rest ŝ = ẑ for either helicity and φ is 0 or π
/// according to `branch`.
pub fn state_from_velocity(v: Vec3, branch: Sign, helicity: Sign) -> Result<KinematicState> {
    let speed = check_subluminal(v)?;
    let cos_phi = branch.value() * (1.0 - speed * speed).sqrt();
    if speed == 0.0 {
        // ŝ has no classical meaning at rest; pin it to the quantization axis
        return Ok(KinematicState::new(cos_phi.acos(), UnitVec3::Z));
    }
    let dir = UnitVec3::normalize(v)?;
    let (s, sin_phi) = match helicity {
        Sign::Plus => (dir, speed),
        Sign::Minus => (-dir, -speed),
    };
    Ok(KinematicState::new(sin_phi.atan2(cos_phi), s))
}

/// Returns (ẋ, τ̇) = (sin φ · ŝ, cos φ).
pub fn velocity_from_state(state: &KinematicState) -> (Vec3, f64) {
    (state.velocity(), state.proper_time_rate())
}

/// Rotates r̂ about the r₂ axis: φ → φ + dphi.
pub fn rotate_r(state: &KinematicState, dphi: f64) -> KinematicState {
    KinematicState::new(state.phi + dphi, state.s)
}

/// Rotates ŝ about `axis` by `theta`; φ is untouched.
pub fn rotate_s(state: &KinematicState, axis: UnitVec3, theta: f64) -> KinematicState {
    let rotated = rotate_vector(state.s.vec(), axis, theta);
    // rotation of a unit vector never yields zero
    let s = UnitVec3::normalize(rotated).expect("rotated unit vector is nonzero");
    KinematicState { phi: state.phi, s }
}

/// Quadrant of r̂: matter sign = sign(cos φ), helicity = sign(sin φ).
pub fn classify(state: &KinematicState) -> Result<Species> {
    let (s, c) = state.phi.sin_cos();
    let matter = Sign::of(c, BOUNDARY_EPS).ok_or(KinematicsError::LightLike)?;
    let helicity = Sign::of(s, BOUNDARY_EPS).ok_or(KinematicsError::AtRest)?;
    Ok(Species { matter, helicity })
}

/// h = (ŝ · p)/|p|.
pub fn helicity_classical(s: UnitVec3, p: Vec3) -> Result<f64> {
    if !p.is_finite() {
        return Err(KinematicsError::NonFinite("momentum"));
    }
    let pn = p.norm();
    if pn == 0.0 {
        return Err(KinematicsError::ZeroMomentum);
    }
    Ok((s.vec().dot(p) / pn).clamp(-1.0, 1.0))
}

/// Energy in the form v·p + τ̇ m with on-shell v = p/E and τ̇ = branch · m/E.
pub fn classical_energy(p: Vec3, m: f64, branch: Sign) -> Result<f64> {
    if m < 0.0 {
        return Err(KinematicsError::NegativeMass(m));
    }
    if !p.is_finite() || !m.is_finite() {
        return Err(KinematicsError::NonFinite("four-momentum"));
    }
    let e = (p.norm_sqr() + m * m).sqrt();
    if e == 0.0 {
        return Err(KinematicsError::NullFourMomentum);
    }
    let v = p * (1.0 / e);
    let tau_dot = branch.value() * m / e;
    Ok(v.dot(p) + tau_dot * m)
}

/// Sampled worldline together with its proper-time timeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timeline {
    pub t: Vec<f64>,
    pub tau: Vec<f64>,
    pub x: Vec<Vec3>,
}

impl Timeline {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// CSV with header `t,tau,x,y,z`, 17 significant digits per value.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,tau,x,y,z")?;
        for ((t, tau), x) in self.t.iter().zip(&self.tau).zip(&self.x) {
            writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", t, tau, x.x, x.y, x.z)?;
        }
        Ok(())
    }
}

/// Trapezoidal integration of τ̇ = branch/γ and ẋ = v over `t_grid`,
/// starting from τ = 0 and x = 0.
pub fn integrate_timeline(velocities: &[Vec3], t_grid: &[f64], branch: Sign) -> Result<Timeline> {
    if velocities.len() != t_grid.len() {
        return Err(KinematicsError::LengthMismatch {
            velocities: velocities.len(),
            times: t_grid.len(),
        });
    }
    if t_grid.len() < 2 {
        return Err(KinematicsError::TooFewSamples(t_grid.len()));
    }
    if let Some(i) = t_grid.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(KinematicsError::NonMonotonicTime(i + 1));
    }
    let rates = velocities
        .iter()
        .enumerate()
        .map(|(index, &v)| {
            proper_time_rate(v, branch).map_err(|_| KinematicsError::SuperluminalSample {
                index,
                speed: v.norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let n = t_grid.len();
    let mut tau = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    tau.push(0.0);
    x.push(Vec3::ZERO);
    for i in 1..n {
        let h = t_grid[i] - t_grid[i - 1];
        tau.push(tau[i - 1] + 0.5 * h * (rates[i - 1] + rates[i]));
        x.push(x[i - 1] + (velocities[i - 1] + velocities[i]) * (0.5 * h));
    }
    Ok(Timeline { t: t_grid.to_vec(), tau, x })
}

/// Samples `v_of_t` on `t_grid` and integrates.
pub fn integrate_timeline_fn<F>(v_of_t: F, t_grid: &[f64], branch: Sign) -> Result<Timeline>
where
    F: Fn(f64) -> Vec3,
{
    let v: Vec<Vec3> = t_grid.iter().map(|&t| v_of_t(t)).collect();
    integrate_timeline(&v, t_grid, branch)
}

/// `n` equally spaced points covering [t0, t1].
pub fn uniform_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let h = (t1 - t0) / (n.max(2) - 1) as f64;
    (0..n).map(|i| t0 + h * i as f64).collect()
}
