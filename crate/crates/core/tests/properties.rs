//! Property tests for the invariants of the kinematic, spinor and solver
//! layers.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use tauspinor::kinematics::{
    classify, rotate_r, rotate_s, state_from_velocity, velocity_from_state, KinematicState, Sign,
    UnitVec3, Vec3, BOUNDARY_EPS,
};
use tauspinor::rng::SplitMix64;
use tauspinor::solver::{
    evolve, helicity_operator, lagrangian_residual_of_pair, mass_spectrum, plane_wave_eigensystem,
    dirac_hamiltonian, Field, FieldDims,
};
use tauspinor::spinor::{
    bloch_to_spinor, bloch_vector, commutator, dequantize, dirac_alphas, dirac_beta, expectation,
    quantize, su2_rotation, Spinor, Spinor2,
};

fn unit_vec() -> impl Strategy<Value = UnitVec3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("not too short", |(x, y, z)| x * x + y * y + z * z > 1e-2)
        .prop_map(|(x, y, z)| UnitVec3::new(x, y, z).unwrap())
}

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn state() -> impl Strategy<Value = KinematicState> {
    (angle(), unit_vec()).prop_map(|(phi, s)| KinematicState::new(phi, s))
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn spinor<const N: usize>() -> impl Strategy<Value = Spinor<N>> {
    prop::array::uniform::<_, N>((-1.0..1.0f64, -1.0..1.0f64))
        .prop_filter("nonzero", |a| a.iter().map(|(r, i)| r * r + i * i).sum::<f64>() > 1e-3)
        .prop_map(|a| Spinor(a.map(|(r, i)| Complex64::new(r, i))).normalized())
}

fn small_dims() -> FieldDims {
    FieldDims::new(16, 8, 8.0, 4.0).unwrap()
}

fn random_field(seed: u64) -> Field {
    let mut rng = SplitMix64::new(seed);
    Field::from_fn(small_dims(), |_, _| rng.spinor::<4>().scale(rng.complex_normal())).normalized()
}

proptest! {
    #[test]
    fn velocity_and_proper_time_rate_on_unit_circle(st in state()) {
        let (v, tau_dot) = velocity_from_state(&st);
        prop_assert!((v.norm_sqr() + tau_dot * tau_dot - 1.0).abs() < 1e-12);
    }

    #[test]
    fn state_velocity_round_trip(
        dir in unit_vec(), speed in 1e-6..0.999f64, branch in sign(), helicity in sign()
    ) {
        let v = dir.vec() * speed;
        let st = state_from_velocity(v, branch, helicity).unwrap();
        let (back, tau_dot) = velocity_from_state(&st);
        prop_assert!(back.max_abs_diff(v) < 1e-12);
        prop_assert!((tau_dot - branch.value() * (1.0 - speed * speed).sqrt()).abs() < 1e-12);
        prop_assert_eq!(classify(&st).unwrap().helicity, helicity);
    }

    #[test]
    fn rotate_r_inverse(st in state(), dphi in -10.0..10.0f64) {
        let back = rotate_r(&rotate_r(&st, dphi), -dphi);
        let diff = (back.phi() - st.phi()).abs();
        prop_assert!(diff.min(2.0 * PI - diff) < 1e-12);
        prop_assert_eq!(back.s(), st.s());
    }

    #[test]
    fn helicity_representations_agree(st in state()) {
        let flipped = KinematicState::new(-st.phi(), -st.s());
        prop_assert_eq!(velocity_from_state(&st), velocity_from_state(&flipped));
    }

    #[test]
    fn classify_ignores_spin_rotation(st in state(), axis in unit_vec(), theta in -10.0..10.0f64) {
        prop_assume!(st.phi().sin().abs() > 1e-6 && st.phi().cos().abs() > 1e-6);
        let rotated = rotate_s(&st, axis, theta);
        prop_assert_eq!(classify(&st).unwrap(), classify(&rotated).unwrap());
    }

    #[test]
    fn dirac_bloch_bound(psi in spinor::<4>()) {
        let [a1, a2, a3] = dirac_alphas();
        let total: f64 = [a1, a2, a3, dirac_beta()]
            .iter()
            .map(|m| expectation(&psi, m).unwrap().re.powi(2))
            .sum();
        prop_assert!(total <= 1.0 + 1e-12, "{}", total);
    }

    #[test]
    fn product_states_saturate_bound(st in state()) {
        let (a, b) = dequantize(&quantize(&st)).unwrap();
        prop_assert!((a.norm_sqr() + b * b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quantize_agrees_with_classify(st in state()) {
        prop_assume!(st.phi().sin().abs() > BOUNDARY_EPS * 1e3 && st.phi().cos().abs() > BOUNDARY_EPS * 1e3);
        let species = classify(&st).unwrap();
        let (a, b) = dequantize(&quantize(&st)).unwrap();
        prop_assert_eq!(Sign::of(b, 0.0), Some(species.matter));
        prop_assert_eq!(Sign::of(a.dot(st.s().vec()), 0.0), Some(species.helicity));
    }

    #[test]
    fn su2_group_law(axis in unit_vec(), t1 in -7.0..7.0f64, t2 in -7.0..7.0f64) {
        let lhs = su2_rotation(axis, t1) * su2_rotation(axis, t2);
        prop_assert!(lhs.max_abs_diff(&su2_rotation(axis, t1 + t2)) < 1e-12);
        prop_assert!(su2_rotation(axis, t1).is_unitary(1e-12));
    }

    #[test]
    fn bloch_round_trip_and_phase(u in unit_vec()) {
        let chi = bloch_to_spinor(u);
        prop_assert!(bloch_vector(&chi).unwrap().max_abs_diff(u.vec()) < 1e-12);
        let lead = if chi.0[0].norm() > 1e-12 { chi.0[0] } else { chi.0[1] };
        prop_assert!(lead.im == 0.0 && lead.re >= 0.0);
    }

    #[test]
    fn bloch_vector_of_any_spinor_is_unit(chi in spinor::<2>()) {
        prop_assert!((bloch_vector(&chi).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        // a global phase does not move the Bloch vector
        let shifted: Spinor2 = chi.scale(Complex64::from_polar(1.0, 0.9));
        prop_assert!(bloch_vector(&shifted).unwrap().max_abs_diff(bloch_vector(&chi).unwrap()) < 1e-12);
    }

    #[test]
    fn eigensystem_is_orthonormal_with_labels(
        px in -5.0..5.0f64, py in -5.0..5.0f64, pz in -5.0..5.0f64, m in -5.0..5.0f64
    ) {
        let p = Vec3::new(px, py, pz);
        prop_assume!(p.norm() > 1e-3);
        let modes = plane_wave_eigensystem(p, m).unwrap();
        let e = (p.norm_sqr() + m * m).sqrt();
        let hel = helicity_operator(p).unwrap();
        prop_assert!(commutator(&hel, &dirac_hamiltonian(p, m)).max_abs() < 1e-12);
        for (i, a) in modes.iter().enumerate() {
            prop_assert!(a.residual() < 1e-10);
            prop_assert!((a.energy - a.branch.value() * e).abs() < 1e-12);
            let hu = hel * a.spinor;
            prop_assert!(hu.max_abs_diff(&a.spinor.scale(Complex64::new(a.helicity.value(), 0.0))) < 1e-10);
            for b in &modes[i + 1..] {
                prop_assert!(a.spinor.inner(&b.spinor).norm() < 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn evolution_group_property(seed in any::<u64>(), t1 in -3.0..3.0f64, t2 in -3.0..3.0f64) {
        let f = random_field(seed);
        let a = evolve(&evolve(&f, t1), t2);
        let b = evolve(&f, t1 + t2);
        prop_assert!(a.max_abs_diff(&b) < 1e-10);
        prop_assert!((b.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn spectrum_weights_sum_to_norm(seed in any::<u64>()) {
        let f = random_field(seed).scale(Complex64::new(1.7, -0.4));
        let total: f64 = mass_spectrum(&f).iter().map(|r| r.weight).sum();
        prop_assert!((total - f.norm_sqr()).abs() < 1e-10);
    }

    #[test]
    fn unrelated_snapshots_are_not_solutions(seed in any::<u64>()) {
        let a = random_field(seed);
        let b = random_field(seed.wrapping_add(1));
        prop_assert!(lagrangian_residual_of_pair(&a, &b, 1e-3).unwrap() > 1.0);
    }
}

#[test]
fn spin_rotations_stay_normalized_over_many_steps() {
    let mut rng = SplitMix64::new(7);
    let mut st = KinematicState::new(0.4, UnitVec3::X);
    for _ in 0..10_000 {
        st = rotate_s(&st, rng.unit_vec3(), rng.uniform(-PI, PI));
    }
    assert!((st.s().vec().norm() - 1.0).abs() < 1e-12);
    assert_eq!(st.phi(), 0.4);
}
