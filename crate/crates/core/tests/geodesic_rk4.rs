//! Cross-validation of the two-exponential geodesic formula against an
//! independent Runge-Kutta integration of the defining equation.
//!
//! Differentiating x(t) = x0 exp((a_k + a_p) t) exp(-a_k t) gives the
//! initial value problem
//!
//!     x'(t) = x(t) u(t),    u(t) = exp(a_k t) a_p exp(-a_k t),
//!
//! whose velocity stays in p because conjugation by exp(k) preserves p.
//! RK4 on that system never touches the product formula, so agreement
//! is a genuine two-sided check of both the formula and `expm`.

use liectl_core::cartan::{build_so_n1, build_su2_pauli, build_su_n, CartanPair, PairFamily};
use liectl_core::geodesics::{geodesic_point, p_norm, GeodesicSpec};
use liectl_core::linalg::expm;
use liectl_core::random::{
    haar_su2, random_special_unitary, rng_from_seed_and_index, standard_normal,
};
use liectl_core::ComplexMatrix;
use rand::Rng;

const T_FINAL: f64 = 3.0;
const STEPS: usize = 2048;
const CHECK_EVERY: usize = 128;
const AGREEMENT: f64 = 1e-6;

fn basis_combination(
    basis: &[ComplexMatrix<f64>],
    scale: f64,
    rng: &mut impl Rng,
) -> ComplexMatrix<f64> {
    let mut out = ComplexMatrix::zeros(basis[0].n());
    for b in basis {
        out = &out + &b.scale(scale * standard_normal::<f64>(rng));
    }
    out
}

/// Random arclength-normalized spec for the pair, with x0 drawn from
/// the matching group.
fn random_spec(pair: CartanPair<f64>, rng: &mut impl Rng) -> GeodesicSpec<f64> {
    let a_k = basis_combination(pair.k().basis(), 0.7, rng);
    let a_p = loop {
        let raw = basis_combination(pair.p().basis(), 1.0, rng);
        let norm = p_norm(&raw, &pair).unwrap();
        if norm > 1e-3 {
            break raw.scale(norm.recip());
        }
    };
    let x0 = match pair.family() {
        PairFamily::Su2Pauli => haar_su2(rng),
        PairFamily::SuN => random_special_unitary(pair.ambient_n(), rng),
        PairFamily::SoN1 => {
            // Lorentz groups have no Haar measure; exp of a small
            // algebra element is still a valid group point.
            let k_part = basis_combination(pair.k().basis(), 0.4, rng);
            let p_part = basis_combination(pair.p().basis(), 0.4, rng);
            expm(&(&k_part + &p_part)).unwrap()
        }
    };
    GeodesicSpec::new(x0, a_k, a_p, pair).unwrap()
}

/// Body velocity u(t) of the geodesic equation.
fn velocity(spec: &GeodesicSpec<f64>, t: f64) -> ComplexMatrix<f64> {
    let conj = expm(&spec.a_k().scale(t)).unwrap();
    let inv = expm(&spec.a_k().scale(-t)).unwrap();
    &(&conj * spec.a_p()) * &inv
}

/// Largest deviation between RK4 and the closed form over [0, T_FINAL],
/// sampled every CHECK_EVERY steps.
fn max_deviation(spec: &GeodesicSpec<f64>) -> f64 {
    let h = T_FINAL / STEPS as f64;
    let mut x = spec.x0().clone();
    let mut u_t = velocity(spec, 0.0);
    let mut worst = 0.0f64;
    for step in 0..STEPS {
        let t = step as f64 * h;
        let u_mid = velocity(spec, t + h / 2.0);
        let u_next = velocity(spec, t + h);
        let k1 = &x * &u_t;
        let k2 = &(&x + &k1.scale(h / 2.0)) * &u_mid;
        let k3 = &(&x + &k2.scale(h / 2.0)) * &u_mid;
        let k4 = &(&x + &k3.scale(h)) * &u_next;
        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(2.0);
        x = &x + &incr.scale(h / 6.0);
        u_t = u_next;
        if (step + 1) % CHECK_EVERY == 0 || step + 1 == STEPS {
            let exact = geodesic_point(spec, t + h).unwrap();
            worst = worst.max((&x - &exact).frobenius_norm());
        }
    }
    worst
}

#[test]
fn closed_form_matches_rk4_on_twenty_random_specs() {
    let mut specs: Vec<GeodesicSpec<f64>> = Vec::new();
    for i in 0..8u64 {
        let mut rng = rng_from_seed_and_index(90, i);
        specs.push(random_spec(build_su2_pauli(), &mut rng));
    }
    for i in 0..6u64 {
        let mut rng = rng_from_seed_and_index(91, i);
        specs.push(random_spec(build_su_n(3).unwrap(), &mut rng));
    }
    for (i, m) in [(0u64, 2usize), (1, 2), (2, 2), (3, 3), (4, 3), (5, 3)] {
        let mut rng = rng_from_seed_and_index(92, i);
        specs.push(random_spec(build_so_n1(m).unwrap(), &mut rng));
    }
    assert_eq!(specs.len(), 20);
    for (i, spec) in specs.iter().enumerate() {
        let dev = max_deviation(spec);
        assert!(
            dev <= AGREEMENT,
            "spec {i} (n = {}): deviation {dev:.3e}",
            spec.pair().ambient_n()
        );
    }
}

#[test]
fn rk4_confirms_the_curve_is_horizontal_and_unit_speed() {
    // The body velocity of the integrated curve must be the conjugated
    // a_p itself, so its p-norm is the constant 1 and its k-part 0.
    let mut rng = rng_from_seed_and_index(93, 0);
    let spec = random_spec(build_su_n(3).unwrap(), &mut rng);
    for &t in &[0.0, 0.5, 1.7, 3.0] {
        let u = velocity(&spec, t);
        assert!(spec.pair().p().contains(&u, 1e-9).unwrap());
        assert!((p_norm(&u, spec.pair()).unwrap() - 1.0).abs() < 1e-10);
    }
}
