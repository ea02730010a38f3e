//! Cross-route agreement: closed forms, the Gaussian-integral engine and the
//! truncated Fock expansion.

use cv_epr::fock::{eigen_residual, parity_expectation_oracle};
use cv_epr::gaussian::{eigen_relations, epr_ket, nopa3_ket, EtaVector, Regulator, SqueezingParam};
use cv_epr::wigner::{
    wigner_displaced_parity, wigner_epr3_closed, wigner_epr3_polar, wigner_nopa3_closed, PhasePoint,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(rng: &mut ChaCha8Rng, modes: usize, max_abs: f64) -> PhasePoint {
    PhasePoint::new(
        (0..modes)
            .map(|_| Complex64::from_polar(max_abs * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect(),
    )
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

#[test]
fn engine_matches_epr3_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let root2 = 2f64.sqrt();
    let mut n = 0;
    while n < 200 {
        let s: f64 = rng.random_range(1.05..3.0);
        if (s - root2).abs() < 0.01 {
            continue;
        }
        n += 1;
        let reg = Regulator::new(s).unwrap();
        let pt = random_point(&mut rng, 3, 1.5);
        let closed = wigner_epr3_closed(reg, &pt).unwrap();
        let spec = epr_ket(3, reg, &EtaVector::zeros(3)).unwrap();
        let engine = wigner_displaced_parity(&spec, &pt).unwrap();
        if closed.saturated {
            assert_eq!(closed.saturated, engine.saturated);
            continue;
        }
        assert!(rel_err(closed.w, engine.w) < 1e-10, "s={s} {closed:?} {engine:?}");
        assert_eq!(closed.regime, engine.regime);
    }
}

#[test]
fn engine_matches_nopa3_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let r = SqueezingParam::new(rng.random_range(0.1..1.5)).unwrap();
        let pt = random_point(&mut rng, 3, 1.5);
        let closed = wigner_nopa3_closed(r, &pt).unwrap();
        let engine = wigner_displaced_parity(&nopa3_ket(r), &pt).unwrap();
        assert!(rel_err(closed.w, engine.w) < 1e-10);
    }
}

#[test]
fn polar_matches_cartesian() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let reg = Regulator::new(rng.random_range(1.5..3.0)).unwrap();
        let mags: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..1.2));
        let phases: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.2..3.2));
        let polar = wigner_epr3_polar(reg, mags, phases).unwrap();
        let cart = wigner_epr3_closed(reg, &PhasePoint::from_polar(&mags, &phases)).unwrap();
        assert!(rel_err(polar.w, cart.w) < 1e-13);
    }
}

#[test]
fn fock_oracle_matches_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let reg = Regulator::new(2.0).unwrap();
    let epr = epr_ket(3, reg, &EtaVector::zeros(3)).unwrap();
    let r = SqueezingParam::new(0.6).unwrap();
    let nopa = nopa3_ket(r);
    let half_pi3 = (std::f64::consts::PI / 2.0).powi(3);
    for _ in 0..5 {
        let pt = random_point(&mut rng, 3, 0.8);
        let o = parity_expectation_oracle(&epr, &pt, 25).unwrap();
        let c = wigner_epr3_closed(reg, &pt).unwrap().w * half_pi3;
        assert!((o.parity - c).abs() < 1e-6 + o.tail_estimate);
        let o = parity_expectation_oracle(&nopa, &pt, 25).unwrap();
        let c = wigner_nopa3_closed(r, &pt).unwrap().w * half_pi3;
        assert!((o.parity - c).abs() < 1e-6 + o.tail_estimate);
    }
    let pt = PhasePoint::new(vec![Complex64::new(0.2, 0.0); 3]);
    let o = parity_expectation_oracle(&nopa, &pt, 25).unwrap();
    assert!((o.parity - wigner_nopa3_closed(r, &pt).unwrap().w * half_pi3).abs() < 1e-6);
}

#[test]
fn oracle_error_shrinks_with_cutoff() {
    let reg = Regulator::new(2.0).unwrap();
    let spec = epr_ket(3, reg, &EtaVector::zeros(3)).unwrap();
    let rel = &eigen_relations(3, reg, &EtaVector::zeros(3)).unwrap()[5];
    let pt = PhasePoint::new(vec![Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.4), Complex64::new(-0.25, 0.0)]);
    let exact = wigner_epr3_closed(reg, &pt).unwrap().parity;
    let mut prev_res = f64::INFINITY;
    let mut prev_err = f64::INFINITY;
    for cutoff in [10, 15, 20, 25] {
        let res = eigen_residual(&spec, rel, cutoff).unwrap().residual_norm;
        assert!(res <= prev_res * 1.0001 + 1e-14, "cutoff {cutoff}: {res} vs {prev_res}");
        prev_res = res;
        // Low cutoffs are refused by the tail check; evaluate the raw
        // contraction error only where it is reported.
        if let Ok(o) = parity_expectation_oracle(&spec, &pt, cutoff) {
            let err = (o.parity - exact).abs();
            assert!(err <= prev_err + 1e-12);
            prev_err = err;
        }
    }
    assert!(prev_err < 1e-6);
}

#[test]
fn eigen_relations_hold_in_fock_space() {
    let reg = Regulator::new(2.0).unwrap();
    let spec = epr_ket(3, reg, &EtaVector::zeros(3)).unwrap();
    for rel in eigen_relations(3, reg, &EtaVector::zeros(3)).unwrap() {
        let rep = eigen_residual(&spec, &rel, 25).unwrap();
        assert!(rep.residual_norm <= 1e-6, "{:?}: {}", rel.family, rep.residual_norm);
    }
}

#[test]
fn driven_eigen_relations() {
    let reg = Regulator::new(2.5).unwrap();
    let eta = EtaVector(vec![Complex64::new(0.2, -0.1), Complex64::new(-0.15, 0.3), Complex64::new(0.05, 0.1)]);
    let spec = epr_ket(3, reg, &eta).unwrap();
    for rel in eigen_relations(3, reg, &eta).unwrap() {
        let rep = eigen_residual(&spec, &rel, 20).unwrap();
        assert!(rep.residual_norm <= 1e-6, "{:?}: {}", rel.family, rep.residual_norm);
    }
}
