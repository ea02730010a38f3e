use cv_epr::chsh::{
    b2_imaginary, b3_imaginary, b3_real, bell_b2, bell_b3, Branch, BellConfig, Epr2Parity, EngineParity, Nopa2Parity,
};
use cv_epr::gaussian::{epr_ket, nopa2_ket, nopa3_ket, squeezing_correspondence, EtaVector, Regulator, SqueezingParam};
use cv_epr::wigner::{eta_shift, wigner_displaced_parity, wigner_epr3_closed, PhasePoint};
use num_complex::Complex64;
use proptest::prelude::*;

fn amp() -> impl Strategy<Value = Complex64> {
    (-1.2f64..1.2, -1.2f64..1.2).prop_map(|(re, im)| Complex64::new(re, im))
}

fn tripartite_s() -> impl Strategy<Value = f64> {
    prop_oneof![1.02f64..1.40, 1.43f64..3.5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_matches_determinant(s in 1.01f64..6.0, r in 0.0f64..2.5) {
        for spec in [
            epr_ket(2, Regulator::new(s).unwrap(), &EtaVector::zeros(2)).unwrap(),
            nopa2_ket(SqueezingParam::new(r).unwrap()),
            nopa3_ket(SqueezingParam::new(r).unwrap()),
        ] {
            let n = spec.norm().unwrap();
            let det = spec.coupling().det_i_minus_fdag_f();
            prop_assert!((n.powi(4) / det - 1.0).abs() < 1e-12);
        }
        if s > 1.4143 {
            let spec = epr_ket(3, Regulator::new(s).unwrap(), &EtaVector::zeros(3)).unwrap();
            let det = spec.coupling().det_i_minus_fdag_f();
            prop_assert!((spec.norm().unwrap().powi(4) / det - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bipartite_coupling_correspondence(s in 1.001f64..10.0) {
        let reg = Regulator::new(s).unwrap();
        let a = epr_ket(2, reg, &EtaVector::zeros(2)).unwrap();
        let b = nopa2_ket(squeezing_correspondence(reg));
        let d = (a.coupling().matrix() - b.coupling().matrix()).map(|z| z.norm()).max();
        prop_assert!(d <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn epr3_permutation_and_conjugation_symmetric(s in tripartite_s(), a in amp(), b in amp(), c in amp()) {
        let reg = Regulator::new(s).unwrap();
        let w = |x: Complex64, y: Complex64, z: Complex64| wigner_epr3_closed(reg, &PhasePoint::new(vec![x, y, z])).unwrap().ln_parity;
        let base = w(a, b, c);
        let tol = 1e-12 * (1.0 + base.abs());
        for v in [w(a, c, b), w(b, a, c), w(b, c, a), w(c, a, b), w(c, b, a), w(a.conj(), b.conj(), c.conj())] {
            prop_assert!((v - base).abs() <= tol);
        }
    }

    #[test]
    fn parity_bounded_for_normalizable(s in 1.43f64..4.0, r in 0.0f64..1.5, a in amp(), b in amp(), c in amp()) {
        let pt = PhasePoint::new(vec![a, b, c]);
        let v = wigner_epr3_closed(Regulator::new(s).unwrap(), &pt).unwrap();
        prop_assert!(v.parity > 0.0 || v.saturated);
        prop_assert!(v.parity <= 1.0 + 1e-12);
        let v = wigner_displaced_parity(&nopa3_ket(SqueezingParam::new(r).unwrap()), &pt).unwrap();
        prop_assert!(v.parity <= 1.0 + 1e-12);
    }

    #[test]
    fn branches_start_at_two(s in tripartite_s()) {
        let reg = Regulator::new(s).unwrap();
        prop_assert_eq!(b3_imaginary(reg, 0.0).unwrap().b, 2.0);
        prop_assert_eq!(b3_real(reg, 0.0).unwrap().b, 2.0);
        prop_assert_eq!(b2_imaginary(reg, 0.0).unwrap().b, 2.0);
    }

    #[test]
    fn patterned_bell_matches_branch(s in tripartite_s(), j in 0.0f64..0.5) {
        let reg = Regulator::new(s).unwrap();
        for (branch, f) in [
            (Branch::Imaginary, b3_imaginary as fn(Regulator, f64) -> _),
            (Branch::RealPair, b3_real),
            (Branch::Bipartite, b2_imaginary),
        ] {
            let direct = f(reg, j).unwrap().b;
            let patterned = BellConfig { branch, j, s: reg }.evaluate().unwrap().b;
            prop_assert!((direct - patterned).abs() <= 1e-12 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn bipartite_bell_equivalence(s in 1.01f64..4.0, a in amp(), b in amp()) {
        let reg = Regulator::new(s).unwrap();
        let r = squeezing_correspondence(reg);
        let via_s = bell_b2(&Epr2Parity(reg), a, b).unwrap().b;
        let via_r = bell_b2(&Nopa2Parity(r), a, b).unwrap().b;
        prop_assert!((via_s - via_r).abs() < 1e-10);
    }

    #[test]
    fn engine_bell_matches_closed(s in 1.5f64..3.0, a in amp(), b in amp(), c in amp()) {
        let reg = Regulator::new(s).unwrap();
        let spec = epr_ket(3, reg, &EtaVector::zeros(3)).unwrap();
        let closed = bell_b3(&cv_epr::chsh::Epr3Parity(reg), a, b, c).unwrap().b;
        let engine = bell_b3(&EngineParity(spec), a, b, c).unwrap().b;
        prop_assert!((closed - engine).abs() < 1e-10);
    }

    #[test]
    fn eta_shift_identity(s in 1.5f64..3.0, x in prop::array::uniform3(-0.8f64..0.8), e in prop::array::uniform3(-0.8f64..0.8)) {
        let reg = Regulator::new(s).unwrap();
        let alpha = PhasePoint::new(x.iter().map(|&v| Complex64::new(v, 0.0)).collect());
        let eta = EtaVector(e.iter().map(|&v| Complex64::new(0.0, v)).collect());
        let (moved, f) = eta_shift(&alpha, &eta, reg).unwrap();
        let driven = wigner_displaced_parity(&epr_ket(3, reg, &eta).unwrap(), &moved).unwrap().w;
        let plain = wigner_displaced_parity(&epr_ket(3, reg, &EtaVector::zeros(3)).unwrap(), &alpha).unwrap().w;
        prop_assert!((driven - f.e * plain).abs() <= 1e-10 * plain.abs());
    }
}
