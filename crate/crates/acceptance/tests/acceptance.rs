//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::time::Instant;

use cv_epr::chsh::{
    b3_asymptotic_max, maximize_bell, scan_surface, AsymptoticBranch, Axis, Branch, MaximizeOptions, Objective,
};
use cv_epr::fock::{eigen_residual, parity_expectation_oracle};
use cv_epr::gaussian::{
    eigen_relations, epr_ket, nopa2_ket, nopa3_from_beamsplitters, nopa3_ket, squeezing_correspondence, EtaVector,
    RelationFamily, Regulator, SqueezingParam,
};
use cv_epr::wigner::{
    eta_shift, form_signature, gaussian_phase_space_integral, quadrature_form, wigner_displaced_parity,
    wigner_epr3_closed, wigner_nopa3_closed, PhasePoint,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B2_TARGET: f64 = 2.19;
const B2_TOL: f64 = 0.01;
const B3_IMAG_NEAR_ONE_TOL: f64 = 1e-9;
const B3_REAL_TOL: f64 = 1e-3;
const B3_AUX_TARGET: f64 = 2.32451;
const B3_AUX_TOL: f64 = 1e-3;
const ROUTE_REL_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-6;
const NORM_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-6;
const HALF_LN3_TOL: f64 = 1e-12;
const SHIFT_TOL: f64 = 1e-10;
const BEAMSPLITTER_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn random_point(rng: &mut ChaCha8Rng, max_abs: f64) -> PhasePoint {
    PhasePoint::new(
        (0..3)
            .map(|_| {
                Complex64::from_polar(max_abs * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
            })
            .collect(),
    )
}

fn reg(s: f64) -> Regulator {
    Regulator::new(s).unwrap()
}

fn maximize_at(branch: Branch, s: f64, j_max: f64) -> (f64, f64) {
    let dom = [Axis::fixed(s), Axis::geometric(j_max * 1e-9, j_max, 200)];
    let rep = maximize_bell(&Objective::new(branch), &dom, &MaximizeOptions::default()).unwrap();
    (rep.max, rep.argmax[1])
}

/// Maximum of `1 + 2x − x^λ` over `x ∈ (0, 1]`.
fn one_plus_two_x_max(lambda: f64) -> f64 {
    let x = (2.0 / lambda).powf(1.0 / (lambda - 1.0));
    1.0 + 2.0 * x - x.powf(lambda)
}

fn criterion_1() -> Outcome {
    let s = 1.0 + 1e-4;
    let t = Instant::now();
    let (b, j) = maximize_at(Branch::Bipartite, s, 1.0);
    let elapsed = t.elapsed().as_secs_f64();
    // B₂ = 1 + 2x − x^λ with λ = 2(s²+1)²/(s⁴+1) along the imaginary pattern.
    let u = s * s;
    let oracle = one_plus_two_x_max(2.0 * (u + 1.0) * (u + 1.0) / (u * u + 1.0));
    outcome(
        (b - B2_TARGET).abs() <= B2_TOL && (b - oracle).abs() < 1e-6 && elapsed < 1.0,
        format!("max B2 = {b:.6} at J = {j:.3e} (substitution oracle {oracle:.6}), {elapsed:.3} s"),
    )
}

fn criterion_2() -> Outcome {
    let s_axis = Axis::linear(1.0001, 1.3, 200);
    let mut sup = f64::NEG_INFINITY;
    for j_axis in [Axis::linear(0.0, 2.0, 200), Axis::geometric(1e-12, 2.0, 200)] {
        let surf = scan_surface(Branch::Imaginary, &s_axis, &j_axis).unwrap();
        sup = sup.max(surf.max_cell().0);
    }
    outcome(sup <= 2.0 + B3_IMAG_NEAR_ONE_TOL, format!("grid sup B3 = {sup:.12}"))
}

fn real_branch_limit() -> f64 {
    1.0 + 2.0 * (2.0f64 / 3.0).sqrt() - (2.0f64 / 3.0).powf(1.5)
}

fn criterion_3() -> Outcome {
    let (b, j) = maximize_at(Branch::RealPair, 1.0 + 1e-4, 1.0);
    let target = real_branch_limit();
    outcome(
        (b - target).abs() <= B3_REAL_TOL && (b - 2.09).abs() < 0.005,
        format!("max B3 = {b:.6} at J = {j:.3e}, limit {target:.6}"),
    )
}

fn criterion_4() -> Outcome {
    let (b, j) = maximize_at(Branch::Imaginary, 2f64.sqrt() + 1e-4, 1.0);
    let lambda = 9.0f64;
    let formula = (lambda - 1.0) * (3.0 / lambda).powf(lambda / (lambda - 1.0));
    let asym = b3_asymptotic_max(AsymptoticBranch::new(lambda).unwrap());
    let exact = (asym - formula).abs() <= f64::EPSILON * formula;
    outcome(
        (b - B3_AUX_TARGET).abs() <= B3_AUX_TOL && (b - 2.32).abs() < 0.005 && exact,
        format!("max B3 = {b:.6} at J = {j:.3e}; asymptotic max {asym:.9} vs formula {formula:.9}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce5);
    let root2 = 2f64.sqrt();
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let s: f64 = rng.random_range(1.05..3.0);
        if (s - root2).abs() <= 0.01 {
            continue;
        }
        n += 1;
        let pt = random_point(&mut rng, 1.5);
        let closed = wigner_epr3_closed(reg(s), &pt).unwrap();
        let engine = wigner_displaced_parity(&epr_ket(3, reg(s), &EtaVector::zeros(3)).unwrap(), &pt).unwrap();
        // Compare logs so that saturated magnitudes still count.
        worst = worst.max(rel_err(closed.parity, engine.parity).min(rel_err(closed.ln_parity, engine.ln_parity)));
    }
    let mut worst_nopa = 0.0f64;
    for _ in 0..100 {
        let r = SqueezingParam::new(rng.random_range(0.1..1.5)).unwrap();
        let pt = random_point(&mut rng, 1.5);
        let closed = wigner_nopa3_closed(r, &pt).unwrap();
        let engine = wigner_displaced_parity(&nopa3_ket(r), &pt).unwrap();
        worst_nopa = worst_nopa.max(rel_err(closed.w, engine.w));
    }
    outcome(
        worst <= ROUTE_REL_TOL && worst_nopa <= ROUTE_REL_TOL,
        format!("worst relative error EPR {worst:.2e}, NOPA {worst_nopa:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce6);
    let half_pi3 = (std::f64::consts::PI / 2.0).powi(3);
    let epr = epr_ket(3, reg(2.0), &EtaVector::zeros(3)).unwrap();
    let r = SqueezingParam::new(0.6).unwrap();
    let nopa = nopa3_ket(r);
    let mut pass = true;
    let (mut worst, mut worst_tail) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let pt = random_point(&mut rng, 0.8);
        let cases = [
            (parity_expectation_oracle(&epr, &pt, 25), wigner_epr3_closed(reg(2.0), &pt).unwrap().w * half_pi3),
            (parity_expectation_oracle(&nopa, &pt, 25), wigner_nopa3_closed(r, &pt).unwrap().w * half_pi3),
        ];
        for (o, closed) in cases {
            let Ok(o) = o else {
                pass = false;
                continue;
            };
            let d = (o.parity - closed).abs();
            pass &= d <= ORACLE_TOL + o.tail_estimate;
            worst = worst.max(d);
            worst_tail = worst_tail.max(o.tail_estimate);
        }
    }
    outcome(pass, format!("worst |closed - oracle| {worst:.2e}, largest tail {worst_tail:.2e}"))
}

/// Quadratic form of `ln Π` in `(Re α, Im α)` coordinates by polarisation.
fn alpha_form(s: Regulator) -> DMatrix<f64> {
    let f = |y: &[f64]| {
        let amps = (0..3).map(|k| Complex64::new(y[2 * k], y[2 * k + 1])).collect();
        wigner_epr3_closed(s, &PhasePoint::new(amps)).unwrap().ln_parity
    };
    let unit = |idx: &[usize]| {
        let mut y = [0.0; 6];
        for &i in idx {
            y[i] += 1.0;
        }
        y
    };
    let mut q = DMatrix::zeros(6, 6);
    for i in 0..6 {
        q[(i, i)] = f(&unit(&[i]));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            let v = 0.5 * (f(&unit(&[i, j])) - q[(i, i)] - q[(j, j)]);
            q[(i, j)] = v;
            q[(j, i)] = v;
        }
    }
    q
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for s in [1.6, 2.0, 3.0] {
        // ∫ (2/π)³ exp(yᵀQy) d⁶y = 8 / √det(−Q).
        let q = alpha_form(reg(s));
        let integral = match (-q).cholesky() {
            Some(c) => 8.0 / c.l().diagonal().iter().product::<f64>(),
            None => f64::NAN,
        };
        let lib = quadrature_form(3, |p| Ok(wigner_epr3_closed(reg(s), p)?.ln_parity))
            .and_then(|q| gaussian_phase_space_integral(&q))
            .unwrap_or(f64::NAN);
        pass &= (integral - 1.0).abs() <= NORM_TOL && (lib - 1.0).abs() <= NORM_TOL;
        details.push(format!("s={s}: {:.1e}", (integral - 1.0).abs().max((lib - 1.0).abs())));
    }
    for s in [1.05, 1.2, 1.35] {
        let (pos, neg, _) = form_signature(&alpha_form(reg(s)));
        pass &= pos > 0 && neg > 0;
        details.push(format!("s={s}: +{pos}/-{neg}"));
    }
    outcome(pass, details.join(", "))
}

fn criterion_8() -> Outcome {
    let spec = epr_ket(3, reg(2.0), &EtaVector::zeros(3)).unwrap();
    let rels = eigen_relations(3, reg(2.0), &EtaVector::zeros(3)).unwrap();
    let mut worst = 0.0f64;
    let mut count = 0;
    for rel in rels
        .iter()
        .filter(|r| matches!(r.family, RelationFamily::Annihilation | RelationFamily::Quadrature))
    {
        let rep = eigen_residual(&spec, rel, 25).unwrap();
        worst = worst.max(rep.residual_norm);
        count += 1;
    }
    let rel_mode = eigen_relations(3, reg(2f64.sqrt()), &EtaVector::zeros(3))
        .unwrap()
        .into_iter()
        .filter(|r| r.family == RelationFamily::Jacobi)
        .find_map(|r| r.single_mode_form())
        .unwrap();
    let r = rel_mode.squeezing_parameter();
    let half_ln3 = 0.5 * 3f64.ln();
    let pass = count == 6
        && worst <= RESIDUAL_TOL
        && (r - half_ln3).abs() <= HALF_LN3_TOL
        && (0.5f64.atanh() - half_ln3).abs() <= HALF_LN3_TOL;
    outcome(pass, format!("{count} residuals, worst {worst:.2e}; relative-mode r = {r:.15}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce9);
    let root2 = 2f64.sqrt();
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 50 {
        let s: f64 = rng.random_range(1.05..3.0);
        if (s - root2).abs() <= 0.01 {
            continue;
        }
        n += 1;
        let alpha = PhasePoint::new((0..3).map(|_| Complex64::new(rng.random_range(-0.8..0.8), 0.0)).collect());
        let eta = EtaVector((0..3).map(|_| Complex64::new(0.0, rng.random_range(-0.8..0.8))).collect());
        let (moved, factor) = eta_shift(&alpha, &eta, reg(s)).unwrap();
        let driven = wigner_displaced_parity(&epr_ket(3, reg(s), &eta).unwrap(), &moved).unwrap();
        let plain = wigner_displaced_parity(&epr_ket(3, reg(s), &EtaVector::zeros(3)).unwrap(), &alpha).unwrap();
        worst = worst.max(rel_err(driven.w, factor.e * plain.w));
    }
    outcome(worst <= SHIFT_TOL, format!("worst relative error {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let mut worst_bs = 0.0f64;
    for k in 0..10 {
        let r = SqueezingParam::new(0.1 + 0.15 * k as f64).unwrap();
        let d = (nopa3_from_beamsplitters(r).coupling().matrix() - nopa3_ket(r).coupling().matrix())
            .map(|z| z.norm())
            .max();
        worst_bs = worst_bs.max(d);
    }
    // tanh(artanh(x)) reproduces x only up to rounding, so "exact" means
    // agreement to the last couple of bits.
    let mut worst_ulps = 0.0f64;
    for k in 0..10 {
        let s = reg(1.01 + 0.3 * k as f64);
        let a = epr_ket(2, s, &EtaVector::zeros(2)).unwrap();
        let b = nopa2_ket(squeezing_correspondence(s));
        let fa = a.coupling().matrix();
        let fb = b.coupling().matrix();
        for (x, y) in fa.iter().zip(fb.iter()) {
            let scale = x.norm().max(f64::MIN_POSITIVE) * f64::EPSILON;
            worst_ulps = worst_ulps.max((x - y).norm() / scale);
        }
    }
    outcome(
        worst_bs <= BEAMSPLITTER_TOL && worst_ulps <= 2.0,
        format!("beamsplitter worst {worst_bs:.1e}; bipartite coupling within {worst_ulps:.1} ulp"),
    )
}

struct Grid {
    s: Vec<f64>,
    j: Vec<f64>,
    b: Vec<f64>,
}

fn run_figure(k: u8) -> Result<Grid, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cv_epr_cli::run_with(["cv-epr", "chsh-scan", "--figure", &k.to_string()], &mut out, &mut err);
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let mut grid = Grid { s: Vec::new(), j: Vec::new(), b: Vec::new() };
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let num = |i: usize| f[i].parse::<f64>().map_err(|e| format!("{line}: {e}"));
        grid.s.push(num(1)?);
        grid.j.push(num(2)?);
        grid.b.push(num(3)?);
    }
    Ok(grid)
}

fn criterion_11() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for k in 1..=4u8 {
        let g = match run_figure(k) {
            Ok(g) => g,
            Err(e) => {
                pass = false;
                details.push(format!("fig {k}: {e}"));
                continue;
            }
        };
        let best = (0..g.b.len()).fold(0, |m, i| if g.b[i] > g.b[m] { i } else { m });
        let (b, s, j) = (g.b[best], g.s[best], g.j[best]);
        let matches = match k {
            1 => (b - B2_TARGET).abs() <= B2_TOL,
            2 => b <= 2.0 + B3_IMAG_NEAR_ONE_TOL,
            3 => (b - real_branch_limit()).abs() <= B3_REAL_TOL,
            _ => (b - B3_AUX_TARGET).abs() <= B3_AUX_TOL,
        };
        // Quadrant split at the midpoint of each axis range.
        let mid = |v: &[f64]| {
            let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
            0.5 * (lo + hi)
        };
        let in_quadrant = s <= mid(&g.s) && j <= mid(&g.j);
        pass &= matches && in_quadrant && g.b.len() == 200 * 200;
        details.push(format!(
            "fig {k}: max {b:.6} at (s={s:.5}, J={j:.2e}) {}{}",
            if matches { "matches" } else { "MISMATCH" },
            if in_quadrant { "" } else { " OUTSIDE QUADRANT" }
        ));
    }
    outcome(pass, details.join("; "))
}

fn main() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("B2 violation near s=1", criterion_1),
        ("B3 imaginary branch bounded near s=1", criterion_2),
        ("B3 real-pair maximum near s=1", criterion_3),
        ("B3 auxiliary regime near s=sqrt2", criterion_4),
        ("closed form equals Gaussian-integral engine", criterion_5),
        ("closed form equals Fock oracle", criterion_6),
        ("normalisation and formal-regime indefiniteness", criterion_7),
        ("eigen-relation residuals and half-ln3 squeezing", criterion_8),
        ("eta-shift identity", criterion_9),
        ("construction identities", criterion_10),
        ("figure reproduction", criterion_11),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failures += 1;
        }
        println!(
            "{} criterion {:>2}: {name} [{:.2} s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    let total = start.elapsed().as_secs_f64();
    let timing_ok = total < 60.0;
    println!("{} total runtime {total:.2} s (limit 60 s)", if timing_ok { "PASS" } else { "FAIL" });
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 || !timing_ok {
        std::process::exit(1);
    }
}
