//! Truncated number-basis expansion of Gaussian kets, used as an independent
//! check of the phase-space routes.
//!
//! Every mode is truncated at `n ≤ cutoff`. The expansion is only meaningful
//! when the coupling's spectral norm `ρ` is below 1; coefficient mass then
//! decays like `ρ^{2n}` and the mass beyond the cutoff is estimated from the
//! outermost shell as `shell / (1 − ρ²)`.
//!
//! | spectral norm | cutoff for tail < 1e−8 (drive 0) |
//! |---------------|----------------------------------|
//! | 0.25          | 8                                |
//! | 0.5           | 16                               |
//! | 0.54          | 18                               |
//! | 0.7           | 30                               |

use num_complex::Complex64;
use serde::Serialize;

use crate::gaussian::{EigenRelation, GaussianKetSpec, QuadraticCoupling, Regime};
use crate::wigner::PhasePoint;
use crate::{Error, Result};

/// Oracle results are refused when `tail / total` exceeds this.
pub const TAIL_TOLERANCE: f64 = 1e-8;
const IMAG_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FockTensor {
    modes: usize,
    cutoff: usize,
    coeffs: Vec<Complex64>,
    tail_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FockMetadata {
    pub modes: usize,
    pub cutoff: usize,
    pub norm_captured: f64,
    pub tail_estimate: f64,
}

impl FockTensor {
    /// Solves `√(nᵢ+1) c(n+eᵢ) = λᵢ c(n) + Σⱼ Fᵢⱼ √nⱼ c(n−eⱼ)` from `c(0) = seed`.
    pub fn from_recurrence(
        drive: &[Complex64],
        coupling: &QuadraticCoupling,
        seed: Complex64,
        cutoff: usize,
    ) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::CutoffTooSmall(cutoff));
        }
        let modes = drive.len();
        if coupling.modes() != modes {
            return Err(Error::DimensionMismatch { expected: modes, found: coupling.modes() });
        }
        let f = coupling.matrix();
        let d = cutoff + 1;
        let strides = strides(modes, d);
        let len = d.pow(modes as u32);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        coeffs[0] = seed;
        let mut n = vec![0usize; modes];
        for idx in 1..len {
            unflatten(idx, d, &mut n);
            let i = n.iter().position(|&k| k > 0).expect("nonzero index");
            // m = n − eᵢ
            let m_idx = idx - strides[i];
            let mut acc = drive[i] * coeffs[m_idx];
            for j in 0..modes {
                let mj = if j == i { n[j] - 1 } else { n[j] };
                if mj > 0 {
                    acc += f[(i, j)] * (mj as f64).sqrt() * coeffs[m_idx - strides[j]];
                }
            }
            coeffs[idx] = acc / (n[i] as f64).sqrt();
        }
        let rho = coupling.spectral_norm();
        let boundary: f64 = (0..len)
            .filter(|&idx| {
                unflatten(idx, d, &mut n);
                n.contains(&cutoff)
            })
            .map(|idx| coeffs[idx].norm_sqr())
            .sum();
        let tail_estimate = if rho < 1.0 { boundary / (1.0 - rho * rho) } else { f64::INFINITY };
        Ok(FockTensor { modes, cutoff, coeffs, tail_estimate })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn tail_estimate(&self) -> f64 {
        self.tail_estimate
    }

    pub fn get(&self, n: &[usize]) -> Complex64 {
        assert_eq!(n.len(), self.modes);
        let d = self.cutoff + 1;
        self.coeffs[n.iter().fold(0, |acc, &k| acc * d + k)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn metadata(&self) -> FockMetadata {
        FockMetadata {
            modes: self.modes,
            cutoff: self.cutoff,
            norm_captured: self.norm_sqr(),
            tail_estimate: self.tail_estimate,
        }
    }

    fn check_tail(&self) -> Result<()> {
        let total = self.norm_sqr();
        if !(self.tail_estimate <= TAIL_TOLERANCE * total) {
            return Err(Error::Truncation { tail: self.tail_estimate / total, tolerance: TAIL_TOLERANCE });
        }
        Ok(())
    }
}

fn strides(modes: usize, d: usize) -> Vec<usize> {
    (0..modes).map(|j| d.pow((modes - 1 - j) as u32)).collect()
}

fn unflatten(mut idx: usize, d: usize, n: &mut [usize]) {
    for k in n.iter_mut().rev() {
        *k = idx % d;
        idx /= d;
    }
}

fn require_normalizable(spec: &GaussianKetSpec) -> Result<()> {
    match spec.regime() {
        Regime::Normalizable => Ok(()),
        _ => Err(Error::FormalRegime { spectral_norm: spec.coupling().spectral_norm() }),
    }
}

/// Expands a normalisable ket, seeded with `c(0) = norm · scalar_prefactor`.
pub fn expand_ket(spec: &GaussianKetSpec, cutoff: usize) -> Result<FockTensor> {
    require_normalizable(spec)?;
    let seed = spec.norm().unwrap_or(0.0) * spec.scalar_prefactor();
    FockTensor::from_recurrence(spec.drive(), spec.coupling(), Complex64::new(seed, 0.0), cutoff)
}

/// Generalised Laguerre polynomials `L_k^{(a)}(x)` for `k = 0..=kmax`.
fn laguerre(kmax: usize, a: f64, x: f64) -> Vec<f64> {
    let mut l = Vec::with_capacity(kmax + 1);
    l.push(1.0);
    if kmax >= 1 {
        l.push(1.0 + a - x);
    }
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * l[k] - (kf + a) * l[k - 1]) / (kf + 1.0);
        l.push(next);
    }
    l
}

/// `⟨m|D(α)|n⟩` with `D(α) = exp(α a† − α* a)`.
pub fn displacement_matrix_element(m: usize, n: usize, alpha: Complex64) -> Complex64 {
    let x = alpha.norm_sqr();
    let (lo, hi, z) = if m >= n { (n, m, alpha) } else { (m, n, -alpha.conj()) };
    let k = hi - lo;
    // √(lo!/hi!)
    let ratio = ((lo + 1)..=hi).map(|j| (j as f64).sqrt()).fold(1.0, |acc, r| acc / r);
    let lag = laguerre(lo, k as f64, x)[lo];
    z.powu(k as u32) * (ratio * (-0.5 * x).exp() * lag)
}

/// Matrix of `D(α)(−1)ⁿD†(α) = D(2α)(−1)ⁿ` on `0..=cutoff`.
fn displaced_parity_matrix(alpha: Complex64, cutoff: usize) -> Vec<Vec<Complex64>> {
    let beta = 2.0 * alpha;
    (0..=cutoff)
        .map(|m| {
            (0..=cutoff)
                .map(|n| {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    displacement_matrix_element(m, n, beta) * sign
                })
                .collect()
        })
        .collect()
}

/// Applies `p` along `axis` of a `[d; modes]` tensor.
fn apply_along(t: &[Complex64], p: &[Vec<Complex64>], axis: usize, modes: usize, d: usize) -> Vec<Complex64> {
    let inner = d.pow((modes - 1 - axis) as u32);
    let outer = d.pow(axis as u32);
    let mut out = vec![Complex64::new(0.0, 0.0); t.len()];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * d * inner + i;
            for m in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for (n, pmn) in p[m].iter().enumerate() {
                    acc += pmn * t[base + n * inner];
                }
                out[base + m * inner] = acc;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleValue {
    /// Real part of `⟨ψ|Π(α)|ψ⟩`.
    pub parity: f64,
    pub imag: f64,
    pub tail_estimate: f64,
}

/// Displaced-parity expectation by contracting the truncated ket with one
/// single-mode matrix per mode.
pub fn parity_expectation_oracle(spec: &GaussianKetSpec, pt: &PhasePoint, cutoff: usize) -> Result<OracleValue> {
    pt.check_modes(spec.modes())?;
    let psi = expand_ket(spec, cutoff)?;
    psi.check_tail()?;
    let (modes, d) = (psi.modes, cutoff + 1);
    let mut t = psi.coeffs.clone();
    for (axis, a) in pt.amps().iter().enumerate() {
        t = apply_along(&t, &displaced_parity_matrix(*a, cutoff), axis, modes, d);
    }
    let value: Complex64 = psi.coeffs.iter().zip(&t).map(|(c, x)| c.conj() * x).sum();
    if value.im.abs() > IMAG_TOLERANCE {
        return Err(Error::ComplexParity(value.im));
    }
    Ok(OracleValue { parity: value.re, imag: value.im, tail_estimate: psi.tail_estimate })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub relation: EigenRelation,
    pub residual_norm: f64,
    pub tail_estimate: f64,
}

/// `‖(Σⱼ uⱼaⱼ + vⱼaⱼ† − λ)ψ‖` over indices with every `nⱼ ≤ cutoff − 1`,
/// where the truncated tensor gives exact matrix elements.
pub fn eigen_residual(spec: &GaussianKetSpec, rel: &EigenRelation, cutoff: usize) -> Result<ResidualReport> {
    if rel.mode_coeffs.len() != spec.modes() {
        return Err(Error::DimensionMismatch { expected: spec.modes(), found: rel.mode_coeffs.len() });
    }
    let psi = expand_ket(spec, cutoff)?;
    let (modes, d) = (psi.modes, cutoff + 1);
    let st = strides(modes, d);
    let mut n = vec![0usize; modes];
    let mut sum = 0.0;
    for idx in 0..psi.coeffs.len() {
        unflatten(idx, d, &mut n);
        if n.iter().any(|&k| k >= cutoff) {
            continue;
        }
        let mut acc = -rel.eigenvalue * psi.coeffs[idx];
        for (j, mc) in rel.mode_coeffs.iter().enumerate() {
            acc += mc.annihilation * ((n[j] + 1) as f64).sqrt() * psi.coeffs[idx + st[j]];
            if n[j] > 0 {
                acc += mc.creation * (n[j] as f64).sqrt() * psi.coeffs[idx - st[j]];
            }
        }
        sum += acc.norm_sqr();
    }
    Ok(ResidualReport { relation: rel.clone(), residual_norm: sum.sqrt(), tail_estimate: psi.tail_estimate })
}
