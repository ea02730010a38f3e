//! Linear combinations of ladder operators that annihilate-up-to-eigenvalue
//! the tripartite EPR ket.
//!
//! Three equivalent families are produced:
//!
//! * annihilation form, `a − (b† + c†)/s²` with eigenvalue `η/s` and cyclic
//!   permutations;
//! * quadrature form on relative positions/momenta and the total;
//! * Jacobi-mode form, `s 𝔞 ± k/s 𝔞†` on the orthonormal relative and
//!   centre-of-mass modes.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use super::{EtaVector, Regulator};
use crate::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationFamily {
    Annihilation,
    Quadrature,
    Jacobi,
}

/// Coefficients of `a†` and `a` for one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeCoeff {
    pub creation: Complex64,
    pub annihilation: Complex64,
}

impl ModeCoeff {
    fn real(annihilation: f64, creation: f64) -> Self {
        ModeCoeff {
            creation: Complex64::new(creation, 0.0),
            annihilation: Complex64::new(annihilation, 0.0),
        }
    }
}

/// `Σⱼ (uⱼ aⱼ + vⱼ aⱼ†) |ψ⟩ = eigenvalue |ψ⟩`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenRelation {
    pub family: RelationFamily,
    pub mode_coeffs: Vec<ModeCoeff>,
    pub eigenvalue: Complex64,
}

/// Single-mode pair `u 𝔠 + v 𝔠†` on a collective mode `𝔠 = Σ rowⱼ aⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovPair {
    pub row: Vec<f64>,
    pub u: f64,
    pub v: f64,
}

impl BogoliubovPair {
    /// `(u, v)` scaled so that `|u|² − |v|² = ±1`.
    pub fn normalized(&self) -> (f64, f64) {
        let k = (self.u * self.u - self.v * self.v).abs().sqrt();
        (self.u / k, self.v / k)
    }

    /// Sign of `|u|² − |v|²`: `+1` for a squeezed annihilator, `−1` when the
    /// creation part dominates, `0` for a pure quadrature (unnormalisable).
    pub fn signature(&self) -> i32 {
        let d = self.u * self.u - self.v * self.v;
        if d.abs() <= 1e-12 * (self.u * self.u + self.v * self.v) {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        }
    }

    /// `r` with `tanh r = min(|u|,|v|)/max(|u|,|v|)`.
    pub fn squeezing_parameter(&self) -> f64 {
        let (a, b) = (self.u.abs(), self.v.abs());
        (a.min(b) / a.max(b)).atanh()
    }
}

impl EigenRelation {
    /// Coefficients on `(Xⱼ, Pⱼ)` with `a = (X + iP)/√2`.
    pub fn quadrature_coeffs(&self) -> Vec<(Complex64, Complex64)> {
        let i = Complex64::new(0.0, 1.0);
        self.mode_coeffs
            .iter()
            .map(|m| {
                let x = (m.annihilation + m.creation) / SQRT2;
                let p = i * (m.annihilation - m.creation) / SQRT2;
                (x, p)
            })
            .collect()
    }

    /// Collective single-mode form, when both the annihilation and creation
    /// coefficient vectors lie along one real unit vector.
    pub fn single_mode_form(&self) -> Option<BogoliubovPair> {
        let ann: Vec<Complex64> = self.mode_coeffs.iter().map(|m| m.annihilation).collect();
        let cre: Vec<Complex64> = self.mode_coeffs.iter().map(|m| m.creation).collect();
        if ann.iter().chain(&cre).any(|z| z.im.abs() > 1e-14) {
            return None;
        }
        let u = ann.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if u == 0.0 {
            return None;
        }
        let row: Vec<f64> = ann.iter().map(|z| z.re / u).collect();
        let v: f64 = row.iter().zip(&cre).map(|(r, c)| r * c.re).sum();
        let resid: f64 = row.iter().zip(&cre).map(|(r, c)| (c.re - v * r).powi(2)).sum::<f64>().sqrt();
        if resid > 1e-12 * (1.0 + v.abs()) {
            return None;
        }
        Some(BogoliubovPair { row, u, v })
    }
}

/// Orthogonal map from modes `(a, b, c)` to the Jacobi relative modes and the
/// centre-of-mass mode.
pub fn jacobi_mode_map() -> Matrix3<f64> {
    let r2 = 1.0 / SQRT2;
    let r6 = 1.0 / 6f64.sqrt();
    let r3 = 1.0 / 3f64.sqrt();
    Matrix3::new(r2, 0.0, -r2, r6, -2.0 * r6, r6, r3, r3, r3)
}

/// The nine eigen-relations of the tripartite EPR ket: three of each family,
/// in the order annihilation, quadrature, Jacobi.
pub fn eigen_relations(modes: usize, s: Regulator, eta: &EtaVector) -> Result<Vec<EigenRelation>> {
    if modes != 3 {
        return Err(Error::UnsupportedModes(modes));
    }
    if eta.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: eta.len() });
    }
    let s = s.s();
    let e = &eta.0;
    let inv_s2 = 1.0 / (s * s);
    let mut out = Vec::with_capacity(9);

    for k in 0..3 {
        let mode_coeffs = (0..3)
            .map(|j| if j == k { ModeCoeff::real(1.0, 0.0) } else { ModeCoeff::real(0.0, -inv_s2) })
            .collect();
        out.push(EigenRelation {
            family: RelationFamily::Annihilation,
            mode_coeffs,
            eigenvalue: e[k] / s,
        });
    }

    // s(aᵢ − aⱼ) + (aᵢ† − aⱼ†)/s for the two relative pairs, then
    // s Σa − (2/s) Σa† for the total.
    for (i, j) in [(0usize, 1usize), (1, 2)] {
        let mode_coeffs = (0..3)
            .map(|m| {
                let sign = if m == i { 1.0 } else if m == j { -1.0 } else { 0.0 };
                ModeCoeff::real(sign * s, sign / s)
            })
            .collect();
        out.push(EigenRelation {
            family: RelationFamily::Quadrature,
            mode_coeffs,
            eigenvalue: e[i] - e[j],
        });
    }
    out.push(EigenRelation {
        family: RelationFamily::Quadrature,
        mode_coeffs: vec![ModeCoeff::real(s, -2.0 / s); 3],
        eigenvalue: e[0] + e[1] + e[2],
    });

    let jac = jacobi_mode_map();
    let jacobi_terms = [
        (1.0 / s, (e[0] - e[2]) / SQRT2),
        (1.0 / s, (e[0] - 2.0 * e[1] + e[2]) / 6f64.sqrt()),
        (-2.0 / s, (e[0] + e[1] + e[2]) / 3f64.sqrt()),
    ];
    for (row, (v, eig)) in jacobi_terms.into_iter().enumerate() {
        let mode_coeffs = (0..3).map(|m| ModeCoeff::real(s * jac[(row, m)], v * jac[(row, m)])).collect();
        out.push(EigenRelation {
            family: RelationFamily::Jacobi,
            mode_coeffs,
            eigenvalue: eig,
        });
    }
    Ok(out)
}
