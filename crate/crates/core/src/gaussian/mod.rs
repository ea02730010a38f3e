//! Gaussian ket specifications `N·c·exp(λ·a† + ½ a†ᵀ F a†)|0⟩`.
//!
//! The EPR-type family is parameterised by a regulator `s > 1` with drive
//! `λ = η/s` and pairwise couplings `F_ij = 1/s²`; the NOPA family by a
//! squeezing parameter `r`. Normalisation uses the unit-norm convention
//! `N = det(I − F†F)^{1/4}`.

mod beamsplitter;
mod eigen;

pub use beamsplitter::{beamsplitter, congruence, nopa3_from_beamsplitters};
pub use eigen::{
    eigen_relations, jacobi_mode_map, BogoliubovPair, EigenRelation, ModeCoeff, RelationFamily,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{Error, Result};

/// Relative tolerance for deciding that a regulator sits exactly on a
/// singular value (`s⁴ = 4` for three modes).
pub const SINGULAR_TOL: f64 = 1e-12;

/// Normalizability regime of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Spectral norm of the coupling below one: a genuine normalisable ket.
    Normalizable,
    /// Spectral norm exactly one.
    Singular,
    /// Spectral norm above one: the ket only exists as an analytic continuation.
    Formal,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Normalizable => "normalizable",
            Regime::Singular => "singular",
            Regime::Formal => "formal",
        }
    }

    /// Regime implied by the spectral norm of a coupling matrix.
    pub fn from_spectral_norm(rho: f64) -> Regime {
        if (rho - 1.0).abs() <= SINGULAR_TOL {
            Regime::Singular
        } else if rho < 1.0 {
            Regime::Normalizable
        } else {
            Regime::Formal
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The EPR regulator `s`, always strictly greater than one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Regulator(f64);

impl Regulator {
    pub fn new(s: f64) -> Result<Self> {
        if s.is_finite() && s > 1.0 {
            Ok(Regulator(s))
        } else {
            Err(Error::InvalidRegulator(s))
        }
    }

    #[inline]
    pub fn s(self) -> f64 {
        self.0
    }

    /// Regime of the `modes`-partite EPR state at this regulator.
    ///
    /// Two modes are normalisable for every `s > 1`. Three modes are formal
    /// below `√2`, singular at `√2` and normalisable above.
    pub fn classify(self, modes: usize) -> Result<Regime> {
        match modes {
            2 => Ok(Regime::Normalizable),
            3 => {
                let s4 = self.0.powi(4);
                if (s4 - 4.0).abs() <= 4.0 * SINGULAR_TOL {
                    Ok(Regime::Singular)
                } else if s4 < 4.0 {
                    Ok(Regime::Formal)
                } else {
                    Ok(Regime::Normalizable)
                }
            }
            m => Err(Error::UnsupportedModes(m)),
        }
    }
}

/// Squeezing parameter `r ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SqueezingParam(f64);

impl SqueezingParam {
    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r >= 0.0 {
            Ok(SqueezingParam(r))
        } else {
            Err(Error::InvalidSqueezing(r))
        }
    }

    #[inline]
    pub fn r(self) -> f64 {
        self.0
    }
}

/// Per-mode EPR eigenvalue parameters `(η, η′, η″)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaVector(pub Vec<Complex64>);

impl EtaVector {
    pub fn zeros(modes: usize) -> Self {
        EtaVector(vec![Complex64::new(0.0, 0.0); modes])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl From<Vec<Complex64>> for EtaVector {
    fn from(v: Vec<Complex64>) -> Self {
        EtaVector(v)
    }
}

/// Symmetric coupling matrix `F` of the exponent `½ a†ᵀ F a†`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticCoupling(DMatrix<Complex64>);

impl QuadraticCoupling {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix != matrix.transpose() {
            return Err(Error::NonSymmetricCoupling);
        }
        Ok(QuadraticCoupling(matrix))
    }

    pub fn from_real(matrix: DMatrix<f64>) -> Result<Self> {
        Self::new(matrix.map(|x| Complex64::new(x, 0.0)))
    }

    /// All off-diagonal entries `1/s²`, zero diagonal.
    pub fn epr(modes: usize, s: Regulator) -> Self {
        let f = 1.0 / (s.s() * s.s());
        let m = DMatrix::from_fn(modes, modes, |i, j| {
            Complex64::new(if i == j { 0.0 } else { f }, 0.0)
        });
        QuadraticCoupling(m)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.nrows()
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.0.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// `det(I − F†F)` as a product over singular values.
    pub fn det_i_minus_fdag_f(&self) -> f64 {
        self.singular_values().iter().map(|s| 1.0 - s * s).product()
    }
}

/// How a spec was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateFamily {
    Epr { s: f64, eta: EtaVector },
    Nopa2 { r: f64 },
    Nopa3 { r: f64 },
    Custom,
}

/// Coefficient data of a Gaussian ket.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKetSpec {
    family: StateFamily,
    drive: Vec<Complex64>,
    coupling: QuadraticCoupling,
    scalar_prefactor: f64,
    regime: Regime,
    norm: f64,
}

impl GaussianKetSpec {
    /// Spec with an arbitrary drive and coupling; the regime follows from the
    /// spectral norm of `coupling`.
    pub fn new(drive: Vec<Complex64>, coupling: QuadraticCoupling, scalar_prefactor: f64) -> Result<Self> {
        if drive.len() != coupling.modes() {
            return Err(Error::DimensionMismatch {
                expected: coupling.modes(),
                found: drive.len(),
            });
        }
        let regime = Regime::from_spectral_norm(coupling.spectral_norm());
        Ok(Self::assemble(StateFamily::Custom, drive, coupling, scalar_prefactor, regime))
    }

    fn assemble(
        family: StateFamily,
        drive: Vec<Complex64>,
        coupling: QuadraticCoupling,
        scalar_prefactor: f64,
        regime: Regime,
    ) -> Self {
        let norm = match regime {
            Regime::Normalizable => coupling.det_i_minus_fdag_f().max(0.0).powf(0.25),
            Regime::Singular => 0.0,
            Regime::Formal => f64::NAN,
        };
        GaussianKetSpec {
            family,
            drive,
            coupling,
            scalar_prefactor,
            regime,
            norm,
        }
    }

    pub fn modes(&self) -> usize {
        self.drive.len()
    }

    pub fn family(&self) -> &StateFamily {
        &self.family
    }

    pub fn drive(&self) -> &[Complex64] {
        &self.drive
    }

    pub fn coupling(&self) -> &QuadraticCoupling {
        &self.coupling
    }

    pub fn scalar_prefactor(&self) -> f64 {
        self.scalar_prefactor
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Unit-norm normalisation constant; `None` in the formal regime, where
    /// the ket has no norm.
    pub fn norm(&self) -> Option<f64> {
        match self.regime {
            Regime::Formal => None,
            _ => Some(self.norm),
        }
    }

    /// Same as [`norm`](Self::norm) with NaN standing in for "undefined".
    pub fn norm_or_nan(&self) -> f64 {
        self.norm
    }

    /// `|det(I − F†F)|^{1/2}`: the squared normalisation with the absolute
    /// value taken, which is what the algebraic Wigner expressions use in
    /// every regime.
    pub fn formal_norm_sq(&self) -> f64 {
        self.coupling.det_i_minus_fdag_f().abs().sqrt()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pair = |z: &Complex64| json!([z.re, z.im]);
        let f = self.coupling.matrix();
        let n = f.nrows();
        let f_rows: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| pair(&f[(i, j)]))
            .collect();
        let mut v = json!({
            "modes": self.modes(),
            "family": family_name(&self.family),
            "F": f_rows,
            "drive": self.drive.iter().map(pair).collect::<Vec<_>>(),
            "scalar_prefactor": self.scalar_prefactor,
            "norm": self.norm(),
            "regime": self.regime,
            "spectral_norm": self.coupling.spectral_norm(),
        });
        match &self.family {
            StateFamily::Epr { s, eta } => {
                v["s"] = json!(s);
                v["eta"] = json!(eta.0.iter().map(pair).collect::<Vec<_>>());
            }
            StateFamily::Nopa2 { r } | StateFamily::Nopa3 { r } => {
                v["r"] = json!(r);
            }
            StateFamily::Custom => {}
        }
        v
    }
}

fn family_name(f: &StateFamily) -> &'static str {
    match f {
        StateFamily::Epr { .. } => "epr",
        StateFamily::Nopa2 { .. } => "nopa2",
        StateFamily::Nopa3 { .. } => "nopa3",
        StateFamily::Custom => "custom",
    }
}

/// Regularised EPR-type ket on two or three modes.
///
/// Drive `λᵢ = ηᵢ/s`, pairwise couplings `1/s²`. The scalar prefactor is
/// `exp(−|η|²/(2s²))` for two modes (a single complex η, with the second mode
/// driven by `−η*`) and `exp(−Σ|ηᵢ|²/(4s²))` for three.
pub fn epr_ket(modes: usize, s: Regulator, eta: &EtaVector) -> Result<GaussianKetSpec> {
    let regime = s.classify(modes)?;
    let sv = s.s();
    let (drive, prefactor) = match modes {
        2 => {
            // The bipartite state carries one η; accept either [η] or [η, −η*].
            let e = match eta.len() {
                1 | 2 => eta.0[0],
                n => return Err(Error::DimensionMismatch { expected: 2, found: n }),
            };
            if eta.len() == 2 {
                let expected = -e.conj();
                if (eta.0[1] - expected).norm() > 1e-12 * (1.0 + e.norm()) {
                    return Err(Error::InvalidParameter(
                        "bipartite eta must be [η, −η*]".into(),
                    ));
                }
            }
            (
                vec![e / sv, -e.conj() / sv],
                (-e.norm_sqr() / (2.0 * sv * sv)).exp(),
            )
        }
        3 => {
            if eta.len() != 3 {
                return Err(Error::DimensionMismatch { expected: 3, found: eta.len() });
            }
            (
                eta.0.iter().map(|e| e / sv).collect(),
                (-eta.norm_sqr() / (4.0 * sv * sv)).exp(),
            )
        }
        m => return Err(Error::UnsupportedModes(m)),
    };
    let coupling = QuadraticCoupling::epr(modes, s);
    let family = StateFamily::Epr {
        s: sv,
        eta: if modes == 2 {
            EtaVector(drive.iter().map(|l| l * sv).collect())
        } else {
            eta.clone()
        },
    };
    Ok(GaussianKetSpec::assemble(family, drive, coupling, prefactor, regime))
}

/// Two-mode NOPA (two-mode squeezed vacuum): `√(1−tanh²r) exp(tanh r a†b†)|00⟩`.
pub fn nopa2_ket(r: SqueezingParam) -> GaussianKetSpec {
    let t = r.r().tanh();
    let coupling = QuadraticCoupling::from_real(DMatrix::from_row_slice(2, 2, &[0.0, t, t, 0.0]))
        .expect("symmetric by construction");
    let regime = Regime::from_spectral_norm(t);
    GaussianKetSpec::assemble(
        StateFamily::Nopa2 { r: r.r() },
        vec![Complex64::new(0.0, 0.0); 2],
        coupling,
        1.0,
        regime,
    )
}

/// Tripartite NOPA-like state: `Fᵢᵢ = −tanh r/3`, `Fᵢⱼ = 2 tanh r/3`.
pub fn nopa3_ket(r: SqueezingParam) -> GaussianKetSpec {
    let t = r.r().tanh();
    let coupling = QuadraticCoupling::from_real(nopa3_coupling(t)).expect("symmetric by construction");
    nopa3_from_coupling(r, coupling)
}

pub(crate) fn nopa3_coupling(t: f64) -> DMatrix<f64> {
    DMatrix::from_fn(3, 3, |i, j| if i == j { -t / 3.0 } else { 2.0 * t / 3.0 })
}

pub(crate) fn nopa3_from_coupling(r: SqueezingParam, coupling: QuadraticCoupling) -> GaussianKetSpec {
    let regime = Regime::from_spectral_norm(coupling.spectral_norm());
    GaussianKetSpec::assemble(
        StateFamily::Nopa3 { r: r.r() },
        vec![Complex64::new(0.0, 0.0); 3],
        coupling,
        1.0,
        regime,
    )
}

/// Squeezing matched to a regulator through `tanh r = 1/s²`.
pub fn squeezing_correspondence(s: Regulator) -> SqueezingParam {
    SqueezingParam((1.0 / (s.s() * s.s())).atanh())
}
