//! Complex Gaussian (Berezin) integral over coherent-state labels:
//!
//! ```text
//! ∫ Πᵢ d²zᵢ/π exp(−½ (z, z*) M (z; z*) + (μ, ν*)(z; z*)),   M = [[A, B], [C, D]]
//!   = det(P)^{−½} exp(½ (μ, ν*) P⁻¹ (ν*; μ)),               P = [[C, D], [A, B]]
//! ```
//!
//! with `A`, `D` symmetric and `C = Bᵀ`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::gaussian::QuadraticCoupling;
use crate::{Error, Result};

const SYM_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    pub a: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
    pub c: DMatrix<Complex64>,
    pub d: DMatrix<Complex64>,
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl BlockMatrix {
    pub fn new(
        a: DMatrix<Complex64>,
        b: DMatrix<Complex64>,
        c: DMatrix<Complex64>,
        d: DMatrix<Complex64>,
    ) -> Result<Self> {
        let n = a.nrows();
        for m in [&a, &b, &c, &d] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.ncols() });
            }
        }
        let m = BlockMatrix { a, b, c, d };
        m.check_symmetry()?;
        Ok(m)
    }

    /// The block matrix produced by a ket with coupling `F` on both sides of
    /// an anti-normally ordered operator: `A = −F*`, `B = C = I`, `D = −F`.
    pub fn for_coupling(f: &QuadraticCoupling) -> Self {
        let f = f.matrix();
        let n = f.nrows();
        let id = DMatrix::<Complex64>::identity(n, n);
        BlockMatrix {
            a: -f.map(|z| z.conj()),
            b: id.clone(),
            c: id,
            d: -f.clone(),
        }
    }

    pub fn modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn check_symmetry(&self) -> Result<()> {
        let scale = 1.0 + max_abs(&self.a).max(max_abs(&self.b)).max(max_abs(&self.d));
        let ok = max_abs(&(&self.a - self.a.transpose())) <= SYM_TOL * scale
            && max_abs(&(&self.d - self.d.transpose())) <= SYM_TOL * scale
            && max_abs(&(&self.c - self.b.transpose())) <= SYM_TOL * scale;
        if ok {
            Ok(())
        } else {
            Err(Error::BlockSymmetry)
        }
    }

    /// `[[C, D], [A, B]]`, the matrix whose determinant and inverse appear in
    /// the integrated form.
    pub fn assembled(&self) -> DMatrix<Complex64> {
        let n = self.modes();
        let mut p = DMatrix::zeros(2 * n, 2 * n);
        p.view_mut((0, 0), (n, n)).copy_from(&self.c);
        p.view_mut((0, n), (n, n)).copy_from(&self.d);
        p.view_mut((n, 0), (n, n)).copy_from(&self.a);
        p.view_mut((n, n), (n, n)).copy_from(&self.b);
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerezinResult {
    /// `det(P)^{−½}` on the branch continuous from the identity.
    pub prefactor: Complex64,
    /// `½ (μ, ν*) P⁻¹ (ν*; μ)`.
    pub exponent: Complex64,
    pub determinant: Complex64,
}

/// Square root of `det(P)` as a product of per-eigenvalue principal roots.
///
/// Along the straight path `I + t(P − I)` each eigenvalue moves on the segment
/// from 1 to λ, which meets the principal branch cut only when λ itself is a
/// negative real; there the root is taken from the upper half plane. The
/// product therefore follows the homotopy branch.
fn sqrt_det(p: &DMatrix<Complex64>, det: Complex64) -> Complex64 {
    match p.eigenvalues() {
        Some(ev) => ev.iter().fold(Complex64::new(1.0, 0.0), |acc, &l| {
            let l = if l.im == 0.0 { Complex64::new(l.re, 0.0) } else { l };
            acc * l.sqrt()
        }),
        None => det.sqrt(),
    }
}

pub fn berezin_integral(m: &BlockMatrix, mu_nu: &[Complex64]) -> Result<BerezinResult> {
    m.check_symmetry()?;
    let n = m.modes();
    if mu_nu.len() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, found: mu_nu.len() });
    }
    let p = m.assembled();
    let lu = p.clone().lu();
    let det = lu.determinant();
    let scale = max_abs(&p).max(1.0).powi(2 * n as i32);
    if !det.is_finite() || det.norm() <= 1e-300_f64.max(1e-14 * scale) {
        return Err(Error::SingularIntegral);
    }
    let v = DVector::from_column_slice(mu_nu);
    let mut w = DVector::zeros(2 * n);
    w.rows_mut(0, n).copy_from(&v.rows(n, n));
    w.rows_mut(n, n).copy_from(&v.rows(0, n));
    let x = lu.solve(&w).ok_or(Error::SingularIntegral)?;
    let exponent = 0.5 * v.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<Complex64>();
    let prefactor = sqrt_det(&p, det).inv();
    Ok(BerezinResult { prefactor, exponent, determinant: det })
}
