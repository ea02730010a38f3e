//! Real quadratic forms over quadrature coordinates `y = (x₁, p₁, …, x_N, p_N)`.

use nalgebra::{DMatrix, SymmetricEigen};

use super::PhasePoint;
use crate::{Error, Result};

fn unit_point(modes: usize, idx: &[usize]) -> Result<PhasePoint> {
    let mut y = vec![0.0; 2 * modes];
    for &i in idx {
        y[i] += 1.0;
    }
    PhasePoint::from_quadratures(&y)
}

/// Symmetric `Q` with `exponent(y) = yᵀ Q y`, recovered by polarisation.
/// Exact when `exponent` is a homogeneous quadratic.
pub fn quadrature_form<F>(modes: usize, exponent: F) -> Result<DMatrix<f64>>
where
    F: Fn(&PhasePoint) -> Result<f64>,
{
    let n = 2 * modes;
    let diag: Vec<f64> = (0..n)
        .map(|i| exponent(&unit_point(modes, &[i])?))
        .collect::<Result<_>>()?;
    let mut q = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag.clone()));
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (exponent(&unit_point(modes, &[i, j])?)? - diag[i] - diag[j]);
            q[(i, j)] = v;
            q[(j, i)] = v;
        }
    }
    Ok(q)
}

/// Numbers of positive, negative and zero eigenvalues of `Q`.
pub fn form_signature(q: &DMatrix<f64>) -> (usize, usize, usize) {
    let ev = SymmetricEigen::new(q.clone()).eigenvalues;
    let tol = 1e-12 * ev.amax().max(1.0);
    let pos = ev.iter().filter(|&&l| l > tol).count();
    let neg = ev.iter().filter(|&&l| l < -tol).count();
    (pos, neg, ev.len() - pos - neg)
}

/// `∫ (2/π)^N exp(yᵀQy) Πⱼ d²αⱼ = 1/√det(−Q)` with `d²α = d(Re α) d(Im α)`.
/// Requires `Q` negative definite.
pub fn gaussian_phase_space_integral(q: &DMatrix<f64>) -> Result<f64> {
    let (pos, _, zero) = form_signature(q);
    if pos > 0 || zero > 0 {
        return Err(Error::InvalidParameter("quadratic form is not negative definite".into()));
    }
    Ok(1.0 / (-q).determinant().sqrt())
}
