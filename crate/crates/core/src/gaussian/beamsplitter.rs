use nalgebra::DMatrix;

use super::{nopa3_from_coupling, GaussianKetSpec, QuadraticCoupling, SqueezingParam};

/// Phase-free beamsplitter on modes `i`, `j` of an `n`-mode system, as the
/// substitution matrix `O` with `a → O a`:
///
/// ```text
/// a_i → a_i cos θ + a_j sin θ
/// a_j → −a_i sin θ + a_j cos θ
/// ```
pub fn beamsplitter(n: usize, i: usize, j: usize, theta: f64) -> DMatrix<f64> {
    assert!(i < n && j < n && i != j, "beamsplitter modes out of range");
    let (s, c) = theta.sin_cos();
    let mut o = DMatrix::identity(n, n);
    o[(i, i)] = c;
    o[(i, j)] = s;
    o[(j, i)] = -s;
    o[(j, j)] = c;
    o
}

/// Substituting `a† → O a†` in `½ a†ᵀ F a†` yields `½ a†ᵀ (OᵀFO) a†`.
pub fn congruence(f: &DMatrix<f64>, o: &DMatrix<f64>) -> DMatrix<f64> {
    o.transpose() * f * o
}

/// Tripartite NOPA built from one momentum-squeezed and two
/// position-squeezed vacua mixed by `B₂₃(π/4) B₁₂(arccos 1/√3)`.
///
/// Single-mode squeezed vacua contribute `½ c a†²` with `c = +tanh r` for the
/// momentum-squeezed mode 1 and `c = −tanh r` for modes 2 and 3. `B₁₂` is the
/// right-most factor of the operator product and acts first.
pub fn nopa3_from_beamsplitters(r: SqueezingParam) -> GaussianKetSpec {
    let t = r.r().tanh();
    let squeezed = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[t, -t, -t]));
    let b12 = beamsplitter(3, 0, 1, (1.0 / 3f64.sqrt()).acos());
    let b23 = beamsplitter(3, 1, 2, std::f64::consts::FRAC_PI_4);
    let mixed = congruence(&congruence(&squeezed, &b12), &b23);
    // Round-off leaves the result symmetric only to ~1e-17; symmetrise exactly.
    let sym = (&mixed + mixed.transpose()) * 0.5;
    nopa3_from_coupling(r, QuadraticCoupling::from_real(sym).expect("symmetrised"))
}
