//! Grid scan followed by Nelder-Mead refinement inside a box.

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use super::{b2_imaginary, b3_imaginary, b3_real, bell_b3, Branch, Epr3Parity};
use crate::gaussian::{Regime, Regulator};
use crate::{Error, Result};

/// Minimum distance kept from singular regulator values.
pub const SINGULAR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    /// Log-uniform; needs `min > 0`.
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(min: f64, max: f64, steps: usize) -> Self {
        Axis { min, max, steps, spacing: Spacing::Linear }
    }

    pub fn geometric(min: f64, max: f64, steps: usize) -> Self {
        Axis { min, max, steps, spacing: Spacing::Geometric }
    }

    /// A single fixed value.
    pub fn fixed(v: f64) -> Self {
        Axis::linear(v, v, 1)
    }

    pub fn is_fixed(&self) -> bool {
        self.min == self.max
    }

    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() || self.min > self.max || self.steps == 0 {
            return Err(Error::EmptyDomain);
        }
        if self.spacing == Spacing::Geometric && self.min <= 0.0 {
            return Err(Error::InvalidParameter("geometric axis needs a positive minimum".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 || self.is_fixed() {
            return vec![self.min];
        }
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                let t = k as f64 / n;
                let v = match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Geometric => self.min * (self.max / self.min).powf(t),
                };
                if k + 1 == self.steps {
                    self.max
                } else {
                    v
                }
            })
            .collect()
    }

    /// Initial simplex step around `x`.
    fn local_step(&self, x: f64) -> f64 {
        let n = self.steps.max(2) as f64 - 1.0;
        match self.spacing {
            Spacing::Linear => (self.max - self.min) / n,
            Spacing::Geometric => x.max(self.min) * ((self.max / self.min).powf(1.0 / n) - 1.0),
        }
    }

    fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.min, self.max)
    }
}

/// Bell objective over `(s, J)` for patterned branches, or over
/// `(s, Re α, Im α, Re β, Im β, Re γ, Im γ)` for [`Branch::General`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub branch: Branch,
}

impl Objective {
    pub fn new(branch: Branch) -> Self {
        Objective { branch }
    }

    pub fn dims(&self) -> usize {
        if self.branch == Branch::General {
            7
        } else {
            2
        }
    }

    pub fn regime(&self, s: f64) -> Result<Regime> {
        Regulator::new(s)?.classify(self.branch.modes())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: x.len() });
        }
        let s = Regulator::new(x[0])?;
        let v = match self.branch {
            Branch::Bipartite => b2_imaginary(s, x[1])?,
            Branch::Imaginary => b3_imaginary(s, x[1])?,
            Branch::RealPair => b3_real(s, x[1])?,
            Branch::General => {
                let z = |k: usize| Complex64::new(x[k], x[k + 1]);
                bell_b3(&Epr3Parity(s), z(1), z(3), z(5))?
            }
        };
        Ok(v.b)
    }

    fn check_domain(&self, domain: &[Axis]) -> Result<()> {
        if domain.len() != self.dims() {
            return Err(Error::DimensionMismatch { expected: self.dims(), found: domain.len() });
        }
        for a in domain {
            a.validate()?;
        }
        let s = &domain[0];
        let mut singular = vec![1.0];
        if self.branch.modes() == 3 {
            singular.push(2f64.sqrt());
        }
        for s0 in singular {
            if s.min - SINGULAR_MARGIN < s0 && s0 < s.max + SINGULAR_MARGIN {
                return Err(Error::InvalidParameter(format!(
                    "s range [{}, {}] must stay {SINGULAR_MARGIN:e} away from the singular value {s0}",
                    s.min, s.max
                )));
            }
        }
        if s.min < 1.0 {
            return Err(Error::InvalidRegulator(s.min));
        }
        if self.branch != Branch::General && domain[1].min < 0.0 {
            return Err(Error::InvalidParameter("J range must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let best = &simplex[0].0;
    simplex[1..]
        .iter()
        .map(|(v, _)| v.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

/// Maximises `f` over the box `[lower, upper]` starting from `x0`, with
/// standard coefficients (reflection 1, expansion 2, contraction ½,
/// shrink ½). Trial points are clamped into the box. Stops when the largest
/// vertex distance from the best vertex (max-norm) falls below `tol`.
pub fn nelder_mead<F>(
    f: F,
    x0: &[f64],
    steps: &[f64],
    lower: &[f64],
    upper: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<SimplexResult>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let n = x0.len();
    let clamp = |v: Vec<f64>| -> Vec<f64> { v.iter().enumerate().map(|(i, x)| x.clamp(lower[i], upper[i])).collect() };
    // Minimise g = −f.
    let g = |v: &[f64]| -> Result<f64> {
        let y = f(v)?;
        if y.is_nan() {
            Err(Error::Objective(format!("NaN at {v:?}")))
        } else {
            Ok(-y)
        }
    };
    let x0 = clamp(x0.to_vec());
    let mut simplex = vec![(x0.clone(), g(&x0)?)];
    for i in 0..n {
        let mut v = x0.clone();
        v[i] += steps[i];
        if v[i] > upper[i] {
            v[i] = x0[i] - steps[i];
        }
        let v = clamp(v);
        let gv = g(&v)?;
        simplex.push((v, gv));
    }
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) < tol {
            converged = true;
            break;
        }
        iterations += 1;
        let worst = simplex[n].clone();
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(v, _)| v[k]).sum::<f64>() / n as f64)
            .collect();
        let toward = |t: f64| -> Vec<f64> {
            clamp(centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect())
        };
        let xr = toward(1.0);
        let gr = g(&xr)?;
        if gr < simplex[0].1 {
            let xe = toward(2.0);
            let ge = g(&xe)?;
            simplex[n] = if ge < gr { (xe, ge) } else { (xr, gr) };
            continue;
        }
        if gr < simplex[n - 1].1 {
            simplex[n] = (xr, gr);
            continue;
        }
        let (xc, gc) = if gr < worst.1 {
            let x = toward(0.5);
            let gx = g(&x)?;
            (x, gx)
        } else {
            let x = toward(-0.5);
            let gx = g(&x)?;
            (x, gx)
        };
        if gc < worst.1.min(gr) {
            simplex[n] = (xc, gc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vert in simplex.iter_mut().skip(1) {
            let v = clamp(best.iter().zip(&vert.0).map(|(b, x)| b + 0.5 * (x - b)).collect());
            let gv = g(&v)?;
            *vert = (v, gv);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, gx) = simplex.swap_remove(0);
    Ok(SimplexResult { x, fx: -gx, iterations, converged })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximizeOptions {
    /// Number of best grid cells refined by the simplex.
    pub top_k: usize,
    /// Additional starting points, refined alongside the grid seeds.
    pub extra_seeds: Vec<Vec<f64>>,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions { top_k: 4, extra_seeds: Vec::new(), tol: 1e-10, max_iter: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxReport {
    pub branch: Branch,
    pub domain: Vec<[f64; 2]>,
    pub max: f64,
    pub argmax: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub regime: Regime,
}

fn grid_points(domain: &[Axis]) -> Vec<Vec<f64>> {
    let mut pts = vec![Vec::new()];
    for axis in domain {
        let vals = axis.values();
        pts = pts
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Grid scan over `domain`, then simplex refinement of the `top_k` best cells
/// and any extra seeds. Fixed axes (`min == max`) are held constant.
pub fn maximize_bell(objective: &Objective, domain: &[Axis], opts: &MaximizeOptions) -> Result<MaxReport> {
    objective.check_domain(domain)?;
    let pts = grid_points(domain);
    let eval = |p: &Vec<f64>| objective.evaluate(p).map(|v| (v, p.clone()));
    #[cfg(feature = "parallel")]
    let scored: Result<Vec<(f64, Vec<f64>)>> = pts.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let scored: Result<Vec<(f64, Vec<f64>)>> = pts.iter().map(eval).collect();
    let mut scored = scored?;
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut seeds: Vec<Vec<f64>> = scored.iter().take(opts.top_k.max(1)).map(|(_, p)| p.clone()).collect();
    for s in &opts.extra_seeds {
        if s.len() != domain.len() {
            return Err(Error::DimensionMismatch { expected: domain.len(), found: s.len() });
        }
        seeds.push(domain.iter().zip(s).map(|(a, &x)| a.clamp(x)).collect());
    }

    let free: Vec<usize> = (0..domain.len()).filter(|&i| !domain[i].is_fixed()).collect();
    let mut best = (scored[0].0, scored[0].1.clone());
    let mut iterations = 0;
    let mut converged = free.is_empty();
    for seed in seeds {
        if free.is_empty() {
            break;
        }
        let embed = |y: &[f64]| -> Vec<f64> {
            let mut x = seed.clone();
            for (k, &i) in free.iter().enumerate() {
                x[i] = y[k];
            }
            x
        };
        let y0: Vec<f64> = free.iter().map(|&i| seed[i]).collect();
        let steps: Vec<f64> = free.iter().map(|&i| domain[i].local_step(seed[i])).collect();
        let lo: Vec<f64> = free.iter().map(|&i| domain[i].min).collect();
        let hi: Vec<f64> = free.iter().map(|&i| domain[i].max).collect();
        let res = nelder_mead(|y| objective.evaluate(&embed(y)), &y0, &steps, &lo, &hi, opts.tol, opts.max_iter)?;
        iterations += res.iterations;
        if res.fx > best.0 || (res.fx == best.0 && !converged) {
            best = (res.fx, embed(&res.x));
            converged = res.converged;
        }
    }
    Ok(MaxReport {
        branch: objective.branch,
        domain: domain.iter().map(|a| [a.min, a.max]).collect(),
        max: best.0,
        regime: objective.regime(best.1[0])?,
        argmax: best.1,
        iterations,
        converged,
    })
}
