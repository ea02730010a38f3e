use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{wigner_displaced_parity, PhasePoint};
use crate::gaussian::{GaussianKetSpec, Regime, StateFamily};
use crate::{Error, Result};

pub const WIGNER_CSV_HEADER: &str = "s,r,x1,p1,x2,p2,x3,p3,W,regime";

/// Fixed float formatting used by every CSV writer (17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A single quadrature coordinate, `x_k` or `p_k` with 1-based mode `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X(usize),
    P(usize),
}

impl Quadrature {
    /// Position in the interleaved vector `(x₁, p₁, x₂, …)`.
    pub fn index(self) -> usize {
        match self {
            Quadrature::X(k) => 2 * (k - 1),
            Quadrature::P(k) => 2 * (k - 1) + 1,
        }
    }
}

impl FromStr for Quadrature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad quadrature '{s}' (expected x1..x3 or p1..p3)"));
        let (kind, k) = s.split_at(s.len().min(1));
        let k: usize = k.parse().map_err(|_| bad())?;
        if !(1..=3).contains(&k) {
            return Err(bad());
        }
        match kind {
            "x" | "X" => Ok(Quadrature::X(k)),
            "p" | "P" => Ok(Quadrature::P(k)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quadrature::X(k) => write!(f, "x{k}"),
            Quadrature::P(k) => write!(f, "p{k}"),
        }
    }
}

/// Base point plus one or two varied quadratures; the first axis varies
/// slowest in the output.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerSlice {
    pub base: Vec<f64>,
    pub axes: Vec<(Quadrature, Vec<f64>)>,
}

impl WignerSlice {
    pub fn points(&self) -> Result<Vec<Vec<f64>>> {
        for (q, _) in &self.axes {
            if q.index() >= self.base.len() {
                return Err(Error::DimensionMismatch { expected: self.base.len() / 2, found: q.index() / 2 + 1 });
            }
        }
        let mut pts = vec![self.base.clone()];
        for (q, values) in &self.axes {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut p = p.clone();
                        p[q.index()] = v;
                        p
                    })
                })
                .collect();
        }
        Ok(pts)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerGridRow {
    pub s: Option<f64>,
    pub r: Option<f64>,
    pub quadratures: Vec<f64>,
    pub w: f64,
    pub regime: Regime,
}

impl WignerGridRow {
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        let mut cols = vec![opt(self.s), opt(self.r)];
        for i in 0..6 {
            cols.push(self.quadratures.get(i).map(|&v| fmt_f64(v)).unwrap_or_default());
        }
        cols.push(fmt_f64(self.w));
        cols.push(self.regime.as_str().to_string());
        cols.join(",")
    }
}

fn family_params(spec: &GaussianKetSpec) -> (Option<f64>, Option<f64>) {
    match spec.family() {
        StateFamily::Epr { s, .. } => (Some(*s), None),
        StateFamily::Nopa2 { r } | StateFamily::Nopa3 { r } => (None, Some(*r)),
        StateFamily::Custom => (None, None),
    }
}

/// Evaluates the Wigner function of `spec` on every point of `slice`.
/// Row order is fixed by the slice regardless of worker scheduling.
pub fn evaluate_slice(spec: &GaussianKetSpec, slice: &WignerSlice) -> Result<Vec<WignerGridRow>> {
    if slice.base.len() != 2 * spec.modes() {
        return Err(Error::DimensionMismatch { expected: spec.modes(), found: slice.base.len() / 2 });
    }
    let (s, r) = family_params(spec);
    let eval = |y: &Vec<f64>| -> Result<WignerGridRow> {
        let v = wigner_displaced_parity(spec, &PhasePoint::from_quadratures(y)?)?;
        Ok(WignerGridRow { s, r, quadratures: y.clone(), w: v.w, regime: v.regime })
    };
    let pts = slice.points()?;
    #[cfg(feature = "parallel")]
    let rows = pts.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let rows = pts.iter().map(eval).collect();
    rows
}

pub fn write_wigner_csv<W: Write>(mut out: W, rows: &[WignerGridRow]) -> io::Result<()> {
    writeln!(out, "{WIGNER_CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}
