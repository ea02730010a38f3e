use std::io::{self, Write};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{Axis, Branch, Objective};
use crate::gaussian::Regime;
use crate::wigner::fmt_f64;
use crate::{Error, Result};

pub const BELL_CSV_HEADER: &str = "branch,s,J,B,regime";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellRow {
    pub s: f64,
    pub j: f64,
    pub b: f64,
    pub regime: Regime,
}

/// Bell values on an `(s, J)` grid, `s` varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct BellSurface {
    pub branch: Branch,
    pub s_values: Vec<f64>,
    pub j_values: Vec<f64>,
    pub rows: Vec<BellRow>,
}

impl BellSurface {
    pub fn get(&self, si: usize, ji: usize) -> &BellRow {
        &self.rows[si * self.j_values.len() + ji]
    }

    /// Grid maximum and its `(s index, J index)`.
    pub fn max_cell(&self) -> (f64, usize, usize) {
        let (k, row) = self
            .rows
            .iter()
            .enumerate()
            .fold((0, &self.rows[0]), |acc, (k, r)| if r.b > acc.1.b { (k, r) } else { acc });
        let nj = self.j_values.len();
        (row.b, k / nj, k % nj)
    }
}

pub fn scan_surface(branch: Branch, s_axis: &Axis, j_axis: &Axis) -> Result<BellSurface> {
    if branch == Branch::General {
        return Err(Error::InvalidParameter("surfaces are defined for patterned branches only".into()));
    }
    s_axis.validate()?;
    j_axis.validate()?;
    let obj = Objective::new(branch);
    let s_values = s_axis.values();
    let j_values = j_axis.values();
    let cells: Vec<(f64, f64)> = s_values.iter().flat_map(|&s| j_values.iter().map(move |&j| (s, j))).collect();
    let eval = |&(s, j): &(f64, f64)| -> Result<BellRow> {
        Ok(BellRow { s, j, b: obj.evaluate(&[s, j])?, regime: obj.regime(s)? })
    };
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<BellRow>> = cells.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<BellRow>> = cells.iter().map(eval).collect();
    Ok(BellSurface { branch, s_values, j_values, rows: rows? })
}

pub fn write_bell_csv<W: Write>(mut out: W, surface: &BellSurface) -> io::Result<()> {
    writeln!(out, "{BELL_CSV_HEADER}")?;
    for r in &surface.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            surface.branch,
            fmt_f64(r.s),
            fmt_f64(r.j),
            fmt_f64(r.b),
            r.regime.as_str()
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub figure: u8,
    pub branch: Branch,
    pub s_axis: Axis,
    pub j_axis: Axis,
}

/// Grids for the four Bell-surface figures. `s` starts `1e−4` above the
/// relevant singular value; `J` is log-spaced over `[1e−8, 1]` because the
/// optimal displacement shrinks with the distance to the singularity.
pub fn figure_preset(figure: u8) -> Result<FigurePreset> {
    let eps = 1e-4;
    let j_axis = Axis::geometric(1e-8, 1.0, 200);
    let root2 = 2f64.sqrt();
    let (branch, s_axis) = match figure {
        1 => (Branch::Bipartite, Axis::linear(1.0 + eps, 1.5, 200)),
        2 => (Branch::Imaginary, Axis::linear(1.0 + eps, 1.4, 200)),
        3 => (Branch::RealPair, Axis::linear(1.0 + eps, 1.4, 200)),
        4 => (Branch::Imaginary, Axis::linear(root2 + eps, root2 + 0.5, 200)),
        _ => return Err(Error::InvalidParameter(format!("unknown figure {figure} (expected 1-4)"))),
    };
    Ok(FigurePreset { figure, branch, s_axis, j_axis })
}
