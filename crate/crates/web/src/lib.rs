//! Browser bindings for the interactive demo in `www/`.
//!
//! Every export returns plain numbers or a JSON string; errors surface as
//! JavaScript exceptions carrying the library message.

use wasm_bindgen::prelude::*;

use cv_epr::chsh::{maximize_bell, Axis, Branch, MaximizeOptions, Objective};
use cv_epr::gaussian::{epr_ket, nopa2_ket, nopa3_ket, EtaVector, GaussianKetSpec, Regulator, SqueezingParam};
use cv_epr::wigner::{wigner_displaced_parity, PhasePoint, Quadrature};

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn state(family: &str, modes: usize, param: f64) -> Result<GaussianKetSpec, cv_epr::Error> {
    match family {
        "epr" => epr_ket(modes, Regulator::new(param)?, &EtaVector::zeros(modes)),
        "nopa" if modes == 2 => Ok(nopa2_ket(SqueezingParam::new(param)?)),
        "nopa" => Ok(nopa3_ket(SqueezingParam::new(param)?)),
        other => Err(cv_epr::Error::InvalidParameter(format!("unknown family '{other}'"))),
    }
}

/// Row-major `steps × steps` Wigner values on the plane spanned by
/// quadratures `qx` (columns) and `qy` (rows), all other quadratures zero.
pub fn wigner_plane(
    family: &str,
    modes: usize,
    param: f64,
    qx: &str,
    qy: &str,
    extent: f64,
    steps: usize,
) -> Result<Vec<f64>, cv_epr::Error> {
    let spec = state(family, modes, param)?;
    let qx: Quadrature = qx.parse()?;
    let qy: Quadrature = qy.parse()?;
    if qx.index() >= 2 * modes || qy.index() >= 2 * modes || qx == qy {
        return Err(cv_epr::Error::InvalidParameter("choose two distinct quadratures of the state".into()));
    }
    if steps < 2 || !(extent > 0.0) {
        return Err(cv_epr::Error::EmptyDomain);
    }
    let axis = Axis::linear(-extent, extent, steps).values();
    let mut out = Vec::with_capacity(steps * steps);
    let mut y = vec![0.0; 2 * modes];
    for &v in axis.iter().rev() {
        for &u in &axis {
            y[qx.index()] = u;
            y[qy.index()] = v;
            out.push(wigner_displaced_parity(&spec, &PhasePoint::from_quadratures(&y)?)?.w);
        }
    }
    Ok(out)
}

/// `B(J)` for a patterned branch at fixed `s`, on a linear `J` axis.
pub fn bell_values(branch: &str, s: f64, j_max: f64, steps: usize) -> Result<Vec<f64>, cv_epr::Error> {
    let branch: Branch = branch.parse()?;
    if branch == Branch::General {
        return Err(cv_epr::Error::InvalidParameter("curves are drawn for patterned branches".into()));
    }
    let axis = Axis::linear(0.0, j_max, steps);
    axis.validate()?;
    let obj = Objective::new(branch);
    axis.values().iter().map(|&j| obj.evaluate(&[s, j])).collect()
}

/// Maximum over `J` at fixed `s`, as the JSON report of the maximizer.
pub fn bell_max_report(branch: &str, s: f64) -> Result<String, cv_epr::Error> {
    let branch: Branch = branch.parse()?;
    if branch == Branch::General {
        return Err(cv_epr::Error::InvalidParameter("the demo maximizes patterned branches".into()));
    }
    let dom = [Axis::fixed(s), Axis::geometric(1e-9, 1.0, 200)];
    let rep = maximize_bell(&Objective::new(branch), &dom, &MaximizeOptions::default())?;
    serde_json::to_string(&rep).map_err(|e| cv_epr::Error::Objective(e.to_string()))
}

#[wasm_bindgen]
pub fn wigner_slice(
    family: &str,
    modes: usize,
    param: f64,
    qx: &str,
    qy: &str,
    extent: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    wigner_plane(family, modes, param, qx, qy, extent, steps).map_err(js_err)
}

#[wasm_bindgen]
pub fn bell_curve(branch: &str, s: f64, j_max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    bell_values(branch, s, j_max, steps).map_err(js_err)
}

#[wasm_bindgen]
pub fn bell_max(branch: &str, s: f64) -> Result<String, JsError> {
    bell_max_report(branch, s).map_err(js_err)
}
