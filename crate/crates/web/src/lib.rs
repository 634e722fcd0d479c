//! Browser bindings for the demo page in `www/`.

use qwalk_core::bounds::{
    cutoff_profile, threshold_c, threshold_d, wreath_threshold, Evaluator, Walk,
};
use qwalk_core::numerics::lambda_moment;
use qwalk_core::structures::{porod_integral, CircleMeasure, FiniteGroup, GroupState};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn js(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn walk(family: &str, n: u32, param: f64, group_order: u32) -> Result<Walk, JsValue> {
    let n = u64::from(n);
    match family {
        "unitary" => Walk::unitary(n, param, CircleMeasure::delta(0.0)),
        "unitary-eval" => Walk::unitary_eval(n, param),
        "wreath" => {
            let g = FiniteGroup::cyclic(group_order as usize).map_err(js)?;
            let psi = GroupState::trivial(&g);
            Walk::wreath(n, param, g, psi)
        }
        other => return Err(js(format!("unknown family `{other}`"))),
    }
    .map_err(js)
}

/// Distance bounds for offsets `c_lo..=c_hi`, as JSON.
///
/// `param` is τ for `unitary` and `wreath` and θ for `unitary-eval`; the
/// unitary walk uses the point mass at angle 0.
#[wasm_bindgen]
pub fn profile(
    family: &str,
    n: u32,
    param: f64,
    group_order: u32,
    c_lo: f64,
    c_hi: f64,
    points: u32,
) -> Result<String, JsValue> {
    let w = walk(family, n, param, group_order)?;
    let points = points.clamp(2, 400);
    let ks: Vec<f64> = (0..points)
        .map(|i| c_lo + (c_hi - c_lo) * f64::from(i) / f64::from(points - 1))
        .map(|c| w.k_from_c(c))
        .filter(|k| *k >= 0.0)
        .collect();
    let hyp = w.hypotheses(ks.last().copied().unwrap_or(0.0));
    let ev = Evaluator::new(w.clone(), w.default_truncation()).map_err(js)?;
    let p = cutoff_profile(&ev, &ks, 1).map_err(js)?;
    Ok(json!({ "profile": p, "hypotheses": hyp }).to_string())
}

/// Thresholds on N for a given τ, as JSON. Missing entries mean τ is out of range.
#[wasm_bindgen]
pub fn thresholds(tau: f64) -> String {
    json!({
        "tau": tau,
        "C": threshold_c(tau).ok(),
        "D": threshold_d(tau).ok(),
        "Qthr": wreath_threshold(tau).ok(),
    })
    .to_string()
}

/// λ-moments of the Porod law: closed form against quadrature, as JSON.
#[wasm_bindgen]
pub fn lambda_moments(n: u32, l_max: u32) -> Result<String, JsValue> {
    let n = u64::from(n);
    let rows = (0..=l_max.min(12))
        .map(|l| {
            let closed = lambda_moment(n, u64::from(l)).map_err(js)?;
            let quad = porod_integral(n, 1024, |x| (1.0 - x.cos()).powi(l as i32));
            Ok(json!({ "l": l, "closed_form": closed, "quadrature": quad }))
        })
        .collect::<Result<Vec<_>, JsValue>>()?;
    Ok(serde_json::Value::Array(rows).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_for_tau_two() {
        let v: serde_json::Value = serde_json::from_str(&thresholds(2.0)).unwrap();
        assert_eq!(v["D"], 8.0);
    }
}
