//! wasm-bindgen bindings for the browser demo. Each export returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use schur_core::cohom::MAX_GROUP_ORDER;
use schur_core::ffield::{AdditiveCharacter, FiniteField, Fq};
use schur_core::grouporacle::{orbit_census, Congruence, RingKind};
use schur_core::matalg::{Poly, RegularMatrix, UnitGroup};
use schur_core::schurmult::{conjecture_sweep, SweepOptions};

fn field(q: u32) -> Result<FiniteField, String> {
    let k = FiniteField::with_order(q as u64).map_err(|e| e.to_string())?;
    if k.p() == 2 {
        return Err("q must be odd".into());
    }
    Ok(k)
}

/// "2:0,1:1" is read as Jordan blocks size:eigenvalue, anything else as a
/// characteristic polynomial.
pub fn parse_beta(k: &FiniteField, s: &str) -> Result<RegularMatrix, String> {
    let s = s.trim();
    if s.contains(':') {
        let blocks = s
            .split(',')
            .map(|part| {
                let (m, a) = part.split_once(':').ok_or_else(|| format!("bad block '{part}'"))?;
                let m: usize = m.trim().parse().map_err(|_| format!("bad block size '{m}'"))?;
                Ok((k.parse(a.trim()).map_err(|e| e.to_string())?, m))
            })
            .collect::<Result<Vec<(Fq, usize)>, String>>()?;
        RegularMatrix::jordan(k, &blocks).map_err(|e| e.to_string())
    } else {
        let p = Poly::parse(s, k).map_err(|e| e.to_string())?;
        RegularMatrix::companion(k, &p).map_err(|e| e.to_string())
    }
}

pub fn weil_table_value(q: u32) -> Result<Value, String> {
    let k = field(q)?;
    let chi = AdditiveCharacter::canonical(&k);
    let rows = k
        .units()
        .map(|a| {
            let g = chi.weil_constant_scalar(a).map_err(|e| e.to_string())?;
            Ok(json!({"a": k.format(a), "square": k.is_square(a), "gamma": g.to_string()}))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({"q": q, "gamma_one": chi.gamma_one().to_string(), "table": rows}))
}

pub fn check_value(q: u32, beta: &str) -> Result<Value, String> {
    let k = field(q)?;
    let b = parse_beta(&k, beta)?;
    let chi = AdditiveCharacter::canonical(&k);
    let opts = SweepOptions { unit_bound: MAX_GROUP_ORDER, ..SweepOptions::default() };
    let r = conjecture_sweep(&b, &chi, &opts).map_err(|e| e.to_string())?;
    Ok(json!({
        "beta": b.descriptor(),
        "unit_count": r.unit_count,
        "c_t_trivial": r.c_t_trivial,
        "rho_count": r.rho_count,
        "trivial_count": r.trivial_count,
        "counterexamples": r.counterexamples,
    }))
}

pub fn orbits_value(q: u32, beta: &str) -> Result<Value, String> {
    let k = field(q)?;
    if q > 5 {
        return Err("orbit census is limited to q ≤ 5 in the browser".into());
    }
    let b = parse_beta(&k, beta)?;
    if b.jordan_data().is_none() || b.n() > 2 {
        return Err("orbit census needs a 2×2 matrix in Jordan form".into());
    }
    let cong = Congruence::new(RingKind::Unequal, &b).map_err(|e| e.to_string())?;
    let units = UnitGroup::new(b.algebra(), MAX_GROUP_ORDER).map_err(|e| e.to_string())?;
    let c = orbit_census(&cong, &units, 0).map_err(|e| e.to_string())?;
    serde_json::to_value(&c).map_err(|e| e.to_string())
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weil_table(q: u32) -> Result<String, JsError> {
    to_js(weil_table_value(q))
}

#[wasm_bindgen]
pub fn check_conjecture(q: u32, beta: &str) -> Result<String, JsError> {
    to_js(check_value(q, beta))
}

#[wasm_bindgen]
pub fn orbits(q: u32, beta: &str) -> Result<String, JsError> {
    to_js(orbits_value(q, beta))
}
