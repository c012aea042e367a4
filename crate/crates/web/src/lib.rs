//! Browser bindings. Every export returns JSON text or an error message so
//! the page needs nothing beyond `JSON.parse`.

use ergogap::bounds::{self, fixed_operator_witness, witness, OperatorFamily};
use ergogap::ergotropy::ergotropic_gap;
use ergogap::io::{self, SweepGrid};
use ergogap::ladder::slot_table;
use ergogap::{Family, FamilySpec, LadderSpec};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Grids longer than this are refused to keep the page responsive.
pub const MAX_SWEEP_STEPS: usize = 2000;

fn family_spec(family: &str, d: usize, p: f64, seed: u64) -> Result<FamilySpec, String> {
    let family: Family = family.parse().map_err(|e: ergogap::Error| e.to_string())?;
    Ok(FamilySpec::new(family).with_d(d).with_p(p).with_seed(seed))
}

/// Witness verdict plus the ergotropy breakdown for one state. Qubit
/// states also carry the two fixed-operator checks.
#[wasm_bindgen]
pub fn witness_family(family: &str, d: usize, p: f64, seed: u64, tol: f64) -> Result<String, String> {
    let rho = family_spec(family, d, p, seed)?.build().map_err(|e| e.to_string())?;
    let spec = LadderSpec::unit(d).map_err(|e| e.to_string())?;
    let verdict = witness(&rho, &spec, tol).map_err(|e| e.to_string())?;
    let report = ergotropic_gap(&rho, &spec).map_err(|e| e.to_string())?;
    let operators = if d == 2 {
        let ghz = fixed_operator_witness(&rho, OperatorFamily::GhzType).map_err(|e| e.to_string())?;
        let w = fixed_operator_witness(&rho, OperatorFamily::WType).map_err(|e| e.to_string())?;
        json!({ "ghz_type": ghz, "w_type": w })
    } else {
        serde_json::Value::Null
    };
    Ok(json!({ "verdict": verdict, "report": report, "fixed_operators": operators }).to_string())
}

/// Sweep rows for a one-parameter family over `steps + 1` points.
#[wasm_bindgen]
pub fn sweep_family(family: &str, d: usize, p_start: f64, p_end: f64, steps: usize, tol: f64) -> Result<String, String> {
    if steps > MAX_SWEEP_STEPS {
        return Err(format!("at most {MAX_SWEEP_STEPS} steps"));
    }
    let spec = family_spec(family, d, 0.0, 0)?;
    let grid = SweepGrid::new(p_start, p_end, steps).map_err(|e| e.to_string())?;
    let rows = io::sweep(&spec, &grid, tol).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

/// `M(d)` and the level structure of the `d×d×d` ladder.
#[wasm_bindgen]
pub fn bounds_for(d: usize) -> Result<String, String> {
    if d > 12 {
        return Err("d above 12 is not supported in the browser".into());
    }
    let spec = LadderSpec::unit(d).map_err(|e| e.to_string())?;
    let table = slot_table(&spec);
    Ok(json!({
        "d": d,
        "m_d": bounds::bound_m(d).map_err(|e| e.to_string())?,
        "m_d_polynomial": bounds::bound_m_polynomial(d),
        "degeneracies": table.degeneracies(),
        "level_starts": table.level_starts(),
    })
    .to_string())
}

/// Family names accepted by the other exports, with whether they take `p`.
#[wasm_bindgen]
pub fn families() -> String {
    let list: Vec<_> = Family::ALL
        .iter()
        .map(|f| json!({ "name": f.name(), "uses_p": f.uses_p(), "qubits_only": f.qubits_only() }))
        .collect();
    serde_json::Value::from(list).to_string()
}
