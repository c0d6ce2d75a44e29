//! Browser bindings: each export returns a JSON string or an error message.

use cominimal::constructions::{Base, FamilySpec};
use cominimal::lattice_lift::{IntMatrix, build_pair_for_automorphism};
use cominimal::sumset::{default_horizon, representations};
use cominimal::window::{IntegerWindow, LatticeWindow};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest window the page may request, to keep the UI responsive.
pub const MAX_WIDTH: i64 = 1 << 16;
pub const MAX_LATTICE_HALF_WIDTH: i64 = 32;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Elements of a family (`S`, `U`, `I:3`, `RS:50`, …) in `[lo, hi]`.
#[wasm_bindgen]
pub fn materialize(family: &str, lo: i64, hi: i64) -> Result<String, String> {
    if hi.saturating_sub(lo) > MAX_WIDTH {
        return Err(format!("window wider than {MAX_WIDTH}"));
    }
    let spec = FamilySpec::parse(family).map_err(err)?;
    let set = spec
        .materialize(IntegerWindow::new(lo, hi).map_err(err)?)
        .map_err(err)?;
    Ok(
        json!({ "family": spec.to_string(), "lo": lo, "hi": hi, "elements": set.elements() })
            .to_string(),
    )
}

/// All ways to write `y` as an element of S (or U) plus a power of two (or a signed one).
#[wasm_bindgen]
pub fn representations_of(y: i64, base: &str) -> Result<String, String> {
    let base = match base {
        "S" | "s" => Base::S,
        "U" | "u" => Base::U,
        other => return Err(format!("base must be S or U, got {other:?}")),
    };
    let r = representations(y, &base.spec(), &base.partner(), default_horizon(y)).map_err(err)?;
    serde_json::to_string(&r).map_err(err)
}

/// `A`, `σ(A)` and the verdict for a 2×2 automorphism on `[-half, half]²`.
#[wasm_bindgen]
pub fn lattice_pair(matrix: &str, half: i64) -> Result<String, String> {
    if !(4..=MAX_LATTICE_HALF_WIDTH).contains(&half) {
        return Err(format!(
            "half-width must lie in 4..={MAX_LATTICE_HALF_WIDTH}"
        ));
    }
    let m: IntMatrix = serde_json::from_str(matrix).map_err(err)?;
    if m.n() != 2 {
        return Err("the page shows plane maps only".into());
    }
    let w = LatticeWindow::cube(2, -half, half).map_err(err)?;
    let r = build_pair_for_automorphism(&m, &w).map_err(err)?;
    Ok(json!({
        "sigma": m.rows(),
        "half": half,
        "a": r.a.points,
        "b": r.b.points,
        "coverage_ok": r.coverage_ok,
        "minimal": r.minimality_ok(),
        "a_missing": r.a_missing,
        "b_missing": r.b_missing,
    })
    .to_string())
}
