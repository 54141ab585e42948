//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string; failures are thrown as JS errors
//! carrying the message.

use fibsnow_core::crofton::{
    bootstrap_entropy, entropy_bound, estimate_crossings, BOOTSTRAP_RESAMPLES,
};
use fibsnow_core::fractal::{
    box_count_series, estimate_dimension, max_admissible_k, normalize_snowflake,
    theoretical_dimension,
};
use fibsnow_core::hull::{convex_hull, perimeter};
use fibsnow_core::turtle::{bounding_box, classify, snowflake_path, LatticePath};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Orders above this stall a browser tab.
pub const WEB_ORDER_CAP: u32 = 8;
pub const WEB_SAMPLE_CAP: u64 = 1_000_000;

fn path_for(order: u32) -> Result<LatticePath, String> {
    if order > WEB_ORDER_CAP {
        return Err(format!(
            "order {order} exceeds the demo cap of {WEB_ORDER_CAP}"
        ));
    }
    snowflake_path(order).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Vertices as a flat `[x0, y0, x1, y1, ...]` array plus summary fields.
pub fn snowflake_json(order: u32) -> Result<String, String> {
    let path = path_for(order)?;
    let class = classify(&path);
    let hull = convex_hull(path.vertices()).map_err(|e| e.to_string())?;
    let b = bounding_box(&path);
    let flat: Vec<i64> = path.vertices().iter().flat_map(|p| [p.x, p.y]).collect();
    to_json(&json!({
        "order": order,
        "segments": path.segment_count(),
        "closed": class.closed,
        "non_intersecting": class.non_intersecting,
        "bounding_box_side": b.width(),
        "hull_perimeter": perimeter(&hull),
        "hull": hull,
        "vertices": flat,
    }))
}

pub fn crofton_json(order: u32, samples: u64, seed: u64) -> Result<String, String> {
    if samples > WEB_SAMPLE_CAP {
        return Err(format!("at most {WEB_SAMPLE_CAP} samples in the browser"));
    }
    let path = path_for(order)?;
    let (estimate, hist) = estimate_crossings(&path, samples, seed).map_err(|e| e.to_string())?;
    let entropy = bootstrap_entropy(&hist, BOOTSTRAP_RESAMPLES, seed).map_err(|e| e.to_string())?;
    let hull = convex_hull(path.vertices()).map_err(|e| e.to_string())?;
    let bound =
        entropy_bound(path.segment_count() as f64, perimeter(&hull)).map_err(|e| e.to_string())?;
    let histogram: Vec<_> = hist
        .rows()
        .map(|(j, count, probability)| json!({"j": j, "count": count, "probability": probability}))
        .collect();
    to_json(&json!({
        "order": order,
        "seed": seed,
        "estimate": estimate,
        "entropy": entropy,
        "entropy_bound": bound,
        "degenerate_resamples": hist.degenerate_resamples,
        "missed_lines": hist.missed_lines,
        "histogram": histogram,
    }))
}

/// `k_max = 0` selects the largest admissible scale.
pub fn boxdim_json(order: u32, k_min: u32, k_max: u32) -> Result<String, String> {
    let path = path_for(order)?;
    let normalized = normalize_snowflake(&path, order).map_err(|e| e.to_string())?;
    let k_max = if k_max == 0 {
        max_admissible_k(&normalized)
    } else {
        k_max
    };
    let series = box_count_series(&normalized, k_min, k_max).map_err(|e| e.to_string())?;
    let fit = estimate_dimension(&series).map_err(|e| e.to_string())?;
    to_json(&json!({
        "order": order,
        "series": series,
        "fit": fit,
        "theoretical_dimension": theoretical_dimension(),
    }))
}

#[wasm_bindgen]
pub fn snowflake(order: u32) -> Result<String, JsError> {
    snowflake_json(order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn crofton(order: u32, samples: u32, seed: u32) -> Result<String, JsError> {
    crofton_json(order, samples.into(), seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn boxdim(order: u32, k_min: u32, k_max: u32) -> Result<String, JsError> {
    boxdim_json(order, k_min, k_max).map_err(|e| JsError::new(&e))
}
