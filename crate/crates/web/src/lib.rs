//! Browser bindings. Each export takes and returns JSON strings; the plain
//! functions are testable natively and the `#[wasm_bindgen]` wrappers only
//! convert errors.

use oco_core::experiment::{certify_config, parse_config, run_experiment};
use oco_core::geometry::ReferenceFunction;
use oco_core::Vector;
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest heatmap side accepted, in cells.
pub const MAX_RESOLUTION: usize = 400;

const PRESETS: [(&str, &str); 6] = [
    (
        "ftrl_sqrt",
        include_str!("../../cli/scenarios/ftrl_quartic.json"),
    ),
    (
        "ftl_log",
        include_str!("../../cli/scenarios/ftl_power.json"),
    ),
    (
        "dsomd_entropy",
        include_str!("../../cli/scenarios/dsomd_entropy.json"),
    ),
    (
        "omd_log",
        include_str!("../../cli/scenarios/omd_power.json"),
    ),
    ("rda_l1", include_str!("../../cli/scenarios/rda_l1.json")),
    (
        "composite_dsomd",
        include_str!("../../cli/scenarios/composite_dsomd_l1.json"),
    ),
];

/// `{name: config}` for the bundled scenarios.
pub fn preset_configs() -> String {
    let map: serde_json::Map<String, serde_json::Value> = PRESETS
        .iter()
        .map(|(name, text)| {
            let value = serde_json::from_str(text).expect("bundled preset is valid JSON");
            (name.to_string(), value)
        })
        .collect();
    serde_json::Value::Object(map).to_string()
}

/// Runs a config; returns `{summary, warnings, csv}`.
pub fn simulate_json(config: &str) -> Result<String, String> {
    let parsed = parse_config(config).map_err(|e| e.to_string())?;
    let result = run_experiment(&parsed);
    Ok(json!({
        "summary": result.summary,
        "warnings": parsed.warnings,
        "csv": result.csv(),
    })
    .to_string())
}

/// Samples the stated constants against the config's losses.
pub fn certify_json(config: &str) -> Result<String, String> {
    let parsed = parse_config(config).map_err(|e| e.to_string())?;
    let report = certify_config(&parsed.config).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Heatmap {
    resolution: usize,
    lo: f64,
    hi: f64,
    /// Row-major, `y` ascending; `null` where the divergence is undefined.
    values: Vec<Option<f64>>,
    min: f64,
    max: f64,
}

/// `D(x, anchor)` over a `resolution × resolution` grid on `[lo, hi]²`.
pub fn divergence_grid_json(
    reference: &str,
    anchor_x: f64,
    anchor_y: f64,
    lo: f64,
    hi: f64,
    resolution: usize,
) -> Result<String, String> {
    let reference: ReferenceFunction =
        serde_json::from_str(reference).map_err(|e| format!("reference: {e}"))?;
    reference.validate().map_err(|e| e.to_string())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need lo < hi, got [{lo}, {hi}]"));
    }
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        return Err(format!("resolution must be in 2..={MAX_RESOLUTION}"));
    }
    let anchor = Vector::from(vec![anchor_x, anchor_y]);
    let step = (hi - lo) / (resolution - 1) as f64;
    let mut values = Vec::with_capacity(resolution * resolution);
    let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in 0..resolution {
        for i in 0..resolution {
            let x = Vector::from(vec![lo + i as f64 * step, lo + j as f64 * step]);
            let d = reference
                .bregman_divergence(&x, &anchor)
                .ok()
                .filter(|d| d.is_finite());
            if let Some(d) = d {
                min = min.min(d);
                max = max.max(d);
            }
            values.push(d);
        }
    }
    if values.iter().all(Option::is_none) {
        return Err("the divergence is undefined everywhere on this grid".into());
    }
    serde_json::to_string(&Heatmap {
        resolution,
        lo,
        hi,
        values,
        min,
        max,
    })
    .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn presets() -> String {
    preset_configs()
}

#[wasm_bindgen]
pub fn simulate(config: &str) -> Result<String, JsError> {
    simulate_json(config).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn certify(config: &str) -> Result<String, JsError> {
    certify_json(config).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn divergence_grid(
    reference: &str,
    anchor_x: f64,
    anchor_y: f64,
    lo: f64,
    hi: f64,
    resolution: usize,
) -> Result<String, JsError> {
    divergence_grid_json(reference, anchor_x, anchor_y, lo, hi, resolution)
        .map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_as_configs() {
        let all: serde_json::Value = serde_json::from_str(&preset_configs()).unwrap();
        for (name, cfg) in all.as_object().unwrap() {
            assert!(parse_config(&cfg.to_string()).is_ok(), "{name}");
        }
    }

    #[test]
    fn simulate_reports_the_bound() {
        let cfg = PRESETS[2]
            .1
            .replace("\"horizon\": 10000", "\"horizon\": 200");
        let out: serde_json::Value = serde_json::from_str(&simulate_json(&cfg).unwrap()).unwrap();
        assert_eq!(out["summary"]["all_satisfied"], true);
        assert_eq!(out["csv"].as_str().unwrap().lines().count(), 201);
    }

    #[test]
    fn simulate_rejects_bad_json() {
        assert!(simulate_json("{").is_err());
    }

    #[test]
    fn squared_l2_heatmap_is_half_the_squared_distance() {
        let out = divergence_grid_json(r#"{"kind":"squared_l2"}"#, 0.0, 0.0, -1.0, 1.0, 3).unwrap();
        let map: serde_json::Value = serde_json::from_str(&out).unwrap();
        let v: Vec<f64> = map["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        assert_eq!(v, vec![1.0, 0.5, 1.0, 0.5, 0.0, 0.5, 1.0, 0.5, 1.0]);
    }

    #[test]
    fn entropy_heatmap_marks_the_negative_orthant_undefined() {
        let out =
            divergence_grid_json(r#"{"kind":"neg_entropy"}"#, 0.5, 0.5, -1.0, 1.0, 5).unwrap();
        let map: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(map["values"][0].is_null());
        assert!(map["values"][24].as_f64().unwrap() >= 0.0);
    }

    #[test]
    fn certify_runs_on_a_preset() {
        let cfg = PRESETS[0]
            .1
            .replace("\"seed\": 1", "\"seed\": 1, \"certify_samples\": 500");
        let out: serde_json::Value = serde_json::from_str(&certify_json(&cfg).unwrap()).unwrap();
        assert_eq!(out["all_valid"], true);
    }
}
