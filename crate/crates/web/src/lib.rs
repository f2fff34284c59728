//! Browser bindings: each call takes a JSON request and returns the report
//! as JSON together with its text rendering.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ribbon_core::ff_linalg::PrimeField;
use ribbon_core::green::GreenOptions;
use ribbon_core::session::{
    betti_report, default_conormal, green_session, strata_report, CurveSpec, Report, StrataOptions,
};
use serde::Deserialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    #[serde(default = "default_modulus")]
    pub modulus: u64,
    #[serde(default)]
    pub seed: u64,
    pub curve: CurveSpec,
    #[serde(default)]
    pub conormal: Option<i64>,
    #[serde(default)]
    pub sweep: Option<usize>,
    #[serde(default)]
    pub b_max: Option<usize>,
}

fn default_modulus() -> u64 {
    101
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Betti,
    Green,
    Histogram,
}

/// Runs one operation; the output is `{"report": .., "text": ..}`.
pub fn run(op: Operation, request: &str) -> Result<String, String> {
    let req: Request = serde_json::from_str(request).map_err(|e| e.to_string())?;
    let field = PrimeField::new(req.modulus).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let model = req.curve.build(field, &mut rng).map_err(|e| e.to_string())?;
    let t = match req.conormal {
        Some(t) => t,
        None => default_conormal(&model).map_err(|e| e.to_string())?,
    };
    let report = match op {
        Operation::Betti => betti_report(&model, t).map(Report::Betti),
        Operation::Green => green_session(&model, t, GreenOptions::default()).map(Report::Green),
        Operation::Histogram => {
            let defaults = StrataOptions::default();
            let opts = StrataOptions {
                b_max: req.b_max.unwrap_or(defaults.b_max),
                sweep: req.sweep.unwrap_or(50),
                ..defaults
            };
            strata_report(&model, t, &opts, &mut rng).map(Report::Strata)
        }
    }
    .map_err(|e| e.to_string())?;
    let out = serde_json::json!({
        "report": serde_json::to_value(&report).map_err(|e| e.to_string())?,
        "text": report.to_text(),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn betti(request: &str) -> Result<String, JsValue> {
    run(Operation::Betti, request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn green(request: &str) -> Result<String, JsValue> {
    run(Operation::Green, request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn blowup_histogram(request: &str) -> Result<String, JsValue> {
    run(Operation::Histogram, request).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_request() {
        let out = run(
            Operation::Betti,
            r#"{"curve": {"family": "hyperelliptic", "genus": 2}, "conormal": -5}"#,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["rcliff"], 2);
        assert!(v["text"].as_str().unwrap().contains("total:"));
    }

    #[test]
    fn histogram_request() {
        let out = run(
            Operation::Histogram,
            r#"{"curve": {"family": "hyperelliptic", "genus": 1}, "conormal": -6, "sweep": 10}"#,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["classes"].as_array().unwrap().len(), 10);
    }

    #[test]
    fn bad_requests_are_reported() {
        assert!(run(Operation::Green, r#"{"curve": {"family": "plane"}}"#).is_err());
        assert!(run(Operation::Betti, r#"{"curve": {"family": "hyperelliptic", "genus": 1}}"#).is_err());
    }
}
