//! Browser bindings for the interactive demo page.
//!
//! Three operations, each returning a JSON string the page plots on a
//! canvas: the alignment-error scaling curve for n singlet copies, the
//! filter success/branch-error profile, and sector weight distributions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use spinframe::alignment::{exact_error, n_copy_error};
use spinframe::asymptotics::{leading_term, Regime};
use spinframe::filter::{conditional_error, design_filter, Branch};
use spinframe::{CoefficientVector, Spin};

#[derive(Serialize)]
struct ScalingRow {
    j: f64,
    error: f64,
    scaled: f64,
    leading: f64,
}

#[derive(Serialize)]
struct ScalingCurve {
    n: u32,
    scale_label: String,
    rows: Vec<ScalingRow>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Exact error of n singlet copies on a geometric grid of integer spins up
/// to j_max, with the regime-scaled value (n=1: e, n=2: j*e, n=3: 8j^2 e - ln j,
/// n=4: j^2 e) and the corresponding leading constant for overlay.
#[wasm_bindgen]
pub fn error_scaling(n: u32, j_max: u32, points: u32) -> Result<String, JsValue> {
    error_scaling_impl(n, j_max, points).map_err(|e| JsValue::from_str(&e))
}

fn error_scaling_impl(n: u32, j_max: u32, points: u32) -> Result<String, String> {
    if !(1..=4).contains(&n) {
        return Err(err("n must be between 1 and 4"));
    }
    let j_max = j_max.clamp(4, 20_000);
    let points = points.clamp(2, 200);
    let (scale_label, regime) = match n {
        1 => ("\u{27e8}d\u{b2}\u{27e9}", Regime::SingleCopy),
        2 => ("j \u{b7} \u{27e8}d\u{b2}\u{27e9}", Regime::TwoCopy),
        3 => (
            "8j\u{b2}\u{27e8}d\u{b2}\u{27e9} \u{2212} ln j",
            Regime::ThreeCopy,
        ),
        _ => ("j\u{b2} \u{b7} \u{27e8}d\u{b2}\u{27e9}", Regime::FourCopy),
    };
    let log_min = (2.0f64).ln();
    let log_max = (j_max as f64).ln();
    let mut js: Vec<u32> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            (log_min + t * (log_max - log_min)).exp().round() as u32
        })
        .collect();
    js.dedup();
    let mut rows = Vec::with_capacity(js.len());
    for j in js {
        let spin = Spin::integer(j);
        let e = n_copy_error(n, spin).map_err(err)?.value;
        let jf = j as f64;
        let scaled = match n {
            1 => e,
            2 => jf * e,
            3 => 8.0 * jf * jf * e - jf.ln(),
            _ => jf * jf * e,
        };
        // the leading constant in the same scaled units
        let leading = match n {
            1 => 4.0 / 3.0,
            2 => 2.0 / 3.0,
            3 => 8.0 * jf * jf * leading_term(regime, None, spin).map_err(err)? - jf.ln(),
            _ => 11.0 * 2f64.ln() / 18.0,
        };
        rows.push(ScalingRow {
            j: jf,
            error: e,
            scaled,
            leading,
        });
    }
    serde_json::to_string(&ScalingCurve {
        n,
        scale_label: scale_label.to_string(),
        rows,
    })
    .map_err(err)
}

#[derive(Serialize)]
struct FilterRow {
    j: f64,
    p_yes: f64,
    /// yes-branch error scaled by j^2 (tends to pi^2/6)
    err_yes_scaled: f64,
    /// no-branch error scaled by j (tends to ~1.189)
    err_no_scaled: f64,
}

/// Filter profile over integer spins j_min..=j_max (geometric subsample of
/// at most `points` values): success probability and scaled branch errors.
#[wasm_bindgen]
pub fn filter_profile(j_min: u32, j_max: u32, points: u32) -> Result<String, JsValue> {
    filter_profile_impl(j_min, j_max, points).map_err(|e| JsValue::from_str(&e))
}

fn filter_profile_impl(j_min: u32, j_max: u32, points: u32) -> Result<String, String> {
    let j_min = j_min.max(1);
    let j_max = j_max.clamp(j_min, 20_000);
    let points = points.clamp(2, 500);
    let log_min = (j_min as f64).ln();
    let log_max = (j_max as f64).ln();
    let mut js: Vec<u32> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            (log_min + t * (log_max - log_min)).exp().round() as u32
        })
        .collect();
    js.dedup();
    let mut rows = Vec::with_capacity(js.len());
    for j in js {
        let design = design_filter(Spin::integer(j)).map_err(err)?;
        let e_yes = conditional_error(&design, Branch::Yes).map_err(err)?.value;
        let e_no = conditional_error(&design, Branch::No).map_err(err)?.value;
        let jf = j as f64;
        rows.push(FilterRow {
            j: jf,
            p_yes: design.p_yes,
            err_yes_scaled: jf * jf * e_yes,
            err_no_scaled: jf * e_no,
        });
    }
    serde_json::to_string(&rows).map_err(err)
}

#[derive(Serialize)]
struct WeightRow {
    k_over_j: f64,
    p_times_j: f64,
}

#[derive(Serialize)]
struct WeightData {
    n: u32,
    j: u32,
    error: f64,
    rows: Vec<WeightRow>,
}

/// Sector weight distribution of n singlet copies at integer spin j, in
/// rescaled units (k/j against p*j), plus the exact error of the state.
#[wasm_bindgen]
pub fn sector_weights(n: u32, j: u32) -> Result<String, JsValue> {
    sector_weights_impl(n, j).map_err(|e| JsValue::from_str(&e))
}

fn sector_weights_impl(n: u32, j: u32) -> Result<String, String> {
    if n == 0 || n > 8 {
        return Err(err("n must be between 1 and 8"));
    }
    let j = j.clamp(1, 2_000);
    let c = CoefficientVector::for_copies(n, Spin::integer(j)).map_err(err)?;
    let error = exact_error(&c).map_err(err)?.value;
    let jf = j as f64;
    let rows = c
        .iter()
        .map(|(tk, ck)| WeightRow {
            k_over_j: tk as f64 / 2.0 / jf,
            p_times_j: ck * ck * jf,
        })
        .collect();
    serde_json::to_string(&WeightData { n, j, error, rows }).map_err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_json_shape() {
        let text = error_scaling_impl(4, 2000, 30).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], 4);
        let rows = v["rows"].as_array().unwrap();
        assert!(rows.len() >= 20);
        let last = rows.last().unwrap();
        // j^2 e near 11 ln2 / 18 at j = 2000
        let scaled = last["scaled"].as_f64().unwrap();
        assert!((scaled - 0.4236).abs() < 0.01, "{scaled}");
    }

    #[test]
    fn scaling_rejects_bad_copy_count() {
        assert!(error_scaling_impl(5, 100, 10).is_err());
    }

    #[test]
    fn filter_json_shape() {
        let text = filter_profile_impl(10, 500, 40).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let rows = v.as_array().unwrap();
        for row in rows {
            let p = row["p_yes"].as_f64().unwrap();
            assert!(p > 0.439 && p < 0.5);
        }
    }

    #[test]
    fn weights_json_shape() {
        let text = sector_weights_impl(4, 100).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 401); // k = 0..4j
        let total: f64 = rows
            .iter()
            .map(|r| r["p_times_j"].as_f64().unwrap() / 100.0)
            .sum();
        assert!((total - 1.0).abs() < 1e-9);
    }
}
