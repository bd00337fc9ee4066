//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string; the plain functions underneath are
//! what the native tests exercise.

use defgroups::deficiency::{certify_with, CertifyOptions};
use defgroups::homology::h2_from_table_with_ceiling;
use defgroups::presentations::{parse_presentation, render_presentation, RenderFormat};
use defgroups::{
    construct, enumerate, figure_one_table, h1_from_presentation, multiplication_table, CertifyMode,
    DeficiencyCertificate, Strategy, DEFAULT_H2_ORDER_CEILING,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive: enumeration of anything larger is refused.
pub const BROWSER_MAX_COSETS: usize = 20_000;

fn certificate(c: &DeficiencyCertificate) -> Value {
    json!({
        "verdict": c.to_string(),
        "lower_bound": c.lower_bound,
        "upper_bound": c.upper_bound,
        "certified": c.certified_value.is_some(),
        "h1": c.h1.as_ref().map(ToString::to_string),
        "h2": c.h2.as_ref().map(ToString::to_string),
    })
}

pub fn construct_report(p: u64, n: u64) -> Result<Value, String> {
    let g = construct(p, n).map_err(|e| e.to_string())?;
    let counts = *g.pedigree().expect("constructed presentations carry counts");
    let cert = certify_with(&g, CertifyMode::Kunneth, &CertifyOptions::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "group": counts.group_name(),
        "r": counts.r,
        "s": counts.s,
        "t": counts.t,
        "generators": g.num_generators(),
        "relators": g.num_relators(),
        "presentation": render_presentation(&g, RenderFormat::Native),
        "gap": render_presentation(&g, RenderFormat::Gap),
        "certificate": certificate(&cert),
    }))
}

pub fn table_report(p: u64, max_n: u64) -> Result<Value, String> {
    if !defgroups::presentations::is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let rows: Vec<Value> = figure_one_table(p, max_n.min(500))
        .into_iter()
        .map(|row| json!({ "n": row.n, "r": row.counts.r, "s": row.counts.s, "t": row.counts.t, "group": row.name }))
        .collect();
    Ok(Value::Array(rows))
}

/// Order, H1 and, for small groups, H2 and a deficiency certificate.
pub fn analyze_report(text: &str) -> Result<Value, String> {
    let g = parse_presentation(text).map_err(|e| e.to_string())?;
    let h1 = h1_from_presentation(&g);
    let mut out = json!({
        "presentation": render_presentation(&g, RenderFormat::Native),
        "deficiency": g.deficiency(),
        "h1": h1.to_string(),
    });
    let table = match enumerate(&g, BROWSER_MAX_COSETS, Strategy::Hlt) {
        Ok(t) => t,
        Err(e) => {
            out["order"] = Value::Null;
            out["note"] = json!(e.to_string());
            return Ok(out);
        }
    };
    let order = table.num_cosets();
    out["order"] = json!(order);
    if order > DEFAULT_H2_ORDER_CEILING {
        out["note"] = json!(format!("H2 is only computed for orders up to {DEFAULT_H2_ORDER_CEILING}"));
        return Ok(out);
    }
    let gt = multiplication_table(&table).map_err(|e| e.to_string())?;
    let h2 = h2_from_table_with_ceiling(&gt, DEFAULT_H2_ORDER_CEILING).map_err(|e| e.to_string())?;
    out["h2"] = json!(h2.to_string());
    let opts = CertifyOptions { max_cosets: BROWSER_MAX_COSETS, ..Default::default() };
    let cert = certify_with(&g, CertifyMode::Table, &opts).map_err(|e| e.to_string())?;
    out["certificate"] = certificate(&cert);
    Ok(out)
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = constructGroup)]
pub fn construct_group(p: u32, n: u32) -> Result<String, JsError> {
    to_js(construct_report(p.into(), n.into()))
}

#[wasm_bindgen(js_name = figureTable)]
pub fn figure_table(p: u32, max_n: u32) -> Result<String, JsError> {
    to_js(table_report(p.into(), max_n.into()))
}

#[wasm_bindgen(js_name = analyzePresentation)]
pub fn analyze_presentation(text: &str) -> Result<String, JsError> {
    to_js(analyze_report(text))
}
