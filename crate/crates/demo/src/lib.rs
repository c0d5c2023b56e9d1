//! Browser bindings. Every export returns a JSON string; the page in `www/` draws it.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use schur_core::bch::{schur_unitary_bch, schur_unitary_bch_highdim};
use schur_core::combinat::{enumerate_gt, enumerate_partitions, enumerate_syt, kostka, Composition, Partition};
use schur_core::krovi::{schur_unitary_krovi, v_block};
use schur_core::recoupling::{f_left, f_right};
use schur_core::schur_basis::SchurIndex;
use schur_core::symrep::string_of_index;

/// Largest dimension the page will draw.
pub const MAX_DIM: usize = 256;

fn list(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| format!("bad number {t:?}"))).collect()
}

fn partition(s: &str) -> Result<Partition, String> {
    Partition::new(list(s)?).map_err(|e| e.to_string())
}

/// The full transform as a dense real matrix with row and column labels.
pub fn transform_value(method: &str, n: usize, d: usize) -> Result<Value, String> {
    let u = match method {
        "krovi" => schur_unitary_krovi(n, d, MAX_DIM),
        "bch" => schur_unitary_bch(n, d, MAX_DIM),
        "bch-highdim" => schur_unitary_bch_highdim(n, d, MAX_DIM),
        other => return Err(format!("unknown method {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let index = SchurIndex::new(n, d).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = (0..index.dim())
        .map(|f| {
            let (k, s, m) = index.decode(f);
            let sec = &index.sectors()[k];
            json!({
                "shape": sec.shape.parts(),
                "tableau": sec.tableaux[s].filling(),
                "pattern": sec.patterns[m].rows(),
            })
        })
        .collect();
    let cols: Vec<String> = (0..index.dim())
        .map(|c| string_of_index(c, n, d).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    let dense = u.to_dense();
    let values: Vec<Vec<f64>> = (0..dense.nrows()).map(|r| dense.row(r).iter().map(|z| z.re).collect()).collect();
    Ok(json!({
        "method": u.method.to_string(),
        "n": n,
        "d": d,
        "dim": u.dim(),
        "blocks": u.blocks.len(),
        "unitarity_deviation": u.unitarity_deviation(),
        "rows": rows,
        "columns": cols,
        "values": values,
    }))
}

/// The isometry block `V_{λ,μ}` and its Gram matrix deviation from the identity.
pub fn isometry_value(lambda: &str, mu: &str) -> Result<Value, String> {
    let lambda = partition(lambda)?;
    let mu = Composition::new(list(mu)?).map_err(|e| e.to_string())?;
    if lambda.size() != mu.size() {
        return Err(format!("{lambda} and μ have different sizes"));
    }
    let vb = v_block(&lambda, &mu).map_err(|e| e.to_string())?;
    let gram = vb.values.transpose() * &vb.values;
    let dev = (0..gram.nrows())
        .flat_map(|i| (0..gram.ncols()).map(move |j| (i, j)))
        .map(|(i, j)| (gram[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    let values: Vec<Vec<f64>> = (0..vb.values.nrows()).map(|r| vb.values.row(r).iter().copied().collect()).collect();
    Ok(json!({
        "lambda": lambda.parts(),
        "mu": mu.parts(),
        "tableaux": enumerate_syt(&lambda).iter().map(|t| t.filling()).collect::<Vec<_>>(),
        "patterns": vb.columns.iter().map(|m| m.rows()).collect::<Vec<_>>(),
        "values": values,
        "isometry_deviation": dev,
    }))
}

/// One-row F-symbols for `λ ⊂ ν`, both sides.
pub fn fsymbols_value(lambda: &str, nu: &str) -> Result<Value, String> {
    let lambda = partition(lambda)?;
    let nu = partition(nu)?;
    let k = nu.size().checked_sub(lambda.size()).filter(|&k| k > 0).ok_or("ν must be larger than λ")?;
    let mut left = Vec::new();
    for a in schur_core::combinat::addable_rows(&lambda, nu.len()) {
        left.push(json!({ "row": a, "value": f_left(k, &lambda, &nu, a).map_err(|e| e.to_string())? }));
    }
    let mut right = Vec::new();
    for r in schur_core::combinat::removable_rows(&nu) {
        right.push(json!({ "row": r, "value": f_right(k, &lambda, &nu, r).map_err(|e| e.to_string())? }));
    }
    Ok(json!({ "k": k, "left": left, "right": right }))
}

/// Tableaux, patterns and Kostka numbers for a shape.
pub fn shape_value(lambda: &str, d: usize) -> Result<Value, String> {
    let lambda = partition(lambda)?;
    let tabs = enumerate_syt(&lambda);
    let pats = if lambda.len() <= d { enumerate_gt(&lambda, d).map_err(|e| e.to_string())? } else { Vec::new() };
    let n = lambda.size();
    let kostka_row: Vec<Value> = enumerate_partitions(n, n)
        .iter()
        .map(|w| json!({ "weight": w.parts(), "value": kostka(&lambda, w.parts()) }))
        .collect();
    Ok(json!({
        "lambda": lambda.parts(),
        "d": d,
        "tableaux": tabs.iter().take(200).map(|t| t.filling()).collect::<Vec<_>>(),
        "syt_count": tabs.len(),
        "patterns": pats.iter().take(200).map(|m| m.rows()).collect::<Vec<_>>(),
        "gt_count": pats.len(),
        "kostka": kostka_row,
    }))
}

fn export(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transform(method: &str, n: usize, d: usize) -> Result<String, JsError> {
    export(transform_value(method, n, d))
}

#[wasm_bindgen]
pub fn isometry(lambda: &str, mu: &str) -> Result<String, JsError> {
    export(isometry_value(lambda, mu))
}

#[wasm_bindgen]
pub fn fsymbols(lambda: &str, nu: &str) -> Result<String, JsError> {
    export(fsymbols_value(lambda, nu))
}

#[wasm_bindgen]
pub fn shape(lambda: &str, d: usize) -> Result<String, JsError> {
    export(shape_value(lambda, d))
}
