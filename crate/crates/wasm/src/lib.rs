//! wasm-bindgen surface for the browser demo. Three operations: generate a
//! seeded instance, solve it with a chosen algorithm, and inspect the
//! coverage-approximation pipeline stage by stage. All payloads are JSON
//! strings; see `demo` for the target-independent implementations.

pub mod demo;

use wasm_bindgen::prelude::*;

fn to_js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Returns a canonical instance file for the requested family and seed.
#[wasm_bindgen]
pub fn generate_instance(
    family: &str,
    nr: usize,
    nb: usize,
    max_red_degree: usize,
    k: usize,
    seed: u64,
    d_free: Option<usize>,
) -> Result<String, JsValue> {
    to_js(demo::generate(
        family,
        nr,
        nb,
        max_red_degree,
        k,
        seed,
        d_free,
    ))
}

/// Solves an instance file with `brute`, `exact-t`, `epas` or `pas` and
/// returns a JSON result with the verdict, the chosen vertices and the
/// covered blue vertices.
#[wasm_bindgen]
pub fn solve_instance(
    instance_json: &str,
    algo: &str,
    epsilon: &str,
    d: usize,
    seed: u64,
    exhaustive: bool,
) -> Result<String, JsValue> {
    to_js(demo::solve(
        instance_json,
        algo,
        epsilon,
        d,
        seed,
        exhaustive,
    ))
}

/// Reports the stages of the coverage-approximation pipeline for the winning
/// separation coloring: conflict edges, purple/green split, surviving
/// components, surrogate weights and the selected tree.
#[wasm_bindgen]
pub fn epas_pipeline(instance_json: &str, epsilon: &str, d: usize) -> Result<String, JsValue> {
    to_js(demo::pipeline(instance_json, epsilon, d))
}
