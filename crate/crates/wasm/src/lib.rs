//! WebAssembly bindings for the browser demo. Results cross the boundary as
//! JSON strings or byte arrays.

// negated comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ops;

use wasm_bindgen::prelude::*;

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// JSON array of ray samples `{t, re, im, value, tail_bound, terms, flag}`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn ray_trace(
    x: f64,
    shift: u32,
    c: f64,
    alpha: f64,
    lambda: f64,
    theta: f64,
    t_max: f64,
    t_step: f64,
    tol: f64,
) -> Result<String, JsError> {
    ops::ray(x, shift, c, alpha, lambda, theta, t_max, t_step, tol)
        .map(|v| to_json(&v))
        .map_err(|e| JsError::new(&e))
}

/// JSON array of `{x, roots}`.
#[wasm_bindgen]
pub fn meander_curve(n: usize, x_min: f64, x_max: f64, steps: usize) -> Result<String, JsError> {
    ops::curve(n, x_min, x_max, steps)
        .map(|v| to_json(&v))
        .map_err(|e| JsError::new(&e))
}

/// One byte per pixel: 0 inside the residual set, 1 removed, 2 undecided.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn residual_image(
    meander: bool,
    c: f64,
    alpha: f64,
    lambda: f64,
    width: usize,
    height: usize,
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
    cutoff: usize,
) -> Result<Vec<u8>, JsError> {
    ops::residual_image(
        meander,
        c,
        alpha,
        lambda,
        width,
        height,
        (re_min, re_max),
        (im_min, im_max),
        cutoff,
    )
    .map_err(|e| JsError::new(&e))
}
