//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function returns a JSON string. Failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use serde::Serialize;
use stirzeta::arith::{int, ratio, ten_pow_neg, to_f64};
use stirzeta::series::horizontal_gf_closed;
use stirzeta::stirling::gen_stirling_row;
use stirzeta::zeta::{abs_err_f64, sweep_record};
use wasm_bindgen::prelude::*;

const MAX_N: usize = 400;
const MAX_P: usize = 12;

#[derive(Serialize)]
pub struct RowEntry {
    pub n: usize,
    pub numerator: String,
    pub denominator: String,
    pub value: f64,
    /// `n! |S_n^p|`, which lies in `(0, 1]`.
    pub scaled: f64,
}

/// `S_n^p` for `n = 0..=nmax`.
pub fn row(p: usize, nmax: usize) -> Result<Vec<RowEntry>, String> {
    if nmax > MAX_N || p > MAX_P {
        return Err(format!("limits: n <= {MAX_N}, p <= {MAX_P}"));
    }
    let row = gen_stirling_row(p, nmax).map_err(|e| e.to_string())?;
    let mut fact = int(1);
    Ok(row
        .values()
        .iter()
        .enumerate()
        .map(|(n, s)| {
            if n > 0 {
                fact *= int(n as i64);
            }
            RowEntry {
                n,
                numerator: s.numer().to_string(),
                denominator: s.denom().to_string(),
                value: to_f64(s),
                scaled: to_f64(&(s * &fact)).abs(),
            }
        })
        .collect())
}

#[derive(Serialize)]
pub struct SweepPoint {
    #[serde(rename = "N")]
    pub n: usize,
    pub abs_err: f64,
    pub ln_abs_err: f64,
    /// `N e^{-N}`, the reference decay.
    pub envelope: f64,
}

/// Error of `ζ_N(p)` against the oracle for `N = n_min..=n_max`.
pub fn sweep(p: usize, n_min: usize, n_max: usize) -> Result<Vec<SweepPoint>, String> {
    if n_max > 40 || n_min > n_max {
        return Err("need n_min <= n_max <= 40".into());
    }
    (n_min..=n_max)
        .map(|n| {
            let r = sweep_record(p, n).map_err(|e| e.to_string())?;
            let err = abs_err_f64(&r);
            Ok(SweepPoint {
                n,
                abs_err: err,
                ln_abs_err: err.ln(),
                envelope: n as f64 * (-(n as f64)).exp(),
            })
        })
        .collect()
}

#[derive(Serialize)]
pub struct GfCurve {
    /// `sum_{n<=k} S_n^p t^n` for `k = 0..=nmax`.
    pub partial_sums: Vec<f64>,
    /// Midpoint and radius of `e^{-t} pFp[1..1; 2..2; t]`.
    pub closed: f64,
    pub closed_radius: f64,
}

/// Partial sums of the horizontal generating function at `t = num/den`.
pub fn gf_curve(p: usize, num: u32, den: u32, nmax: usize) -> Result<GfCurve, String> {
    if den == 0 || nmax > MAX_N || p > MAX_P || u64::from(num) > 20 * u64::from(den) {
        return Err("need 0 <= t <= 20, n <= 400, p <= 12".into());
    }
    let t = ratio(num.into(), den.into());
    let row = gen_stirling_row(p, nmax).map_err(|e| e.to_string())?;
    let mut acc = int(0);
    let mut tp = int(1);
    let mut partial_sums = Vec::with_capacity(nmax + 1);
    for s in row.values() {
        acc += s * &tp;
        tp *= &t;
        partial_sums.push(to_f64(&acc));
    }
    let closed = horizontal_gf_closed(p, &t, &ten_pow_neg(20)).map_err(|e| e.to_string())?;
    Ok(GfCurve {
        partial_sums,
        closed: to_f64(closed.center()),
        closed_radius: to_f64(closed.radius()),
    })
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[wasm_bindgen]
pub fn stirling_row_json(p: usize, nmax: usize) -> String {
    to_json(row(p, nmax))
}

#[wasm_bindgen]
pub fn zeta_sweep_json(p: usize, n_min: usize, n_max: usize) -> String {
    to_json(sweep(p, n_min, n_max))
}

#[wasm_bindgen]
pub fn gf_curve_json(p: usize, num: u32, den: u32, nmax: usize) -> String {
    to_json(gf_curve(p, num, den, nmax))
}
