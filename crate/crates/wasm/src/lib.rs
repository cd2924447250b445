//! Three operations for the browser page, as JSON-in/JSON-out functions.
//! The `demo_*` functions are plain Rust so they test natively; the
//! exported wrappers only convert errors.

use multicurve::credit_model::{credit_sweep, CreditParams};
use multicurve::market_data::load_quotes;
use multicurve::replication::replication_report;
use multicurve::temporal::{MarketConventions, Tenor};
use multicurve::vol_converter::{black_atm_straddle_premium, implied_vol_from_premium};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// The 30 Dec 2011 snapshot the page starts from.
pub const SNAPSHOT_2011_CSV: &str = include_str!("../../../data/eur_2011-12-30.csv");

#[derive(Debug, Serialize, PartialEq)]
pub struct BasisPoint {
    pub q: f64,
    pub k_star_pct: f64,
    pub fd_pct: f64,
    pub basis_bp: f64,
}

/// Equilibrium FRA rate and its basis over the risk-free forward for
/// `steps + 1` default probabilities in [0, q_max].
pub fn demo_credit_basis(lgd: f64, p_d1: f64, p_d2: f64, tau: f64, q_max: f64, steps: usize) -> Result<Vec<BasisPoint>, String> {
    if steps == 0 || steps > 10_000 {
        return Err(format!("steps must be in 1..=10000, got {steps}"));
    }
    if !(0.0..=1.0).contains(&q_max) {
        return Err(format!("Q max {q_max} outside [0, 1]"));
    }
    CreditParams::from_lgd(lgd, q_max).map_err(|e| e.to_string())?;
    let qs: Vec<f64> = (0..=steps).map(|i| q_max * i as f64 / steps as f64).collect();
    let rows = credit_sweep(&[lgd], &qs, &[(p_d1, p_d2, tau)]).map_err(|e| e.to_string())?;
    Ok(rows
        .into_iter()
        .filter(|r| r.basis.is_finite())
        .map(|r| BasisPoint { q: r.q, k_star_pct: r.k_star * 100.0, fd_pct: r.f_d * 100.0, basis_bp: r.basis * 1e4 })
        .collect())
}

#[derive(Debug, Serialize, PartialEq)]
pub struct Straddle {
    /// Fraction of notional.
    pub premium: f64,
    pub vol_pct: f64,
    /// Premium against vol from 1% to 120%, for the chart.
    pub curve: Vec<(f64, f64)>,
}

fn straddle_curve(forward: f64, expiry: f64, annuity: f64) -> Vec<(f64, f64)> {
    (1..=120).map(|v| (v as f64, black_atm_straddle_premium(forward, v as f64 / 100.0, expiry, annuity))).collect()
}

fn check_straddle_inputs(forward_pct: f64, expiry: f64, annuity: f64) -> Result<(), String> {
    if !(forward_pct > 0.0 && expiry > 0.0 && annuity > 0.0) {
        return Err("forward, expiry and annuity must be positive".into());
    }
    Ok(())
}

/// ATM straddle premium from a vol.
pub fn demo_straddle_premium(forward_pct: f64, vol_pct: f64, expiry: f64, annuity: f64) -> Result<Straddle, String> {
    check_straddle_inputs(forward_pct, expiry, annuity)?;
    if !(vol_pct >= 0.0) {
        return Err(format!("vol {vol_pct}% must be >= 0"));
    }
    let f = forward_pct / 100.0;
    Ok(Straddle {
        premium: black_atm_straddle_premium(f, vol_pct / 100.0, expiry, annuity),
        vol_pct,
        curve: straddle_curve(f, expiry, annuity),
    })
}

/// Implied vol from an ATM straddle premium.
pub fn demo_implied_vol(premium: f64, forward_pct: f64, expiry: f64, annuity: f64) -> Result<Straddle, String> {
    check_straddle_inputs(forward_pct, expiry, annuity)?;
    let f = forward_pct / 100.0;
    let vol = implied_vol_from_premium(premium, f, expiry, annuity).map_err(|e| e.to_string())?;
    Ok(Straddle { premium, vol_pct: vol * 100.0, curve: straddle_curve(f, expiry, annuity) })
}

#[derive(Debug, Serialize, PartialEq)]
pub struct ReplicaRow {
    pub key: String,
    pub tenor: String,
    pub quote_pct: f64,
    pub replica_pct: f64,
    pub diff_bp: f64,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct Replication {
    pub rows: Vec<ReplicaRow>,
    pub errors: Vec<String>,
}

fn tenor_label(t: Tenor) -> String {
    match t.in_months() {
        _ if t.is_overnight() => "ON".into(),
        Some(m) => format!("{m}M"),
        None => t.to_string(),
    }
}

/// FRA replication on quote CSV text (`kind,key,value,tenor,asof`).
pub fn demo_replicate(csv_text: &str) -> Result<Replication, String> {
    let q = load_quotes(csv_text.as_bytes()).map_err(|e| e.to_string())?;
    let report = replication_report(&q, &MarketConventions::eur());
    Ok(Replication {
        rows: report
            .rows
            .iter()
            .map(|r| ReplicaRow {
                key: r.key.clone(),
                tenor: tenor_label(r.tenor),
                quote_pct: r.quote * 100.0,
                replica_pct: r.replica * 100.0,
                diff_bp: r.diff_bps,
            })
            .collect(),
        errors: report.errors.iter().map(|(k, t, e)| format!("{k} ({}): {e}", tenor_label(*t))).collect(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn credit_basis(lgd: f64, p_d1: f64, p_d2: f64, tau: f64, q_max: f64, steps: usize) -> Result<String, JsError> {
    to_js(demo_credit_basis(lgd, p_d1, p_d2, tau, q_max, steps))
}

#[wasm_bindgen]
pub fn straddle_premium(forward_pct: f64, vol_pct: f64, expiry: f64, annuity: f64) -> Result<String, JsError> {
    to_js(demo_straddle_premium(forward_pct, vol_pct, expiry, annuity))
}

#[wasm_bindgen]
pub fn implied_vol(premium: f64, forward_pct: f64, expiry: f64, annuity: f64) -> Result<String, JsError> {
    to_js(demo_implied_vol(premium, forward_pct, expiry, annuity))
}

#[wasm_bindgen]
pub fn replicate(csv_text: &str) -> Result<String, JsError> {
    to_js(demo_replicate(csv_text))
}

#[wasm_bindgen]
pub fn snapshot_csv() -> String {
    SNAPSHOT_2011_CSV.to_string()
}
