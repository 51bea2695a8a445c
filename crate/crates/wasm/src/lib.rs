//! Browser bindings: fidelity curves, banged convergence and block
//! compilation, each returning JSON or plain text for the demo page.

use serde_json::json;
use wasm_bindgen::prelude::*;

use daqc_core::daqc::{build_bdaqc_schedule, build_sdaqc_schedule, compile_qft_daqc, solve_times, Mode};
use daqc_core::noise::{beta_grid, sweep_beta, NoiseConfig, Protocol};
use daqc_core::qft::build_qft_plan;
use daqc_core::sim::phase_distance;

/// Largest register the page will simulate.
pub const MAX_DEMO_QUBITS: usize = 7;

fn check_size(n: usize) -> Result<(), String> {
    if !(2..=MAX_DEMO_QUBITS).contains(&n) {
        return Err(format!("qubits must be in 2..={MAX_DEMO_QUBITS}"));
    }
    Ok(())
}

/// `[{beta, mean, std}]` for one protocol over `points` angles in `[0, pi]`.
pub fn fidelity_curve_json(
    protocol: &str,
    n: usize,
    points: usize,
    shots: usize,
    error_scale: f64,
    seed: u64,
    delta_t: f64,
) -> Result<String, String> {
    check_size(n)?;
    let protocol: Protocol = protocol.parse().map_err(|e: daqc_core::Error| e.to_string())?;
    let cfg = NoiseConfig {
        error_scale,
        seed,
        delta_t,
        ..NoiseConfig::default()
    };
    let recs = sweep_beta(&[protocol], &[n], &beta_grid(points.clamp(2, 101)), shots.max(1), &cfg)
        .map_err(|e| e.to_string())?;
    let rows: Vec<_> = recs
        .iter()
        .map(|r| json!({"beta": r.beta, "mean": r.mean_fidelity, "std": r.std_fidelity}))
        .collect();
    Ok(serde_json::to_string(&rows).expect("json"))
}

/// Banged-vs-stepwise operator distance for `points` windows spaced
/// logarithmically in `[10^lo, 10^hi]`, plus the fitted log-log slope.
pub fn banged_convergence_json(n: usize, lo: f64, hi: f64, points: usize) -> Result<String, String> {
    check_size(n)?;
    if !(lo < hi) || points < 2 {
        return Err("need lo < hi and at least two points".into());
    }
    let plan = build_qft_plan(n).map_err(|e| e.to_string())?;
    let stepwise = compile_qft_daqc(&plan, Mode::Stepwise, 1.0)
        .and_then(|p| p.matrix())
        .map_err(|e| e.to_string())?;
    let mut pts = Vec::with_capacity(points);
    for i in 0..points {
        let dt = 10f64.powf(lo + (hi - lo) * i as f64 / (points - 1) as f64);
        let banged = compile_qft_daqc(&plan, Mode::Banged, dt)
            .and_then(|p| p.matrix())
            .map_err(|e| e.to_string())?;
        pts.push((dt, phase_distance(&banged, &stepwise).map_err(|e| e.to_string())?));
    }
    let logs: Vec<(f64, f64)> = pts.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let slope = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / logs.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let rows: Vec<_> = pts.iter().map(|(dt, d)| json!({"dt": dt, "distance": d})).collect();
    Ok(serde_json::to_string(&json!({"points": rows, "slope": slope})).expect("json"))
}

/// Schedule dump for block `m` of the `n`-qubit QFT.
pub fn compile_block_text(n: usize, m: usize, mode: &str, delta_t: f64) -> Result<String, String> {
    check_size(n)?;
    let mode: Mode = mode.parse().map_err(|e: daqc_core::Error| e.to_string())?;
    let plan = build_qft_plan(n).map_err(|e| e.to_string())?;
    let block = plan
        .blocks()
        .iter()
        .find(|b| b.index == m)
        .ok_or_else(|| format!("block {m} does not exist; blocks are 1..={}", n - 1))?;
    let solution = solve_times(&block.couplings).map_err(|e| e.to_string())?;
    let schedule = match mode {
        Mode::Stepwise => build_sdaqc_schedule(&solution),
        Mode::Banged => build_bdaqc_schedule(&solution, delta_t),
    }
    .map_err(|e| e.to_string())?;
    Ok(format!(
        "# alpha n m duration ({mode})\n{}# residual {:.3e}\n",
        schedule.dump(),
        solution.residual
    ))
}

#[wasm_bindgen]
pub fn fidelity_curve(
    protocol: &str,
    n: usize,
    points: usize,
    shots: usize,
    error_scale: f64,
    seed: u32,
    delta_t: f64,
) -> Result<String, JsValue> {
    fidelity_curve_json(protocol, n, points, shots, error_scale, seed.into(), delta_t)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn banged_convergence(n: usize, lo: f64, hi: f64, points: usize) -> Result<String, JsValue> {
    banged_convergence_json(n, lo, hi, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compile_block(n: usize, m: usize, mode: &str, delta_t: f64) -> Result<String, JsValue> {
    compile_block_text(n, m, mode, delta_t).map_err(|e| JsValue::from_str(&e))
}
