use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::NoiseConfig;
use super::sampler::{shot_rng, NoiseSampler};
use crate::daqc::{compile_qft_daqc, Mode, QftProgram};
use crate::perturb::Perturbation;
use crate::qft::{beta_state, build_dqc_circuit, build_qft_plan, exact_qft, run_circuit, CircuitOp};
use crate::sim::{fidelity, Statevector};
use crate::{Error, Result};

/// Default number of points on the `[0, pi]` grid of input angles.
pub const DEFAULT_BETA_POINTS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Protocol {
    #[serde(rename = "DQC")]
    Dqc,
    #[serde(rename = "sDAQC")]
    Sdaqc,
    #[serde(rename = "bDAQC")]
    Bdaqc,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [Protocol::Dqc, Protocol::Sdaqc, Protocol::Bdaqc];

    pub fn mode(self) -> Option<Mode> {
        match self {
            Protocol::Dqc => None,
            Protocol::Sdaqc => Some(Mode::Stepwise),
            Protocol::Bdaqc => Some(Mode::Banged),
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Protocol::Dqc => "DQC",
            Protocol::Sdaqc => "sDAQC",
            Protocol::Bdaqc => "bDAQC",
        })
    }
}

impl FromStr for Protocol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dqc" => Ok(Protocol::Dqc),
            "sdaqc" => Ok(Protocol::Sdaqc),
            "bdaqc" => Ok(Protocol::Bdaqc),
            other => Err(Error::Parse(format!("unknown protocol '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Compiled {
    Digital(Vec<CircuitOp>),
    Daqc(QftProgram),
}

/// A QFT protocol compiled once for a register size and reused across
/// shots.
#[derive(Debug, Clone)]
pub struct ProtocolRunner {
    protocol: Protocol,
    n_qubits: usize,
    compiled: Compiled,
}

impl ProtocolRunner {
    /// `delta_t` is only used by the banged protocol.
    pub fn new(protocol: Protocol, n_qubits: usize, delta_t: f64) -> Result<Self> {
        let compiled = match protocol.mode() {
            None => Compiled::Digital(build_dqc_circuit(n_qubits, true)?),
            Some(mode) => {
                let plan = build_qft_plan(n_qubits)?;
                Compiled::Daqc(compile_qft_daqc(&plan, mode, delta_t)?)
            }
        };
        Ok(Self {
            protocol,
            n_qubits,
            compiled,
        })
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Runs the protocol, readout permutation included.
    pub fn run(&self, input: &Statevector, noise: &mut dyn Perturbation) -> Result<Statevector> {
        let mut state = input.clone();
        match &self.compiled {
            Compiled::Digital(ops) => run_circuit(ops, &mut state, noise)?,
            Compiled::Daqc(program) => program.execute(&mut state, noise)?,
        }
        Ok(state)
    }

    pub fn fidelity(
        &self,
        input: &Statevector,
        reference: &Statevector,
        noise: &mut dyn Perturbation,
    ) -> Result<f64> {
        fidelity(&self.run(input, noise)?, reference)
    }
}

/// One noisy execution of `protocol` on `input`, scored against the exact
/// QFT of the same input. Noise is drawn from shot 0 of `config.seed`.
pub fn run_protocol(
    protocol: Protocol,
    n_qubits: usize,
    input: &Statevector,
    config: &NoiseConfig,
    delta_t: f64,
) -> Result<f64> {
    config.validate()?;
    let runner = ProtocolRunner::new(protocol, n_qubits, delta_t)?;
    let mut sampler = NoiseSampler::new(config, shot_rng(config.seed, 0));
    runner.fidelity(input, &exact_qft(input), &mut sampler)
}

/// Mean and spread of the fidelity over a batch of shots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub protocol: Protocol,
    pub n_qubits: usize,
    pub beta: f64,
    pub shots: usize,
    pub seed: u64,
    pub mean_fidelity: f64,
    /// Sample standard deviation (`shots - 1` denominator; 0 for one shot).
    pub std_fidelity: f64,
    pub delta_t: f64,
    pub error_scale: f64,
}

impl ExperimentRecord {
    pub fn standard_error(&self) -> f64 {
        self.std_fidelity / (self.shots as f64).sqrt()
    }
}

fn shot_fidelities(
    runner: &ProtocolRunner,
    input: &Statevector,
    reference: &Statevector,
    shots: usize,
    config: &NoiseConfig,
) -> Result<Vec<f64>> {
    if config.is_noiseless() {
        let f = runner.fidelity(input, reference, &mut crate::perturb::Ideal)?;
        return Ok(vec![f; shots]);
    }
    let shot = |i: usize| {
        let mut sampler = NoiseSampler::new(config, shot_rng(config.seed, i as u64));
        runner.fidelity(input, reference, &mut sampler)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..shots).into_par_iter().map(shot).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..shots).map(shot).collect()
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.iter().all(|v| *v == values[0]) {
        return (values[0], 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn record_for(
    runner: &ProtocolRunner,
    beta: f64,
    shots: usize,
    config: &NoiseConfig,
) -> Result<ExperimentRecord> {
    if shots == 0 {
        return Err(Error::InvalidConfig("shots must be at least 1".into()));
    }
    let input = beta_state(runner.n_qubits(), beta)?;
    let reference = exact_qft(&input);
    let values = shot_fidelities(runner, &input, &reference, shots, config)?;
    let (mean, std) = mean_std(&values);
    Ok(ExperimentRecord {
        protocol: runner.protocol(),
        n_qubits: runner.n_qubits(),
        beta,
        shots,
        seed: config.seed,
        mean_fidelity: mean,
        std_fidelity: std,
        delta_t: config.delta_t,
        error_scale: config.error_scale,
    })
}

/// Monte-Carlo fidelity of one protocol on the input `sin(beta)|W> +
/// cos(beta)|GHZ>`. Shot `i` draws from stream `i` of `config.seed`, so the
/// record does not depend on how shots are scheduled.
pub fn monte_carlo(
    protocol: Protocol,
    n_qubits: usize,
    beta: f64,
    shots: usize,
    config: &NoiseConfig,
) -> Result<ExperimentRecord> {
    config.validate()?;
    let runner = ProtocolRunner::new(protocol, n_qubits, config.delta_t)?;
    record_for(&runner, beta, shots, config)
}

/// `points` evenly spaced angles from 0 to pi inclusive.
pub fn beta_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| PI * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

fn sort_records(records: &mut [ExperimentRecord]) {
    records.sort_by(|a, b| {
        (a.protocol, a.n_qubits)
            .cmp(&(b.protocol, b.n_qubits))
            .then(a.beta.total_cmp(&b.beta))
            .then(a.error_scale.total_cmp(&b.error_scale))
    });
}

/// One record per (protocol, n, beta), sorted in that order.
pub fn sweep_beta(
    protocols: &[Protocol],
    n_list: &[usize],
    betas: &[f64],
    shots: usize,
    config: &NoiseConfig,
) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    if let Some(b) = betas.iter().find(|b| !(0.0..=PI).contains(*b)) {
        return Err(Error::InvalidConfig(format!("beta {b} outside [0, pi]")));
    }
    let mut out = Vec::with_capacity(protocols.len() * n_list.len() * betas.len());
    for &p in protocols {
        for &n in n_list {
            let runner = ProtocolRunner::new(p, n, config.delta_t)?;
            for &beta in betas {
                out.push(record_for(&runner, beta, shots, config)?);
            }
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// One record per (protocol, n, scale) at `beta = pi/4`. Every scale
/// reuses the same seed, so neighbouring scales share their raw draws.
pub fn sweep_error_scale(
    protocols: &[Protocol],
    n_list: &[usize],
    scales: &[f64],
    shots: usize,
    config: &NoiseConfig,
) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    if let Some(s) = scales.iter().find(|s| !(**s >= 0.0 && s.is_finite())) {
        return Err(Error::InvalidConfig(format!("error scale {s} must be >= 0")));
    }
    let mut out = Vec::with_capacity(protocols.len() * n_list.len() * scales.len());
    for &p in protocols {
        for &n in n_list {
            let runner = ProtocolRunner::new(p, n, config.delta_t)?;
            for &s in scales {
                out.push(record_for(&runner, FRAC_PI_4, shots, &config.with_error_scale(s))?);
            }
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// Fidelity averaged over the beta grid for one (protocol, n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaSummary {
    pub protocol: Protocol,
    pub n_qubits: usize,
    pub points: usize,
    pub mean_fidelity: f64,
    /// Standard error of the grid mean, combining the per-point errors.
    pub standard_error: f64,
}

pub fn beta_average(records: &[ExperimentRecord]) -> Vec<BetaSummary> {
    let mut keys: Vec<(Protocol, usize)> = records.iter().map(|r| (r.protocol, r.n_qubits)).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|(protocol, n_qubits)| {
            let group: Vec<&ExperimentRecord> = records
                .iter()
                .filter(|r| r.protocol == protocol && r.n_qubits == n_qubits)
                .collect();
            let k = group.len() as f64;
            let mean = group.iter().map(|r| r.mean_fidelity).sum::<f64>() / k;
            let se = group
                .iter()
                .map(|r| r.standard_error().powi(2))
                .sum::<f64>()
                .sqrt()
                / k;
            BetaSummary {
                protocol,
                n_qubits,
                points: group.len(),
                mean_fidelity: mean,
                standard_error: se,
            }
        })
        .collect()
}
