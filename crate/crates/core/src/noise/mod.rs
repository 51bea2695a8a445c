//! Coherent control noise and Monte-Carlo fidelity experiments.

mod config;
mod experiment;
mod sampler;

pub use config::{NoiseConfig, DEFAULT_SEED};
pub use experiment::{
    beta_average, beta_grid, monte_carlo, run_protocol, sweep_beta, sweep_error_scale,
    BetaSummary, ExperimentRecord, Protocol, ProtocolRunner, DEFAULT_BETA_POINTS,
};
pub use sampler::{apply_noisy_gate, sample_noise, shot_rng, NoiseKind, NoiseSampler, NoisyGate};
