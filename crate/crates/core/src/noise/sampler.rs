use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use super::config::NoiseConfig;
use crate::daqc::Mode;
use crate::perturb::Perturbation;
use crate::qft::CircuitOp;
use crate::sim::{evolve_diagonal, IsingSpec, RotationGate, Statevector};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    /// Generator scale of a single-qubit gate.
    SingleQubit,
    /// Phase error of a two-qubit entangler.
    TwoQubit,
    /// Duration error of an analog segment.
    Analog(Mode),
}

/// One draw of the requested noise variable. Zero widths give the exact
/// degenerate value without touching the generator.
pub fn sample_noise<R: Rng + ?Sized>(kind: NoiseKind, config: &NoiseConfig, rng: &mut R) -> f64 {
    match kind {
        NoiseKind::SingleQubit => {
            let s = config.sqg_half_width();
            if s == 0.0 {
                return 1.0;
            }
            Uniform::new_inclusive(1.0 - s, 1.0 + s)
                .expect("finite non-empty range")
                .sample(rng)
        }
        NoiseKind::TwoQubit => gaussian(config.tqg_sigma(), rng),
        NoiseKind::Analog(mode) => gaussian(config.abn_sigma(mode), rng),
    }
}

fn gaussian<R: Rng + ?Sized>(sigma: f64, rng: &mut R) -> f64 {
    if sigma == 0.0 {
        return 0.0;
    }
    let z: f64 = StandardNormal.sample(rng);
    sigma * z
}

/// Generator for shot `shot` of a run seeded with `seed`. Every shot has
/// its own ChaCha stream, so results do not depend on execution order.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Draws noise for every gate from `config`.
pub struct NoiseSampler<'a, R> {
    config: &'a NoiseConfig,
    rng: R,
}

impl<'a, R: Rng> NoiseSampler<'a, R> {
    pub fn new(config: &'a NoiseConfig, rng: R) -> Self {
        Self { config, rng }
    }
}

impl<R: Rng> Perturbation for NoiseSampler<'_, R> {
    fn single_qubit_scale(&mut self) -> f64 {
        sample_noise(NoiseKind::SingleQubit, self.config, &mut self.rng)
    }

    fn entangler_error(&mut self) -> f64 {
        sample_noise(NoiseKind::TwoQubit, self.config, &mut self.rng)
    }

    fn analog_offset(&mut self, mode: Mode) -> f64 {
        sample_noise(NoiseKind::Analog(mode), self.config, &mut self.rng)
    }
}

/// Gates that carry a noise model.
#[derive(Debug, Clone, PartialEq)]
pub enum NoisyGate {
    /// `exp(i theta G)` becomes `exp(i theta dB G)`.
    Local(RotationGate),
    /// `exp(i pi/4 ZZ)` becomes `exp(i pi/4 (1 + eps) ZZ)`.
    Entangler { a: usize, b: usize },
    /// `exp(i t H)` becomes `exp(i (t + delta) H)`.
    Analog {
        resource: IsingSpec,
        t: f64,
        mode: Mode,
    },
}

pub fn apply_noisy_gate<R: Rng>(
    state: &mut Statevector,
    gate: &NoisyGate,
    config: &NoiseConfig,
    rng: &mut R,
) -> Result<()> {
    let mut sampler = NoiseSampler::new(config, rng);
    match gate {
        NoisyGate::Local(g) => CircuitOp::Local(*g).apply(state, &mut sampler),
        NoisyGate::Entangler { a, b } => {
            CircuitOp::Entangler { a: *a, b: *b }.apply(state, &mut sampler)
        }
        NoisyGate::Analog { resource, t, mode } => {
            if resource.n_qubits() != state.n_qubits() {
                return Err(crate::Error::DimensionMismatch {
                    expected: state.n_qubits(),
                    found: resource.n_qubits(),
                });
            }
            let dt = sampler.analog_offset(*mode);
            evolve_diagonal(state, &resource.energies(), t + dt)
        }
    }
}
