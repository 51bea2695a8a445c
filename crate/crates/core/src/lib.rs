//! Dense statevector simulation of the quantum Fourier transform under
//! purely digital (DQC), stepwise digital-analog (sDAQC) and banged
//! digital-analog (bDAQC) protocols, with coherent control noise.
//!
//! The crate is organised bottom-up:
//!
//! * [`sim`] – statevectors, gates, diagonal Ising evolution, dense exponentials.
//! * [`qft`] – the exact transform, its gate-level plan and the ZZ-gate construction.
//! * [`daqc`] – sign matrix, time solving and stepwise/banged schedules.
//! * [`noise`] – noise samplers, noisy protocol execution and Monte-Carlo sweeps.
//! * [`nn2ata`] – Hamiltonian-path decomposition of the complete graph.
//! * [`report`] – CSV and text dump formats shared by the CLI and tests.

pub mod daqc;
pub mod error;
pub mod nn2ata;
pub mod noise;
pub mod perturb;
pub mod qft;
pub mod report;
pub mod sim;

pub use error::{Error, Result};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;
