//! Hooks through which executors draw coherent control errors.
//!
//! Executors in [`crate::qft`] and [`crate::daqc`] call into a
//! [`Perturbation`] once per physical gate or analog segment; the noise
//! samplers in [`crate::noise`] implement it, and [`Ideal`] turns every
//! hook into the identity.

use crate::daqc::Mode;

pub trait Perturbation {
    /// Multiplier applied to the generator of one single-qubit gate.
    fn single_qubit_scale(&mut self) -> f64;

    /// Relative error `eps` of one `exp(i pi/4 (1 + eps) ZZ)` entangler.
    fn entangler_error(&mut self) -> f64;

    /// Additive error on the duration of one analog segment.
    fn analog_offset(&mut self, mode: Mode) -> f64;
}

/// No noise at all.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ideal;

impl Perturbation for Ideal {
    fn single_qubit_scale(&mut self) -> f64 {
        1.0
    }

    fn entangler_error(&mut self) -> f64 {
        0.0
    }

    fn analog_offset(&mut self, _mode: Mode) -> f64 {
        0.0
    }
}
