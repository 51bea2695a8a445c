use crate::{Error, Result, C64};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 14;

/// Tolerance used when validating that a state is normalized.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// A normalized pure state over `n_qubits` qubits.
///
/// Qubit 1 is the most significant bit of the basis index, so the basis
/// state `|q1 q2 ... qn>` has index `q1 * 2^(n-1) + ... + qn`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<C64>,
}

pub(crate) fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "register size must be between 1 and 14",
        });
    }
    Ok(())
}

impl Statevector {
    /// The computational basis state `|index>`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps an amplitude vector, checking length and normalization.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(2),
                found: dim,
            });
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_qubit_count(n_qubits)?;
        let state = Self { n_qubits, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(state)
    }

    /// Like [`Statevector::from_amplitudes`] but rescales to unit norm first.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Statevector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Bit position (shift) of a 1-based qubit index.
    pub(crate) fn shift_of(&self, qubit: usize) -> Result<usize> {
        qubit_shift(self.n_qubits, qubit)
    }

    /// Reverses the qubit order: the readout permutation that replaces the
    /// trailing swap network of the textbook QFT circuit.
    pub fn reverse_qubits(&mut self) {
        let n = self.n_qubits;
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for (i, a) in self.amps.iter().enumerate() {
            out[reverse_bits(i, n)] = *a;
        }
        self.amps = out;
    }
}

/// Fidelity `|<a|b>|^2`, insensitive to the global phase of either state.
pub fn fidelity(a: &Statevector, b: &Statevector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

pub(crate) fn qubit_shift(n_qubits: usize, qubit: usize) -> Result<usize> {
    if qubit == 0 || qubit > n_qubits {
        return Err(Error::QubitOutOfRange {
            qubit,
            n: n_qubits,
        });
    }
    Ok(n_qubits - qubit)
}

pub(crate) fn reverse_bits(index: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, b| acc | (((index >> b) & 1) << (n - 1 - b)))
}

/// `z` eigenvalue (+1 for bit 0, -1 for bit 1) of a qubit in a basis index.
#[inline]
pub(crate) fn z_sign(index: usize, shift: usize) -> f64 {
    if (index >> shift) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}
