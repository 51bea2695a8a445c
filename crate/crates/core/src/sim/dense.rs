use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::gates::{DiagonalTwoQubitGate, Mat2, SingleQubitGate};
use super::ising::IsingSpec;
use super::state::{qubit_shift, Statevector};
use crate::{Error, Result, C64};

pub type CMatrix = DMatrix<C64>;

pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Largest register for which dense unitaries are built.
pub const MAX_DENSE_QUBITS: usize = 10;

/// A Hermitian matrix on the full register, in units where `hbar = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian {
    matrix: CMatrix,
}

impl DenseHamiltonian {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(2),
                found: matrix.ncols(),
            });
        }
        let deviation = (&matrix - matrix.adjoint())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if !(deviation <= HERMITIAN_TOLERANCE) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    /// The diagonal Ising Hamiltonian of `spec` as a dense matrix.
    pub fn from_ising(spec: &IsingSpec) -> Self {
        let diag = DVector::from_iterator(
            1 << spec.n_qubits(),
            spec.energies().into_iter().map(|e| C64::new(e, 0.0)),
        );
        Self {
            matrix: CMatrix::from_diagonal(&diag),
        }
    }

    /// Embeds a 2x2 Hermitian operator on `qubit` of an `n`-qubit register.
    pub fn single_qubit(n: usize, qubit: usize, op: &Mat2) -> Result<Self> {
        Self::new(embed_single(n, qubit, op)?)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `exp(i t H)` via Hermitian eigendecomposition.
    pub fn unitary(&self, t: f64) -> CMatrix {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let phases = DVector::from_iterator(
            self.dim(),
            eig.eigenvalues.iter().map(|l| C64::from_polar(1.0, t * l)),
        );
        let v = &eig.eigenvectors;
        v * CMatrix::from_diagonal(&phases) * v.adjoint()
    }
}

impl std::ops::Add for DenseHamiltonian {
    type Output = DenseHamiltonian;
    fn add(self, rhs: Self) -> Self {
        Self {
            matrix: self.matrix + rhs.matrix,
        }
    }
}

impl std::ops::Mul<f64> for DenseHamiltonian {
    type Output = DenseHamiltonian;
    fn mul(self, rhs: f64) -> Self {
        Self {
            matrix: self.matrix * C64::new(rhs, 0.0),
        }
    }
}

/// `state <- exp(i t H) state`, exact up to rounding.
pub fn expm_evolve(state: &mut Statevector, h: &DenseHamiltonian, t: f64) -> Result<()> {
    if h.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: h.dim(),
        });
    }
    let u = h.unitary(t);
    let v = DVector::from_column_slice(state.amplitudes());
    let out = u * v;
    state.amplitudes_mut().copy_from_slice(out.as_slice());
    Ok(())
}

/// Operations understood by [`build_dense_unitary`].
#[derive(Debug, Clone)]
pub enum Operation {
    Single(SingleQubitGate),
    Diagonal(DiagonalTwoQubitGate),
    Ising { spec: IsingSpec, t: f64 },
    Hamiltonian { h: DenseHamiltonian, t: f64 },
}

impl Operation {
    pub fn apply(&self, state: &mut Statevector) -> Result<()> {
        match self {
            Operation::Single(g) => state.apply_single(g),
            Operation::Diagonal(g) => state.apply_diagonal(g),
            Operation::Ising { spec, t } => super::ising::evolve_ising_diagonal(state, spec, *t),
            Operation::Hamiltonian { h, t } => expm_evolve(state, h, *t),
        }
    }

    /// Full-register matrix built by Kronecker embedding, independent of
    /// the in-place statevector kernels.
    fn matrix(&self, n: usize) -> Result<CMatrix> {
        let dim = 1usize << n;
        match self {
            Operation::Single(g) => embed_single(n, g.target(), g.matrix()),
            Operation::Diagonal(g) => {
                let sc = qubit_shift(n, g.control())?;
                let st = qubit_shift(n, g.target())?;
                let diag = DVector::from_iterator(
                    dim,
                    (0..dim).map(|i| g.phases()[(((i >> sc) & 1) << 1) | ((i >> st) & 1)]),
                );
                Ok(CMatrix::from_diagonal(&diag))
            }
            Operation::Ising { spec, t } => {
                if spec.n_qubits() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: spec.n_qubits(),
                    });
                }
                Ok(DenseHamiltonian::from_ising(spec).unitary(*t))
            }
            Operation::Hamiltonian { h, t } => {
                if h.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: h.dim(),
                    });
                }
                Ok(h.unitary(*t))
            }
        }
    }
}

/// Embeds a 2x2 matrix acting on `qubit` into an `n`-qubit register as
/// `1 (x) ... (x) op (x) ... (x) 1`.
pub fn embed_single(n: usize, qubit: usize, op: &Mat2) -> Result<CMatrix> {
    qubit_shift(n, qubit)?;
    if n > MAX_DENSE_QUBITS {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "dense matrices are limited to 10 qubits",
        });
    }
    let small = CMatrix::from_fn(2, 2, |r, c| op[r][c]);
    let mut out = CMatrix::identity(1, 1);
    for q in 1..=n {
        let factor = if q == qubit {
            small.clone()
        } else {
            CMatrix::identity(2, 2)
        };
        out = out.kronecker(&factor);
    }
    Ok(out)
}

/// Product of a gate sequence as a dense matrix, first element applied first.
pub fn build_dense_unitary(n: usize, ops: &[Operation]) -> Result<CMatrix> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "dense matrices are limited to 1..=10 qubits",
        });
    }
    let dim = 1usize << n;
    ops.iter().try_fold(CMatrix::identity(dim, dim), |acc, op| {
        Ok(op.matrix(n)? * acc)
    })
}

/// Builds the dense matrix of an arbitrary linear state map by applying it
/// to each basis vector.
pub fn matrix_of<F>(n: usize, mut apply: F) -> Result<CMatrix>
where
    F: FnMut(&mut Statevector) -> Result<()>,
{
    let dim = 1usize << n;
    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut s = Statevector::basis_state(n, col)?;
        apply(&mut s)?;
        for (row, a) in s.amplitudes().iter().enumerate() {
            out[(row, col)] = *a;
        }
    }
    Ok(out)
}

/// Phase-insensitive Frobenius distance `min_phi ||U - exp(i phi) V||_F`.
///
/// The optimal phase is `arg tr(V^dag U)`; the distance is then evaluated
/// entrywise so that it stays accurate near zero.
pub fn phase_distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if u.shape() != v.shape() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            found: v.nrows(),
        });
    }
    let overlap: C64 = v.iter().zip(u.iter()).map(|(a, b)| a.conj() * b).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    Ok(u.iter()
        .zip(v.iter())
        .map(|(a, b)| (a - phase * b).norm_sqr())
        .sum::<f64>()
        .sqrt())
}
