use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::sim::{pair_count, pair_offset, pairs, IsingSpec};
use crate::{Error, Result};

/// Residual bound enforced on every time solution.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// 1-based vectorized index of the pair `(n, m)`, `1 <= n < m <= size`.
pub fn vectorize_pair(n: usize, m: usize, size: usize) -> Result<usize> {
    Ok(pair_offset(n, m, size)? + 1)
}

/// Inverse of [`vectorize_pair`].
pub fn unvectorize_pair(alpha: usize, size: usize) -> Result<(usize, usize)> {
    if alpha == 0 || alpha > pair_count(size) {
        return Err(Error::IndexOutOfRange {
            index: alpha,
            dim: pair_count(size),
        });
    }
    Ok(pairs(size).nth(alpha - 1).expect("alpha checked against pair count"))
}

/// `M[a][b] = (-1)^(d_nj + d_nk + d_mj + d_mk)` for the pairs `a = (n,m)`
/// and `b = (j,k)`: the sign picked up by `Z_j Z_k` under conjugation by
/// `X_n X_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    n_qubits: usize,
    dim: usize,
    entries: Vec<i8>,
}

pub fn sign_matrix(n_qubits: usize) -> Result<SignMatrix> {
    if n_qubits < 2 {
        return Err(Error::InvalidQubitCount {
            n: n_qubits,
            reason: "the sign matrix needs at least 2 qubits",
        });
    }
    let dim = pair_count(n_qubits);
    let mut entries = Vec::with_capacity(dim * dim);
    for (n, m) in pairs(n_qubits) {
        for (j, k) in pairs(n_qubits) {
            let overlaps = [n == j, n == k, m == j, m == k]
                .iter()
                .filter(|&&b| b)
                .count();
            entries.push(if overlaps % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(SignMatrix {
        n_qubits,
        dim,
        entries,
    })
}

impl SignMatrix {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of rows, `N(N-1)/2`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.dim + col]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| self.get(r, c) as f64)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| BigInt::from(self.get(r, c))).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_singular(&self) -> bool {
        self.determinant().is_zero()
    }

    /// Solves `M t = rhs`, failing with [`Error::SingularSignMatrix`] when
    /// the matrix is singular.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.len(),
            });
        }
        if self.is_singular() {
            return Err(Error::SingularSignMatrix { n: self.n_qubits });
        }
        let b = DVector::from_column_slice(rhs);
        self.to_matrix()
            .lu()
            .solve(&b)
            .map(|x| x.iter().copied().collect())
            .ok_or_else(|| Error::Solver("LU solve failed".into()))
    }

    /// `max_a |sum_b M[a][b] x[b] - y[a]|`.
    pub fn residual(&self, x: &[f64], y: &[f64]) -> f64 {
        (0..self.dim)
            .map(|r| {
                let lhs: f64 = (0..self.dim).map(|c| self.get(r, c) as f64 * x[c]).sum();
                (lhs - y[r]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Analog block durations for a ZZ target and the homogeneous resource
/// they drive.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSolution {
    pub times: Vec<f64>,
    pub residual: f64,
    pub resource: IsingSpec,
}

/// `t = M^-1 g t_F / g`. Negative durations are legitimate solutions.
pub fn solve_times(target: &IsingSpec) -> Result<TimeSolution> {
    let n = target.n_qubits();
    let m = sign_matrix(n)?;
    let g = target.resource_coupling();
    let scale = target.target_time() / g;
    let rhs = target.couplings();
    let times: Vec<f64> = m.solve(rhs)?.into_iter().map(|t| t * scale).collect();
    let effective: Vec<f64> = times.iter().map(|t| t / scale).collect();
    let residual = if scale == 0.0 {
        0.0
    } else {
        m.residual(&effective, rhs)
    };
    if !(residual < RESIDUAL_TOLERANCE) {
        return Err(Error::Solver(format!(
            "residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:e}"
        )));
    }
    Ok(TimeSolution {
        times,
        residual,
        resource: IsingSpec::homogeneous(n, g)?,
    })
}
