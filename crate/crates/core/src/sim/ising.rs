use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::state::{check_qubit_count, qubit_shift, z_sign, Statevector};
use crate::{Error, Result, C64};

/// All-to-all two-body ZZ Ising Hamiltonian `sum_{j<k} g_jk Z_j Z_k`,
/// together with the resource coupling `g` and target time `t_F` used
/// when it is a compilation target.
///
/// Couplings are stored in pair order `(1,2), (1,3), ..., (N-1,N)`, which
/// is the same order as the vectorized pair index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingSpec {
    n_qubits: usize,
    couplings: Vec<f64>,
    resource_coupling: f64,
    target_time: f64,
}

/// Number of unordered qubit pairs of an `n`-qubit register.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Zero-based storage offset of the pair `(j, k)`, `1 <= j < k <= n`.
pub(crate) fn pair_offset(j: usize, k: usize, n: usize) -> Result<usize> {
    if j == 0 || j >= k || k > n {
        return Err(Error::InvalidPair {
            n: j,
            m: k,
            size: n,
        });
    }
    Ok(n * (j - 1) + k - 1 - j * (j + 1) / 2)
}

/// Iterates the pairs `(j, k)`, `j < k`, in storage order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (j, k)))
}

impl IsingSpec {
    /// All couplings zero, `g = 1`, `t_F = 1`.
    pub fn zeros(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        Ok(Self {
            n_qubits,
            couplings: vec![0.0; pair_count(n_qubits)],
            resource_coupling: 1.0,
            target_time: 1.0,
        })
    }

    /// Every pair coupled with strength `g`; this is the analog resource.
    pub fn homogeneous(n_qubits: usize, g: f64) -> Result<Self> {
        let mut spec = Self::zeros(n_qubits)?;
        spec.couplings.iter_mut().for_each(|c| *c = g);
        spec.with_resource_coupling(g)
    }

    /// Builds a spec from `(j, k, g_jk)` triples; pairs not listed are zero.
    pub fn from_pairs(
        n_qubits: usize,
        couplings: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut spec = Self::zeros(n_qubits)?;
        for (j, k, g) in couplings {
            spec.set_coupling(j, k, g)?;
        }
        Ok(spec)
    }

    /// Builds a spec from couplings already in pair order.
    pub fn from_vector(n_qubits: usize, couplings: Vec<f64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if couplings.len() != pair_count(n_qubits) {
            return Err(Error::DimensionMismatch {
                expected: pair_count(n_qubits),
                found: couplings.len(),
            });
        }
        if let Some(bad) = couplings.iter().find(|c| !c.is_finite()) {
            return Err(Error::Parse(format!("non-finite coupling {bad}")));
        }
        Ok(Self {
            n_qubits,
            couplings,
            resource_coupling: 1.0,
            target_time: 1.0,
        })
    }

    pub fn with_resource_coupling(mut self, g: f64) -> Result<Self> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Parse(format!("resource coupling must be positive, got {g}")));
        }
        self.resource_coupling = g;
        Ok(self)
    }

    pub fn with_target_time(mut self, t_f: f64) -> Result<Self> {
        if !t_f.is_finite() {
            return Err(Error::Parse(format!("target time must be finite, got {t_f}")));
        }
        self.target_time = t_f;
        Ok(self)
    }

    pub fn set_coupling(&mut self, j: usize, k: usize, g: f64) -> Result<()> {
        if !g.is_finite() {
            return Err(Error::Parse(format!("non-finite coupling {g}")));
        }
        let off = pair_offset(j, k, self.n_qubits)?;
        self.couplings[off] = g;
        Ok(())
    }

    pub fn coupling(&self, j: usize, k: usize) -> Result<f64> {
        Ok(self.couplings[pair_offset(j, k, self.n_qubits)?])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Couplings in pair order.
    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn resource_coupling(&self) -> f64 {
        self.resource_coupling
    }

    pub fn target_time(&self) -> f64 {
        self.target_time
    }

    /// Diagonal of the Hamiltonian in the computational basis.
    pub fn energies(&self) -> Vec<f64> {
        let n = self.n_qubits;
        let terms: Vec<(usize, usize, f64)> = pairs(n)
            .zip(&self.couplings)
            .filter(|(_, g)| **g != 0.0)
            .map(|((j, k), g)| (n - j, n - k, *g))
            .collect();
        (0..1usize << n)
            .map(|x| {
                terms
                    .iter()
                    .map(|&(sj, sk, g)| g * z_sign(x, sj) * z_sign(x, sk))
                    .sum()
            })
            .collect()
    }
}

/// Applies `exp(i * t * diag)` for a precomputed diagonal Hamiltonian.
pub fn evolve_diagonal(state: &mut Statevector, energies: &[f64], t: f64) -> Result<()> {
    if energies.len() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: energies.len(),
        });
    }
    if t == 0.0 {
        return Ok(());
    }
    for (a, e) in state.amplitudes_mut().iter_mut().zip(energies) {
        *a *= C64::from_polar(1.0, t * e);
    }
    Ok(())
}

/// `exp(i t H)` for the diagonal Ising Hamiltonian described by `spec`.
/// Negative times are allowed.
pub fn evolve_ising_diagonal(state: &mut Statevector, spec: &IsingSpec, t: f64) -> Result<()> {
    if spec.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.n_qubits(),
            found: spec.n_qubits(),
        });
    }
    evolve_diagonal(state, &spec.energies(), t)
}

/// Evolves under `diag + sum_q a_q X_q` for time `t`, exactly.
///
/// The Hamiltonian commutes with `Z` on every undriven qubit, so it splits
/// into `2^(n-|S|)` blocks of size `2^|S|` (`S` the driven qubits), each
/// of which is real symmetric and diagonalised on its own.
pub fn evolve_driven_diagonal(
    state: &mut Statevector,
    energies: &[f64],
    drive: &[(usize, f64)],
    t: f64,
) -> Result<()> {
    let n = state.n_qubits();
    if energies.len() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: energies.len(),
        });
    }
    let mut shifts = Vec::with_capacity(drive.len());
    for &(q, _) in drive {
        let s = qubit_shift(n, q)?;
        if shifts.contains(&s) {
            return Err(Error::SameQubit(q));
        }
        shifts.push(s);
    }
    if drive.is_empty() {
        return evolve_diagonal(state, energies, t);
    }
    let driven_mask: usize = shifts.iter().map(|s| 1usize << s).sum();
    let block = 1usize << drive.len();

    // Map local index -> offset bits within the full index.
    let local_to_full = |local: usize| -> usize {
        shifts
            .iter()
            .enumerate()
            .filter(|(b, _)| (local >> b) & 1 == 1)
            .map(|(_, s)| 1usize << s)
            .sum()
    };
    let offsets: Vec<usize> = (0..block).map(local_to_full).collect();

    let mut h = DMatrix::<f64>::zeros(block, block);
    let mut local = vec![C64::new(0.0, 0.0); block];
    let amps = state.amplitudes_mut();
    for base in (0..amps.len()).filter(|i| i & driven_mask == 0) {
        h.fill(0.0);
        for (l, off) in offsets.iter().enumerate() {
            h[(l, l)] = energies[base + off];
            for (b, &(_, amp)) in drive.iter().enumerate() {
                h[(l, l ^ (1 << b))] += amp;
            }
        }
        let eig = SymmetricEigen::new(h.clone());
        let v = &eig.eigenvectors;
        // local <- V exp(i t L) V^T local
        for (l, off) in offsets.iter().enumerate() {
            local[l] = amps[base + off];
        }
        let mut proj = vec![C64::new(0.0, 0.0); block];
        for (e, p) in proj.iter_mut().enumerate() {
            let s: C64 = (0..block).map(|l| local[l] * v[(l, e)]).sum();
            *p = s * C64::from_polar(1.0, t * eig.eigenvalues[e]);
        }
        for (l, off) in offsets.iter().enumerate() {
            amps[base + off] = (0..block).map(|e| proj[e] * v[(l, e)]).sum();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_offsets_follow_storage_order() {
        let n = 5;
        for (i, (j, k)) in pairs(n).enumerate() {
            assert_eq!(pair_offset(j, k, n).unwrap(), i);
        }
        assert!(pair_offset(2, 2, n).is_err());
        assert!(pair_offset(3, 2, n).is_err());
        assert!(pair_offset(1, 6, n).is_err());
    }

    #[test]
    fn two_qubit_eigenvalue_bookkeeping() {
        let spec = IsingSpec::from_pairs(2, [(1, 2, 1.0)]).unwrap();
        let t = 0.7;
        let psi = Statevector::normalized(vec![C64::new(1.0, 0.0); 4]).unwrap();
        let mut out = psi.clone();
        evolve_ising_diagonal(&mut out, &spec, t).unwrap();
        let ratio = |i: usize| out.amplitudes()[i] / psi.amplitudes()[i];
        assert!((ratio(0b00) - C64::from_polar(1.0, t)).norm() < 1e-14);
        assert!((ratio(0b01) - C64::from_polar(1.0, -t)).norm() < 1e-14);
        assert!((ratio(0b10) - C64::from_polar(1.0, -t)).norm() < 1e-14);
        assert!((ratio(0b11) - C64::from_polar(1.0, t)).norm() < 1e-14);

        let mut same = psi.clone();
        evolve_ising_diagonal(&mut same, &spec, 0.0).unwrap();
        assert_eq!(same, psi);
    }

    #[test]
    fn register_mismatch() {
        let spec = IsingSpec::zeros(3).unwrap();
        let mut s = Statevector::basis_state(2, 0).unwrap();
        assert!(evolve_ising_diagonal(&mut s, &spec, 1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(IsingSpec::zeros(3).unwrap().with_resource_coupling(0.0).is_err());
        assert!(IsingSpec::from_pairs(3, [(1, 2, f64::NAN)]).is_err());
        assert!(IsingSpec::from_vector(3, vec![0.0; 2]).is_err());
        let h = IsingSpec::homogeneous(3, 2.0).unwrap();
        assert_eq!(h.coupling(1, 3).unwrap(), 2.0);
        assert_eq!(h.resource_coupling(), 2.0);
    }
}
