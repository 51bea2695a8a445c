//! The quantum Fourier transform: exact reference, gate-level plan in
//! Ising form, the digital circuit and the fixed-phase ZZ construction.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use crate::perturb::Perturbation;
use crate::sim::{
    matrix_of, CMatrix, DiagonalTwoQubitGate, Generator, IsingSpec, RotationGate, Statevector,
};
use crate::{Error, Result, C64};

/// `F|w> = 2^(-n/2) sum_k exp(2 pi i w k / 2^n) |k>`, evaluated directly.
pub fn exact_qft(state: &Statevector) -> Statevector {
    let dim = state.dim();
    let roots: Vec<C64> = (0..dim)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / dim as f64))
        .collect();
    let scale = 1.0 / (dim as f64).sqrt();
    let amps = state.amplitudes();
    let out = (0..dim)
        .map(|k| {
            amps.iter()
                .enumerate()
                .filter(|(_, a)| a.norm_sqr() != 0.0)
                .map(|(w, a)| a * roots[(w * k) & (dim - 1)])
                .sum::<C64>()
                * scale
        })
        .collect();
    Statevector::from_amplitudes(out).expect("QFT preserves the norm")
}

/// Dense matrix of the exact transform.
pub fn exact_qft_matrix(n: usize) -> Result<CMatrix> {
    let dim = 1usize << n;
    Statevector::basis_state(n, 0)?;
    Ok(CMatrix::from_fn(dim, dim, |k, w| {
        C64::from_polar(
            1.0 / (dim as f64).sqrt(),
            2.0 * PI * ((w * k) % dim) as f64 / dim as f64,
        )
    }))
}

/// Local phase angle `theta_k = pi / 2^(k+1)`, `k >= 2`.
pub fn theta(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidRotationIndex(format!("theta needs k >= 2, got {k}")));
    }
    Ok(PI / 2f64.powi(k as i32 + 1))
}

/// Coupling `alpha_{c,k,m} = delta_{c,m} pi / 2^(k-m+2)` of block `m`
/// between qubits `c < k`.
pub fn alpha(c: usize, k: usize, m: usize) -> Result<f64> {
    if c == 0 || c >= k || m == 0 {
        return Err(Error::InvalidRotationIndex(format!(
            "alpha needs 1 <= c < k and m >= 1, got ({c}, {k}, {m})"
        )));
    }
    if c != m {
        return Ok(0.0);
    }
    Ok(PI / 2f64.powi((k - m + 2) as i32))
}

/// One controlled-rotation block: a single-qubit layer (the Hadamard on
/// qubit `m` followed by Z phases) and an all-to-all ZZ target.
#[derive(Debug, Clone, PartialEq)]
pub struct QftBlock {
    pub index: usize,
    pub local_layer: Vec<RotationGate>,
    pub couplings: IsingSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QftPlan {
    n_qubits: usize,
    blocks: Vec<QftBlock>,
    final_hadamard: usize,
}

impl QftPlan {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn blocks(&self) -> &[QftBlock] {
        &self.blocks
    }

    pub fn final_hadamard(&self) -> RotationGate {
        RotationGate::hadamard(self.final_hadamard)
    }

    /// Readout permutation replacing the swap network (bit reversal).
    pub fn readout(&self, state: &mut Statevector) {
        state.reverse_qubits();
    }

    /// Ideal execution of the plan including the readout permutation, with
    /// each ZZ block applied as an exact diagonal exponential.
    pub fn apply(&self, state: &mut Statevector) -> Result<()> {
        for block in &self.blocks {
            for g in &block.local_layer {
                state.apply_single(&g.to_gate(1.0))?;
            }
            crate::sim::evolve_ising_diagonal(state, &block.couplings, 1.0)?;
        }
        state.apply_single(&self.final_hadamard().to_gate(1.0))?;
        self.readout(state);
        Ok(())
    }

    pub fn matrix(&self) -> Result<CMatrix> {
        matrix_of(self.n_qubits, |s| self.apply(s))
    }
}

/// Block `m` targets qubit `m`, controlled by every later qubit `m+k-1`
/// through `theta_k`, `k = 2..=n-m+1`.
pub fn build_qft_plan(n_qubits: usize) -> Result<QftPlan> {
    Statevector::basis_state(n_qubits, 0)?;
    let n = n_qubits;
    let mut blocks = Vec::with_capacity(n.saturating_sub(1));
    for m in 1..n {
        let mut local_layer = vec![RotationGate::hadamard(m)];
        let mut couplings = IsingSpec::zeros(n)?;
        for k in 2..=n - m + 1 {
            let control = k + m - 1;
            let th = theta(k)?;
            local_layer.push(RotationGate::new(control, Generator::Z, -th));
            local_layer.push(RotationGate::new(m, Generator::Z, -th));
            couplings.set_coupling(m, control, alpha(m, control, m)?)?;
        }
        blocks.push(QftBlock {
            index: m,
            local_layer,
            couplings,
        });
    }
    Ok(QftPlan {
        n_qubits: n,
        blocks,
        final_hadamard: n,
    })
}

/// Elementary operations of the digital circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitOp {
    Local(RotationGate),
    /// `|11>` phase `exp(2 pi i / 2^k)`.
    ControlledRk { control: usize, target: usize, k: usize },
    /// The fixed entangler `exp(i pi/4 Z_a Z_b)`.
    Entangler { a: usize, b: usize },
}

impl CircuitOp {
    /// Applies the op, drawing control errors from `noise`. Controlled-R_k
    /// gates have no noise model and are always exact.
    pub fn apply(&self, state: &mut Statevector, noise: &mut dyn Perturbation) -> Result<()> {
        match *self {
            CircuitOp::Local(g) => state.apply_single(&g.to_gate(noise.single_qubit_scale())),
            CircuitOp::ControlledRk { control, target, k } => state.apply_diagonal(
                &DiagonalTwoQubitGate::controlled_rk(control, target, k as u32)?,
            ),
            CircuitOp::Entangler { a, b } => {
                let eps = noise.entangler_error();
                state.apply_zz(a, b, FRAC_PI_4 * (1.0 + eps))
            }
        }
    }

    pub fn is_entangler(&self) -> bool {
        matches!(self, CircuitOp::Entangler { .. })
    }
}

/// Seven-gate realization of `exp(i alpha Z_c Z_k)` from two fixed
/// `pi/4` entanglers, stored in application order.
#[derive(Debug, Clone, PartialEq)]
pub struct ZzGateSequence {
    ops: [CircuitOp; 7],
}

impl ZzGateSequence {
    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }
}

pub fn zz_gate_sequence(alpha: f64, c: usize, k: usize) -> Result<ZzGateSequence> {
    if c == k {
        return Err(Error::SameQubit(c));
    }
    let y = |angle| CircuitOp::Local(RotationGate::new(c, Generator::Y, angle));
    let x = CircuitOp::Local(RotationGate::x_pulse(k));
    let zz = CircuitOp::Entangler { a: c, b: k };
    // Operator product Y(pi/4) ZZ Y(alpha) X ZZ X Y(-pi/4), rightmost first.
    Ok(ZzGateSequence {
        ops: [y(-FRAC_PI_4), x, zz, x, y(alpha), zz, y(FRAC_PI_4)],
    })
}

/// The digital QFT. Plain mode emits Hadamards and controlled-R_k gates;
/// ZZ mode replaces each controlled rotation by its Z phases and a
/// [`ZzGateSequence`].
pub fn build_dqc_circuit(n_qubits: usize, use_zz_construction: bool) -> Result<Vec<CircuitOp>> {
    Statevector::basis_state(n_qubits, 0)?;
    let n = n_qubits;
    let mut ops = Vec::new();
    for m in 1..=n {
        ops.push(CircuitOp::Local(RotationGate::hadamard(m)));
        for k in 2..=n - m + 1 {
            let control = k + m - 1;
            if use_zz_construction {
                let th = theta(k)?;
                ops.push(CircuitOp::Local(RotationGate::new(control, Generator::Z, -th)));
                ops.push(CircuitOp::Local(RotationGate::new(m, Generator::Z, -th)));
                ops.extend_from_slice(zz_gate_sequence(th, m, control)?.ops());
            } else {
                ops.push(CircuitOp::ControlledRk {
                    control,
                    target: m,
                    k,
                });
            }
        }
    }
    Ok(ops)
}

/// Runs a circuit followed by the readout permutation.
pub fn run_circuit(
    ops: &[CircuitOp],
    state: &mut Statevector,
    noise: &mut dyn Perturbation,
) -> Result<()> {
    for op in ops {
        op.apply(state, noise)?;
    }
    state.reverse_qubits();
    Ok(())
}

fn check_family_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "W and GHZ states need at least 2 qubits",
        });
    }
    Statevector::basis_state(n, 0).map(|_| ())
}

/// Uniform superposition of the single-excitation basis states.
pub fn w_state(n: usize) -> Result<Statevector> {
    check_family_size(n)?;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    let a = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for s in 0..n {
        amps[1 << s] = a;
    }
    Statevector::from_amplitudes(amps)
}

/// `(|0...0> + |1...1>)/sqrt 2`.
pub fn ghz_state(n: usize) -> Result<Statevector> {
    check_family_size(n)?;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[(1 << n) - 1] = C64::new(FRAC_1_SQRT_2, 0.0);
    Statevector::from_amplitudes(amps)
}

/// `sin(beta) |W_n> + cos(beta) |GHZ_n>`; normalized because the two
/// states have disjoint support.
pub fn beta_state(n: usize, beta: f64) -> Result<Statevector> {
    let w = w_state(n)?;
    let g = ghz_state(n)?;
    let (s, c) = beta.sin_cos();
    Statevector::from_amplitudes(
        w.amplitudes()
            .iter()
            .zip(g.amplitudes())
            .map(|(a, b)| a * s + b * c)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::Ideal;
    use crate::sim::{fidelity, phase_distance};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn assert_amps(s: &Statevector, want: &[C64]) {
        for (a, b) in s.amplitudes().iter().zip(want) {
            assert!((a - b).norm() < 1e-12, "{:?} vs {:?}", s.amplitudes(), want);
        }
    }

    #[test]
    fn exact_qft_examples() {
        let out = exact_qft(&Statevector::basis_state(3, 0).unwrap());
        assert_amps(&out, &[c(1.0 / 8f64.sqrt(), 0.0); 8]);

        let out = exact_qft(&Statevector::basis_state(2, 1).unwrap());
        assert_amps(
            &out,
            &[c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)],
        );

        let out = exact_qft(&Statevector::basis_state(1, 0).unwrap());
        assert_amps(&out, &[c(FRAC_1_SQRT_2, 0.0); 2]);
    }

    #[test]
    fn exact_matrix_matches_state_map() {
        let m = exact_qft_matrix(3).unwrap();
        let via_states = matrix_of(3, |s| {
            *s = exact_qft(s);
            Ok(())
        })
        .unwrap();
        assert!(phase_distance(&m, &via_states).unwrap() < 1e-12);
    }

    #[test]
    fn angle_tables() {
        assert_eq!(theta(2).unwrap(), PI / 8.0);
        assert_eq!(alpha(1, 3, 1).unwrap(), PI / 16.0);
        assert_eq!(alpha(2, 3, 1).unwrap(), 0.0);
        assert!(theta(1).is_err());
        assert!(alpha(3, 3, 1).is_err());
    }

    #[test]
    fn three_qubit_plan_layout() {
        let plan = build_qft_plan(3).unwrap();
        assert_eq!(plan.blocks().len(), 2);
        let b1 = &plan.blocks()[0];
        assert_eq!(b1.couplings.coupling(1, 2).unwrap(), PI / 8.0);
        assert_eq!(b1.couplings.coupling(1, 3).unwrap(), PI / 16.0);
        assert_eq!(b1.couplings.coupling(2, 3).unwrap(), 0.0);
        let angles: Vec<f64> = b1.local_layer[1..].iter().map(|g| -g.angle).collect();
        assert_eq!(angles, vec![PI / 8.0, PI / 8.0, PI / 16.0, PI / 16.0]);
        let b2 = &plan.blocks()[1];
        assert_eq!(b2.couplings.couplings(), &[0.0, 0.0, PI / 8.0]);
        assert_eq!(b2.local_layer.len(), 3);

        let single = build_qft_plan(1).unwrap();
        assert!(single.blocks().is_empty());
        assert_eq!(single.final_hadamard().target, 1);
        assert!(build_qft_plan(0).is_err());
    }

    #[test]
    fn plan_matches_exact_transform() {
        for n in 1..=6 {
            let plan = build_qft_plan(n).unwrap();
            let d = phase_distance(&plan.matrix().unwrap(), &exact_qft_matrix(n).unwrap()).unwrap();
            assert!(d < 1e-9, "n={n}: {d}");
        }
    }

    #[test]
    fn circuit_gate_counts() {
        let plain = build_dqc_circuit(3, false).unwrap();
        let hadamards = plain
            .iter()
            .filter(|op| matches!(op, CircuitOp::Local(g) if g.generator == Generator::Hadamard))
            .count();
        let crs = plain
            .iter()
            .filter(|op| matches!(op, CircuitOp::ControlledRk { .. }))
            .count();
        assert_eq!((hadamards, crs, plain.len()), (3, 3, 6));

        let zz = build_dqc_circuit(3, true).unwrap();
        assert_eq!(zz.iter().filter(|op| op.is_entangler()).count(), 6);
    }

    #[test]
    fn both_circuit_modes_agree_with_exact() {
        for n in 1..=5 {
            let exact = exact_qft_matrix(n).unwrap();
            for zz in [false, true] {
                let ops = build_dqc_circuit(n, zz).unwrap();
                let m = matrix_of(n, |s| run_circuit(&ops, s, &mut Ideal)).unwrap();
                let d = phase_distance(&m, &exact).unwrap();
                assert!(d < 1e-9, "n={n} zz={zz}: {d}");
            }
        }
    }

    #[test]
    fn zz_sequence_rejects_same_qubit() {
        assert_eq!(zz_gate_sequence(0.1, 2, 2), Err(Error::SameQubit(2)));
        assert_eq!(zz_gate_sequence(0.1, 1, 2).unwrap().ops().len(), 7);
    }

    #[test]
    fn beta_family() {
        for n in 2..=6 {
            let w = w_state(n).unwrap();
            let g = ghz_state(n).unwrap();
            assert!(w.inner(&g).unwrap().norm() < 1e-15);
            assert_eq!(beta_state(n, 0.0).unwrap(), g);
            assert!(fidelity(&beta_state(n, PI / 2.0).unwrap(), &w).unwrap() > 1.0 - 1e-15);
            for b in [0.3, 1.1, 2.9] {
                assert!((beta_state(n, b).unwrap().norm() - 1.0).abs() < 1e-14);
            }
        }
        assert!(w_state(1).is_err());
        assert!(beta_state(1, 0.2).is_err());
    }
}
