use super::schedule::{build_bdaqc_schedule, build_sdaqc_schedule, DaqcSchedule, Mode};
use super::sign::solve_times;
use crate::perturb::Perturbation;
use crate::qft::QftPlan;
use crate::sim::{matrix_of, CMatrix, RotationGate, Statevector};
use crate::Result;

/// One compiled controlled-rotation block: its single-qubit layer, run
/// with the resource off, followed by the DAQC schedule of its ZZ target.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledBlock {
    pub local_layer: Vec<RotationGate>,
    pub schedule: DaqcSchedule,
}

/// A QFT compiled for a digital-analog device.
#[derive(Debug, Clone, PartialEq)]
pub struct QftProgram {
    n_qubits: usize,
    mode: Mode,
    blocks: Vec<CompiledBlock>,
    final_hadamard: RotationGate,
}

/// Compiles every block of `plan` into a DAQC schedule over the full
/// register. Fails for `n = 4`, where the sign matrix is singular.
pub fn compile_qft_daqc(plan: &QftPlan, mode: Mode, delta_t: f64) -> Result<QftProgram> {
    let blocks = plan
        .blocks()
        .iter()
        .map(|block| {
            let solution = solve_times(&block.couplings)?;
            let schedule = match mode {
                Mode::Stepwise => build_sdaqc_schedule(&solution)?,
                Mode::Banged => build_bdaqc_schedule(&solution, delta_t)?,
            };
            Ok(CompiledBlock {
                local_layer: block.local_layer.clone(),
                schedule,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QftProgram {
        n_qubits: plan.n_qubits(),
        mode,
        blocks,
        final_hadamard: plan.final_hadamard(),
    })
}

impl QftProgram {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn blocks(&self) -> &[CompiledBlock] {
        &self.blocks
    }

    /// Runs the program, including the readout permutation.
    pub fn execute(&self, state: &mut Statevector, noise: &mut dyn Perturbation) -> Result<()> {
        for block in &self.blocks {
            for g in &block.local_layer {
                state.apply_single(&g.to_gate(noise.single_qubit_scale()))?;
            }
            block.schedule.execute(state, noise)?;
        }
        state.apply_single(&self.final_hadamard.to_gate(noise.single_qubit_scale()))?;
        state.reverse_qubits();
        Ok(())
    }

    /// Dense matrix of the ideal program.
    pub fn matrix(&self) -> Result<CMatrix> {
        matrix_of(self.n_qubits, |s| self.execute(s, &mut crate::perturb::Ideal))
    }
}
