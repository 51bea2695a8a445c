//! Digital-analog compilation: arbitrary all-to-all ZZ targets are
//! rewritten as a homogeneous Ising resource sliced into blocks and
//! sandwiched by `X_n X_m` conjugations.

mod program;
mod schedule;
mod sign;

pub use crate::sim::IsingSpec;
pub use program::{compile_qft_daqc, CompiledBlock, QftProgram};
pub use schedule::{
    build_bdaqc_schedule, build_sdaqc_schedule, execute_schedule, parse_schedule_dump,
    BangedStep, DaqcSchedule, Mode, ScheduleItem, DEFAULT_DELTA_T,
};
pub use sign::{
    sign_matrix, solve_times, unvectorize_pair, vectorize_pair, SignMatrix, TimeSolution,
    RESIDUAL_TOLERANCE,
};
