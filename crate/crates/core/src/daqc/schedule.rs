use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sign::{unvectorize_pair, TimeSolution};
use crate::perturb::Perturbation;
use crate::sim::{
    evolve_diagonal, evolve_driven_diagonal, pair_count, IsingSpec, RotationGate, Statevector,
};
use crate::{Error, Result};

/// Default banged rotation window, in units where `g = 1`, `t_F = 1`.
pub const DEFAULT_DELTA_T: f64 = 0.002;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Resource switched off while conjugation pulses are applied.
    Stepwise,
    /// Resource always on; pulses are driven on top of it.
    Banged,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Stepwise => "stepwise",
            Mode::Banged => "banged",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "stepwise" | "sdaqc" => Ok(Mode::Stepwise),
            "banged" | "bdaqc" => Ok(Mode::Banged),
            other => Err(Error::Parse(format!("unknown schedule mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleItem {
    pub alpha: usize,
    pub pair: (usize, usize),
    pub duration: f64,
}

/// One step of a banged schedule.
#[derive(Debug, Clone, PartialEq)]
pub enum BangedStep {
    /// Drive window of length `delta_t` flipping `qubits`, resource on.
    Pulse { qubits: Vec<usize> },
    /// Free resource evolution between two pulses. May be negative.
    Segment { alpha: usize, duration: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DaqcSchedule {
    mode: Mode,
    items: Vec<ScheduleItem>,
    delta_t: Option<f64>,
    resource: IsingSpec,
    energies: Vec<f64>,
}

fn items_from(solution: &TimeSolution) -> Result<Vec<ScheduleItem>> {
    let n = solution.resource.n_qubits();
    if solution.times.len() != pair_count(n) {
        return Err(Error::DimensionMismatch {
            expected: pair_count(n),
            found: solution.times.len(),
        });
    }
    solution
        .times
        .iter()
        .enumerate()
        .map(|(i, &duration)| {
            Ok(ScheduleItem {
                alpha: i + 1,
                pair: unvectorize_pair(i + 1, n)?,
                duration,
            })
        })
        .collect()
}

pub fn build_sdaqc_schedule(solution: &TimeSolution) -> Result<DaqcSchedule> {
    Ok(DaqcSchedule {
        mode: Mode::Stepwise,
        items: items_from(solution)?,
        delta_t: None,
        energies: solution.resource.energies(),
        resource: solution.resource.clone(),
    })
}

pub fn build_bdaqc_schedule(solution: &TimeSolution, delta_t: f64) -> Result<DaqcSchedule> {
    if !(delta_t > 0.0 && delta_t.is_finite()) {
        return Err(Error::InvalidDeltaT(delta_t));
    }
    Ok(DaqcSchedule {
        mode: Mode::Banged,
        items: items_from(solution)?,
        delta_t: Some(delta_t),
        energies: solution.resource.energies(),
        resource: solution.resource.clone(),
    })
}

fn symmetric_difference(a: (usize, usize), b: (usize, usize)) -> Vec<usize> {
    let mut out: Vec<usize> = [a.0, a.1, b.0, b.1]
        .into_iter()
        .filter(|q| [a.0, a.1].contains(q) != [b.0, b.1].contains(q))
        .collect();
    out.sort_unstable();
    out
}

impl DaqcSchedule {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn items(&self) -> &[ScheduleItem] {
        &self.items
    }

    pub fn delta_t(&self) -> Option<f64> {
        self.delta_t
    }

    pub fn resource(&self) -> &IsingSpec {
        &self.resource
    }

    pub fn n_qubits(&self) -> usize {
        self.resource.n_qubits()
    }

    /// Total analog time, the sum of all block durations.
    pub fn total_time(&self) -> f64 {
        self.items.iter().map(|i| i.duration).sum()
    }

    /// Stepwise conjugation layers: each block is wrapped by its own
    /// `X_n X_m` layer on both sides.
    pub fn stepwise_layer_count(&self) -> usize {
        2 * self.items.len()
    }

    /// Banged timeline. Adjacent conjugation layers are merged into one
    /// pulse over their symmetric difference; the first and last pulses
    /// belong wholly to the first and last blocks, every other pulse is
    /// split evenly between its neighbours. Interior segments therefore last
    /// `t - dt`, the outer ones `t - 3 dt / 2` (`t - 2 dt` for a single
    /// block), and the total equals the stepwise analog time.
    pub fn banged_steps(&self) -> Vec<BangedStep> {
        let dt = self.delta_t.unwrap_or(0.0);
        let m = self.items.len();
        let mut steps = Vec::with_capacity(2 * m + 1);
        for (i, item) in self.items.iter().enumerate() {
            let qubits = if i == 0 {
                vec![item.pair.0, item.pair.1]
            } else {
                symmetric_difference(self.items[i - 1].pair, item.pair)
            };
            steps.push(BangedStep::Pulse { qubits });
            let own = match (i == 0, i + 1 == m) {
                (true, true) => 2.0,
                (true, false) | (false, true) => 1.5,
                (false, false) => 1.0,
            };
            steps.push(BangedStep::Segment {
                alpha: item.alpha,
                duration: item.duration - own * dt,
            });
        }
        if let Some(last) = self.items.last() {
            steps.push(BangedStep::Pulse {
                qubits: vec![last.pair.0, last.pair.1],
            });
        }
        steps
    }

    /// True when some banged segment has negative duration; such segments
    /// are simulated as negative-time evolution.
    pub fn has_negative_segments(&self) -> bool {
        self.mode == Mode::Banged
            && self.banged_steps().iter().any(
                |s| matches!(s, BangedStep::Segment { duration, .. } if *duration < 0.0),
            )
    }

    /// `alpha n m duration`, one item per line.
    pub fn dump(&self) -> String {
        self.items
            .iter()
            .map(|i| format!("{} {} {} {:.12}\n", i.alpha, i.pair.0, i.pair.1, i.duration))
            .collect()
    }

    fn check_register(&self, state: &Statevector) -> Result<()> {
        if state.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                found: state.n_qubits(),
            });
        }
        Ok(())
    }

    pub fn execute(&self, state: &mut Statevector, noise: &mut dyn Perturbation) -> Result<()> {
        self.check_register(state)?;
        match self.mode {
            Mode::Stepwise => self.execute_stepwise(state, noise),
            Mode::Banged => self.execute_banged(state, noise),
        }
    }

    fn execute_stepwise(&self, state: &mut Statevector, noise: &mut dyn Perturbation) -> Result<()> {
        for item in &self.items {
            let layer = [RotationGate::x_pulse(item.pair.0), RotationGate::x_pulse(item.pair.1)];
            for g in &layer {
                state.apply_single(&g.to_gate(noise.single_qubit_scale()))?;
            }
            let t = item.duration + noise.analog_offset(Mode::Stepwise);
            evolve_diagonal(state, &self.energies, t)?;
            for g in &layer {
                state.apply_single(&g.to_gate(noise.single_qubit_scale()))?;
            }
        }
        Ok(())
    }

    fn execute_banged(&self, state: &mut Statevector, noise: &mut dyn Perturbation) -> Result<()> {
        let dt = self.delta_t.ok_or(Error::InvalidDeltaT(0.0))?;
        let amplitude = PI / (2.0 * dt);
        for step in self.banged_steps() {
            match step {
                BangedStep::Pulse { qubits } => {
                    let drive: Vec<(usize, f64)> = qubits
                        .iter()
                        .map(|&q| (q, amplitude * noise.single_qubit_scale()))
                        .collect();
                    evolve_driven_diagonal(state, &self.energies, &drive, dt)?;
                }
                BangedStep::Segment { duration, .. } => {
                    let t = duration + noise.analog_offset(Mode::Banged);
                    evolve_diagonal(state, &self.energies, t)?;
                }
            }
        }
        Ok(())
    }
}

/// `execute_schedule` with an optional noise source.
pub fn execute_schedule(
    state: &mut Statevector,
    schedule: &DaqcSchedule,
    noise: Option<&mut dyn Perturbation>,
) -> Result<()> {
    match noise {
        Some(n) => schedule.execute(state, n),
        None => schedule.execute(state, &mut crate::perturb::Ideal),
    }
}

/// Parses the `alpha n m duration` dump format; `#` starts a comment.
pub fn parse_schedule_dump(text: &str) -> Result<Vec<ScheduleItem>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("expected 'alpha n m duration', got '{l}'")));
            }
            let int = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("'{s}': {e}")))
            };
            Ok(ScheduleItem {
                alpha: int(f[0])?,
                pair: (int(f[1])?, int(f[2])?),
                duration: f[3]
                    .parse()
                    .map_err(|e| Error::Parse(format!("'{}': {e}", f[3])))?,
            })
        })
        .collect()
}
