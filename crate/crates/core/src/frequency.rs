//! Turns a trained network back into a row-stochastic transition matrix by
//! evaluating it on every nonempty pattern of fired emotion-group inputs.

use serde::{Deserialize, Serialize};

use crate::emotion::GROUP_COUNT;
use crate::error::{Error, Result};
use crate::mstn::{Grid, MentalState, TransitionMatrix, STATE_COUNT};
use crate::rnn::{forward, one_hot, NetWeights, Step, Topology, TrainingSequence};

/// `2^9 - 1`.
pub const PATTERN_COUNT: usize = (1 << GROUP_COUNT) - 1;

/// Rows are current states, columns next states, both in canonical order.
pub type FrequencyMatrix = TransitionMatrix;

/// A nonempty set of fired group inputs; each fired input carries `1 / |fired|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiringPattern {
    mask: u16,
}

impl FiringPattern {
    pub fn from_mask(mask: u16) -> Option<Self> {
        (mask != 0 && (mask as usize) <= PATTERN_COUNT).then_some(FiringPattern { mask })
    }

    pub fn mask(self) -> u16 {
        self.mask
    }

    pub fn fired(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn values(self) -> [f64; GROUP_COUNT] {
        let share = 1.0 / self.fired() as f64;
        let mut v = [0.0; GROUP_COUNT];
        for (slot, value) in v.iter_mut().enumerate() {
            if self.mask & (1 << slot) != 0 {
                *value = share;
            }
        }
        v
    }
}

/// All 511 patterns in ascending bitmask order (bit `k` is group `k + 1`).
pub fn enumerate_patterns() -> Vec<FiringPattern> {
    (1..=PATTERN_COUNT as u16).map(|mask| FiringPattern { mask }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrequencyMode {
    /// Average output activations over all patterns, then normalize the row.
    #[default]
    MeanActivation,
    /// Count which output wins for each pattern (lowest index on ties).
    ArgmaxCount,
}

impl std::str::FromStr for FrequencyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" | "mean-activation" => Ok(FrequencyMode::MeanActivation),
            "argmax" | "argmax-count" => Ok(FrequencyMode::ArgmaxCount),
            other => Err(Error::Config(format!("unknown frequency mode `{other}`"))),
        }
    }
}

/// Output activations for one pattern from a clean start in state `current`.
pub fn pattern_outputs(weights: &NetWeights, topo: &Topology, current: MentalState, pattern: FiringPattern) -> Result<[f64; STATE_COUNT]> {
    let mut input = Vec::with_capacity(topo.n_in());
    input.extend_from_slice(&pattern.values());
    input.extend(one_hot(current));
    let seq = TrainingSequence::new(vec![Step {
        input,
        target: vec![0.0; STATE_COUNT],
    }]);
    let trace = forward(weights, topo, &seq)?;
    let mut out = [0.0; STATE_COUNT];
    out.copy_from_slice(trace.outputs(topo, 0));
    Ok(out)
}

pub fn transition_matrix_from_net(weights: &NetWeights, topo: &Topology, mode: FrequencyMode) -> Result<FrequencyMatrix> {
    transition_matrix_over(weights, topo, mode, &enumerate_patterns())
}

/// Same as [`transition_matrix_from_net`] over an explicit pattern list.
pub fn transition_matrix_over(
    weights: &NetWeights,
    topo: &Topology,
    mode: FrequencyMode,
    patterns: &[FiringPattern],
) -> Result<FrequencyMatrix> {
    if patterns.is_empty() {
        return Err(Error::Consistency("no firing patterns to evaluate".into()));
    }
    let mut rows: Grid = [[0.0; STATE_COUNT]; STATE_COUNT];
    for current in MentalState::ALL {
        let row = &mut rows[current.index()];
        match mode {
            FrequencyMode::MeanActivation => {
                let mut sums = [0.0; STATE_COUNT];
                for &p in patterns {
                    let out = pattern_outputs(weights, topo, current, p)?;
                    for (s, o) in sums.iter_mut().zip(out) {
                        *s += o;
                    }
                }
                let total: f64 = sums.iter().sum();
                if !(total > 0.0) {
                    return Err(Error::Consistency(format!("row {current} has no output mass")));
                }
                for (r, s) in row.iter_mut().zip(sums) {
                    *r = s / total;
                }
            }
            FrequencyMode::ArgmaxCount => {
                let mut wins = [0usize; STATE_COUNT];
                for &p in patterns {
                    let out = pattern_outputs(weights, topo, current, p)?;
                    let mut best = 0;
                    for k in 1..STATE_COUNT {
                        if out[k] > out[best] {
                            best = k;
                        }
                    }
                    wins[best] += 1;
                }
                for (r, w) in row.iter_mut().zip(wins) {
                    *r = w as f64 / patterns.len() as f64;
                }
            }
        }
    }
    TransitionMatrix::from_rows(rows).map_err(|e| Error::Consistency(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellChange {
    pub from: MentalState,
    pub to: MentalState,
    pub delta: f64,
}

/// Cells where `after - before` exceeds `threshold`, largest increase first.
pub fn compare_matrices(before: &Grid, after: &Grid, threshold: f64) -> Vec<CellChange> {
    let mut cells: Vec<CellChange> = MentalState::ALL
        .into_iter()
        .flat_map(|from| MentalState::ALL.into_iter().map(move |to| (from, to)))
        .filter_map(|(from, to)| {
            let delta = after[from.index()][to.index()] - before[from.index()][to.index()];
            (delta > threshold).then_some(CellChange { from, to, delta })
        })
        .collect();
    cells.sort_by(|a, b| b.delta.total_cmp(&a.delta));
    cells
}
