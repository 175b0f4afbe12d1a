//! The seven-state mental state transition network.
//!
//! Transition probabilities come either from observed counts or from the
//! baseline questionnaire table; the cost of a transition is one minus its
//! probability. A stimulus (nonzero emotion vector) moves the network to the
//! target state of the group with the best intensity-to-cost ratio, and the
//! absence of a stimulus lets the state drift by sampling the baseline row.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::emotion::{EmotionGroup, EmotionVector};
use crate::error::{Error, Result};

pub const STATE_COUNT: usize = 7;

/// Row-stochastic tolerance for computed matrices.
pub const STOCHASTIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MentalState {
    Happy,
    Quiet,
    Sad,
    Surprise,
    Angry,
    Fear,
    Disgust,
}

impl MentalState {
    /// Canonical order: the row/column order of the baseline table.
    pub const ALL: [MentalState; STATE_COUNT] = [
        MentalState::Happy,
        MentalState::Quiet,
        MentalState::Sad,
        MentalState::Surprise,
        MentalState::Angry,
        MentalState::Fear,
        MentalState::Disgust,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> MentalState {
        MentalState::ALL[index]
    }

    pub fn name(self) -> &'static str {
        match self {
            MentalState::Happy => "happy",
            MentalState::Quiet => "quiet",
            MentalState::Sad => "sad",
            MentalState::Surprise => "surprise",
            MentalState::Angry => "angry",
            MentalState::Fear => "fear",
            MentalState::Disgust => "disgust",
        }
    }

    /// Display label used by the learned-matrix tables, where Quiet is printed as "Normal".
    pub fn table_label(self) -> &'static str {
        match self {
            MentalState::Happy => "Happy",
            MentalState::Quiet => "Normal",
            MentalState::Sad => "Sad",
            MentalState::Surprise => "Surprise",
            MentalState::Angry => "Angry",
            MentalState::Fear => "Fear",
            MentalState::Disgust => "Disgust",
        }
    }
}

impl fmt::Display for MentalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MentalState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let state = match s.trim().to_ascii_lowercase().as_str() {
            "happy" => MentalState::Happy,
            "quiet" | "normal" => MentalState::Quiet,
            "sad" => MentalState::Sad,
            "surprise" | "surprize" => MentalState::Surprise,
            "angry" | "anger" => MentalState::Angry,
            "fear" => MentalState::Fear,
            "disgust" => MentalState::Disgust,
            _ => return Err(Error::UnknownState(s.to_string())),
        };
        Ok(state)
    }
}

impl Serialize for MentalState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for MentalState {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Grid = [[f64; STATE_COUNT]; STATE_COUNT];

/// Observed transition counts, `counts[from][to]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TransitionCount {
    counts: [[u64; STATE_COUNT]; STATE_COUNT],
}

impl TransitionCount {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: [[u64; STATE_COUNT]; STATE_COUNT]) -> Self {
        TransitionCount { counts }
    }

    pub fn get(&self, from: MentalState, to: MentalState) -> u64 {
        self.counts[from.index()][to.index()]
    }

    pub fn record(&mut self, from: MentalState, to: MentalState) {
        self.counts[from.index()][to.index()] += 1;
    }

    pub fn row_total(&self, from: MentalState) -> u64 {
        self.counts[from.index()].iter().sum()
    }
}

/// Returns `counts` with `counts[from][to]` incremented.
pub fn record_transition(mut counts: TransitionCount, from: MentalState, to: MentalState) -> TransitionCount {
    counts.record(from, to);
    counts
}

/// Row-stochastic 7x7 matrix; `p[i][j]` is the probability of moving from
/// state `i` to state `j` in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Grid", into = "Grid")]
pub struct TransitionMatrix {
    p: Grid,
}

impl TransitionMatrix {
    /// Validates entries in `[0, 1]` and row sums within [`STOCHASTIC_TOLERANCE`].
    pub fn from_rows(p: Grid) -> Result<Self> {
        for (i, row) in p.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({}, {}) = {v} is not a probability",
                        MentalState::from_index(i),
                        MentalState::from_index(j)
                    )));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOLERANCE {
                return Err(Error::InvalidMatrix(format!(
                    "row {} sums to {sum}, not 1",
                    MentalState::from_index(i)
                )));
            }
        }
        Ok(TransitionMatrix { p })
    }

    /// Divides each row by its sum. Rows must be nonnegative with a positive sum.
    pub fn normalized(rows: Grid) -> Result<Self> {
        let mut p = rows;
        for (i, row) in p.iter_mut().enumerate() {
            if row.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has a negative or non-finite entry",
                    MentalState::from_index(i)
                )));
            }
            let sum: f64 = row.iter().sum();
            if sum <= 0.0 {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has zero mass",
                    MentalState::from_index(i)
                )));
            }
            for v in row.iter_mut() {
                *v /= sum;
            }
        }
        TransitionMatrix::from_rows(p)
    }

    pub fn uniform() -> Self {
        TransitionMatrix {
            p: [[1.0 / STATE_COUNT as f64; STATE_COUNT]; STATE_COUNT],
        }
    }

    pub fn get(&self, from: MentalState, to: MentalState) -> f64 {
        self.p[from.index()][to.index()]
    }

    pub fn row(&self, from: MentalState) -> &[f64; STATE_COUNT] {
        &self.p[from.index()]
    }

    pub fn rows(&self) -> &Grid {
        &self.p
    }

    pub fn costs(&self) -> CostMatrix {
        let mut cost = [[0.0; STATE_COUNT]; STATE_COUNT];
        for i in 0..STATE_COUNT {
            for j in 0..STATE_COUNT {
                cost[i][j] = 1.0 - self.p[i][j];
            }
        }
        CostMatrix { cost }
    }
}

impl TryFrom<Grid> for TransitionMatrix {
    type Error = Error;
    fn try_from(p: Grid) -> Result<Self> {
        TransitionMatrix::from_rows(p)
    }
}

impl From<TransitionMatrix> for Grid {
    fn from(m: TransitionMatrix) -> Grid {
        m.p
    }
}

/// Transition costs, `1 - p` elementwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostMatrix {
    cost: Grid,
}

impl CostMatrix {
    pub fn get(&self, from: MentalState, to: MentalState) -> f64 {
        self.cost[from.index()][to.index()]
    }

    pub fn rows(&self) -> &Grid {
        &self.cost
    }
}

/// Probabilities and costs from observed counts. Rows without observations
/// fall back to the uniform distribution.
pub fn cost_from_counts(counts: &TransitionCount) -> (TransitionMatrix, CostMatrix) {
    let mut p = [[0.0; STATE_COUNT]; STATE_COUNT];
    for from in MentalState::ALL {
        let total = counts.row_total(from);
        let row = &mut p[from.index()];
        if total == 0 {
            row.fill(1.0 / STATE_COUNT as f64);
        } else {
            for to in MentalState::ALL {
                row[to.index()] = counts.get(from, to) as f64 / total as f64;
            }
        }
    }
    let matrix = TransitionMatrix { p };
    (matrix, matrix.costs())
}

/// State that a stimulus from `group` pushes the network towards.
pub fn group_target(group: EmotionGroup) -> MentalState {
    match group.index() {
        1 | 2 => MentalState::Happy,
        3..=5 => MentalState::Sad,
        6 => MentalState::Disgust,
        7 => MentalState::Angry,
        8 => MentalState::Fear,
        9 => MentalState::Surprise,
        other => unreachable!("group index {other} outside 1..=9"),
    }
}

/// Stimulus-driven move: picks the group maximizing `e_k / cost(cur, target(k))`.
///
/// A zero cost scores as infinity. Ties go to the lowest group index.
pub fn next_state(cur: MentalState, e: &EmotionVector, costs: &CostMatrix) -> Result<(MentalState, EmotionGroup)> {
    if e.is_zero() {
        return Err(Error::NoStimulus);
    }
    let mut best: Option<(f64, EmotionGroup)> = None;
    for group in EmotionGroup::all() {
        let intensity = e.get(group);
        let score = if intensity <= 0.0 {
            0.0
        } else {
            let cost = costs.get(cur, group_target(group));
            if cost <= 0.0 {
                f64::INFINITY
            } else {
                intensity / cost
            }
        };
        if best.map_or(true, |(s, _)| score > s) {
            best = Some((score, group));
        }
    }
    let (_, group) = best.expect("nine candidate groups");
    Ok((group_target(group), group))
}

/// Spontaneous drift without stimulus: samples the next state from row `cur`.
pub fn idle_transition<R: Rng + ?Sized>(cur: MentalState, base: &TransitionMatrix, rng: &mut R) -> Result<MentalState> {
    let dist = WeightedIndex::new(base.row(cur))
        .map_err(|e| Error::InvalidMatrix(format!("row {cur} cannot be sampled: {e}")))?;
    Ok(MentalState::from_index(dist.sample(rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table1;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(i: u8) -> EmotionGroup {
        EmotionGroup::new(i).unwrap()
    }

    #[test]
    fn counts_to_costs() {
        let mut c = [[0u64; STATE_COUNT]; STATE_COUNT];
        c[0] = [3, 7, 0, 0, 0, 0, 0];
        c[2] = [1, 1, 1, 1, 1, 1, 1];
        let (p, cost) = cost_from_counts(&TransitionCount::from_counts(c));
        assert!((p.get(MentalState::Happy, MentalState::Happy) - 0.3).abs() < 1e-15);
        assert!((cost.get(MentalState::Happy, MentalState::Happy) - 0.7).abs() < 1e-15);
        // Quiet has no observations.
        for j in MentalState::ALL {
            assert!((p.get(MentalState::Quiet, j) - 1.0 / 7.0).abs() < 1e-15);
            assert!((cost.get(MentalState::Quiet, j) - 6.0 / 7.0).abs() < 1e-15);
            assert!((cost.get(MentalState::Sad, j) - 0.857142857142857).abs() < 1e-12);
        }
    }

    #[test]
    fn record_then_cost() {
        let counts = record_transition(TransitionCount::new(), MentalState::Quiet, MentalState::Sad);
        assert_eq!(counts.get(MentalState::Quiet, MentalState::Sad), 1);
        let counts = record_transition(counts, MentalState::Quiet, MentalState::Sad);
        assert_eq!(counts.get(MentalState::Quiet, MentalState::Sad), 2);
        assert_eq!(counts.row_total(MentalState::Quiet), 2);
        let single = record_transition(TransitionCount::new(), MentalState::Quiet, MentalState::Sad);
        let (_, cost) = cost_from_counts(&single);
        assert_eq!(cost.get(MentalState::Quiet, MentalState::Sad), 0.0);
    }

    #[test]
    fn group_targets() {
        let targets: Vec<MentalState> = EmotionGroup::all().map(group_target).collect();
        use MentalState::*;
        assert_eq!(targets, vec![Happy, Happy, Sad, Sad, Sad, Disgust, Angry, Fear, Surprise]);
        for s in [Happy, Sad, Surprise, Angry, Fear, Disgust] {
            assert!(targets.contains(&s));
        }
        assert!(!targets.contains(&Quiet));
    }

    #[test]
    fn stimulus_from_quiet() {
        let t1 = table1();
        // Hand evaluation with the printed values: 0.8 / (1 - 0.213) and 0.3 / (1 - 0.090).
        let happy_score = 0.8 / (1.0 - t1.verbatim_entry(MentalState::Quiet, MentalState::Happy));
        let sad_score = 0.3 / (1.0 - t1.verbatim_entry(MentalState::Quiet, MentalState::Sad));
        assert!((happy_score - 1.0165).abs() < 1e-4);
        assert!((sad_score - 0.3297).abs() < 1e-4);

        let e = EmotionVector::new([0.0, 0.8, 0.0, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let next = next_state(MentalState::Quiet, &e, &t1.matrix().costs()).unwrap();
        assert_eq!(next, (MentalState::Happy, group(2)));
    }

    #[test]
    fn single_candidate_and_ties() {
        let costs = table1().matrix().costs();
        let e = EmotionVector::single(group(9), 0.01).unwrap();
        for s in MentalState::ALL {
            assert_eq!(next_state(s, &e, &costs).unwrap(), (MentalState::Surprise, group(9)));
        }
        let e = EmotionVector::new([0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(next_state(MentalState::Sad, &e, &costs).unwrap(), (MentalState::Happy, group(1)));
    }

    #[test]
    fn zero_cost_is_certain() {
        let single = record_transition(TransitionCount::new(), MentalState::Quiet, MentalState::Sad);
        let (_, cost) = cost_from_counts(&single);
        // Sadness at a tiny intensity beats strong joy because Quiet -> Sad has cost 0.
        let e = EmotionVector::new([0.0, 5.0, 0.0, 0.001, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(next_state(MentalState::Quiet, &e, &cost).unwrap(), (MentalState::Sad, group(4)));
        // Two infinite scores: lowest group wins.
        let e = EmotionVector::new([0.0, 0.0, 0.2, 0.9, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(next_state(MentalState::Quiet, &e, &cost).unwrap(), (MentalState::Sad, group(3)));
    }

    #[test]
    fn zero_vector_is_rejected() {
        let costs = TransitionMatrix::uniform().costs();
        assert!(matches!(
            next_state(MentalState::Quiet, &EmotionVector::ZERO, &costs),
            Err(Error::NoStimulus)
        ));
    }

    #[test]
    fn idle_point_mass_and_determinism() {
        let mut rows = [[0.0; STATE_COUNT]; STATE_COUNT];
        for row in rows.iter_mut() {
            row[MentalState::Fear.index()] = 1.0;
        }
        let m = TransitionMatrix::from_rows(rows).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            assert_eq!(idle_transition(MentalState::Happy, &m, &mut rng).unwrap(), MentalState::Fear);
        }

        let t1 = table1();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| idle_transition(MentalState::Quiet, t1.matrix(), &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
    }

    #[test]
    fn idle_frequencies_match_quiet_row() {
        let t1 = table1();
        let mut rng = ChaCha8Rng::seed_from_u64(2014);
        let mut hits = [0usize; STATE_COUNT];
        let n = 100_000;
        for _ in 0..n {
            hits[idle_transition(MentalState::Quiet, t1.matrix(), &mut rng).unwrap().index()] += 1;
        }
        let expected = [0.213, 0.509, 0.090, 0.055, 0.039, 0.051, 0.042];
        for (h, e) in hits.iter().zip(expected) {
            assert!((*h as f64 / n as f64 - e).abs() < 0.01, "{hits:?}");
        }
    }

    #[test]
    fn non_stochastic_rows_rejected() {
        let mut rows = [[1.0 / 7.0; STATE_COUNT]; STATE_COUNT];
        rows[3][0] = 0.5;
        assert!(matches!(TransitionMatrix::from_rows(rows), Err(Error::InvalidMatrix(_))));
        rows[3][0] = -0.1;
        assert!(TransitionMatrix::from_rows(rows).is_err());
    }

    #[test]
    fn state_aliases() {
        assert_eq!("Normal".parse::<MentalState>().unwrap(), MentalState::Quiet);
        assert_eq!("quiet".parse::<MentalState>().unwrap(), MentalState::Quiet);
        assert_eq!("Anger".parse::<MentalState>().unwrap(), MentalState::Angry);
        assert!("calm".parse::<MentalState>().is_err());
    }

    proptest! {
        #[test]
        fn counts_give_stochastic_rows(counts in prop::array::uniform7(prop::array::uniform7(0u64..50))) {
            let (p, cost) = cost_from_counts(&TransitionCount::from_counts(counts));
            for i in 0..STATE_COUNT {
                let sum: f64 = p.rows()[i].iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-9);
                for j in 0..STATE_COUNT {
                    prop_assert_eq!(cost.rows()[i][j], 1.0 - p.rows()[i][j]);
                }
            }
        }

        #[test]
        fn next_state_scale_invariant(
            values in prop::array::uniform9(0.0f64..2.0),
            scale in 0.01f64..100.0,
            cur in 0usize..STATE_COUNT,
        ) {
            let e = EmotionVector::new(values).unwrap();
            prop_assume!(!e.is_zero());
            let scaled = EmotionVector::new(values.map(|v| v * scale)).unwrap();
            let costs = table1().matrix().costs();
            let s = MentalState::from_index(cur);
            prop_assert_eq!(next_state(s, &e, &costs).unwrap(), next_state(s, &scaled, &costs).unwrap());
        }
    }
}
