//! Big Five trait scores read off a transition matrix.
//!
//! Each (current, next) cell may load on several traits, some with reversed
//! meaning. A trait's score is the signed sum of the probabilities of the
//! cells that load on it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::mstn::{Grid, MentalState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Trait {
    Openness,
    Conscientiousness,
    Extraversion,
    Agreeableness,
    Neuroticism,
}

impl Trait {
    pub const ALL: [Trait; 5] = [
        Trait::Openness,
        Trait::Conscientiousness,
        Trait::Extraversion,
        Trait::Agreeableness,
        Trait::Neuroticism,
    ];
}

impl fmt::Display for Trait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A trait loading with sign `+1` or `-1` (reversed meaning).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loading {
    pub trait_: Trait,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TraitMapping {
    entries: BTreeMap<(MentalState, MentalState), Vec<Loading>>,
}

impl TraitMapping {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, from: MentalState, to: MentalState, trait_: Trait, sign: i8) {
        assert!(sign == 1 || sign == -1, "loading sign must be +1 or -1");
        self.entries
            .entry((from, to))
            .or_default()
            .push(Loading { trait_, sign });
    }

    pub fn get(&self, from: MentalState, to: MentalState) -> Option<&[Loading]> {
        self.entries.get(&(from, to)).map(Vec::as_slice)
    }

    pub fn cells(&self) -> impl Iterator<Item = (MentalState, MentalState, &[Loading])> {
        self.entries.iter().map(|((f, t), l)| (*f, *t, l.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The built-in cell-to-trait table.
///
/// The source table lists a second "Fear" block and no "Disgust" block; the
/// second block is read as Disgust. "Anger" is read as Angry.
pub fn builtin_mapping() -> TraitMapping {
    use MentalState::*;
    use Trait::*;
    const P: i8 = 1;
    const N: i8 = -1;

    // (current, next, loadings), in the table's own row order.
    let rows: &[(MentalState, MentalState, &[(Trait, i8)])] = &[
        (Surprise, Surprise, &[(Neuroticism, P)]),
        (Surprise, Happy, &[(Conscientiousness, P), (Neuroticism, P)]),
        (Surprise, Sad, &[(Agreeableness, P)]),
        (Surprise, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Surprise, Disgust, &[(Conscientiousness, N)]),
        (Surprise, Fear, &[(Agreeableness, P)]),
        (Surprise, Quiet, &[(Openness, N), (Extraversion, P)]),
        (Happy, Surprise, &[(Neuroticism, P)]),
        (Happy, Happy, &[(Openness, P), (Conscientiousness, P), (Neuroticism, P)]),
        (Happy, Sad, &[(Agreeableness, P)]),
        (Happy, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Happy, Disgust, &[(Conscientiousness, N)]),
        (Happy, Fear, &[(Agreeableness, P)]),
        (Happy, Quiet, &[(Openness, N), (Extraversion, P)]),
        (Sad, Happy, &[(Agreeableness, P)]),
        (Sad, Sad, &[(Agreeableness, P), (Extraversion, N)]),
        (Sad, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Sad, Disgust, &[(Conscientiousness, N)]),
        (Sad, Fear, &[(Agreeableness, P)]),
        (Sad, Quiet, &[(Agreeableness, N), (Openness, N), (Extraversion, P)]),
        (Angry, Sad, &[(Agreeableness, P)]),
        (Angry, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Angry, Disgust, &[(Conscientiousness, N)]),
        (Angry, Fear, &[(Agreeableness, P)]),
        (Angry, Quiet, &[(Openness, N), (Extraversion, P)]),
        (Fear, Sad, &[(Agreeableness, P)]),
        (Fear, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Fear, Disgust, &[(Extraversion, N), (Conscientiousness, N)]),
        (Fear, Fear, &[(Agreeableness, P)]),
        (Fear, Quiet, &[(Openness, N), (Extraversion, P)]),
        (Disgust, Sad, &[(Agreeableness, P)]),
        (Disgust, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Disgust, Disgust, &[(Conscientiousness, N)]),
        (Disgust, Fear, &[(Agreeableness, P)]),
        (Disgust, Quiet, &[(Openness, N), (Extraversion, P)]),
        (Quiet, Surprise, &[(Neuroticism, P)]),
        (Quiet, Happy, &[(Openness, P), (Conscientiousness, P), (Neuroticism, P)]),
        (Quiet, Sad, &[(Agreeableness, P)]),
        (Quiet, Angry, &[(Extraversion, N), (Conscientiousness, N)]),
        (Quiet, Disgust, &[(Conscientiousness, N)]),
        (Quiet, Fear, &[(Agreeableness, P)]),
        (Quiet, Quiet, &[(Openness, N), (Extraversion, P), (Conscientiousness, N)]),
    ];

    let mut mapping = TraitMapping::new();
    for &(from, to, loadings) in rows {
        for &(t, s) in loadings {
            mapping.insert(from, to, t, s);
        }
    }
    mapping
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraitScore {
    #[serde(rename = "trait")]
    pub trait_: Trait,
    pub score: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraitScores {
    pub scores: Vec<TraitScore>,
}

impl TraitScores {
    pub fn get(&self, t: Trait) -> &TraitScore {
        self.scores
            .iter()
            .find(|s| s.trait_ == t)
            .expect("every trait is scored")
    }
}

/// `score(T) = sum of sign * p[c][n]` over cells mapped to `T`.
pub fn trait_scores(matrix: &Grid, mapping: &TraitMapping) -> TraitScores {
    let scores = Trait::ALL
        .iter()
        .map(|&t| {
            let mut score = 0.0;
            let mut support = 0;
            for (from, to, loadings) in mapping.cells() {
                for l in loadings.iter().filter(|l| l.trait_ == t) {
                    score += f64::from(l.sign) * matrix[from.index()][to.index()];
                    support += 1;
                }
            }
            TraitScore { trait_: t, score, support }
        })
        .collect();
    TraitScores { scores }
}

/// A cell's signed contribution to one trait.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub from: MentalState,
    pub to: MentalState,
    pub value: f64,
}

/// The `n` cells with the largest absolute contribution to `t`.
pub fn top_contributions(matrix: &Grid, mapping: &TraitMapping, t: Trait, n: usize) -> Vec<Contribution> {
    let mut all: Vec<Contribution> = mapping
        .cells()
        .flat_map(|(from, to, loadings)| {
            loadings.iter().filter(move |l| l.trait_ == t).map(move |l| Contribution {
                from,
                to,
                value: f64::from(l.sign) * matrix[from.index()][to.index()],
            })
        })
        .collect();
    all.sort_by(|a, b| b.value.abs().total_cmp(&a.value.abs()));
    all.truncate(n);
    all
}
