//! End-to-end orchestration: replay scenario episodes through the network,
//! clean them with profit sharing, train the recurrent network, and read back
//! the learned transition matrix and trait scores.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::emotion::{EmotionGroup, EmotionVector};
use crate::error::{Error, Result};
use crate::fixtures::{load_table1_verified, sha256_hex, table1};
use crate::frequency::{compare_matrices, enumerate_patterns, transition_matrix_from_net, CellChange, FrequencyMatrix, FrequencyMode};
use crate::io::{ModelBundle, Provenance, ScenarioFile, BUNDLE_VERSION};
use crate::mstn::{group_target, idle_transition, next_state, MentalState};
use crate::profit_sharing::{check_suppression, episode_reward, reinforce, scan_detours, select_action, DetourSpan, Episode, ReinforceConfig, Rule, WeightTable};
use crate::render::{OutputFormat, TableOrder};
use crate::rnn::{bptt_gradients, encode_input, forward, init_weights, one_hot, train, NetDocument, NetWeights, Step, Topology, TrainConfig, TrainingSequence, MSTN_INPUTS};
use crate::traits::{builtin_mapping, trait_scores, TraitScores};

/// Flat run configuration, read from a TOML key/value file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Profit-sharing discount divisor `M`.
    pub discount: f64,
    /// Maximum number of effective rules `L`.
    pub max_effective: u32,
    pub epsilon: f64,
    pub max_episode_len: usize,
    pub hidden: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub init_scale: f64,
    pub frequency_mode: FrequencyMode,
    pub emphasis_threshold: f64,
    pub output_format: OutputFormat,
    pub table_order: TableOrder,
    pub initial_state: MentalState,
    /// Choose actions from the rule weights instead of the emotion vectors.
    pub self_play: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 2014,
            discount: 2.0,
            max_effective: 1,
            epsilon: 0.1,
            max_episode_len: 64,
            hidden: crate::rnn::DEFAULT_HIDDEN,
            learning_rate: 0.05,
            epochs: 300,
            init_scale: 1.0,
            frequency_mode: FrequencyMode::MeanActivation,
            emphasis_threshold: 0.5,
            output_format: OutputFormat::Text,
            table_order: TableOrder::Paper3,
            initial_state: MentalState::Quiet,
            self_play: false,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.reinforce_config()?;
        if self.max_episode_len == 0 {
            return Err(Error::Config("max_episode_len must be at least 1".into()));
        }
        if self.hidden == 0 {
            return Err(Error::Config("hidden must be at least 1".into()));
        }
        if !(self.learning_rate > 0.0) || !self.learning_rate.is_finite() {
            return Err(Error::Config("learning_rate must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1".into()));
        }
        if !self.init_scale.is_finite() || !self.emphasis_threshold.is_finite() {
            return Err(Error::Config("init_scale and emphasis_threshold must be finite".into()));
        }
        Ok(())
    }

    pub fn reinforce_config(&self) -> Result<ReinforceConfig> {
        ReinforceConfig::new(self.discount, self.max_effective, self.epsilon)
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            alpha: self.learning_rate,
            epochs: self.epochs,
        }
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("config serializes").as_bytes())
    }
}

/// One fired transition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub from: MentalState,
    /// `None` for a spontaneous (no-stimulus) transition.
    pub group: Option<EmotionGroup>,
    pub to: MentalState,
    pub emotion: EmotionVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeTrace {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub steps: Vec<TraceStep>,
    pub reward: f64,
}

impl EpisodeTrace {
    pub fn rules(&self) -> Vec<Rule> {
        self.steps
            .iter()
            .filter_map(|s| s.group.map(|g| Rule::new(s.from, g)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetourLog {
    pub episode: usize,
    pub spans: Vec<DetourSpan>,
    pub kept: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub provenance: Provenance,
    pub episodes: Vec<EpisodeTrace>,
    pub detours: Vec<DetourLog>,
    pub ps_weight_deltas: BTreeMap<String, f64>,
    pub loss_curve: Vec<f64>,
    pub before: Option<FrequencyMatrix>,
    pub after: Option<FrequencyMatrix>,
    pub emphasized: Vec<CellChange>,
    pub traits: Option<TraitScores>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn provenance(scenario: &ScenarioFile, config: &PipelineConfig) -> Provenance {
    Provenance {
        seed: config.seed,
        config_hash: config.hash(),
        scenario: scenario.name.clone(),
    }
}

/// Plays one episode. Stimulus events move the network by the emotion vector
/// (or, in self-play, by the action the rule weights pick); empty events let
/// it drift along the baseline table.
fn replay_episode(
    index: usize,
    scenario: &ScenarioFile,
    config: &PipelineConfig,
    weights: &WeightTable,
    rng: &mut ChaCha8Rng,
) -> Result<EpisodeTrace> {
    let spec = &scenario.episodes[index];
    if spec.events.len() > config.max_episode_len {
        return Err(Error::InvalidEpisode(format!(
            "episode {index} has {} events, more than max_episode_len = {}",
            spec.events.len(),
            config.max_episode_len
        )));
    }
    let baseline = table1().matrix();
    let costs = baseline.costs();
    let mut state = config.initial_state;
    let mut steps = Vec::with_capacity(spec.events.len());
    let mut last = EmotionVector::ZERO;
    for event in &spec.events {
        let e = event.vector()?;
        let (to, group) = if e.is_zero() {
            (idle_transition(state, baseline, rng)?, None)
        } else if config.self_play {
            let g = select_action(weights, state, config.epsilon, rng);
            (group_target(g), Some(g))
        } else {
            let (to, g) = next_state(state, &e, &costs)?;
            (to, Some(g))
        };
        steps.push(TraceStep {
            from: state,
            group,
            to,
            emotion: e,
            note: event.note.clone(),
        });
        state = to;
        last = e;
    }
    Ok(EpisodeTrace {
        index,
        label: spec.label.clone(),
        steps,
        reward: episode_reward(&last),
    })
}

/// Replays every episode through the baseline network without learning.
pub fn simulate(scenario: &ScenarioFile, config: &PipelineConfig) -> Result<RunReport> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let weights = WeightTable::new();
    let episodes = (0..scenario.episodes.len())
        .map(|i| replay_episode(i, scenario, config, &weights, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(RunReport {
        provenance: provenance(scenario, config),
        episodes,
        detours: Vec::new(),
        ps_weight_deltas: BTreeMap::new(),
        loss_curve: Vec::new(),
        before: None,
        after: None,
        emphasized: Vec::new(),
        traits: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainArtifacts {
    pub report: RunReport,
    pub bundle: ModelBundle,
}

/// Training sequence from the detour-free steps of an episode.
pub fn training_sequence(steps: &[&TraceStep]) -> TrainingSequence {
    TrainingSequence::new(
        steps
            .iter()
            .map(|s| Step {
                input: encode_input(&s.emotion, s.from),
                target: one_hot(s.to).to_vec(),
            })
            .collect(),
    )
}

/// Full learning run: replay, detour removal, reinforcement, BPTT training,
/// frequency read-back and trait scoring.
pub fn train_scenario(scenario: &ScenarioFile, config: &PipelineConfig) -> Result<TrainArtifacts> {
    config.validate()?;
    let ps_config = config.reinforce_config()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let initial_weights = WeightTable::new();
    let mut ps_weights = initial_weights.clone();

    let mut episodes = Vec::with_capacity(scenario.episodes.len());
    let mut detours = Vec::new();
    let mut sequences = Vec::new();
    for index in 0..scenario.episodes.len() {
        let trace = replay_episode(index, scenario, config, &ps_weights, &mut rng)?;
        let inputs: Vec<MentalState> = trace.steps.iter().map(|s| s.from).collect();
        let (spans, kept) = scan_detours(&inputs);
        let clean: Vec<&TraceStep> = kept.iter().map(|&i| &trace.steps[i]).collect();

        let rules: Vec<Rule> = clean
            .iter()
            .filter_map(|s| s.group.map(|g| Rule::new(s.from, g)))
            .collect();
        if !rules.is_empty() {
            let episode = Episode::new(rules, trace.reward, config.max_episode_len)?;
            ps_weights = reinforce(&ps_weights, &episode, &ps_config)?;
        }
        if !clean.is_empty() {
            sequences.push(training_sequence(&clean));
        }
        if !spans.is_empty() {
            log::debug!("episode {index}: removed {} detour span(s)", spans.len());
        }
        detours.push(DetourLog { episode: index, spans, kept });
        episodes.push(trace);
    }

    let topo = Topology::mstn(config.hidden)?;
    let init = init_weights(&topo, table1().matrix(), config.init_scale, config.seed)?;
    let before = transition_matrix_from_net(&init, &topo, config.frequency_mode)?;
    let outcome = train(&init, &topo, &sequences, &config.train_config())?;
    let after = transition_matrix_from_net(&outcome.weights, &topo, config.frequency_mode)?;
    let emphasized = compare_matrices(table1().matrix().rows(), after.rows(), config.emphasis_threshold);
    let traits = trait_scores(after.rows(), &builtin_mapping());

    let provenance = provenance(scenario, config);
    let bundle = ModelBundle {
        format_version: BUNDLE_VERSION,
        provenance: provenance.clone(),
        net: NetDocument::new(topo, outcome.weights),
        ps_weights: ps_weights.clone(),
        frequency_mode: config.frequency_mode,
        frequency: after,
    };
    let report = RunReport {
        provenance,
        episodes,
        detours,
        ps_weight_deltas: ps_weights.delta_from(&initial_weights),
        loss_curve: outcome.loss_curve,
        before: Some(before),
        after: Some(after),
        emphasized,
        traits: Some(traits),
    };
    Ok(TrainArtifacts { report, bundle })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreqReport {
    pub mode: FrequencyMode,
    pub matrix: FrequencyMatrix,
    pub emphasized: Vec<CellChange>,
}

/// Frequency matrix of a bundle's network in `mode`, with the cells that rose
/// above the baseline by more than the emphasis threshold.
pub fn frequency_report(bundle: &ModelBundle, mode: FrequencyMode, threshold: f64) -> Result<FreqReport> {
    bundle.net.validate()?;
    let matrix = transition_matrix_from_net(&bundle.net.weights, &bundle.net.topology, mode)?;
    let emphasized = compare_matrices(table1().matrix().rows(), matrix.rows(), threshold);
    Ok(FreqReport { mode, matrix, emphasized })
}

pub fn bundle_traits(bundle: &ModelBundle) -> TraitScores {
    trait_scores(bundle.frequency.rows(), &builtin_mapping())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Largest relative difference between BPTT gradients and central finite
/// differences on a seeded random network.
pub fn gradient_spot_check(seed: u64) -> Result<f64> {
    use rand::Rng;
    let topo = Topology::mstn(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..topo.connections().len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let weights = NetWeights::from_values(&topo, values)?;
    let seq = TrainingSequence::new(
        (0..3)
            .map(|_| Step {
                input: (0..MSTN_INPUTS).map(|_| rng.gen_range(0.0..1.0)).collect(),
                target: one_hot(MentalState::from_index(rng.gen_range(0..7))).to_vec(),
            })
            .collect(),
    );
    let analytic = bptt_gradients(&weights, &topo, &seq)?.values;
    let eps = 1e-5;
    let mut worst = 0.0f64;
    for (i, &a) in analytic.iter().enumerate() {
        let mut plus = weights.clone();
        plus.values_mut()[i] += eps;
        let mut minus = weights.clone();
        minus.values_mut()[i] -= eps;
        let e_plus = forward(&plus, &topo, &seq)?.objective(&topo, &seq);
        let e_minus = forward(&minus, &topo, &seq)?.objective(&topo, &seq);
        let numeric = -(e_plus - e_minus) / (2.0 * eps);
        let rel = (a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-4);
        worst = worst.max(rel);
    }
    Ok(worst)
}

/// Self-test battery. `table1_text` is the fixture to verify.
pub fn run_checks(config: &PipelineConfig, table1_text: &str) -> Result<Vec<CheckResult>> {
    config.validate()?;
    let ps = config.reinforce_config()?;
    let mut results = Vec::new();

    results.push(match load_table1_verified(table1_text) {
        Ok(_) => CheckResult {
            name: "table1-checksum",
            passed: true,
            detail: "fixture digest matches".into(),
        },
        Err(e) => CheckResult {
            name: "table1-checksum",
            passed: false,
            detail: e.to_string(),
        },
    });

    let failing_w = (1..=config.max_episode_len).find(|&w| !check_suppression(&ps, w));
    results.push(CheckResult {
        name: "suppression",
        passed: failing_w.is_none(),
        detail: match failing_w {
            None => format!("holds for L = {}, M = {}, W = 1..={}", ps.max_effective, ps.discount, config.max_episode_len),
            Some(w) => format!("violated at W = {w}"),
        },
    });

    let worst = gradient_spot_check(config.seed)?;
    results.push(CheckResult {
        name: "gradient",
        passed: worst < 1e-4,
        detail: format!("max relative error {worst:.3e}"),
    });

    let count = enumerate_patterns().len();
    results.push(CheckResult {
        name: "enumeration",
        passed: count == 511,
        detail: format!("{count} firing patterns"),
    });
    Ok(results)
}
