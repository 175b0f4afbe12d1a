//! Scenario files and model bundles.
//!
//! Scenarios are TOML documents:
//!
//! ```toml
//! version = "1"
//! name = "example"
//!
//! [[episodes]]
//! label = "optional"
//!
//! [[episodes.events]]
//! emotions = { sadness = 0.8, distress = 0.3 }
//! note = "optional annotation"
//!
//! [[episodes.events]]
//! vector = [0.0, 0.9, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
//! ```
//!
//! An event carries either named emotion intensities or a raw nine-group
//! vector. An event with no intensities (`emotions = {}`) is "no stimulus".
//!
//! Bundles are JSON documents holding everything a training run produced.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::emotion::{aggregate_map, Emotion, EmotionVector, GROUP_COUNT};
use crate::error::{Error, Result};
use crate::frequency::{FrequencyMatrix, FrequencyMode};
use crate::profit_sharing::WeightTable;
use crate::rnn::NetDocument;

pub const SCENARIO_VERSION: &str = "1";
pub const BUNDLE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Stimulus {
    Emotions(BTreeMap<Emotion, f64>),
    Vector(EmotionVector),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub stimulus: Stimulus,
    pub note: Option<String>,
}

impl Event {
    pub fn emotions(pairs: impl IntoIterator<Item = (Emotion, f64)>) -> Self {
        Event {
            stimulus: Stimulus::Emotions(pairs.into_iter().collect()),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn vector(&self) -> Result<EmotionVector> {
        match &self.stimulus {
            Stimulus::Emotions(raw) => aggregate_map(raw),
            Stimulus::Vector(v) => Ok(*v),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeSpec {
    pub label: Option<String>,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub version: String,
    pub name: String,
    pub episodes: Vec<EpisodeSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    version: String,
    name: String,
    #[serde(default)]
    episodes: Vec<RawEpisode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEpisode {
    label: Option<String>,
    #[serde(default)]
    events: Vec<RawEvent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvent {
    emotions: Option<BTreeMap<toml::Spanned<String>, f64>>,
    vector: Option<[f64; GROUP_COUNT]>,
    note: Option<String>,
}

#[derive(Serialize)]
struct OutScenario<'a> {
    version: &'a str,
    name: &'a str,
    episodes: Vec<OutEpisode<'a>>,
}

#[derive(Serialize)]
struct OutEpisode<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    events: Vec<OutEvent<'a>>,
}

#[derive(Serialize)]
struct OutEvent<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    emotions: Option<BTreeMap<&'static str, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<[f64; GROUP_COUNT]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Parses and fully validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.version != SCENARIO_VERSION {
        return Err(Error::UnsupportedVersion {
            found: raw.version,
            expected: SCENARIO_VERSION.to_string(),
        });
    }
    if raw.episodes.is_empty() {
        return Err(Error::NoEpisodes);
    }
    let mut episodes = Vec::with_capacity(raw.episodes.len());
    for (index, ep) in raw.episodes.into_iter().enumerate() {
        if ep.events.is_empty() {
            return Err(Error::EmptyEpisode { index });
        }
        let mut events = Vec::with_capacity(ep.events.len());
        for (k, ev) in ep.events.into_iter().enumerate() {
            let stimulus = match (ev.emotions, ev.vector) {
                (Some(map), None) => {
                    let mut parsed = BTreeMap::new();
                    for (key, value) in map {
                        let span = key.span();
                        let name = key.into_inner();
                        let emotion: Emotion = name.parse().map_err(|_| {
                            let (line, column) = line_column(text, span.start);
                            Error::UnknownEmotion {
                                name: name.clone(),
                                line: Some(line),
                                column: Some(column),
                            }
                        })?;
                        let slot = parsed.entry(emotion).or_insert(value);
                        *slot = f64::max(*slot, value);
                    }
                    aggregate_map(&parsed)?;
                    Stimulus::Emotions(parsed)
                }
                (None, Some(v)) => Stimulus::Vector(EmotionVector::new(v)?),
                (None, None) => Stimulus::Emotions(BTreeMap::new()),
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidEpisode(format!(
                        "episode {index} event {k} sets both `emotions` and `vector`"
                    )))
                }
            };
            events.push(Event { stimulus, note: ev.note });
        }
        episodes.push(EpisodeSpec { label: ep.label, events });
    }
    Ok(ScenarioFile {
        version: raw.version,
        name: raw.name,
        episodes,
    })
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioFile> {
    parse_scenario(&fs::read_to_string(path)?)
}

impl ScenarioFile {
    pub fn new(name: impl Into<String>, episodes: Vec<EpisodeSpec>) -> Self {
        ScenarioFile {
            version: SCENARIO_VERSION.to_string(),
            name: name.into(),
            episodes,
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        let out = OutScenario {
            version: &self.version,
            name: &self.name,
            episodes: self
                .episodes
                .iter()
                .map(|ep| OutEpisode {
                    label: ep.label.as_deref(),
                    events: ep
                        .events
                        .iter()
                        .map(|ev| {
                            let (emotions, vector) = match &ev.stimulus {
                                Stimulus::Emotions(m) => (Some(m.iter().map(|(e, v)| (e.name(), *v)).collect()), None),
                                Stimulus::Vector(v) => (None, Some(*v.values())),
                            };
                            OutEvent {
                                emotions,
                                vector,
                                note: ev.note.as_deref(),
                            }
                        })
                        .collect(),
                })
                .collect(),
        };
        toml::to_string(&out).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub config_hash: String,
    pub scenario: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub format_version: u32,
    pub provenance: Provenance,
    pub net: NetDocument,
    pub ps_weights: WeightTable,
    pub frequency_mode: FrequencyMode,
    pub frequency: FrequencyMatrix,
}

impl ModelBundle {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses a bundle. A provenance hash differing from `expected_config_hash`
    /// yields a warning, not an error.
    pub fn from_json(text: &str, expected_config_hash: Option<&str>) -> Result<(ModelBundle, Vec<String>)> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle: {e}")))?;
        let version = value
            .get("format_version")
            .ok_or_else(|| Error::Parse("bundle: missing `format_version`".into()))?;
        if version.as_u64() != Some(u64::from(BUNDLE_VERSION)) {
            return Err(Error::UnsupportedVersion {
                found: version.to_string(),
                expected: BUNDLE_VERSION.to_string(),
            });
        }
        let bundle: ModelBundle = serde_json::from_value(value).map_err(|e| Error::Parse(format!("bundle: {e}")))?;
        bundle.net.validate()?;
        let mut warnings = Vec::new();
        if let Some(expected) = expected_config_hash {
            if expected != bundle.provenance.config_hash {
                let msg = format!(
                    "bundle was produced with config {} but the current config hashes to {expected}",
                    bundle.provenance.config_hash
                );
                log::warn!("{msg}");
                warnings.push(msg);
            }
        }
        Ok((bundle, warnings))
    }
}

pub fn save_bundle(bundle: &ModelBundle, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, bundle.to_json()?)?;
    Ok(())
}

pub fn load_bundle(path: impl AsRef<Path>, expected_config_hash: Option<&str>) -> Result<(ModelBundle, Vec<String>)> {
    ModelBundle::from_json(&fs::read_to_string(path)?, expected_config_hash)
}
