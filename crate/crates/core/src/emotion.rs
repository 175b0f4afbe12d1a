//! The 28 named emotions, their nine groups, and max-aggregation into the
//! emotion vector that drives state transitions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of emotion groups.
pub const GROUP_COUNT: usize = 9;

macro_rules! emotions {
    ($($variant:ident => $name:literal, $group:literal;)*) => {
        /// One of the 28 named emotions produced by the emotion generator.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Emotion {
            $($variant,)*
        }

        impl Emotion {
            pub const ALL: [Emotion; 28] = [$(Emotion::$variant,)*];

            /// Normalized name (lower case, underscores).
            pub fn name(self) -> &'static str {
                match self {
                    $(Emotion::$variant => $name,)*
                }
            }

            fn group_index(self) -> u8 {
                match self {
                    $(Emotion::$variant => $group,)*
                }
            }
        }
    };
}

emotions! {
    Gloating => "gloating", 1;
    Hope => "hope", 1;
    Satisfaction => "satisfaction", 1;
    Relief => "relief", 1;
    Pride => "pride", 1;
    Admiration => "admiration", 1;
    Liking => "liking", 1;
    Gratitude => "gratitude", 1;
    Gratification => "gratification", 1;
    Love => "love", 1;
    Shy => "shy", 1;
    Joy => "joy", 2;
    HappyFor => "happy_for", 2;
    SorryFor => "sorry_for", 3;
    Shame => "shame", 3;
    Remorse => "remorse", 3;
    FearConfirmed => "fear_confirmed", 4;
    Disappointment => "disappointment", 4;
    Sadness => "sadness", 4;
    Distress => "distress", 5;
    Perplexity => "perplexity", 5;
    Disliking => "disliking", 6;
    Hate => "hate", 6;
    Resentment => "resentment", 7;
    Reproach => "reproach", 7;
    Anger => "anger", 7;
    Fear => "fear", 8;
    Surprise => "surprise", 9;
}

impl Emotion {
    pub fn group(self) -> EmotionGroup {
        EmotionGroup(self.group_index())
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Emotion {
    type Err = Error;

    /// Accepts either separator (`sorry-for`, `sorry_for`) and any case.
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('-', "_");
        Emotion::ALL
            .iter()
            .copied()
            .find(|e| e.name() == normalized)
            .ok_or_else(|| Error::UnknownEmotion {
                name: s.to_string(),
                line: None,
                column: None,
            })
    }
}

impl Serialize for Emotion {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Emotion {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Group index 1..=9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct EmotionGroup(u8);

impl EmotionGroup {
    pub fn new(index: u8) -> Result<Self> {
        if (1..=GROUP_COUNT as u8).contains(&index) {
            Ok(EmotionGroup(index))
        } else {
            Err(Error::InvalidGroup(index))
        }
    }

    /// Group from a zero-based slot in an [`EmotionVector`].
    pub fn from_slot(slot: usize) -> Self {
        assert!(slot < GROUP_COUNT, "group slot {slot} out of range");
        EmotionGroup(slot as u8 + 1)
    }

    pub fn all() -> impl Iterator<Item = EmotionGroup> {
        (1..=GROUP_COUNT as u8).map(EmotionGroup)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }

    pub fn members(self) -> impl Iterator<Item = Emotion> {
        Emotion::ALL.into_iter().filter(move |e| e.group() == self)
    }

    /// +1 for pleasure (groups 1, 2), -1 for displeasure (3..=8), 0 for surprise.
    pub fn valence(self) -> i8 {
        match self.0 {
            1 | 2 => 1,
            9 => 0,
            _ => -1,
        }
    }
}

impl TryFrom<u8> for EmotionGroup {
    type Error = Error;
    fn try_from(value: u8) -> Result<Self> {
        EmotionGroup::new(value)
    }
}

impl From<EmotionGroup> for u8 {
    fn from(g: EmotionGroup) -> u8 {
        g.0
    }
}

impl fmt::Display for EmotionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn group_of(emotion: Emotion) -> EmotionGroup {
    emotion.group()
}

pub fn valence(group: EmotionGroup) -> i8 {
    group.valence()
}

/// Per-group intensities `e_1..e_9`. All entries are nonnegative; the zero
/// vector means "no stimulus".
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; GROUP_COUNT]", into = "[f64; GROUP_COUNT]")]
pub struct EmotionVector([f64; GROUP_COUNT]);

impl EmotionVector {
    pub const ZERO: EmotionVector = EmotionVector([0.0; GROUP_COUNT]);

    pub fn new(values: [f64; GROUP_COUNT]) -> Result<Self> {
        for (slot, &v) in values.iter().enumerate() {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidEpisode(format!(
                    "intensity {v} for group {} must be finite and nonnegative",
                    slot + 1
                )));
            }
        }
        Ok(EmotionVector(values))
    }

    /// Vector with a single nonzero group.
    pub fn single(group: EmotionGroup, intensity: f64) -> Result<Self> {
        let mut values = [0.0; GROUP_COUNT];
        values[group.slot()] = intensity;
        EmotionVector::new(values)
    }

    pub fn get(&self, group: EmotionGroup) -> f64 {
        self.0[group.slot()]
    }

    pub fn values(&self) -> &[f64; GROUP_COUNT] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    /// Strongest group, lowest index on ties. `None` for the zero vector.
    pub fn dominant(&self) -> Option<EmotionGroup> {
        if self.is_zero() {
            return None;
        }
        let mut best = 0;
        for slot in 1..GROUP_COUNT {
            if self.0[slot] > self.0[best] {
                best = slot;
            }
        }
        Some(EmotionGroup::from_slot(best))
    }
}

impl TryFrom<[f64; GROUP_COUNT]> for EmotionVector {
    type Error = Error;
    fn try_from(values: [f64; GROUP_COUNT]) -> Result<Self> {
        EmotionVector::new(values)
    }
}

impl From<EmotionVector> for [f64; GROUP_COUNT] {
    fn from(v: EmotionVector) -> Self {
        v.0
    }
}

/// `e_k = max` of the raw intensities of the emotions in group `k`.
pub fn aggregate<'a, I>(raw: I) -> Result<EmotionVector>
where
    I: IntoIterator<Item = (&'a Emotion, &'a f64)>,
{
    let mut values = [0.0f64; GROUP_COUNT];
    for (&emotion, &value) in raw {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::NegativeIntensity { emotion, value });
        }
        let slot = emotion.group().slot();
        values[slot] = values[slot].max(value);
    }
    Ok(EmotionVector(values))
}

/// Convenience wrapper for a map of raw intensities.
pub fn aggregate_map(raw: &BTreeMap<Emotion, f64>) -> Result<EmotionVector> {
    aggregate(raw.iter())
}
