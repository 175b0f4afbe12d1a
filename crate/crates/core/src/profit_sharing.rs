//! Profit sharing over `(state, emotion group)` rules.
//!
//! An episode is the ordered list of rules fired between a start state and the
//! event that delivers a reward. Loops that return to an already visited
//! sensory input (detours) are cut out before the reward is distributed, and
//! the reward is shared backwards from the final rule with a geometric decay
//! `f_i = f_{i-1} / M`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Float;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::emotion::{EmotionGroup, EmotionVector, GROUP_COUNT};
use crate::error::{Error, Result};
use crate::mstn::{MentalState, STATE_COUNT};

/// "If in state `input`, respond with emotion group `action`."
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rule {
    pub input: MentalState,
    pub action: EmotionGroup,
}

impl Rule {
    pub fn new(input: MentalState, action: EmotionGroup) -> Self {
        Rule { input, action }
    }

    /// All 63 rules in (state, group) order.
    pub fn all() -> impl Iterator<Item = Rule> {
        MentalState::ALL
            .into_iter()
            .flat_map(|s| EmotionGroup::all().map(move |g| Rule::new(s, g)))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.input, self.action)
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (state, group) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("rule `{s}` is not `state:group`")))?;
        let group: u8 = group
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("rule `{s}` has a bad group")))?;
        Ok(Rule::new(state.parse()?, EmotionGroup::new(group)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Episode {
    rules: Vec<Rule>,
    reward: f64,
}

impl Episode {
    /// `1 <= rules.len() <= max_len`.
    pub fn new(rules: Vec<Rule>, reward: f64, max_len: usize) -> Result<Self> {
        if rules.is_empty() {
            return Err(Error::InvalidEpisode("an episode needs at least one rule".into()));
        }
        if rules.len() > max_len {
            return Err(Error::InvalidEpisode(format!(
                "episode length {} exceeds the maximum of {max_len}",
                rules.len()
            )));
        }
        if !reward.is_finite() {
            return Err(Error::InvalidEpisode(format!("reward {reward} is not finite")));
        }
        Ok(Episode { rules, reward })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn reward(&self) -> f64 {
        self.reward
    }

    /// Episode length `W`.
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// Inclusive range of original indices `[start, end]` forming a detour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetourSpan {
    pub start: usize,
    pub end: usize,
}

impl DetourSpan {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.start..=self.end).contains(&index)
    }
}

/// Detour spans and survivors for an arbitrary sequence of sensory inputs.
///
/// Scans left to right keeping the detour-free prefix. When an input recurs,
/// everything from its previous surviving occurrence up to (not including) the
/// current position is cut.
pub fn scan_detours<T: PartialEq>(inputs: &[T]) -> (Vec<DetourSpan>, Vec<usize>) {
    let mut kept: Vec<usize> = Vec::new();
    let mut spans = Vec::new();
    for (j, input) in inputs.iter().enumerate() {
        if let Some(k) = kept.iter().position(|&i| inputs[i] == *input) {
            spans.push(DetourSpan { start: kept[k], end: j - 1 });
            kept.truncate(k);
        }
        kept.push(j);
    }
    (spans, kept)
}

pub fn detect_detours(episode: &Episode) -> Vec<DetourSpan> {
    let inputs: Vec<MentalState> = episode.rules.iter().map(|r| r.input).collect();
    scan_detours(&inputs).0
}

/// Drops every detour; order and reward are preserved.
pub fn remove_detours(episode: &Episode) -> Episode {
    let inputs: Vec<MentalState> = episode.rules.iter().map(|r| r.input).collect();
    let (_, kept) = scan_detours(&inputs);
    Episode {
        rules: kept.into_iter().map(|i| episode.rules[i]).collect(),
        reward: episode.reward,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReinforceConfig {
    /// Discount divisor `M`.
    pub discount: f64,
    /// Maximum number of effective rules `L`.
    pub max_effective: u32,
    /// Exploration rate for epsilon-greedy action selection.
    pub epsilon: f64,
}

impl ReinforceConfig {
    pub fn new(discount: f64, max_effective: u32, epsilon: f64) -> Result<Self> {
        let config = ReinforceConfig {
            discount,
            max_effective,
            epsilon,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_effective < 1 {
            return Err(Error::Config("L (max effective rules) must be at least 1".into()));
        }
        if !self.discount.is_finite() || self.discount < f64::from(self.max_effective) + 1.0 {
            return Err(Error::Config(format!(
                "discount M = {} must be at least L + 1 = {}",
                self.discount,
                self.max_effective + 1
            )));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::Config(format!("epsilon {} outside [0, 1]", self.epsilon)));
        }
        Ok(())
    }
}

impl Default for ReinforceConfig {
    fn default() -> Self {
        ReinforceConfig {
            discount: 2.0,
            max_effective: 1,
            epsilon: 0.1,
        }
    }
}

/// Rule weights `S_r` over all 63 rules, initialized to 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightTable {
    s: [[f64; GROUP_COUNT]; STATE_COUNT],
}

impl WeightTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, rule: Rule) -> f64 {
        self.s[rule.input.index()][rule.action.slot()]
    }

    pub fn set(&mut self, rule: Rule, value: f64) {
        self.s[rule.input.index()][rule.action.slot()] = value;
    }

    pub fn add(&mut self, rule: Rule, delta: f64) {
        self.s[rule.input.index()][rule.action.slot()] += delta;
    }

    pub fn total(&self) -> f64 {
        self.s.iter().flatten().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Rule, f64)> + '_ {
        Rule::all().map(move |r| (r, self.get(r)))
    }

    /// Per-rule `self - before`, omitting unchanged rules.
    pub fn delta_from(&self, before: &WeightTable) -> BTreeMap<String, f64> {
        self.iter()
            .filter(|(r, v)| *v != before.get(*r))
            .map(|(r, v)| (r.to_string(), v - before.get(r)))
            .collect()
    }
}

impl Serialize for WeightTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(STATE_COUNT * GROUP_COUNT))?;
        for (rule, v) in self.iter() {
            map.serialize_entry(&rule.to_string(), &v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeightTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, f64>::deserialize(deserializer)?;
        let mut table = WeightTable::new();
        for (key, v) in raw {
            let rule: Rule = key.parse().map_err(serde::de::Error::custom)?;
            table.set(rule, v);
        }
        Ok(table)
    }
}

/// Distributes the episode reward backwards from the final rule:
/// `S_{r_i} += f_i` with `f_0 = R` and `f_i = f_{i-1} / M`.
///
/// Expects a detour-free episode. A zero reward leaves the table untouched.
pub fn reinforce(weights: &WeightTable, episode: &Episode, config: &ReinforceConfig) -> Result<WeightTable> {
    config.validate()?;
    let mut out = weights.clone();
    if episode.reward == 0.0 {
        return Ok(out);
    }
    let mut f = episode.reward;
    for rule in episode.rules.iter().rev() {
        out.add(*rule, f);
        f /= config.discount;
    }
    Ok(out)
}

/// Executable witness of the ineffective-rule suppression condition for
/// episodes of length `w`: `L * sum_{j=i}^{W-1} f_j < f_{i-1}` for every
/// `i = 1..W-1`, with `f_0 = 1`.
///
/// With `M = L + 1` the margin shrinks like `M^-(W-i)` and vanishes in `f64`
/// long before `W = 100`, so the check runs in exact integer arithmetic:
/// writing `M = a / 2^k`, every `f_j` scaled by `M^(W-1) * 2^(k(W-1))` is the
/// integer `a^(W-1-j) * 2^(kj)`.
pub fn check_suppression(config: &ReinforceConfig, w: usize) -> bool {
    if w <= 1 {
        return true;
    }
    if !(config.discount > 0.0) || !config.discount.is_finite() {
        return false;
    }
    let (mantissa, exponent, _) = config.discount.integer_decode();
    let (a, k) = if exponent >= 0 {
        (BigInt::from(mantissa) << exponent as usize, 0usize)
    } else {
        (BigInt::from(mantissa), exponent.unsigned_abs() as usize)
    };
    let l = BigInt::from(config.max_effective);
    // Walk from g_{W-1} = 2^(k(W-1)) back to g_0; each step multiplies by
    // a / 2^k, which divides exactly.
    let mut g = BigInt::from(1u8) << (k * (w - 1));
    let mut tail = BigInt::from(0u8);
    for _ in (1..w).rev() {
        tail += &g;
        g = (g * &a) >> k;
        if &l * &tail >= g {
            return false;
        }
    }
    true
}

/// Epsilon-greedy policy over the rule weights for state `x`. Greedy ties are
/// broken uniformly at random.
pub fn select_action<R: Rng + ?Sized>(weights: &WeightTable, x: MentalState, epsilon: f64, rng: &mut R) -> EmotionGroup {
    if epsilon > 0.0 && rng.gen::<f64>() < epsilon {
        return EmotionGroup::from_slot(rng.gen_range(0..GROUP_COUNT));
    }
    let row = &weights.s[x.index()];
    let best = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<usize> = (0..GROUP_COUNT).filter(|&k| row[k] == best).collect();
    EmotionGroup::from_slot(*tied.choose(rng).expect("at least one maximal weight"))
}

/// Signed reward of the final event: the valence of the dominant group times
/// its intensity. Zero for an empty stimulus.
pub fn episode_reward(final_event: &EmotionVector) -> f64 {
    match final_event.dominant() {
        Some(group) => f64::from(group.valence()) * final_event.get(group),
        None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use MentalState::*;

    fn g(i: u8) -> EmotionGroup {
        EmotionGroup::new(i).unwrap()
    }

    fn ep(rules: &[(MentalState, u8)], reward: f64) -> Episode {
        Episode::new(rules.iter().map(|&(s, a)| Rule::new(s, g(a))).collect(), reward, 1000).unwrap()
    }

    #[test]
    fn detour_example_sequence() {
        // x1a1, x2a2, x3a3, x1a1, x2a2
        let e = ep(&[(Happy, 1), (Sad, 2), (Angry, 3), (Happy, 1), (Sad, 2)], 1.0);
        assert_eq!(detect_detours(&e), vec![DetourSpan { start: 0, end: 2 }]);
        let clean = remove_detours(&e);
        assert_eq!(clean.rules(), &[Rule::new(Happy, g(1)), Rule::new(Sad, g(2))]);
        assert_eq!(clean.reward(), 1.0);
    }

    #[test]
    fn detour_free_and_self_loop() {
        let e = ep(&[(Happy, 1), (Sad, 2), (Angry, 3)], 0.5);
        assert!(detect_detours(&e).is_empty());
        assert_eq!(remove_detours(&e), e);

        let e = ep(&[(Fear, 4), (Fear, 4)], 1.0);
        assert_eq!(detect_detours(&e), vec![DetourSpan { start: 0, end: 0 }]);
        assert_eq!(remove_detours(&e).len(), 1);
    }

    #[test]
    fn alternating_inputs() {
        let e = ep(&[(Happy, 1), (Sad, 2), (Happy, 3), (Sad, 4)], 1.0);
        let clean = remove_detours(&e);
        assert_eq!(clean.rules(), &[Rule::new(Happy, g(3)), Rule::new(Sad, g(4))]);
    }

    #[test]
    fn nested_spans_are_in_original_coordinates() {
        let (spans, kept) = scan_detours(&['a', 'b', 'c', 'b', 'a']);
        assert_eq!(spans, vec![DetourSpan { start: 1, end: 2 }, DetourSpan { start: 0, end: 3 }]);
        assert_eq!(kept, vec![4]);
    }

    #[test]
    fn geometric_increments() {
        let e = ep(&[(Happy, 1), (Sad, 2), (Angry, 3)], 1.0);
        let cfg = ReinforceConfig::new(2.0, 1, 0.1).unwrap();
        let w = reinforce(&WeightTable::new(), &e, &cfg).unwrap();
        assert_eq!(w.get(Rule::new(Angry, g(3))), 1.0);
        assert_eq!(w.get(Rule::new(Sad, g(2))), 0.5);
        assert_eq!(w.get(Rule::new(Happy, g(1))), 0.25);

        let e = ep(&[(Happy, 1), (Sad, 2)], -0.6);
        let cfg = ReinforceConfig::new(3.0, 2, 0.1).unwrap();
        let w = reinforce(&WeightTable::new(), &e, &cfg).unwrap();
        assert!((w.get(Rule::new(Sad, g(2))) + 0.6).abs() < 1e-15);
        assert!((w.get(Rule::new(Happy, g(1))) + 0.2).abs() < 1e-15);
    }

    #[test]
    fn zero_reward_is_a_no_op() {
        let mut start = WeightTable::new();
        start.set(Rule::new(Quiet, g(4)), 0.3);
        let e = ep(&[(Quiet, 4), (Sad, 2)], 0.0);
        let w = reinforce(&start, &e, &ReinforceConfig::default()).unwrap();
        assert_eq!(w, start);
    }

    #[test]
    fn illegal_discount_rejected() {
        assert!(matches!(ReinforceConfig::new(2.0, 3, 0.1), Err(Error::Config(_))));
        assert!(ReinforceConfig::new(3.0, 3, 0.1).is_err());
        assert!(ReinforceConfig::new(4.0, 3, 1.5).is_err());
        assert!(ReinforceConfig::new(4.0, 0, 0.1).is_err());
        let bad = ReinforceConfig {
            discount: 1.5,
            max_effective: 1,
            epsilon: 0.0,
        };
        assert!(reinforce(&WeightTable::new(), &ep(&[(Sad, 1)], 1.0), &bad).is_err());
    }

    #[test]
    fn episode_bounds() {
        assert!(Episode::new(vec![], 1.0, 10).is_err());
        let rules = vec![Rule::new(Sad, g(1)); 11];
        assert!(Episode::new(rules, 1.0, 10).is_err());
    }

    /// Closed form with integer M and n = W - i: L * (M^n - 1) / (M - 1) < M^n,
    /// i.e. (L - M + 1) * M^n < L, evaluated exactly in i128.
    fn suppression_closed_form(l: u32, m: u32, w: usize) -> bool {
        (1..w).all(|i| {
            let n = (w - i) as u32;
            let (l, m) = (i128::from(l), i128::from(m));
            match m.checked_pow(n).and_then(|p| p.checked_mul(l - m + 1)) {
                Some(lhs) => lhs < l,
                None => l - m + 1 <= 0,
            }
        })
    }

    #[test]
    fn suppression_examples() {
        let c = ReinforceConfig::new(2.0, 1, 0.1).unwrap();
        assert!(suppression_closed_form(1, 2, 10));
        assert!(check_suppression(&c, 10));
        let c = ReinforceConfig::new(4.0, 3, 0.1).unwrap();
        assert!(suppression_closed_form(3, 4, 50));
        assert!(check_suppression(&c, 50));
        assert!(check_suppression(&c, 1));
        // Below the legal bound the condition breaks, and the checker notices.
        let weak = ReinforceConfig {
            discount: 2.0,
            max_effective: 3,
            epsilon: 0.1,
        };
        assert!(!suppression_closed_form(3, 2, 10));
        assert!(!check_suppression(&weak, 10));
    }

    #[test]
    fn greedy_selection() {
        let mut w = WeightTable::new();
        w.set(Rule::new(Quiet, g(4)), 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert_eq!(select_action(&w, Quiet, 0.0, &mut rng), g(4));
        }
    }

    #[test]
    fn exploration_and_ties_are_uniform() {
        let n = 100_000;
        for (eps, weights) in [(1.0, {
            let mut w = WeightTable::new();
            w.set(Rule::new(Sad, g(2)), 5.0);
            w
        }), (0.0, WeightTable::new())] {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            let mut hits = [0usize; GROUP_COUNT];
            for _ in 0..n {
                hits[select_action(&weights, Sad, eps, &mut rng).slot()] += 1;
            }
            for h in hits {
                assert!((h as f64 / n as f64 - 1.0 / 9.0).abs() < 0.02, "{hits:?}");
            }
        }
    }

    #[test]
    fn reward_from_final_event() {
        let e = EmotionVector::new([0.1, 0.7, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.2]).unwrap();
        assert_eq!(episode_reward(&e), 0.7);
        let e = EmotionVector::new([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.9, 0.4, 0.0]).unwrap();
        assert_eq!(episode_reward(&e), -0.9);
        assert_eq!(episode_reward(&EmotionVector::ZERO), 0.0);
        assert_eq!(episode_reward(&EmotionVector::single(g(9), 0.8).unwrap()), 0.0);
    }

    #[test]
    fn weight_table_round_trip() {
        let mut w = WeightTable::new();
        w.set(Rule::new(Disgust, g(6)), -1.25);
        w.set(Rule::new(Happy, g(1)), 0.1 + 0.2);
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.contains("\"disgust:6\":-1.25"));
        let back: WeightTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
    }

    fn arb_rule() -> impl Strategy<Value = Rule> {
        (0usize..STATE_COUNT, 0usize..GROUP_COUNT)
            .prop_map(|(s, a)| Rule::new(MentalState::from_index(s), EmotionGroup::from_slot(a)))
    }

    proptest! {
        #[test]
        fn removal_is_idempotent_and_detour_free(
            rules in prop::collection::vec(arb_rule(), 1..40),
        ) {
            let e = Episode::new(rules, 1.0, 100).unwrap();
            let once = remove_detours(&e);
            prop_assert_eq!(remove_detours(&once), once.clone());
            let mut seen = std::collections::HashSet::new();
            for r in once.rules() {
                prop_assert!(seen.insert(r.input));
            }
            // The final rule always survives.
            prop_assert_eq!(once.rules().last(), e.rules().last());
        }

        #[test]
        fn reinforcement_is_conserved(
            rules in prop::collection::vec(arb_rule(), 1..60),
            reward in -5.0f64..5.0,
            l in 1u32..5,
            extra in 1.0f64..4.0,
        ) {
            let cfg = ReinforceConfig::new(f64::from(l) + extra, l, 0.1).unwrap();
            let e = Episode::new(rules, reward, 100).unwrap();
            let before = WeightTable::new();
            let after = reinforce(&before, &e, &cfg).unwrap();
            let m = cfg.discount;
            let w = e.len() as f64;
            let expected = reward * (1.0 - m.powf(-w)) / (1.0 - 1.0 / m);
            prop_assert!((after.total() - before.total() - expected).abs() < 1e-12);
        }

        #[test]
        fn suppression_holds_for_legal_configs(l in 1u32..=5, bump in 1u32..=4, w in 1usize..=100) {
            let cfg = ReinforceConfig::new(f64::from(l + bump), l, 0.1).unwrap();
            prop_assert!(suppression_closed_form(l, l + bump, w));
            prop_assert!(check_suppression(&cfg, w));
        }

        #[test]
        fn effective_rule_outweighs_detour(
            prefix in prop::collection::vec(0usize..STATE_COUNT, 0..3),
            detour_len in 1usize..6,
            suffix_len in 0usize..3,
            l in 1u32..4,
            extra in 1.0f64..3.0,
            reward in 0.1f64..3.0,
        ) {
            // Build: prefix (distinct states), entry state x, detour through
            // other states, return to x, then a distinct suffix.
            let mut states: Vec<MentalState> = Vec::new();
            for s in prefix {
                let s = MentalState::from_index(s);
                if !states.contains(&s) { states.push(s); }
            }
            let free: Vec<MentalState> = MentalState::ALL.into_iter().filter(|s| !states.contains(s)).collect();
            prop_assume!(free.len() >= 2 + suffix_len);
            let entry = free[0];
            let entry_at = states.len();
            states.push(entry);
            for k in 0..detour_len - 1 {
                states.push(free[1 + k % (free.len() - 1 - suffix_len)]);
            }
            let exit_at = states.len();
            states.push(entry);
            for k in 0..suffix_len {
                states.push(free[free.len() - 1 - k]);
            }
            let rules: Vec<Rule> = states.iter().enumerate()
                .map(|(i, &s)| Rule::new(s, EmotionGroup::from_slot(i % GROUP_COUNT)))
                .collect();
            let raw = Episode::new(rules, reward, 100).unwrap();
            let (spans, kept) = scan_detours(&states);
            prop_assert!(spans.iter().any(|sp| sp.start == entry_at && sp.end == exit_at - 1));

            let cfg = ReinforceConfig::new(f64::from(l) + extra, l, 0.1).unwrap();
            let m = cfg.discount;
            let w = raw.len();
            let raw_increment = |pos: usize| reward / m.powi((w - 1 - pos) as i32);
            let removed_total: f64 = (0..w).filter(|i| !kept.contains(i)).map(raw_increment).sum();

            let clean = remove_detours(&raw);
            let learned = reinforce(&WeightTable::new(), &clean, &cfg).unwrap();
            // Survivors from the re-entry point onwards keep their distance to
            // the reward, so each earns more than L times the whole detour.
            for (q, &orig) in kept.iter().enumerate() {
                if orig < exit_at { continue; }
                let inc = reward / m.powi((clean.len() - 1 - q) as i32);
                prop_assert!((learned.get(clean.rules()[q]) - inc).abs() < 1e-12);
                prop_assert!(inc > f64::from(l) * removed_total);
            }
        }

        #[test]
        fn greedy_is_shift_invariant(
            values in prop::array::uniform9(-3.0f64..3.0),
            shift in -10.0f64..10.0,
            seed in 0u64..1000,
        ) {
            let mut a = WeightTable::new();
            let mut b = WeightTable::new();
            for (k, v) in values.iter().enumerate() {
                a.set(Rule::new(Angry, EmotionGroup::from_slot(k)), *v);
                b.set(Rule::new(Angry, EmotionGroup::from_slot(k)), *v + shift);
            }
            let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assume!(values.iter().filter(|&&v| v == best).count() == 1);
            let mut r1 = ChaCha8Rng::seed_from_u64(seed);
            let mut r2 = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(select_action(&a, Angry, 0.0, &mut r1), select_action(&b, Angry, 0.0, &mut r2));
        }
    }
}
