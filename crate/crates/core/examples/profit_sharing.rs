//! Detour removal and geometric credit assignment over (state, group) rules,
//! then an epsilon-greedy pick from the reinforced table.
//!
//!     cargo run --example profit_sharing

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mstn::emotion::EmotionGroup;
use mstn::mstn::MentalState::*;
use mstn::profit_sharing::{check_suppression, detect_detours, reinforce, remove_detours, select_action, Episode, ReinforceConfig, Rule, WeightTable};

fn main() -> mstn::Result<()> {
    let g = |i| EmotionGroup::new(i);
    // quiet -> sad, a detour through anger back to sad, then sad -> happy.
    let rules = vec![
        Rule::new(Quiet, g(4)?),
        Rule::new(Sad, g(7)?),
        Rule::new(Angry, g(4)?),
        Rule::new(Sad, g(2)?),
    ];
    let episode = Episode::new(rules, 1.0, 64)?;
    for span in detect_detours(&episode) {
        println!("detour: rules {}..={}", span.start, span.end);
    }
    let clean = remove_detours(&episode);
    let kept: Vec<String> = clean.rules().iter().map(Rule::to_string).collect();
    println!("kept: {}", kept.join(", "));

    let config = ReinforceConfig::new(2.0, 1, 0.1)?;
    println!("suppression holds up to W = 64: {}", (1..=64).all(|w| check_suppression(&config, w)));

    let weights = reinforce(&WeightTable::new(), &clean, &config)?;
    for (rule, w) in weights.iter().filter(|(_, w)| *w != 0.0) {
        println!("S[{rule}] = {w}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let picks: Vec<String> = (0..10).map(|_| select_action(&weights, Sad, config.epsilon, &mut rng).to_string()).collect();
    println!("epsilon-greedy picks in sad: {}", picks.join(" "));
    Ok(())
}
