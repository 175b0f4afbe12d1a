//! The seven-state network: costs from the baseline table, stimulus-driven
//! moves, spontaneous drift, and costs re-estimated from observed counts.
//!
//!     cargo run --example transitions

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mstn::emotion::{EmotionGroup, EmotionVector};
use mstn::fixtures::table1;
use mstn::mstn::{cost_from_counts, idle_transition, next_state, record_transition, MentalState, TransitionCount};

fn main() -> mstn::Result<()> {
    let base = table1().matrix();
    let costs = base.costs();
    println!("cost(quiet -> sad) = {:.4}", costs.get(MentalState::Quiet, MentalState::Sad));

    // Strong sadness against mild joy: the cheaper, stronger pull wins.
    let e = EmotionVector::new([0.0, 0.3, 0.0, 0.8, 0.0, 0.0, 0.0, 0.0, 0.0])?;
    let (to, group) = next_state(MentalState::Quiet, &e, &costs)?;
    println!("quiet with e = {:?} -> {to} via group {group}", e.values());

    let surprise = EmotionVector::single(EmotionGroup::new(9)?, 0.5)?;
    println!("quiet with surprise -> {}", next_state(MentalState::Quiet, &surprise, &costs)?.0);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut state = MentalState::Quiet;
    let mut counts = TransitionCount::new();
    print!("idle drift: {state}");
    for _ in 0..12 {
        let next = idle_transition(state, base, &mut rng)?;
        counts = record_transition(counts, state, next);
        state = next;
        print!(" -> {state}");
    }
    println!();

    let (p, c) = cost_from_counts(&counts);
    println!("re-estimated p(quiet -> quiet) = {:.3}, cost = {:.3}", p.get(MentalState::Quiet, MentalState::Quiet), c.get(MentalState::Quiet, MentalState::Quiet));
    Ok(())
}
