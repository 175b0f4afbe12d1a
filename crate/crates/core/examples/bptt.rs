//! Train the recurrent network on two short sequences with backpropagation
//! through time, after checking the analytic gradient against finite
//! differences.
//!
//!     cargo run --release --example bptt

use mstn::emotion::{EmotionGroup, EmotionVector};
use mstn::fixtures::table1;
use mstn::mstn::MentalState::{self, *};
use mstn::pipeline::gradient_spot_check;
use mstn::rnn::{encode_input, init_weights, one_hot, train, Step, Topology, TrainConfig, TrainingSequence};

fn step(from: MentalState, group: u8, intensity: f64, to: MentalState) -> mstn::Result<Step> {
    let e = EmotionVector::single(EmotionGroup::new(group)?, intensity)?;
    Ok(Step {
        input: encode_input(&e, from),
        target: one_hot(to).to_vec(),
    })
}

fn main() -> mstn::Result<()> {
    println!("gradient check, max relative error: {:.2e}", gradient_spot_check(1)?);

    let topo = Topology::mstn(8)?;
    let init = init_weights(&topo, table1().matrix(), 1.0, 42)?;
    let data = vec![
        TrainingSequence::new(vec![step(Quiet, 4, 0.8, Sad)?, step(Sad, 2, 0.9, Happy)?]),
        TrainingSequence::new(vec![step(Quiet, 7, 0.6, Angry)?, step(Angry, 8, 0.5, Fear)?]),
    ];
    let outcome = train(&init, &topo, &data, &TrainConfig { alpha: 0.2, epochs: 400 })?;
    for (epoch, loss) in outcome.loss_curve.iter().enumerate().step_by(50) {
        println!("epoch {epoch:>3}  loss {loss:.5}");
    }
    println!("final loss {:.5}", outcome.loss_curve.last().unwrap());
    Ok(())
}
