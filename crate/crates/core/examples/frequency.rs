//! Read a network back as a transition matrix by driving it with all 511
//! firing patterns, in both read-back modes.
//!
//!     cargo run --release --example frequency

use mstn::fixtures::table1;
use mstn::frequency::{compare_matrices, enumerate_patterns, transition_matrix_from_net, FrequencyMode};
use mstn::render::{render_matrix, OutputFormat, TableOrder};
use mstn::rnn::{init_weights, Topology};

fn main() -> mstn::Result<()> {
    println!("{} firing patterns", enumerate_patterns().len());
    let topo = Topology::mstn(6)?;
    // A large scale lets the baseline table dominate the untrained network.
    let weights = init_weights(&topo, table1().matrix(), 8.0, 5)?;
    for mode in [FrequencyMode::MeanActivation, FrequencyMode::ArgmaxCount] {
        let m = transition_matrix_from_net(&weights, &topo, mode)?;
        let raised = compare_matrices(table1().matrix().rows(), m.rows(), 0.1);
        println!("\n{mode:?}:");
        print!("{}", render_matrix(m.rows(), TableOrder::Paper3, OutputFormat::Text, &raised));
    }
    Ok(())
}
