//! End to end: replay the bundled 14-episode scenario, cut detours, reinforce
//! rules, train the network, save a bundle and read it back.
//!
//!     cargo run --release --example pipeline [scenario.toml]

use mstn::io::{load_bundle, load_scenario, save_bundle};
use mstn::mstn::MentalState::*;
use mstn::pipeline::{bundle_traits, frequency_report, train_scenario, PipelineConfig};
use mstn::render::{render_matrix, OutputFormat, TableOrder};

fn main() -> mstn::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/scenario1.toml").to_string());
    let scenario = load_scenario(&path)?;
    let config = PipelineConfig::default();
    let run = train_scenario(&scenario, &config)?;

    let cut: usize = run.report.detours.iter().map(|d| d.spans.len()).sum();
    println!("{} episodes, {cut} detour span(s) removed", run.report.episodes.len());
    let curve = &run.report.loss_curve;
    println!("loss {:.4} -> {:.4} over {} epochs", curve[0], curve[curve.len() - 1], curve.len());

    let out = std::env::temp_dir().join("mstn-example-bundle.json");
    save_bundle(&run.bundle, &out)?;
    let (bundle, warnings) = load_bundle(&out, Some(&config.hash()))?;
    assert!(warnings.is_empty());

    let freq = frequency_report(&bundle, config.frequency_mode, config.emphasis_threshold)?;
    println!("\nlearned transitions (* = rose by more than {}):", config.emphasis_threshold);
    print!("{}", render_matrix(freq.matrix.rows(), TableOrder::Paper3, OutputFormat::Text, &freq.emphasized));
    println!(
        "\np(normal -> sad) = {:.4}, p(sad -> happy) = {:.4}",
        freq.matrix.get(Quiet, Sad),
        freq.matrix.get(Sad, Happy)
    );
    for s in &bundle_traits(&bundle).scores {
        println!("{:<18} {:+.4}", s.trait_.to_string(), s.score);
    }
    println!("\nbundle written to {}", out.display());
    Ok(())
}
