//! Aggregate named emotion intensities into the nine-group vector and show
//! which group dominates and with what valence.
//!
//!     cargo run --example emotions

use std::collections::BTreeMap;

use mstn::emotion::{aggregate_map, Emotion, EmotionGroup};

fn main() -> mstn::Result<()> {
    for g in EmotionGroup::all() {
        let members: Vec<&str> = g.members().map(|e| e.name()).collect();
        println!("group {g} (valence {:+}): {}", g.valence(), members.join(", "));
    }

    let raw: BTreeMap<Emotion, f64> = [("distress", 0.7), ("sadness", 0.4), ("perplexity", 0.9), ("hope", 0.2)]
        .into_iter()
        .map(|(name, v)| Ok((name.parse()?, v)))
        .collect::<mstn::Result<_>>()?;
    let e = aggregate_map(&raw)?;
    println!("\nraw {raw:?}");
    println!("e = {:?}", e.values());
    if let Some(g) = e.dominant() {
        println!("dominant group {g}, valence {:+}", g.valence());
    }
    Ok(())
}
