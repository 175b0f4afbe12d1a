//! Big Five scores of the baseline table and of a matrix that favours the
//! sad -> happy recovery path.
//!
//!     cargo run --example traits

use mstn::fixtures::table1;
use mstn::mstn::MentalState::*;
use mstn::render::{render_traits, OutputFormat};
use mstn::traits::{builtin_mapping, trait_scores};

fn main() -> mstn::Result<()> {
    let mapping = builtin_mapping();
    println!("{} mapped cells\n", mapping.len());

    let base = *table1().matrix().rows();
    print!("{}", render_traits(&trait_scores(&base, &mapping), &base, &mapping, OutputFormat::Text, 2));

    let mut shifted = base;
    let row = &mut shifted[Sad.index()];
    row.iter_mut().for_each(|p| *p *= 0.5);
    row[Happy.index()] += 0.5;
    println!("\nafter moving half of sad's mass to happy:");
    print!("{}", render_traits(&trait_scores(&shifted, &mapping), &shifted, &mapping, OutputFormat::Text, 2));
    Ok(())
}
