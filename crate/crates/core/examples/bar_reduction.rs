//! Builds the 56-generator bar bimodule, cancels it down under a few
//! orders and compares each result with the shipped 24-generator bar_r.
//!
//! Run with `cargo run --example bar_reduction`.

use pillowcase::bar::{build_bar, builtin_bar_r};
use pillowcase::structures::CancelOrder;

fn main() {
    let bar = build_bar();
    println!(
        "unreduced: {} generators, {} arrows, relation {}",
        bar.generators().len(),
        bar.arrow_count(),
        if bar.validate().passed() {
            "holds"
        } else {
            "FAILS"
        }
    );

    let reference = builtin_bar_r();
    for order in [
        CancelOrder::First,
        CancelOrder::Last,
        CancelOrder::Seeded(42),
    ] {
        let (reduced, steps) = bar.reduce(order).expect("every step keeps the relation");
        println!(
            "{order:?}: {} cancellations -> {} generators, {} arrows, isomorphic to bar_r: {}",
            steps.len(),
            reduced.generators().len(),
            reduced.arrow_count(),
            reduced.is_isomorphic(&reference)
        );
        if let Some((x, y)) = steps.first() {
            println!("  first cancelled pair: {x} -> {y}");
        }
    }

    // The one generator of length five.
    let longest = reference
        .generators()
        .iter()
        .max_by_key(|g| g.name.matches(',').count())
        .unwrap();
    println!("\nlongest generator of bar_r: {}", longest.name);
    let g = reference.generator_index(&longest.name).unwrap();
    let incoming: Vec<String> = reference
        .arrows()
        .filter(|a| a.target == g)
        .map(|a| reference.describe_arrow(a))
        .collect();
    for line in incoming {
        println!("  {line}");
    }
}
