//! Products in the pillowcase algebra and the differential on dual paths.
//!
//! Run with `cargo run --example algebra_tour`.

use pillowcase::algebra::{exhaustive_checks, Basis, DualPath};

fn main() {
    let chords: Vec<Basis> = Basis::chords().collect();
    println!(
        "{} chords, {} basis elements",
        chords.len(),
        Basis::ALL.len()
    );

    println!("\nnonzero products of chords:");
    for a in &chords {
        for b in &chords {
            if let Some(c) = a.mul(*b) {
                println!("  {a} * {b} = {c}");
            }
        }
    }

    println!("\ndual paths with a nonzero differential:");
    for p in DualPath::all() {
        let d = p.differential();
        if d.is_empty() {
            continue;
        }
        let terms: Vec<String> = d
            .terms()
            .map(|t| format!("b({})", t.minus_label()))
            .collect();
        println!("  d b({}) = {}", p.minus_label(), terms.join(" + "));
    }

    let checks = exhaustive_checks();
    println!(
        "\nassociativity on {} triples, d^2 = 0 on {} paths, Leibniz on {} products: {}",
        checks.triples,
        checks.paths,
        checks.pairs,
        if checks.passed() { "ok" } else { "FAILED" }
    );
}
