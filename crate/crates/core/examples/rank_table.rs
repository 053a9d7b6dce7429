//! The full corpus against the trivial tangle, one line per entry.
//!
//! Run with `cargo run --example rank_table`.

use pillowcase::corpus::{run_corpus, DataSource};

fn main() {
    let outcomes = run_corpus(&DataSource::Embedded).expect("embedded corpus loads");
    println!(
        "{:<16} {:>10} {:>7} {:>5} {:>9}",
        "entry", "generators", "arrows", "rank", "expected"
    );
    for o in &outcomes {
        let expected = o.expected_rank.map_or("-".to_string(), |r| r.to_string());
        println!(
            "{:<16} {:>10} {:>7} {:>5} {:>9}",
            o.name, o.generators, o.arrows, o.rank, expected
        );
        for d in &o.dropped {
            println!("  {d}");
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} entries, {failed} failed", outcomes.len());
}
