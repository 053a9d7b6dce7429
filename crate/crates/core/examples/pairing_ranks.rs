//! Pairs the unknot arc with the trivial tangle and prints the whole
//! complex, then the rank of a few other pairings.
//!
//! Run with `cargo run --example pairing_ranks`.

use pillowcase::corpus::{load_module, DataSource};
use pillowcase::pairing::{intersection_number, pair};

fn main() {
    let source = DataSource::Embedded;
    let load = |f: &str| load_module(&source, f).unwrap().module;
    let lnat = load("lnat.mod");

    let complex = pair(&load("unknot.curve"), &lnat).unwrap();
    print!("{}", complex.dump());
    println!("{}\n", complex.summary());

    for (file, periodic) in [
        ("belt.curve", false),
        ("t23.mod", false),
        ("lnat.curve", true),
    ] {
        let c = pair(&load(file), &lnat).unwrap();
        let rank = c.homology_rank();
        print!("{file}: {} generators, rank {rank}", c.generator_count());
        if periodic {
            print!(
                ", intersection {}",
                intersection_number(rank, true).unwrap()
            );
        }
        println!();
    }
}
