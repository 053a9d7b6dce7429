//! The belt module as printed fails the A-infinity relations; the module
//! compiled from its curve word passes.
//!
//! Run with `cargo run --example validate_modules`.

use pillowcase::corpus::{load_module, DataSource};
use pillowcase::curves::curve_shapes;

fn main() {
    for file in ["belt_verbatim.mod", "belt.curve", "t23.mod", "r4.mod"] {
        let loaded = load_module(&DataSource::Embedded, file).unwrap();
        let m = &loaded.module;
        let report = m.validate();
        println!(
            "{file}: {} generators, {} actions, {}",
            m.generators().len(),
            m.action_count(),
            if report.passed() { "valid" } else { "INVALID" }
        );
        for d in &loaded.dropped {
            println!("  {d}");
        }
        for v in report.idempotent_violations.iter().take(3) {
            println!("  idempotent violation: {v}");
        }
        for v in report.relation_violations.iter().take(3) {
            println!("  relation violation: {v}");
        }
        for shape in curve_shapes(m) {
            println!("  {shape}");
        }
    }
}
