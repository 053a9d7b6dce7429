//! Compiles a curve word into its module and reads the curve back off the
//! basic actions.
//!
//! Run with `cargo run --example compile_curve -- "cyclic: B2 j0 B1 j2 B4 i2 B1 i0"`.
//! Without an argument the trivial-tangle word is used.

use pillowcase::curves::{basic_actions, compile, curve_shapes, CurveWord};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "cyclic: B1 j2 B4 i2 B1 i0 B2 j0 B1 j1 B3 i1".to_string());
    let word: CurveWord = match text.parse() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let normal = match word.normalize() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    if normal != word {
        println!("normalized: {normal}");
    }
    let module = compile(&normal).expect("normalized words compile");
    print!("{module}");

    let basic = basic_actions(&module).len();
    println!(
        "# {} basic actions, {} composites",
        basic,
        module.action_count() - basic
    );
    for shape in curve_shapes(&module) {
        println!("# {shape}");
    }
    let report = module.validate();
    println!(
        "# A-infinity relations: {} ({} sequences)",
        if report.passed() { "ok" } else { "FAIL" },
        report.sequences_checked
    );
}
