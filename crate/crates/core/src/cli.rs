//! Command-line front end. `run` is the whole program; the binary only
//! forwards arguments and the exit code.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::exhaustive_checks;
use crate::bar::{build_bar, certify, parse_bar, DEFAULT_ORDERS};
use crate::corpus::{self, load_module, load_path, DataSource, Loaded, ENTRIES, REFERENCE};
use crate::curves::{compile, curve_shapes, CurveWord};
use crate::pairing::{build_pairing, intersection_number};
use crate::structures::{CancelOrder, DDStructure, RightModule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pillowcase",
    version,
    about = "Pair immersed curves in the pillowcase through the reduced dual bar bimodule"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Read corpus and bar fixtures from this directory instead of the
    /// embedded copies.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a curve file into a module file.
    CompileCurve {
        curve: String,
        /// Write the module here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Pair two curves or modules and report the complex.
    Pair {
        first: String,
        second: String,
        /// List every generator and arrow of the complex.
        #[arg(long)]
        dump: bool,
        /// The curves bound an annulus; subtract 2 for the intersection number.
        #[arg(long)]
        periodic: bool,
        /// Use the unreduced 56-generator bar.
        #[arg(long)]
        unreduced: bool,
    },
    /// Print only the homology rank of a pairing.
    Rank {
        first: String,
        second: String,
        #[arg(long)]
        periodic: bool,
    },
    /// Check idempotents and A-infinity relations of a module.
    ValidateModule {
        module: String,
        /// Longest input sequence to check (default: longest action + 2).
        #[arg(long)]
        max_arity: Option<usize>,
    },
    /// Build, reduce or certify the bar bimodule.
    Bar {
        #[command(subcommand)]
        action: BarCommand,
    },
    /// Run every built-in check.
    Selftest,
    /// Work with the example corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum BarCommand {
    /// Print the unreduced bar built from the dual path basis.
    Build,
    /// Cancel the unreduced bar down and print the result.
    Reduce {
        /// `first`, `last` or a random seed.
        #[arg(long, default_value = "first")]
        order: String,
    },
    /// Compare construction, fixture listing and bar_r.
    Certify,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCommand {
    /// Pair every corpus entry against the trivial-tangle curve.
    Run,
}

#[derive(Debug)]
struct InputError(String);

impl<E: fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<i32, InputError>;

/// Stops writing, without failing, once the reader has gone away
/// (`pillowcase bar build | head`).
struct PipeTolerant<'a> {
    inner: &'a mut dyn Write,
    closed: bool,
}

impl Write for PipeTolerant<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        if self.closed {
            return Ok(buf.len());
        }
        match self.inner.write(buf) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                self.closed = true;
                Ok(buf.len())
            }
            other => other,
        }
    }

    fn flush(&mut self) -> std::io::Result<()> {
        if self.closed {
            return Ok(());
        }
        match self.inner.flush() {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                self.closed = true;
                Ok(())
            }
            other => other,
        }
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    format: Format,
}

impl Output<'_> {
    fn record<T: Serialize + fmt::Display>(&mut self, value: &T) -> std::io::Result<()> {
        match self.format {
            Format::Text => writeln!(self.out, "{value}"),
            Format::JsonLines => writeln!(
                self.out,
                "{}",
                serde_json::to_string(value).expect("records serialize")
            ),
        }
    }

    fn text(&mut self, line: impl fmt::Display) -> std::io::Result<()> {
        if self.format == Format::Text {
            writeln!(self.out, "{line}")?;
        }
        Ok(())
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_INPUT_ERROR
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let source = cli
        .data_dir
        .clone()
        .map_or(DataSource::Embedded, DataSource::Directory);
    let mut sink = PipeTolerant {
        inner: out,
        closed: false,
    };
    let mut output = Output {
        out: &mut sink,
        format: cli.format,
    };
    match dispatch(&cli.command, &source, &mut output) {
        Ok(code) => code,
        Err(InputError(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT_ERROR
        }
    }
}

fn dispatch(command: &Command, source: &DataSource, out: &mut Output) -> Outcome {
    match command {
        Command::CompileCurve { curve, out: path } => {
            compile_curve(curve, path.as_deref(), source, out)
        }
        Command::Pair {
            first,
            second,
            dump,
            periodic,
            unreduced,
        } => pair_files(first, second, *dump, *periodic, *unreduced, source, out),
        Command::Rank {
            first,
            second,
            periodic,
        } => rank_files(first, second, *periodic, source, out),
        Command::ValidateModule { module, max_arity } => {
            validate_module(module, *max_arity, source, out)
        }
        Command::Bar { action } => bar(action, source, out),
        Command::Selftest => selftest(source, out),
        Command::Corpus {
            action: CorpusCommand::Run,
        } => corpus_run(source, out),
    }
}

/// A path on disk if it exists, otherwise a corpus file name.
fn read_input(arg: &str, source: &DataSource) -> Result<String, InputError> {
    let path = Path::new(arg);
    if path.exists() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(source.read(arg)?)
    }
}

fn load_input(arg: &str, source: &DataSource) -> Result<Loaded, InputError> {
    let path = Path::new(arg);
    if path.exists() {
        Ok(load_path(path)?)
    } else {
        Ok(load_module(source, arg)?)
    }
}

fn report_dropped(loaded: &Loaded, out: &mut Output) -> std::io::Result<()> {
    for d in &loaded.dropped {
        out.text(format!("warning: {d}"))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CompileRecord {
    generators: usize,
    actions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    module: Option<String>,
}

impl fmt::Display for CompileRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = &self.module {
            write!(f, "{m}")?;
        }
        write!(
            f,
            "# generators: {}\n# actions: {}",
            self.generators, self.actions
        )
    }
}

fn compile_curve(
    curve: &str,
    path: Option<&Path>,
    source: &DataSource,
    out: &mut Output,
) -> Outcome {
    let text = read_input(curve, source)?;
    let word: CurveWord = text.parse()?;
    let module = compile(&word.normalize()?)?;
    let mut record = CompileRecord {
        generators: module.generators().len(),
        actions: module.action_count(),
        module: Some(module.to_string()),
    };
    if let Some(p) = path {
        std::fs::write(p, module.to_string())?;
        record.module = None;
    }
    out.record(&record)?;
    Ok(EXIT_OK)
}

fn pair_files(
    first: &str,
    second: &str,
    dump: bool,
    periodic: bool,
    unreduced: bool,
    source: &DataSource,
    out: &mut Output,
) -> Outcome {
    let (m1, m0) = (load_input(first, source)?, load_input(second, source)?);
    report_dropped(&m1, out)?;
    report_dropped(&m0, out)?;
    let dd = if unreduced {
        build_bar()
    } else {
        reference_bar(source)?
    };
    let complex = build_pairing(&m1.module, &dd, &m0.module.dualize())?;
    let mut summary = complex.summary();
    if periodic {
        summary.intersection = Some(intersection_number(summary.rank, true)?);
    }
    if dump {
        match out.format {
            Format::Text => write!(out.out, "{}", complex.dump())?,
            Format::JsonLines => {
                for name in complex.names() {
                    writeln!(out.out, "{}", serde_json::json!({ "generator": name }))?;
                }
                for (s, t) in complex.arrows() {
                    let (s, t) = (&complex.names()[s], &complex.names()[t]);
                    writeln!(out.out, "{}", serde_json::json!({ "arrow": [s, t] }))?;
                }
            }
        }
    }
    out.record(&summary)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RankRecord {
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    intersection: Option<usize>,
}

impl fmt::Display for RankRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank: {}", self.rank)?;
        if let Some(i) = self.intersection {
            write!(f, "\nintersection: {i}")?;
        }
        Ok(())
    }
}

fn rank_files(
    first: &str,
    second: &str,
    periodic: bool,
    source: &DataSource,
    out: &mut Output,
) -> Outcome {
    let (m1, m0) = (load_input(first, source)?, load_input(second, source)?);
    let dd = reference_bar(source)?;
    let rank = build_pairing(&m1.module, &dd, &m0.module.dualize())?.homology_rank();
    let intersection = if periodic {
        Some(intersection_number(rank, true)?)
    } else {
        None
    };
    out.record(&RankRecord { rank, intersection })?;
    Ok(EXIT_OK)
}

fn reference_bar(source: &DataSource) -> Result<DDStructure, InputError> {
    Ok(parse_bar(&source.read("barr24.dd")?)?)
}

#[derive(Serialize)]
struct ValidationRecord {
    generators: usize,
    actions: usize,
    sequences_checked: usize,
    idempotent_violations: Vec<String>,
    relation_violations: Vec<String>,
    shapes: Vec<String>,
    passed: bool,
}

impl fmt::Display for ValidationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators)?;
        writeln!(f, "actions: {}", self.actions)?;
        writeln!(f, "sequences checked: {}", self.sequences_checked)?;
        for v in &self.idempotent_violations {
            writeln!(f, "idempotent violation: {v}")?;
        }
        for v in &self.relation_violations {
            writeln!(f, "relation violation: {v}")?;
        }
        for s in &self.shapes {
            writeln!(f, "shape: {s}")?;
        }
        write!(f, "result: {}", if self.passed { "pass" } else { "FAIL" })
    }
}

fn validate_module(
    arg: &str,
    max_arity: Option<usize>,
    source: &DataSource,
    out: &mut Output,
) -> Outcome {
    // Module files are checked as written, without dropping anything.
    let module: RightModule = if arg.ends_with(".mod") {
        read_input(arg, source)?.parse()?
    } else {
        load_input(arg, source)?.module
    };
    let arity = max_arity.unwrap_or(module.max_arity() + 2);
    let report = module.validate_ainfty(arity);
    let record = ValidationRecord {
        generators: module.generators().len(),
        actions: module.action_count(),
        sequences_checked: report.sequences_checked,
        idempotent_violations: report.idempotent_violations.clone(),
        relation_violations: report
            .relation_violations
            .iter()
            .map(|v| v.to_string())
            .collect(),
        shapes: curve_shapes(&module)
            .iter()
            .map(|s| s.to_string())
            .collect(),
        passed: report.passed(),
    };
    out.record(&record)?;
    Ok(if record.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn parse_order(order: &str) -> Result<CancelOrder, InputError> {
    match order {
        "first" => Ok(CancelOrder::First),
        "last" => Ok(CancelOrder::Last),
        seed => seed.parse().map(CancelOrder::Seeded).map_err(|_| {
            InputError(format!(
                "order must be `first`, `last` or a seed, got `{seed}`"
            ))
        }),
    }
}

#[derive(Serialize)]
struct DdRecord {
    generators: usize,
    arrows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cancellations: Option<usize>,
    structure: String,
}

impl fmt::Display for DdRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.structure)?;
        write!(
            f,
            "# generators: {}\n# arrows: {}",
            self.generators, self.arrows
        )?;
        if let Some(c) = self.cancellations {
            write!(f, "\n# cancellations: {c}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CheckRecord {
    check: String,
    passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    details: Vec<String>,
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check
        )?;
        for d in &self.details {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

fn bar(action: &BarCommand, source: &DataSource, out: &mut Output) -> Outcome {
    match action {
        BarCommand::Build => {
            let bar = build_bar();
            out.record(&DdRecord {
                generators: bar.generators().len(),
                arrows: bar.arrow_count(),
                cancellations: None,
                structure: bar.to_string(),
            })?;
            Ok(EXIT_OK)
        }
        BarCommand::Reduce { order } => {
            let (reduced, steps) = build_bar().reduce(parse_order(order)?)?;
            out.record(&DdRecord {
                generators: reduced.generators().len(),
                arrows: reduced.arrow_count(),
                cancellations: Some(steps.len()),
                structure: reduced.to_string(),
            })?;
            Ok(EXIT_OK)
        }
        BarCommand::Certify => {
            let check = certify_check(source)?;
            let passed = check.passed;
            out.record(&check)?;
            Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn certify_check(source: &DataSource) -> Result<CheckRecord, InputError> {
    let listing = parse_bar(&source.read("bar56.dd")?)?;
    let reference = parse_bar(&source.read("barr24.dd")?)?;
    let cert = certify(&build_bar(), &listing, &reference, &DEFAULT_ORDERS);
    Ok(CheckRecord {
        check: format!(
            "bar certification ({} -> {} generators over {} orders)",
            cert.built_generators,
            reference.generators().len(),
            cert.orders.len()
        ),
        passed: cert.passed(),
        details: cert.failures(),
    })
}

fn corpus_run(source: &DataSource, out: &mut Output) -> Outcome {
    let outcomes = corpus::run_corpus(source)?;
    let mut all = true;
    for o in &outcomes {
        all &= o.passed;
        out.record(o)?;
    }
    Ok(if all { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn selftest(source: &DataSource, out: &mut Output) -> Outcome {
    let mut checks = Vec::new();

    let algebra = exhaustive_checks();
    checks.push(CheckRecord {
        check: format!(
            "algebra: {} triples, {} dual paths, {} composable pairs",
            algebra.triples, algebra.paths, algebra.pairs
        ),
        passed: algebra.passed(),
        details: algebra.failures,
    });

    checks.push(certify_check(source)?);

    let reference = load_module(source, REFERENCE)?.module;
    let compiled = load_module(source, "lnat.curve")?.module;
    checks.push(CheckRecord {
        check: "trivial-tangle curve compiles to the shipped module".to_string(),
        passed: compiled.is_isomorphic(&reference),
        details: Vec::new(),
    });

    let verbatim: RightModule = source.read("belt_verbatim.mod")?.parse()?;
    checks.push(CheckRecord {
        check: "belt module as printed fails the A-infinity relations".to_string(),
        passed: !verbatim.validate().passed(),
        details: Vec::new(),
    });

    for entry in ENTRIES {
        let o = corpus::run_entry(source, entry, &reference)?;
        let label = match entry.expected_rank {
            Some(r) => format!("rank {} = {r}", entry.name),
            None => format!("{} validates", entry.name),
        };
        let mut details = o.dropped.clone();
        if !o.ainfty_ok {
            details.push("A-infinity relations fail".to_string());
        }
        if o.expected_rank.is_some_and(|r| r != o.rank) {
            details.push(format!("got rank {}", o.rank));
        }
        checks.push(CheckRecord {
            check: label,
            passed: o.passed,
            details,
        });
    }

    let passed = checks.iter().filter(|c| c.passed).count();
    for c in &checks {
        out.record(c)?;
    }
    out.text(format!("result: {passed}/{} checks passed", checks.len()))?;
    Ok(if passed == checks.len() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["pillowcase"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rank_of_embedded_files() {
        let (code, out, _) = run_str(&["rank", "t23.mod", "lnat.mod"]);
        assert_eq!((code, out.as_str()), (0, "rank: 3\n"));
    }

    #[test]
    fn unknown_file_is_an_input_error() {
        let (code, _, err) = run_str(&["rank", "missing.mod", "lnat.mod"]);
        assert_eq!(code, EXIT_INPUT_ERROR);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn bad_order() {
        let (code, _, _) = run_str(&["bar", "reduce", "--order", "sideways"]);
        assert_eq!(code, EXIT_INPUT_ERROR);
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("compile-curve"));
    }
}
