//! The example corpus: curve words, module files and direct-sum manifests,
//! with the ranks their pairings against the trivial-tangle curve are
//! expected to have.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::curves::{compile_text, CurveError};
use crate::pairing::{pair, PairingError};
use crate::structures::{ParseError, RightModule};

const EMBEDDED: &[(&str, &str)] = &[
    ("lnat.curve", include_str!("../data/lnat.curve")),
    ("lnat.mod", include_str!("../data/lnat.mod")),
    ("unknot.curve", include_str!("../data/unknot.curve")),
    ("unknot.mod", include_str!("../data/unknot.mod")),
    ("belt.curve", include_str!("../data/belt.curve")),
    (
        "belt_verbatim.mod",
        include_str!("../data/belt_verbatim.mod"),
    ),
    ("t23.mod", include_str!("../data/t23.mod")),
    ("r0.mod", include_str!("../data/r0.mod")),
    ("r1.mod", include_str!("../data/r1.mod")),
    ("r4.mod", include_str!("../data/r4.mod")),
    ("t34.sum", include_str!("../data/t34.sum")),
    ("t37.sum", include_str!("../data/t37.sum")),
    ("t511.sum", include_str!("../data/t511.sum")),
    ("bar56.dd", include_str!("../data/bar56.dd")),
    ("barr24.dd", include_str!("../data/barr24.dd")),
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        source: std::io::Error,
    },
    #[error("no embedded file `{0}`")]
    Missing(String),
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{file}: {source}")]
    Curve { file: String, source: CurveError },
    #[error("{file}: unsupported extension (expected .curve, .mod or .sum)")]
    Extension { file: String },
    #[error("{file}: {source}")]
    Pairing { file: String, source: PairingError },
}

/// Where corpus files come from.
#[derive(Clone, Debug, Default)]
pub enum DataSource {
    #[default]
    Embedded,
    Directory(PathBuf),
}

impl DataSource {
    pub fn read(&self, file: &str) -> Result<String, CorpusError> {
        match self {
            DataSource::Embedded => EMBEDDED
                .iter()
                .find(|(name, _)| *name == file)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| CorpusError::Missing(file.to_string())),
            DataSource::Directory(dir) => {
                std::fs::read_to_string(dir.join(file)).map_err(|source| CorpusError::Io {
                    file: file.to_string(),
                    source,
                })
            }
        }
    }

    pub fn files() -> impl Iterator<Item = &'static str> {
        EMBEDDED.iter().map(|(name, _)| *name)
    }
}

/// A module together with the actions dropped while loading it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub module: RightModule,
    pub dropped: Vec<String>,
}

/// Loads a `.curve` (compiled), `.mod` (idempotent-inconsistent actions
/// dropped and reported) or `.sum` (direct sum of the listed files).
pub fn load_module(source: &DataSource, file: &str) -> Result<Loaded, CorpusError> {
    let text = source.read(file)?;
    load_text(source, file, &text)
}

/// Loads a module from a path on disk; `.sum` entries resolve relative to
/// the manifest's directory.
pub fn load_path(path: &Path) -> Result<Loaded, CorpusError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        file: file.clone(),
        source,
    })?;
    let dir = path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    load_text(&DataSource::Directory(dir), &file, &text)
}

fn load_text(source: &DataSource, file: &str, text: &str) -> Result<Loaded, CorpusError> {
    let ext = Path::new(file).extension().and_then(|e| e.to_str());
    match ext {
        Some("curve") => {
            let module = compile_text(text).map_err(|source| CorpusError::Curve {
                file: file.to_string(),
                source,
            })?;
            Ok(Loaded {
                module,
                dropped: Vec::new(),
            })
        }
        Some("mod") => {
            let raw: RightModule = text.parse().map_err(|source| CorpusError::Parse {
                file: file.to_string(),
                source,
            })?;
            let (module, dropped) = raw.split_inconsistent();
            let dropped = dropped
                .iter()
                .map(|a| format!("{file}: dropped {}", raw.describe_action(a)))
                .collect();
            Ok(Loaded { module, dropped })
        }
        Some("sum") => {
            let mut summands = Vec::new();
            let mut dropped = Vec::new();
            for line in text.lines() {
                let entry = line.split('#').next().unwrap_or("").trim();
                if entry.is_empty() {
                    continue;
                }
                let part = load_module(source, entry)?;
                summands.push(part.module);
                dropped.extend(part.dropped);
            }
            Ok(Loaded {
                module: RightModule::direct_sum(&summands),
                dropped,
            })
        }
        _ => Err(CorpusError::Extension {
            file: file.to_string(),
        }),
    }
}

/// One corpus example paired against the trivial-tangle curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub file: &'static str,
    pub expected_rank: Option<usize>,
    /// Expected `(generators, arrows)` of the pairing complex.
    pub expected_shape: Option<(usize, usize)>,
}

pub const REFERENCE: &str = "lnat.mod";

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "unknot",
        file: "unknot.curve",
        expected_rank: Some(1),
        expected_shape: Some((13, 12)),
    },
    CorpusEntry {
        name: "trefoil",
        file: "t23.mod",
        expected_rank: Some(3),
        expected_shape: Some((15, 10)),
    },
    CorpusEntry {
        name: "T(3,4)",
        file: "t34.sum",
        expected_rank: Some(5),
        expected_shape: None,
    },
    CorpusEntry {
        name: "T(3,7)",
        file: "t37.sum",
        expected_rank: Some(9),
        expected_shape: None,
    },
    CorpusEntry {
        name: "T(5,11)",
        file: "t511.sum",
        expected_rank: Some(17),
        expected_shape: None,
    },
    CorpusEntry {
        name: "R0",
        file: "r0.mod",
        expected_rank: Some(1),
        expected_shape: None,
    },
    CorpusEntry {
        name: "R1",
        file: "r1.mod",
        expected_rank: Some(4),
        expected_shape: None,
    },
    CorpusEntry {
        name: "R4",
        file: "r4.mod",
        expected_rank: Some(4),
        expected_shape: None,
    },
    CorpusEntry {
        name: "trivial tangle",
        file: "lnat.curve",
        expected_rank: None,
        expected_shape: None,
    },
    CorpusEntry {
        name: "belt",
        file: "belt.curve",
        expected_rank: None,
        expected_shape: None,
    },
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub file: String,
    pub generators: usize,
    pub arrows: usize,
    pub rank: usize,
    pub expected_rank: Option<usize>,
    pub ainfty_ok: bool,
    pub dropped: Vec<String>,
    pub passed: bool,
}

impl fmt::Display for EntryOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: generators {}, arrows {}, rank {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.generators,
            self.arrows,
            self.rank
        )?;
        if let Some(e) = self.expected_rank {
            write!(f, " (expected {e})")?;
        }
        if !self.ainfty_ok {
            write!(f, ", A-infinity relations FAIL")?;
        }
        Ok(())
    }
}

/// Pairs one entry against `reference`.
pub fn run_entry(
    source: &DataSource,
    entry: &CorpusEntry,
    reference: &RightModule,
) -> Result<EntryOutcome, CorpusError> {
    let loaded = load_module(source, entry.file)?;
    let complex = pair(&loaded.module, reference).map_err(|source| CorpusError::Pairing {
        file: entry.file.to_string(),
        source,
    })?;
    let rank = complex.homology_rank();
    let ainfty_ok = loaded.module.validate().passed();
    let shape = (complex.generator_count(), complex.arrow_count());
    let passed = ainfty_ok
        && entry.expected_rank.is_none_or(|r| r == rank)
        && entry.expected_shape.is_none_or(|s| s == shape);
    Ok(EntryOutcome {
        name: entry.name.to_string(),
        file: entry.file.to_string(),
        generators: shape.0,
        arrows: shape.1,
        rank,
        expected_rank: entry.expected_rank,
        ainfty_ok,
        dropped: loaded.dropped,
        passed,
    })
}

/// Runs every entry against the reference module from the same source.
pub fn run_corpus(source: &DataSource) -> Result<Vec<EntryOutcome>, CorpusError> {
    let reference = load_module(source, REFERENCE)?.module;
    ENTRIES
        .iter()
        .map(|e| run_entry(source, e, &reference))
        .collect()
}
