//! A-infinity modules and type DD structures over the pillowcase algebra.

mod dd;
mod iso;
mod module;

use thiserror::Error;

pub use dd::{Arrow, CancelOrder, DDStructure, DdGenerator, DdReport};
pub use module::{
    composable_sequences, Action, AinftyReport, Generator, Left, LeftModule, Module,
    RelationViolation, Right, RightModule, Side,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("coefficient {0} does not fit the idempotents of {1}")]
    IncompatibleCoefficient(String, String),
    #[error("cannot cancel {0}: {1}")]
    NotCancellable(String, String),
    #[error("structure relation failed after cancelling {pair}: {detail}")]
    RelationBroken { pair: String, detail: String },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

pub(crate) mod tokens {
    /// Non-blank lines with `#` comments stripped, numbered from 1.
    pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
        text.lines().enumerate().filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then_some((i + 1, line))
        })
    }

    /// Splits `<src> | <middle> -> <tgt>`.
    pub fn split_action(line: &str) -> Result<(&str, &str, &str), String> {
        let (src, rest) = line
            .split_once('|')
            .ok_or_else(|| "expected `<src> | ... -> <tgt>`".to_string())?;
        let (middle, tgt) = rest
            .rsplit_once("->")
            .ok_or_else(|| "missing `->`".to_string())?;
        let (src, tgt) = (src.trim(), tgt.trim());
        if src.is_empty() || tgt.is_empty() || tgt.contains(char::is_whitespace) {
            return Err("malformed endpoints".to_string());
        }
        Ok((src, middle.trim(), tgt))
    }
}
