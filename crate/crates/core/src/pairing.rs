//! The pairing complex `M1 ⊠ bar ⊠ dual(M0)` and its homology rank.
//!
//! With a strictly unital box tensor product only three kinds of terms
//! survive: chains of left-emitting bar arrows fed into `M1`, chains of
//! right-emitting arrows fed into the dual of `M0`, and single arrows with
//! identity coefficients on both sides (present only in an unreduced bar).
//! A chain mixing the two sides always feeds an identity into some action
//! of arity at least two, which vanishes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Basis;
use crate::bar::builtin_bar_r;
use crate::f2linear::{homology_rank, F2Matrix};
use crate::structures::{DDStructure, LeftModule, RightModule};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PairingError {
    #[error("arrow {0} emits on both sides")]
    TwoSided(String),
    #[error("boundary does not square to zero ({0} nonzero entries)")]
    NotDifferential(usize),
    #[error("rank {rank} minus 2 is negative; the curves cannot be periodic")]
    NegativeIntersection { rank: usize },
}

/// Indices into the right module, the DD structure and the left module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairingGenerator {
    pub m: usize,
    pub b: usize,
    pub n: usize,
}

#[derive(Clone, Debug)]
pub struct PairingComplex {
    generators: Vec<PairingGenerator>,
    names: Vec<String>,
    arrows: BTreeSet<(usize, usize)>,
    boundary: F2Matrix,
}

/// Which term of the boundary an arrow comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Every chain of arrows out of `start` that emit only on `side`, up to
/// `max_len` arrows, as `(end, emitted coefficients in order)`.
pub fn emission_chains(
    dd: &DDStructure,
    start: usize,
    side: Side,
    max_len: usize,
) -> Vec<(usize, Vec<Basis>)> {
    let mut out = Vec::new();
    let mut stack = vec![(start, Vec::new())];
    while let Some((at, emitted)) = stack.pop() {
        if emitted.len() == max_len {
            continue;
        }
        for a in dd.arrows_from(at) {
            let coefficient = match side {
                Side::Left if a.emits_left() => a.left,
                Side::Right if a.emits_right() => a.right,
                _ => continue,
            };
            let mut next = emitted.clone();
            next.push(coefficient);
            out.push((a.target, next.clone()));
            stack.push((a.target, next));
        }
    }
    out
}

fn action_index<'a>(
    actions: impl Iterator<Item = &'a crate::structures::Action>,
) -> BTreeMap<&'a [Basis], Vec<(usize, usize)>> {
    let mut index: BTreeMap<&[Basis], Vec<(usize, usize)>> = BTreeMap::new();
    for a in actions {
        index
            .entry(a.inputs.as_slice())
            .or_default()
            .push((a.source, a.target));
    }
    index
}

/// Builds the pairing complex of a right module, a DD structure and a left
/// module.
pub fn build_pairing(
    m1: &RightModule,
    dd: &DDStructure,
    n0: &LeftModule,
) -> Result<PairingComplex, PairingError> {
    if let Some(a) = dd.arrows().find(|a| a.is_two_sided()) {
        return Err(PairingError::TwoSided(dd.describe_arrow(a)));
    }
    let mut generators = Vec::new();
    for (m, mg) in m1.generators().iter().enumerate() {
        for (b, bg) in dd.generators().iter().enumerate() {
            if bg.left != mg.idempotent {
                continue;
            }
            for (n, ng) in n0.generators().iter().enumerate() {
                if ng.idempotent == bg.right {
                    generators.push(PairingGenerator { m, b, n });
                }
            }
        }
    }
    let position: BTreeMap<PairingGenerator, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (*g, i))
        .collect();

    let left_actions = action_index(m1.actions());
    let right_actions = action_index(n0.actions());
    let mut entries: Vec<(usize, usize)> = Vec::new();
    let mut push = |from: PairingGenerator, to: PairingGenerator| {
        if let (Some(&s), Some(&t)) = (position.get(&from), position.get(&to)) {
            entries.push((s, t));
        }
    };

    for &g in &generators {
        let PairingGenerator { m, b, n } = g;
        for (end, emitted) in emission_chains(dd, b, Side::Left, m1.max_arity()) {
            for &(src, tgt) in left_actions.get(emitted.as_slice()).into_iter().flatten() {
                if src == m {
                    push(g, PairingGenerator { m: tgt, b: end, n });
                }
            }
        }
        for (end, mut emitted) in emission_chains(dd, b, Side::Right, n0.max_arity()) {
            emitted.reverse();
            for &(src, tgt) in right_actions.get(emitted.as_slice()).into_iter().flatten() {
                if src == n {
                    push(g, PairingGenerator { m, b: end, n: tgt });
                }
            }
        }
        for a in dd.arrows_from(b).filter(|a| a.is_identity()) {
            push(g, PairingGenerator { m, b: a.target, n });
        }
        for &(src, tgt) in left_actions.get(&[][..]).into_iter().flatten() {
            if src == m {
                push(g, PairingGenerator { m: tgt, b, n });
            }
        }
        for &(src, tgt) in right_actions.get(&[][..]).into_iter().flatten() {
            if src == n {
                push(g, PairingGenerator { m, b, n: tgt });
            }
        }
    }

    let mut arrows = BTreeSet::new();
    for e in entries {
        if !arrows.remove(&e) {
            arrows.insert(e);
        }
    }
    let size = generators.len();
    let boundary = F2Matrix::from_entries(size, size, arrows.iter().map(|&(s, t)| (t, s)));
    let square = boundary.mul(&boundary).expect("square matrix");
    if !square.is_zero() {
        return Err(PairingError::NotDifferential(square.count_ones()));
    }
    let names = generators
        .iter()
        .map(|g| {
            format!(
                "{}|{}|{}",
                m1.generators()[g.m].name,
                dd.generators()[g.b].name,
                n0.generators()[g.n].name
            )
        })
        .collect();
    Ok(PairingComplex {
        generators,
        names,
        arrows,
        boundary,
    })
}

impl PairingComplex {
    pub fn generators(&self) -> &[PairingGenerator] {
        &self.generators
    }

    /// Generator names `m|b|n`.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Arrows as `(source, target)` generator positions.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().copied()
    }

    pub fn has_arrow(&self, from: &str, to: &str) -> bool {
        let find = |n: &str| self.names.iter().position(|x| x == n);
        match (find(from), find(to)) {
            (Some(s), Some(t)) => self.arrows.contains(&(s, t)),
            _ => false,
        }
    }

    /// The boundary matrix, column = source, row = target.
    pub fn boundary(&self) -> &F2Matrix {
        &self.boundary
    }

    pub fn homology_rank(&self) -> usize {
        homology_rank(&self.boundary).expect("checked when built")
    }

    pub fn summary(&self) -> PairingSummary {
        PairingSummary {
            generators: self.generator_count(),
            arrows: self.arrow_count(),
            rank: self.homology_rank(),
            intersection: None,
        }
    }

    /// Full listing: generators, then arrows `source -> target`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("generator {name}\n"));
        }
        for &(s, t) in &self.arrows {
            out.push_str(&format!("arrow {} -> {}\n", self.names[s], self.names[t]));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairingSummary {
    pub generators: usize,
    pub arrows: usize,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<usize>,
}

impl fmt::Display for PairingSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators)?;
        writeln!(f, "arrows: {}", self.arrows)?;
        write!(f, "rank: {}", self.rank)?;
        if let Some(i) = self.intersection {
            write!(f, "\nintersection: {i}")?;
        }
        Ok(())
    }
}

/// The pairing of `m1` with the dual of `m0` through bar_r.
pub fn pair(m1: &RightModule, m0: &RightModule) -> Result<PairingComplex, PairingError> {
    build_pairing(m1, &builtin_bar_r(), &m0.dualize())
}

pub fn pair_rank(m1: &RightModule, m0: &RightModule) -> Result<usize, PairingError> {
    Ok(pair(m1, m0)?.homology_rank())
}

/// Rank through an arbitrary DD structure, e.g. the unreduced bar.
pub fn pair_rank_with(
    m1: &RightModule,
    dd: &DDStructure,
    m0: &RightModule,
) -> Result<usize, PairingError> {
    Ok(build_pairing(m1, dd, &m0.dualize())?.homology_rank())
}

/// The rank, less 2 when the caller declares the pair periodic.
pub fn intersection_number(rank: usize, periodic: bool) -> Result<usize, PairingError> {
    if !periodic {
        return Ok(rank);
    }
    rank.checked_sub(2)
        .ok_or(PairingError::NegativeIntersection { rank })
}
