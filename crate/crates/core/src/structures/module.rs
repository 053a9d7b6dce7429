//! Finite A-infinity modules over the pillowcase algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use crate::algebra::{Basis, Idempotent};

use super::iso::{find_isomorphism, LabelledGraph};
use super::{tokens, ParseError, StructureError};

/// Which side the algebra acts on.
pub trait Side: Clone + Copy + Default + fmt::Debug + PartialEq + Eq {
    const KIND: &'static str;

    /// Idempotent compatibility of an action consuming `inputs` at a
    /// generator sitting on `source` and landing on `target`.
    fn chain_ok(source: Idempotent, inputs: &[Basis], target: Idempotent) -> bool;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Right;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Left;

fn composable(inputs: &[Basis]) -> bool {
    inputs.iter().all(|b| !b.is_idempotent())
        && inputs.windows(2).all(|w| w[0].right() == w[1].left())
}

impl Side for Right {
    const KIND: &'static str = "right";

    fn chain_ok(source: Idempotent, inputs: &[Basis], target: Idempotent) -> bool {
        match (inputs.first(), inputs.last()) {
            (Some(first), Some(last)) => {
                composable(inputs) && first.left() == source && last.right() == target
            }
            _ => source == target,
        }
    }
}

impl Side for Left {
    const KIND: &'static str = "left";

    fn chain_ok(source: Idempotent, inputs: &[Basis], target: Idempotent) -> bool {
        match (inputs.first(), inputs.last()) {
            (Some(first), Some(last)) => {
                composable(inputs) && last.right() == source && first.left() == target
            }
            _ => source == target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub idempotent: Idempotent,
}

/// One action `source ⊗ inputs -> target` (right modules) or
/// `inputs ⊗ source -> target` (left modules). Empty `inputs` encodes a
/// differential arrow.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    pub source: usize,
    pub inputs: Vec<Basis>,
    pub target: usize,
}

/// A finite module over F2. Actions form a set; inserting an action twice
/// removes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module<S: Side> {
    generators: Vec<Generator>,
    actions: BTreeSet<Action>,
    side: PhantomData<S>,
}

pub type RightModule = Module<Right>;
pub type LeftModule = Module<Left>;

impl<S: Side> Default for Module<S> {
    fn default() -> Self {
        Self {
            generators: Vec::new(),
            actions: BTreeSet::new(),
            side: PhantomData,
        }
    }
}

impl<S: Side> Module<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        idempotent: Idempotent,
    ) -> Result<usize, StructureError> {
        let name = name.into();
        if self.generator_index(&name).is_some() {
            return Err(StructureError::DuplicateGenerator(name));
        }
        self.generators.push(Generator { name, idempotent });
        Ok(self.generators.len() - 1)
    }

    /// Adds the action over F2 (toggles it).
    pub fn toggle_action(&mut self, source: usize, inputs: Vec<Basis>, target: usize) {
        assert!(source < self.generators.len() && target < self.generators.len());
        let action = Action {
            source,
            inputs,
            target,
        };
        if !self.actions.remove(&action) {
            self.actions.insert(action);
        }
    }

    /// Convenience: toggle an action by generator names.
    pub fn toggle_named(
        &mut self,
        source: &str,
        inputs: &[Basis],
        target: &str,
    ) -> Result<(), StructureError> {
        let s = self.require(source)?;
        let t = self.require(target)?;
        self.toggle_action(s, inputs.to_vec(), t);
        Ok(())
    }

    fn require(&self, name: &str) -> Result<usize, StructureError> {
        self.generator_index(name)
            .ok_or_else(|| StructureError::UnknownGenerator(name.to_string()))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn actions(&self) -> impl Iterator<Item = &Action> {
        self.actions.iter()
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn idempotent(&self, generator: usize) -> Idempotent {
        self.generators[generator].idempotent
    }

    /// Longest input sequence of any action.
    pub fn max_arity(&self) -> usize {
        self.actions
            .iter()
            .map(|a| a.inputs.len())
            .max()
            .unwrap_or(0)
    }

    pub fn is_chain_consistent(&self, action: &Action) -> bool {
        S::chain_ok(
            self.idempotent(action.source),
            &action.inputs,
            self.idempotent(action.target),
        )
    }

    /// Actions whose inputs do not match the idempotents of their endpoints.
    pub fn idempotent_violations(&self) -> Vec<&Action> {
        self.actions
            .iter()
            .filter(|a| !self.is_chain_consistent(a))
            .collect()
    }

    /// Drops every idempotent-inconsistent action, returning them.
    pub fn split_inconsistent(&self) -> (Self, Vec<Action>) {
        let mut kept = self.clone();
        let dropped: Vec<Action> = self.idempotent_violations().into_iter().cloned().collect();
        for a in &dropped {
            kept.actions.remove(a);
        }
        (kept, dropped)
    }

    pub fn describe_action(&self, a: &Action) -> String {
        let inputs: Vec<_> = a.inputs.iter().map(|b| b.name()).collect();
        format!(
            "{} | {} -> {}",
            self.generators[a.source].name,
            inputs.join(" "),
            self.generators[a.target].name
        )
    }

    fn as_graph(&self) -> LabelledGraph<Idempotent, Vec<Basis>> {
        LabelledGraph {
            colors: self.generators.iter().map(|g| g.idempotent).collect(),
            edges: self
                .actions
                .iter()
                .map(|a| (a.source, a.inputs.clone(), a.target))
                .collect(),
        }
    }

    /// A generator bijection carrying `self` onto `other`, if one exists.
    pub fn isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        find_isomorphism(&self.as_graph(), &other.as_graph())
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Disjoint union. Generator names get a `.k` suffix (k = summand
    /// position) when more than one summand is given.
    pub fn direct_sum(summands: &[Self]) -> Self {
        let mut out = Self::new();
        for (k, m) in summands.iter().enumerate() {
            let offset = out.generators.len();
            for g in &m.generators {
                let name = if summands.len() > 1 {
                    format!("{}.{k}", g.name)
                } else {
                    g.name.clone()
                };
                out.generators.push(Generator {
                    name,
                    idempotent: g.idempotent,
                });
            }
            for a in &m.actions {
                out.actions.insert(Action {
                    source: a.source + offset,
                    inputs: a.inputs.clone(),
                    target: a.target + offset,
                });
            }
        }
        out
    }

    fn dual_generators(&self) -> Vec<Generator> {
        self.generators
            .iter()
            .map(|g| Generator {
                name: dual_name(&g.name),
                idempotent: g.idempotent,
            })
            .collect()
    }

    fn flipped<T: Side>(&self) -> Module<T> {
        Module {
            generators: self.dual_generators(),
            actions: self
                .actions
                .iter()
                .map(|a| Action {
                    source: a.target,
                    inputs: a.inputs.clone(),
                    target: a.source,
                })
                .collect(),
            side: PhantomData,
        }
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

impl RightModule {
    /// The dual left module: generators are starred, and every action
    /// `x ⊗ (a1..ak) -> y` becomes `(a1..ak) ⊗ y* -> x*`.
    pub fn dualize(&self) -> LeftModule {
        self.flipped()
    }

    /// Action table lookup: all targets of `source ⊗ inputs`, over F2.
    fn action_table(&self) -> BTreeMap<(usize, &[Basis]), BTreeSet<usize>> {
        let mut table: BTreeMap<(usize, &[Basis]), BTreeSet<usize>> = BTreeMap::new();
        for a in &self.actions {
            table
                .entry((a.source, a.inputs.as_slice()))
                .or_default()
                .insert(a.target);
        }
        table
    }

    /// Checks idempotent consistency and the A-infinity relations for every
    /// generator and every composable input sequence of length at most
    /// `max_arity`.
    pub fn validate_ainfty(&self, max_arity: usize) -> AinftyReport {
        let table = self.action_table();
        let act = |x: usize, inputs: &[Basis]| -> Vec<usize> {
            table
                .get(&(x, inputs))
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default()
        };
        let mut report = AinftyReport {
            idempotent_violations: self
                .idempotent_violations()
                .into_iter()
                .map(|a| self.describe_action(a))
                .collect(),
            ..AinftyReport::default()
        };
        let has_differential = self.actions.iter().any(|a| a.inputs.is_empty());

        for x in 0..self.generators.len() {
            for seq in composable_sequences(self.idempotent(x), max_arity) {
                if seq.is_empty() && !has_differential {
                    continue;
                }
                report.sequences_checked += 1;
                let mut residue: BTreeMap<usize, bool> = BTreeMap::new();
                let mut flip = |z: usize| {
                    let e = residue.entry(z).or_insert(false);
                    *e = !*e;
                };
                for split in 0..=seq.len() {
                    for y in act(x, &seq[..split]) {
                        for z in act(y, &seq[split..]) {
                            flip(z);
                        }
                    }
                }
                for j in 0..seq.len().saturating_sub(1) {
                    if let Some(c) = seq[j].mul(seq[j + 1]) {
                        let mut merged = seq[..j].to_vec();
                        merged.push(c);
                        merged.extend_from_slice(&seq[j + 2..]);
                        for z in act(x, &merged) {
                            flip(z);
                        }
                    }
                }
                let bad: Vec<String> = residue
                    .into_iter()
                    .filter(|&(_, odd)| odd)
                    .map(|(z, _)| self.generators[z].name.clone())
                    .collect();
                if !bad.is_empty() {
                    report.relation_violations.push(RelationViolation {
                        generator: self.generators[x].name.clone(),
                        inputs: seq.clone(),
                        residue: bad,
                    });
                }
            }
        }
        report
    }

    /// [`validate_ainfty`](Self::validate_ainfty) at the default arity,
    /// two more than the longest action.
    pub fn validate(&self) -> AinftyReport {
        self.validate_ainfty(self.max_arity() + 2)
    }
}

impl LeftModule {
    /// Inverse of [`RightModule::dualize`].
    pub fn dualize(&self) -> RightModule {
        self.flipped()
    }
}

/// Every composable sequence of non-idempotent basis elements starting at
/// `start`, up to the given length (the empty sequence included).
pub fn composable_sequences(start: Idempotent, max_len: usize) -> Vec<Vec<Basis>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Idempotent, Vec<Basis>)> = vec![(start, Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (at, seq) in &frontier {
            for b in Basis::chords().filter(|b| b.left() == *at) {
                let mut s = seq.clone();
                s.push(b);
                out.push(s.clone());
                next.push((b.right(), s));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub generator: String,
    pub inputs: Vec<Basis>,
    pub residue: Vec<String>,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<_> = self.inputs.iter().map(|b| b.name()).collect();
        write!(
            f,
            "({}; {}) leaves {}",
            self.generator,
            inputs.join(", "),
            self.residue.join(" + ")
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AinftyReport {
    pub idempotent_violations: Vec<String>,
    pub relation_violations: Vec<RelationViolation>,
    pub sequences_checked: usize,
}

impl AinftyReport {
    pub fn passed(&self) -> bool {
        self.idempotent_violations.is_empty() && self.relation_violations.is_empty()
    }

    /// Does some violation sit exactly at `(generator; inputs)`?
    pub fn fails_at(&self, generator: &str, inputs: &[Basis]) -> bool {
        self.relation_violations
            .iter()
            .any(|v| v.generator == generator && v.inputs == inputs)
    }
}

impl<S: Side> fmt::Display for Module<S> {
    /// Module text format: `gen <name> <idempotent>` and
    /// `act <src> | <elem> ... -> <tgt>` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "gen {} {}", g.name, g.idempotent)?;
        }
        for a in &self.actions {
            writeln!(f, "act {}", self.describe_action(a))?;
        }
        Ok(())
    }
}

impl<S: Side> FromStr for Module<S> {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut module = Module::new();
        for (lineno, line) in tokens::content_lines(text) {
            let err = |message: String| ParseError {
                line: lineno,
                message,
            };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("gen") => {
                    let (Some(name), Some(idem), None) = (words.next(), words.next(), words.next())
                    else {
                        return Err(err("expected `gen <name> <idempotent>`".into()));
                    };
                    let idem = idem.parse().map_err(|e| err(format!("{e}")))?;
                    module
                        .add_generator(name, idem)
                        .map_err(|e| err(e.to_string()))?;
                }
                Some("act") => {
                    let rest = line.trim_start().strip_prefix("act").unwrap_or_default();
                    let (src, inputs, tgt) = tokens::split_action(rest).map_err(err)?;
                    let inputs = inputs
                        .split_whitespace()
                        .map(|t| t.parse::<Basis>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| err(e.to_string()))?;
                    if let Some(b) = inputs.iter().find(|b| b.is_idempotent()) {
                        return Err(err(format!("idempotent `{b}` cannot be an action input")));
                    }
                    module
                        .toggle_named(src, &inputs, tgt)
                        .map_err(|e| err(e.to_string()))?;
                }
                Some(other) => return Err(err(format!("unknown record `{other}`"))),
                None => {}
            }
        }
        Ok(module)
    }
}
