//! Type DD structures over (A, A): generators with an idempotent pair and
//! arrows carrying one algebra coefficient on each side.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::algebra::{Basis, Idempotent};

use super::iso::{find_isomorphism, LabelledGraph};
use super::{tokens, ParseError, StructureError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DdGenerator {
    pub name: String,
    pub left: Idempotent,
    pub right: Idempotent,
}

/// `source -> left ⊗ target ⊗ right`. Identity coefficients are stored as
/// the matching idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub source: usize,
    pub left: Basis,
    pub target: usize,
    pub right: Basis,
}

impl Arrow {
    pub fn is_identity(&self) -> bool {
        self.left.is_idempotent() && self.right.is_idempotent()
    }

    /// Emits a non-identity coefficient on the left only.
    pub fn emits_left(&self) -> bool {
        !self.left.is_idempotent() && self.right.is_idempotent()
    }

    /// Emits a non-identity coefficient on the right only.
    pub fn emits_right(&self) -> bool {
        self.left.is_idempotent() && !self.right.is_idempotent()
    }

    pub fn is_two_sided(&self) -> bool {
        !self.left.is_idempotent() && !self.right.is_idempotent()
    }
}

/// Which cancellable arrow `reduce` picks at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CancelOrder {
    First,
    Last,
    Seeded(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DDStructure {
    generators: Vec<DdGenerator>,
    arrows: BTreeSet<Arrow>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DdReport {
    /// Uncancelled `(source, left, target, right)` terms of delta∘delta.
    pub violations: Vec<String>,
    pub chains_checked: usize,
}

impl DdReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn coeff_name(b: Basis) -> &'static str {
    if b.is_idempotent() {
        "1"
    } else {
        b.name()
    }
}

impl DDStructure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        left: Idempotent,
        right: Idempotent,
    ) -> Result<usize, StructureError> {
        let name = name.into();
        if self.generator_index(&name).is_some() {
            return Err(StructureError::DuplicateGenerator(name));
        }
        self.generators.push(DdGenerator { name, left, right });
        Ok(self.generators.len() - 1)
    }

    /// Adds an arrow over F2. `None` stands for an identity coefficient.
    pub fn toggle_arrow(
        &mut self,
        source: usize,
        left: Option<Basis>,
        target: usize,
        right: Option<Basis>,
    ) -> Result<(), StructureError> {
        let (s, t) = (&self.generators[source], &self.generators[target]);
        let left = left.unwrap_or(Basis::Idem(s.left));
        let right = right.unwrap_or(Basis::Idem(s.right));
        if left.left() != s.left || left.right() != t.left {
            return Err(StructureError::IncompatibleCoefficient(
                left.to_string(),
                format!("{} -> {}", s.name, t.name),
            ));
        }
        if right.left() != t.right || right.right() != s.right {
            return Err(StructureError::IncompatibleCoefficient(
                right.to_string(),
                format!("{} -> {}", s.name, t.name),
            ));
        }
        let arrow = Arrow {
            source,
            left,
            target,
            right,
        };
        if !self.arrows.remove(&arrow) {
            self.arrows.insert(arrow);
        }
        Ok(())
    }

    pub fn generators(&self) -> &[DdGenerator] {
        &self.generators
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn arrows_from(&self, source: usize) -> impl Iterator<Item = &Arrow> {
        let lo = Arrow {
            source,
            left: Basis::ALL[0],
            target: 0,
            right: Basis::ALL[0],
        };
        self.arrows
            .range(lo..)
            .take_while(move |a| a.source == source)
    }

    pub fn describe_arrow(&self, a: &Arrow) -> String {
        format!(
            "{} | {} ; {} -> {}",
            self.generators[a.source].name,
            coeff_name(a.left),
            coeff_name(a.right),
            self.generators[a.target].name
        )
    }

    /// Checks that delta∘delta vanishes: for every two-step chain
    /// `b -> (l1, b', r1)`, `b' -> (l2, b'', r2)` the terms
    /// `(l1 l2, b'', r2 r1)` cancel in pairs.
    pub fn validate(&self) -> DdReport {
        let mut report = DdReport::default();
        let mut residue: BTreeMap<(usize, Basis, usize, Basis), bool> = BTreeMap::new();
        for first in &self.arrows {
            for second in self.arrows_from(first.target) {
                report.chains_checked += 1;
                let (Some(l), Some(r)) =
                    (first.left.mul(second.left), second.right.mul(first.right))
                else {
                    continue;
                };
                let e = residue
                    .entry((first.source, l, second.target, r))
                    .or_insert(false);
                *e = !*e;
            }
        }
        for ((s, l, t, r), odd) in residue {
            if odd {
                report.violations.push(self.describe_arrow(&Arrow {
                    source: s,
                    left: l,
                    target: t,
                    right: r,
                }));
            }
        }
        report
    }

    /// Identity arrows `x -> 1 ⊗ y ⊗ 1` that are the only arrow from x to y.
    pub fn cancellable(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .filter(|a| a.is_identity() && a.source != a.target)
            .filter(|a| {
                self.arrows_from(a.source)
                    .filter(|b| b.target == a.target)
                    .count()
                    == 1
            })
            .map(|a| (a.source, a.target))
            .collect()
    }

    /// Cancels the identity arrow from `x` to `y`: both generators go, and
    /// each zigzag `a -> (l1, y, r1)`, `x -> (l2, z, r2)` contributes
    /// `a -> (l1 l2, z, r2 r1)`.
    pub fn cancel(&self, x: usize, y: usize) -> Result<DDStructure, StructureError> {
        let label = || format!("{} -> {}", self.generators[x].name, self.generators[y].name);
        let between: Vec<&Arrow> = self.arrows_from(x).filter(|a| a.target == y).collect();
        match between.as_slice() {
            [only] if only.is_identity() && x != y => {}
            [] => return Err(StructureError::NotCancellable(label(), "no arrow".into())),
            [_] => {
                return Err(StructureError::NotCancellable(
                    label(),
                    "the arrow has a non-identity coefficient".into(),
                ))
            }
            _ => {
                return Err(StructureError::NotCancellable(
                    label(),
                    "more than one arrow between the generators".into(),
                ))
            }
        }

        let keep: Vec<usize> = (0..self.generators.len())
            .filter(|&g| g != x && g != y)
            .collect();
        let mut renumber = vec![usize::MAX; self.generators.len()];
        for (new, &old) in keep.iter().enumerate() {
            renumber[old] = new;
        }
        let mut out = DDStructure {
            generators: keep.iter().map(|&g| self.generators[g].clone()).collect(),
            arrows: BTreeSet::new(),
        };
        let mut toggle = |a: Arrow| {
            if !out.arrows.remove(&a) {
                out.arrows.insert(a);
            }
        };
        let alive = |g: usize| g != x && g != y;
        for a in &self.arrows {
            if alive(a.source) && alive(a.target) {
                toggle(Arrow {
                    source: renumber[a.source],
                    target: renumber[a.target],
                    ..*a
                });
            }
        }
        let into_y: Vec<&Arrow> = self
            .arrows
            .iter()
            .filter(|a| a.target == y && alive(a.source))
            .collect();
        for incoming in into_y {
            for outgoing in self.arrows_from(x).filter(|a| alive(a.target)) {
                let (Some(l), Some(r)) = (
                    incoming.left.mul(outgoing.left),
                    outgoing.right.mul(incoming.right),
                ) else {
                    continue;
                };
                toggle(Arrow {
                    source: renumber[incoming.source],
                    left: l,
                    target: renumber[outgoing.target],
                    right: r,
                });
            }
        }
        Ok(out)
    }

    /// Cancels until no cancellable arrow remains, validating the structure
    /// relation after every step. Returns the reduced structure and the
    /// cancelled pairs in order.
    pub fn reduce(
        &self,
        order: CancelOrder,
    ) -> Result<(DDStructure, Vec<(String, String)>), StructureError> {
        let mut rng = match order {
            CancelOrder::Seeded(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        };
        let mut current = self.clone();
        let mut steps = Vec::new();
        loop {
            let candidates = current.cancellable();
            let pick = match (order, &mut rng) {
                (_, Some(rng)) => candidates.choose(rng).copied(),
                (CancelOrder::Last, _) => candidates.last().copied(),
                _ => candidates.first().copied(),
            };
            let Some((x, y)) = pick else {
                break;
            };
            let pair = (
                current.generators[x].name.clone(),
                current.generators[y].name.clone(),
            );
            current = current.cancel(x, y)?;
            let report = current.validate();
            if !report.passed() {
                return Err(StructureError::RelationBroken {
                    pair: format!("{} -> {}", pair.0, pair.1),
                    detail: report.violations.join("; "),
                });
            }
            steps.push(pair);
        }
        Ok((current, steps))
    }

    fn as_graph(&self) -> LabelledGraph<(Idempotent, Idempotent), (Basis, Basis)> {
        LabelledGraph {
            colors: self.generators.iter().map(|g| (g.left, g.right)).collect(),
            edges: self
                .arrows
                .iter()
                .map(|a| (a.source, (a.left, a.right), a.target))
                .collect(),
        }
    }

    /// A generator bijection onto `other` preserving idempotent pairs and
    /// labelled arrows, if one exists.
    pub fn isomorphism(&self, other: &DDStructure) -> Option<Vec<usize>> {
        find_isomorphism(&self.as_graph(), &other.as_graph())
    }

    pub fn is_isomorphic(&self, other: &DDStructure) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Renames every generator; fails on the first name `f` rejects.
    pub fn rename<E>(&self, f: impl Fn(&str) -> Result<String, E>) -> Result<DDStructure, E> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(DdGenerator {
                    name: f(&g.name)?,
                    ..g.clone()
                })
            })
            .collect::<Result<_, E>>()?;
        Ok(DDStructure {
            generators,
            arrows: self.arrows.clone(),
        })
    }

    /// Arrows as name-level records, for exact comparison between
    /// structures that use the same naming.
    pub fn arrow_records(&self) -> BTreeSet<(String, Basis, String, Basis)> {
        self.arrows
            .iter()
            .map(|a| {
                (
                    self.generators[a.source].name.clone(),
                    a.left,
                    self.generators[a.target].name.clone(),
                    a.right,
                )
            })
            .collect()
    }

    /// Removes one arrow (used for negative controls).
    pub fn without_arrow(&self, arrow: &Arrow) -> DDStructure {
        let mut out = self.clone();
        out.arrows.remove(arrow);
        out
    }
}

impl fmt::Display for DDStructure {
    /// DD text format: `gen <name> <leftIdem> <rightIdem>` lines, then one
    /// arrow per line `<src> | <leftCoeff> ; <rightCoeff> -> <tgt>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "gen {} {} {}", g.name, g.left, g.right)?;
        }
        for a in &self.arrows {
            writeln!(f, "{}", self.describe_arrow(a))?;
        }
        Ok(())
    }
}

impl FromStr for DDStructure {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut dd = DDStructure::new();
        for (lineno, line) in tokens::content_lines(text) {
            let err = |message: String| ParseError {
                line: lineno,
                message,
            };
            if let Some(rest) = line.strip_prefix("gen ") {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [name, l, r] = words[..] else {
                    return Err(err("expected `gen <name> <leftIdem> <rightIdem>`".into()));
                };
                let l = l.parse().map_err(|e| err(format!("{e}")))?;
                let r = r.parse().map_err(|e| err(format!("{e}")))?;
                dd.add_generator(name, l, r)
                    .map_err(|e| err(e.to_string()))?;
                continue;
            }
            let (src, coeffs, tgt) = tokens::split_action(line).map_err(err)?;
            let (lc, rc) = coeffs
                .split_once(';')
                .ok_or_else(|| err("expected `<leftCoeff> ; <rightCoeff>`".into()))?;
            let coeff = |c: &str| -> Result<Option<Basis>, ParseError> {
                match c.trim() {
                    "1" => Ok(None),
                    other => other.parse().map(Some).map_err(|e| err(format!("{e}"))),
                }
            };
            let (lc, rc) = (coeff(lc)?, coeff(rc)?);
            let find = |n: &str| {
                dd.generator_index(n)
                    .ok_or_else(|| err(format!("unknown generator `{n}`")))
            };
            let (s, t) = (find(src)?, find(tgt)?);
            dd.toggle_arrow(s, lc, t, rc)
                .map_err(|e| err(e.to_string()))?;
        }
        Ok(dd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Basis::*;
    use Idempotent::*;

    fn pair() -> DDStructure {
        "gen x i0 j0\ngen y i0 j0\nx | 1 ; 1 -> y\n"
            .parse()
            .unwrap()
    }

    #[test]
    fn single_identity_arrow_cancels_to_nothing() {
        let dd = pair();
        assert!(dd.validate().passed());
        assert_eq!(dd.cancellable(), vec![(0, 1)]);
        let out = dd.cancel(0, 1).unwrap();
        assert!(out.generators().is_empty());
        assert_eq!(out.arrow_count(), 0);
    }

    #[test]
    fn cancel_rejects_coefficients() {
        let dd: DDStructure = "gen x i0 i0\ngen y j0 i0\nx | rho0 ; 1 -> y\n"
            .parse()
            .unwrap();
        assert!(matches!(
            dd.cancel(0, 1),
            Err(StructureError::NotCancellable(..))
        ));
        assert!(dd.cancellable().is_empty());
    }

    #[test]
    fn zigzag_composes_coefficients() {
        // a -(eta1, y)-> ... y <-1- x -(1 ; xi1)-> z
        let mut dd = DDStructure::new();
        let a = dd.add_generator("a", I0, I2).unwrap();
        let y = dd.add_generator("y", I1, I2).unwrap();
        let x = dd.add_generator("x", I1, I2).unwrap();
        let z = dd.add_generator("z", I1, I1).unwrap();
        dd.toggle_arrow(a, Some(Eta1), y, None).unwrap();
        dd.toggle_arrow(x, None, y, None).unwrap();
        dd.toggle_arrow(x, None, z, Some(Xi1)).unwrap();
        let out = dd.cancel(x, y).unwrap();
        assert_eq!(out.generators().len(), 2);
        let records = out.arrow_records();
        assert_eq!(
            records.into_iter().collect::<Vec<_>>(),
            vec![("a".to_string(), Eta1, "z".to_string(), Xi1)]
        );
    }

    #[test]
    fn incompatible_coefficients_are_rejected() {
        let mut dd = DDStructure::new();
        let a = dd.add_generator("a", I0, I0).unwrap();
        let b = dd.add_generator("b", J0, I0).unwrap();
        assert!(dd.toggle_arrow(a, Some(Eta1), b, None).is_err());
        assert!(dd.toggle_arrow(a, Some(Rho0), b, None).is_ok());
        assert!(dd.toggle_arrow(a, None, b, None).is_err());
    }

    #[test]
    fn relation_failure_is_reported() {
        let dd: DDStructure = "gen a j1 j1\ngen b j0 j1\ngen c j0 j2\n\
                               a | eta3 ; 1 -> b\nb | 1 ; xi3 -> c\n"
            .parse()
            .unwrap();
        let report = dd.validate();
        assert_eq!(report.violations, vec!["a | eta3 ; xi3 -> c"]);
    }

    #[test]
    fn text_round_trip_and_iso() {
        let dd: DDStructure = "gen a j1 j1\ngen b j0 j1\ngen c j1 j2\ngen d j0 j2\n\
                               a | eta3 ; 1 -> b\nb | 1 ; xi3 -> d\n\
                               a | 1 ; xi3 -> c\nc | eta3 ; 1 -> d\n"
            .parse()
            .unwrap();
        assert!(dd.validate().passed());
        let again: DDStructure = dd.to_string().parse().unwrap();
        assert_eq!(again, dd);
        let renamed = dd.rename(|n| Ok::<_, ()>(format!("{n}!"))).unwrap();
        assert!(renamed.is_isomorphic(&dd));
        let first = *dd.arrows().next().unwrap();
        assert!(!dd.without_arrow(&first).is_isomorphic(&dd));
    }
}
