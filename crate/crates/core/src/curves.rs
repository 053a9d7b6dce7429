//! Curve words in the pillowcase and their modules.
//!
//! The six arcs cut the pillowcase into four domains. B1 is a hexagon
//! touching every arc; B2, B3 and B4 are bigons on the pairs (i0, j0),
//! (i1, j1) and (i2, j2). Each domain boundary has one basepoint segment.
//! Reading a boundary from the arc after the basepoint, consecutive arcs are
//! joined by chords:
//!
//! ```text
//! B1: i0 -eta1-> i1 -xi1-> i2 -rho2-> j2 -xi3-> j1 -eta3-> j0 -*-> i0
//! B2: i0 -rho0-> j0 -*-> i0
//! B3: i1 -eta2-> j1 -*-> i1
//! B4: i2 -xi2-> j2 -*-> i2
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Basis, Idempotent};
use crate::structures::{Action, RightModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    B1,
    B2,
    B3,
    B4,
}

impl Domain {
    pub const ALL: [Domain; 4] = [Domain::B1, Domain::B2, Domain::B3, Domain::B4];

    /// Arcs along the boundary, starting after the basepoint segment.
    pub fn arcs(self) -> &'static [Idempotent] {
        use Idempotent::*;
        match self {
            Domain::B1 => &[I0, I1, I2, J2, J1, J0],
            Domain::B2 => &[I0, J0],
            Domain::B3 => &[I1, J1],
            Domain::B4 => &[I2, J2],
        }
    }

    /// `chords()[k]` joins `arcs()[k]` to `arcs()[k + 1]`.
    pub fn chords(self) -> &'static [Basis] {
        use Basis::*;
        match self {
            Domain::B1 => &[Eta1, Xi1, Rho2, Xi3, Eta3],
            Domain::B2 => &[Rho0],
            Domain::B3 => &[Eta2],
            Domain::B4 => &[Xi2],
        }
    }

    pub fn borders(self, arc: Idempotent) -> bool {
        self.arcs().contains(&arc)
    }

    /// The domain on the other side of `arc`, if `arc` borders `self`.
    pub fn across(self, arc: Idempotent) -> Option<Domain> {
        let (a, b) = sides(arc);
        match self {
            d if d == a => Some(b),
            d if d == b => Some(a),
            _ => None,
        }
    }

    /// The basepoint-avoiding boundary path between two distinct arcs:
    /// its starting arc and its chords in order.
    pub fn connector(self, a: Idempotent, b: Idempotent) -> Option<(Idempotent, Vec<Basis>)> {
        let arcs = self.arcs();
        let pa = arcs.iter().position(|&x| x == a)?;
        let pb = arcs.iter().position(|&x| x == b)?;
        if pa == pb {
            return None;
        }
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        Some((arcs[lo], self.chords()[lo..hi].to_vec()))
    }

    pub fn name(self) -> &'static str {
        match self {
            Domain::B1 => "B1",
            Domain::B2 => "B2",
            Domain::B3 => "B3",
            Domain::B4 => "B4",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, CurveError> {
        Domain::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| CurveError::UnknownDomain(s.to_string()))
    }
}

/// The two domains an arc separates.
pub fn sides(arc: Idempotent) -> (Domain, Domain) {
    use Idempotent::*;
    match arc {
        I0 | J0 => (Domain::B1, Domain::B2),
        I1 | J1 => (Domain::B1, Domain::B3),
        I2 | J2 => (Domain::B1, Domain::B4),
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("expected `cyclic:` or `linear:` before the word")]
    MissingKind,
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("line {line}: unknown token `{token}`")]
    UnknownToken { line: usize, token: String },
    #[error("line {line}: expected {expected}, found `{token}`")]
    Alternation {
        line: usize,
        token: String,
        expected: &'static str,
    },
    #[error("{}{arc} does not separate {before} from {after}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Adjacency {
        line: Option<usize>,
        before: Domain,
        arc: Idempotent,
        after: Domain,
    },
    #[error("a cyclic word must end on an arc and close up on its first domain")]
    NotClosed,
    #[error("the word has no arcs")]
    Empty,
    #[error("the word reduces to nothing")]
    ReducesToNothing,
    #[error("the word is not normalized: {0} repeats across one domain")]
    NotNormalized(Idempotent),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordKind {
    Cyclic,
    Linear,
}

/// A curve as the alternating sequence of domains it crosses and arcs it
/// meets. Domains after the first are determined by the arcs; a linear
/// word carries one more domain than arcs, a cyclic word as many.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveWord {
    kind: WordKind,
    start: Domain,
    arcs: Vec<Idempotent>,
}

impl CurveWord {
    /// Builds a word from its first domain and arc sequence, checking that
    /// it walks the chart (and closes up, if cyclic).
    pub fn new(kind: WordKind, start: Domain, arcs: Vec<Idempotent>) -> Result<Self, CurveError> {
        let word = CurveWord { kind, start, arcs };
        let mut here = start;
        for &arc in &word.arcs {
            let Some(next) = here.across(arc) else {
                return Err(CurveError::Adjacency {
                    line: None,
                    before: here,
                    arc,
                    after: here,
                });
            };
            here = next;
        }
        if kind == WordKind::Cyclic && (word.arcs.is_empty() || here != start) {
            return Err(CurveError::NotClosed);
        }
        Ok(word)
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn arcs(&self) -> &[Idempotent] {
        &self.arcs
    }

    /// `domains()[k]` is the domain just before `arcs()[k]`; a linear word
    /// has one extra trailing domain.
    pub fn domains(&self) -> Vec<Domain> {
        let mut out = vec![self.start];
        let mut here = self.start;
        for &arc in &self.arcs {
            here = here.across(arc).expect("validated word");
            out.push(here);
        }
        if self.kind == WordKind::Cyclic {
            out.pop();
        }
        out
    }

    /// Repeatedly removes `i B i` (a finger move across one domain), and
    /// for cyclic words also the pattern that wraps around.
    pub fn normalize(&self) -> Result<CurveWord, CurveError> {
        let mut start = self.start;
        let mut arcs: Vec<Idempotent> = Vec::with_capacity(self.arcs.len());
        for &arc in &self.arcs {
            if arcs.last() == Some(&arc) {
                arcs.pop();
            } else {
                arcs.push(arc);
            }
        }
        if self.kind == WordKind::Cyclic {
            while arcs.len() >= 2 && arcs.first() == arcs.last() {
                start = start.across(arcs[0]).expect("validated word");
                arcs.pop();
                arcs.remove(0);
            }
            if arcs.is_empty() {
                return Err(CurveError::ReducesToNothing);
            }
        }
        CurveWord::new(self.kind, start, arcs)
    }

    pub fn is_normalized(&self) -> bool {
        self.repeated_arc().is_none()
    }

    fn repeated_arc(&self) -> Option<Idempotent> {
        let n = self.arcs.len();
        let wrap = self.kind == WordKind::Cyclic && n >= 2;
        (0..n)
            .filter(|&k| k + 1 < n || wrap)
            .map(|k| (self.arcs[k], self.arcs[(k + 1) % n]))
            .find(|(a, b)| a == b)
            .map(|(a, _)| a)
    }

    /// Cyclic words only: start at arc `k` instead of arc 0.
    pub fn rotate(&self, k: usize) -> CurveWord {
        assert_eq!(self.kind, WordKind::Cyclic, "only cyclic words rotate");
        let n = self.arcs.len();
        let k = k % n;
        let start = self.domains()[k];
        let mut arcs = self.arcs[k..].to_vec();
        arcs.extend_from_slice(&self.arcs[..k]);
        CurveWord {
            kind: self.kind,
            start,
            arcs,
        }
    }

    /// Generator names: the arc name, with `.k` appended when an arc is met
    /// more than once.
    pub fn generator_names(&self) -> Vec<String> {
        let mut counts: BTreeMap<Idempotent, usize> = BTreeMap::new();
        for a in &self.arcs {
            *counts.entry(*a).or_default() += 1;
        }
        let mut seen: BTreeMap<Idempotent, usize> = BTreeMap::new();
        self.arcs
            .iter()
            .map(|a| {
                let k = seen.entry(*a).or_default();
                *k += 1;
                if counts[a] > 1 {
                    format!("{a}.{k}")
                } else {
                    a.to_string()
                }
            })
            .collect()
    }

    /// One basic action per pair of consecutive arcs, as
    /// `(source, inputs, target)` generator positions.
    pub fn basic_actions(&self) -> Vec<(usize, Vec<Basis>, usize)> {
        let n = self.arcs.len();
        let domains = self.domains();
        let pairs = match self.kind {
            WordKind::Cyclic => n,
            WordKind::Linear => n.saturating_sub(1),
        };
        (0..pairs)
            .filter_map(|k| {
                let (a, b) = (k, (k + 1) % n);
                let domain = domains[(k + 1) % domains.len()];
                let (from, chords) = domain.connector(self.arcs[a], self.arcs[b])?;
                Some(if from == self.arcs[a] {
                    (a, chords, b)
                } else {
                    (b, chords, a)
                })
            })
            .collect()
    }
}

impl fmt::Display for CurveWord {
    /// Curve file format: `cyclic:` or `linear:` followed by the tokens.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            WordKind::Cyclic => "cyclic:",
            WordKind::Linear => "linear:",
        };
        f.write_str(kind)?;
        let domains = self.domains();
        for (k, d) in domains.iter().enumerate() {
            write!(f, " {d}")?;
            if let Some(a) = self.arcs.get(k) {
                write!(f, " {a}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CurveWord {
    type Err = CurveError;

    fn from_str(text: &str) -> Result<Self, CurveError> {
        // Tokens with their 1-based line numbers; the kind marker is the
        // first token.
        let mut tokens: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(n, l)| {
                let content = l.split('#').next().unwrap_or("");
                content.split_whitespace().map(move |t| (n + 1, t))
            })
            .collect();
        if tokens.is_empty() {
            return Err(CurveError::MissingKind);
        }
        let (first_line, first) = tokens.remove(0);
        let (kind, glued) = if let Some(rest) = first.strip_prefix("cyclic:") {
            (WordKind::Cyclic, rest)
        } else if let Some(rest) = first.strip_prefix("linear:") {
            (WordKind::Linear, rest)
        } else {
            return Err(CurveError::MissingKind);
        };
        if !glued.is_empty() {
            tokens.insert(0, (first_line, glued));
        }
        if tokens.is_empty() {
            return Err(CurveError::Empty);
        }
        let mut domains = Vec::new();
        let mut arcs = Vec::new();
        let mut lines = Vec::new();
        for (i, &(line, tok)) in tokens.iter().enumerate() {
            let wrong = |expected| {
                if tok.parse::<Domain>().is_ok() || tok.parse::<Idempotent>().is_ok() {
                    CurveError::Alternation {
                        line,
                        token: tok.to_string(),
                        expected,
                    }
                } else {
                    CurveError::UnknownToken {
                        line,
                        token: tok.to_string(),
                    }
                }
            };
            if i % 2 == 0 {
                domains.push(tok.parse::<Domain>().map_err(|_| wrong("a domain"))?);
            } else {
                arcs.push(tok.parse::<Idempotent>().map_err(|_| wrong("an arc"))?);
                lines.push(line);
            }
        }
        for (k, &arc) in arcs.iter().enumerate() {
            let before = domains[k];
            let after = match domains.get(k + 1) {
                Some(&d) => d,
                None => domains[0],
            };
            let (x, y) = sides(arc);
            if !((before, after) == (x, y) || (before, after) == (y, x)) {
                return Err(CurveError::Adjacency {
                    line: Some(lines[k]),
                    before,
                    arc,
                    after,
                });
            }
        }
        if kind == WordKind::Cyclic && tokens.len() % 2 == 1 {
            return Err(CurveError::NotClosed);
        }
        CurveWord::new(kind, domains[0], arcs)
    }
}

/// Merges two consecutive actions whose junction inputs multiply to a
/// nonzero element.
pub fn juxtapose(first: &[Basis], second: &[Basis]) -> Option<Vec<Basis>> {
    let (&last, head) = first.split_last()?;
    let (&next, tail) = second.split_first()?;
    let joined = last.mul(next)?;
    let mut out = head.to_vec();
    out.push(joined);
    out.extend_from_slice(tail);
    Some(out)
}

/// The module of a normalized word: basic actions from single discs plus
/// every juxtaposition of a chain of them.
pub fn compile(word: &CurveWord) -> Result<RightModule, CurveError> {
    if word.arcs.is_empty() {
        return Err(CurveError::Empty);
    }
    if let Some(arc) = word.repeated_arc() {
        return Err(CurveError::NotNormalized(arc));
    }
    let mut m = RightModule::new();
    for (name, &arc) in word.generator_names().into_iter().zip(&word.arcs) {
        m.add_generator(name, arc)
            .expect("generator names are distinct");
    }
    let basic = word.basic_actions();
    let mut stack: Vec<(usize, Vec<Basis>, usize)> = basic.clone();
    while let Some((s, inputs, t)) = stack.pop() {
        for (s2, inputs2, t2) in &basic {
            if *s2 != t {
                continue;
            }
            if let Some(merged) = juxtapose(&inputs, inputs2) {
                stack.push((s, merged, *t2));
            }
        }
        m.toggle_action(s, inputs, t);
    }
    Ok(m)
}

/// Parses, normalizes and compiles.
pub fn compile_text(text: &str) -> Result<RightModule, CurveError> {
    compile(&text.parse::<CurveWord>()?.normalize()?)
}

/// Actions that are not the juxtaposition of two other actions.
pub fn basic_actions(m: &RightModule) -> Vec<&Action> {
    let all: Vec<&Action> = m.actions().collect();
    all.iter()
        .copied()
        .filter(|a| {
            !all.iter().any(|b| {
                b.source == a.source
                    && all.iter().any(|c| {
                        c.source == b.target
                            && c.target == a.target
                            && juxtapose(&b.inputs, &c.inputs).as_ref() == Some(&a.inputs)
                    })
            })
        })
        .collect()
}

/// The shape traced by one connected piece of a module's basic actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveShape {
    /// Every generator meets exactly two basic actions.
    Closed {
        generators: Vec<String>,
    },
    /// A path; the ends meet one basic action each.
    Arc {
        generators: Vec<String>,
        ends: (String, String),
        /// Actions that would close the arc up through a shared domain.
        closing: Vec<String>,
    },
    Irregular {
        generators: Vec<String>,
    },
}

impl fmt::Display for CurveShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveShape::Closed { generators } => {
                write!(f, "closed curve through {}", generators.join(" "))
            }
            CurveShape::Arc {
                generators,
                ends,
                closing,
            } => {
                write!(
                    f,
                    "arc through {} with ends {} and {}",
                    generators.join(" "),
                    ends.0,
                    ends.1
                )?;
                if !closing.is_empty() {
                    write!(f, "; closing it would add {}", closing.join(" or "))?;
                }
                Ok(())
            }
            CurveShape::Irregular { generators } => {
                write!(f, "not a curve: {}", generators.join(" "))
            }
        }
    }
}

/// Reads curve shapes off a module: connected components of the graph whose
/// edges are the basic actions.
pub fn curve_shapes(m: &RightModule) -> Vec<CurveShape> {
    let n = m.generators().len();
    let basic = basic_actions(m);
    let mut degree = vec![0usize; n];
    let mut adjacent: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for a in &basic {
        degree[a.source] += 1;
        degree[a.target] += 1;
        adjacent[a.source].insert(a.target);
        adjacent[a.target].insert(a.source);
    }
    let name = |g: usize| m.generators()[g].name.clone();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut component = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < component.len() {
            for &w in &adjacent[component[i]] {
                if !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
            i += 1;
        }
        component.sort_unstable();
        let generators: Vec<String> = component.iter().map(|&g| name(g)).collect();
        let edges = basic
            .iter()
            .filter(|a| component.contains(&a.source))
            .count();
        let ends: Vec<usize> = component
            .iter()
            .copied()
            .filter(|&g| degree[g] == 1)
            .collect();
        let others_two = component
            .iter()
            .all(|&g| degree[g] == 2 || ends.contains(&g));
        out.push(
            if component.iter().all(|&g| degree[g] == 2) && edges == component.len() {
                CurveShape::Closed { generators }
            } else if ends.len() == 2 && others_two && edges + 1 == component.len() {
                let (u, v) = (ends[0], ends[1]);
                let closing = closing_actions(m, u, v);
                CurveShape::Arc {
                    generators,
                    ends: (name(u), name(v)),
                    closing,
                }
            } else {
                CurveShape::Irregular { generators }
            },
        );
    }
    out
}

fn closing_actions(m: &RightModule, u: usize, v: usize) -> Vec<String> {
    let (iu, iv) = (m.idempotent(u), m.idempotent(v));
    Domain::ALL
        .into_iter()
        .filter_map(|d| d.connector(iu, iv))
        .map(|(from, chords)| {
            let (s, t) = if from == iu { (u, v) } else { (v, u) };
            m.describe_action(&Action {
                source: s,
                inputs: chords,
                target: t,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Idempotent::*;

    #[test]
    fn chart_is_consistent() {
        for arc in Idempotent::ALL {
            let bordering: Vec<_> = Domain::ALL.into_iter().filter(|d| d.borders(arc)).collect();
            assert_eq!(bordering.len(), 2);
        }
        for d in Domain::ALL {
            assert_eq!(d.chords().len() + 1, d.arcs().len());
            for (k, c) in d.chords().iter().enumerate() {
                assert_eq!(c.left(), d.arcs()[k]);
                assert_eq!(c.right(), d.arcs()[k + 1]);
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let text = "cyclic: B1 j2 B4 i2 B1 i0 B2 j0 B1 j1 B3 i1";
        let w: CurveWord = text.parse().unwrap();
        assert_eq!(w.to_string(), text);
        assert!(w.is_normalized());
        let arc: CurveWord = "linear:\nB3 j1 B1 j0 B2\n".parse().unwrap();
        assert_eq!(arc.to_string(), "linear: B3 j1 B1 j0 B2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "cyclic: B1 i0 B1".parse::<CurveWord>(),
            Err(CurveError::Adjacency { .. })
        ));
        assert!(matches!(
            "cyclic: B1 i0 B2".parse::<CurveWord>(),
            Err(CurveError::NotClosed)
        ));
        assert!(matches!(
            "linear: B1 i0 B1".parse::<CurveWord>(),
            Err(CurveError::Adjacency { .. })
        ));
        assert!(matches!(
            "linear: B1 k9 B2".parse::<CurveWord>(),
            Err(CurveError::UnknownToken { .. })
        ));
        assert!(matches!(
            "B1 i0 B2".parse::<CurveWord>(),
            Err(CurveError::MissingKind)
        ));
        assert!(matches!(
            "linear: B1 B2".parse::<CurveWord>(),
            Err(CurveError::Alternation { .. })
        ));
    }

    #[test]
    fn finger_moves() {
        let w: CurveWord = "linear: B1 j2 B4 j2 B1 i0 B2 j0 B1".parse().unwrap();
        assert!(!w.is_normalized());
        assert_eq!(w.normalize().unwrap().to_string(), "linear: B1 i0 B2 j0 B1");
        let wrap: CurveWord = "cyclic: B1 i0 B2 j0 B1 i1 B3 i1 B1 j0 B2 i0"
            .parse()
            .unwrap();
        assert!(matches!(
            wrap.normalize(),
            Err(CurveError::ReducesToNothing)
        ));
        let w: CurveWord = "cyclic: B2 i0 B1 i2 B4 j2 B1 j0".parse().unwrap();
        assert_eq!(w.normalize().unwrap(), w);
    }

    #[test]
    fn rotation_keeps_the_curve() {
        let w: CurveWord = "cyclic: B1 j2 B4 i2 B1 i0 B2 j0 B1 j1 B3 i1"
            .parse()
            .unwrap();
        let r = w.rotate(2);
        assert_eq!(r.to_string(), "cyclic: B1 i0 B2 j0 B1 j1 B3 i1 B1 j2 B4 i2");
        assert_eq!(r.rotate(4), w);
    }

    #[test]
    fn connectors_avoid_the_basepoint() {
        assert_eq!(
            Domain::B1.connector(J1, I0),
            Some((I0, vec![Basis::Eta1, Basis::Xi1, Basis::Rho2, Basis::Xi3]))
        );
        assert_eq!(Domain::B2.connector(J0, I0), Some((I0, vec![Basis::Rho0])));
        assert_eq!(Domain::B3.connector(I0, J1), None);
    }

    #[test]
    fn unknot_arc() {
        let m = compile_text("linear: B3 j1 B1 j0 B2").unwrap();
        assert_eq!(m.generators().len(), 2);
        assert_eq!(m.to_string(), "gen j1 j1\ngen j0 j0\nact j1 | eta3 -> j0\n");
    }

    #[test]
    fn compile_rejects_unnormalized() {
        let w: CurveWord = "linear: B1 j2 B4 j2 B1".parse().unwrap();
        assert!(matches!(compile(&w), Err(CurveError::NotNormalized(J2))));
    }

    #[test]
    fn repeated_arcs_get_suffixes() {
        let w: CurveWord = "cyclic: B2 i0 B1 i1 B3 j1 B1 i0 B2 j0 B1 j0"
            .parse()
            .unwrap();
        assert_eq!(
            w.generator_names(),
            vec!["i0.1", "i1", "j1", "i0.2", "j0.1", "j0.2"]
        );
    }

    #[test]
    fn shapes() {
        let lnat = compile_text(include_str!("../data/lnat.curve")).unwrap();
        assert!(matches!(
            curve_shapes(&lnat).as_slice(),
            [CurveShape::Closed { .. }]
        ));
        assert_eq!(basic_actions(&lnat).len(), 6);
        let unknot = compile_text(include_str!("../data/unknot.curve")).unwrap();
        let shapes = curve_shapes(&unknot);
        let [CurveShape::Arc { ends, closing, .. }] = shapes.as_slice() else {
            panic!("{shapes:?}");
        };
        assert_eq!(ends, &("j1".to_string(), "j0".to_string()));
        assert_eq!(closing.len(), 1);
    }
}
