//! The pillowcase algebra and its Koszul-dual path algebra.
//!
//! The pillowcase algebra is the path algebra of the chord graph: six
//! idempotents (one per parameterizing arc) and fourteen chord paths, where
//! only chords of the same letter compose. The dual algebra is the path
//! algebra of the reversed graph, in which every edge composes with every
//! edge it meets, equipped with the differential that splits composite
//! edges.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown {kind} name `{name}`")]
pub struct NameError {
    pub kind: &'static str,
    pub name: String,
}

impl NameError {
    fn new(kind: &'static str, name: &str) -> Self {
        Self {
            kind,
            name: name.to_string(),
        }
    }
}

/// One of the six parameterizing arcs, seen as an idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Idempotent {
    I0,
    I1,
    I2,
    J0,
    J1,
    J2,
}

impl Idempotent {
    pub const ALL: [Idempotent; 6] = [
        Idempotent::I0,
        Idempotent::I1,
        Idempotent::I2,
        Idempotent::J0,
        Idempotent::J1,
        Idempotent::J2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Idempotent::I0 => "i0",
            Idempotent::I1 => "i1",
            Idempotent::I2 => "i2",
            Idempotent::J0 => "j0",
            Idempotent::J1 => "j1",
            Idempotent::J2 => "j2",
        }
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Idempotent {
    type Err = NameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Idempotent::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| NameError::new("idempotent", s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Rho0,
    Rho2,
    Xi,
    Eta,
}

/// A basis path of the pillowcase algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Idem(Idempotent),
    Rho0,
    Rho2,
    Xi1,
    Xi2,
    Xi3,
    Xi12,
    Xi23,
    Xi123,
    Eta1,
    Eta2,
    Eta3,
    Eta12,
    Eta23,
    Eta123,
}

impl Basis {
    pub const ALL: [Basis; 20] = [
        Basis::Idem(Idempotent::I0),
        Basis::Idem(Idempotent::I1),
        Basis::Idem(Idempotent::I2),
        Basis::Idem(Idempotent::J0),
        Basis::Idem(Idempotent::J1),
        Basis::Idem(Idempotent::J2),
        Basis::Rho0,
        Basis::Rho2,
        Basis::Xi1,
        Basis::Xi2,
        Basis::Xi3,
        Basis::Xi12,
        Basis::Xi23,
        Basis::Xi123,
        Basis::Eta1,
        Basis::Eta2,
        Basis::Eta3,
        Basis::Eta12,
        Basis::Eta23,
        Basis::Eta123,
    ];

    /// The fourteen non-idempotent basis paths.
    pub fn chords() -> impl Iterator<Item = Basis> {
        Basis::ALL.into_iter().filter(|b| !b.is_idempotent())
    }

    /// Position in [`Basis::ALL`].
    pub fn index(self) -> usize {
        Basis::ALL.iter().position(|&b| b == self).unwrap()
    }

    pub fn is_idempotent(self) -> bool {
        matches!(self, Basis::Idem(_))
    }

    /// Letter and the range of unit chords spanned, e.g. `xi12` is `(Xi, 1, 2)`.
    pub fn word(self) -> Option<(Letter, u8, u8)> {
        use Basis::*;
        Some(match self {
            Idem(_) => return None,
            Rho0 => (Letter::Rho0, 0, 0),
            Rho2 => (Letter::Rho2, 2, 2),
            Xi1 => (Letter::Xi, 1, 1),
            Xi2 => (Letter::Xi, 2, 2),
            Xi3 => (Letter::Xi, 3, 3),
            Xi12 => (Letter::Xi, 1, 2),
            Xi23 => (Letter::Xi, 2, 3),
            Xi123 => (Letter::Xi, 1, 3),
            Eta1 => (Letter::Eta, 1, 1),
            Eta2 => (Letter::Eta, 2, 2),
            Eta3 => (Letter::Eta, 3, 3),
            Eta12 => (Letter::Eta, 1, 2),
            Eta23 => (Letter::Eta, 2, 3),
            Eta123 => (Letter::Eta, 1, 3),
        })
    }

    fn from_word(letter: Letter, lo: u8, hi: u8) -> Option<Basis> {
        Basis::chords().find(|b| b.word() == Some((letter, lo, hi)))
    }

    /// Number of unit chords in the path; zero for idempotents.
    pub fn chord_length(self) -> usize {
        self.word()
            .map_or(0, |(_, lo, hi)| usize::from(hi - lo) + 1)
    }

    pub fn left(self) -> Idempotent {
        use Idempotent::*;
        match self {
            Basis::Idem(i) => i,
            Basis::Rho0 => I0,
            Basis::Rho2 => I2,
            Basis::Xi1 | Basis::Xi12 | Basis::Xi123 => I1,
            Basis::Xi2 | Basis::Xi23 => I2,
            Basis::Xi3 => J2,
            Basis::Eta1 | Basis::Eta12 | Basis::Eta123 => I0,
            Basis::Eta2 | Basis::Eta23 => I1,
            Basis::Eta3 => J1,
        }
    }

    pub fn right(self) -> Idempotent {
        use Idempotent::*;
        match self {
            Basis::Idem(i) => i,
            Basis::Rho0 => J0,
            Basis::Rho2 => J2,
            Basis::Xi1 => I2,
            Basis::Xi2 | Basis::Xi12 => J2,
            Basis::Xi3 | Basis::Xi23 | Basis::Xi123 => J1,
            Basis::Eta1 => I1,
            Basis::Eta2 | Basis::Eta12 => J1,
            Basis::Eta3 | Basis::Eta23 | Basis::Eta123 => J0,
        }
    }

    /// Product of two basis paths: concatenation when the endpoints match
    /// and the letters agree, `None` (zero) otherwise.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Basis) -> Option<Basis> {
        if self.right() != other.left() {
            return None;
        }
        match (self.word(), other.word()) {
            (None, _) => Some(other),
            (_, None) => Some(self),
            (Some((a, lo, hi)), Some((b, lo2, hi2))) => {
                if a == b && matches!(a, Letter::Xi | Letter::Eta) && hi + 1 == lo2 {
                    Basis::from_word(a, lo, hi2)
                } else {
                    None
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        use Basis::*;
        match self {
            Idem(i) => i.name(),
            Rho0 => "rho0",
            Rho2 => "rho2",
            Xi1 => "xi1",
            Xi2 => "xi2",
            Xi3 => "xi3",
            Xi12 => "xi12",
            Xi23 => "xi23",
            Xi123 => "xi123",
            Eta1 => "eta1",
            Eta2 => "eta2",
            Eta3 => "eta3",
            Eta12 => "eta12",
            Eta23 => "eta23",
            Eta123 => "eta123",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = NameError;

    /// Accepts the canonical ASCII names plus the `xi_12` spelling.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|&c| c != '_').collect();
        Basis::ALL
            .into_iter()
            .find(|b| b.name() == cleaned)
            .ok_or_else(|| NameError::new("algebra element", s))
    }
}

/// An F2 linear combination of basis paths, stored as a 20-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraElement(u32);

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement(0);

    /// The unit: the sum of all six idempotents.
    pub fn one() -> Self {
        Idempotent::ALL
            .into_iter()
            .map(|i| Basis::Idem(i).into())
            .sum()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, b: Basis) -> bool {
        self.0 >> b.index() & 1 == 1
    }

    pub fn support(self) -> impl Iterator<Item = Basis> {
        Basis::ALL.into_iter().filter(move |&b| self.contains(b))
    }

    /// Bilinear extension of [`Basis::mul`].
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::ZERO;
        for a in self.support() {
            for b in other.support() {
                if let Some(c) = a.mul(b) {
                    out = out + c.into();
                }
            }
        }
        out
    }
}

impl From<Basis> for AlgebraElement {
    fn from(b: Basis) -> Self {
        AlgebraElement(1 << b.index())
    }
}

impl std::ops::Add for AlgebraElement {
    type Output = AlgebraElement;

    // Coefficients live in F2, so addition is symmetric difference.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement(self.0 ^ rhs.0)
    }
}

impl std::iter::Sum for AlgebraElement {
    fn sum<I: Iterator<Item = AlgebraElement>>(iter: I) -> Self {
        iter.fold(AlgebraElement::ZERO, |a, b| a + b)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names: Vec<_> = self.support().map(Basis::name).collect();
        f.write_str(&names.join(" + "))
    }
}

pub fn mul_a(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement {
    a.mul(b)
}

/// An edge of the reversed chord graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualEdge {
    Rho0,
    Rho2,
    Xi1,
    Xi2,
    Xi3,
    Xi21,
    Xi32,
    Xi321,
    Eta1,
    Eta2,
    Eta3,
    Eta21,
    Eta32,
    Eta321,
}

impl DualEdge {
    pub const ALL: [DualEdge; 14] = [
        DualEdge::Rho0,
        DualEdge::Rho2,
        DualEdge::Xi1,
        DualEdge::Xi2,
        DualEdge::Xi3,
        DualEdge::Xi21,
        DualEdge::Xi32,
        DualEdge::Xi321,
        DualEdge::Eta1,
        DualEdge::Eta2,
        DualEdge::Eta3,
        DualEdge::Eta21,
        DualEdge::Eta32,
        DualEdge::Eta321,
    ];

    /// The algebra element obtained by reading the edge backwards.
    pub fn reverse(self) -> Basis {
        match self {
            DualEdge::Rho0 => Basis::Rho0,
            DualEdge::Rho2 => Basis::Rho2,
            DualEdge::Xi1 => Basis::Xi1,
            DualEdge::Xi2 => Basis::Xi2,
            DualEdge::Xi3 => Basis::Xi3,
            DualEdge::Xi21 => Basis::Xi12,
            DualEdge::Xi32 => Basis::Xi23,
            DualEdge::Xi321 => Basis::Xi123,
            DualEdge::Eta1 => Basis::Eta1,
            DualEdge::Eta2 => Basis::Eta2,
            DualEdge::Eta3 => Basis::Eta3,
            DualEdge::Eta21 => Basis::Eta12,
            DualEdge::Eta32 => Basis::Eta23,
            DualEdge::Eta321 => Basis::Eta123,
        }
    }

    pub fn source(self) -> Idempotent {
        self.reverse().right()
    }

    pub fn target(self) -> Idempotent {
        self.reverse().left()
    }

    /// Is this a single unit chord (as opposed to a composite edge)?
    pub fn is_unit(self) -> bool {
        self.reverse().chord_length() == 1
    }

    /// Differential of the one-edge path, as a list of two-edge paths.
    pub fn differential(self) -> &'static [[DualEdge; 2]] {
        use DualEdge::*;
        match self {
            Xi21 => &[[Xi2, Xi1]],
            Xi32 => &[[Xi3, Xi2]],
            Xi321 => &[[Xi32, Xi1], [Xi3, Xi21]],
            Eta21 => &[[Eta2, Eta1]],
            Eta32 => &[[Eta3, Eta2]],
            Eta321 => &[[Eta32, Eta1], [Eta3, Eta21]],
            _ => &[],
        }
    }

    fn stem(self) -> &'static str {
        use DualEdge::*;
        match self {
            Rho0 => "rho0",
            Rho2 => "rho2",
            Xi1 => "xi1",
            Xi2 => "xi2",
            Xi3 => "xi3",
            Xi21 => "xi21",
            Xi32 => "xi32",
            Xi321 => "xi321",
            Eta1 => "eta1",
            Eta2 => "eta2",
            Eta3 => "eta3",
            Eta21 => "eta21",
            Eta32 => "eta32",
            Eta321 => "eta321",
        }
    }

    /// Primed name, e.g. `xi21'`.
    pub fn name(self) -> String {
        format!("{}'", self.stem())
    }

    /// Minus-sign name used for reduced bar generators, e.g. `-xi21`.
    pub fn minus_name(self) -> String {
        format!("-{}", self.stem())
    }
}

impl fmt::Display for DualEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}'", self.stem())
    }
}

impl FromStr for DualEdge {
    type Err = NameError;

    /// Accepts both `xi21'` and `-xi21`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let stem = s
            .strip_suffix('\'')
            .or_else(|| s.strip_prefix('-'))
            .ok_or_else(|| NameError::new("dual edge", s))?;
        let stem: String = stem.chars().filter(|&c| c != '_').collect();
        DualEdge::ALL
            .into_iter()
            .find(|e| e.stem() == stem)
            .ok_or_else(|| NameError::new("dual edge", s))
    }
}

/// A directed path in the reversed chord graph; a basis element of the
/// dual algebra. The empty path is the constant path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualPath {
    start: Idempotent,
    edges: Vec<DualEdge>,
}

impl DualPath {
    pub fn constant(vertex: Idempotent) -> Self {
        Self {
            start: vertex,
            edges: Vec::new(),
        }
    }

    /// Builds a path from a nonempty composable edge sequence.
    pub fn from_edges(edges: &[DualEdge]) -> Option<Self> {
        let first = edges.first()?;
        if edges.windows(2).any(|w| w[0].target() != w[1].source()) {
            return None;
        }
        Some(Self {
            start: first.source(),
            edges: edges.to_vec(),
        })
    }

    pub fn start(&self) -> Idempotent {
        self.start
    }

    pub fn end(&self) -> Idempotent {
        self.edges.last().map_or(self.start, |e| e.target())
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    /// Number of edges; constant paths have length zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_constant(&self) -> bool {
        self.edges.is_empty()
    }

    /// Concatenation, or `None` when the endpoints do not match.
    pub fn mul(&self, other: &DualPath) -> Option<DualPath> {
        if self.end() != other.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(DualPath {
            start: self.start,
            edges,
        })
    }

    /// Differential by the Leibniz rule from the one-edge rule
    /// [`DualEdge::differential`].
    pub fn differential(&self) -> DualElement {
        self.differential_with(|e| e.differential().to_vec())
    }

    /// Differential with a caller-supplied one-edge rule.
    pub fn differential_with<F>(&self, rule: F) -> DualElement
    where
        F: Fn(DualEdge) -> Vec<[DualEdge; 2]>,
    {
        let mut out = DualElement::zero();
        for (pos, &edge) in self.edges.iter().enumerate() {
            for split in rule(edge) {
                let mut edges = Vec::with_capacity(self.edges.len() + 1);
                edges.extend_from_slice(&self.edges[..pos]);
                edges.extend_from_slice(&split);
                edges.extend_from_slice(&self.edges[pos + 1..]);
                out.toggle(DualPath {
                    start: self.start,
                    edges,
                });
            }
        }
        out
    }

    /// Every directed path, constant paths included, ordered by length.
    pub fn all() -> Vec<DualPath> {
        let mut out: Vec<DualPath> = Idempotent::ALL
            .into_iter()
            .map(DualPath::constant)
            .collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for path in &frontier {
                for e in DualEdge::ALL
                    .into_iter()
                    .filter(|e| e.source() == path.end())
                {
                    let mut edges = path.edges.clone();
                    edges.push(e);
                    next.push(DualPath {
                        start: path.start,
                        edges,
                    });
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Label in primed notation: `eta3',xi21'`, or `j0'` for a constant.
    pub fn primed_label(&self) -> String {
        if self.edges.is_empty() {
            return format!("{}'", self.start);
        }
        let names: Vec<_> = self.edges.iter().map(|e| e.name()).collect();
        names.join(",")
    }

    /// Label in minus notation: `-eta3,-xi21`, or `j0` for a constant.
    pub fn minus_label(&self) -> String {
        if self.edges.is_empty() {
            return self.start.to_string();
        }
        let names: Vec<_> = self.edges.iter().map(|e| e.minus_name()).collect();
        names.join(",")
    }

    /// Parses either label notation.
    pub fn parse_label(label: &str) -> Result<DualPath, NameError> {
        let label = label.trim();
        let vertex = label.strip_suffix('\'').unwrap_or(label);
        if let Ok(v) = vertex.parse::<Idempotent>() {
            return Ok(DualPath::constant(v));
        }
        let edges = label
            .split(',')
            .map(|t| t.trim().parse::<DualEdge>())
            .collect::<Result<Vec<_>, _>>()?;
        DualPath::from_edges(&edges).ok_or_else(|| NameError::new("dual path", label))
    }
}

impl fmt::Display for DualPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({})", self.primed_label())
    }
}

/// An F2 combination of dual paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualElement(BTreeSet<DualPath>);

impl DualElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn toggle(&mut self, path: DualPath) {
        if !self.0.remove(&path) {
            self.0.insert(path);
        }
    }

    pub fn add(&mut self, other: &DualElement) {
        for p in &other.0 {
            self.toggle(p.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &DualPath> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn differential(&self) -> DualElement {
        let mut out = DualElement::zero();
        for p in &self.0 {
            out.add(&p.differential());
        }
        out
    }

    /// `self * path`, extended linearly.
    pub fn mul_right(&self, path: &DualPath) -> DualElement {
        self.0.iter().filter_map(|p| p.mul(path)).collect()
    }

    /// `path * self`, extended linearly.
    pub fn mul_left(&self, path: &DualPath) -> DualElement {
        self.0.iter().filter_map(|p| path.mul(p)).collect()
    }
}

impl From<DualPath> for DualElement {
    fn from(p: DualPath) -> Self {
        let mut e = DualElement::zero();
        e.toggle(p);
        e
    }
}

impl FromIterator<DualPath> for DualElement {
    fn from_iter<I: IntoIterator<Item = DualPath>>(iter: I) -> Self {
        let mut e = DualElement::zero();
        for p in iter {
            e.toggle(p);
        }
        e
    }
}

/// Edges of the chord graph: the unit chords with their endpoints.
pub fn chord_graph_edges() -> Vec<(Idempotent, Idempotent)> {
    Basis::chords()
        .filter(|b| b.chord_length() == 1)
        .map(|b| (b.left(), b.right()))
        .collect()
}

/// Edges of the reversed graph.
pub fn dual_graph_edges() -> Vec<(Idempotent, Idempotent)> {
    DualEdge::ALL
        .iter()
        .map(|e| (e.source(), e.target()))
        .collect()
}

/// Does a directed graph on the six idempotents have a cycle?
pub fn has_directed_cycle(edges: &[(Idempotent, Idempotent)]) -> bool {
    // Kahn's algorithm: a cycle remains iff some vertex is never freed.
    let mut indegree = [0usize; 6];
    let idx = |v: Idempotent| Idempotent::ALL.iter().position(|&w| w == v).unwrap();
    for &(_, t) in edges {
        indegree[idx(t)] += 1;
    }
    let mut ready: Vec<usize> = (0..6).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for &(s, t) in edges {
            if idx(s) == v {
                indegree[idx(t)] -= 1;
                if indegree[idx(t)] == 0 {
                    ready.push(idx(t));
                }
            }
        }
    }
    seen < 6
}

/// Outcome of the exhaustive algebra checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraChecks {
    pub triples: usize,
    pub paths: usize,
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl AlgebraChecks {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Associativity over every basis triple, and d∘d = 0 and the Leibniz rule
/// over every dual path and composable pair.
pub fn exhaustive_checks() -> AlgebraChecks {
    let mut out = AlgebraChecks::default();
    let el = |b: Basis| AlgebraElement::from(b);
    for a in Basis::ALL {
        for b in Basis::ALL {
            for c in Basis::ALL {
                out.triples += 1;
                let (x, y, z) = (el(a), el(b), el(c));
                if x.mul(y).mul(z) != x.mul(y.mul(z)) {
                    out.failures.push(format!("({a} {b}) {c} != {a} ({b} {c})"));
                }
            }
        }
    }
    let paths = DualPath::all();
    for p in &paths {
        out.paths += 1;
        if !p.differential().differential().is_empty() {
            out.failures.push(format!("d(d({p})) != 0"));
        }
    }
    for p in &paths {
        for q in &paths {
            let Some(pq) = p.mul(q) else { continue };
            out.pairs += 1;
            let mut expected = p.differential().mul_right(q);
            expected.add(&q.differential().mul_left(p));
            if pq.differential() != expected {
                out.failures.push(format!("Leibniz fails for {p} * {q}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Basis::*;
    use Idempotent::*;

    fn el(b: Basis) -> AlgebraElement {
        b.into()
    }

    #[test]
    fn named_products() {
        assert_eq!(Xi1.mul(Xi2), Some(Xi12));
        assert_eq!(Basis::Idem(I1).mul(Xi12), Some(Xi12));
        assert_eq!(Basis::Idem(J0).mul(Xi12), None);
        assert_eq!(Rho2.mul(Xi3), None);
        assert_eq!(Basis::Idem(I0).mul(Basis::Idem(I0)), Some(Basis::Idem(I0)));
        assert_eq!(Xi12.mul(Xi3), Some(Xi123));
        assert_eq!(Xi1.mul(Xi23), Some(Xi123));
        assert_eq!(Eta12.mul(Eta3), Some(Eta123));
        // composable endpoints, different letters
        assert_eq!(Xi1.mul(Rho2), None);
        assert_eq!(Eta1.mul(Xi1), None);
    }

    #[test]
    fn endpoint_table() {
        let table = [
            (Rho0, I0, J0),
            (Rho2, I2, J2),
            (Xi1, I1, I2),
            (Xi2, I2, J2),
            (Xi3, J2, J1),
            (Xi12, I1, J2),
            (Xi23, I2, J1),
            (Xi123, I1, J1),
            (Eta1, I0, I1),
            (Eta2, I1, J1),
            (Eta3, J1, J0),
            (Eta12, I0, J1),
            (Eta23, I1, J0),
            (Eta123, I0, J0),
        ];
        for (b, l, r) in table {
            assert_eq!((b.left(), b.right()), (l, r), "{b}");
        }
    }

    #[test]
    fn element_arithmetic() {
        let x = el(Xi1) + el(Eta1);
        assert_eq!(x.mul(el(Xi2)), el(Xi12));
        assert_eq!(x + x, AlgebraElement::ZERO);
        assert_eq!(AlgebraElement::one().mul(x), x);
        assert_eq!(x.mul(AlgebraElement::one()), x);
        assert_eq!(format!("{}", el(Xi1) + el(Rho0)), "rho0 + xi1");
    }

    #[test]
    fn parsing_names() {
        assert_eq!("xi_12".parse::<Basis>(), Ok(Xi12));
        assert_eq!("eta123".parse::<Basis>(), Ok(Eta123));
        assert_eq!("j2".parse::<Basis>(), Ok(Basis::Idem(J2)));
        assert!("rho1".parse::<Basis>().is_err());
        assert_eq!("xi32'".parse::<DualEdge>(), Ok(DualEdge::Xi32));
        assert_eq!("-eta1".parse::<DualEdge>(), Ok(DualEdge::Eta1));
        assert!("xi12'".parse::<DualEdge>().is_err());
    }

    #[test]
    fn dual_edge_endpoints() {
        use DualEdge as E;
        let table = [
            (E::Eta3, J0, J1),
            (E::Eta2, J1, I1),
            (E::Eta1, I1, I0),
            (E::Eta32, J0, I1),
            (E::Eta21, J1, I0),
            (E::Eta321, J0, I0),
            (E::Rho0, J0, I0),
            (E::Rho2, J2, I2),
            (E::Xi3, J1, J2),
            (E::Xi2, J2, I2),
            (E::Xi1, I2, I1),
            (E::Xi32, J1, I2),
            (E::Xi21, J2, I1),
            (E::Xi321, J1, I1),
        ];
        for (e, s, t) in table {
            assert_eq!((e.source(), e.target()), (s, t), "{e}");
        }
    }

    #[test]
    fn reverse_edges() {
        assert_eq!(DualEdge::Xi32.reverse(), Xi23);
        assert_eq!(DualEdge::Eta1.reverse(), Eta1);
        assert_eq!(DualEdge::Rho0.reverse(), Rho0);
    }

    #[test]
    fn dual_products() {
        let p = |es: &[DualEdge]| DualPath::from_edges(es).unwrap();
        let eta3 = p(&[DualEdge::Eta3]);
        assert_eq!(
            eta3.mul(&p(&[DualEdge::Eta2])),
            Some(p(&[DualEdge::Eta3, DualEdge::Eta2]))
        );
        assert_eq!(eta3.mul(&p(&[DualEdge::Xi1])), None);
        assert_eq!(DualPath::constant(J0).mul(&eta3), Some(eta3.clone()));
        assert!(DualPath::from_edges(&[DualEdge::Eta3, DualEdge::Xi1]).is_none());
    }

    #[test]
    fn dual_differentials() {
        let p = |es: &[DualEdge]| DualPath::from_edges(es).unwrap();
        use DualEdge as E;
        assert_eq!(p(&[E::Xi21]).differential(), p(&[E::Xi2, E::Xi1]).into());
        let expected: DualElement = [p(&[E::Xi32, E::Xi1]), p(&[E::Xi3, E::Xi21])]
            .into_iter()
            .collect();
        assert_eq!(p(&[E::Xi321]).differential(), expected);
        assert!(p(&[E::Eta3]).differential().is_zero());
        assert!(DualPath::constant(I1).differential().is_zero());
    }

    #[test]
    fn path_count_and_labels() {
        let all = DualPath::all();
        assert_eq!(all.len(), 56);
        let path = DualPath::parse_label("eta3',xi3',xi21'").unwrap();
        assert_eq!(path.minus_label(), "-eta3,-xi3,-xi21");
        assert_eq!(DualPath::parse_label("-eta3,-xi3,-xi21").unwrap(), path);
        assert_eq!(
            DualPath::parse_label("i2'").unwrap(),
            DualPath::constant(I2)
        );
        assert_eq!(DualPath::parse_label("i2").unwrap().primed_label(), "i2'");
        assert!(DualPath::parse_label("eta3',xi1'").is_err());
    }

    #[test]
    fn exhaustive_checks_pass() {
        let c = exhaustive_checks();
        assert!(c.passed(), "{:?}", c.failures);
        assert_eq!((c.triples, c.paths), (8000, 56));
    }

    #[test]
    fn graphs_are_acyclic() {
        assert_eq!(chord_graph_edges().len(), 8);
        assert!(!has_directed_cycle(&chord_graph_edges()));
        assert!(!has_directed_cycle(&dual_graph_edges()));
        assert!(has_directed_cycle(&[(I0, I1), (I1, I0)]));
    }
}
