//! The dual small bar resolution and its reduced form bar_r.
//!
//! Generators of the unreduced bar are the 56 directed paths of the dual
//! graph. Both bars are named in minus notation, `b(-eta3,-xi21)` or
//! `b(j0)` for a constant path.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Basis, DualEdge, DualPath};
use crate::curves::Domain;
use crate::structures::{CancelOrder, DDStructure, DdReport};

const LISTED_BAR: &str = include_str!("../data/bar56.dd");
const BAR_R: &str = include_str!("../data/barr24.dd");

pub fn generator_name(path: &DualPath) -> String {
    format!("b({})", path.minus_label())
}

/// Parses `b(...)` in either notation.
pub fn parse_generator(name: &str) -> Option<DualPath> {
    let inner = name.trim().strip_prefix("b(")?.strip_suffix(')')?;
    DualPath::parse_label(inner).ok()
}

fn canonical(name: &str) -> Result<String, String> {
    parse_generator(name)
        .map(|p| generator_name(&p))
        .ok_or_else(|| format!("`{name}` is not a bar generator"))
}

/// The dual small bar resolution built from the path basis.
pub fn build_bar() -> DDStructure {
    build_bar_with_rule(|e| e.differential().to_vec())
}

/// As [`build_bar`], with a caller-supplied one-edge differential for the
/// internal arrows.
pub fn build_bar_with_rule<F>(rule: F) -> DDStructure
where
    F: Fn(DualEdge) -> Vec<[DualEdge; 2]>,
{
    let paths = DualPath::all();
    let mut dd = DDStructure::new();
    for p in &paths {
        dd.add_generator(generator_name(p), p.start(), p.end())
            .expect("dual paths are distinct");
    }
    let index = |p: &DualPath| {
        dd.generator_index(&generator_name(p))
            .expect("path is listed")
    };
    let mut arrows = Vec::new();
    for p in &paths {
        let src = index(p);
        for e in DualEdge::ALL {
            let edge = DualPath::from_edges(&[e]).expect("single edge");
            if let Some(q) = p.mul(&edge) {
                arrows.push((src, None, index(&q), Some(e.reverse())));
            }
            if let Some(q) = edge.mul(p) {
                arrows.push((src, Some(e.reverse()), index(&q), None));
            }
        }
        for q in p.differential_with(&rule).terms() {
            arrows.push((src, None, index(q), None));
        }
    }
    for (s, l, t, r) in arrows {
        dd.toggle_arrow(s, l, t, r)
            .expect("bar coefficients match path endpoints");
    }
    dd
}

/// The unreduced bar as listed in the fixture, renamed to minus notation.
pub fn listed_bar() -> DDStructure {
    load_fixture(LISTED_BAR)
}

/// The reduced bar bar_r: 24 generators, 36 arrows.
pub fn builtin_bar_r() -> DDStructure {
    load_fixture(BAR_R)
}

fn load_fixture(text: &str) -> DDStructure {
    parse_bar(text).expect("shipped bar fixture is well formed")
}

/// Parses a bar in DD text format, accepting primed or minus names.
pub fn parse_bar(text: &str) -> Result<DDStructure, String> {
    let dd: DDStructure = text.parse().map_err(|e| format!("{e}"))?;
    dd.rename(canonical)
}

/// Differences between two structures with matching names, as
/// `missing:` / `extra:` lines relative to `expected`.
pub fn arrow_differences(built: &DDStructure, expected: &DDStructure) -> Vec<String> {
    let names = |d: &DDStructure| -> BTreeSet<String> {
        d.generators().iter().map(|g| g.name.clone()).collect()
    };
    let (bn, en) = (names(built), names(expected));
    let mut out: Vec<String> = en
        .difference(&bn)
        .map(|g| format!("missing generator {g}"))
        .chain(bn.difference(&en).map(|g| format!("extra generator {g}")))
        .collect();
    let show = |(s, l, t, r): &(String, Basis, String, Basis)| {
        let c = |b: &Basis| {
            if b.is_idempotent() {
                "1".to_string()
            } else {
                b.to_string()
            }
        };
        format!("{s} | {} ; {} -> {t}", c(l), c(r))
    };
    let (ba, ea) = (built.arrow_records(), expected.arrow_records());
    out.extend(
        ea.difference(&ba)
            .map(|a| format!("missing arrow {}", show(a))),
    );
    out.extend(
        ba.difference(&ea)
            .map(|a| format!("extra arrow {}", show(a))),
    );
    out
}

/// Structural properties of a reduced bar used by the pairing: no arrow
/// emits on both sides, no coefficient is a composite chord, and every
/// generator is a boundary path of one domain read backwards.
pub fn reduced_bar_violations(bar: &DDStructure) -> Vec<String> {
    let mut out = Vec::new();
    for a in bar.arrows() {
        if a.is_two_sided() {
            out.push(format!("two-sided arrow {}", bar.describe_arrow(a)));
        }
        if [a.left, a.right].iter().any(|c| c.chord_length() > 1) {
            out.push(format!("composite emission {}", bar.describe_arrow(a)));
        }
        if a.is_identity() {
            out.push(format!("identity arrow {}", bar.describe_arrow(a)));
        }
    }
    for g in bar.generators() {
        let ok = parse_generator(&g.name).is_some_and(|p| is_boundary_path(&p));
        if !ok {
            out.push(format!("{} is not a boundary chord path", g.name));
        }
    }
    out
}

/// Is the path, read backwards, a run of consecutive chords along one
/// domain boundary?
pub fn is_boundary_path(p: &DualPath) -> bool {
    if p.is_constant() {
        return true;
    }
    let chords: Vec<Basis> = p.edges().iter().rev().map(|e| e.reverse()).collect();
    Domain::ALL.iter().any(|d| {
        d.chords()
            .windows(chords.len())
            .any(|w| w == chords.as_slice())
    })
}

#[derive(Clone, Debug)]
pub struct OrderOutcome {
    pub order: CancelOrder,
    pub cancellations: usize,
    pub generators: usize,
    pub arrows: usize,
    /// Isomorphic to the reference bar_r.
    pub matches_reference: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct BarCertificate {
    pub built_generators: usize,
    pub built_arrows: usize,
    pub built_relation: DdReport,
    pub listing_differences: Vec<String>,
    pub reference_relation: DdReport,
    pub reference_violations: Vec<String>,
    pub orders: Vec<OrderOutcome>,
}

impl BarCertificate {
    pub fn passed(&self) -> bool {
        self.built_relation.passed()
            && self.listing_differences.is_empty()
            && self.reference_relation.passed()
            && self.reference_violations.is_empty()
            && self.orders.len() >= 3
            && self
                .orders
                .iter()
                .all(|o| o.error.is_none() && o.matches_reference)
    }

    /// One line per failed check.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(
            self.built_relation
                .violations
                .iter()
                .map(|v| format!("built bar relation: {v}")),
        );
        out.extend(
            self.listing_differences
                .iter()
                .map(|d| format!("listing: {d}")),
        );
        out.extend(
            self.reference_relation
                .violations
                .iter()
                .map(|v| format!("bar_r relation: {v}")),
        );
        out.extend(
            self.reference_violations
                .iter()
                .map(|v| format!("bar_r: {v}")),
        );
        for o in &self.orders {
            if let Some(e) = &o.error {
                out.push(format!("reduction {:?}: {e}", o.order));
            } else if !o.matches_reference {
                out.push(format!(
                    "reduction {:?}: {} generators / {} arrows, not isomorphic to bar_r",
                    o.order, o.generators, o.arrows
                ));
            }
        }
        out
    }
}

impl fmt::Display for BarCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "built: {} generators, {} arrows, relation {}",
            self.built_generators,
            self.built_arrows,
            if self.built_relation.passed() {
                "ok"
            } else {
                "FAILED"
            }
        )?;
        writeln!(f, "listing: {} differences", self.listing_differences.len())?;
        for o in &self.orders {
            writeln!(
                f,
                "reduce {:?}: {} cancellations -> {} generators, {} arrows, {}",
                o.order,
                o.cancellations,
                o.generators,
                o.arrows,
                match (&o.error, o.matches_reference) {
                    (Some(e), _) => format!("error: {e}"),
                    (None, true) => "isomorphic to bar_r".to_string(),
                    (None, false) => "NOT isomorphic to bar_r".to_string(),
                }
            )?;
        }
        for line in self.failures() {
            writeln!(f, "failure: {line}")?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

pub const DEFAULT_ORDERS: [CancelOrder; 5] = [
    CancelOrder::First,
    CancelOrder::Last,
    CancelOrder::Seeded(1),
    CancelOrder::Seeded(2),
    CancelOrder::Seeded(3),
];

/// Certifies the shipped bars against the construction.
pub fn certify_bar() -> BarCertificate {
    certify(
        &build_bar(),
        &listed_bar(),
        &builtin_bar_r(),
        &DEFAULT_ORDERS,
    )
}

/// Compares `built` with `listing` arrow for arrow, then reduces it under
/// each order and compares with `reference`.
pub fn certify(
    built: &DDStructure,
    listing: &DDStructure,
    reference: &DDStructure,
    orders: &[CancelOrder],
) -> BarCertificate {
    let built_relation = built.validate();
    let orders = orders
        .iter()
        .map(|&order| match built.reduce(order) {
            Ok((reduced, steps)) => OrderOutcome {
                order,
                cancellations: steps.len(),
                generators: reduced.generators().len(),
                arrows: reduced.arrow_count(),
                matches_reference: reduced.is_isomorphic(reference),
                error: None,
            },
            Err(e) => OrderOutcome {
                order,
                cancellations: 0,
                generators: 0,
                arrows: 0,
                matches_reference: false,
                error: Some(e.to_string()),
            },
        })
        .collect();
    BarCertificate {
        built_generators: built.generators().len(),
        built_arrows: built.arrow_count(),
        built_relation,
        listing_differences: arrow_differences(built, listing),
        reference_relation: reference.validate(),
        reference_violations: reduced_bar_violations(reference),
        orders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let bar = build_bar();
        assert_eq!(bar.generators().len(), 56);
        assert_eq!(listed_bar().generators().len(), 56);
        let r = builtin_bar_r();
        assert_eq!((r.generators().len(), r.arrow_count()), (24, 36));
    }

    #[test]
    fn names_are_canonical_in_both_fixtures() {
        let a = listed_bar();
        assert!(a.generator_index("b(-eta3,-xi3,-xi21)").is_some());
        assert!(a.generator_index("b(i2)").is_some());
        assert_eq!(
            parse_generator("b(eta3',xi21')"),
            parse_generator("b(-eta3,-xi21)")
        );
        assert_eq!(parse_generator("b(j0')"), parse_generator("b(j0)"));
        assert!(parse_generator("c(j0)").is_none());
    }

    #[test]
    fn boundary_paths() {
        let ok = parse_generator("b(-eta3,-xi3,-rho2,-xi1,-eta1)").unwrap();
        assert!(is_boundary_path(&ok));
        let composite = parse_generator("b(-xi21)").unwrap();
        assert!(!is_boundary_path(&composite));
        let stitched = parse_generator("b(-xi3,-xi2)").unwrap();
        assert!(!is_boundary_path(&stitched));
    }

    #[test]
    fn unreduced_bar_is_not_reduced() {
        assert!(!reduced_bar_violations(&build_bar()).is_empty());
        assert!(reduced_bar_violations(&builtin_bar_r()).is_empty());
    }

    #[test]
    fn certification_passes() {
        let cert = certify_bar();
        assert!(cert.passed(), "{cert}");
    }
}
