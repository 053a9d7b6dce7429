use std::collections::BTreeSet;

use pillowcase::algebra::Basis;
use pillowcase::bar::{build_bar, builtin_bar_r};
use pillowcase::corpus::{load_module, DataSource, ENTRIES, REFERENCE};
use pillowcase::curves::compile_text;
use pillowcase::pairing::{
    build_pairing, intersection_number, pair, pair_rank, pair_rank_with, PairingError,
};
use pillowcase::structures::{DDStructure, LeftModule, RightModule};

fn load(file: &str) -> RightModule {
    load_module(&DataSource::Embedded, file).unwrap().module
}

fn lnat() -> RightModule {
    load(REFERENCE)
}

/// Every chain of DD arrows, fed to both modules under strict unitality:
/// a side made only of identities acts as the identity, a side mixing
/// identities with chords vanishes.
fn oracle_arrows(
    m1: &RightModule,
    dd: &DDStructure,
    n0: &LeftModule,
) -> BTreeSet<(String, String)> {
    let gens: Vec<(usize, usize, usize)> = (0..m1.generators().len())
        .flat_map(|m| (0..dd.generators().len()).map(move |b| (m, b)))
        .flat_map(|(m, b)| (0..n0.generators().len()).map(move |n| (m, b, n)))
        .filter(|&(m, b, n)| {
            dd.generators()[b].left == m1.generators()[m].idempotent
                && dd.generators()[b].right == n0.generators()[n].idempotent
        })
        .collect();
    let name = |(m, b, n): (usize, usize, usize)| {
        format!(
            "{}|{}|{}",
            m1.generators()[m].name,
            dd.generators()[b].name,
            n0.generators()[n].name
        )
    };
    let apply_right = |x: usize, inputs: &[Basis]| -> Vec<usize> {
        if inputs.iter().all(|b| b.is_idempotent()) {
            return vec![x];
        }
        if inputs.iter().any(|b| b.is_idempotent()) {
            return Vec::new();
        }
        m1.actions()
            .filter(|a| a.source == x && a.inputs == inputs)
            .map(|a| a.target)
            .collect()
    };
    let apply_left = |x: usize, inputs: &[Basis]| -> Vec<usize> {
        if inputs.iter().all(|b| b.is_idempotent()) {
            return vec![x];
        }
        if inputs.iter().any(|b| b.is_idempotent()) {
            return Vec::new();
        }
        n0.actions()
            .filter(|a| a.source == x && a.inputs == inputs)
            .map(|a| a.target)
            .collect()
    };
    let max_len = m1.max_arity().max(n0.max_arity()).max(1);
    let mut counts: std::collections::BTreeMap<(String, String), u32> = Default::default();
    for &(m, b, n) in &gens {
        let mut stack = vec![(b, Vec::new(), Vec::new())];
        while let Some((at, lefts, rights)) = stack.pop() {
            if lefts.len() == max_len {
                continue;
            }
            for a in dd.arrows_from(at) {
                let mut l: Vec<Basis> = lefts.clone();
                let mut r: Vec<Basis> = rights.clone();
                l.push(a.left);
                r.insert(0, a.right);
                for m2 in apply_right(m, &l) {
                    for n2 in apply_left(n, &r) {
                        *counts
                            .entry((name((m, b, n)), name((m2, a.target, n2))))
                            .or_default() += 1;
                    }
                }
                stack.push((a.target, l, r));
            }
        }
    }
    counts
        .into_iter()
        .filter(|(_, c)| c % 2 == 1)
        .map(|(k, _)| k)
        .collect()
}

fn built_arrows(m1: &RightModule, dd: &DDStructure, n0: &LeftModule) -> BTreeSet<(String, String)> {
    let c = build_pairing(m1, dd, n0).unwrap();
    c.arrows()
        .map(|(s, t)| (c.names()[s].clone(), c.names()[t].clone()))
        .collect()
}

#[test]
fn unknot_pairing() {
    let c = pair(&load("unknot.curve"), &lnat()).unwrap();
    assert_eq!(c.generator_count(), 13);
    assert_eq!(c.arrow_count(), 12);
    assert_eq!(c.boundary().rank(), 6);
    assert_eq!(c.homology_rank(), 1);
}

#[test]
fn trefoil_pairing() {
    let c = pair(&load("t23.mod"), &lnat()).unwrap();
    assert_eq!((c.generator_count(), c.arrow_count()), (15, 10));
    assert_eq!(c.homology_rank(), 3);
}

#[test]
fn corpus_ranks() {
    let reference = lnat();
    for e in ENTRIES {
        let Some(expected) = e.expected_rank else {
            continue;
        };
        assert_eq!(
            pair_rank(&load(e.file), &reference).unwrap(),
            expected,
            "{}",
            e.name
        );
    }
}

#[test]
fn belt_generators_and_worked_arrows() {
    // Belt generators are compiled as arcs: z i0, w i2, s j2, x j0.
    let belt = load("belt.curve");
    let c = pair(&belt, &lnat()).unwrap();
    let arc = |g: &str| match g {
        "z" => "i0",
        "w" => "i2",
        "s" => "j2",
        "x" => "j0",
        _ => unreachable!(),
    };
    let named = |m: &str, b: &str, n: &str| format!("{}|{b}|{n}*", arc(m));
    let expected: BTreeSet<String> = [
        ("w", "b(i2)", "w"),
        ("s", "b(j2)", "s"),
        ("x", "b(j0)", "x"),
        ("z", "b(i0)", "z"),
        ("s", "b(-rho2,-xi1,-eta1)", "z"),
        ("s", "b(-rho2)", "w"),
        ("s", "b(-xi2)", "w"),
        ("s", "b(-rho2,-xi1)", "t"),
        ("w", "b(-xi1,-eta1)", "z"),
        ("w", "b(-xi1)", "t"),
        ("x", "b(-eta3)", "y"),
        ("x", "b(-eta3,-xi3,-rho2,-xi1,-eta1)", "z"),
        ("x", "b(-eta3,-xi3)", "s"),
        ("x", "b(-eta3,-xi3,-rho2,-xi1)", "t"),
        ("x", "b(-eta3,-xi3,-rho2)", "w"),
        ("x", "b(-rho0)", "z"),
    ]
    .into_iter()
    .map(|(m, b, n)| named(m, b, n))
    .collect();
    let got: BTreeSet<String> = c.names().iter().cloned().collect();
    assert_eq!(got, expected);
    let p5 = named("x", "b(-eta3,-xi3,-rho2,-xi1)", "t");
    assert!(c.has_arrow(&named("s", "b(-rho2,-xi1)", "t"), &p5));
    assert!(c.has_arrow(&named("x", "b(-eta3,-xi3)", "s"), &p5));
    assert_eq!(c.homology_rank(), 2);
}

#[test]
fn strict_unitality_oracle_matches_on_the_corpus() {
    let reference = lnat().dualize();
    let bar_r = builtin_bar_r();
    for file in [
        "unknot.curve",
        "lnat.curve",
        "belt.curve",
        "t23.mod",
        "r0.mod",
        "r1.mod",
        "r4.mod",
        "t37.sum",
    ] {
        let m = load(file);
        assert_eq!(
            built_arrows(&m, &bar_r, &reference),
            oracle_arrows(&m, &bar_r, &reference),
            "{file}"
        );
    }
}

#[test]
fn strict_unitality_oracle_matches_through_the_unreduced_bar() {
    let reference = lnat().dualize();
    let bar = build_bar();
    for file in ["unknot.curve", "t23.mod", "r1.mod"] {
        let m = load(file);
        assert_eq!(
            built_arrows(&m, &bar, &reference),
            oracle_arrows(&m, &bar, &reference),
            "{file}"
        );
    }
}

#[test]
fn unreduced_bar_gives_the_same_ranks() {
    let reference = lnat();
    let bar = build_bar();
    for e in ENTRIES {
        let m = load(e.file);
        if m.generators().len() > 20 {
            continue;
        }
        assert_eq!(
            pair_rank_with(&m, &bar, &reference).unwrap(),
            pair_rank(&m, &reference).unwrap(),
            "{}",
            e.name
        );
    }
}

#[test]
fn rank_is_additive_over_direct_sums() {
    let reference = lnat();
    let r0 = load("r0.mod");
    let r1 = load("r1.mod");
    let sum = RightModule::direct_sum(&[r0.clone(), r1.clone(), r1.clone()]);
    let parts = pair_rank(&r0, &reference).unwrap() + 2 * pair_rank(&r1, &reference).unwrap();
    assert_eq!(pair_rank(&sum, &reference).unwrap(), parts);
    assert_eq!(parts, 9);
    let empty = RightModule::direct_sum(&[]);
    assert_eq!(pair_rank(&empty, &reference).unwrap(), 0);
}

#[test]
fn dualizing_twice_gives_back_the_module() {
    for e in ENTRIES {
        let m = load(e.file);
        assert_eq!(m.dualize().dualize(), m, "{}", e.name);
        assert_eq!(m.dualize().action_count(), m.action_count());
    }
}

#[test]
fn dual_reverses_every_action() {
    let m = lnat();
    let d = m.dualize();
    let z = d.generator_index("z*").unwrap();
    let x = d.generator_index("x*").unwrap();
    assert!(d
        .actions()
        .any(|a| a.source == x && a.target == z && a.inputs == vec![Basis::Rho0]));
}

#[test]
fn periodic_correction() {
    assert_eq!(intersection_number(4, true), Ok(2));
    assert_eq!(intersection_number(4, false), Ok(4));
    assert_eq!(
        intersection_number(1, true),
        Err(PairingError::NegativeIntersection { rank: 1 })
    );
    let l = compile_text("cyclic: B1 j2 B4 i2 B1 i0 B2 j0 B1 j1 B3 i1").unwrap();
    assert_eq!(pair_rank(&l, &lnat()).unwrap(), 4);
}

#[test]
fn two_sided_arrows_are_rejected() {
    let bar = build_bar();
    let x = bar.generator_index("b(-eta3,-xi3,-xi21)").unwrap();
    let y = bar.generator_index("b(-eta3,-xi3,-xi2,-xi1)").unwrap();
    let once = bar.cancel(x, y).unwrap();
    assert!(matches!(
        build_pairing(&load("unknot.curve"), &once, &lnat().dualize()),
        Err(PairingError::TwoSided(_))
    ));
}
