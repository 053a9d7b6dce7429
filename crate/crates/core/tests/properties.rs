use proptest::prelude::*;

use pillowcase::bar::{build_bar, builtin_bar_r};
use pillowcase::corpus::{load_module, DataSource, REFERENCE};
use pillowcase::f2linear::{homology_rank, F2Matrix};
use pillowcase::pairing::{pair, pair_rank};
use pillowcase::structures::{CancelOrder, RightModule};

fn load(file: &str) -> RightModule {
    load_module(&DataSource::Embedded, file).unwrap().module
}

/// Rank by elimination on rows stored as `Vec<bool>`.
fn oracle_rank(rows: &[Vec<bool>]) -> usize {
    let mut rows = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dense(m: &F2Matrix) -> Vec<Vec<bool>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect()
}

/// A complex with `pairs` cancelling pairs and `free` homology generators,
/// scrambled by simultaneous elementary row and column operations.
fn scrambled_complex(pairs: usize, free: usize, ops: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let n = 2 * pairs + free;
    let mut d = vec![vec![false; n]; n];
    for k in 0..pairs {
        d[2 * k + 1][2 * k] = true;
    }
    for &(i, j) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        // Conjugate by E = 1 + e_ji (its own inverse): add row i to row j,
        // then column j to column i.
        let row = d[i].clone();
        for (x, y) in d[j].iter_mut().zip(row) {
            *x ^= y;
        }
        for r in d.iter_mut() {
            r[i] ^= r[j];
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_rank_matches_kernel_minus_image(
        pairs in 0usize..8,
        free in 0usize..6,
        ops in prop::collection::vec((0usize..32, 0usize..32), 0..60),
    ) {
        prop_assume!(pairs + free > 0);
        let d = scrambled_complex(pairs, free, &ops);
        let n = d.len();
        let m = F2Matrix::from_entries(
            n,
            n,
            (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| d[r][c]),
        );
        let image = oracle_rank(&d);
        let kernel = n - image;
        prop_assert_eq!(image, pairs);
        prop_assert_eq!(homology_rank(&m).unwrap(), kernel - image);
        prop_assert_eq!(kernel - image, free);
    }

    #[test]
    fn matrix_rank_matches_elimination(
        rows in 1usize..12,
        cols in 1usize..70,
        bits in prop::collection::vec(any::<bool>(), 12 * 70),
    ) {
        let d: Vec<Vec<bool>> = (0..rows)
            .map(|r| (0..cols).map(|c| bits[r * 70 + c]).collect())
            .collect();
        let m = F2Matrix::from_entries(
            rows,
            cols,
            (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).filter(|&(r, c)| d[r][c]),
        );
        prop_assert_eq!(dense(&m), d.clone());
        prop_assert_eq!(m.rank(), oracle_rank(&d));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rank_ignores_generator_order(seed in any::<u64>(), which in 0usize..5) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let file = ["unknot.mod", "t23.mod", "r0.mod", "r1.mod", "lnat.mod"][which];
        let m = load(file);
        let text = m.to_string();
        let mut gens: Vec<&str> = text.lines().filter(|l| l.starts_with("gen ")).collect();
        let mut acts: Vec<&str> = text.lines().filter(|l| l.starts_with("act ")).collect();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        gens.shuffle(&mut rng);
        acts.shuffle(&mut rng);
        let shuffled: RightModule = format!("{}\n{}\n", gens.join("\n"), acts.join("\n"))
            .parse()
            .unwrap();
        prop_assert!(shuffled.is_isomorphic(&m));
        let reference = load(REFERENCE);
        let a = pair(&m, &reference).unwrap();
        let b = pair(&shuffled, &reference).unwrap();
        prop_assert_eq!(a.homology_rank(), b.homology_rank());
        prop_assert_eq!(a.generator_count(), b.generator_count());
        prop_assert_eq!(a.arrow_count(), b.arrow_count());
    }

    #[test]
    fn rank_is_additive(picks in prop::collection::vec(0usize..5, 0..4)) {
        let files = ["unknot.mod", "t23.mod", "r0.mod", "r1.mod", "belt.curve"];
        let reference = load(REFERENCE);
        let parts: Vec<RightModule> = picks.iter().map(|&i| load(files[i])).collect();
        let expected: usize = parts.iter().map(|m| pair_rank(m, &reference).unwrap()).sum();
        let sum = RightModule::direct_sum(&parts);
        prop_assert_eq!(pair_rank(&sum, &reference).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn every_cancellation_order_reaches_bar_r(seed in any::<u64>()) {
        let (reduced, steps) = build_bar().reduce(CancelOrder::Seeded(seed)).unwrap();
        prop_assert_eq!(steps.len(), 16);
        prop_assert!(reduced.validate().passed());
        prop_assert!(reduced.is_isomorphic(&builtin_bar_r()));
    }
}
