use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use treegen::counting::{count_equal_radius, count_linear_total};
use treegen::oracle::{oracle_by_diameter, oracle_free_trees};
use treegen::treeenum::{equal_radius_set, linear_set};
use treegen::{step_of, Audit, Catalog, TreeLister};

#[test]
fn matches_oracle_exactly() {
    for n in 1..=12 {
        let lister = TreeLister::new(n).unwrap();
        let listed = lister.list();
        let mut seen = HashSet::new();
        for e in &listed {
            assert_eq!(e.tree.order(), n);
            assert_eq!(step_of(&e.tree, n), e.step, "n={n}");
            assert!(seen.insert(e.tree.canonical()), "duplicate at n={n}");
        }
        let oracle: HashSet<_> = oracle_free_trees(n)
            .unwrap()
            .iter()
            .map(|t| t.canonical())
            .collect();
        assert_eq!(seen, oracle, "n={n}");
    }
}

#[test]
fn step_sizes_match_diameter_table() {
    for n in 3..=11 {
        let lister = TreeLister::new(n).unwrap();
        let table = oracle_by_diameter(n).unwrap();
        for k in 0..lister.step_count() {
            assert_eq!(lister.step(k).len(), table.get(n, n - k - 1), "n={n} k={k}");
        }
    }
}

#[test]
fn audit_is_clean() {
    for n in 3..=11 {
        let mut audit = Audit::default();
        let lister = TreeLister::new(n).unwrap();
        let listed = lister.list_audited(&mut audit);
        assert_eq!(listed, lister.list());
        assert!(audit.is_clean(), "n={n}: {:?}", audit.failures);
        assert!(audit.sets_checked > 0 || n <= 3);
    }
}

fn assert_distinct(trees: &[treegen::Tree]) {
    let codes: BTreeSet<_> = trees.iter().map(|t| t.canonical()).collect();
    assert_eq!(codes.len(), trees.len());
}

#[test]
fn equal_radius_counts() {
    let catalog = Catalog::up_to(3).unwrap();
    for k in 1..=4 {
        for r in 1..=3 {
            for m in 3..=10 {
                let set = equal_radius_set(&catalog, k, r, m).unwrap();
                assert_eq!(
                    BigUint::from(set.len()),
                    count_equal_radius(k, r, m),
                    "k={k} r={r} m={m}"
                );
                let trees = set.trees(&catalog);
                assert_distinct(&trees);
                for t in &trees {
                    assert_eq!(t.diameter(), m - 1);
                }
            }
        }
    }
}

#[test]
fn linear_counts() {
    let catalog = Catalog::up_to(6).unwrap();
    for k in 0..=6 {
        for m in 3..=10 {
            let sets = linear_set(&catalog, k, m);
            let trees: Vec<_> = sets.iter().flat_map(|s| s.trees(&catalog)).collect();
            assert_distinct(&trees);
            assert_eq!(
                BigUint::from(trees.len()),
                count_linear_total(k, m),
                "k={k} m={m}"
            );
        }
    }
}
