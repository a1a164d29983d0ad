use std::collections::BTreeSet;

use subuniv::enumerate::{bruteforce_semilattices, enumerate_semilattices};
use subuniv::subuniverse::{count_subuniverses_bruteforce, count_subuniverses_split};

/// Lattices on n + 1 elements (add a bottom to an n-element semilattice).
const LATTICE_COUNTS: [usize; 9] = [1, 1, 2, 5, 15, 53, 222, 1078, 5994];

#[test]
fn counts_match_lattice_numbers() {
    for (i, &expected) in LATTICE_COUNTS[..8].iter().enumerate() {
        let run = enumerate_semilattices(i + 1).unwrap();
        assert_eq!(run.len(), expected, "n = {}", i + 1);
    }
}

#[test]
fn nine_elements() {
    assert_eq!(enumerate_semilattices(9).unwrap().len(), LATTICE_COUNTS[8]);
}

#[test]
fn generator_matches_all_relations_oracle() {
    for n in 1..=5 {
        let a: BTreeSet<_> = enumerate_semilattices(n).unwrap().codes.into_iter().collect();
        let b: BTreeSet<_> = bruteforce_semilattices(n).unwrap().codes.into_iter().collect();
        assert_eq!(a, b, "n = {n}");
    }
}

#[test]
fn counting_oracles_agree_on_every_pivot_up_to_seven() {
    for n in 1..=7 {
        for l in &enumerate_semilattices(n).unwrap().structures {
            let brute = count_subuniverses_bruteforce(l).unwrap().count;
            for pivot in 0..n {
                assert_eq!(count_subuniverses_split(l, pivot).unwrap().count, brute);
            }
        }
    }
}

#[test]
fn repeated_runs_are_identical() {
    let a = enumerate_semilattices(7).unwrap();
    let b = enumerate_semilattices(7).unwrap();
    assert_eq!(a.codes, b.codes);
    assert_eq!(a.structures, b.structures);
    assert_eq!(a.levels, b.levels);
}
