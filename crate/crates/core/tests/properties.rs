use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subuniv::analysis::{family_splits, matches_family, narrows, Core};
use subuniv::canon::canonical_form_with_limit;
use subuniv::catalog::{chain, family_member, glued_sum, ordinal_sum};
use subuniv::enumerate::random_semilattice;
use subuniv::order::{bit, full_mask, to_semilattice};
use subuniv::subuniverse::{
    count_subuniverses_bruteforce, count_subuniverses_split, enumerate_subuniverses, is_subuniverse, sigma,
    sigma_trace_bound,
};
use subuniv::{are_isomorphic, Dyadic, JoinSemilattice, PartialBinaryAlgebra, Poset, DEFAULT_K, MAX_ELEMENTS};

fn semilattice(seed: u64, n: usize) -> JoinSemilattice {
    random_semilattice(&mut ChaCha8Rng::seed_from_u64(seed), n).unwrap()
}

fn shuffled(seed: u64, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9));
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_ignores_labelling(seed in any::<u64>(), n in 1usize..=10) {
        let l = semilattice(seed, n);
        let relabelled = l.poset().relabel(&shuffled(seed, n));
        let a = canonical_form_with_limit(l.poset(), MAX_ELEMENTS).unwrap();
        let b = canonical_form_with_limit(&relabelled, MAX_ELEMENTS).unwrap();
        prop_assert_eq!(&a, &b);
        let fixed = l.poset().relabel(a.perm());
        prop_assert_eq!(canonical_form_with_limit(&fixed, MAX_ELEMENTS).unwrap(), a);
    }

    #[test]
    fn covers_round_trip(seed in any::<u64>(), n in 1usize..=12) {
        let l = semilattice(seed, n);
        let rebuilt = Poset::from_covers(n, &l.poset().covers()).unwrap();
        prop_assert_eq!(&rebuilt, l.poset());
    }

    #[test]
    fn join_laws(seed in any::<u64>(), n in 1usize..=10) {
        let l = semilattice(seed, n);
        for i in 0..n {
            prop_assert_eq!(l.join(i, i), i);
            prop_assert!(l.le(i, l.top()));
            for j in 0..n {
                prop_assert_eq!(l.join(i, j), l.join(j, i));
                prop_assert_eq!(l.le(i, j), l.join(i, j) == j);
                let m = l.join(i, j);
                // m is an upper bound below every other upper bound.
                prop_assert!(l.le(i, m) && l.le(j, m));
                for u in 0..n {
                    if l.le(i, u) && l.le(j, u) {
                        prop_assert!(l.le(m, u));
                    }
                    prop_assert_eq!(l.join(l.join(i, j), u), l.join(i, l.join(j, u)));
                }
            }
        }
    }

    #[test]
    fn relabelled_semilattice_keeps_its_count(seed in any::<u64>(), n in 1usize..=9) {
        let l = semilattice(seed, n);
        let r = to_semilattice(l.poset().relabel(&shuffled(seed, n))).unwrap();
        prop_assert_eq!(
            count_subuniverses_bruteforce(&l).unwrap().count,
            count_subuniverses_bruteforce(&r).unwrap().count
        );
        prop_assert!(are_isomorphic(l.poset(), r.poset()));
    }

    #[test]
    fn counting_algorithms_agree_on_semilattices(seed in any::<u64>(), n in 1usize..=10) {
        let l = semilattice(seed, n);
        let brute = count_subuniverses_bruteforce(&l).unwrap().count;
        for pivot in 0..n {
            prop_assert_eq!(count_subuniverses_split(&l, pivot).unwrap().count, brute);
        }
    }

    #[test]
    fn counting_algorithms_agree_on_partial_algebras(seed in any::<u64>(), n in 1usize..=10, density in 0.0f64..0.6) {
        let a = PartialBinaryAlgebra::random(&mut ChaCha8Rng::seed_from_u64(seed), n, density).unwrap();
        let brute = count_subuniverses_bruteforce(&a).unwrap().count;
        for pivot in 0..n {
            prop_assert_eq!(count_subuniverses_split(&a, pivot).unwrap().count, brute);
        }
        prop_assert_eq!(enumerate_subuniverses(&a).unwrap().len() as u64, brute);
    }

    #[test]
    fn subuniverses_form_a_closure_system(seed in any::<u64>(), n in 1usize..=9, density in 0.0f64..0.6) {
        let a = PartialBinaryAlgebra::random(&mut ChaCha8Rng::seed_from_u64(seed), n, density).unwrap();
        let subs = enumerate_subuniverses(&a).unwrap();
        prop_assert!(is_subuniverse(&a, 0));
        prop_assert!(is_subuniverse(&a, full_mask(n)));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let s = subs.choose(&mut rng).unwrap();
            let t = subs.choose(&mut rng).unwrap();
            prop_assert!(is_subuniverse(&a, s & t));
        }
    }

    #[test]
    fn sigma_is_monotone_under_subsemilattices(seed in any::<u64>(), n in 2usize..=9) {
        let l = semilattice(seed, n);
        let subs: Vec<_> = enumerate_subuniverses(&l).unwrap().into_iter().filter(|&s| s != 0).collect();
        let s = *subs.choose(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let k = l.induced(s).unwrap();
        prop_assert!(sigma(&l, DEFAULT_K).unwrap() <= sigma(&k, DEFAULT_K).unwrap());
    }

    #[test]
    fn trace_bound_holds(seed in any::<u64>(), n in 1usize..=10, h in any::<u32>()) {
        let l = semilattice(seed, n);
        let h = (h & full_mask(n)) | bit(0);
        let bound = sigma_trace_bound(&l, h, DEFAULT_K).unwrap();
        prop_assert!(sigma(&l, DEFAULT_K).unwrap() <= bound.bound);
        prop_assert!(bound.traces <= 1 << h.count_ones());
    }

    #[test]
    fn attaching_chains_keeps_sigma(seed in any::<u64>(), n in 1usize..=7, c0 in 0usize..=3, c1 in 1usize..=3) {
        let l = semilattice(seed, n);
        let member = family_member(&l, c0, c1).unwrap();
        prop_assert_eq!(member.len(), n + c0 + c1 - 1);
        prop_assert_eq!(sigma(&member, DEFAULT_K).unwrap(), sigma(&l, DEFAULT_K).unwrap());
    }

    #[test]
    fn dyadic_display_round_trips(m in 0u64..1 << 40, e in -20i32..20) {
        let d = Dyadic::new(m, e);
        prop_assert_eq!(Dyadic::parse(&d.to_string()), Some(d));
        prop_assert_eq!(Dyadic::parse(&d.to_decimal_string()), Some(d));
        prop_assert!((d.to_f64() - m as f64 * 2f64.powi(e)).abs() <= 1e-9 * d.to_f64().max(1.0));
    }

    #[test]
    fn dyadic_order_matches_rationals(a in 0u64..1 << 20, ea in -10i32..10, b in 0u64..1 << 20, eb in -10i32..10) {
        let (x, y) = (Dyadic::new(a, ea), Dyadic::new(b, eb));
        prop_assert_eq!(x.cmp(&y), x.to_f64().partial_cmp(&y.to_f64()).unwrap());
    }
}

#[test]
fn family_soundness() {
    for core in Core::ALL {
        let c = core.structure();
        for c0 in 0..=3 {
            for c1 in 1..=3 {
                let member = family_member(&c, c0, c1).unwrap();
                let m = matches_family(&member, core).unwrap();
                assert!(m.matched, "{} {c0} {c1}", core.id());
                assert_eq!(m.c0_len + m.c1_len, c0 + c1);
                let rebuilt = family_member(&c, m.c0_len, m.c1_len).unwrap();
                assert!(are_isomorphic(rebuilt.poset(), member.poset()));
            }
        }
    }
}

#[test]
fn lower_chain_elements_are_narrows() {
    for core in Core::ALL {
        let c = core.structure();
        for c0 in 0..=3 {
            for c1 in 1..=3 {
                let member = family_member(&c, c0, c1).unwrap();
                // The lower chain occupies the first c0 indices.
                let lower = full_mask(c0);
                assert_eq!(narrows(&member) & lower, lower, "{} {c0} {c1}", core.id());
            }
        }
    }
}

#[test]
fn family_members_of_every_size_up_to_ten_keep_sigma() {
    for core in Core::ALL {
        let c = core.structure();
        let base = sigma(&c, DEFAULT_K).unwrap();
        for n in c.len()..=10 {
            for (c0, c1) in family_splits(c.len(), n) {
                assert_eq!(sigma(&family_member(&c, c0, c1).unwrap(), DEFAULT_K).unwrap(), base);
            }
        }
    }
}

#[test]
fn ordinal_and_glued_sums_agree_on_chains() {
    for a in 1..=5 {
        for b in 1..=5 {
            let ord =
                to_semilattice(ordinal_sum(chain(a).unwrap().poset(), chain(b).unwrap().poset()).unwrap()).unwrap();
            assert!(are_isomorphic(ord.poset(), chain(a + b).unwrap().poset()));
            let glued = glued_sum(&chain(a).unwrap(), &chain(b).unwrap()).unwrap();
            assert!(are_isomorphic(glued.poset(), chain(a + b - 1).unwrap().poset()));
        }
    }
}
