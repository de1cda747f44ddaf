use pdfa_core::birecurrence::{is_birecurrent, minimize};
use pdfa_core::graph::{is_strongly_connected, scc, trim, PairAutomaton, PairNode};
use pdfa_core::oracle::words_up_to;
use pdfa_core::rank::{exact_rank, merge_pairs_from, min_rank_word_sc, rank_word_length_bound};
use pdfa_core::{Acceptor, Budget, PartialDfa, StateSet, Word};
use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

fn arb_dfa(max_states: usize, max_letters: usize) -> impl Strategy<Value = PartialDfa> {
    (1..=max_states, 1..=max_letters).prop_flat_map(|(n, k)| {
        vec(option::weighted(0.8, 0..n), n * k).prop_map(move |table| {
            let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
            PartialDfa::from_table(n, names, table).unwrap()
        })
    })
}

fn arb_word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    vec(0..k, 0..=max_len).prop_map(Word::new)
}

fn arb_dfa_with_words() -> impl Strategy<Value = (PartialDfa, Word, Word, StateSet, StateSet)> {
    arb_dfa(7, 3).prop_flat_map(|dfa| {
        let n = dfa.state_count();
        let k = dfa.letter_count();
        (
            Just(dfa),
            arb_word(k, 8),
            arb_word(k, 8),
            vec(any::<bool>(), n),
            vec(any::<bool>(), n),
        )
            .prop_map(move |(dfa, u, v, s, t)| {
                let s = StateSet::from_states(n, (0..n).filter(|&i| s[i])).unwrap();
                // t ⊇ s
                let t = StateSet::from_states(n, (0..n).filter(|&i| t[i])).unwrap().union(&s);
                (dfa, u, v, s, t)
            })
    })
}

fn arb_acceptor() -> impl Strategy<Value = Acceptor> {
    arb_dfa(6, 2).prop_flat_map(|dfa| {
        let n = dfa.state_count();
        (Just(dfa), 0..n, vec(any::<bool>(), n)).prop_map(move |(dfa, initial, acc)| {
            let accepting = StateSet::from_states(n, (0..n).filter(|&i| acc[i])).unwrap();
            Acceptor::new(dfa, initial, accepting).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn image_composes((dfa, u, v, s, _) in arb_dfa_with_words()) {
        let direct = dfa.image(&s, &u.concat(&v)).unwrap();
        let staged = dfa.image(&dfa.image(&s, &u).unwrap(), &v).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn rank_never_increases((dfa, u, v, _, _) in arb_dfa_with_words()) {
        let q = dfa.all_states();
        prop_assert!(dfa.rank_of_word(&q, &u.concat(&v)).unwrap() <= dfa.rank_of_word(&q, &u).unwrap());
    }

    #[test]
    fn image_is_monotone((dfa, u, _, s, t) in arb_dfa_with_words()) {
        prop_assert!(dfa.image(&s, &u).unwrap().is_subset(&dfa.image(&t, &u).unwrap()));
    }

    #[test]
    fn permutations_keep_full_rank(n in 1..7usize, seed in any::<u64>(), w in arb_word(2, 12)) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let dfa = pdfa_core::generate::random_permutation_dfa(&mut rng, n, 2);
        prop_assert_eq!(dfa.rank_of_word(&dfa.all_states(), &w).unwrap(), n);
    }

    #[test]
    fn strong_connectivity_matches_scc(dfa in arb_dfa(7, 3)) {
        prop_assert_eq!(is_strongly_connected(&dfa), scc(&dfa).component_count() == 1);
    }

    #[test]
    fn trim_is_idempotent(acc in arb_acceptor()) {
        let once = trim(&acc).acceptor;
        prop_assert_eq!(trim(&once).acceptor, once);
    }

    #[test]
    fn minimize_is_idempotent(acc in arb_acceptor()) {
        let once = minimize(&acc);
        prop_assert_eq!(minimize(&once), once);
    }

    #[test]
    fn pair_singletons_match_word_search(dfa in arb_dfa(5, 2)) {
        let n = dfa.state_count();
        let pa = PairAutomaton::new(&dfa);
        let max_len = n * (n - 1) / 2 + n;
        for p in 0..n {
            for q in p + 1..n {
                let brute = words_up_to(dfa.letter_count(), max_len).any(|w| {
                    let (x, y) = (dfa.delta_word(p, &w), dfa.delta_word(q, &w));
                    match (x, y) {
                        (Some(x), Some(y)) => x == y,
                        (Some(_), None) | (None, Some(_)) => true,
                        (None, None) => false,
                    }
                });
                prop_assert_eq!(pa.shortest_singleton_word(p, q).is_some(), brute, "pair {{{},{}}}", p, q);
            }
        }
        prop_assert_eq!(pa.index_of(PairNode::Dead), pa.node_count() - 1);
    }
}

#[test]
fn exact_rank_witness_is_shortest() {
    // every automaton with n <= 3 and two letters, plus a sample of n = 4
    let check = |dfa: &PartialDfa| {
        let r = exact_rank(dfa, Budget::default()).unwrap();
        let q = dfa.all_states();
        assert_eq!(dfa.rank_of_word(&q, &r.witness).unwrap(), r.rank);
        let shorter = words_up_to(dfa.letter_count(), r.word_length().saturating_sub(1))
            .filter(|_| r.word_length() > 0)
            .any(|w| dfa.rank_of_word(&q, &w).unwrap() == r.rank);
        assert!(!shorter, "{dfa:?}");
        // nothing up to length 10 beats the reported rank
        if dfa.state_count() <= 3 {
            for w in words_up_to(dfa.letter_count(), 10) {
                let rank = dfa.rank_of_word(&q, &w).unwrap();
                assert!(rank == 0 || rank >= r.rank);
            }
        }
    };
    for n in 1..=3 {
        for_each_dfa(n, 2, &mut |dfa| check(&dfa));
    }
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..300 {
        check(&pdfa_core::generate::random_dfa(&mut rng, 4, 2, 0.8));
    }
}

#[test]
fn min_rank_sc_matches_exact_and_bound() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..250 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=3);
        let density = rng.gen_range(0.6..=1.0);
        let dfa = pdfa_core::generate::random_strongly_connected(&mut rng, n, k, density);
        let exact = exact_rank(&dfa, Budget::default()).unwrap();
        let poly = min_rank_word_sc(&dfa).unwrap();
        assert_eq!(poly.rank, exact.rank, "{dfa:?}");
        assert_eq!(dfa.rank_of_word(&dfa.all_states(), &poly.witness).unwrap(), poly.rank);
        assert!(exact.word_length() <= rank_word_length_bound(n, exact.rank).unwrap());

        // every step word is no longer than the pair automaton has nodes
        let pa = PairAutomaton::new(&dfa);
        let trace = merge_pairs_from(&dfa, &pa, &dfa.all_states());
        assert!(trace.step_lengths.iter().all(|&len| len <= pa.node_count()));

        // any nonzero-rank prefix extends to a minimum-rank word
        for _ in 0..5 {
            let len = rng.gen_range(0..6);
            let u: Word = (0..len).map(|_| rng.gen_range(0..k)).collect();
            let image = dfa.image(&dfa.all_states(), &u).unwrap();
            if image.is_empty() {
                continue;
            }
            let ext = merge_pairs_from(&dfa, &pa, &image);
            assert_eq!(ext.set.len(), exact.rank);
            assert_eq!(dfa.rank_of_word(&dfa.all_states(), &u.concat(&ext.word)).unwrap(), exact.rank);
        }
    }
}

#[test]
fn birecurrence_reversal_symmetry() {
    use pdfa_core::birecurrence::determinize_reversal;
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(99);
    for _ in 0..150 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=2);
        let dfa = pdfa_core::generate::random_dfa(&mut rng, n, k, 0.8);
        let acc = pdfa_core::generate::random_acceptor(&mut rng, dfa);
        let reversed = minimize(&determinize_reversal(&minimize(&acc)).to_acceptor());
        assert_eq!(
            is_birecurrent(&acc, Budget::default()).unwrap(),
            is_birecurrent(&reversed, Budget::default()).unwrap(),
            "{acc:?}"
        );
        // the reversed acceptor recognizes the mirror language
        for w in words_up_to(k, 5) {
            assert_eq!(acc.accepts(&w), reversed.accepts(&w.reversed()));
        }
    }
}

#[test]
fn permutation_acceptors_are_birecurrent() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 100 {
        let n = rng.gen_range(1..=7);
        let k = rng.gen_range(1..=3);
        let dfa = pdfa_core::generate::random_permutation_dfa(&mut rng, n, k);
        if !is_strongly_connected(&dfa) {
            continue;
        }
        let acc = pdfa_core::generate::random_acceptor(&mut rng, dfa);
        if acc.accepting().is_empty() {
            continue;
        }
        assert!(is_birecurrent(&acc, Budget::default()).unwrap(), "{acc:?}");
        checked += 1;
    }
}

/// Calls `f` on every partial automaton with `n` states and `k` letters.
fn for_each_dfa(n: usize, k: usize, f: &mut dyn FnMut(PartialDfa)) {
    let cells = n * k;
    let choices = n + 1;
    let total = choices.pow(cells as u32);
    let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
    for mut code in 0..total {
        let table = (0..cells)
            .map(|_| {
                let c = code % choices;
                code /= choices;
                (c < n).then_some(c)
            })
            .collect();
        f(PartialDfa::from_table(n, names.clone(), table).unwrap());
    }
}
