//! Random automata and intersection instances for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Acceptor, PartialDfa};
use crate::graph::{coreachable_to, is_strongly_connected, reachable_from};
use crate::reductions::IntersectionInstance;
use crate::stateset::StateSet;

/// `a`, `b`, `c`, ... (then `x26`, `x27`, ...).
pub fn letter_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| match u8::try_from(i) {
            Ok(i) if i < 26 => char::from(b'a' + i).to_string(),
            _ => format!("x{i}"),
        })
        .collect()
}

/// Each transition is defined with probability `density`, with a uniform
/// target.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize, density: f64) -> PartialDfa {
    PartialDfa::from_fn(n, letter_names(k), |_, _| {
        rng.gen_bool(density).then(|| rng.gen_range(0..n))
    })
    .expect("random table is valid")
}

/// A random automaton that is strongly connected. If the first draw is not,
/// a random Hamiltonian cycle is planted over random letters.
pub fn random_strongly_connected<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    density: f64,
) -> PartialDfa {
    assert!(n >= 1 && k >= 1);
    let dfa = random_dfa(rng, n, k, density);
    if is_strongly_connected(&dfa) {
        return dfa;
    }
    let mut table = dfa.table().to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (i, &u) in order.iter().enumerate() {
        let v = order[(i + 1) % n];
        table[u * k + rng.gen_range(0..k)] = Some(v);
    }
    let dfa = PartialDfa::from_table(n, letter_names(k), table).expect("valid table");
    debug_assert!(is_strongly_connected(&dfa));
    dfa
}

/// Random initial state and a random accepting set (each state with
/// probability one half).
pub fn random_acceptor<R: Rng + ?Sized>(rng: &mut R, dfa: PartialDfa) -> Acceptor {
    let n = dfa.state_count();
    let initial = rng.gen_range(0..n);
    let accepting = StateSet::from_states(n, (0..n).filter(|_| rng.gen_bool(0.5))).expect("in range");
    Acceptor::new(dfa, initial, accepting).expect("valid acceptor")
}

/// Every letter a uniformly random permutation.
pub fn random_permutation_dfa<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> PartialDfa {
    let perms: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    PartialDfa::from_fn(n, letter_names(k), |s, a| Some(perms[a][s])).expect("valid table")
}

/// A complete acceptor over `alphabet` with `n` states.
pub fn random_complete_acceptor<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    alphabet: &[String],
) -> Acceptor {
    let dfa = PartialDfa::from_fn(n, alphabet.iter().cloned(), |_, _| Some(rng.gen_range(0..n)))
        .expect("valid table");
    let accepting = StateSet::from_states(n, (0..n).filter(|_| rng.gen_bool(0.5))).expect("in range");
    Acceptor::new(dfa, 0, accepting).expect("valid acceptor")
}

/// Extra conditions some reductions place on every machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MachineShape {
    /// Anything complete.
    #[default]
    Any,
    /// Some accepting state is reachable from the initial state.
    AcceptsSomething,
    /// All states reachable, an accepting state reachable from every state,
    /// and not every word accepted.
    Connected,
}

impl MachineShape {
    pub fn admits(self, acc: &Acceptor) -> bool {
        let dfa = acc.dfa();
        let n = dfa.state_count();
        let Some(initial) = acc.initial() else { return false };
        let reach = reachable_from(dfa, &StateSet::singleton(n, initial));
        match self {
            MachineShape::Any => true,
            MachineShape::AcceptsSomething => !reach.is_disjoint(acc.accepting()),
            MachineShape::Connected => {
                reach.len() == n
                    && !acc.accepting().is_empty()
                    && coreachable_to(dfa, acc.accepting()).len() == n
                    && acc.accepting().len() < n
            }
        }
    }
}

/// `machines` complete acceptors with between `min_states` and `max_states`
/// states each over `alphabet_size` letters, each satisfying `shape`
/// (rejection sampled).
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    machines: usize,
    min_states: usize,
    max_states: usize,
    alphabet_size: usize,
    shape: MachineShape,
) -> IntersectionInstance {
    let alphabet = letter_names(alphabet_size);
    let list = (0..machines)
        .map(|_| loop {
            let n = rng.gen_range(min_states..=max_states);
            let acc = random_complete_acceptor(rng, n, &alphabet);
            if shape.admits(&acc) {
                break acc;
            }
        })
        .collect();
    IntersectionInstance::new(list).expect("machines share a complete alphabet")
}
