//! Hardness gadgets built from Finite Automata Intersection instances, and
//! the product-automaton oracle used to check them.
//!
//! Every gadget keeps the instance letters at their original indices
//! `0..|Σ|`; new letters are appended after them. Machine states are laid out
//! machine by machine, in order, followed by the special states.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automaton::{fresh_letter_name, Acceptor, Letter, PartialDfa, State, Word};
use crate::error::{Error, Result};
use crate::graph::{coreachable_to, reachable_from};
use crate::rank::Budget;
use crate::stateset::StateSet;

/// Complete acceptors `A_1, ..., A_k` over one shared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionInstance {
    alphabet: Vec<String>,
    machines: Vec<Acceptor>,
}

impl IntersectionInstance {
    pub fn new(machines: Vec<Acceptor>) -> Result<Self> {
        let first = machines
            .first()
            .ok_or_else(|| Error::Precondition("instance needs at least one machine".into()))?;
        let alphabet = first.dfa().alphabet().to_vec();
        for (i, m) in machines.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::Precondition(format!("machine {i} has no states")));
            }
            if m.dfa().alphabet() != alphabet.as_slice() {
                return Err(Error::Precondition(format!(
                    "machine {i} has alphabet {:?}, expected {:?}",
                    m.dfa().alphabet(),
                    alphabet
                )));
            }
            if !m.dfa().is_complete() {
                return Err(Error::Precondition(format!("machine {i} is not complete")));
            }
        }
        Ok(IntersectionInstance { alphabet, machines })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn machines(&self) -> &[Acceptor] {
        &self.machines
    }

    pub fn total_states(&self) -> usize {
        self.machines.iter().map(|m| m.dfa().state_count()).sum()
    }

    fn initial(&self, i: usize) -> State {
        self.machines[i].initial().expect("instance machines are nonempty")
    }
}

/// Where the pieces of an instance ended up inside a gadget.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetLayout {
    /// `state_map[i][q]` is the gadget state of state `q` of machine `i`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub state_map: Vec<Vec<State>>,
    /// Barred copies, for the complete gadget.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub barred_state_map: Vec<Vec<State>>,
    /// Named special states: `Y`, `N`, `E`, `E_bar`, `Y_bar`.
    #[serde(default)]
    pub special_states: BTreeMap<String, State>,
    /// Named new letters: `r`, `z`, `l1`..`lm`, or `0`/`1` after binarization.
    #[serde(default)]
    pub letter_map: BTreeMap<String, Letter>,
    /// States `t_1..t_m` targeted by the connecting letters.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<State>,
    /// Binarization: source state `q` is embedded as `(q, x_1)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub embedding: Vec<State>,
    /// Binarization: source letter names in choice order `x_1..x_n`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub letter_order: Vec<String>,
}

/// Shortest word accepted by every machine, by breadth-first search over
/// the product automaton.
pub fn has_common_word(inst: &IntersectionInstance, budget: Budget) -> Result<Option<Word>> {
    let k = inst.alphabet.len();
    let start: Vec<State> = (0..inst.machines.len()).map(|i| inst.initial(i)).collect();
    let accepting = |tuple: &[State]| {
        tuple
            .iter()
            .zip(&inst.machines)
            .all(|(&q, m)| m.accepting().contains(q))
    };
    let mut nodes: Vec<(Vec<State>, usize, Letter)> = vec![(start.clone(), usize::MAX, 0)];
    let mut index: HashMap<Vec<State>, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut found = None;

    'search: while let Some(u) = queue.pop_front() {
        if accepting(&nodes[u].0) {
            found = Some(u);
            break;
        }
        for a in 0..k {
            let next: Vec<State> = nodes[u]
                .0
                .iter()
                .zip(&inst.machines)
                .map(|(&q, m)| m.dfa().delta(q, a).expect("instance machines are complete"))
                .collect();
            if index.contains_key(&next) {
                continue;
            }
            if nodes.len() >= budget.0 {
                return Err(Error::BudgetExceeded { budget: budget.0 });
            }
            let id = nodes.len();
            let done = accepting(&next);
            index.insert(next.clone(), id);
            nodes.push((next, u, a));
            if done {
                found = Some(id);
                break 'search;
            }
            queue.push_back(id);
        }
    }

    Ok(found.map(|mut cur| {
        let mut letters = Vec::new();
        while cur != 0 {
            letters.push(nodes[cur].2);
            cur = nodes[cur].1;
        }
        letters.reverse();
        Word::new(letters)
    }))
}

/// Offsets of each machine's states when laid out consecutively.
fn state_map_for(machines: &[&Acceptor]) -> Vec<Vec<State>> {
    let mut offset = 0;
    machines
        .iter()
        .map(|m| {
            let n = m.dfa().state_count();
            let map = (offset..offset + n).collect();
            offset += n;
            map
        })
        .collect()
}

/// Synchronization gadget.
///
/// A one-state machine accepting everything is appended to the instance.
/// States are the machine states followed by `Y` and `N`; letters are `Σ`
/// followed by `r` and `z`. `r` resets each machine to its initial state,
/// `z` sends accepting states to `Y` and the others to `N`, and every letter
/// but `z` fixes `Y` and `N`. The gadget is synchronizing iff the machines
/// accept a common word.
pub fn build_sync_gadget(inst: &IntersectionInstance) -> (PartialDfa, GadgetLayout) {
    let sigma = inst.alphabet.len();
    let universal = Acceptor::new(
        PartialDfa::from_fn(1, inst.alphabet.iter().cloned(), |_, _| Some(0))
            .expect("one-state table"),
        0,
        StateSet::full(1),
    )
    .expect("one-state acceptor");
    let machines: Vec<&Acceptor> = inst.machines.iter().chain([&universal]).collect();
    let state_map = state_map_for(&machines);
    let body = inst.total_states() + 1;
    let (y, no) = (body, body + 1);

    let mut alphabet = inst.alphabet.clone();
    let r_name = fresh_letter_name(&alphabet, "r");
    alphabet.push(r_name);
    let z_name = fresh_letter_name(&alphabet, "z");
    alphabet.push(z_name);
    let (r, z) = (sigma, sigma + 1);

    let mut table = vec![None; (body + 2) * alphabet.len()];
    let width = alphabet.len();
    for (i, m) in machines.iter().enumerate() {
        let initial = state_map[i][m.initial().expect("nonempty machine")];
        for q in 0..m.dfa().state_count() {
            let g = state_map[i][q];
            for a in 0..sigma {
                table[g * width + a] = m.dfa().delta(q, a).map(|t| state_map[i][t]);
            }
            table[g * width + r] = Some(initial);
            table[g * width + z] = Some(if m.accepting().contains(q) { y } else { no });
        }
    }
    for special in [y, no] {
        for a in 0..=r {
            table[special * width + a] = Some(special);
        }
    }

    let dfa = PartialDfa::from_table(body + 2, alphabet, table).expect("sync gadget table");
    let layout = GadgetLayout {
        state_map,
        special_states: BTreeMap::from([("Y".into(), y), ("N".into(), no)]),
        letter_map: BTreeMap::from([("r".into(), r), ("z".into(), z)]),
        ..Default::default()
    };
    (dfa, layout)
}

/// Whole-set saturation gadget.
///
/// States are the machine states followed by the sink `Y`; letters are `Σ`
/// followed by `r` and `z`. `r` resets each machine and fixes `Y`; `z` sends
/// accepting states and `Y` to `Y` and is undefined elsewhere; `Σ` fixes `Y`.
/// The gadget has rank 1, and `Q` is saturated by a word of rank 1 iff the
/// machines accept a common word.
///
/// Every machine must reach an accepting state from its initial state.
pub fn build_saturation_gadget(inst: &IntersectionInstance) -> Result<(PartialDfa, GadgetLayout)> {
    for (i, m) in inst.machines.iter().enumerate() {
        let n = m.dfa().state_count();
        let reach = reachable_from(m.dfa(), &StateSet::singleton(n, inst.initial(i)));
        if reach.is_disjoint(m.accepting()) {
            return Err(Error::Precondition(format!(
                "machine {i} reaches no accepting state from its initial state"
            )));
        }
    }
    let sigma = inst.alphabet.len();
    let machines: Vec<&Acceptor> = inst.machines.iter().collect();
    let state_map = state_map_for(&machines);
    let y = inst.total_states();

    let mut alphabet = inst.alphabet.clone();
    let r_name = fresh_letter_name(&alphabet, "r");
    alphabet.push(r_name);
    let z_name = fresh_letter_name(&alphabet, "z");
    alphabet.push(z_name);
    let (r, z) = (sigma, sigma + 1);
    let width = alphabet.len();

    let mut table = vec![None; (y + 1) * width];
    for (i, m) in machines.iter().enumerate() {
        let initial = state_map[i][inst.initial(i)];
        for q in 0..m.dfa().state_count() {
            let g = state_map[i][q];
            for a in 0..sigma {
                table[g * width + a] = m.dfa().delta(q, a).map(|t| state_map[i][t]);
            }
            table[g * width + r] = Some(initial);
            if m.accepting().contains(q) {
                table[g * width + z] = Some(y);
            }
        }
    }
    for a in 0..width {
        table[y * width + a] = Some(y);
    }

    let dfa = PartialDfa::from_table(y + 1, alphabet, table).expect("saturation gadget table");
    let layout = GadgetLayout {
        state_map,
        special_states: BTreeMap::from([("Y".into(), y)]),
        letter_map: BTreeMap::from([("r".into(), r), ("z".into(), z)]),
        ..Default::default()
    };
    Ok((dfa, layout))
}

/// Greedy choice of `t_1..t_m`: while some state is unreachable from `y`
/// (counting the targets chosen so far), take the lowest-indexed one.
fn connecting_targets(dfa: &PartialDfa, y: State) -> Vec<State> {
    let n = dfa.state_count();
    let mut reached = reachable_from(dfa, &StateSet::singleton(n, y));
    let mut targets = Vec::new();
    while let Some(t) = reached.complement().first() {
        targets.push(t);
        reached = reached.union(&reachable_from(dfa, &StateSet::singleton(n, t)));
    }
    targets
}

/// Adds letters `l1..lm`, each mapping `y` to one target state and undefined
/// elsewhere, so that the result is strongly connected.
///
/// Every state must already reach `y`.
pub fn strongly_connect_gadget(dfa: &PartialDfa, y: State) -> Result<(PartialDfa, GadgetLayout)> {
    dfa.check_state(y)?;
    let n = dfa.state_count();
    let coreach = coreachable_to(dfa, &StateSet::singleton(n, y));
    if let Some(bad) = coreach.complement().first() {
        return Err(Error::Precondition(format!(
            "state {bad} cannot reach the hub state {y}"
        )));
    }
    let targets = connecting_targets(dfa, y);
    let k = dfa.letter_count();
    let mut alphabet = dfa.alphabet().to_vec();
    let mut letter_map = BTreeMap::new();
    for i in 1..=targets.len() {
        let name = fresh_letter_name(&alphabet, &format!("l{i}"));
        alphabet.push(name);
        letter_map.insert(format!("l{i}"), k + i - 1);
    }
    let out = PartialDfa::from_fn(n, alphabet, |s, a| {
        if a < k {
            dfa.delta(s, a)
        } else if s == y {
            Some(targets[a - k])
        } else {
            None
        }
    })
    .expect("connected gadget table");
    let layout = GadgetLayout {
        special_states: BTreeMap::from([("Y".into(), y)]),
        letter_map,
        targets,
        ..Default::default()
    };
    Ok((out, layout))
}

/// Encodes `dfa` over the binary alphabet `{0, 1}`.
///
/// The source letters are put in choice order `x_1..x_n`: every letter
/// except `last_letter` in alphabet order, then `last_letter`. State
/// `(q, x_i)` has index `q * n + (i - 1)`. Letter `0` advances the choice
/// (`x_n` stays put) and letter `1` applies the chosen letter and resets the
/// choice to `x_1`.
pub fn binarize(dfa: &PartialDfa, last_letter: Letter) -> Result<(PartialDfa, GadgetLayout)> {
    dfa.check_letter(last_letter)?;
    let k = dfa.letter_count();
    let order: Vec<Letter> = (0..k)
        .filter(|&a| a != last_letter)
        .chain([last_letter])
        .collect();
    let n = dfa.state_count();
    let encode = |q: State, pos: usize| q * k + pos;
    let out = PartialDfa::from_fn(n * k, ["0", "1"], |s, bit| {
        let (q, pos) = (s / k, s % k);
        match bit {
            0 => Some(encode(q, (pos + 1).min(k - 1))),
            _ => dfa.delta(q, order[pos]).map(|t| encode(t, 0)),
        }
    })
    .expect("binary table");
    let layout = GadgetLayout {
        letter_map: BTreeMap::from([("0".into(), 0), ("1".into(), 1)]),
        embedding: (0..n).map(|q| encode(q, 0)).collect(),
        letter_order: order.iter().map(|&a| dfa.letter_name(a).to_string()).collect(),
        ..Default::default()
    };
    Ok((out, layout))
}

/// Appends a fresh letter acting as the identity on every state, then
/// binarizes with it as the last letter.
pub fn binarize_with_selfloop(dfa: &PartialDfa) -> (PartialDfa, GadgetLayout) {
    let k = dfa.letter_count();
    let mut alphabet = dfa.alphabet().to_vec();
    alphabet.push(fresh_letter_name(&alphabet, "skip"));
    let extended = PartialDfa::from_fn(dfa.state_count(), alphabet, |s, a| {
        if a < k {
            dfa.delta(s, a)
        } else {
            Some(s)
        }
    })
    .expect("extended table");
    binarize(&extended, k).expect("self-loop letter exists")
}

/// Complete, strongly connected gadget of rank 2 built from two copies of
/// the saturation gadget.
///
/// States: `Q` (the saturation gadget's states, `Y` last), then the barred
/// copy `Q̄`, then `E` and `Ē`. Letters: `Σ`, `r`, `z`, then `l1..lm`. On
/// both copies `Σ` and `r` act as in the saturation gadget; `z` sends
/// accepting states to `Y` (resp. `Ȳ`), fixes `Y` and `Ȳ`, and sends every
/// other state to `E` (resp. `Ē`); `E` and `Ē` absorb `Σ`, `r` and `z`.
/// `li` sends `Y` to `t_i`, `Ȳ` to `t̄_i`, every other unbarred state and
/// `E` to `t̄_i`, and every other barred state and `Ē` to `t_i`.
///
/// Returns the gadget, its layout, and the target set `S = Q ∪ {Ē}`, which
/// is saturated by a word of rank 2 iff the machines accept a common word.
///
/// Each machine must have every state reachable from the initial state, an
/// accepting state reachable from every state, and must not accept every
/// word.
pub fn build_complete_gadget(
    inst: &IntersectionInstance,
) -> Result<(PartialDfa, GadgetLayout, StateSet)> {
    for (i, m) in inst.machines.iter().enumerate() {
        let dfa = m.dfa();
        let n = dfa.state_count();
        if reachable_from(dfa, &StateSet::singleton(n, inst.initial(i))).len() != n {
            return Err(Error::Precondition(format!(
                "machine {i} has states unreachable from its initial state"
            )));
        }
        if m.accepting().is_empty() || coreachable_to(dfa, m.accepting()).len() != n {
            return Err(Error::Precondition(format!(
                "machine {i} has states from which no accepting state is reachable"
            )));
        }
        // complete with every state reachable: universal iff all states accept
        if m.accepting().len() == n {
            return Err(Error::Precondition(format!("machine {i} accepts every word")));
        }
    }
    let (base, base_layout) = build_saturation_gadget(inst)?;
    let y = base_layout.special_states["Y"];
    let z = base_layout.letter_map["z"];
    let targets = connecting_targets(&base, y);

    let nq = base.state_count();
    let (e, e_bar) = (2 * nq, 2 * nq + 1);
    let bar = |s: State| match s {
        s if s < nq => s + nq,
        s if s < 2 * nq => s - nq,
        s if s == e => e_bar,
        _ => e,
    };
    let base_k = base.letter_count();
    let mut alphabet = base.alphabet().to_vec();
    let mut letter_map = base_layout.letter_map.clone();
    for i in 1..=targets.len() {
        let name = fresh_letter_name(&alphabet, &format!("l{i}"));
        alphabet.push(name);
        letter_map.insert(format!("l{i}"), base_k + i - 1);
    }

    // transitions of the unbarred half and E; the barred half mirrors them
    let unbarred = |s: State, a: Letter| -> State {
        if a >= base_k {
            let t = targets[a - base_k];
            return if s == y { t } else { bar(t) };
        }
        if s == e {
            return e;
        }
        match base.delta(s, a) {
            Some(t) => t,
            None if a == z => e,
            None => unreachable!("saturation gadget is total off z"),
        }
    };
    let gadget = PartialDfa::from_fn(2 * nq + 2, alphabet, |s, a| {
        Some(if s < nq || s == e {
            unbarred(s, a)
        } else {
            bar(unbarred(bar(s), a))
        })
    })
    .expect("complete gadget table");

    let target_set = StateSet::from_states(2 * nq + 2, (0..nq).chain([e_bar]))
        .expect("target set in range");
    let layout = GadgetLayout {
        barred_state_map: base_layout
            .state_map
            .iter()
            .map(|m| m.iter().map(|&s| bar(s)).collect())
            .collect(),
        state_map: base_layout.state_map,
        special_states: BTreeMap::from([
            ("Y".into(), y),
            ("Y_bar".into(), bar(y)),
            ("E".into(), e),
            ("E_bar".into(), e_bar),
        ]),
        letter_map,
        targets,
        ..Default::default()
    };
    Ok((gadget, layout, target_set))
}
