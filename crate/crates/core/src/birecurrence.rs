//! Birecurrence: a language is birecurrent when its minimal partial DFA and
//! the minimal partial DFA of its reversal are both strongly connected.
//!
//! Two deciders are provided and cross-checked by [`is_birecurrent`]:
//!
//! * [`is_birecurrent_direct`] minimizes, checks strong connectivity, then
//!   determinizes the reversal (which for a trim deterministic automaton is
//!   already minimal) and checks that too.
//! * [`is_birecurrent_characterization`] uses the saturation criterion: a
//!   minimal strongly connected partial automaton recognizes a birecurrent
//!   set iff its accepting set is saturated by a word of minimum rank.
//!
//! The empty language is reported as not birecurrent. The language `{ε}`
//! (one accepting state, no transitions) is birecurrent: both of its
//! minimal automata are the one-state automaton.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Acceptor, PartialDfa, State};
use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, trim};
use crate::rank::Budget;
use crate::saturation::find_saturating_min_rank_word;
use crate::stateset::StateSet;

/// Trims `acc` and merges Nerode-equivalent states.
///
/// Refinement keeps "undefined" as its own transition outcome, so the result
/// stays partial. States of the result are numbered in breadth-first order
/// from the initial state, which makes the output canonical: two acceptors
/// for the same language minimize to equal values.
pub fn minimize(acc: &Acceptor) -> Acceptor {
    let trimmed = trim(acc).acceptor;
    let Some(initial) = trimmed.initial() else {
        return trimmed;
    };
    let dfa = trimmed.dfa();
    let n = dfa.state_count();
    let k = dfa.letter_count();

    let mut class: Vec<usize> = (0..n)
        .map(|s| usize::from(trimmed.accepting().contains(s)))
        .collect();
    let mut class_count = 0;
    loop {
        let mut ids: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let refined: Vec<usize> = (0..n)
            .map(|s| {
                let signature = (0..k).map(|a| dfa.delta(s, a).map(|t| class[t])).collect();
                let next_id = ids.len();
                *ids.entry((class[s], signature)).or_insert(next_id)
            })
            .collect();
        class = refined;
        if ids.len() == class_count {
            break;
        }
        class_count = ids.len();
    }

    // canonical numbering: breadth-first over classes from the initial one
    let mut representative = vec![usize::MAX; class_count];
    for s in (0..n).rev() {
        representative[class[s]] = s;
    }
    let mut order = vec![usize::MAX; class_count];
    let mut by_order = Vec::with_capacity(class_count);
    let mut queue = VecDeque::from([class[initial]]);
    order[class[initial]] = 0;
    by_order.push(class[initial]);
    while let Some(c) = queue.pop_front() {
        for a in 0..k {
            if let Some(t) = dfa.delta(representative[c], a) {
                let tc = class[t];
                if order[tc] == usize::MAX {
                    order[tc] = by_order.len();
                    by_order.push(tc);
                    queue.push_back(tc);
                }
            }
        }
    }
    debug_assert_eq!(by_order.len(), class_count, "trimmed states are reachable");

    let minimal = PartialDfa::from_fn(class_count, dfa.alphabet().iter().cloned(), |s, a| {
        dfa.delta(representative[by_order[s]], a)
            .map(|t| order[class[t]])
    })
    .expect("quotient table is valid");
    let accepting = StateSet::from_states(
        class_count,
        (0..class_count).filter(|&c| trimmed.accepting().contains(representative[by_order[c]])),
    )
    .expect("class indices in range");
    Acceptor::new(minimal, 0, accepting).expect("valid quotient acceptor")
}

/// Subset construction applied to the reversal of an acceptor.
///
/// Nodes are the nonempty subsets reachable from the accepting set; node 0
/// is the initial node. A transition that would lead to the empty subset is
/// left undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetAutomaton {
    pub alphabet: Vec<String>,
    pub nodes: Vec<StateSet>,
    /// Row-major `node * |alphabet| + letter`.
    pub transitions: Vec<Option<usize>>,
    /// `accepting[i]` iff node `i` contains the source's initial state.
    pub accepting: Vec<bool>,
}

impl SubsetAutomaton {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self, node: usize, letter: usize) -> Option<usize> {
        self.transitions[node * self.alphabet.len() + letter]
    }

    /// The transition structure as a partial automaton over node indices.
    pub fn to_dfa(&self) -> PartialDfa {
        PartialDfa::from_table(
            self.nodes.len(),
            self.alphabet.iter().cloned(),
            self.transitions.clone(),
        )
        .expect("subset automaton table is valid")
    }

    /// As an acceptor with initial node 0 (the empty acceptor if there are
    /// no nodes).
    pub fn to_acceptor(&self) -> Acceptor {
        if self.is_empty() {
            return Acceptor::empty(&self.alphabet);
        }
        let accepting = StateSet::from_states(
            self.nodes.len(),
            (0..self.nodes.len()).filter(|&i| self.accepting[i]),
        )
        .expect("node indices in range");
        Acceptor::new(self.to_dfa(), 0, accepting).expect("node 0 exists")
    }
}

/// Determinizes the reversal of `acc`, starting from its accepting set and
/// expanding only reachable nonempty subsets.
pub fn determinize_reversal(acc: &Acceptor) -> SubsetAutomaton {
    let dfa = acc.dfa();
    let alphabet = dfa.alphabet().to_vec();
    let empty = SubsetAutomaton {
        alphabet: alphabet.clone(),
        nodes: Vec::new(),
        transitions: Vec::new(),
        accepting: Vec::new(),
    };
    let Some(initial) = acc.initial() else {
        return empty;
    };
    if acc.accepting().is_empty() {
        return empty;
    }
    let n = dfa.state_count();
    let k = dfa.letter_count();
    // predecessors[a][t] = { p : δ(p, a) = t }
    let mut predecessors: Vec<Vec<Vec<State>>> = vec![vec![Vec::new(); n]; k];
    for (p, a, t) in dfa.transitions() {
        predecessors[a][t].push(p);
    }

    let mut nodes = vec![acc.accepting().clone()];
    let mut index: HashMap<StateSet, usize> = HashMap::from([(acc.accepting().clone(), 0)]);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        for preds in &predecessors {
            let mut next = StateSet::empty(n);
            for t in &nodes[i] {
                for &p in &preds[t] {
                    next.insert(p);
                }
            }
            if next.is_empty() {
                transitions.push(None);
                continue;
            }
            let id = *index.entry(next.clone()).or_insert_with(|| {
                nodes.push(next);
                nodes.len() - 1
            });
            transitions.push(Some(id));
        }
        i += 1;
    }
    let accepting = nodes.iter().map(|s| s.contains(initial)).collect();
    SubsetAutomaton {
        alphabet,
        nodes,
        transitions,
        accepting,
    }
}

/// Birecurrence straight from the definition.
pub fn is_birecurrent_direct(acc: &Acceptor) -> bool {
    let minimal = minimize(acc);
    if minimal.is_empty() || !is_strongly_connected(minimal.dfa()) {
        return false;
    }
    let reversal = determinize_reversal(&minimal);
    !reversal.is_empty() && is_strongly_connected(&reversal.to_dfa())
}

/// Birecurrence through the saturation criterion on the minimal automaton.
pub fn is_birecurrent_characterization(acc: &Acceptor, budget: Budget) -> Result<bool> {
    let minimal = minimize(acc);
    if minimal.is_empty() || !is_strongly_connected(minimal.dfa()) {
        return Ok(false);
    }
    Ok(find_saturating_min_rank_word(minimal.dfa(), minimal.accepting(), budget)?.is_some())
}

/// Runs both deciders and fails with [`Error::Inconsistent`] if they differ.
pub fn is_birecurrent(acc: &Acceptor, budget: Budget) -> Result<bool> {
    let direct = is_birecurrent_direct(acc);
    let characterization = is_birecurrent_characterization(acc, budget)?;
    if direct != characterization {
        return Err(Error::Inconsistent(format!(
            "direct birecurrence check says {direct}, saturation criterion says {characterization}"
        )));
    }
    Ok(direct)
}
