//! Rank of a partial automaton and words of minimum nonzero rank.
//!
//! Two routes are provided. [`exact_rank`] explores every reachable nonempty
//! subset of the power automaton breadth-first and so returns a shortest
//! witness; it works for any automaton but is exponential in the worst case
//! and is guarded by a [`Budget`]. [`min_rank_word_sc`] is the polynomial
//! pair-merging procedure for strongly connected automata: it repeatedly
//! finds a pair of current states that some word sends to a single state
//! (merging them or killing exactly one) and applies that word to the whole
//! current set.

use std::collections::HashMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::automaton::{Letter, PartialDfa, Word};
use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, PairAutomaton, PairNode};
use crate::stateset::StateSet;

/// Upper bound on the number of configurations a subset search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 20);

    pub(crate) fn remaining_after(self, used: usize) -> Budget {
        Budget(self.0.saturating_sub(used))
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// A rank together with a word attaining it on the whole state set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub witness: Word,
}

impl RankResult {
    pub fn word_length(&self) -> usize {
        self.witness.len()
    }
}

/// Rank of `dfa` with a shortest witness, by breadth-first search over the
/// reachable nonempty subsets of the power automaton starting from `Q`.
pub fn exact_rank(dfa: &PartialDfa, budget: Budget) -> Result<RankResult> {
    subset_search(dfa, budget).map(|(result, _)| result)
}

/// Like [`exact_rank`] but also reports how many subsets were visited.
pub(crate) fn subset_search(dfa: &PartialDfa, budget: Budget) -> Result<(RankResult, usize)> {
    let n = dfa.state_count();
    if n == 0 {
        return Err(Error::EmptyAutomaton);
    }
    let mut nodes: Vec<(StateSet, usize, Letter)> = Vec::new();
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let start = dfa.all_states();
    index.insert(start.clone(), 0);
    nodes.push((start, usize::MAX, 0));
    let mut best = (n, 0usize);
    let mut queue = VecDeque::from([0usize]);

    'search: while let Some(u) = queue.pop_front() {
        if best.0 == 1 {
            break;
        }
        for a in 0..dfa.letter_count() {
            let next = dfa.image_letter(&nodes[u].0, a);
            if next.is_empty() || index.contains_key(&next) {
                continue;
            }
            if nodes.len() >= budget.0 {
                return Err(Error::BudgetExceeded { budget: budget.0 });
            }
            let id = nodes.len();
            let size = next.len();
            index.insert(next.clone(), id);
            nodes.push((next, u, a));
            if size < best.0 {
                best = (size, id);
                if size == 1 {
                    break 'search;
                }
            }
            queue.push_back(id);
        }
    }

    let mut letters = Vec::new();
    let mut cur = best.1;
    while cur != 0 {
        letters.push(nodes[cur].2);
        cur = nodes[cur].1;
    }
    letters.reverse();
    Ok((
        RankResult {
            rank: best.0,
            witness: Word::new(letters),
        },
        nodes.len(),
    ))
}

/// A shortest synchronizing word (rank 1 on the whole set), if any.
pub fn synchronizing_word(dfa: &PartialDfa, budget: Budget) -> Result<Option<Word>> {
    let result = exact_rank(dfa, budget)?;
    Ok((result.rank == 1).then_some(result.witness))
}

pub fn is_synchronizing(dfa: &PartialDfa, budget: Budget) -> Result<bool> {
    Ok(synchronizing_word(dfa, budget)?.is_some())
}

/// Outcome of running the pair-merging loop from some start set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMergeTrace {
    /// The final set; no pair inside it can be sent to a singleton.
    pub set: StateSet,
    /// Concatenation of all step words.
    pub word: Word,
    /// Length of the word found at each step.
    pub step_lengths: Vec<usize>,
}

/// Runs the pair-merging loop from `start` on any automaton.
///
/// At each step every pair `{p, q}` of the current set is a search source;
/// the pair with the shortest singleton-reaching word wins, ties going to
/// the lexicographically smallest pair. The word is applied to the whole
/// current set. Only for strongly connected automata is the final size
/// guaranteed to be the rank.
pub fn merge_pairs_from(dfa: &PartialDfa, pairs: &PairAutomaton, start: &StateSet) -> PairMergeTrace {
    let mut set = start.clone();
    let mut word = Word::empty();
    let mut step_lengths = Vec::new();
    loop {
        let members: Vec<usize> = set.iter().collect();
        let sources: Vec<usize> = members
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| members[i + 1..].iter().map(move |&q| PairNode::Pair(p, q)))
            .map(|node| pairs.index_of(node))
            .collect();
        let Some((_, step)) = pairs.shortest_from_sources(&sources) else {
            break;
        };
        let step = Word::new(step);
        let next = step
            .letters()
            .iter()
            .fold(set, |acc, &a| dfa.image_letter(&acc, a));
        debug_assert!(!next.is_empty());
        step_lengths.push(step.len());
        word.extend_with(&step);
        set = next;
    }
    PairMergeTrace {
        set,
        word,
        step_lengths,
    }
}

/// Minimum nonzero rank and a witness for a strongly connected automaton,
/// computed in polynomial time by pair merging.
pub fn min_rank_word_sc(dfa: &PartialDfa) -> Result<RankResult> {
    if dfa.state_count() == 0 {
        return Err(Error::EmptyAutomaton);
    }
    if !is_strongly_connected(dfa) {
        return Err(Error::NotStronglyConnected);
    }
    let pairs = PairAutomaton::new(dfa);
    let trace = merge_pairs_from(dfa, &pairs, &dfa.all_states());
    Ok(RankResult {
        rank: trace.set.len(),
        witness: trace.word,
    })
}

/// Upper bound `(n-1)((n-r)(n+2)-2)/2` on the length of a shortest word of
/// minimum nonzero rank `r` in an `n`-state strongly connected automaton.
///
/// For `r = n` the expression is `-(n-1)`; it is clamped to 0, which is
/// exact because the empty word already has rank `n`.
pub fn rank_word_length_bound(n: usize, r: usize) -> Result<usize> {
    if r < 1 || r > n {
        return Err(Error::InvalidRankBound { n, r });
    }
    let (n, r) = (n as i128, r as i128);
    let value = (n - 1) * ((n - r) * (n + 2) - 2) / 2;
    Ok(value.max(0) as usize)
}
