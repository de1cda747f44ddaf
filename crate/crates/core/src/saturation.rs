//! Saturation of a state set by a word, and search for a saturating word of
//! minimum nonzero rank.
//!
//! `S` is saturated by `w` when every state of `S` has a defined image under
//! `w` and no state of `Q \ S` lands in the image of `S`. Both conditions and
//! the rank of `w` depend only on the pair of images `(w(S), w(Q \ S))`, so
//! the search runs over those pairs instead of over full transformations.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Letter, PartialDfa, Word};
use crate::error::{Error, Result};
use crate::rank::{subset_search, Budget};
use crate::stateset::StateSet;

/// Whether `w` saturates `set`.
pub fn is_saturated_by(dfa: &PartialDfa, set: &StateSet, word: &Word) -> Result<bool> {
    dfa.check_set(set)?;
    dfa.check_word(word)?;
    let mut inside = StateSet::empty(dfa.state_count());
    for s in set {
        match dfa.delta_word(s, word) {
            Some(t) => {
                inside.insert(t);
            }
            None => return Ok(false),
        }
    }
    let outside = dfa.image(&set.complement(), word)?;
    Ok(inside.is_disjoint(&outside))
}

/// Images of `S` and `Q \ S` under the word read so far.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SaturationConfig {
    pub inside: StateSet,
    pub outside: StateSet,
    /// False once some state of `S` has hit an undefined transition.
    pub alive: bool,
}

impl SaturationConfig {
    pub fn initial(set: &StateSet) -> Self {
        SaturationConfig {
            inside: set.clone(),
            outside: set.complement(),
            alive: true,
        }
    }

    pub fn step(&self, dfa: &PartialDfa, letter: Letter) -> Self {
        if !self.alive {
            return self.clone();
        }
        let inside = dfa.image_letter(&self.inside, letter);
        let alive = self
            .inside
            .iter()
            .all(|s| dfa.delta(s, letter).is_some());
        SaturationConfig {
            inside,
            outside: dfa.image_letter(&self.outside, letter),
            alive,
        }
    }

    /// Alive, images disjoint, and the image of `Q` has size `rank`.
    pub fn accepts(&self, rank: usize) -> bool {
        self.alive
            && self.inside.is_disjoint(&self.outside)
            && self.inside.len() + self.outside.len() == rank
    }

    fn is_dead(&self) -> bool {
        !self.alive || self.inside.is_empty()
    }
}

/// A shortest word that saturates `set` and has minimum nonzero rank on the
/// whole automaton, or `None` if no such word exists.
///
/// The rank is computed first by [`crate::rank::exact_rank`]; both searches
/// draw from the same budget. An empty `set` is rejected.
pub fn find_saturating_min_rank_word(
    dfa: &PartialDfa,
    set: &StateSet,
    budget: Budget,
) -> Result<Option<Word>> {
    dfa.check_set(set)?;
    if set.is_empty() {
        return Err(Error::Precondition(
            "saturation target set must be nonempty".into(),
        ));
    }
    let (rank, used) = subset_search(dfa, budget)?;
    let word = saturation_search(dfa, set, rank.rank, budget.remaining_after(used))?;
    if let Some(w) = &word {
        let consistent = is_saturated_by(dfa, set, w)?
            && dfa.rank_of_word(&dfa.all_states(), w)? == rank.rank;
        if !consistent {
            return Err(Error::Inconsistent(format!(
                "saturation search returned {} which does not saturate {set} at rank {}",
                dfa.format_word(w),
                rank.rank
            )));
        }
    }
    Ok(word)
}

fn saturation_search(
    dfa: &PartialDfa,
    set: &StateSet,
    rank: usize,
    budget: Budget,
) -> Result<Option<Word>> {
    let start = SaturationConfig::initial(set);
    if start.accepts(rank) {
        return Ok(Some(Word::empty()));
    }
    let mut nodes: Vec<(SaturationConfig, usize, Letter)> = vec![(start.clone(), usize::MAX, 0)];
    let mut index: HashMap<(StateSet, StateSet), usize> = HashMap::new();
    index.insert((start.inside, start.outside), 0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(u) = queue.pop_front() {
        for a in 0..dfa.letter_count() {
            let next = nodes[u].0.step(dfa, a);
            if next.is_dead() {
                continue;
            }
            let key = (next.inside.clone(), next.outside.clone());
            if index.contains_key(&key) {
                continue;
            }
            if nodes.len() >= budget.0 {
                return Err(Error::BudgetExceeded { budget: budget.0 });
            }
            let id = nodes.len();
            let accepted = next.accepts(rank);
            index.insert(key, id);
            nodes.push((next, u, a));
            if accepted {
                let mut letters = Vec::new();
                let mut cur = id;
                while cur != 0 {
                    letters.push(nodes[cur].2);
                    cur = nodes[cur].1;
                }
                letters.reverse();
                return Ok(Some(Word::new(letters)));
            }
            queue.push_back(id);
        }
    }
    Ok(None)
}
