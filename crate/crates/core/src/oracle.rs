//! Brute-force reference implementations.
//!
//! These enumerate words directly and only read the transition table; they
//! share nothing with the search engines in [`crate::rank`],
//! [`crate::saturation`] or [`crate::birecurrence`]. They exist to check
//! those engines on small automata.
//!
//! [`brute_rank`] and [`brute_saturating_word`] walk words in
//! length-lexicographic order and skip any word whose full state
//! transformation has already been produced by an earlier word: every
//! extension of such a word behaves exactly like the same extension of the
//! earlier one. The set of transformations seen up to length `L` is
//! therefore exactly the set of transformations of all words of length at
//! most `L`, and large `max_len` values terminate once the transformation
//! monoid is exhausted.

use std::collections::{BTreeSet, HashSet};

use crate::automaton::{Acceptor, PartialDfa, State, Word};
use crate::error::{Error, Result};
use crate::rank::{Budget, RankResult};
use crate::stateset::StateSet;

/// Images of every state, `None` where the run died.
type Transformation = Vec<Option<State>>;

/// All words over `letter_count` letters of length at most `max_len`, in
/// length-lexicographic order.
pub fn words_up_to(letter_count: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| {
        let total = if letter_count == 0 && len > 0 {
            0
        } else {
            letter_count.pow(len as u32)
        };
        (0..total).map(move |mut code| {
            let mut letters = vec![0; len];
            for slot in letters.iter_mut().rev() {
                *slot = code % letter_count;
                code /= letter_count;
            }
            Word::new(letters)
        })
    })
}

/// Distinct transformations of words up to `max_len`, each with its
/// length-lexicographically least word, in discovery order.
fn transformations(
    dfa: &PartialDfa,
    max_len: usize,
    budget: Budget,
) -> Result<Vec<(Transformation, Word)>> {
    let n = dfa.state_count();
    let identity: Transformation = (0..n).map(Some).collect();
    let mut seen: HashSet<Transformation> = HashSet::from([identity.clone()]);
    let mut found = vec![(identity, Word::empty())];
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = found.len();
        for i in level_start..level_end {
            for a in 0..dfa.letter_count() {
                let next: Transformation = found[i]
                    .0
                    .iter()
                    .map(|q| q.and_then(|q| dfa.delta(q, a)))
                    .collect();
                if seen.contains(&next) {
                    continue;
                }
                if found.len() >= budget.0 {
                    return Err(Error::BudgetExceeded { budget: budget.0 });
                }
                seen.insert(next.clone());
                let mut word = found[i].1.clone();
                word.push(a);
                found.push((next, word));
            }
        }
        if found.len() == level_end {
            break;
        }
        level_start = level_end;
    }
    Ok(found)
}

fn distinct_images(t: &Transformation) -> usize {
    t.iter().flatten().collect::<HashSet<_>>().len()
}

/// Minimum nonzero rank over all words of length at most `max_len`, with
/// the length-lexicographically least word attaining it.
pub fn brute_rank(dfa: &PartialDfa, max_len: usize, budget: Budget) -> Result<RankResult> {
    if dfa.state_count() == 0 {
        return Err(Error::EmptyAutomaton);
    }
    let mut best: Option<(usize, Word)> = None;
    for (t, w) in transformations(dfa, max_len, budget)? {
        let rank = distinct_images(&t);
        if rank > 0 && best.as_ref().is_none_or(|(r, _)| rank < *r) {
            best = Some((rank, w));
        }
    }
    let (rank, witness) = best.expect("the empty word has rank n");
    Ok(RankResult { rank, witness })
}

/// Length-lexicographically least word of length at most `max_len` that
/// saturates `set` and whose rank equals the minimum nonzero rank over the
/// same words. Follows the definition literally, so an empty `set` is
/// saturated by any word.
pub fn brute_saturating_word(
    dfa: &PartialDfa,
    set: &StateSet,
    max_len: usize,
    budget: Budget,
) -> Result<Option<Word>> {
    dfa.check_set(set)?;
    let all = transformations(dfa, max_len, budget)?;
    let Some(min_rank) = all.iter().map(|(t, _)| distinct_images(t)).filter(|&r| r > 0).min()
    else {
        return Ok(None);
    };
    Ok(all
        .into_iter()
        .find(|(t, _)| {
            let inside: Option<HashSet<State>> = set.iter().map(|s| t[s]).collect();
            let Some(inside) = inside else { return false };
            let outside_hits = (0..dfa.state_count())
                .filter(|&s| !set.contains(s))
                .filter_map(|s| t[s])
                .any(|q| inside.contains(&q));
            !outside_hits && distinct_images(t) == min_rank
        })
        .map(|(_, w)| w))
}

/// Every accepted word of length at most `max_len`, by direct simulation.
pub fn brute_language(acc: &Acceptor, max_len: usize, budget: Budget) -> Result<BTreeSet<Word>> {
    let k = acc.dfa().letter_count();
    let total: usize = (0..=max_len)
        .map(|len| k.checked_pow(len as u32).unwrap_or(usize::MAX))
        .fold(0usize, |acc, x| acc.saturating_add(x));
    if total > budget.0 {
        return Err(Error::BudgetExceeded { budget: budget.0 });
    }
    let Some(initial) = acc.initial() else {
        return Ok(BTreeSet::new());
    };
    Ok(words_up_to(k, max_len)
        .filter(|w| {
            let mut q = Some(initial);
            for &a in w.letters() {
                q = q.and_then(|q| acc.dfa().delta(q, a));
            }
            q.is_some_and(|q| acc.accepting().contains(q))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::fixtures::*;

    #[test]
    fn word_enumeration_order() {
        let words: Vec<_> = words_up_to(2, 2).map(Word::into_letters).collect();
        assert_eq!(
            words,
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(words_up_to(0, 3).count(), 1);
    }

    #[test]
    fn brute_rank_examples() {
        let b = Budget::default();
        let r = brute_rank(&m2(), 3, b).unwrap();
        assert_eq!((r.rank, r.witness), (1, Word::new(vec![0])));
        let r = brute_rank(&c4(), 9, b).unwrap();
        assert_eq!((r.rank, r.word_length()), (1, 9));
        // one letter short is not enough
        assert_eq!(brute_rank(&c4(), 8, b).unwrap().rank, 2);
        let r = brute_rank(&p2(), 5, b).unwrap();
        assert_eq!((r.rank, r.witness), (2, Word::empty()));
    }

    #[test]
    fn brute_saturation_examples() {
        let b = Budget::default();
        assert_eq!(brute_saturating_word(&p2(), &set(2, &[0]), 2, b).unwrap(), Some(Word::empty()));
        assert_eq!(brute_saturating_word(&m2(), &set(2, &[0]), 4, b).unwrap(), None);
    }

    #[test]
    fn brute_language_examples() {
        let b = Budget::default();
        let p2_acc = Acceptor::new(p2(), 0, set(2, &[0])).unwrap();
        let lang: Vec<_> = brute_language(&p2_acc, 4, b).unwrap().into_iter().map(Word::into_letters).collect();
        assert_eq!(lang, vec![vec![], vec![0, 0], vec![0, 0, 0, 0]]);
        let m2_acc = Acceptor::new(m2(), 0, set(2, &[1])).unwrap();
        let lang: Vec<_> = brute_language(&m2_acc, 2, b).unwrap().into_iter().map(Word::into_letters).collect();
        assert_eq!(lang, vec![vec![0], vec![0, 0]]);
        assert!(brute_language(&m2_acc, 200, Budget(100)).is_err());
    }
}
