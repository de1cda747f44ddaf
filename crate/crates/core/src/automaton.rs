//! Partial deterministic automata, acceptors and words.
//!
//! States are dense indices `0..n` and letters are indices into an ordered
//! alphabet of names. An undefined transition is stored as `None` and is
//! never replaced by a sink state: applying a word drops every state whose
//! run hits an undefined entry.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stateset::StateSet;

/// A state index.
pub type State = usize;
/// A letter index into an automaton's alphabet.
pub type Letter = usize;

/// A finite sequence of letter indices. The empty word acts as the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Appends `other` to this word.
    pub fn extend_with(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend_with(other);
        w
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A partial deterministic automaton `(Q, Σ, δ)` without initial or
/// accepting states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialDfa {
    state_count: usize,
    alphabet: Vec<String>,
    // row-major: table[state * alphabet.len() + letter]
    table: Vec<Option<State>>,
}

impl PartialDfa {
    /// Builds an automaton from a row-major transition table indexed by
    /// `state * |alphabet| + letter`.
    pub fn from_table<S: Into<String>>(
        state_count: usize,
        alphabet: impl IntoIterator<Item = S>,
        table: Vec<Option<State>>,
    ) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        validate_alphabet(&alphabet)?;
        let expected = state_count * alphabet.len();
        if table.len() != expected {
            return Err(Error::TableSize {
                expected,
                actual: table.len(),
            });
        }
        if let Some(&bad) = table.iter().flatten().find(|&&t| t >= state_count) {
            return Err(Error::StateOutOfRange {
                state: bad,
                states: state_count,
            });
        }
        Ok(PartialDfa {
            state_count,
            alphabet,
            table,
        })
    }

    /// Builds an automaton by evaluating `delta` on every `(state, letter)`.
    pub fn from_fn<S: Into<String>>(
        state_count: usize,
        alphabet: impl IntoIterator<Item = S>,
        mut delta: impl FnMut(State, Letter) -> Option<State>,
    ) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        let k = alphabet.len();
        let table = (0..state_count * k).map(|i| delta(i / k, i % k)).collect();
        Self::from_table(state_count, alphabet, table)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_name(&self, letter: Letter) -> &str {
        &self.alphabet[letter]
    }

    pub fn letter_index(&self, name: &str) -> Result<Letter> {
        self.alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Parses a sequence of letter names into a word.
    pub fn word<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<Word> {
        names
            .into_iter()
            .map(|n| self.letter_index(n.as_ref()))
            .collect()
    }

    /// Renders a word as space-separated letter names, `ε` when empty.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.letters()
            .iter()
            .map(|&a| self.alphabet[a].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `δ(state, letter)` exactly as stored, with index validation.
    pub fn apply_letter(&self, state: State, letter: Letter) -> Result<Option<State>> {
        self.check_state(state)?;
        self.check_letter(letter)?;
        Ok(self.delta(state, letter))
    }

    /// Unchecked table read; panics on out-of-range indices.
    #[inline]
    pub fn delta(&self, state: State, letter: Letter) -> Option<State> {
        self.table[state * self.alphabet.len() + letter]
    }

    /// `δ(state, word)`, `None` as soon as a transition is undefined.
    pub fn delta_word(&self, state: State, word: &Word) -> Option<State> {
        word.letters()
            .iter()
            .try_fold(state, |q, &a| self.delta(q, a))
    }

    /// Image of `set` under a single letter, dropping undefined targets.
    pub fn image_letter(&self, set: &StateSet, letter: Letter) -> StateSet {
        let mut out = StateSet::empty(self.state_count);
        for s in set {
            if let Some(t) = self.delta(s, letter) {
                out.insert(t);
            }
        }
        out
    }

    /// `{ δ(s, w) : s ∈ S, δ(s, w) defined }`.
    pub fn image(&self, set: &StateSet, word: &Word) -> Result<StateSet> {
        self.check_set(set)?;
        self.check_word(word)?;
        Ok(word
            .letters()
            .iter()
            .fold(set.clone(), |acc, &a| self.image_letter(&acc, a)))
    }

    /// Size of the image of `set` under `word`.
    pub fn rank_of_word(&self, set: &StateSet, word: &Word) -> Result<usize> {
        Ok(self.image(set, word)?.len())
    }

    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.state_count)
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// True iff every letter acts as a total bijection on the states.
    pub fn is_permutation(&self) -> bool {
        (0..self.letter_count()).all(|a| {
            let mut seen = vec![false; self.state_count];
            (0..self.state_count).all(|s| match self.delta(s, a) {
                Some(t) if !seen[t] => {
                    seen[t] = true;
                    true
                }
                _ => false,
            })
        })
    }

    /// Defined transitions as `(source, letter, target)` in index order.
    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        let k = self.alphabet.len();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(i, t)| t.map(|t| (i / k, i % k, t)))
    }

    /// Raw row-major table.
    pub fn table(&self) -> &[Option<State>] {
        &self.table
    }

    pub fn check_state(&self, state: State) -> Result<()> {
        if state < self.state_count {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state,
                states: self.state_count,
            })
        }
    }

    pub fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter < self.alphabet.len() {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter,
                size: self.alphabet.len(),
            })
        }
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        word.letters().iter().try_for_each(|&a| self.check_letter(a))
    }

    pub fn check_set(&self, set: &StateSet) -> Result<()> {
        if set.universe() == self.state_count {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.state_count,
                actual: set.universe(),
            })
        }
    }
}

impl fmt::Debug for PartialDfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PartialDfa({} states, alphabet {:?})", self.state_count, self.alphabet)?;
        for s in 0..self.state_count {
            write!(f, "  {s}:")?;
            for a in 0..self.letter_count() {
                match self.delta(s, a) {
                    Some(t) => write!(f, " {}->{t}", self.alphabet[a])?,
                    None => write!(f, " {}->_", self.alphabet[a])?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn validate_alphabet(alphabet: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for name in alphabet {
        if name.is_empty() {
            return Err(Error::InvalidAlphabet("empty letter name".into()));
        }
        if name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidAlphabet(format!(
                "letter name `{name}` contains whitespace"
            )));
        }
        if !seen.insert(name.as_str()) {
            return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
        }
    }
    Ok(())
}

/// Returns `base`, or `base` followed by enough primes to avoid `taken`.
pub(crate) fn fresh_letter_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// A partial automaton with an initial state and a set of accepting states.
///
/// The canonical empty acceptor (returned by trimming or minimizing an
/// acceptor with an empty language) has zero states and no initial state.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Acceptor {
    dfa: PartialDfa,
    initial: Option<State>,
    accepting: StateSet,
}

impl Acceptor {
    pub fn new(dfa: PartialDfa, initial: State, accepting: StateSet) -> Result<Self> {
        dfa.check_state(initial)?;
        dfa.check_set(&accepting)?;
        Ok(Acceptor {
            dfa,
            initial: Some(initial),
            accepting,
        })
    }

    /// The zero-state acceptor over `alphabet`, recognizing the empty language.
    pub fn empty(alphabet: &[String]) -> Self {
        Acceptor {
            dfa: PartialDfa::from_table(0, alphabet.iter().cloned(), Vec::new())
                .expect("alphabet already validated"),
            initial: None,
            accepting: StateSet::empty(0),
        }
    }

    pub fn dfa(&self) -> &PartialDfa {
        &self.dfa
    }

    /// `None` only for the canonical empty acceptor.
    pub fn initial(&self) -> Option<State> {
        self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    /// True for the canonical zero-state acceptor.
    pub fn is_empty(&self) -> bool {
        self.initial.is_none()
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.initial
            .and_then(|q| self.dfa.delta_word(q, word))
            .is_some_and(|q| self.accepting.contains(q))
    }

    pub fn into_parts(self) -> (PartialDfa, Option<State>, StateSet) {
        (self.dfa, self.initial, self.accepting)
    }
}

impl fmt::Debug for Acceptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Acceptor(initial {:?}, accepting {}) {:?}",
            self.initial, self.accepting, self.dfa
        )
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// M2: a maps both states to 1.
    pub fn m2() -> PartialDfa {
        PartialDfa::from_table(2, ["a"], vec![Some(1), Some(1)]).unwrap()
    }

    /// D2: a maps 0 to 1, undefined on 1.
    pub fn d2() -> PartialDfa {
        PartialDfa::from_table(2, ["a"], vec![Some(1), None]).unwrap()
    }

    /// P2: a swaps the two states.
    pub fn p2() -> PartialDfa {
        PartialDfa::from_table(2, ["a"], vec![Some(1), Some(0)]).unwrap()
    }

    /// The 4-state Černý automaton: a cyclic, b merges 0 into 1.
    pub fn c4() -> PartialDfa {
        PartialDfa::from_fn(4, ["a", "b"], |s, a| {
            Some(match a {
                0 => (s + 1) % 4,
                _ if s == 0 => 1,
                _ => s,
            })
        })
        .unwrap()
    }

    pub fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied()).unwrap()
    }
}
