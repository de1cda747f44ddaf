use thiserror::Error;

/// Errors raised by automaton construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state {state} is out of range for an automaton with {states} states")]
    StateOutOfRange { state: usize, states: usize },

    #[error("letter index {letter} is out of range for an alphabet of {size} letters")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("transition table has {actual} entries, expected {expected}")]
    TableSize { expected: usize, actual: usize },

    #[error("duplicate transition from state {state} on letter `{letter}`")]
    DuplicateTransition { state: usize, letter: String },

    #[error("state set over {actual} states used with an automaton of {expected} states")]
    UniverseMismatch { expected: usize, actual: usize },

    #[error("the automaton has no states")]
    EmptyAutomaton,

    #[error("invalid rank bound arguments: n = {n}, r = {r} (need 1 <= r <= n)")]
    InvalidRankBound { n: usize, r: usize },

    #[error("search budget exhausted after {budget} configurations")]
    BudgetExceeded { budget: usize },

    #[error("the automaton is not strongly connected")]
    NotStronglyConnected,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
