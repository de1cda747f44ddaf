//! Analysis of partial deterministic finite automata.
//!
//! * [`automaton`]: partial automata, acceptors, words, images and ranks of words.
//! * [`graph`]: reachability, SCCs, trimming and the pair automaton.
//! * [`rank`]: exact rank by subset search and pair merging for strongly
//!   connected automata.
//! * [`saturation`]: saturation of state sets by words of minimum rank.
//! * [`birecurrence`]: minimization, reversal, and two deciders for birecurrent languages.
//! * [`reductions`]: Finite Automata Intersection gadgets and the product oracle.
//! * [`oracle`]: brute-force references for testing.
//! * [`generate`]: random automata and instances.

pub mod automaton;
pub mod birecurrence;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod rank;
pub mod reductions;
pub mod saturation;
pub mod stateset;

pub use automaton::{Acceptor, Letter, PartialDfa, State, Word};
pub use error::{Error, Result};
pub use rank::{Budget, RankResult};
pub use stateset::StateSet;
