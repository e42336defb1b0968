//! Abstract numeration systems on regular languages.
//!
//! A numeration system `S = (L, Σ, <)` enumerates an infinite regular language
//! `L` in radix (genealogical) order: shorter words first, words of equal
//! length lexicographically. The `n`-th word is the representation of `n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`alphabet`], [`automaton`], [`regex`] and [`format`] provide the finite
//!   automata algebra and the text interchange format.
//! * [`counting`] computes the word counts `u_l(k)`, `v_l(k)`, the incidence
//!   matrix and the structural tests built on them.
//! * [`numeration`] ranks and unranks words.
//! * [`periodic`] builds recognizers for ultimately periodic sets.
//! * [`relation`] handles word relations (radix order, successor,
//!   translation, change of alphabet order).
//! * [`peano`], [`lattice`] and [`pell`] cover the system `(a*b*, a<b)`:
//!   multiplication by perfect squares and the Pell-equation evidence for
//!   non-squares.

pub mod alphabet;
pub mod automaton;
pub mod counting;
mod error;
pub mod format;
pub mod lattice;
pub mod numeration;
pub mod peano;
pub mod pell;
pub mod periodic;
pub mod regex;
pub mod relation;
pub mod reorder;

pub use alphabet::OrderedAlphabet;
pub use automaton::{Dfa, Nfa};
pub use error::{Error, Result};
pub use numeration::NumerationSystem;
pub use relation::PairAutomaton;

/// Hard cap on the number of states any construction may materialize.
pub const STATE_CAP: usize = 2_000_000;
