//! Stewart words and a first-order decision procedure over them.
//!
//! The library has three layers:
//!
//! * [`words`] builds finite Toeplitz words from Stewart patterns and
//!   provides word-combinatorics primitives (factors, periods, Hamming
//!   distance between patterns).
//! * [`automata`] is a multi-track, multi-base DFA/DFAO algebra hosting
//!   the Stewart automaton, with [`arith`] supplying the built-in
//!   arithmetic relations and a regex compiler, and [`prover`] compiling
//!   first-order formulas about the words down to automata.
//! * [`oracles`] re-proves every statement the prover decides by brute
//!   force on exhaustive small instances, so the two routes check each
//!   other.

pub mod arith;
pub mod automata;
pub mod checks;
pub mod error;
pub mod numeration;
pub mod oracles;
pub mod prover;
pub mod rational;
pub mod words;

pub use error::{Error, Result};
