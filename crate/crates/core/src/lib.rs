//! One-tape deterministic Turing machines, the weight-reducing restriction,
//! and their conversion to finite automata.

#![allow(clippy::needless_range_loop)]

pub mod automaton;
pub mod bn;
pub mod cli;
pub mod crossing;
pub mod error;
pub mod halting;
pub mod machine;
pub mod marking;
pub mod sim;
pub mod wr;

pub use automaton::{Automaton, Equivalence};
pub use error::{Error, Result};
pub use machine::{parse_machine, serialize_machine, Machine, MachineBuilder, Move};
pub use sim::{run, RunOutcome, Verdict};
