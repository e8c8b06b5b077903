//! From a weight-reducing machine to its minimal DFA, and language
//! equivalence with a shortest counterexample.
//!
//!     cargo run --example to_automaton

use wrtm::automaton::{determinize, equivalent, minimize};
use wrtm::crossing::{nfa_state_bound_for, to_nfa};
use wrtm::{parse_machine, Equivalence};

fn main() -> wrtm::Result<()> {
    let ends = parse_machine(include_str!("../machines/ends_in_b.tm"))?;
    let back = parse_machine(include_str!("../machines/there_and_back.tm"))?;

    for m in [&ends, &back] {
        let nfa = to_nfa(m)?;
        let dfa = determinize(&nfa, 100_000)?;
        let min = minimize(&dfa)?;
        println!(
            "{}: NFA {} states (bound {}), DFA {}, minimal {}",
            m.name(),
            nfa.num_states(),
            nfa_state_bound_for(m),
            dfa.num_states(),
            min.num_states()
        );
    }
    println!("{}", minimize(&determinize(&to_nfa(&back)?, 100_000)?)?);

    let first_a = parse_machine(include_str!("../machines/first_a.tm"))?;
    match equivalent(&to_nfa(&ends)?, &to_nfa(&first_a)?, 100_000)? {
        Equivalence::Equal => println!("ends_in_b = first_a"),
        Equivalence::Counterexample(w) => {
            let a = to_nfa(&ends)?;
            println!("ends_in_b and first_a differ on {:?}", a.format_word(&w));
        }
    }
    Ok(())
}
