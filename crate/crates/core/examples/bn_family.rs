//! The witness languages B_n: machines with a constant number of states
//! whose minimal DFAs need 2^(2^n) states.
//!
//!     cargo run --release --example bn_family

use wrtm::automaton::{determinize, minimize};
use wrtm::bn::{bn_member, end_marked_to_plain, fooling_set_check, gen_bn};
use wrtm::crossing::to_nfa;
use wrtm::halting::run_wr;
use wrtm::Verdict;

fn main() -> wrtm::Result<()> {
    for n in 1..=8 {
        let m = gen_bn(n)?.machine;
        println!("B_{n}: {} states, {} symbols", m.num_states(), m.num_symbols());
    }

    let word = "0011$0101110$011$0011$001$011";
    let b4 = gen_bn(4)?.machine;
    let v = run_wr(&b4, &b4.parse_word(word)?)?;
    println!("{word}: machine {}, definition {}", v.verdict.as_str(), bn_member(word, 4));

    for n in 1..=3 {
        let m = gen_bn(n)?.machine;
        let count = fooling_set_check(n, &mut |w: &str| Ok(run_wr(&m, &m.parse_word(w)?)?.verdict == Verdict::Accept))?;
        println!("n={n}: {count} pairwise distinguishable prefixes");
    }

    // experimental: remove the endmarkers and build the automaton
    let plain = end_marked_to_plain(&gen_bn(1)?.machine)?;
    let min = minimize(&determinize(&to_nfa(&plain)?, 1_000_000)?)?;
    println!("B_1 via the plain machine: minimal DFA with {} states", min.num_states());
    Ok(())
}
