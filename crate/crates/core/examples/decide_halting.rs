//! Deciding whether a weight-reducing machine halts on every input, and
//! finding a shortest input on which it does not.
//!
//!     cargo run --release --example decide_halting

use wrtm::halting::{decide_halting, decide_linear_time, halting_counterexample};
use wrtm::parse_machine;

const BUDGET: usize = 1_000_000;

fn main() -> wrtm::Result<()> {
    let texts = [
        include_str!("../machines/empty_accept.tm"),
        include_str!("../machines/sweep.tm"),
        include_str!("../machines/mixed.tm"),
        include_str!("../machines/left_on_a.tm"),
        include_str!("../machines/zigzag.tm"),
    ];
    for text in texts {
        let m = parse_machine(text)?;
        let halts = decide_halting(&m, BUDGET)?;
        assert_eq!(halts, decide_linear_time(&m, BUDGET)?);
        let witness = match halting_counterexample(&m, BUDGET)? {
            None => String::new(),
            Some(w) if w.is_empty() => "  diverges on ε".into(),
            Some(w) => format!("  diverges on {}", m.format_word(&w)),
        };
        println!("{:<14} halts on every input: {halts}{witness}", m.name());
    }
    Ok(())
}
