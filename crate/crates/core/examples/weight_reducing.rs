//! The weight-reducing check, and two ways to make a machine
//! weight-reducing: capping visits per cell, and the same cap derived from
//! a linear time bound.
//!
//!     cargo run --example weight_reducing

use wrtm::wr::{bound_visits, check_weight_reducing, lt_to_wr, visit_bound_from_time, WrVerdict};
use wrtm::{parse_machine, sim};

const COPY: &str = "\
machine copy
endmarked false
states q0 q1
input a b
work a b
initial q0
final q1
trans q0 a q0 a R
trans q0 b q1 b R
trans q1 a q0 a R
trans q1 b q1 b R
";

fn main() -> wrtm::Result<()> {
    let m = parse_machine(COPY)?;
    match check_weight_reducing(&m) {
        WrVerdict::Order(_) => println!("copy is weight-reducing"),
        WrVerdict::Cycle(c) => {
            let names: Vec<&str> = c.iter().map(|&s| m.symbol_name(s)).collect();
            println!("copy rewrites in a cycle: {}", names.join(" -> "));
        }
    }

    // copy halts after |w| steps, so K = 1, C = 1
    println!("visit bound for K=1, |Q|=2: {}", visit_bound_from_time(1, 1, 2)?);
    let w = lt_to_wr(&m, 1, 1)?;
    println!("lt_to_wr: {} states, {} symbols, weight-reducing: {}", w.num_states(), w.num_symbols(), check_weight_reducing(&w).is_order());

    let b = bound_visits(&m, 1)?;
    let before = sim::enum_language(&m, 4, sim::Budget::Steps(100))?;
    let after = sim::enum_language(&b, 4, sim::Budget::Auto)?;
    println!("bound_visits k=1 keeps the language up to length 4: {}", before.accepted.len() == after.accepted.len());
    let order = check_weight_reducing(&b);
    for (s, r) in order.order().expect("bounded machine is weight-reducing").ranks().iter().enumerate() {
        if let Some(r) = r {
            println!("  rank {:>4} = {r}", b.symbol_name(s));
        }
    }
    Ok(())
}
