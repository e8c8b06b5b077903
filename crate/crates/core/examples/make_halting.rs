//! The halting transform: an equivalent machine that halts on every
//! input, of size linear in the original.
//!
//!     cargo run --release --example make_halting

use wrtm::halting::{decide_halting, run_wr};
use wrtm::marking::{make_halting, make_halting_accepting};
use wrtm::{parse_machine, Verdict};

fn main() -> wrtm::Result<()> {
    let m = parse_machine(include_str!("../machines/mixed.tm"))?;
    let h = make_halting(&m)?;
    let ha = make_halting_accepting(&m)?;
    println!("mixed: {} states, {} symbols", m.num_states(), m.num_symbols());
    println!("transformed: {} states, {} symbols", h.num_states(), h.num_symbols());
    println!("{:>5}  {:<9} {:<9} {:<9}", "word", "original", "halting", "accepting");
    for w in m.words_up_to(3) {
        let text = m.format_word(&w);
        let v = |x: &wrtm::Machine| -> wrtm::Result<Verdict> { Ok(run_wr(x, &x.parse_word(&text)?)?.verdict) };
        let shown = if w.is_empty() { "ε" } else { text.as_str() };
        println!("{shown:>5}  {:<9} {:<9} {:<9}", v(&m)?.as_str(), v(&h)?.as_str(), v(&ha)?.as_str());
    }
    println!("transformed machine decided halting: {}", decide_halting(&h, 1_000_000)?);
    Ok(())
}
