//! Exact simulation of weight-reducing machines: every run ends in a
//! verdict, and divergent runs come with a certificate.
//!
//!     cargo run --example simulate

use wrtm::halting::run_wr;
use wrtm::parse_machine;

const MIXED: &str = include_str!("../machines/mixed.tm");
const LEFT: &str = include_str!("../machines/left_diverger.tm");

fn main() -> wrtm::Result<()> {
    for text in [MIXED, LEFT] {
        let m = parse_machine(text)?;
        println!("{} ({} states, {} symbols)", m.name(), m.num_states(), m.num_symbols());
        for w in m.words_up_to(2) {
            let out = run_wr(&m, &w)?;
            let shown = if w.is_empty() { "ε".to_owned() } else { m.format_word(&w) };
            print!("  {shown:>3}: {:<8} after {:>2} steps", out.verdict.as_str(), out.steps);
            match out.certificate {
                Some(c) => println!("  {c:?}"),
                None => println!(),
            }
        }
    }
    Ok(())
}
