//! The command-line verbs, driven in-process.
//!
//!     cargo run --example cli_pipeline

use wrtm::cli::dispatch;

fn main() {
    let dir = std::env::temp_dir().join("wrtm-cli-pipeline");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let machine = concat!(env!("CARGO_MANIFEST_DIR"), "/machines/ends_in_b.tm");
    let nfa = dir.join("ends_in_b.nfa");
    let nfa = nfa.to_str().unwrap();
    let runs: [&[&str]; 6] = [
        &["stats", "-m", machine],
        &["check-wr", "-m", machine],
        &["simulate", "-m", machine, "-w", "aab", "--report", "-"],
        &["to-nfa", "-m", machine, "-o", nfa],
        &["minimize", "-a", nfa],
        &["decide-halting", "-m", machine],
    ];
    for args in runs {
        println!("$ wrtm {}", args.join(" "));
        let argv = std::iter::once("wrtm").chain(args.iter().copied());
        let code = dispatch(argv, &mut std::io::stdout(), &mut std::io::stderr());
        println!("[exit {code}]\n");
    }
}
