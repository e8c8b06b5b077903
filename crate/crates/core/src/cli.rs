//! Command-line front end. Every verb maps to one library call; verdicts
//! are printed as single tokens.
//!
//! Exit codes: `0` success or a true/accepting verdict, `1` a false,
//! rejecting or diverging verdict, `2` usage or input errors, `3` an
//! exhausted budget.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::automaton::{self, Automaton, Equivalence};
use crate::bn;
use crate::crossing;
use crate::error::Error;
use crate::halting;
use crate::machine::{parse_machine, serialize_machine, Machine};
use crate::marking;
use crate::sim::{self, Budget, Verdict};
use crate::wr::{self, WrVerdict};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "wrtm", version, about = "Weight-reducing Turing machines and finite automata")]
pub struct Cli {
    /// Step limit for plain simulation of machines that are not weight-reducing.
    #[arg(long, global = true)]
    pub max_steps: Option<u64>,
    /// Limit on automaton states built by determinization and equivalence.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_BUDGET)]
    pub state_budget: usize,
    /// Append one JSON object per invocation to this file (`-` for stdout).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a machine on a word.
    Simulate {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short, long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// List the accepted words up to a length.
    EnumLang {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short = 'l', long, default_value_t = 6)]
        max_len: usize,
    },
    /// Check well-formedness.
    Validate {
        #[arg(short, long)]
        machine: PathBuf,
    },
    /// Check the weight-reducing property; prints an order or a cycle.
    CheckWr {
        #[arg(short, long)]
        machine: PathBuf,
    },
    /// Limit every cell to `k` visits.
    BoundVisits {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert a machine running in time `K·n + C`.
    LtToWr {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short = 'K')]
        k_coeff: u64,
        #[arg(short = 'C')]
        c: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    ToNfa {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// NFA construction followed by the subset construction.
    ToDfa {
        #[arg(short, long)]
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Minimize {
        #[arg(short, long)]
        automaton: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Language equivalence; prints a shortest counterexample when different.
    Equiv {
        first: PathBuf,
        second: PathBuf,
    },
    DecideHalting {
        #[arg(short, long)]
        machine: PathBuf,
    },
    DecideLinear {
        #[arg(short, long)]
        machine: PathBuf,
    },
    MakeHalting {
        #[arg(short, long)]
        machine: PathBuf,
        /// Accept instead of reject when the simulated machine would diverge.
        #[arg(long)]
        accept_divergent: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    GenBn {
        #[arg(short)]
        n: usize,
        /// Emit the plain machine from the experimental end-marker bridge.
        #[arg(long)]
        plain: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    BnMember {
        #[arg(short)]
        n: usize,
        #[arg(short, long, default_value = "")]
        word: String,
    },
    /// Verify the fooling set for `B_n` against the definition, or against a machine.
    FoolingSet {
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        machine: Option<PathBuf>,
    },
    Stats {
        #[arg(short, long)]
        machine: PathBuf,
    },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Simulate { .. } => "simulate",
            Command::EnumLang { .. } => "enum-lang",
            Command::Validate { .. } => "validate",
            Command::CheckWr { .. } => "check-wr",
            Command::BoundVisits { .. } => "bound-visits",
            Command::LtToWr { .. } => "lt-to-wr",
            Command::ToNfa { .. } => "to-nfa",
            Command::ToDfa { .. } => "to-dfa",
            Command::Minimize { .. } => "minimize",
            Command::Equiv { .. } => "equiv",
            Command::DecideHalting { .. } => "decide-halting",
            Command::DecideLinear { .. } => "decide-linear",
            Command::MakeHalting { .. } => "make-halting",
            Command::GenBn { .. } => "gen-bn",
            Command::BnMember { .. } => "bn-member",
            Command::FoolingSet { .. } => "fooling-set",
            Command::Stats { .. } => "stats",
        }
    }

    fn input(&self) -> String {
        match self {
            Command::Simulate { machine, .. }
            | Command::EnumLang { machine, .. }
            | Command::Validate { machine }
            | Command::CheckWr { machine }
            | Command::BoundVisits { machine, .. }
            | Command::LtToWr { machine, .. }
            | Command::ToNfa { machine, .. }
            | Command::ToDfa { machine, .. }
            | Command::DecideHalting { machine }
            | Command::DecideLinear { machine }
            | Command::MakeHalting { machine, .. }
            | Command::Stats { machine } => machine.display().to_string(),
            Command::Minimize { automaton, .. } => automaton.display().to_string(),
            Command::Equiv { first, second } => format!("{} {}", first.display(), second.display()),
            Command::GenBn { n, .. } | Command::FoolingSet { n, .. } => format!("n={n}"),
            Command::BnMember { word, .. } => word.clone(),
        }
    }
}

/// One line of `--report` output.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub verb: String,
    pub input: String,
    pub verdict: String,
    pub steps: Option<u64>,
    pub states: Option<usize>,
    pub symbols: Option<usize>,
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the verb.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut report = Report { verb: cli.command.verb().into(), input: cli.command.input(), ..Report::default() };
    let code = match execute(cli, out, &mut report) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            report.verdict = "error".into();
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "{msg}");
            let _ = writeln!(out, "budget exceeded");
            report.verdict = "budget-exceeded".into();
            EXIT_BUDGET
        }
    };
    if let Some(path) = &cli.report {
        if let Err(e) = write_report(path, &report, out) {
            let _ = writeln!(err, "error: cannot write report: {e}");
            return EXIT_USAGE;
        }
    }
    code
}

fn write_report(path: &Path, report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    let line = serde_json::to_string(report).map_err(std::io::Error::other)?;
    if path == Path::new("-") {
        writeln!(out, "{line}")
    } else {
        let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
        writeln!(f, "{line}")
    }
}

fn load_machine(path: &Path) -> Result<Machine, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_machine(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_automaton(path: &Path) -> Result<Automaton, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    automaton::parse_automaton(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: &Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn truth(b: bool, out: &mut dyn Write, report: &mut Report) -> Result<i32, Failure> {
    let token = if b { "true" } else { "false" };
    writeln!(out, "{token}")?;
    report.verdict = token.into();
    Ok(if b { EXIT_TRUE } else { EXIT_FALSE })
}

fn describe(report: &mut Report, m: &Machine) {
    report.states = Some(m.num_states());
    report.symbols = Some(m.num_symbols());
}

fn execute(cli: &Cli, out: &mut dyn Write, report: &mut Report) -> Result<i32, Failure> {
    let budget = cli.state_budget;
    match &cli.command {
        Command::Simulate { machine, word } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            let w = m.parse_word(word)?;
            let res = match cli.max_steps {
                Some(s) => sim::run(&m, &w, s)?,
                None if wr::check_weight_reducing(&m).is_order() => halting::run_wr(&m, &w)?,
                None => sim::run(&m, &w, sim::default_max_steps(&m, w.len()))?,
            };
            report.steps = Some(res.steps);
            report.verdict = res.verdict.as_str().into();
            if res.verdict == Verdict::BudgetExceeded {
                writeln!(out, "budget exceeded")?;
                return Ok(EXIT_BUDGET);
            }
            writeln!(out, "{}", res.verdict.as_str())?;
            Ok(if res.verdict == Verdict::Accept { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::EnumLang { machine, max_len } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            let b = cli.max_steps.map_or(Budget::Auto, Budget::Steps);
            let lang = sim::enum_language(&m, *max_len, b)?;
            for w in &lang.accepted {
                writeln!(out, "{}", show_word(&m.format_word(w)))?;
            }
            report.verdict = format!("{} accepted", lang.accepted.len());
            if !lang.budget_exceeded.is_empty() {
                writeln!(out, "# budget exceeded on {} words", lang.budget_exceeded.len())?;
                return Ok(EXIT_BUDGET);
            }
            Ok(EXIT_TRUE)
        }
        Command::Validate { machine } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            let v = m.validate();
            for x in &v {
                writeln!(out, "{x}")?;
            }
            truth(v.is_empty(), out, report)
        }
        Command::CheckWr { machine } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            match wr::check_weight_reducing(&m) {
                WrVerdict::Order(o) => {
                    for (s, r) in o.ranks().iter().enumerate() {
                        if let Some(r) = r {
                            writeln!(out, "rank {} {r}", m.symbol_name(s))?;
                        }
                    }
                    truth(true, out, report)
                }
                WrVerdict::Cycle(c) => {
                    let names: Vec<&str> = c.iter().map(|&s| m.symbol_name(s)).collect();
                    writeln!(out, "cycle {}", names.join(" "))?;
                    truth(false, out, report)
                }
            }
        }
        Command::BoundVisits { machine, k, output } => {
            let r = wr::bound_visits(&load_machine(machine)?, *k)?;
            write_machine(&r, output, out, report)
        }
        Command::LtToWr { machine, k_coeff, c, output } => {
            let r = wr::lt_to_wr(&load_machine(machine)?, *k_coeff, *c)?;
            write_machine(&r, output, out, report)
        }
        Command::ToNfa { machine, output } => {
            let a = crossing::to_nfa(&load_machine(machine)?)?;
            write_automaton(&a, output, out, report)
        }
        Command::ToDfa { machine, output } => {
            let a = crossing::to_nfa(&load_machine(machine)?)?;
            let d = automaton::determinize(&a, budget)?;
            write_automaton(&d, output, out, report)
        }
        Command::Minimize { automaton: path, output } => {
            let a = load_automaton(path)?;
            let d = if a.is_deterministic() { a } else { automaton::determinize(&a, budget)? };
            write_automaton(&automaton::minimize(&d)?, output, out, report)
        }
        Command::Equiv { first, second } => {
            let a = load_automaton(first)?;
            let b = load_automaton(second)?;
            match automaton::equivalent(&a, &b, budget)? {
                Equivalence::Equal => truth(true, out, report),
                Equivalence::Counterexample(w) => {
                    let code = truth(false, out, report)?;
                    writeln!(out, "counterexample {}", show_word(&a.format_word(&w)))?;
                    Ok(code)
                }
            }
        }
        Command::DecideHalting { machine } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            truth(halting::decide_halting(&m, budget)?, out, report)
        }
        Command::DecideLinear { machine } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            truth(halting::decide_linear_time(&m, budget)?, out, report)
        }
        Command::MakeHalting { machine, accept_divergent, output } => {
            let m = load_machine(machine)?;
            let r = if *accept_divergent { marking::make_halting_accepting(&m)? } else { marking::make_halting(&m)? };
            write_machine(&r, output, out, report)
        }
        Command::GenBn { n, plain, output } => {
            let mut m = bn::gen_bn(*n)?.machine;
            if *plain {
                m = bn::end_marked_to_plain(&m)?;
            }
            write_machine(&m, output, out, report)
        }
        Command::BnMember { n, word } => truth(bn::bn_member(word, *n), out, report),
        Command::FoolingSet { n, machine } => {
            let count = match machine {
                Some(path) => {
                    let m = load_machine(path)?;
                    describe(report, &m);
                    let exact = wr::check_weight_reducing(&m).is_order();
                    let mut oracle = |w: &str| -> crate::Result<bool> {
                        let word = m.parse_word(w)?;
                        let res = if exact { halting::run_wr(&m, &word)? } else { sim::run(&m, &word, sim::default_max_steps(&m, word.len()))? };
                        Ok(res.verdict == Verdict::Accept)
                    };
                    bn::fooling_set_check(*n, &mut oracle)
                }
                None => bn::fooling_set_check(*n, &mut |w: &str| Ok(bn::bn_member(w, *n))),
            };
            match count {
                Ok(c) => {
                    writeln!(out, "{c}")?;
                    report.verdict = c.to_string();
                    Ok(EXIT_TRUE)
                }
                Err(e @ Error::Indistinguishable { .. }) => {
                    writeln!(out, "{e}")?;
                    report.verdict = "false".into();
                    Ok(EXIT_FALSE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Stats { machine } => {
            let m = load_machine(machine)?;
            describe(report, &m);
            writeln!(out, "states {}", m.num_states())?;
            writeln!(out, "symbols {}", m.num_symbols())?;
            writeln!(out, "input {}", m.input_symbols().len())?;
            writeln!(out, "transitions {}", m.rules().len())?;
            writeln!(out, "description-size {:.3}", m.description_size())?;
            writeln!(out, "weight-reducing {}", wr::check_weight_reducing(&m).is_order())?;
            report.verdict = "ok".into();
            Ok(EXIT_TRUE)
        }
    }
}

fn show_word(s: &str) -> &str {
    if s.is_empty() {
        "ε"
    } else {
        s
    }
}

fn write_machine(m: &Machine, output: &Option<PathBuf>, out: &mut dyn Write, report: &mut Report) -> Result<i32, Failure> {
    describe(report, m);
    report.verdict = "ok".into();
    emit(&serialize_machine(m, true), output, out)?;
    Ok(EXIT_TRUE)
}

fn write_automaton(a: &Automaton, output: &Option<PathBuf>, out: &mut dyn Write, report: &mut Report) -> Result<i32, Failure> {
    report.states = Some(a.num_states());
    report.symbols = Some(a.alphabet.len());
    report.verdict = "ok".into();
    emit(&automaton::serialize_automaton(a), output, out)?;
    Ok(EXIT_TRUE)
}
