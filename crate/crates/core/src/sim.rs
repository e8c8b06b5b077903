//! Configurations, the successor relation, and step-bounded runs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halting::{self, DivergenceCertificate};
use crate::machine::{Machine, Move, StateId, SymbolId, Word, BLANK, LEFT_END, RIGHT_END};
use crate::wr;

/// Where the head sits relative to the non-blank tape contents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Head {
    /// Scanning `content[i]`.
    At(usize),
    /// Scanning the blank immediately left of the contents.
    LeftBlank,
    /// Scanning the blank immediately right of the contents.
    RightBlank,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub content: Vec<SymbolId>,
    pub head: Head,
}

impl Configuration {
    pub fn initial(m: &Machine, w: &[SymbolId]) -> Configuration {
        if m.is_end_marked() {
            let mut content = Vec::with_capacity(w.len() + 2);
            content.push(LEFT_END);
            content.extend_from_slice(w);
            content.push(RIGHT_END);
            Configuration { state: m.initial(), content, head: Head::At(0) }
        } else if w.is_empty() {
            Configuration { state: m.initial(), content: Vec::new(), head: Head::LeftBlank }
        } else {
            Configuration { state: m.initial(), content: w.to_vec(), head: Head::At(0) }
        }
    }

    pub fn scanned(&self) -> SymbolId {
        match self.head {
            Head::At(i) => self.content[i],
            Head::LeftBlank | Head::RightBlank => BLANK,
        }
    }

    /// The `z` part of `⟨z q u⟩`.
    pub fn left(&self) -> &[SymbolId] {
        match self.head {
            Head::At(i) => &self.content[..i],
            Head::LeftBlank => &[],
            Head::RightBlank => &self.content,
        }
    }

    /// The `u` part of `⟨z q u⟩`.
    pub fn right(&self) -> &[SymbolId] {
        match self.head {
            Head::At(i) => &self.content[i..],
            Head::LeftBlank => &self.content,
            Head::RightBlank => &[],
        }
    }

    pub fn render(&self, m: &Machine) -> String {
        let sym = |s: &[SymbolId]| s.iter().map(|&x| m.symbol_name(x)).collect::<Vec<_>>().join(" ");
        let state = m.state_name(self.state);
        match self.head {
            Head::LeftBlank => format!("<{state} _ {}>", sym(&self.content)).replace("  ", " "),
            _ => format!("<{} [{state}] {}>", sym(self.left()), sym(self.right())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Halted,
}

/// One application of the transition function.
pub fn step(m: &Machine, c: &Configuration) -> Result<Step> {
    if c.state >= m.num_states() {
        return Err(Error::MalformedConfiguration(format!("state {} out of range", c.state)));
    }
    if let Some(&bad) = c.content.iter().find(|&&s| s >= m.num_symbols() || s == BLANK) {
        return Err(Error::MalformedConfiguration(format!("symbol {bad} cannot occur in tape contents")));
    }
    if let Head::At(i) = c.head {
        if i >= c.content.len() {
            return Err(Error::MalformedConfiguration(format!("head index {i} past contents")));
        }
    }
    let Some(t) = m.delta(c.state, c.scanned()) else {
        return Ok(Step::Halted);
    };
    let mut content = c.content.clone();
    let cell = match c.head {
        Head::At(i) => {
            content[i] = t.write;
            i
        }
        Head::LeftBlank => {
            content.insert(0, t.write);
            0
        }
        Head::RightBlank => {
            content.push(t.write);
            content.len() - 1
        }
    };
    let head = match t.dir {
        Move::L if cell == 0 => Head::LeftBlank,
        Move::L => Head::At(cell - 1),
        Move::R if cell + 1 == content.len() => Head::RightBlank,
        Move::R => Head::At(cell + 1),
    };
    Ok(Step::Next(Configuration { state: t.next, content, head }))
}

/// Bi-infinite tape; cell 0 holds the first symbol of the initial segment.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tape {
    right: Vec<SymbolId>,
    left: Vec<SymbolId>,
}

impl Tape {
    pub(crate) fn new(init: &[SymbolId]) -> Tape {
        Tape { right: init.to_vec(), left: Vec::new() }
    }

    #[inline]
    pub(crate) fn get(&self, pos: i64) -> SymbolId {
        if pos >= 0 {
            self.right.get(pos as usize).copied().unwrap_or(BLANK)
        } else {
            self.left.get((-pos - 1) as usize).copied().unwrap_or(BLANK)
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, pos: i64, s: SymbolId) {
        let (v, i) = if pos >= 0 { (&mut self.right, pos as usize) } else { (&mut self.left, (-pos - 1) as usize) };
        if i >= v.len() {
            v.resize(i + 1, BLANK);
        }
        v[i] = s;
    }

    pub(crate) fn configuration(&self, state: StateId, head: i64) -> Configuration {
        let mut cells: Vec<(i64, SymbolId)> = Vec::new();
        for (i, &s) in self.left.iter().enumerate().rev() {
            cells.push((-(i as i64) - 1, s));
        }
        for (i, &s) in self.right.iter().enumerate() {
            cells.push((i as i64, s));
        }
        let nonblank: Vec<(i64, SymbolId)> = cells.into_iter().filter(|&(_, s)| s != BLANK).collect();
        let content: Vec<SymbolId> = nonblank.iter().map(|&(_, s)| s).collect();
        let head = match nonblank.iter().position(|&(p, _)| p == head) {
            Some(i) => Head::At(i),
            None if nonblank.first().is_none_or(|&(p, _)| head < p) => Head::LeftBlank,
            None => Head::RightBlank,
        };
        Configuration { state, content, head }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
    Diverges,
    BudgetExceeded,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Diverges => "diverges",
            Verdict::BudgetExceeded => "budget-exceeded",
        }
    }

    pub fn halted(self) -> bool {
        matches!(self, Verdict::Accept | Verdict::Reject)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub verdict: Verdict,
    pub steps: u64,
    pub cells_visited: u64,
    pub final_config: Option<Configuration>,
    pub certificate: Option<DivergenceCertificate>,
}

pub(crate) fn check_word(m: &Machine, w: &[SymbolId]) -> Result<()> {
    match w.iter().find(|&&s| s >= m.num_symbols() || !m.is_input(s)) {
        Some(&s) => Err(Error::NotInAlphabet(if s < m.num_symbols() { m.symbol_name(s).to_owned() } else { s.to_string() })),
        None => Ok(()),
    }
}

/// Initial tape contents and head position for input `w`.
pub(crate) fn initial_tape(m: &Machine, w: &[SymbolId]) -> (Tape, i64) {
    if m.is_end_marked() {
        let mut init = vec![LEFT_END];
        init.extend_from_slice(w);
        init.push(RIGHT_END);
        (Tape::new(&init), 0)
    } else {
        (Tape::new(w), 0)
    }
}

/// `10·g·(|w| + 2·(n+1)^g)`, saturating.
pub fn default_max_steps(m: &Machine, input_len: usize) -> u64 {
    let bound = halting::blank_space_bound_saturating(m.num_states(), m.num_symbols());
    let g = m.num_symbols() as u128;
    let v = 10u128.saturating_mul(g).saturating_mul((input_len as u128).saturating_add(bound.saturating_mul(2)));
    v.min(u64::MAX as u128) as u64
}

/// Runs at most `max_steps` applications of the transition function.
pub fn run(m: &Machine, w: &[SymbolId], max_steps: u64) -> Result<RunOutcome> {
    check_word(m, w)?;
    let (mut tape, mut pos) = initial_tape(m, w);
    let mut state = m.initial();
    let (mut lo, mut hi) = (pos, pos);
    let mut steps = 0u64;
    loop {
        let Some(t) = m.delta(state, tape.get(pos)) else {
            let verdict = if m.is_final(state) { Verdict::Accept } else { Verdict::Reject };
            return Ok(RunOutcome {
                verdict,
                steps,
                cells_visited: (hi - lo + 1) as u64,
                final_config: Some(tape.configuration(state, pos)),
                certificate: None,
            });
        };
        if steps >= max_steps {
            return Ok(RunOutcome {
                verdict: Verdict::BudgetExceeded,
                steps,
                cells_visited: (hi - lo + 1) as u64,
                final_config: None,
                certificate: None,
            });
        }
        tape.set(pos, t.write);
        pos += t.dir.offset();
        state = t.next;
        steps += 1;
        lo = lo.min(pos);
        hi = hi.max(pos);
    }
}

/// Per-word verdicts over `Σ^{≤ max_len}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Language {
    pub accepted: BTreeSet<Word>,
    pub diverging: BTreeSet<Word>,
    pub budget_exceeded: BTreeSet<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Exact verdicts via the weight-reducing simulator when the machine is
    /// weight-reducing; otherwise [`default_max_steps`] per word.
    Auto,
    Steps(u64),
}

pub fn enum_language(m: &Machine, max_len: usize, budget: Budget) -> Result<Language> {
    let exact = budget == Budget::Auto && wr::check_weight_reducing(m).is_order();
    let mut lang = Language::default();
    for w in m.words_up_to(max_len) {
        let out = if exact {
            halting::run_wr(m, &w)?
        } else {
            let steps = match budget {
                Budget::Steps(s) => s,
                Budget::Auto => default_max_steps(m, w.len()),
            };
            run(m, &w, steps)?
        };
        match out.verdict {
            Verdict::Accept => {
                lang.accepted.insert(w);
            }
            Verdict::Reject => {}
            Verdict::Diverges => {
                lang.diverging.insert(w);
            }
            Verdict::BudgetExceeded => {
                lang.budget_exceeded.insert(w);
            }
        }
    }
    Ok(lang)
}
