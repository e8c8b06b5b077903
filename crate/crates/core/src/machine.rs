//! One-tape deterministic Turing machines: representation, the line-oriented
//! text format, and structural validation.
//!
//! Symbols and states are interned; a [`Machine`] stores them as dense indices
//! so the transition function is a flat array keyed by `(state, symbol)`.
//! Symbol `0` is always the blank. End-marked machines additionally reserve
//! `1` for the left endmarker and `2` for the right endmarker.

use std::fmt;

use crate::error::{Error, Result};

pub type StateId = usize;
pub type SymbolId = usize;
/// A word over the input alphabet, as symbol indices of the owning machine.
pub type Word = Vec<SymbolId>;

pub const BLANK: SymbolId = 0;
pub const LEFT_END: SymbolId = 1;
pub const RIGHT_END: SymbolId = 2;

pub const BLANK_TOKEN: &str = "_";
pub const LEFT_END_TOKEN: &str = "<";
pub const RIGHT_END_TOKEN: &str = ">";

fn is_reserved(token: &str) -> bool {
    matches!(token, BLANK_TOKEN | LEFT_END_TOKEN | RIGHT_END_TOKEN)
}

fn is_token(token: &str) -> bool {
    !token.is_empty() && !token.chars().any(char::is_whitespace) && !token.starts_with('#')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    R,
}

impl Move {
    pub fn offset(self) -> i64 {
        match self {
            Move::L => -1,
            Move::R => 1,
        }
    }

    pub fn reversed(self) -> Move {
        match self {
            Move::L => Move::R,
            Move::R => Move::L,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: StateId,
    pub write: SymbolId,
    pub dir: Move,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub state: StateId,
    pub read: SymbolId,
    pub action: Transition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    name: String,
    states: Vec<String>,
    symbols: Vec<String>,
    input: Vec<SymbolId>,
    is_input: Vec<bool>,
    end_marked: bool,
    initial: StateId,
    finals: Vec<bool>,
    rules: Vec<Rule>,
    table: Vec<Option<Transition>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    BlankWritten,
    EndmarkerOverwritten,
    EndmarkerDirection,
    EndmarkerWritten,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::BlankWritten => "blank written",
            ViolationKind::EndmarkerOverwritten => "endmarker overwritten",
            ViolationKind::EndmarkerDirection => "endmarker direction",
            ViolationKind::EndmarkerWritten => "endmarker written",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Machine {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Size of the working alphabet, blank and endmarkers included.
    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn symbol_name(&self, s: SymbolId) -> &str {
        &self.symbols[s]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn symbol_names(&self) -> &[String] {
        &self.symbols
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn input_symbols(&self) -> &[SymbolId] {
        &self.input
    }

    pub fn is_input(&self, s: SymbolId) -> bool {
        self.is_input[s]
    }

    pub fn is_end_marked(&self) -> bool {
        self.end_marked
    }

    pub fn is_endmarker(&self, s: SymbolId) -> bool {
        self.end_marked && (s == LEFT_END || s == RIGHT_END)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len()).filter(|&q| self.finals[q])
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    #[inline]
    pub fn delta(&self, q: StateId, s: SymbolId) -> Option<Transition> {
        self.table[q * self.symbols.len() + s]
    }

    /// Reads a word: whitespace-separated tokens if the text contains
    /// whitespace, otherwise one token per character.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<String> = if text.contains(char::is_whitespace) {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        tokens
            .into_iter()
            .map(|t| match self.symbol_id(&t) {
                Some(s) if self.is_input[s] => Ok(s),
                _ => Err(Error::NotInAlphabet(t)),
            })
            .collect()
    }

    pub fn format_word(&self, w: &[SymbolId]) -> String {
        let single = w.iter().all(|&s| self.symbols[s].chars().count() == 1);
        let parts: Vec<&str> = w.iter().map(|&s| self.symbols[s].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// All words over the input alphabet of length at most `max_len`, in
    /// length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        words_up_to(&self.input, max_len)
    }

    /// Description size `|Q|·|Γ|·log2(|Q|·|Γ|)`.
    pub fn description_size(&self) -> f64 {
        let qg = (self.num_states() * self.num_symbols()) as f64;
        if qg <= 1.0 {
            qg
        } else {
            qg * qg.log2()
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.rules
            .iter()
            .filter_map(|r| rule_violation(self.end_marked, r).map(|kind| self.violation(kind, r)))
            .collect()
    }

    fn violation(&self, kind: ViolationKind, r: &Rule) -> Violation {
        let message = format!(
            "{}: trans {} {} {} {} {}",
            kind.as_str(),
            self.states[r.state],
            self.symbols[r.read],
            self.states[r.action.next],
            self.symbols[r.action.write],
            r.action.dir
        );
        Violation { kind, rule: r.clone(), message }
    }

    /// Returns a builder holding a copy of this machine, for constructions
    /// that extend an existing machine.
    pub fn to_builder(&self) -> MachineBuilder {
        MachineBuilder {
            name: self.name.clone(),
            states: self.states.clone(),
            symbols: self.symbols.clone(),
            input: self.input.clone(),
            end_marked: self.end_marked,
            initial: self.initial,
            finals: self.finals.clone(),
            rules: self.rules.clone(),
        }
    }
}

fn rule_violation(end_marked: bool, r: &Rule) -> Option<ViolationKind> {
    let t = r.action;
    if t.write == BLANK {
        return Some(ViolationKind::BlankWritten);
    }
    if end_marked {
        if r.read == LEFT_END || r.read == RIGHT_END {
            if t.write != r.read {
                return Some(ViolationKind::EndmarkerOverwritten);
            }
            let expected = if r.read == LEFT_END { Move::R } else { Move::L };
            if t.dir != expected {
                return Some(ViolationKind::EndmarkerDirection);
            }
        } else if t.write == LEFT_END || t.write == RIGHT_END {
            return Some(ViolationKind::EndmarkerWritten);
        }
    }
    None
}

pub(crate) fn words_up_to(alphabet: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Incremental construction of a [`Machine`].
#[derive(Debug, Clone)]
pub struct MachineBuilder {
    name: String,
    states: Vec<String>,
    symbols: Vec<String>,
    input: Vec<SymbolId>,
    end_marked: bool,
    initial: StateId,
    finals: Vec<bool>,
    rules: Vec<Rule>,
}

impl MachineBuilder {
    pub fn new(name: impl Into<String>, end_marked: bool) -> Self {
        let mut symbols = vec![BLANK_TOKEN.to_owned()];
        if end_marked {
            symbols.push(LEFT_END_TOKEN.to_owned());
            symbols.push(RIGHT_END_TOKEN.to_owned());
        }
        MachineBuilder {
            name: name.into(),
            states: Vec::new(),
            symbols,
            input: Vec::new(),
            end_marked,
            initial: 0,
            finals: Vec::new(),
            rules: Vec::new(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> Result<StateId> {
        let name = name.into();
        if !is_token(&name) {
            return Err(Error::Invalid(format!("bad state name `{name}`")));
        }
        if self.state_id(&name).is_some() {
            return Err(Error::Invalid(format!("duplicate state `{name}`")));
        }
        self.states.push(name);
        self.finals.push(false);
        Ok(self.states.len() - 1)
    }

    /// Adds a state whose name does not collide with existing ones, by
    /// appending primes to `base` as needed.
    pub fn fresh_state(&mut self, base: &str) -> StateId {
        let name = fresh_name(base, |n| self.state_id(n).is_some());
        self.add_state(name).expect("fresh state name")
    }

    pub fn add_symbol(&mut self, name: impl Into<String>) -> Result<SymbolId> {
        let name = name.into();
        if !is_token(&name) || is_reserved(&name) {
            return Err(Error::Invalid(format!("bad symbol `{name}`")));
        }
        if self.symbol_id(&name).is_some() {
            return Err(Error::Invalid(format!("duplicate symbol `{name}`")));
        }
        self.symbols.push(name);
        Ok(self.symbols.len() - 1)
    }

    pub fn fresh_symbol(&mut self, base: &str) -> SymbolId {
        let name = fresh_name(base, |n| self.symbol_id(n).is_some() || is_reserved(n));
        self.add_symbol(name).expect("fresh symbol name")
    }

    pub fn set_input(&mut self, s: SymbolId) -> Result<()> {
        if s == BLANK || (self.end_marked && (s == LEFT_END || s == RIGHT_END)) {
            return Err(Error::Invalid("reserved symbol in input alphabet".into()));
        }
        if !self.input.contains(&s) {
            self.input.push(s);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = q;
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn clear_rules(&mut self) {
        self.rules.clear();
    }

    pub fn has_rule(&self, q: StateId, read: SymbolId) -> bool {
        self.rules.iter().any(|r| r.state == q && r.read == read)
    }

    pub fn add_rule(&mut self, q: StateId, read: SymbolId, next: StateId, write: SymbolId, dir: Move) -> Result<()> {
        if q >= self.states.len() || next >= self.states.len() {
            return Err(Error::Invalid("unknown state in rule".into()));
        }
        if read >= self.symbols.len() || write >= self.symbols.len() {
            return Err(Error::Invalid("unknown symbol in rule".into()));
        }
        if self.has_rule(q, read) {
            return Err(Error::Invalid(format!(
                "duplicate transition for ({}, {})",
                self.states[q], self.symbols[read]
            )));
        }
        self.rules.push(Rule { state: q, read, action: Transition { next, write, dir } });
        Ok(())
    }

    /// Builds without checking the structural invariants; see
    /// [`Machine::validate`].
    pub fn build_unchecked(self) -> Result<Machine> {
        if self.states.is_empty() {
            return Err(Error::Invalid("machine has no states".into()));
        }
        if self.initial >= self.states.len() {
            return Err(Error::Invalid("initial state out of range".into()));
        }
        let width = self.symbols.len();
        let mut table = vec![None; self.states.len() * width];
        for r in &self.rules {
            table[r.state * width + r.read] = Some(r.action);
        }
        let mut is_input = vec![false; width];
        for &s in &self.input {
            is_input[s] = true;
        }
        Ok(Machine {
            name: self.name,
            states: self.states,
            symbols: self.symbols,
            input: self.input,
            is_input,
            end_marked: self.end_marked,
            initial: self.initial,
            finals: self.finals,
            rules: self.rules,
            table,
        })
    }

    pub fn build(self) -> Result<Machine> {
        let m = self.build_unchecked()?;
        match m.validate().into_iter().next() {
            Some(v) => Err(Error::Invalid(v.message)),
            None => Ok(m),
        }
    }
}

pub(crate) fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut name = base.to_owned();
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Parses the machine text format.
pub fn parse_machine(text: &str) -> Result<Machine> {
    let mut name: Option<String> = None;
    let mut end_marked: Option<bool> = None;
    let mut builder: Option<MachineBuilder> = None;
    let mut states_seen = false;
    let mut pending_input: Vec<(usize, String)> = Vec::new();
    let mut initial: Option<(usize, String)> = None;
    let mut finals: Vec<(usize, String)> = Vec::new();
    let mut trans: Vec<(usize, Vec<String>)> = Vec::new();

    let syntax = |line: usize, msg: &str| Error::Syntax { line, msg: msg.to_owned() };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let args: Vec<String> = tokens.map(str::to_owned).collect();
        match keyword {
            "machine" => {
                if args.len() != 1 {
                    return Err(syntax(line, "expected `machine <name>`"));
                }
                name = Some(args[0].clone());
            }
            "endmarked" => {
                end_marked = Some(match args.as_slice() {
                    [v] if v == "true" => true,
                    [v] if v == "false" => false,
                    _ => return Err(syntax(line, "expected `endmarked <true|false>`")),
                });
            }
            "states" | "work" => {
                let em = end_marked.ok_or_else(|| syntax(line, "`endmarked` must precede alphabet and states"))?;
                let b = builder.get_or_insert_with(|| MachineBuilder::new(name.clone().unwrap_or_default(), em));
                if args.is_empty() && keyword == "states" {
                    return Err(syntax(line, "`states` needs at least one entry"));
                }
                for a in &args {
                    let res = if keyword == "states" { b.add_state(a.clone()).map(|_| ()) } else { b.add_symbol(a.clone()).map(|_| ()) };
                    res.map_err(|e| Error::Semantic { line, msg: e.to_string() })?;
                }
                states_seen |= keyword == "states";
            }
            "input" => pending_input.extend(args.into_iter().map(|a| (line, a))),
            "initial" => {
                if args.len() != 1 {
                    return Err(syntax(line, "expected `initial <state>`"));
                }
                initial = Some((line, args[0].clone()));
            }
            "final" => finals.extend(args.into_iter().map(|a| (line, a))),
            "trans" => {
                if args.len() != 5 {
                    return Err(syntax(line, "expected `trans <state> <symbol> <state> <symbol> <L|R>`"));
                }
                trans.push((line, args));
            }
            other => return Err(syntax(line, &format!("unknown keyword `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let name = name.ok_or_else(|| syntax(1, "missing `machine` header"))?;
    let mut b = builder.ok_or_else(|| syntax(last, "missing `states`"))?;
    b.name = name;
    if !states_seen {
        return Err(syntax(last, "missing `states`"));
    }
    let sem = |line: usize, msg: String| Error::Semantic { line, msg };

    for (line, a) in pending_input {
        let s = b.symbol_id(&a).ok_or_else(|| sem(line, format!("input symbol `{a}` missing from work alphabet")))?;
        b.set_input(s).map_err(|e| sem(line, e.to_string()))?;
    }
    let (line, q0) = initial.ok_or_else(|| syntax(last, "missing `initial`"))?;
    let q0 = b.state_id(&q0).ok_or_else(|| sem(line, format!("unknown state `{q0}`")))?;
    b.set_initial(q0);
    for (line, f) in finals {
        let q = b.state_id(&f).ok_or_else(|| sem(line, format!("unknown state `{f}`")))?;
        b.set_final(q, true);
    }
    for (line, t) in trans {
        let st = |n: &str| b.state_id(n).ok_or_else(|| sem(line, format!("unknown state `{n}`")));
        let sy = |n: &str| b.symbol_id(n).ok_or_else(|| sem(line, format!("unknown symbol `{n}`")));
        let (p, s, q, w) = (st(&t[0])?, sy(&t[1])?, st(&t[2])?, sy(&t[3])?);
        let dir = match t[4].as_str() {
            "L" => Move::L,
            "R" => Move::R,
            _ => return Err(syntax(line, "move must be L or R")),
        };
        let rule = Rule { state: p, read: s, action: Transition { next: q, write: w, dir } };
        if let Some(kind) = rule_violation(b.end_marked, &rule) {
            return Err(sem(line, kind.as_str().to_owned()));
        }
        b.add_rule(p, s, q, w, dir).map_err(|e| sem(line, e.to_string()))?;
    }
    b.build_unchecked()
}

/// Writes the text format. With `canonical`, transitions are sorted by
/// `(state, symbol)` index instead of declaration order.
pub fn serialize_machine(m: &Machine, canonical: bool) -> String {
    let mut out = String::new();
    let name = if m.name.is_empty() { "unnamed" } else { m.name.as_str() };
    out.push_str(&format!("machine {name}\n"));
    out.push_str(&format!("endmarked {}\n", m.end_marked));
    out.push_str(&format!("states {}\n", m.states.join(" ")));
    let input: Vec<&str> = m.input.iter().map(|&s| m.symbols[s].as_str()).collect();
    out.push_str(format!("input {}\n", input.join(" ")).trim_end());
    out.push('\n');
    let first_user = if m.end_marked { 3 } else { 1 };
    let work: Vec<&str> = m.symbols[first_user..].iter().map(String::as_str).collect();
    out.push_str(format!("work {}", work.join(" ")).trim_end());
    out.push('\n');
    out.push_str(&format!("initial {}\n", m.states[m.initial]));
    let finals: Vec<&str> = m.finals().map(|q| m.states[q].as_str()).collect();
    out.push_str(format!("final {}", finals.join(" ")).trim_end());
    out.push('\n');
    let mut rules: Vec<&Rule> = m.rules.iter().collect();
    if canonical {
        rules.sort_by_key(|r| (r.state, r.read));
    }
    for r in rules {
        out.push_str(&format!(
            "trans {} {} {} {} {}\n",
            m.states[r.state], m.symbols[r.read], m.states[r.action.next], m.symbols[r.action.write], r.action.dir
        ));
    }
    out
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_machine(self, false))
    }
}
