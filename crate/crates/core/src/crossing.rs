//! Nondeterministic automata from weight-reducing machines by guessing, for
//! every input cell, the time-ordered sequence of states in which the head
//! scans it.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, Kind};
use crate::error::{Error, Result};
use crate::halting::{self, blank_space_bound_saturating, pow_saturating};
use crate::machine::{Machine, Move, StateId, SymbolId, BLANK};
use crate::sim::{self, Verdict};

/// A cell holding `symbol` at the start, visited in `states`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSequence {
    pub symbol: SymbolId,
    pub states: Vec<StateId>,
}

impl StateSequence {
    pub fn new(symbol: SymbolId, states: Vec<StateId>) -> StateSequence {
        StateSequence { symbol, states }
    }

    pub fn render(&self, m: &Machine) -> String {
        let qs: Vec<&str> = self.states.iter().map(|&q| m.state_name(q)).collect();
        format!("({},{})", m.symbol_name(self.symbol), qs.join(","))
    }
}

/// `δ(q_i, a_{i-1}) = (q'_i, a_i, d_i)` chained along a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// `a_0 = a, a_1, …`; one longer than `successors`.
    pub rewrites: Vec<SymbolId>,
    pub successors: Vec<StateId>,
    pub directions: Vec<Move>,
}

impl Trajectory {
    pub fn applied(&self) -> usize {
        self.successors.len()
    }

    /// The machine halts on the last visit.
    pub fn halts(&self, s: &StateSequence) -> bool {
        self.applied() < s.states.len()
    }
}

/// `None` if `δ` is undefined before the last listed state.
pub fn trajectory(m: &Machine, s: &StateSequence) -> Option<Trajectory> {
    let mut t = Trajectory { rewrites: vec![s.symbol], successors: Vec::new(), directions: Vec::new() };
    for (i, &q) in s.states.iter().enumerate() {
        match m.delta(q, *t.rewrites.last().unwrap()) {
            Some(tr) => {
                t.rewrites.push(tr.write);
                t.successors.push(tr.next);
                t.directions.push(tr.dir);
            }
            None if i + 1 == s.states.len() => break,
            None => return None,
        }
    }
    Some(t)
}

/// Adds a sweep state, the only final state, and a symbol below every
/// other. Whenever the machine would halt in a final state it instead
/// sweeps right, writing the new symbol, and halts on the first blank.
pub fn normalize_accept_right(m: &Machine) -> Result<Machine> {
    if m.is_end_marked() {
        return Err(Error::EndMarked);
    }
    halting::require_wr(m)?;
    let mut b = m.to_builder();
    let sweep = b.fresh_state("sweep");
    let bot = b.fresh_symbol("bot");
    let finals: Vec<StateId> = m.finals().collect();
    for &q in &finals {
        b.set_final(q, false);
        for s in 0..m.num_symbols() {
            if m.delta(q, s).is_none() {
                b.add_rule(q, s, sweep, bot, Move::R)?;
            }
        }
    }
    for s in 1..m.num_symbols() {
        b.add_rule(sweep, s, sweep, bot, Move::R)?;
    }
    b.set_final(sweep, true);
    b.build()
}

/// Which way the head leaves the input segment for good.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Family {
    Rightward,
    Leftward,
}

/// The runs an automaton built by [`to_nfa_with`] accounts for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Halting in a final state.
    Accept,
    /// Never halting, the head drifting off to the right.
    DivergeRight,
    /// Never halting, the head drifting off to the left.
    DivergeLeft,
}

/// Maximum length of a guessed sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqCap {
    /// `|Γ|` of the normalized machine.
    Alphabet,
    /// `|Γ| + 1`.
    AlphabetPlusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NfaOptions {
    pub seq_cap: SeqCap,
    /// Maximal number of automaton states.
    pub state_budget: usize,
}

impl Default for NfaOptions {
    fn default() -> Self {
        NfaOptions { seq_cap: SeqCap::Alphabet, state_budget: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Excursion {
    /// Came back across the boundary in this state, leaving this content.
    Returned(StateId, Vec<SymbolId>),
    Halted(StateId),
    Diverged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Target {
    Seq(Vec<StateId>),
    /// The next cell is never visited.
    Unvisited,
}

/// Runs the consistency checks against a normalized machine, caching
/// half-tape excursions.
struct Crossing<'a> {
    m: &'a Machine,
    cap: usize,
    blank_cap: u128,
    memo: HashMap<(Move, Vec<SymbolId>, StateId), Excursion>,
}

impl<'a> Crossing<'a> {
    fn new(m: &'a Machine, seq_cap: SeqCap) -> Crossing<'a> {
        let g = m.num_symbols();
        let cap = match seq_cap {
            SeqCap::Alphabet => g,
            SeqCap::AlphabetPlusOne => g + 1,
        };
        Crossing { m, cap, blank_cap: blank_space_bound_saturating(m.num_states(), g), memo: HashMap::new() }
    }

    /// Runs on a half-tape entered at its first cell in state `q`. Cell
    /// `i` holds `tape[i]`, blank beyond; moving `outward` goes deeper.
    fn excursion(&mut self, outward: Move, tape: &[SymbolId], q: StateId) -> Excursion {
        let key = (outward, tape.to_vec(), q);
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        let out = self.simulate_excursion(outward, tape, q);
        self.memo.insert(key, out.clone());
        out
    }

    fn simulate_excursion(&self, outward: Move, tape: &[SymbolId], q: StateId) -> Excursion {
        let mut tape = tape.to_vec();
        let (mut pos, mut state) = (0i64, q);
        let mut hi = tape.len() as i64 - 1;
        // fresh-cell entries not yet moved back past, as in run_wr
        let mut frontier: Vec<(i64, StateId)> = Vec::new();
        if tape.is_empty() {
            hi = 0;
            frontier.push((0, q));
        }
        loop {
            let read = tape.get(pos as usize).copied().unwrap_or(BLANK);
            let Some(t) = self.m.delta(state, read) else {
                return Excursion::Halted(state);
            };
            if pos as usize == tape.len() {
                tape.push(t.write);
            } else {
                tape[pos as usize] = t.write;
            }
            pos += if t.dir == outward { 1 } else { -1 };
            state = t.next;
            if pos < 0 {
                return Excursion::Returned(state, tape);
            }
            frontier.retain(|e| e.0 <= pos);
            if pos > hi {
                hi = pos;
                if frontier.iter().any(|e| e.1 == state) || (hi as u128 + 1) >= self.blank_cap {
                    return Excursion::Diverged;
                }
                frontier.push((pos, state));
            }
        }
    }

    fn full_trajectory(&self, symbol: SymbolId, states: &[StateId]) -> Option<Trajectory> {
        let t = trajectory(self.m, &StateSequence::new(symbol, states.to_vec()))?;
        (t.applied() == states.len()).then_some(t)
    }

    /// Members of the left-edge set for `family` with first symbol `a`.
    fn left_edge(&mut self, family: Family, a: SymbolId) -> Vec<Vec<StateId>> {
        let mut out = Vec::new();
        let q0 = self.m.initial();
        self.left_edge_from(family, vec![q0], a, Vec::new(), &mut out);
        out
    }

    fn left_edge_from(
        &mut self,
        family: Family,
        mut states: Vec<StateId>,
        cur: SymbolId,
        left: Vec<SymbolId>,
        out: &mut Vec<Vec<StateId>>,
    ) {
        let q = *states.last().unwrap();
        let Some(t) = self.m.delta(q, cur) else { return };
        match t.dir {
            Move::L => match self.excursion(Move::L, &left, t.next) {
                Excursion::Returned(p, left2) if states.len() < self.cap => {
                    if self.m.delta(p, t.write).is_some() {
                        states.push(p);
                        self.left_edge_from(family, states, t.write, left2, out);
                    }
                }
                Excursion::Diverged if family == Family::Leftward => out.push(states),
                _ => {}
            },
            Move::R => {
                if family == Family::Rightward {
                    out.push(states.clone());
                }
                if states.len() < self.cap {
                    for p in 0..self.m.num_states() {
                        if self.m.delta(p, t.write).is_some() {
                            let mut next = states.clone();
                            next.push(p);
                            self.left_edge_from(family, next, t.write, left.clone(), out);
                        }
                    }
                }
            }
        }
    }

    fn is_left_edge(&mut self, family: Family, s: &StateSequence) -> bool {
        let Some(t) = self.full_trajectory(s.symbol, &s.states) else { return false };
        if s.states[0] != self.m.initial() {
            return false;
        }
        let k = s.states.len();
        let mut left = Vec::new();
        for i in 0..k {
            if t.directions[i] == Move::R {
                if i + 1 == k && family == Family::Leftward {
                    return false;
                }
                continue;
            }
            match self.excursion(Move::L, &left, t.successors[i]) {
                Excursion::Returned(p, l2) if i + 1 < k && p == s.states[i + 1] => left = l2,
                Excursion::Diverged if i + 1 == k && family == Family::Leftward => return true,
                _ => return false,
            }
        }
        family == Family::Rightward
    }

    /// Whether `s`, on the last input cell, fits the blank half-tape to
    /// its right for one of `modes`.
    fn is_right_edge(&mut self, family: Family, modes: &[Mode], s: &StateSequence) -> bool {
        let Some(t) = self.full_trajectory(s.symbol, &s.states) else { return false };
        let k = s.states.len();
        let mut right = Vec::new();
        for i in 0..k {
            let last = i + 1 == k;
            if t.directions[i] == Move::L {
                if last {
                    return family == Family::Leftward;
                }
                continue;
            }
            match self.excursion(Move::R, &right, t.successors[i]) {
                Excursion::Returned(p, r2) if !last && p == s.states[i + 1] => right = r2,
                Excursion::Halted(q) if last && family == Family::Rightward => {
                    return modes.contains(&Mode::Accept) && self.m.is_final(q)
                }
                Excursion::Diverged if last && family == Family::Rightward => {
                    return modes.contains(&Mode::DivergeRight)
                }
                _ => return false,
            }
        }
        false
    }

    /// All sequences of the cell to the right of `s1` that start with
    /// symbol `b` and are consistent with `s1`.
    fn successors(&self, family: Family, s1: &StateSequence, b: SymbolId) -> Vec<Target> {
        let mut out = Vec::new();
        if let Some(t1) = self.full_trajectory(s1.symbol, &s1.states) {
            let mut g = Gen { m: self.m, cap: self.cap, family, s1: &s1.states, t1: &t1, prefix: Vec::new(), out: &mut out };
            g.at_left(0, b);
        }
        out
    }
}

/// Depth-first construction of consistent right neighbours, replaying the
/// boundary crossings in time order.
struct Gen<'g> {
    m: &'g Machine,
    cap: usize,
    family: Family,
    s1: &'g [StateId],
    t1: &'g Trajectory,
    prefix: Vec<StateId>,
    out: &'g mut Vec<Target>,
}

impl Gen<'_> {
    /// The head is on the left cell for its visit `i`; `cur` is the
    /// current symbol of the right cell.
    fn at_left(&mut self, i: usize, cur: SymbolId) {
        let k = self.s1.len();
        if i == k {
            return;
        }
        match self.t1.directions[i] {
            Move::L if i + 1 == k => {
                if self.family == Family::Leftward {
                    let t = if self.prefix.is_empty() { Target::Unvisited } else { Target::Seq(self.prefix.clone()) };
                    self.out.push(t);
                }
            }
            Move::L => self.at_left(i + 1, cur),
            Move::R => self.enter_right(i + 1, cur, self.t1.successors[i]),
        }
    }

    /// The head enters the right cell in state `p`; `i` is the next visit
    /// of the left cell.
    fn enter_right(&mut self, i: usize, cur: SymbolId, p: StateId) {
        if self.prefix.len() >= self.cap {
            return;
        }
        let Some(t) = self.m.delta(p, cur) else { return };
        self.prefix.push(p);
        match t.dir {
            Move::R => {
                if self.family == Family::Rightward && i == self.s1.len() {
                    self.out.push(Target::Seq(self.prefix.clone()));
                }
                for p2 in 0..self.m.num_states() {
                    self.enter_right(i, t.write, p2);
                }
            }
            Move::L => {
                if i < self.s1.len() && self.s1[i] == t.next {
                    self.at_left(i, t.write);
                }
            }
        }
        self.prefix.pop();
    }
}

/// Boundary replay of two trajectories of adjacent cells.
fn replay(family: Family, s1: &[StateId], t1: &Trajectory, s2: &[StateId], t2: &Trajectory) -> bool {
    let (k, l) = (s1.len(), s2.len());
    if t1.applied() < k || t2.applied() < l {
        return false;
    }
    let (mut i, mut h) = (0, 0);
    let mut on_left = true;
    loop {
        if on_left {
            if i == k {
                return false;
            }
            match t1.directions[i] {
                Move::L if i + 1 == k => return family == Family::Leftward && h == l,
                Move::L => i += 1,
                Move::R => {
                    if h == l || s2[h] != t1.successors[i] {
                        return false;
                    }
                    i += 1;
                    on_left = false;
                }
            }
        } else {
            match t2.directions[h] {
                Move::R if h + 1 == l => return family == Family::Rightward && i == k,
                Move::R => h += 1,
                Move::L => {
                    if i == k || s1[i] != t2.successors[h] {
                        return false;
                    }
                    h += 1;
                    on_left = true;
                }
            }
        }
    }
}

/// `s2`, on the cell right of the cell of `s1`, is consistent with `s1` in
/// a run that finally leaves both cells to the right. `m` must be
/// normalized.
pub fn consistent(m: &Machine, s1: &StateSequence, s2: &StateSequence) -> bool {
    match (trajectory(m, s1), trajectory(m, s2)) {
        (Some(t1), Some(t2)) => replay(Family::Rightward, &s1.states, &t1, &s2.states, &t2),
        _ => false,
    }
}

/// Same relation as [`consistent`], for already computed trajectories.
pub fn consistent_trajectories(s1: &[StateId], t1: &Trajectory, s2: &[StateId], t2: &Trajectory) -> bool {
    replay(Family::Rightward, s1, t1, s2, t2)
}

/// Membership in `Q'_R`: `s` can be the sequence of the last input cell of
/// an accepting run. `m` must be normalized.
pub fn right_blank_consistent(m: &Machine, s: &StateSequence) -> bool {
    Crossing::new(m, SeqCap::Alphabet).is_right_edge(Family::Rightward, &[Mode::Accept], s)
}

/// Membership in `Q'_L`: `s` can be the sequence of the first input cell of
/// an accepting run. `m` must be normalized.
pub fn left_blank_consistent(m: &Machine, s: &StateSequence) -> bool {
    Crossing::new(m, SeqCap::Alphabet).is_left_edge(Family::Rightward, s)
}

/// `2 + (s+1)·Σ_{i=1}^{len} n^i`, saturating.
pub fn nfa_state_bound(n_states: usize, max_len: usize, sigma: usize) -> u128 {
    let sum = (1..=max_len).fold(0u128, |acc, i| acc.saturating_add(pow_saturating(n_states as u128, i)));
    (sigma as u128 + 1).saturating_mul(sum).saturating_add(2)
}

/// The bound for [`to_nfa`] on `m`, over the normalized machine's sizes.
pub fn nfa_state_bound_for(m: &Machine) -> u128 {
    nfa_state_bound(m.num_states() + 1, m.num_symbols() + 1, m.input_symbols().len())
}

/// An automaton accepting exactly `L(m)`.
pub fn to_nfa(m: &Machine) -> Result<Automaton> {
    to_nfa_with(m, &[Mode::Accept], &NfaOptions::default())
}

/// An automaton accepting the inputs on which `m` has a run of one of the
/// kinds in `modes`. Only states reachable from the initial state are
/// built.
pub fn to_nfa_with(m: &Machine, modes: &[Mode], opts: &NfaOptions) -> Result<Automaton> {
    if m.is_end_marked() {
        return Err(Error::EndMarked);
    }
    halting::require_wr(m)?;
    let eps = halting::run_wr(m, &[])?.verdict;
    let norm = normalize_accept_right(m)?;
    let mut cx = Crossing::new(&norm, opts.seq_cap);
    let letters: Vec<SymbolId> =
        m.input_symbols().iter().map(|&s| norm.symbol_id(m.symbol_name(s)).unwrap()).collect();
    let alphabet: Vec<String> = letters.iter().map(|&s| norm.symbol_name(s).to_owned()).collect();
    let mut families = Vec::new();
    if modes.contains(&Mode::Accept) || modes.contains(&Mode::DivergeRight) {
        families.push(Family::Rightward);
    }
    if modes.contains(&Mode::DivergeLeft) {
        families.push(Family::Leftward);
    }

    let mut a = Automaton::new(m.name(), Kind::Nfa, alphabet);
    a.state_names[0] = "qI".into();
    let q_f = a.add_state("qF");
    a.finals[q_f] = true;
    a.finals[0] = match eps {
        Verdict::Accept => modes.contains(&Mode::Accept),
        Verdict::Diverges => modes.contains(&Mode::DivergeRight) || modes.contains(&Mode::DivergeLeft),
        _ => false,
    };
    let unvisited = families.contains(&Family::Leftward).then(|| {
        let u = a.add_state("U");
        a.finals[u] = true;
        for c in 0..letters.len() {
            a.add_edge(u, c, u);
        }
        u
    });

    let mut index: HashMap<(Family, StateSequence), usize> = HashMap::new();
    let mut queue: VecDeque<(usize, Family, StateSequence)> = VecDeque::new();
    let mut intern = |a: &mut Automaton, fam: Family, s: StateSequence, queue: &mut VecDeque<_>| -> Result<usize> {
        if let Some(&id) = index.get(&(fam, s.clone())) {
            return Ok(id);
        }
        if a.num_states() >= opts.state_budget {
            return Err(Error::BudgetExceeded(opts.state_budget));
        }
        let tag = match fam {
            Family::Rightward => "",
            Family::Leftward => "<",
        };
        let id = a.add_state(format!("s{}{tag}{}", a.num_states(), s.render(&norm)));
        index.insert((fam, s.clone()), id);
        queue.push_back((id, fam, s));
        Ok(id)
    };

    for &fam in &families {
        for (c, &sym) in letters.iter().enumerate() {
            for states in cx.left_edge(fam, sym) {
                let s = StateSequence::new(sym, states);
                if cx.is_right_edge(fam, modes, &s) {
                    a.add_edge(0, c, q_f);
                }
                let id = intern(&mut a, fam, s, &mut queue)?;
                a.add_edge(0, c, id);
            }
        }
    }
    let mut edge_cache: HashMap<(Family, StateSequence), bool> = HashMap::new();
    while let Some((id, fam, s)) = queue.pop_front() {
        for (c, &sym) in letters.iter().enumerate() {
            for t in cx.successors(fam, &s, sym) {
                match t {
                    Target::Unvisited => a.add_edge(id, c, unvisited.expect("leftward family implies U")),
                    Target::Seq(states) => {
                        let s2 = StateSequence::new(sym, states);
                        let key = (fam, s2.clone());
                        let right = match edge_cache.get(&key) {
                            Some(&r) => r,
                            None => {
                                let r = cx.is_right_edge(fam, modes, &s2);
                                edge_cache.insert(key, r);
                                r
                            }
                        };
                        if right {
                            a.add_edge(id, c, q_f);
                        }
                        let j = intern(&mut a, fam, s2, &mut queue)?;
                        a.add_edge(id, c, j);
                    }
                }
            }
        }
    }
    Ok(a)
}

/// Letter indices of `w` in an automaton built from `m`.
pub fn word_letters(m: &Machine, w: &[SymbolId]) -> Vec<usize> {
    w.iter().map(|s| m.input_symbols().iter().position(|x| x == s).expect("input symbol")).collect()
}

/// Per input cell, the symbol and the states in which the head scanned it,
/// for a run of at most `max_steps` steps. `None` if the run did not halt.
pub fn observed_sequences(m: &Machine, w: &[SymbolId], max_steps: u64) -> Result<Option<(Verdict, Vec<StateSequence>)>> {
    sim::check_word(m, w)?;
    let (mut tape, mut pos) = sim::initial_tape(m, w);
    let mut state = m.initial();
    let mut seqs: Vec<StateSequence> = w.iter().map(|&a| StateSequence::new(a, Vec::new())).collect();
    for _ in 0..=max_steps {
        if (0..w.len() as i64).contains(&pos) {
            seqs[pos as usize].states.push(state);
        }
        let Some(t) = m.delta(state, tape.get(pos)) else {
            let v = if m.is_final(state) { Verdict::Accept } else { Verdict::Reject };
            return Ok(Some((v, seqs)));
        };
        tape.set(pos, t.write);
        pos += t.dir.offset();
        state = t.next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::parse_machine;

    fn m(rules: &str, finals: &str) -> Machine {
        parse_machine(&format!(
            "machine t\nendmarked false\nstates q0 q1 q2\ninput a b\nwork a b X Y Z\ninitial q0\nfinal {finals}\n{rules}"
        ))
        .unwrap()
    }

    fn traj(succ: &[usize], dirs: &str) -> Trajectory {
        Trajectory {
            rewrites: vec![0; succ.len() + 1],
            successors: succ.to_vec(),
            directions: dirs.chars().map(|c| if c == 'R' { Move::R } else { Move::L }).collect(),
        }
    }

    #[test]
    fn figure_instance() {
        // left cell (q1,q2,q3) = (1,2,3), right cell (p1..p5) = (11..15)
        let s1 = [1, 2, 3];
        let t1 = traj(&[9, 11, 14], "LRR");
        let s2 = [11, 12, 13, 14, 15];
        let t2 = traj(&[0, 0, 3, 0, 0], "RRLRR");
        assert!(consistent_trajectories(&s1, &t1, &s2, &t2));
        let t2_bad = traj(&[0, 0, 2, 0, 0], "RRLRR");
        assert!(!consistent_trajectories(&s1, &t1, &s2, &t2_bad));
    }

    #[test]
    fn last_exit_left_is_inconsistent() {
        let s1 = [1];
        let t1 = traj(&[2], "L");
        for dirs in ["R", "L", "RR"] {
            let s2: Vec<usize> = (0..dirs.len()).collect();
            assert!(!consistent_trajectories(&s1, &t1, &s2, &traj(&vec![0; dirs.len()], dirs)));
        }
    }

    #[test]
    fn normalize_adds_sweep() {
        let acc = m("", "q0");
        let n = normalize_accept_right(&acc).unwrap();
        assert_eq!(n.num_states(), 4);
        assert_eq!(n.num_symbols(), 7);
        let bot = n.symbol_id("bot").unwrap();
        let order = crate::wr::check_weight_reducing(&n);
        let o = order.order().unwrap();
        assert!((0..n.num_symbols()).all(|s| s == bot || o.rank(bot) < o.rank(s)));
        let w = n.parse_word("a").unwrap();
        let out = sim::run(&n, &w, 10).unwrap();
        assert_eq!(out.verdict, Verdict::Accept);
        assert_eq!(out.final_config.unwrap().head, sim::Head::RightBlank);
    }

    #[test]
    fn trajectory_cases() {
        let mach = m("trans q0 a q1 X R\n", "");
        let a = mach.symbol_id("a").unwrap();
        let t = trajectory(&mach, &StateSequence::new(a, vec![0])).unwrap();
        assert_eq!(t.rewrites, vec![a, mach.symbol_id("X").unwrap()]);
        assert_eq!(t.directions, vec![Move::R]);
        assert!(trajectory(&mach, &StateSequence::new(a, vec![1, 0])).is_none());
        assert!(trajectory(&mach, &StateSequence::new(a, vec![0, 1])).unwrap().halts(&StateSequence::new(a, vec![0, 1])));
    }

    #[test]
    fn edge_sets_on_sweep() {
        let n = normalize_accept_right(&m("", "q0")).unwrap();
        let a = n.symbol_id("a").unwrap();
        let s = StateSequence::new(a, vec![0]);
        assert!(right_blank_consistent(&n, &s));
        assert!(left_blank_consistent(&n, &s));
        assert!(!left_blank_consistent(&n, &StateSequence::new(a, vec![1])));
    }

    #[test]
    fn generation_matches_replay() {
        let mach = m(
            "trans q0 a q0 X R\ntrans q0 b q1 Y L\ntrans q1 X q1 Y L\ntrans q1 _ q2 X R\ntrans q2 Y q2 Z R\n",
            "q2",
        );
        let n = normalize_accept_right(&mach).unwrap();
        let cx = Crossing::new(&n, SeqCap::Alphabet);
        let syms = [n.symbol_id("a").unwrap(), n.symbol_id("b").unwrap()];
        let all: Vec<Vec<usize>> = (1..=3)
            .flat_map(|l| crate::machine::words_up_to(&(0..n.num_states()).collect::<Vec<_>>(), l).into_iter().filter(move |v| v.len() == l))
            .collect();
        for &a in &syms {
            for s1 in &all {
                let s1 = StateSequence::new(a, s1.clone());
                for &b in &syms {
                    let gen = cx.successors(Family::Rightward, &s1, b);
                    for s2 in &all {
                        let s2 = StateSequence::new(b, s2.clone());
                        assert_eq!(gen.contains(&Target::Seq(s2.states.clone())), consistent(&n, &s1, &s2));
                    }
                }
            }
        }
    }

    #[test]
    fn nfa_matches_simulation() {
        let mach = m(
            "trans q0 a q0 X R\ntrans q0 b q1 Y L\ntrans q1 X q1 Y L\ntrans q1 _ q2 X R\ntrans q2 Y q2 Z R\n",
            "q2",
        );
        let nfa = to_nfa(&mach).unwrap();
        for w in mach.words_up_to(6) {
            let expect = halting::run_wr(&mach, &w).unwrap().verdict == Verdict::Accept;
            assert_eq!(nfa.accepts(&word_letters(&mach, &w)).unwrap(), expect, "{}", mach.format_word(&w));
        }
        assert!((nfa.num_states() as u128) <= nfa_state_bound_for(&mach));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(nfa_state_bound(2, 2, 1), 2 + 2 * (2 + 4));
        assert_eq!(nfa_state_bound(1, 3, 2), 2 + 3 * 3);
    }
}
