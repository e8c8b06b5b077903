//! Space bounds and exact three-way verdicts for weight-reducing machines,
//! plus the haltingness and linear-time deciders.

use std::collections::HashSet;

use crate::automaton::{self, Equivalence};
use crate::crossing::{self, Mode, NfaOptions};
use crate::error::{Error, Result};
use crate::machine::{Machine, StateId, SymbolId};
use crate::sim::{self, RunOutcome, Verdict};
use crate::wr::{self, WrVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Evidence that a run never halts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivergenceCertificate {
    /// The run visited `cells` consecutive initially-blank cells on `side`,
    /// at least the `(n+1)^g` bound.
    SpaceExceeded { side: Side, cells: u128 },
    /// The head entered the fresh blank cell `cell1`, and later the fresh
    /// blank cell `cell2` in the same state without moving back past
    /// `cell1` in between. From `cell2` the run repeats the stretch shifted
    /// by `cell2 - cell1`, forever. `sequence` lists the states in which
    /// `cell1` was visited during that stretch.
    RepeatedSequence { side: Side, cell1: i64, cell2: i64, sequence: Vec<StateId> },
    /// End-marked machines only: the configuration `(state, position)`
    /// recurred with an unchanged tape.
    EndmarkerLoop { state: StateId, position: i64 },
}

pub(crate) fn pow_saturating(base: u128, exp: usize) -> u128 {
    let mut v: u128 = 1;
    for _ in 0..exp {
        v = v.saturating_mul(base);
        if v == u128::MAX {
            break;
        }
    }
    v
}

/// `(n+1)^g`, saturating at `u128::MAX`.
pub fn blank_space_bound_saturating(n_states: usize, n_symbols: usize) -> u128 {
    pow_saturating(n_states as u128 + 1, n_symbols)
}

/// `(n+1)^g` for `n = |Q|`, `g = |Γ|`.
pub fn blank_space_bound(m: &Machine) -> Result<u128> {
    let base = m.num_states() as u128 + 1;
    let exp = u32::try_from(m.num_symbols()).map_err(|_| Error::Overflow("blank space bound"))?;
    base.checked_pow(exp).ok_or(Error::Overflow("blank space bound"))
}

/// `g·(2·(n+1)^g − 1 + |w|)`: no halting run of a weight-reducing machine
/// takes this many steps.
pub fn halting_step_bound(m: &Machine, input_len: usize) -> u128 {
    let b = blank_space_bound_saturating(m.num_states(), m.num_symbols());
    (m.num_symbols() as u128).saturating_mul(b.saturating_mul(2).saturating_sub(1).saturating_add(input_len as u128))
}

pub(crate) fn require_wr(m: &Machine) -> Result<wr::WrOrder> {
    match wr::check_weight_reducing(m) {
        WrVerdict::Order(o) => Ok(o),
        WrVerdict::Cycle(c) => {
            Err(Error::NotWeightReducing { cycle: c.iter().map(|&s| m.symbol_name(s).to_owned()).collect() })
        }
    }
}

/// Per-cell visit log on a bi-infinite tape.
#[derive(Default)]
struct VisitLog {
    right: Vec<Vec<StateId>>,
    left: Vec<Vec<StateId>>,
}

impl VisitLog {
    fn cell(&mut self, pos: i64) -> &mut Vec<StateId> {
        let (v, i) = if pos >= 0 { (&mut self.right, pos as usize) } else { (&mut self.left, (-pos - 1) as usize) };
        if i >= v.len() {
            v.resize_with(i + 1, Vec::new);
        }
        &mut v[i]
    }
}

/// Fresh-cell entries on one side that the head has not moved back past.
/// `(cell, state, index of the entering visit in the cell's log)`.
#[derive(Default)]
struct Frontier(Vec<(i64, StateId, usize)>);

/// Exact simulation: returns Accept, Reject or Diverges, never
/// BudgetExceeded.
pub fn run_wr(m: &Machine, w: &[SymbolId]) -> Result<RunOutcome> {
    require_wr(m)?;
    sim::check_word(m, w)?;
    let (mut tape, mut pos) = sim::initial_tape(m, w);
    let mut state = m.initial();
    let cap = blank_space_bound_saturating(m.num_states(), m.num_symbols());
    let end_marked = m.is_end_marked();
    let len = w.len() as i64;
    let (mut lo, mut hi) = (pos, pos);
    let mut steps = 0u64;
    let mut log = VisitLog::default();
    let (mut right, mut left) = (Frontier::default(), Frontier::default());
    if !end_marked && w.is_empty() {
        right.0.push((0, state, 0));
    }
    let mut seen: HashSet<(StateId, i64)> = HashSet::new();
    let diverges = |steps, lo: i64, hi: i64, cert| RunOutcome {
        verdict: Verdict::Diverges,
        steps,
        cells_visited: (hi - lo + 1) as u64,
        final_config: None,
        certificate: Some(cert),
    };

    loop {
        log.cell(pos).push(state);
        let read = tape.get(pos);
        let Some(t) = m.delta(state, read) else {
            let verdict = if m.is_final(state) { Verdict::Accept } else { Verdict::Reject };
            return Ok(RunOutcome {
                verdict,
                steps,
                cells_visited: (hi - lo + 1) as u64,
                final_config: Some(tape.configuration(state, pos)),
                certificate: None,
            });
        };
        if end_marked {
            if !seen.insert((state, pos)) {
                return Ok(diverges(steps, lo, hi, DivergenceCertificate::EndmarkerLoop { state, position: pos }));
            }
            if t.write != read {
                seen.clear();
            }
        }
        tape.set(pos, t.write);
        pos += t.dir.offset();
        state = t.next;
        steps += 1;
        if end_marked {
            continue;
        }
        right.0.retain(|e| e.0 <= pos);
        left.0.retain(|e| e.0 >= pos);
        let (fresh, side, frontier, cells) = if pos > hi {
            hi = pos;
            (pos >= len, Side::Right, &mut right, (hi - len + 1) as u128)
        } else if pos < lo {
            lo = pos;
            (true, Side::Left, &mut left, (-lo) as u128)
        } else {
            continue;
        };
        if !fresh {
            continue;
        }
        if let Some(&(cell1, _, from)) = frontier.0.iter().find(|e| e.1 == state) {
            let sequence = log.cell(cell1)[from..].to_vec();
            let cert = DivergenceCertificate::RepeatedSequence { side, cell1, cell2: pos, sequence };
            return Ok(diverges(steps, lo, hi, cert));
        }
        frontier.0.push((pos, state, log.cell(pos).len()));
        if cells >= cap {
            return Ok(diverges(steps, lo, hi, DivergenceCertificate::SpaceExceeded { side, cells }));
        }
    }
}

/// True iff the weight-reducing machine `m` halts on every input.
///
/// Compares the automaton for `L(m)` with the automaton for
/// `L(m) ∪ {w : m diverges on w}`, both built from the state sequences of
/// `m`. Exceeding `state_budget` explored states is an error.
pub fn decide_halting(m: &Machine, state_budget: usize) -> Result<bool> {
    Ok(halting_counterexample(m, state_budget)?.is_none())
}

/// `None` if `m` halts on every input, otherwise a shortest input on which
/// it diverges.
pub fn halting_counterexample(m: &Machine, state_budget: usize) -> Result<Option<Vec<SymbolId>>> {
    require_wr(m)?;
    if m.is_end_marked() {
        return Err(Error::EndMarked);
    }
    let opts = NfaOptions { state_budget, ..NfaOptions::default() };
    let accept = crossing::to_nfa_with(m, &[Mode::Accept], &opts)?;
    let with_div = crossing::to_nfa_with(m, &[Mode::Accept, Mode::DivergeRight, Mode::DivergeLeft], &opts)?;
    match automaton::equivalent(&accept, &with_div, state_budget)? {
        Equivalence::Equal => Ok(None),
        Equivalence::Counterexample(w) => Ok(Some(w.iter().map(|&c| m.input_symbols()[c]).collect())),
    }
}

/// Linear time coincides with halting on every input for weight-reducing
/// machines, since every finite run is linearly bounded.
pub fn decide_linear_time(m: &Machine, state_budget: usize) -> Result<bool> {
    decide_halting(m, state_budget)
}
