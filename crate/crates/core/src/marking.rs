//! Transformation of a weight-reducing machine into an equivalent one that
//! halts on every input.
//!
//! The new machine first marks `(n+1)^g` cells on each side of the input,
//! where `n = |Q|` and `g = |Γ|`. A base-`(n+1)` counter of `g` digits is
//! shifted one cell outwards and incremented per round, starting at `g−1`,
//! until every digit is `n`. Then it simulates the original machine,
//! reading marked cells as blank. A run of the original machine that
//! reaches an unmarked blank has visited `(n+1)^g` consecutive
//! initially-blank cells and so never halts.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::halting::{self, require_wr};
use crate::machine::{Machine, MachineBuilder, Move, StateId, SymbolId, BLANK};
use crate::sim::Verdict;

/// Versions of each marking symbol; every visit to a marked cell lowers
/// the version by one.
fn marking_versions(g: usize) -> usize {
    2 * g + 5
}

/// Versions of input symbols: one per marking pass over the input.
const INPUT_VERSIONS: usize = 5;

/// `L(result) = L(m)`, and the result halts on every input.
pub fn make_halting(m: &Machine) -> Result<Machine> {
    build(m, false)
}

/// `L(result) = L(m) ∪ {w : m does not halt on w}`, and the result halts on
/// every input.
pub fn make_halting_accepting(m: &Machine) -> Result<Machine> {
    build(m, true)
}

/// What a symbol of the new machine is.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Digit(usize, usize),
    DeadLeft(usize),
    DeadRight(usize),
    Input(SymbolId, usize),
    Sim(SymbolId),
}

fn build(m: &Machine, accept_outside: bool) -> Result<Machine> {
    if m.is_end_marked() {
        return Err(Error::EndMarked);
    }
    require_wr(m)?;
    let n = m.num_states();
    let g = m.num_symbols();
    let base = n + 1;
    let nv = marking_versions(g);
    let top = nv - 1;
    let eps = halting::run_wr(m, &[])?.verdict;

    let suffix = if accept_outside { "halting-acc" } else { "halting" };
    let mut b = MachineBuilder::new(format!("{}-{suffix}", m.name()), false);
    for q in 0..n {
        b.add_state(m.state_name(q))?;
    }
    let mut role: HashMap<SymbolId, Role> = HashMap::new();
    let mut raw: HashMap<SymbolId, SymbolId> = HashMap::new();
    for &a in m.input_symbols() {
        let s = b.add_symbol(m.symbol_name(a))?;
        b.set_input(s)?;
        raw.insert(s, a);
    }
    let digit: Vec<Vec<SymbolId>> = (0..base)
        .map(|d| (0..nv).map(|v| b.fresh_symbol(&format!("m{d}.{v}"))).collect())
        .collect();
    let dead_l: Vec<SymbolId> = (0..nv).map(|v| b.fresh_symbol(&format!("xl.{v}"))).collect();
    let dead_r: Vec<SymbolId> = (0..nv).map(|v| b.fresh_symbol(&format!("xr.{v}"))).collect();
    let mut copy: HashMap<SymbolId, Vec<SymbolId>> = HashMap::new();
    for &a in m.input_symbols() {
        let name = m.symbol_name(a);
        copy.insert(a, (0..INPUT_VERSIONS).map(|v| b.fresh_symbol(&format!("{name}.{v}"))).collect());
    }
    let sim: Vec<SymbolId> = (0..g).map(|s| if s == BLANK { BLANK } else { b.fresh_symbol(&format!("{}'", m.symbol_name(s))) }).collect();
    let stop = b.fresh_symbol("stop");
    for d in 0..base {
        for v in 0..nv {
            role.insert(digit[d][v], Role::Digit(d, v));
        }
    }
    for v in 0..nv {
        role.insert(dead_l[v], Role::DeadLeft(v));
        role.insert(dead_r[v], Role::DeadRight(v));
    }
    for (&a, vs) in &copy {
        for (v, &s) in vs.iter().enumerate() {
            role.insert(s, Role::Input(a, v));
        }
    }
    for s in 1..g {
        role.insert(sim[s], Role::Sim(s));
    }

    // digits of g-1, least significant first
    let mut init_digits = Vec::with_capacity(g);
    let mut v = g - 1;
    for _ in 0..g {
        init_digits.push(v % base);
        v /= base;
    }

    let start = b.fresh_state("mk.start");
    let init_l: Vec<StateId> = (0..g).map(|j| b.fresh_state(&format!("mk.initl{j}"))).collect();
    let init_r: Vec<StateId> = (0..g).map(|j| b.fresh_state(&format!("mk.initr{j}"))).collect();
    let ret_l = [b.fresh_state("mk.retl0"), b.fresh_state("mk.retl1")];
    let ret_r = [b.fresh_state("mk.retr0"), b.fresh_state("mk.retr1")];
    let inc_l = b.fresh_state("mk.incl");
    let inc_r = b.fresh_state("mk.incr");
    let carry_l: Vec<[StateId; 2]> =
        (0..base).map(|d| [b.fresh_state(&format!("mk.cl{d}.0")), b.fresh_state(&format!("mk.cl{d}.1"))]).collect();
    let carry_r: Vec<[StateId; 2]> =
        (0..base).map(|d| [b.fresh_state(&format!("mk.cr{d}.0")), b.fresh_state(&format!("mk.cr{d}.1"))]).collect();
    let sweep_r = b.fresh_state("mk.sweepr");
    let sweep_l = b.fresh_state("mk.sweepl");
    let outside = b.fresh_state(if accept_outside { "mk.accept" } else { "mk.reject" });

    b.set_initial(start);
    for q in m.finals() {
        b.set_final(q, true);
    }
    b.set_final(outside, accept_outside);
    b.set_final(start, eps == Verdict::Accept || (accept_outside && eps == Verdict::Diverges));

    let all_symbols: Vec<SymbolId> = (0..b.num_symbols()).collect();
    let flag = |f: bool| ret_l[usize::from(f)];
    let flag_r = |f: bool| ret_r[usize::from(f)];
    let first_write = |j: usize| digit[init_digits[j]][top];

    // start: copy the first input symbol, then lay out the left counter
    for (&s, &a) in &raw {
        b.add_rule(start, s, init_l[0], copy[&a][INPUT_VERSIONS - 1], Move::L)?;
    }
    for j in 0..g {
        let (next, dir) = if j + 1 < g { (init_l[j + 1], Move::L) } else { (flag(init_digits[g - 1] == n), Move::R) };
        b.add_rule(init_l[j], BLANK, next, first_write(j), dir)?;
    }
    // sweep_r doubles as the first right initialization step
    for j in 0..g {
        let state = if j == 0 { sweep_r } else { init_r[j] };
        let (next, dir) = if j + 1 < g { (init_r[j + 1], Move::R) } else { (flag_r(init_digits[g - 1] == n), Move::L) };
        b.add_rule(state, BLANK, next, first_write(j), dir)?;
    }
    for side in [Move::L, Move::R] {
        let (out, back) = (side, side.reversed());
        let (ret, inc, carry, dead) =
            if side == Move::L { (ret_l, inc_l, &carry_l, &dead_l) } else { (ret_r, inc_r, &carry_r, &dead_r) };
        for d in 0..base {
            for c in 0..2 {
                let f = d == n;
                b.add_rule(carry[d][c], BLANK, ret[usize::from(f)], digit[d][top], back)?;
            }
        }
        for &s in &all_symbols {
            let Some(&r) = role.get(&s) else { continue };
            match r {
                Role::Digit(e, v) if v > 0 => {
                    for f in 0..2 {
                        b.add_rule(ret[f], s, ret[usize::from(f == 1 && e == n)], digit[e][v - 1], back)?;
                    }
                    let (nd, nc) = ((e + 1) % base, (e + 1) / base);
                    b.add_rule(inc, s, carry[nd][nc], dead[v - 1], out)?;
                    for d in 0..base {
                        for c in 0..2 {
                            let (nd, nc) = ((e + c) % base, (e + c) / base);
                            b.add_rule(carry[d][c], s, carry[nd][nc], digit[d][v - 1], out)?;
                        }
                    }
                }
                Role::Input(a, v) if v > 0 => {
                    let lower = copy[&a][v - 1];
                    let done = if side == Move::L { sweep_r } else { sweep_l };
                    b.add_rule(ret[1], s, done, lower, back)?;
                    b.add_rule(ret[0], s, inc, lower, out)?;
                }
                Role::DeadLeft(v) | Role::DeadRight(v) if v > 0 => {
                    let own = matches!((r, side), (Role::DeadLeft(_), Move::L) | (Role::DeadRight(_), Move::R));
                    if own {
                        let done = if side == Move::L { sweep_r } else { sweep_l };
                        b.add_rule(ret[1], s, done, dead[v - 1], back)?;
                        b.add_rule(ret[0], s, inc, dead[v - 1], out)?;
                    }
                }
                _ => {}
            }
        }
    }
    for (&s, &a) in &raw {
        b.add_rule(sweep_r, s, sweep_r, copy[&a][INPUT_VERSIONS - 1], Move::R)?;
    }
    for &s in &all_symbols {
        match role.get(&s) {
            Some(&Role::Input(a, v)) if v > 0 => {
                b.add_rule(sweep_r, s, sweep_r, copy[&a][v - 1], Move::R)?;
                b.add_rule(sweep_l, s, sweep_l, copy[&a][v - 1], Move::L)?;
            }
            Some(&Role::DeadLeft(v)) if v > 0 => {
                b.add_rule(sweep_r, s, sweep_r, dead_l[v - 1], Move::R)?;
                b.add_rule(sweep_l, s, m.initial(), dead_l[v - 1], Move::R)?;
            }
            Some(&Role::DeadRight(v)) if v > 0 => {
                b.add_rule(sweep_l, s, sweep_l, dead_r[v - 1], Move::L)?;
            }
            _ => {}
        }
    }

    // simulation: marked cells read as blank, an unmarked blank ends the run
    for q in 0..n {
        b.add_rule(q, BLANK, outside, stop, Move::R)?;
        for &s in &all_symbols {
            let seen = match role.get(&s) {
                Some(Role::Digit(..) | Role::DeadLeft(_) | Role::DeadRight(_)) => BLANK,
                Some(&Role::Input(a, _)) => a,
                Some(&Role::Sim(t)) => t,
                None => continue,
            };
            if let Some(t) = m.delta(q, seen) {
                b.add_rule(q, s, t.next, sim[t.write], t.dir)?;
            }
        }
    }
    b.build()
}
