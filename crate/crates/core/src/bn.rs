//! The witness languages `B_n`: `$`-separated binary blocks `v_1$…$v_k`
//! with `k > 2`, `|v_k| ≤ n`, no block shorter than `v_k`, and some
//! earlier block equal to `v_k`. Small end-marked weight-reducing machines
//! accept them, while every DFA for `B_n` needs `2^(2^n)` states.

use crate::error::{Error, Result};
use crate::halting;
use crate::machine::{Machine, MachineBuilder, Move, StateId, SymbolId, BLANK, LEFT_END, RIGHT_END};
use crate::sim::Verdict;
use crate::wr;

/// Direct membership test.
pub fn bn_member(w: &str, n: usize) -> bool {
    if w.chars().any(|c| !matches!(c, '0' | '1' | '$')) {
        return false;
    }
    let blocks: Vec<&str> = w.split('$').collect();
    let k = blocks.len();
    if k <= 2 {
        return false;
    }
    let last = blocks[k - 1];
    last.len() <= n
        && blocks[..k - 1].iter().all(|b| b.len() >= last.len())
        && blocks[..k - 1].contains(&last)
}

/// Generated machine with its parameter.
#[derive(Debug, Clone)]
pub struct BnInstance {
    pub n: usize,
    pub machine: Machine,
}

/// Symbols of the unbounded base machine.
struct Syms {
    zero: SymbolId,
    one: SymbolId,
    dollar: SymbolId,
    x: SymbolId,
    f: SymbolId,
}

/// The end-marked machine before visits are bounded. One iteration
/// memorizes the rightmost unprocessed symbol of the last block, replaces
/// it by `x`, and on the way left replaces the rightmost unprocessed
/// symbol of every other block by `x` (equal) or `f` (different); then it
/// returns to the right endmarker. Every cell is visited twice per
/// iteration and once by the initial sweep, so `|v_k|` iterations visit a
/// cell `2|v_k|` times.
pub fn bn_base_machine() -> Result<Machine> {
    let mut b = MachineBuilder::new("bn-base", true);
    let zero = b.add_symbol("0")?;
    let one = b.add_symbol("1")?;
    let dollar = b.add_symbol("$")?;
    for s in [zero, one, dollar] {
        b.set_input(s)?;
    }
    let s = Syms { zero, one, dollar, x: b.add_symbol("x")?, f: b.add_symbol("f")? };
    let bit = |a: usize| if a == 0 { s.zero } else { s.one };

    let q0 = b.add_state("start")?;
    // first sweep, counting separators up to two
    let count: Vec<StateId> = (0..3).map(|c| b.add_state(format!("count{c}"))).collect::<Result<_>>()?;
    let find = b.add_state("find")?;
    let probe: Vec<StateId> = (0..2).map(|a| b.add_state(format!("probe{a}"))).collect::<Result<_>>()?;
    let skip: Vec<StateId> = (0..2).map(|a| b.add_state(format!("skip{a}"))).collect::<Result<_>>()?;
    let seek: Vec<StateId> = (0..2).map(|a| b.add_state(format!("seek{a}"))).collect::<Result<_>>()?;
    let rest: Vec<StateId> = (0..2).map(|a| b.add_state(format!("rest{a}"))).collect::<Result<_>>()?;
    // last iteration: [a][found][clean]
    let mut seek_f = [[[0; 2]; 2]; 2];
    for (a, row) in seek_f.iter_mut().enumerate() {
        for (found, r) in row.iter_mut().enumerate() {
            for (clean, st) in r.iter_mut().enumerate() {
                *st = b.add_state(format!("seekf{a}.{found}.{clean}"))?;
            }
        }
    }
    // rest of a block in the last iteration: [a][found][clean]
    let mut rest_f = [[[0; 2]; 2]; 2];
    for (a, row) in rest_f.iter_mut().enumerate() {
        for (found, r) in row.iter_mut().enumerate() {
            for (clean, st) in r.iter_mut().enumerate() {
                *st = b.add_state(format!("restf{a}.{found}.{clean}"))?;
            }
        }
    }
    // empty last block: [found][empty so far]
    let mut empty = [[0; 2]; 2];
    for (found, r) in empty.iter_mut().enumerate() {
        for (e, st) in r.iter_mut().enumerate() {
            *st = b.add_state(format!("empty{found}.{e}"))?;
        }
    }
    let back = b.add_state("back")?;
    let accept = b.add_state("accept")?;
    b.set_initial(q0);
    b.set_final(accept, true);

    b.add_rule(q0, LEFT_END, count[0], LEFT_END, Move::R)?;
    for c in 0..3 {
        for a in 0..2 {
            b.add_rule(count[c], bit(a), count[c], bit(a), Move::R)?;
        }
        b.add_rule(count[c], s.dollar, count[(c + 1).min(2)], s.dollar, Move::R)?;
    }
    b.add_rule(count[2], RIGHT_END, find, RIGHT_END, Move::L)?;

    b.add_rule(find, s.x, find, s.x, Move::L)?;
    for a in 0..2 {
        b.add_rule(find, bit(a), probe[a], s.x, Move::L)?;
    }
    b.add_rule(find, s.dollar, empty[0][1], s.dollar, Move::L)?;

    for a in 0..2 {
        for c in 0..2 {
            b.add_rule(probe[a], bit(c), skip[a], bit(c), Move::L)?;
            b.add_rule(skip[a], bit(c), skip[a], bit(c), Move::L)?;
            b.add_rule(rest[a], bit(c), rest[a], bit(c), Move::L)?;
            let mark = if a == c { s.x } else { s.f };
            b.add_rule(seek[a], bit(c), rest[a], mark, Move::L)?;
        }
        b.add_rule(probe[a], s.dollar, seek_f[a][0][1], s.dollar, Move::L)?;
        b.add_rule(skip[a], s.dollar, seek[a], s.dollar, Move::L)?;
        b.add_rule(seek[a], s.x, seek[a], s.x, Move::L)?;
        b.add_rule(seek[a], s.f, seek[a], s.f, Move::L)?;
        b.add_rule(rest[a], s.dollar, seek[a], s.dollar, Move::L)?;
        b.add_rule(rest[a], LEFT_END, back, LEFT_END, Move::R)?;
    }

    for a in 0..2 {
        for found in 0..2 {
            for clean in 0..2 {
                let st = seek_f[a][found][clean];
                b.add_rule(st, s.x, st, s.x, Move::L)?;
                b.add_rule(st, s.f, seek_f[a][found][0], s.f, Move::L)?;
                for c in 0..2 {
                    let mark = if a == c { s.x } else { s.f };
                    let clean2 = usize::from(clean == 1 && a == c);
                    b.add_rule(st, bit(c), rest_f[a][found][clean2], mark, Move::L)?;
                }
            }
        }
    }
    for found in 0..2 {
        for clean in 0..2 {
            let hit = usize::from(found == 1 || clean == 1);
            for a in 0..2 {
                let st = rest_f[a][found][clean];
                for c in 0..2 {
                    b.add_rule(st, bit(c), rest_f[a][found][0], bit(c), Move::L)?;
                }
                b.add_rule(st, s.dollar, seek_f[a][hit][1], s.dollar, Move::L)?;
                if hit == 1 {
                    b.add_rule(st, LEFT_END, accept, LEFT_END, Move::R)?;
                }
            }
            let e = empty[found][clean];
            for c in 0..2 {
                b.add_rule(e, bit(c), empty[found][0], bit(c), Move::L)?;
            }
            b.add_rule(e, s.dollar, empty[hit][1], s.dollar, Move::L)?;
            if hit == 1 {
                b.add_rule(e, LEFT_END, accept, LEFT_END, Move::R)?;
            }
        }
    }
    for sym in [s.zero, s.one, s.dollar, s.x, s.f] {
        b.add_rule(back, sym, back, sym, Move::R)?;
    }
    b.add_rule(back, RIGHT_END, find, RIGHT_END, Move::L)?;
    b.build()
}

/// End-marked weight-reducing machine for `B_n`: the base machine with
/// every cell limited to `2n` visits. A last block longer than `n` needs
/// more visits, so the run blocks in a non-final state.
pub fn gen_bn(n: usize) -> Result<BnInstance> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let k = n.checked_mul(2).ok_or(Error::Overflow("visit bound"))?;
    let mut machine = wr::bound_visits(&bn_base_machine()?, k)?;
    machine.set_name(format!("b{n}"));
    Ok(BnInstance { n, machine })
}

fn padding(n: usize) -> String {
    "0".repeat(n + 1)
}

/// The prefix used for a set `S` of length-`n` blocks: a padding block of
/// length `n+1`, then the members of `S` in order.
pub fn fooling_prefix(n: usize, set: &[String]) -> String {
    let mut parts = vec![padding(n)];
    parts.extend(set.iter().cloned());
    parts.join("$")
}

fn blocks_of_len(n: usize) -> Vec<String> {
    (0..1usize << n).map(|v| format!("{v:0n$b}")).collect()
}

/// Checks that the `2^(2^n)` prefixes `fooling_prefix(S)` are pairwise
/// separated by the oracle: for `S ≠ T` and `u ∈ S △ T`, exactly one of
/// `prefix(S)$u`, `prefix(T)$u` is accepted. Returns the number of
/// prefixes.
pub fn fooling_set_check(n: usize, oracle: &mut dyn FnMut(&str) -> Result<bool>) -> Result<usize> {
    if n == 0 || n > 3 {
        return Err(Error::Argument("fooling sets are enumerated for 1 <= n <= 3".into()));
    }
    let blocks = blocks_of_len(n);
    let count = 1usize << blocks.len();
    let sets: Vec<Vec<String>> = (0..count)
        .map(|mask| blocks.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, b)| b.clone()).collect())
        .collect();
    // answers[mask][u]
    let mut answers = vec![vec![false; blocks.len()]; count];
    for (mask, set) in sets.iter().enumerate() {
        let prefix = fooling_prefix(n, set);
        for (u, block) in blocks.iter().enumerate() {
            answers[mask][u] = oracle(&format!("{prefix}${block}"))?;
        }
    }
    for a in 0..count {
        for b in a + 1..count {
            let u = (a ^ b).trailing_zeros() as usize;
            if answers[a][u] == answers[b][u] {
                return Err(Error::Indistinguishable {
                    first: fooling_prefix(n, &sets[a]),
                    second: fooling_prefix(n, &sets[b]),
                });
            }
        }
    }
    Ok(count)
}

/// Experimental: a plain weight-reducing machine with the language of the
/// end-marked machine `m`, for feeding `B_n` machines to the NFA
/// construction. States remember the direction of the last move, so a
/// blank reached moving left stands for the left endmarker and one reached
/// moving right for the right endmarker. Endmarker cells count their
/// visits down from `|Γ|+2`; in a weight-reducing run the cell next to an
/// endmarker is rewritten between two visits to it, so the counter is
/// never exhausted on non-empty inputs. The empty input is decided ahead
/// with the exact simulator.
pub fn end_marked_to_plain(m: &Machine) -> Result<Machine> {
    if !m.is_end_marked() {
        return Err(Error::Argument("machine is not end-marked".into()));
    }
    halting::require_wr(m)?;
    let top = m.num_symbols() + 2;
    let mut b = MachineBuilder::new(format!("{}-plain", m.name()), false);
    let mut sym = vec![BLANK; m.num_symbols()];
    for s in 3..m.num_symbols() {
        sym[s] = b.add_symbol(m.symbol_name(s))?;
        if m.is_input(s) {
            b.set_input(sym[s])?;
        }
    }
    let marks = |b: &mut MachineBuilder, base: &str| -> Vec<SymbolId> {
        (0..top).map(|i| b.fresh_symbol(&format!("{base}{i}"))).collect()
    };
    let lmark = marks(&mut b, "lend");
    let rmark = marks(&mut b, "rend");
    // [q][0] arrived moving left, [q][1] arrived moving right
    let mut st = Vec::with_capacity(m.num_states());
    for q in 0..m.num_states() {
        let l = b.fresh_state(&format!("{}.l", m.state_name(q)));
        let r = b.fresh_state(&format!("{}.r", m.state_name(q)));
        b.set_final(l, m.is_final(q));
        b.set_final(r, m.is_final(q));
        st.push([l, r]);
    }
    let dir_ix = |d: Move| usize::from(d == Move::R);
    for q in 0..m.num_states() {
        for s in 3..m.num_symbols() {
            if let Some(t) = m.delta(q, s) {
                if m.is_endmarker(t.write) {
                    return Err(Error::Invalid("endmarker written over a symbol".into()));
                }
                for d in 0..2 {
                    b.add_rule(st[q][d], sym[s], st[t.next][dir_ix(t.dir)], sym[t.write], t.dir)?;
                }
            }
        }
        for (end, mark, d) in [(LEFT_END, &lmark, 0), (RIGHT_END, &rmark, 1)] {
            let Some(t) = m.delta(q, end) else { continue };
            if t.write != end {
                return Err(Error::Invalid("endmarker overwritten".into()));
            }
            let next = st[t.next][dir_ix(t.dir)];
            b.add_rule(st[q][d], BLANK, next, mark[top - 1], t.dir)?;
            for i in 1..top {
                b.add_rule(st[q][d], mark[i], next, mark[i - 1], t.dir)?;
            }
        }
    }
    // the first step of m leaves the left endmarker for cell 0
    let start = b.fresh_state("bridge.start");
    b.set_initial(start);
    let eps = sim_accepts_empty(m)?;
    let eps_state = b.fresh_state("bridge.empty");
    b.set_final(eps_state, eps);
    b.add_rule(start, BLANK, eps_state, rmark[0], Move::R)?;
    match m.delta(m.initial(), LEFT_END) {
        Some(t) if t.dir == Move::L => return Err(Error::Invalid("move left from the left endmarker".into())),
        Some(t) => {
            for s in 3..m.num_symbols() {
                if !m.is_input(s) {
                    continue;
                }
                if let Some(u) = m.delta(t.next, s) {
                    b.add_rule(start, sym[s], st[u.next][dir_ix(u.dir)], sym[u.write], u.dir)?;
                } else {
                    // m halts on its first input cell
                    let h = b.fresh_state("bridge.halt");
                    b.set_final(h, m.is_final(t.next));
                    b.add_rule(start, sym[s], h, sym[s], Move::R)?;
                }
            }
        }
        _ => {
            // m halts on the left endmarker
            b.set_final(start, m.is_final(m.initial()));
        }
    }
    b.build()
}

fn sim_accepts_empty(m: &Machine) -> Result<bool> {
    Ok(halting::run_wr(m, &[])?.verdict == Verdict::Accept)
}
