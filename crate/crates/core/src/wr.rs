//! Weight-reducing machines: the syntactic check and the visit-counter
//! transformation that turns linear-time machines into weight-reducing ones.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::machine::{Machine, MachineBuilder, SymbolId, BLANK};
use crate::sim::{self, Verdict};

/// Directed graph over the working alphabet with an edge `(τ, σ)` whenever
/// some transition reads `σ` and writes `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteGraph {
    pub vertices: usize,
    pub edges: BTreeSet<(SymbolId, SymbolId)>,
}

impl RewriteGraph {
    /// Symbols written when reading `read`.
    pub fn written_over(&self, read: SymbolId) -> impl Iterator<Item = SymbolId> + '_ {
        self.edges.iter().filter(move |&&(_, s)| s == read).map(|&(t, _)| t)
    }
}

pub fn rewrite_graph(m: &Machine) -> RewriteGraph {
    let edges = m
        .rules()
        .iter()
        .filter(|r| !m.is_endmarker(r.read))
        .map(|r| (r.action.write, r.read))
        .collect();
    RewriteGraph { vertices: m.num_symbols(), edges }
}

/// Ranking of the working alphabet with `rank(τ) < rank(σ)` for every
/// rewrite of `σ` into `τ`. Endmarkers of end-marked machines are unranked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrOrder {
    ranks: Vec<Option<usize>>,
}

impl WrOrder {
    pub fn rank(&self, s: SymbolId) -> Option<usize> {
        self.ranks[s]
    }

    pub fn ranks(&self) -> &[Option<usize>] {
        &self.ranks
    }

    /// True iff every transition of `m` not reading an endmarker writes a
    /// strictly lower-ranked symbol.
    pub fn witnesses(&self, m: &Machine) -> bool {
        m.rules().iter().filter(|r| !m.is_endmarker(r.read)).all(|r| {
            matches!((self.ranks[r.action.write], self.ranks[r.read]), (Some(t), Some(s)) if t < s)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WrVerdict {
    Order(WrOrder),
    /// `σ₁ → σ₂ → … → σ₁`: each symbol is rewritten into the next one by
    /// some transition, the last into the first.
    Cycle(Vec<SymbolId>),
}

impl WrVerdict {
    pub fn is_order(&self) -> bool {
        matches!(self, WrVerdict::Order(_))
    }

    pub fn order(&self) -> Option<&WrOrder> {
        match self {
            WrVerdict::Order(o) => Some(o),
            WrVerdict::Cycle(_) => None,
        }
    }
}

pub fn check_weight_reducing(m: &Machine) -> WrVerdict {
    let g = rewrite_graph(m);
    let n = g.vertices;
    // succ[σ] = symbols written over σ
    let mut succ = vec![Vec::new(); n];
    for &(t, s) in &g.edges {
        succ[s].push(t);
    }
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; n];
    let mut rank = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];

    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // iterative DFS: (vertex, next successor index)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < succ[v].len() {
                let t = succ[v][*i];
                *i += 1;
                match mark[t] {
                    Mark::New => {
                        mark[t] = Mark::Open;
                        parent[t] = v;
                        stack.push((t, 0));
                    }
                    Mark::Open => {
                        // back edge v → t closes a cycle t → … → v → t
                        let mut cycle = vec![v];
                        let mut u = v;
                        while u != t {
                            u = parent[u];
                            cycle.push(u);
                        }
                        cycle.reverse();
                        return WrVerdict::Cycle(cycle);
                    }
                    Mark::Done => {}
                }
            } else {
                rank[v] = succ[v].iter().map(|&t| rank[t] + 1).max().unwrap_or(0);
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    let ranks = (0..n).map(|s| if m.is_endmarker(s) { None } else { Some(rank[s]) }).collect();
    let order = WrOrder { ranks };
    debug_assert!(order.witnesses(m));
    WrVerdict::Order(order)
}

/// `2K·n^K + K`: the per-cell visit bound of a machine whose computations
/// take at most `K·|w| + C` steps. `C` does not enter the bound.
pub fn visit_bound_from_time(k_coeff: u64, _c: u64, n_states: u64) -> Result<u64> {
    if k_coeff == 0 || n_states == 0 {
        return Err(Error::Argument("K and |Q| must be at least 1".into()));
    }
    let exp = u32::try_from(k_coeff).map_err(|_| Error::Overflow("visit bound"))?;
    n_states
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(2 * k_coeff))
        .and_then(|v| v.checked_add(k_coeff))
        .ok_or(Error::Overflow("visit bound"))
}

pub(crate) fn tagged_name(base: &str, i: usize) -> String {
    format!("{base}@{i}")
}

/// Pairs every writable symbol with a visit counter in `0..k`; a cell read
/// with counter `0` has no transition, so no cell is visited more than `k`
/// times.
///
/// Input symbols and the blank stay untagged. Input symbols that the
/// machine writes also receive tagged copies.
pub fn bound_visits(m: &Machine, k: usize) -> Result<Machine> {
    if k == 0 {
        return Err(Error::Argument("visit bound k must be at least 1".into()));
    }
    if let Some(v) = m.validate().first() {
        return Err(Error::Invalid(v.to_string()));
    }
    let mut b = MachineBuilder::new(m.name().to_owned(), m.is_end_marked());
    for q in 0..m.num_states() {
        b.add_state(m.state_name(q))?;
    }
    b.set_initial(m.initial());
    for q in m.finals() {
        b.set_final(q, true);
    }
    let first_user = if m.is_end_marked() { 3 } else { 1 };
    // untagged image of each original symbol
    let mut plain = vec![None; m.num_symbols()];
    plain[BLANK] = Some(BLANK);
    for s in 1..first_user {
        plain[s] = Some(s);
    }
    for &s in m.input_symbols() {
        plain[s] = Some(b.add_symbol(m.symbol_name(s))?);
        b.set_input(plain[s].unwrap())?;
    }
    let written: BTreeSet<SymbolId> = m.rules().iter().map(|r| r.action.write).collect();
    let mut tagged: Vec<Option<Vec<SymbolId>>> = vec![None; m.num_symbols()];
    for s in first_user..m.num_symbols() {
        if m.is_input(s) && !written.contains(&s) {
            continue;
        }
        let ids = (0..k).map(|i| b.fresh_symbol(&tagged_name(m.symbol_name(s), i))).collect();
        tagged[s] = Some(ids);
    }
    for r in m.rules() {
        let t = r.action;
        if m.is_endmarker(r.read) {
            b.add_rule(r.state, r.read, t.next, t.write, t.dir)?;
            continue;
        }
        let out = |i: usize| tagged[t.write].as_ref().map(|v| v[i]);
        if let Some(p) = plain[r.read] {
            let w = out(k - 1).ok_or_else(|| Error::Invalid("endmarker written over a symbol".into()))?;
            b.add_rule(r.state, p, t.next, w, t.dir)?;
        }
        if let Some(ids) = &tagged[r.read] {
            for i in 1..k {
                let w = out(i - 1).ok_or_else(|| Error::Invalid("endmarker written over a symbol".into()))?;
                b.add_rule(r.state, ids[i], t.next, w, t.dir)?;
            }
        }
    }
    b.build()
}

pub fn lt_to_wr(m: &Machine, k_coeff: u64, c: u64) -> Result<Machine> {
    let k = visit_bound_from_time(k_coeff, c, m.num_states() as u64)?;
    let k = usize::try_from(k).map_err(|_| Error::Overflow("visit bound"))?;
    bound_visits(m, k)
}

/// Words of length at most `max_len` on which `m` does not halt within
/// `K·|w| + C` steps.
pub fn time_bound_violations(m: &Machine, k_coeff: u64, c: u64, max_len: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for w in m.words_up_to(max_len) {
        let limit = k_coeff.saturating_mul(w.len() as u64).saturating_add(c);
        let res = sim::run(m, &w, limit)?;
        if res.verdict == Verdict::BudgetExceeded {
            out.push(m.format_word(&w));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::parse_machine;

    fn m(rules: &str) -> Machine {
        parse_machine(&format!(
            "machine t\nendmarked false\nstates q p\ninput a\nwork a X Y\ninitial q\nfinal p\n{rules}"
        ))
        .unwrap()
    }

    #[test]
    fn graph_edges() {
        assert!(rewrite_graph(&m("")).edges.is_empty());
        let g = rewrite_graph(&m("trans q a q X R\n"));
        let (a, x) = (1, 2);
        assert_eq!(g.edges.iter().copied().collect::<Vec<_>>(), vec![(x, a)]);
    }

    #[test]
    fn endmarker_bounces_are_not_rewrites() {
        let e = parse_machine(
            "machine e\nendmarked true\nstates q\ninput a\nwork a\ninitial q\ntrans q < q < R\ntrans q > q > L\n",
        )
        .unwrap();
        assert!(rewrite_graph(&e).edges.is_empty());
        assert!(check_weight_reducing(&e).is_order());
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let v = check_weight_reducing(&m("trans q a q a R\n"));
        assert_eq!(v, WrVerdict::Cycle(vec![1]));
    }

    #[test]
    fn longer_cycle_is_realized() {
        let mach = m("trans q a q X R\ntrans q X p Y L\ntrans p Y q a R\n");
        let WrVerdict::Cycle(c) = check_weight_reducing(&mach) else { panic!() };
        assert_eq!(c.len(), 3);
        let g = rewrite_graph(&mach);
        for i in 0..c.len() {
            let (s, t) = (c[i], c[(i + 1) % c.len()]);
            assert!(g.edges.contains(&(t, s)));
        }
    }

    #[test]
    fn chain_ranks() {
        let mach = m("trans q a q X R\ntrans q X q Y R\n");
        let WrVerdict::Order(o) = check_weight_reducing(&mach) else { panic!() };
        let r = |n: &str| o.rank(mach.symbol_id(n).unwrap()).unwrap();
        assert!(r("Y") < r("X") && r("X") < r("a"));
        assert!(o.witnesses(&mach));
    }

    #[test]
    fn visit_bound_formula() {
        assert_eq!(visit_bound_from_time(1, 0, 2).unwrap(), 5);
        assert_eq!(visit_bound_from_time(1, 7, 1).unwrap(), 3);
        assert_eq!(visit_bound_from_time(2, 0, 1).unwrap(), 6);
        assert!(visit_bound_from_time(0, 0, 1).is_err());
        assert!(matches!(visit_bound_from_time(40, 0, 1000), Err(Error::Overflow(_))));
    }

    #[test]
    fn bound_visits_alphabet_size() {
        let mach = parse_machine("machine t\nendmarked false\nstates q\ninput a\nwork a X\ninitial q\ntrans q a q X R\n").unwrap();
        let b = bound_visits(&mach, 3).unwrap();
        assert_eq!(b.num_symbols(), 5);
        assert_eq!(b.num_states(), mach.num_states());
        assert!(check_weight_reducing(&b).is_order());
        assert!(bound_visits(&mach, 0).is_err());
    }

    #[test]
    fn written_input_symbols_get_counters() {
        let mach = m("trans q a p a R\n");
        let b = bound_visits(&mach, 2).unwrap();
        assert!(b.symbol_id("a@1").is_some());
        assert!(check_weight_reducing(&b).is_order());
    }
}
