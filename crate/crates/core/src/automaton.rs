//! Finite automata over the input alphabet: membership, subset construction,
//! minimization and equivalence with shortest counterexamples.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Nfa,
    Dfa,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Nfa => "nfa",
            Kind::Dfa => "dfa",
        }
    }
}

/// States and letters are dense indices; `delta[p][c]` is sorted and
/// duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub name: String,
    pub kind: Kind,
    pub alphabet: Vec<String>,
    pub state_names: Vec<String>,
    pub initial: usize,
    pub finals: Vec<bool>,
    pub delta: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A shortest word in the symmetric difference, as letter indices.
    Counterexample(Vec<usize>),
}

impl Automaton {
    /// An automaton with a single non-final initial state.
    pub fn new(name: impl Into<String>, kind: Kind, alphabet: Vec<String>) -> Automaton {
        let k = alphabet.len();
        Automaton {
            name: name.into(),
            kind,
            alphabet,
            state_names: vec!["s0".into()],
            initial: 0,
            finals: vec![false],
            delta: vec![vec![Vec::new(); k]],
        }
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.state_names.push(name.into());
        self.finals.push(false);
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.state_names.len() - 1
    }

    pub fn add_edge(&mut self, p: usize, c: usize, q: usize) {
        let v = &mut self.delta[p][c];
        if let Err(i) = v.binary_search(&q) {
            v.insert(i, q);
        }
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Whitespace-separated letters, or one letter per character when the
    /// text has no whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let tokens: Vec<String> = if text.split_whitespace().count() > 1 {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.trim().chars().map(String::from).collect()
        };
        tokens.iter().map(|t| self.letter(t).ok_or_else(|| Error::NotInAlphabet(t.clone()))).collect()
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        let names: Vec<&str> = w.iter().map(|&c| self.alphabet[c].as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(" ")
        }
    }

    pub fn accepts(&self, w: &[usize]) -> Result<bool> {
        if let Some(&c) = w.iter().find(|&&c| c >= self.alphabet.len()) {
            return Err(Error::NotInAlphabet(c.to_string()));
        }
        let mut cur = vec![self.initial];
        for &c in w {
            let next: BTreeSet<usize> = cur.iter().flat_map(|&p| self.delta[p][c].iter().copied()).collect();
            cur = next.into_iter().collect();
            if cur.is_empty() {
                return Ok(false);
            }
        }
        Ok(cur.iter().any(|&p| self.finals[p]))
    }

    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().flatten().all(|v| v.len() <= 1)
    }

    /// Removes states not reachable from the initial state or not
    /// co-reachable from a final state. The initial state is always kept.
    pub fn trim(&self) -> Automaton {
        let n = self.num_states();
        let mut reach = vec![false; n];
        let mut stack = vec![self.initial];
        reach[self.initial] = true;
        while let Some(p) = stack.pop() {
            for q in self.delta[p].iter().flatten() {
                if !reach[*q] {
                    reach[*q] = true;
                    stack.push(*q);
                }
            }
        }
        let mut rev = vec![Vec::new(); n];
        for p in 0..n {
            for q in self.delta[p].iter().flatten() {
                rev[*q].push(p);
            }
        }
        let mut co = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&p| co[p]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !co[p] {
                    co[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<bool> = (0..n).map(|p| p == self.initial || (reach[p] && co[p])).collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut index = vec![usize::MAX; keep.len()];
        let mut out = Automaton {
            name: self.name.clone(),
            kind: self.kind,
            alphabet: self.alphabet.clone(),
            state_names: Vec::new(),
            initial: 0,
            finals: Vec::new(),
            delta: Vec::new(),
        };
        for p in (0..keep.len()).filter(|&p| keep[p]) {
            index[p] = out.add_state(self.state_names[p].clone());
            out.finals[index[p]] = self.finals[p];
        }
        for p in (0..keep.len()).filter(|&p| keep[p]) {
            for (c, qs) in self.delta[p].iter().enumerate() {
                for &q in qs.iter().filter(|&&q| keep[q]) {
                    out.add_edge(index[p], c, index[q]);
                }
            }
        }
        out.initial = index[self.initial];
        out
    }
}

/// Reachable-subset construction. The empty subset is not materialized,
/// so the result may be partial. Fails once more than `budget` subsets
/// are discovered.
pub fn determinize(a: &Automaton, budget: usize) -> Result<Automaton> {
    let k = a.alphabet.len();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = vec![vec![a.initial]];
    index.insert(vec![a.initial], 0);
    let mut d = Automaton::new(a.name.clone(), Kind::Dfa, a.alphabet.clone());
    d.state_names[0] = format!("{{{}}}", a.state_names[a.initial]);
    d.finals[0] = a.finals[a.initial];
    let mut i = 0;
    while i < subsets.len() {
        for c in 0..k {
            let next: BTreeSet<usize> = subsets[i].iter().flat_map(|&p| a.delta[p][c].iter().copied()).collect();
            if next.is_empty() {
                continue;
            }
            let next: Vec<usize> = next.into_iter().collect();
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if subsets.len() >= budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    let names: Vec<&str> = next.iter().map(|&p| a.state_names[p].as_str()).collect();
                    let j = d.add_state(format!("{{{}}}", names.join(",")));
                    d.finals[j] = next.iter().any(|&p| a.finals[p]);
                    index.insert(next.clone(), j);
                    subsets.push(next);
                    j
                }
            };
            d.add_edge(i, c, j);
        }
        i += 1;
    }
    Ok(d)
}

/// The minimal complete DFA, states numbered breadth-first from the initial
/// state in letter order. Equivalent inputs give identical outputs up to
/// the automaton name.
pub fn minimize(a: &Automaton) -> Result<Automaton> {
    if !a.is_deterministic() {
        return Err(Error::Argument("minimize expects a deterministic automaton".into()));
    }
    let k = a.alphabet.len();
    // complete and restrict to reachable states; `sink` is the dead state
    let sink = a.num_states();
    let succ = |p: usize, c: usize| if p == sink { sink } else { a.delta[p][c].first().copied().unwrap_or(sink) };
    let mut order = vec![a.initial];
    let mut seen = vec![false; sink + 1];
    seen[a.initial] = true;
    let mut i = 0;
    while i < order.len() {
        for c in 0..k {
            let q = succ(order[i], c);
            if !seen[q] {
                seen[q] = true;
                order.push(q);
            }
        }
        i += 1;
    }
    let is_final = |p: usize| p != sink && a.finals[p];

    // Moore refinement over the reachable states
    let mut block: Vec<usize> = vec![0; sink + 1];
    for &p in &order {
        block[p] = usize::from(is_final(p));
    }
    let mut count = order.iter().map(|&p| block[p]).collect::<BTreeSet<_>>().len();
    loop {
        let mut sig: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![0; sink + 1];
        for &p in &order {
            let mut key = Vec::with_capacity(k + 1);
            key.push(block[p]);
            key.extend((0..k).map(|c| block[succ(p, c)]));
            let n = sig.len();
            next[p] = *sig.entry(key).or_insert(n);
        }
        block = next;
        if sig.len() == count {
            break;
        }
        count = sig.len();
    }

    // canonical numbering by BFS over blocks
    let mut canon: HashMap<usize, usize> = HashMap::new();
    let mut rep: Vec<usize> = Vec::new();
    canon.insert(block[a.initial], 0);
    rep.push(a.initial);
    let mut i = 0;
    while i < rep.len() {
        for c in 0..k {
            let q = succ(rep[i], c);
            if let std::collections::hash_map::Entry::Vacant(e) = canon.entry(block[q]) {
                e.insert(rep.len());
                rep.push(q);
            }
        }
        i += 1;
    }
    let mut out = Automaton {
        name: a.name.clone(),
        kind: Kind::Dfa,
        alphabet: a.alphabet.clone(),
        state_names: (0..rep.len()).map(|i| format!("m{i}")).collect(),
        initial: 0,
        finals: rep.iter().map(|&p| is_final(p)).collect(),
        delta: vec![vec![Vec::new(); k]; rep.len()],
    };
    for (i, &p) in rep.iter().enumerate() {
        for c in 0..k {
            out.delta[i][c] = vec![canon[&block[succ(p, c)]]];
        }
    }
    Ok(out)
}

/// Breadth-first search over pairs of subsets, on the fly. Fails once
/// more than `budget` pairs are discovered.
pub fn equivalent(a1: &Automaton, a2: &Automaton, budget: usize) -> Result<Equivalence> {
    if a1.alphabet != a2.alphabet {
        return Err(Error::AlphabetMismatch(a1.alphabet.clone(), a2.alphabet.clone()));
    }
    let (a1, a2) = (a1.trim(), a2.trim());
    let k = a1.alphabet.len();
    type Pair = (Vec<usize>, Vec<usize>);
    let accepting = |a: &Automaton, s: &[usize]| s.iter().any(|&p| a.finals[p]);
    let step = |a: &Automaton, s: &[usize], c: usize| -> Vec<usize> {
        s.iter().flat_map(|&p| a.delta[p][c].iter().copied()).collect::<BTreeSet<_>>().into_iter().collect()
    };
    let start: Pair = (vec![a1.initial], vec![a2.initial]);
    let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if accepting(&a1, &pair.0) != accepting(&a2, &pair.1) {
            let mut w = Vec::new();
            let mut cur = pair;
            while let Some(Some((prev, c))) = parent.get(&cur) {
                w.push(*c);
                cur = prev.clone();
            }
            w.reverse();
            return Ok(Equivalence::Counterexample(w));
        }
        for c in 0..k {
            let next = (step(&a1, &pair.0, c), step(&a2, &pair.1, c));
            if next.0.is_empty() && next.1.is_empty() {
                continue;
            }
            if !parent.contains_key(&next) {
                if parent.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                parent.insert(next.clone(), Some((pair.clone(), c)));
                queue.push_back(next);
            }
        }
    }
    Ok(Equivalence::Equal)
}

/// Deterministic automaton accepting exactly the given finite set of words.
pub fn trie(name: &str, alphabet: Vec<String>, words: impl IntoIterator<Item = Vec<usize>>) -> Automaton {
    let mut a = Automaton::new(name, Kind::Dfa, alphabet);
    for w in words {
        let mut p = a.initial;
        for &c in &w {
            p = match a.delta[p][c].first() {
                Some(&q) => q,
                None => {
                    let q = a.add_state(format!("s{}", a.num_states()));
                    a.add_edge(p, c, q);
                    q
                }
            };
        }
        a.finals[p] = true;
    }
    a
}

/// Product with the words of length at most `max_len`.
pub fn truncate(a: &Automaton, max_len: usize) -> Automaton {
    let mut out = Automaton::new(a.name.clone(), a.kind, a.alphabet.clone());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    index.insert((a.initial, 0), 0);
    out.state_names[0] = format!("{}@0", a.state_names[a.initial]);
    out.finals[0] = a.finals[a.initial];
    let mut queue = VecDeque::from([(a.initial, 0usize)]);
    while let Some((p, d)) = queue.pop_front() {
        if d == max_len {
            continue;
        }
        let i = index[&(p, d)];
        for c in 0..a.alphabet.len() {
            for &q in &a.delta[p][c] {
                let j = *index.entry((q, d + 1)).or_insert_with(|| {
                    queue.push_back((q, d + 1));
                    let j = out.add_state(format!("{}@{}", a.state_names[q], d + 1));
                    out.finals[j] = a.finals[q];
                    j
                });
                out.add_edge(i, c, j);
            }
        }
    }
    out
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_automaton(self))
    }
}

pub fn serialize_automaton(a: &Automaton) -> String {
    let mut out = format!("automaton {} {}\n", a.name, a.kind.as_str());
    out += &format!("states {}\n", a.state_names.join(" "));
    out += &format!("alphabet {}\n", a.alphabet.join(" "));
    out += &format!("initial {}\n", a.state_names[a.initial]);
    let finals: Vec<&str> = (0..a.num_states()).filter(|&p| a.finals[p]).map(|p| a.state_names[p].as_str()).collect();
    out += &format!("final {}\n", finals.join(" ")).replace("final \n", "final\n");
    for p in 0..a.num_states() {
        for (c, qs) in a.delta[p].iter().enumerate() {
            for &q in qs {
                out += &format!("edge {} {} {}\n", a.state_names[p], a.alphabet[c], a.state_names[q]);
            }
        }
    }
    out
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let syntax = |line: usize, msg: &str| Error::Syntax { line, msg: msg.to_owned() };
    let semantic = |line: usize, msg: String| Error::Semantic { line, msg };
    let mut header: Option<(String, Kind)> = None;
    let mut states: Vec<String> = Vec::new();
    let mut alphabet: Vec<String> = Vec::new();
    let mut initial: Option<(usize, String)> = None;
    let mut finals: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tok: Vec<&str> = body.split_whitespace().collect();
        let Some((&key, args)) = tok.split_first() else { continue };
        match key {
            "automaton" => {
                let [name, kind] = args else { return Err(syntax(line, "expected `automaton <name> <nfa|dfa>`")) };
                let kind = match *kind {
                    "nfa" => Kind::Nfa,
                    "dfa" => Kind::Dfa,
                    _ => return Err(syntax(line, "kind must be nfa or dfa")),
                };
                header = Some((name.to_string(), kind));
            }
            "states" => states.extend(args.iter().map(|s| s.to_string())),
            "alphabet" => alphabet.extend(args.iter().map(|s| s.to_string())),
            "initial" => {
                let [q] = args else { return Err(syntax(line, "expected `initial <state>`")) };
                initial = Some((line, q.to_string()));
            }
            "final" => finals.extend(args.iter().map(|s| (line, s.to_string()))),
            "edge" => {
                let [p, c, q] = args else { return Err(syntax(line, "expected `edge <state> <symbol> <state>`")) };
                edges.push((line, p.to_string(), c.to_string(), q.to_string()));
            }
            _ => return Err(syntax(line, &format!("unknown keyword `{key}`"))),
        }
    }
    let (name, kind) = header.ok_or_else(|| syntax(1, "missing `automaton` header"))?;
    let (iline, iname) = initial.ok_or_else(|| syntax(1, "missing `initial` line"))?;
    let sid: HashMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if sid.len() != states.len() {
        return Err(semantic(1, "duplicate state name".into()));
    }
    let lookup = |line: usize, s: &str| sid.get(s).copied().ok_or_else(|| semantic(line, format!("unknown state `{s}`")));
    let mut a = Automaton {
        name,
        kind,
        alphabet: alphabet.clone(),
        state_names: states.clone(),
        initial: lookup(iline, &iname)?,
        finals: vec![false; states.len()],
        delta: vec![vec![Vec::new(); alphabet.len()]; states.len()],
    };
    for (line, f) in &finals {
        a.finals[lookup(*line, f)?] = true;
    }
    for (line, p, c, q) in &edges {
        let ci = a.letter(c).ok_or_else(|| semantic(*line, format!("unknown symbol `{c}`")))?;
        let (pi, qi) = (lookup(*line, p)?, lookup(*line, q)?);
        a.add_edge(pi, ci, qi);
        if kind == Kind::Dfa && a.delta[pi][ci].len() > 1 {
            return Err(semantic(*line, format!("dfa has two `{c}` edges from `{p}`")));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    /// Words over {a,b} whose second-to-last letter is `a`.
    fn penultimate_a() -> Automaton {
        let mut n = Automaton::new("pen", Kind::Nfa, ab());
        let (s1, s2) = (n.add_state("s1"), n.add_state("s2"));
        n.add_edge(0, 0, 0);
        n.add_edge(0, 1, 0);
        n.add_edge(0, 0, s1);
        n.add_edge(s1, 0, s2);
        n.add_edge(s1, 1, s2);
        n.finals[s2] = true;
        n
    }

    fn all_words(k: usize, max: usize) -> Vec<Vec<usize>> {
        crate::machine::words_up_to(&(0..k).collect::<Vec<_>>(), max)
    }

    #[test]
    fn determinize_agrees_on_short_words() {
        let n = penultimate_a();
        let d = determinize(&n, 100).unwrap();
        assert!(d.is_deterministic());
        assert_eq!(d.num_states(), 4);
        for w in all_words(2, 8) {
            assert_eq!(n.accepts(&w).unwrap(), d.accepts(&w).unwrap());
            let pen = w.len() >= 2 && w[w.len() - 2] == 0;
            assert_eq!(n.accepts(&w).unwrap(), pen);
        }
        assert!(matches!(determinize(&n, 2), Err(Error::BudgetExceeded(2))));
    }

    #[test]
    fn one_state_star() {
        let mut n = Automaton::new("star", Kind::Nfa, vec!["a".into()]);
        n.add_edge(0, 0, 0);
        n.finals[0] = true;
        assert!(determinize(&n, 10).unwrap().num_states() <= 2);
    }

    #[test]
    fn minimize_is_idempotent_and_canonical() {
        let d = determinize(&penultimate_a(), 100).unwrap();
        let m1 = minimize(&d).unwrap();
        assert_eq!(m1.num_states(), 4);
        assert_eq!(minimize(&m1).unwrap(), m1);
        let t = trie("t", ab(), all_words(2, 3).into_iter().filter(|w| w.len() >= 2 && w[w.len() - 2] == 0));
        let other = minimize(&truncate(&m1, 3)).unwrap();
        assert_eq!(minimize(&t).unwrap().delta, other.delta);
    }

    #[test]
    fn minimize_adds_dead_state() {
        let t = trie("t", ab(), [vec![0]]);
        assert_eq!(minimize(&t).unwrap().num_states(), 3);
    }

    #[test]
    fn equivalence_and_counterexamples() {
        let n = penultimate_a();
        assert_eq!(equivalent(&n, &n, 100).unwrap(), Equivalence::Equal);
        let mut all = Automaton::new("all", Kind::Dfa, ab());
        all.add_edge(0, 0, 0);
        all.add_edge(0, 1, 0);
        all.finals[0] = true;
        let none = Automaton::new("none", Kind::Dfa, ab());
        assert_eq!(equivalent(&all, &none, 100).unwrap(), Equivalence::Counterexample(vec![]));
        assert_eq!(equivalent(&n, &none, 100).unwrap(), Equivalence::Counterexample(vec![0, 0]));
        let d = determinize(&n, 100).unwrap();
        assert_eq!(equivalent(&n, &d, 100).unwrap(), Equivalence::Equal);
        let c = Automaton::new("c", Kind::Dfa, vec!["c".into()]);
        assert!(matches!(equivalent(&n, &c, 100), Err(Error::AlphabetMismatch(..))));
    }

    #[test]
    fn text_round_trip() {
        let n = penultimate_a();
        let text = serialize_automaton(&n);
        assert_eq!(parse_automaton(&text).unwrap(), n);
        assert!(parse_automaton("automaton x dfa\nstates p\nalphabet a\ninitial p\nedge p a p\nedge p a q\n").is_err());
        assert!(matches!(parse_automaton("states p\nbogus\n"), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn membership_edge_cases() {
        let mut a = Automaton::new("e", Kind::Nfa, ab());
        assert!(!a.accepts(&[]).unwrap());
        a.finals[0] = true;
        assert!(a.accepts(&[]).unwrap());
        assert!(a.accepts(&[7]).is_err());
        assert_eq!(a.parse_word("ab").unwrap(), vec![0, 1]);
    }
}
