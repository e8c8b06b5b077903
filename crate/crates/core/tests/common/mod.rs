#![allow(dead_code, clippy::needless_range_loop)]

use std::fs;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wrtm::machine::{SymbolId, Word, BLANK};
use wrtm::{parse_machine, Machine, MachineBuilder, Move};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("machines")
}

/// The hand-built corpus, sorted by file name.
pub fn corpus() -> Vec<(String, Machine)> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tm"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let m = parse_machine(&fs::read_to_string(&p).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, m)
        })
        .collect()
}

pub fn corpus_machine(name: &str) -> Machine {
    corpus().into_iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no corpus machine {name}")).1
}

pub fn words(m: &Machine, max_len: usize) -> Vec<Word> {
    m.words_up_to(max_len)
}

/// `true` iff some symbol reaches itself in the rewrite relation, by
/// transitive closure.
pub fn has_rewrite_cycle(m: &Machine) -> bool {
    let g = m.num_symbols();
    let mut reach = vec![vec![false; g]; g];
    for r in m.rules() {
        if !m.is_endmarker(r.read) {
            reach[r.read][r.action.write] = true;
        }
    }
    for k in 0..g {
        for i in 0..g {
            if reach[i][k] {
                for j in 0..g {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..g).any(|s| reach[s][s])
}

fn skeleton(rng: &mut ChaCha8Rng, n: usize, g: usize, sigma: usize) -> (MachineBuilder, Vec<usize>, Vec<SymbolId>) {
    let mut b = MachineBuilder::new("random", false);
    let states: Vec<usize> = (0..n).map(|i| b.add_state(format!("q{i}")).unwrap()).collect();
    let mut syms = vec![wrtm::machine::BLANK];
    for i in 1..g {
        let name = if i <= sigma { ["a", "b"][i - 1].to_owned() } else { format!("W{i}") };
        let s = b.add_symbol(name).unwrap();
        if i <= sigma {
            b.set_input(s).unwrap();
        }
        syms.push(s);
    }
    b.set_initial(states[0]);
    for &q in &states {
        b.set_final(q, rng.gen_bool(0.4));
    }
    (b, states, syms)
}

fn random_move(rng: &mut ChaCha8Rng) -> Move {
    if rng.gen_bool(0.5) {
        Move::R
    } else {
        Move::L
    }
}

/// Any valid machine with `n` states and `g` symbols, blank included;
/// about half the pairs have a transition.
pub fn random_machine(rng: &mut ChaCha8Rng, n: usize, g: usize) -> Machine {
    let sigma = (g - 1).clamp(1, 2);
    let (mut b, states, syms) = skeleton(rng, n, g, sigma);
    for &q in &states {
        for &s in &syms {
            if rng.gen_bool(0.5) {
                let q2 = states[rng.gen_range(0..n)];
                let w = syms[rng.gen_range(1..g)];
                b.add_rule(q, s, q2, w, random_move(rng)).unwrap();
            }
        }
    }
    b.build_unchecked().unwrap()
}

/// A weight-reducing machine: symbols are ranked by a random permutation
/// and every transition writes a strictly lower non-blank symbol.
pub fn random_wr_machine(rng: &mut ChaCha8Rng, n: usize, g: usize, sigma: usize, density: f64) -> Machine {
    let (mut b, states, syms) = skeleton(rng, n, g, sigma);
    let mut order: Vec<SymbolId> = syms.clone();
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let rank = |s: SymbolId| order.iter().position(|&x| x == s).unwrap();
    for &q in &states {
        for &s in &syms {
            let lower: Vec<SymbolId> = syms.iter().copied().filter(|&t| t != BLANK && rank(t) < rank(s)).collect();
            if lower.is_empty() || !rng.gen_bool(density) {
                continue;
            }
            let w = lower[rng.gen_range(0..lower.len())];
            let q2 = states[rng.gen_range(0..n)];
            b.add_rule(q, s, q2, w, random_move(rng)).unwrap();
        }
    }
    b.build_unchecked().unwrap()
}
