mod common;

use std::collections::HashMap;

use common::{corpus, has_rewrite_cycle, random_machine, random_wr_machine};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrtm::halting::run_wr;
use wrtm::machine::{SymbolId, BLANK};
use wrtm::wr::{bound_visits, check_weight_reducing, lt_to_wr, time_bound_violations, visit_bound_from_time, WrVerdict};
use wrtm::{parse_machine, sim, Machine, Verdict};

#[test]
fn check_matches_closure_on_random_machines() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut orders = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let g = rng.gen_range(2..=6);
        let m = random_machine(&mut rng, n, g);
        match check_weight_reducing(&m) {
            WrVerdict::Order(o) => {
                assert!(!has_rewrite_cycle(&m));
                assert!(o.witnesses(&m));
                orders += 1;
            }
            WrVerdict::Cycle(c) => {
                assert!(has_rewrite_cycle(&m));
                // consecutive cycle symbols are rewrite edges
                for i in 0..c.len() {
                    let (s, t) = (c[i], c[(i + 1) % c.len()]);
                    assert!(m.rules().iter().any(|r| r.read == s && r.action.write == t), "{c:?}");
                }
            }
        }
    }
    assert!(orders > 50 && orders < 950, "{orders}");
}

#[test]
fn visit_bound_formula() {
    assert_eq!(visit_bound_from_time(1, 0, 2).unwrap(), 5);
    assert_eq!(visit_bound_from_time(2, 7, 3).unwrap(), 2 * 2 * 9 + 2);
    assert!(visit_bound_from_time(0, 0, 2).is_err());
}

/// Maximum number of visits to one cell, or `None` if the run does not
/// halt within `limit` steps.
fn max_visits(m: &Machine, w: &[SymbolId], limit: usize) -> Option<usize> {
    let mut tape: HashMap<i64, SymbolId> = w.iter().enumerate().map(|(i, &s)| (i as i64, s)).collect();
    let (mut pos, mut q) = (0i64, m.initial());
    let mut visits: HashMap<i64, usize> = HashMap::new();
    for _ in 0..limit {
        *visits.entry(pos).or_insert(0) += 1;
        let Some(t) = m.delta(q, *tape.get(&pos).unwrap_or(&BLANK)) else {
            return visits.values().copied().max();
        };
        tape.insert(pos, t.write);
        pos += t.dir.offset();
        q = t.next;
    }
    None
}

fn verdicts(m: &Machine, max_len: usize) -> Vec<(String, Verdict)> {
    m.words_up_to(max_len)
        .into_iter()
        .map(|w| (m.format_word(&w), run_wr(m, &w).unwrap().verdict))
        .collect()
}

#[test]
fn bound_visits_keeps_corpus_languages() {
    for (name, m) in corpus() {
        for k in 1..=4 {
            let b = bound_visits(&m, k).unwrap();
            assert!(check_weight_reducing(&b).is_order(), "{name} k={k}");
            for w in m.words_up_to(6) {
                let Some(v) = max_visits(&m, &w, 500) else { continue };
                if v > k {
                    continue;
                }
                let want = run_wr(&m, &w).unwrap().verdict;
                let got = run_wr(&b, &b.parse_word(&m.format_word(&w)).unwrap()).unwrap().verdict;
                assert_eq!(got, want, "{name} k={k} on {:?}", m.format_word(&w));
            }
        }
    }
}

const COPY: &str = "\
# walks right rewriting each symbol by itself; not weight-reducing
machine copy
endmarked false
states q0 q1
input a b
work a b
initial q0
final q1
trans q0 a q0 a R
trans q0 b q1 b R
trans q1 a q0 a R
trans q1 b q1 b R
";

#[test]
fn linear_time_machine_becomes_weight_reducing() {
    let m = parse_machine(COPY).unwrap();
    assert!(!check_weight_reducing(&m).is_order());
    assert!(time_bound_violations(&m, 1, 1, 6).unwrap().is_empty());
    let w = lt_to_wr(&m, 1, 1).unwrap();
    assert!(check_weight_reducing(&w).is_order());
    let plain = sim::enum_language(&m, 6, sim::Budget::Steps(100)).unwrap();
    let exact = sim::enum_language(&w, 6, sim::Budget::Auto).unwrap();
    let names = |l: &sim::Language, m: &Machine| l.accepted.iter().map(|x| m.format_word(x)).collect::<Vec<_>>();
    assert_eq!(names(&plain, &m), names(&exact, &w));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_wr_machines_pass_the_check(seed in any::<u64>(), n in 1usize..=4, g in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_wr_machine(&mut rng, n, g, 2.min(g - 1), 0.6);
        let v = check_weight_reducing(&m);
        prop_assert!(v.order().is_some_and(|o| o.witnesses(&m)));
    }

    #[test]
    fn bound_visits_output_is_always_wr(seed in any::<u64>(), n in 1usize..=3, g in 2usize..=5, k in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_machine(&mut rng, n, g);
        let b = bound_visits(&m, k).unwrap();
        prop_assert!(check_weight_reducing(&b).is_order());
        prop_assert_eq!(b.num_states(), m.num_states());
    }

    #[test]
    fn run_wr_always_resolves(seed in any::<u64>(), n in 1usize..=3, g in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_wr_machine(&mut rng, n, g, 2.min(g - 1), 0.7);
        for (w, v) in verdicts(&m, 4) {
            prop_assert!(v != Verdict::BudgetExceeded, "{}", w);
        }
    }

    #[test]
    fn random_wr_nfa_matches_simulation(seed in any::<u64>(), n in 1usize..=3, g in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_wr_machine(&mut rng, n, g, 2.min(g - 1), 0.7);
        let a = wrtm::crossing::to_nfa(&m).unwrap();
        prop_assert!((a.num_states() as u128) <= wrtm::crossing::nfa_state_bound_for(&m));
        for w in m.words_up_to(5) {
            let want = run_wr(&m, &w).unwrap().verdict == Verdict::Accept;
            prop_assert_eq!(a.accepts(&wrtm::crossing::word_letters(&m, &w)).unwrap(), want, "{}", m.format_word(&w));
        }
    }
}
