mod common;

use std::collections::HashMap;

use common::{corpus, words};
use wrtm::crossing::{self, StateSequence};
use wrtm::halting::{self, DivergenceCertificate};
use wrtm::machine::{SymbolId, BLANK};
use wrtm::{sim, Machine, Verdict};

const MAX_LEN: usize = 6;

#[test]
fn corpus_is_within_size_limits() {
    let c = corpus();
    assert!(c.len() >= 10);
    for (name, m) in &c {
        assert!(m.num_states() <= 3, "{name}");
        assert!(m.num_symbols() <= 4, "{name}");
        assert!(m.input_symbols().len() <= 2, "{name}");
        assert!(!m.is_end_marked(), "{name}");
        assert!(m.validate().is_empty(), "{name}");
        assert!(wrtm::wr::check_weight_reducing(m).is_order(), "{name}");
    }
}

#[test]
fn nfa_membership_equals_exact_simulation() {
    for (name, m) in corpus() {
        let a = crossing::to_nfa(&m).unwrap();
        for w in words(&m, MAX_LEN) {
            let want = halting::run_wr(&m, &w).unwrap().verdict == Verdict::Accept;
            let got = a.accepts(&crossing::word_letters(&m, &w)).unwrap();
            assert_eq!(got, want, "{name} on {:?}", m.format_word(&w));
        }
    }
}

#[test]
fn nfa_respects_state_bound() {
    for (name, m) in corpus() {
        let a = crossing::to_nfa(&m).unwrap();
        assert!((a.num_states() as u128) <= crossing::nfa_state_bound_for(&m), "{name}: {}", a.num_states());
    }
}

#[test]
fn runs_resolve_within_step_bound() {
    for (name, m) in corpus() {
        for w in words(&m, MAX_LEN) {
            let out = halting::run_wr(&m, &w).unwrap();
            assert_ne!(out.verdict, Verdict::BudgetExceeded, "{name}");
            if out.verdict.halted() {
                assert!((out.steps as u128) < halting::halting_step_bound(&m, w.len()), "{name}");
            } else {
                assert!(out.certificate.is_some(), "{name}");
            }
        }
    }
}

/// Per-cell visit counts of the first `limit` steps.
fn visit_counts(m: &Machine, w: &[SymbolId], limit: usize) -> HashMap<i64, usize> {
    let mut tape: HashMap<i64, SymbolId> = w.iter().enumerate().map(|(i, &s)| (i as i64, s)).collect();
    let (mut pos, mut q) = (0i64, m.initial());
    let mut visits = HashMap::new();
    for _ in 0..limit {
        *visits.entry(pos).or_insert(0) += 1;
        let cur = *tape.get(&pos).unwrap_or(&BLANK);
        let Some(t) = m.delta(q, cur) else { break };
        tape.insert(pos, t.write);
        pos += t.dir.offset();
        q = t.next;
    }
    visits
}

#[test]
fn no_cell_is_visited_more_than_g_times() {
    for (name, m) in corpus() {
        for w in words(&m, MAX_LEN) {
            let v = visit_counts(&m, &w, 2000);
            assert!(v.values().all(|&c| c <= m.num_symbols()), "{name} on {:?}", m.format_word(&w));
        }
    }
}

#[test]
fn repeated_sequence_certificates_are_sound() {
    let mut checked = 0;
    for (name, m) in corpus() {
        for w in words(&m, 4) {
            let out = halting::run_wr(&m, &w).unwrap();
            if let Some(DivergenceCertificate::RepeatedSequence { cell1, cell2, .. }) = out.certificate {
                let extra = 10 * m.num_symbols() as u64 * (cell2 - cell1).unsigned_abs();
                let more = sim::run(&m, &w, out.steps + extra).unwrap();
                assert_eq!(more.verdict, Verdict::BudgetExceeded, "{name}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

/// The observed state sequences of accepting runs of the normalized
/// machine are chains of consistent pairs, framed by the blank half-tapes.
#[test]
fn accepting_runs_give_consistent_chains() {
    for (name, m) in corpus() {
        let norm = crossing::normalize_accept_right(&m).unwrap();
        for w in words(&m, 5) {
            if w.is_empty() {
                continue;
            }
            let wn: Vec<SymbolId> = w.iter().map(|&s| norm.symbol_id(m.symbol_name(s)).unwrap()).collect();
            let Some((verdict, seqs)) = crossing::observed_sequences(&norm, &wn, 10_000).unwrap() else {
                assert_ne!(halting::run_wr(&m, &w).unwrap().verdict, Verdict::Accept, "{name}");
                continue;
            };
            if verdict != Verdict::Accept {
                continue;
            }
            let shown: Vec<String> = seqs.iter().map(|s: &StateSequence| s.render(&norm)).collect();
            assert!(crossing::left_blank_consistent(&norm, &seqs[0]), "{name} {shown:?}");
            assert!(crossing::right_blank_consistent(&norm, seqs.last().unwrap()), "{name} {shown:?}");
            for pair in seqs.windows(2) {
                assert!(crossing::consistent(&norm, &pair[0], &pair[1]), "{name} {shown:?}");
            }
        }
    }
}

#[test]
fn nfa_of_every_corpus_machine_is_reproducible() {
    for (name, m) in corpus() {
        let a = wrtm::automaton::serialize_automaton(&crossing::to_nfa(&m).unwrap());
        let b = wrtm::automaton::serialize_automaton(&crossing::to_nfa(&m).unwrap());
        assert_eq!(a, b, "{name}");
        let back = wrtm::automaton::parse_automaton(&a).unwrap();
        assert_eq!(wrtm::automaton::serialize_automaton(&back), a, "{name}");
    }
}
