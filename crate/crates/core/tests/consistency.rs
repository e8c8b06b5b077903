//! The index-tuple definition of consistency between the state sequences
//! of two adjacent cells, checked against the time-ordered replay used by
//! the NFA construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrtm::crossing::{consistent_trajectories, Trajectory};
use wrtm::Move;

#[derive(Clone, Copy)]
struct Reading {
    /// Only crossing exits may break the default direction.
    parity: bool,
    /// An arrival is the visit right after the crossing that produced it.
    adjacency: bool,
}

const LITERAL: Reading = Reading { parity: false, adjacency: false };
const PARITY: Reading = Reading { parity: true, adjacency: false };
const FULL: Reading = Reading { parity: true, adjacency: true };

struct Side<'a> {
    states: &'a [usize],
    succ: &'a [usize],
    dirs: &'a [Move],
}

/// Searches index tuples `i_1..i_t`, `h_1..h_t` (1-based), crossing by crossing.
fn definition(left: &Side, right: &Side, r: Reading) -> bool {
    let (k, l) = (left.states.len(), right.states.len());
    if k == 0 || l == 0 || left.dirs.len() < k || right.dirs.len() < l {
        return false;
    }
    search(left, right, r, 1, 0, 0, 0, 0)
}

#[allow(clippy::too_many_arguments)]
fn search(left: &Side, right: &Side, r: Reading, j: usize, last_i: usize, last_h: usize, mi: u32, mh: u32) -> bool {
    let (k, l) = (left.states.len(), right.states.len());
    let odd = j % 2 == 1;
    let (i_lo, i_hi) = match j {
        1 => (1, k),
        _ if !odd && r.adjacency => (last_i + 1, last_i + 1),
        _ if !odd => (last_i + 1, k),
        _ => (last_i, k),
    };
    let (h_lo, h_hi) = match j {
        1 => (1, 1),
        _ if odd && r.adjacency => (last_h + 1, last_h + 1),
        _ if odd => (last_h + 1, l),
        _ => (last_h, l),
    };
    for i in i_lo..=i_hi.min(k) {
        for h in h_lo..=h_hi.min(l) {
            let ok = if odd {
                left.succ[i - 1] == right.states[h - 1] && left.dirs[i - 1] == Move::R
            } else {
                right.succ[h - 1] == left.states[i - 1] && right.dirs[h - 1] == Move::L
            };
            if !ok {
                continue;
            }
            let (mut mi2, mut mh2) = (mi, mh);
            if !r.parity || odd {
                mi2 |= 1 << i;
            }
            if !r.parity || !odd {
                mh2 |= 1 << h;
            }
            if odd && i == k {
                let left_ok = (1..=k).all(|x| mi2 >> x & 1 == 1 || left.dirs[x - 1] == Move::L);
                let right_ok = (1..=l).all(|x| mh2 >> x & 1 == 1 || right.dirs[x - 1] == Move::R);
                if left_ok && right_ok {
                    return true;
                }
                continue;
            }
            if search(left, right, r, j + 1, i, h, mi2, mh2) {
                return true;
            }
        }
    }
    false
}

fn traj(succ: &[usize], dirs: &[Move]) -> Trajectory {
    Trajectory { rewrites: vec![0; succ.len() + 1], successors: succ.to_vec(), directions: dirs.to_vec() }
}

fn dirs(s: &str) -> Vec<Move> {
    s.chars().map(|c| if c == 'R' { Move::R } else { Move::L }).collect()
}

fn replay(ls: &[usize], lsucc: &[usize], ld: &[Move], rs: &[usize], rsucc: &[usize], rd: &[Move]) -> bool {
    consistent_trajectories(ls, &traj(lsucc, ld), rs, &traj(rsucc, rd))
}

fn check(ls: &[usize], lsucc: &[usize], ld: &[Move], rs: &[usize], rsucc: &[usize], rd: &[Move]) {
    let left = Side { states: ls, succ: lsucc, dirs: ld };
    let right = Side { states: rs, succ: rsucc, dirs: rd };
    let want = definition(&left, &right, FULL);
    assert_eq!(
        replay(ls, lsucc, ld, rs, rsucc, rd),
        want,
        "left {ls:?} {lsucc:?} {ld:?} right {rs:?} {rsucc:?} {rd:?}"
    );
    // the weaker readings only ever admit more
    if want {
        assert!(definition(&left, &right, PARITY));
        assert!(definition(&left, &right, LITERAL));
    }
}

/// All sequences of length `len` over `0..base`.
fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    (0..base.pow(len as u32))
        .map(|mut v| {
            (0..len)
                .map(|_| {
                    let d = v % base;
                    v /= base;
                    d
                })
                .collect()
        })
        .collect()
}

type SideData = (Vec<usize>, Vec<usize>, Vec<Move>);

fn sides(len: usize) -> Vec<SideData> {
    let mut out = Vec::new();
    for st in tuples(len, 2) {
        for su in tuples(len, 2) {
            for d in tuples(len, 2) {
                out.push((st.clone(), su.clone(), d.iter().map(|&x| if x == 1 { Move::R } else { Move::L }).collect()));
            }
        }
    }
    out
}

#[test]
fn replay_equals_definition_exhaustively_up_to_three() {
    for k in 1..=3 {
        for l in 1..=3 {
            let (ls, rs) = (sides(k), sides(l));
            for (a, b, c) in &ls {
                for (x, y, z) in &rs {
                    check(a, b, c, x, y, z);
                }
            }
        }
    }
}

#[test]
fn replay_equals_definition_sampled_up_to_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let side = |len: usize, rng: &mut ChaCha8Rng| -> SideData {
        let v = |rng: &mut ChaCha8Rng| (0..len).map(|_| rng.gen_range(0..2)).collect::<Vec<usize>>();
        let d = (0..len).map(|_| if rng.gen_bool(0.5) { Move::R } else { Move::L }).collect();
        (v(rng), v(rng), d)
    };
    let mut positives = 0;
    for _ in 0..200_000 {
        let k = rng.gen_range(1..=4);
        let l = rng.gen_range(1..=4);
        let (a, b, c) = side(k, &mut rng);
        let (x, y, z) = side(l, &mut rng);
        positives += usize::from(replay(&a, &b, &c, &x, &y, &z));
        check(&a, &b, &c, &x, &y, &z);
    }
    assert!(positives > 1000, "sample too thin: {positives}");
}

#[test]
fn figure_instance_satisfies_every_reading() {
    let (ls, lsucc, ld) = ([1, 2, 3], [9, 11, 14], dirs("LRR"));
    let (rs, rsucc, rd) = ([11, 12, 13, 14, 15], [0, 0, 3, 0, 0], dirs("RRLRR"));
    let left = Side { states: &ls, succ: &lsucc, dirs: &ld };
    let right = Side { states: &rs, succ: &rsucc, dirs: &rd };
    for r in [LITERAL, PARITY, FULL] {
        assert!(definition(&left, &right, r));
    }
    assert!(replay(&ls, &lsucc, &ld, &rs, &rsucc, &rd));
}

#[test]
fn literal_reading_admits_an_exit_that_is_never_matched() {
    // three left visits all moving right, matched as i = (1, 2, 3): visit 2
    // is the arrival of crossing 2, yet its own rightward exit has no
    // arrival on the right cell
    let (ls, lsucc, ld) = ([0, 1, 0], [5, 0, 6], dirs("RRR"));
    let (rs, rsucc, rd) = ([5, 6], [1, 0], dirs("LR"));
    let left = Side { states: &ls, succ: &lsucc, dirs: &ld };
    let right = Side { states: &rs, succ: &rsucc, dirs: &rd };
    assert!(definition(&left, &right, LITERAL));
    assert!(!definition(&left, &right, PARITY));
    assert!(!replay(&ls, &lsucc, &ld, &rs, &rsucc, &rd));
}

#[test]
fn parity_reading_admits_an_arrival_that_skips_a_visit() {
    // right visit 1 leaves left; the next head arrival from the left must be
    // visit 2, but h = (1, 1, 3) matches it to visit 3 instead
    let (ls, lsucc, ld) = ([0, 7], [5, 6], dirs("RR"));
    let (rs, rsucc, rd) = ([5, 9, 6], [7, 0, 0], dirs("LRR"));
    let left = Side { states: &ls, succ: &lsucc, dirs: &ld };
    let right = Side { states: &rs, succ: &rsucc, dirs: &rd };
    assert!(definition(&left, &right, PARITY));
    assert!(!definition(&left, &right, FULL));
    assert!(!replay(&ls, &lsucc, &ld, &rs, &rsucc, &rd));
}
