//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use rvq::induction::{apply_arrow, LocalInverse, MoveKind, ReverseResolver, Step};
use rvq::GeneralizedPermutation;

pub fn gp(s: &str) -> GeneralizedPermutation {
    s.parse().unwrap()
}

/// Plain breadth-first closure keyed by the displayed text.
pub fn brute_force_class(seed: &GeneralizedPermutation) -> HashSet<String> {
    let mut seen = HashSet::from([seed.to_string()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(v) = queue.pop_front() {
        for k in MoveKind::BOTH {
            if let Ok(a) = apply_arrow(&v, k) {
                if seen.insert(a.target.to_string()) {
                    queue.push_back(a.target);
                }
            }
        }
    }
    seen
}

/// Arf invariant of the quadratic form with `q(e_α) = 1` on every letter
/// and polarization the intersection form mod 2 (parity of the spin
/// structure for genuine permutations).
pub fn arf_invariant(g: &GeneralizedPermutation) -> u8 {
    let d = g.d();
    let pos = g.positions();
    // crossing of letters a and b (genuine: top position, bottom position)
    let omega = |x: u64, y: u64| -> u8 {
        let mut s = 0;
        for a in 0..d {
            for b in 0..d {
                if x >> a & 1 == 1 && y >> b & 1 == 1 {
                    let ((ta, ba), (tb, bb)) = (pos[a], pos[b]);
                    if (ta < tb) != (ba < bb) {
                        s ^= 1;
                    }
                }
            }
        }
        s
    };
    let q = |x: u64| -> u8 {
        let mut s = (x.count_ones() % 2) as u8;
        for a in 0..d {
            for b in a + 1..d {
                if x >> a & 1 == 1 && x >> b & 1 == 1 {
                    s ^= omega(1 << a, 1 << b);
                }
            }
        }
        s
    };
    let mut vs: Vec<u64> = (0..d).map(|i| 1u64 << i).collect();
    let mut arf = 0;
    while let Some(a) = vs.pop() {
        let Some(j) = vs.iter().position(|&v| omega(a, v) == 1) else { continue };
        let b = vs.remove(j);
        arf ^= q(a) & q(b);
        for v in vs.iter_mut() {
            let (va, vb) = (omega(*v, a), omega(*v, b));
            if vb == 1 {
                *v ^= a;
            }
            if va == 1 {
                *v ^= b;
            }
        }
    }
    arf
}

/// Random walk with reversed steps wherever a local inverse exists.
pub fn random_mixed_walk<R: Rng>(base: &GeneralizedPermutation, len: usize, rng: &mut R) -> Vec<Step> {
    let mut cur = base.clone();
    let mut walk = Vec::new();
    for _ in 0..len {
        let mut opts = Vec::new();
        for k in MoveKind::BOTH {
            if let Ok(a) = apply_arrow(&cur, k) {
                opts.push((Step::forward(k), a.target));
            }
            if let Ok(a) = LocalInverse.reverse(&cur, k) {
                opts.push((Step::backward(k), a.source));
            }
        }
        if opts.is_empty() {
            break;
        }
        let (s, next) = opts.swap_remove(rng.gen_range(0..opts.len()));
        walk.push(s);
        cur = next;
    }
    walk
}

/// Cover orders computed from the rule: odd `o` lifts to `o + 1`, even
/// `o` to two copies of `o / 2`.
pub fn cover_orders(orders: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = orders.iter().flat_map(|&o| if o % 2 != 0 { vec![o + 1] } else { vec![o / 2, o / 2] }).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}
