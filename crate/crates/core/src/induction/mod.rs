//! Top and bottom Rauzy–Veech moves.
//!
//! For a top move the winner is the last top letter and the loser the last
//! bottom letter; a bottom move swaps the roles. The loser is taken off the
//! end of its row and reinserted next to the partner occurrence of the
//! winner. When the winner is a duplicate letter the loser crosses to the
//! other row, which changes the type `(ell, m)`.

mod cache;
mod class;
mod reverse;

use std::fmt;

use crate::error::{Error, Result};
use crate::gp::{GeneralizedPermutation, Letter};

pub use cache::{cache_dir, cache_path, load_class, save_class};
pub use class::{enumerate_class, enumerate_class_with, export_graph, ClassMode, RauzyClass, DEFAULT_CLASS_BUDGET};
pub use reverse::{LocalInverse, ReverseResolver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Top,
    Bottom,
}

impl MoveKind {
    pub const BOTH: [MoveKind; 2] = [MoveKind::Top, MoveKind::Bottom];

    pub fn index(self) -> usize {
        match self {
            MoveKind::Top => 0,
            MoveKind::Bottom => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            MoveKind::Top => 't',
            MoveKind::Bottom => 'b',
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Top => "top",
            MoveKind::Bottom => "bottom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: GeneralizedPermutation,
    pub kind: MoveKind,
    pub winner: Letter,
    pub loser: Letter,
    pub target: GeneralizedPermutation,
    pub type_change: bool,
}

impl Arrow {
    pub fn winner_name(&self) -> &str {
        self.source.name(self.winner)
    }

    pub fn loser_name(&self) -> &str {
        self.source.name(self.loser)
    }
}

/// Computes the target of a move without building an [`Arrow`]. Returns
/// `None` where the move is undefined.
pub fn move_target(gp: &GeneralizedPermutation, kind: MoveKind) -> Option<(Vec<Letter>, Vec<Letter>, Letter, Letter)> {
    let (top, bottom) = (gp.top(), gp.bottom());
    match kind {
        MoveKind::Top => {
            let (t, b) = step(top, bottom)?;
            Some((t.0, b, t.1, t.2))
        }
        MoveKind::Bottom => {
            let (t, b) = step(bottom, top)?;
            Some((b, t.0, t.1, t.2))
        }
    }
}

/// Move with the winner at the end of `win` and the loser at the end of
/// `lose`. Returns `((new_win, winner, loser), new_lose)`.
#[allow(clippy::type_complexity)]
fn step(win: &[Letter], lose: &[Letter]) -> Option<((Vec<Letter>, Letter, Letter), Vec<Letter>)> {
    let winner = *win.last()?;
    let loser = *lose.last()?;
    if winner == loser {
        return None;
    }
    let n = lose.len();
    if let Some(q) = lose[..n - 1].iter().position(|&x| x == winner) {
        // partner in the loser's row
        let mut nl = Vec::with_capacity(n);
        nl.extend_from_slice(&lose[..=q]);
        nl.push(loser);
        nl.extend_from_slice(&lose[q + 1..n - 1]);
        return Some(((win.to_vec(), winner, loser), nl));
    }
    // the winner is a duplicate of its own row
    let q = win[..win.len() - 1].iter().position(|&x| x == winner)?;
    let rest = &lose[..n - 1];
    let has_other_dup = rest
        .iter()
        .enumerate()
        .any(|(i, &x)| x != loser && rest[i + 1..].contains(&x));
    if !has_other_dup {
        return None;
    }
    let mut nw = Vec::with_capacity(win.len() + 1);
    nw.extend_from_slice(&win[..q]);
    nw.push(loser);
    nw.extend_from_slice(&win[q..]);
    Some(((nw, winner, loser), rest.to_vec()))
}

pub fn apply_arrow(gp: &GeneralizedPermutation, kind: MoveKind) -> Result<Arrow> {
    let (top, bottom, winner, loser) =
        move_target(gp, kind).ok_or_else(|| Error::MoveUndefined { kind, gp: gp.to_string() })?;
    let type_change = top.len() != gp.ell();
    let target = GeneralizedPermutation::from_parts_unchecked(gp.alphabet().clone(), top, bottom);
    Ok(Arrow { source: gp.clone(), kind, winner, loser, target, type_change })
}

/// One step of a walk; `reversed` steps traverse an arrow backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub kind: MoveKind,
    pub reversed: bool,
}

impl Step {
    pub fn forward(kind: MoveKind) -> Self {
        Step { kind, reversed: false }
    }

    pub fn backward(kind: MoveKind) -> Self {
        Step { kind, reversed: true }
    }

    pub fn inverse(self) -> Self {
        Step { kind: self.kind, reversed: !self.reversed }
    }

    pub fn to_char(self) -> char {
        let c = self.kind.letter();
        if self.reversed {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// Parses a walk over `t`, `b` (forward) and `T`, `B` (reversed).
pub fn parse_walk(s: &str) -> Result<Vec<Step>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            't' => Ok(Step::forward(MoveKind::Top)),
            'b' => Ok(Step::forward(MoveKind::Bottom)),
            'T' => Ok(Step::backward(MoveKind::Top)),
            'B' => Ok(Step::backward(MoveKind::Bottom)),
            other => Err(Error::BadWalkStep(other)),
        })
        .collect()
}

pub fn walk_to_string(w: &[Step]) -> String {
    w.iter().map(|s| s.to_char()).collect()
}

pub fn inverse_walk(w: &[Step]) -> Vec<Step> {
    w.iter().rev().map(|s| s.inverse()).collect()
}

/// A traversed arrow together with its direction.
#[derive(Debug, Clone)]
pub struct WalkedArrow {
    pub arrow: Arrow,
    pub reversed: bool,
}

/// Follows a walk from `base`, resolving reversed steps with `resolver`.
pub fn follow_walk(
    base: &GeneralizedPermutation,
    walk: &[Step],
    resolver: Option<&dyn ReverseResolver>,
) -> Result<(Vec<WalkedArrow>, GeneralizedPermutation)> {
    let mut cur = base.clone();
    let mut out = Vec::with_capacity(walk.len());
    for s in walk {
        let arrow = if s.reversed {
            resolver.ok_or(Error::NoResolver)?.reverse(&cur, s.kind)?
        } else {
            apply_arrow(&cur, s.kind)?
        };
        cur = if s.reversed { arrow.source.clone() } else { arrow.target.clone() };
        out.push(WalkedArrow { arrow, reversed: s.reversed });
    }
    Ok((out, cur))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn top_type_preserving() {
        let a = apply_arrow(&gp("1 2 3 A A 4 / 4 3 B B 2 1"), MoveKind::Top).unwrap();
        assert_eq!(a.target.to_string(), "1 2 3 A A 4 / 4 1 3 B B 2");
        assert_eq!((a.winner_name(), a.loser_name()), ("4", "1"));
        assert!(!a.type_change);
    }

    #[test]
    fn bottom_type_preserving() {
        let a = apply_arrow(&gp("1 2 3 A A 4 / 4 3 B B 2 1"), MoveKind::Bottom).unwrap();
        assert_eq!(a.target.to_string(), "1 4 2 3 A A / 4 3 B B 2 1");
        assert_eq!((a.winner_name(), a.loser_name()), ("1", "4"));
    }

    #[test]
    fn top_type_changing() {
        let a = apply_arrow(&gp("1 2 A A / B B 2 1"), MoveKind::Top).unwrap();
        assert_eq!(a.target.to_string(), "1 2 1 A A / B B 2");
        assert_eq!((a.winner_name(), a.loser_name()), ("A", "1"));
        assert!(a.type_change);
        assert_eq!((a.target.ell(), a.target.m()), (5, 3));
    }

    #[test]
    fn bottom_type_changing() {
        let a = apply_arrow(&gp("1 A A 2 / 2 1 B B"), MoveKind::Bottom).unwrap();
        assert_eq!(a.target.to_string(), "1 A A / 2 1 2 B B");
        assert!(a.type_change);
    }

    #[test]
    fn undefined_moves() {
        // winner is a top duplicate but the bottom row has no other duplicate
        let g = gp("1 2 A A / 2 1 B B");
        assert!(matches!(apply_arrow(&g, MoveKind::Top), Err(Error::MoveUndefined { .. })));
        let g = gp("1 2 / 1 2");
        assert!(apply_arrow(&g, MoveKind::Top).is_err());
        assert!(apply_arrow(&g, MoveKind::Bottom).is_err());
    }

    #[test]
    fn torus_loops() {
        let t = gp("1 2 / 2 1");
        for k in MoveKind::BOTH {
            assert_eq!(apply_arrow(&t, k).unwrap().target, t);
        }
    }

    #[test]
    fn walk_parsing() {
        let w = parse_walk("tbTB").unwrap();
        assert_eq!(walk_to_string(&w), "tbTB");
        assert_eq!(walk_to_string(&inverse_walk(&w)), "btBT");
        assert!(matches!(parse_walk("tx"), Err(Error::BadWalkStep('x'))));
    }
}
