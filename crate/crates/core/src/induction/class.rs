//! Rauzy classes: closure of a seed under the defined moves.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use super::{apply_arrow, move_target, Arrow, MoveKind};
use crate::error::{Error, Result};
use crate::gp::{reduced_alphabet, Alphabet, GeneralizedPermutation, Letter};

pub const DEFAULT_CLASS_BUDGET: usize = 10_000_000;

/// Whether vertices are labeled permutations or reduced forms (letters
/// renamed by first appearance, top row first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassMode {
    Labeled,
    Reduced,
}

impl std::fmt::Display for ClassMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassMode::Labeled => "labeled",
            ClassMode::Reduced => "reduced",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Incoming {
    None,
    One(u32),
    Many,
}

#[derive(Clone)]
pub struct RauzyClass {
    pub(crate) mode: ClassMode,
    pub(crate) alphabet: Arc<Alphabet>,
    pub(crate) keys: Vec<Vec<u8>>,
    pub(crate) index: HashMap<Vec<u8>, u32>,
    /// Per vertex, the target of the top and bottom move.
    pub(crate) out: Vec<[Option<u32>; 2]>,
    /// Per vertex, the winners of the top and bottom move.
    pub(crate) winners: Vec<[Option<Letter>; 2]>,
    pub(crate) incoming: Vec<[Incoming; 2]>,
    pub(crate) complete: bool,
}

impl std::fmt::Debug for RauzyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RauzyClass")
            .field("mode", &self.mode)
            .field("base", &self.vertex(0).to_string())
            .field("vertices", &self.len())
            .field("complete", &self.complete)
            .finish()
    }
}

impl RauzyClass {
    pub fn mode(&self) -> ClassMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn base(&self) -> GeneralizedPermutation {
        self.vertex(0)
    }

    pub fn vertex(&self, i: usize) -> GeneralizedPermutation {
        GeneralizedPermutation::from_key(self.alphabet.clone(), &self.keys[i])
    }

    pub fn vertices(&self) -> impl Iterator<Item = GeneralizedPermutation> + '_ {
        (0..self.len()).map(move |i| self.vertex(i))
    }

    pub fn target(&self, i: usize, kind: MoveKind) -> Option<usize> {
        self.out[i][kind.index()].map(|x| x as usize)
    }

    pub fn winner(&self, i: usize, kind: MoveKind) -> Option<Letter> {
        self.winners[i][kind.index()]
    }

    pub fn arrow_count(&self) -> usize {
        self.out.iter().map(|o| o.iter().flatten().count()).sum()
    }

    /// Key used for lookups: the labeled key, or the reduced key in reduced
    /// mode.
    pub fn lookup_key(&self, gp: &GeneralizedPermutation) -> Vec<u8> {
        match self.mode {
            ClassMode::Labeled => gp.key(),
            ClassMode::Reduced => gp.reduced_key(),
        }
    }

    /// Index of `gp` in the class. In reduced mode any relabeling of a
    /// vertex is found.
    pub fn find(&self, gp: &GeneralizedPermutation) -> Option<usize> {
        if self.mode == ClassMode::Labeled && gp.alphabet().names() != self.alphabet.names() {
            return None;
        }
        if gp.d() != self.alphabet.len() {
            return None;
        }
        self.index.get(&self.lookup_key(gp)).map(|&i| i as usize)
    }

    pub fn contains(&self, gp: &GeneralizedPermutation) -> bool {
        self.find(gp).is_some()
    }

    /// Source of the unique `kind` arrow entering vertex `i`.
    pub(crate) fn incoming(&self, i: usize, kind: MoveKind) -> Incoming {
        self.incoming[i][kind.index()]
    }

    /// Source of the unique `kind` arrow entering vertex `i`, if exactly one.
    pub fn unique_source(&self, i: usize, kind: MoveKind) -> Option<usize> {
        match self.incoming[i][kind.index()] {
            Incoming::One(s) => Some(s as usize),
            _ => None,
        }
    }

    /// Shortest directed path (as move kinds) from vertex `from` to `to`.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<MoveKind>> {
        let n = self.len();
        let mut prev: Vec<Option<(u32, MoveKind)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != from {
                    let (p, k) = prev[cur].unwrap();
                    path.push(k);
                    cur = p as usize;
                }
                path.reverse();
                return Some(path);
            }
            for k in MoveKind::BOTH {
                if let Some(t) = self.target(v, k) {
                    if !seen[t] {
                        seen[t] = true;
                        prev[t] = Some((v as u32, k));
                        queue.push_back(t);
                    }
                }
            }
        }
        None
    }

    /// Every vertex reaches the base and is reached from it.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.len();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut rev: Vec<Vec<usize>> = Vec::new();
            if !forward {
                rev = vec![Vec::new(); n];
                for (v, o) in self.out.iter().enumerate() {
                    for t in o.iter().flatten() {
                        rev[*t as usize].push(v);
                    }
                }
            }
            while let Some(v) = stack.pop() {
                let next: Vec<usize> = if forward {
                    self.out[v].iter().flatten().map(|&t| t as usize).collect()
                } else {
                    rev[v].clone()
                };
                for t in next {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        reach(true) && reach(false)
    }

    pub(crate) fn rebuild_incoming(&mut self) {
        let mut inc = vec![[Incoming::None; 2]; self.len()];
        for (v, o) in self.out.iter().enumerate() {
            for (k, t) in o.iter().enumerate() {
                if let Some(t) = t {
                    let slot = &mut inc[*t as usize][k];
                    *slot = match *slot {
                        Incoming::None => Incoming::One(v as u32),
                        _ => Incoming::Many,
                    };
                }
            }
        }
        self.incoming = inc;
    }
}

pub fn enumerate_class(seed: &GeneralizedPermutation, limit: usize) -> Result<RauzyClass> {
    enumerate_class_with(seed, ClassMode::Labeled, limit)
}

/// Breadth-first closure of `seed` under the defined moves. Levels are
/// expanded in parallel and merged in a fixed order, so the vertex numbering
/// does not depend on the number of worker threads.
pub fn enumerate_class_with(seed: &GeneralizedPermutation, mode: ClassMode, limit: usize) -> Result<RauzyClass> {
    if !seed.is_irreducible() {
        return Err(Error::ReducibleSeed(seed.to_string()));
    }
    if !seed.satisfies_convention() {
        return Err(Error::ConventionViolated(seed.to_string()));
    }
    let (alphabet, base_key) = match mode {
        ClassMode::Labeled => (seed.alphabet().clone(), seed.key()),
        ClassMode::Reduced => (reduced_alphabet(seed.d()), seed.reduced_key()),
    };
    let mut class = RauzyClass {
        mode,
        alphabet: alphabet.clone(),
        keys: vec![base_key.clone()],
        index: HashMap::from([(base_key, 0)]),
        out: vec![[None; 2]],
        winners: vec![[None; 2]],
        incoming: Vec::new(),
        complete: false,
    };
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let expanded: Vec<[Option<(Vec<u8>, Letter)>; 2]> = frontier
            .par_iter()
            .map(|&v| {
                let gp = GeneralizedPermutation::from_key(alphabet.clone(), &class.keys[v as usize]);
                MoveKind::BOTH.map(|k| {
                    move_target(&gp, k).map(|(t, b, w, _)| {
                        let tgt = GeneralizedPermutation::from_parts_unchecked(alphabet.clone(), t, b);
                        let key = match mode {
                            ClassMode::Labeled => tgt.key(),
                            ClassMode::Reduced => tgt.reduced_key(),
                        };
                        (key, w)
                    })
                })
            })
            .collect();
        let mut next = Vec::new();
        for (&v, targets) in frontier.iter().zip(expanded) {
            for (k, t) in targets.into_iter().enumerate() {
                let Some((key, w)) = t else { continue };
                let idx = match class.index.get(&key) {
                    Some(&i) => i,
                    None => {
                        if class.keys.len() >= limit {
                            class.rebuild_incoming();
                            return Err(Error::ClassBudgetExceeded(Box::new(class)));
                        }
                        let i = class.keys.len() as u32;
                        class.index.insert(key.clone(), i);
                        class.keys.push(key);
                        class.out.push([None; 2]);
                        class.winners.push([None; 2]);
                        next.push(i);
                        i
                    }
                };
                class.out[v as usize][k] = Some(idx);
                class.winners[v as usize][k] = Some(w);
            }
        }
        frontier = next;
    }
    class.complete = true;
    class.rebuild_incoming();
    Ok(class)
}

/// DOT rendering of a class. Edges are labeled with the move and its winner.
pub fn export_graph(class: &RauzyClass) -> String {
    let mut s = String::from("digraph rauzy_class {\n");
    if !class.complete {
        let _ = writeln!(s, "  // truncated after {} vertices", class.len());
        s.push_str("  label=\"truncated\";\n");
    }
    for v in 0..class.len() {
        let _ = writeln!(s, "  v{v} [label=\"{}\"];", class.vertex(v));
    }
    for v in 0..class.len() {
        for k in MoveKind::BOTH {
            if let (Some(t), Some(w)) = (class.target(v, k), class.winner(v, k)) {
                let _ = writeln!(
                    s,
                    "  v{v} -> v{t} [label=\"{}:{}\"];",
                    k.letter(),
                    class.alphabet.name(w)
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

impl RauzyClass {
    /// The forward arrow of `kind` out of vertex `i`.
    pub fn arrow(&self, i: usize, kind: MoveKind) -> Result<Arrow> {
        apply_arrow(&self.vertex(i), kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn torus_class() {
        let c = enumerate_class(&gp("1 2 / 2 1"), 100).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.arrow_count(), 2);
        let dot = export_graph(&c);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("v0 -> v0"));
    }

    #[test]
    fn reducible_seed() {
        assert!(matches!(enumerate_class(&gp("1 2 / 1 2"), 10), Err(Error::ReducibleSeed(_))));
    }

    #[test]
    fn truncation() {
        let err = enumerate_class(&gp("1 2 3 4 5 / 5 4 3 2 1"), 3).unwrap_err();
        match err {
            Error::ClassBudgetExceeded(c) => {
                assert_eq!(c.len(), 3);
                assert!(!c.is_complete());
                assert!(export_graph(&c).contains("truncated"));
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn reduced_class_of_tau4() {
        let c = enumerate_class_with(&gp("1 2 3 4 / 4 3 2 1"), ClassMode::Reduced, 1000).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.is_strongly_connected());
        assert!(c.contains(&gp("a b c d / d c b a")));
    }
}
