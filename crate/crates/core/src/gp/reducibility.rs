//! Decompositions into corners and the reducibility test.
//!
//! A decomposition cuts a prefix and a suffix off each row. The four corner
//! sets are the letters of those prefixes/suffixes. Writing `B = tl ∩ tr`,
//! `C = bl ∩ br`, `A = tl ∖ B`, `D = tr ∖ B`, the decomposition is a
//! reduction when `bl = A ∪ C`, `br = D ∪ C`, the four sets are pairwise
//! disjoint, and the empty corners follow one of the allowed patterns.
//!
//! Prefix and suffix of a row may share exactly one position; the strict
//! criterion was checked against linear-programming feasibility of the
//! suspension conditions on every strict permutation with at most five
//! letters.

use super::{GeneralizedPermutation, LetterSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmptyCornerPattern {
    /// Genuine permutation with a proper prefix of the top row equal (as a
    /// set) to the prefix of the bottom row.
    ClassicalPrefix,
    NoEmptyCorner,
    /// Exactly one empty corner, on the left.
    OneLeft,
    /// Top-left and bottom-left both empty.
    TwoLeft,
    /// Top-right and bottom-right both empty.
    TwoRight,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Decomposition {
    /// Lengths of the four cut pieces: top prefix, top suffix, bottom
    /// prefix, bottom suffix.
    pub tl_len: usize,
    pub tr_len: usize,
    pub bl_len: usize,
    pub br_len: usize,
    #[serde(skip)]
    pub tl: LetterSet,
    #[serde(skip)]
    pub tr: LetterSet,
    #[serde(skip)]
    pub bl: LetterSet,
    #[serde(skip)]
    pub br: LetterSet,
    pub pattern: EmptyCornerPattern,
}

impl Decomposition {
    /// Cut indices `(i1, i2, i3, i4)` in 1-based position numbering: the top
    /// prefix is `1..=i1`, the top suffix `i2+1..=ell`, the bottom prefix
    /// `ell+1..=i3`, the bottom suffix `i4+1..=ell+m`.
    pub fn cuts(&self, ell: usize, m: usize) -> (usize, usize, usize, usize) {
        (self.tl_len, ell - self.tr_len, ell + self.bl_len, ell + m - self.br_len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum Reducibility {
    Irreducible,
    Reducible(Decomposition),
}

impl Reducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Reducibility::Irreducible)
    }
}

fn prefix_sets(row: &[u8]) -> Vec<LetterSet> {
    let mut out = Vec::with_capacity(row.len() + 1);
    let mut acc = LetterSet::default();
    out.push(acc);
    for &l in row {
        acc.insert(l);
        out.push(acc);
    }
    out
}

fn suffix_sets(row: &[u8]) -> Vec<LetterSet> {
    let mut out = Vec::with_capacity(row.len() + 1);
    let mut acc = LetterSet::default();
    out.push(acc);
    for &l in row.iter().rev() {
        acc.insert(l);
        out.push(acc);
    }
    out
}

/// All admissible `(prefix length, suffix length)` pairs of a row of length n.
fn splits(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).flat_map(move |a| {
        (0..=n)
            .filter(move |&c| a + c <= n || (a + c == n + 1 && a > 0 && c > 0))
            .map(move |c| (a, c))
    })
}

pub(super) fn analyse(gp: &GeneralizedPermutation) -> Reducibility {
    if gp.is_genuine() {
        return classical(gp);
    }
    let (top, bottom) = (gp.top(), gp.bottom());
    let (tp, ts) = (prefix_sets(top), suffix_sets(top));
    let (bp, bs) = (prefix_sets(bottom), suffix_sets(bottom));
    for (a, c) in splits(top.len()) {
        let (tl, tr) = (tp[a], ts[c]);
        let b_set = tl.intersection(tr);
        let a_set = tl.difference(b_set);
        let d_set = tr.difference(b_set);
        for (e, f) in splits(bottom.len()) {
            let (bl, br) = (bp[e], bs[f]);
            let c_set = bl.intersection(br);
            if bl != a_set.union(c_set) || br != d_set.union(c_set) {
                continue;
            }
            let parts = [a_set, b_set, c_set, d_set];
            let disjoint = (0..4).all(|i| (i + 1..4).all(|j| parts[i].is_disjoint(parts[j])));
            if !disjoint {
                continue;
            }
            let empty = [tl.is_empty(), tr.is_empty(), bl.is_empty(), br.is_empty()];
            let pattern = match empty.iter().filter(|&&x| x).count() {
                0 => Some(EmptyCornerPattern::NoEmptyCorner),
                1 if empty[0] || empty[2] => Some(EmptyCornerPattern::OneLeft),
                2 if empty[0] && empty[2] => Some(EmptyCornerPattern::TwoLeft),
                2 if empty[1] && empty[3] => Some(EmptyCornerPattern::TwoRight),
                _ => None,
            };
            if let Some(pattern) = pattern {
                return Reducibility::Reducible(Decomposition {
                    tl_len: a,
                    tr_len: c,
                    bl_len: e,
                    br_len: f,
                    tl,
                    tr,
                    bl,
                    br,
                    pattern,
                });
            }
        }
    }
    Reducibility::Irreducible
}

fn classical(gp: &GeneralizedPermutation) -> Reducibility {
    let d = gp.d();
    let tp = prefix_sets(gp.top());
    let bp = prefix_sets(gp.bottom());
    for k in 1..d {
        if tp[k] == bp[k] {
            return Reducibility::Reducible(Decomposition {
                tl_len: k,
                tr_len: 0,
                bl_len: k,
                br_len: 0,
                tl: tp[k],
                tr: LetterSet::default(),
                bl: bp[k],
                br: LetterSet::default(),
                pattern: EmptyCornerPattern::ClassicalPrefix,
            });
        }
    }
    Reducibility::Irreducible
}

impl GeneralizedPermutation {
    /// Letters of a corner, by name, for reporting.
    pub fn corner_names(&self, set: LetterSet) -> Vec<String> {
        set.iter().map(|l| self.name(l).to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn genuine_examples() {
        assert!(gp("1 2 / 2 1").is_irreducible());
        assert!(gp("1 2 3 4 / 4 3 2 1").is_irreducible());
        let r = gp("1 2 3 4 / 1 2 3 4").reducibility();
        match r {
            Reducibility::Reducible(dec) => {
                assert_eq!(dec.pattern, EmptyCornerPattern::ClassicalPrefix);
                assert_eq!(dec.tl_len, 1);
            }
            _ => panic!("expected reducible"),
        }
        assert!(!gp("1 2 3 / 2 1 3").is_irreducible());
    }

    #[test]
    fn strict_examples() {
        assert!(gp("1 2 3 A A 4 / 4 3 B B 2 1").is_irreducible());
        assert!(gp("0 A 1 2 A 3 / 3 B 2 1 B 0").is_irreducible());
        assert!(!gp("A A 1 / B B 1").is_irreducible());
        assert!(!gp("1 A A / 1 B B").is_irreducible());
    }

    #[test]
    fn splits_cover_overlap() {
        let v: Vec<_> = splits(2).collect();
        assert!(v.contains(&(1, 2)));
        assert!(v.contains(&(2, 1)));
        assert!(!v.contains(&(0, 3)));
        assert!(!v.contains(&(2, 2)));
    }
}
