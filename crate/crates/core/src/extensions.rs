//! Simple extensions: inserting one letter into a permutation, the induced
//! map on arrows, and constructive splitting of singularities.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gp::{Gap, GeneralizedPermutation, Row};
use crate::induction::{apply_arrow, Arrow, MoveKind, RauzyClass};
use crate::strata::{orbit_order, orbit_signature, turning_map, turning_orbits};

/// `extended` is obtained from `base` by inserting `letter` at two gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionWitness {
    pub base: GeneralizedPermutation,
    pub extended: GeneralizedPermutation,
    pub letter: String,
    /// Gaps of `base` receiving the two occurrences.
    pub gaps: (Gap, Gap),
    /// Whether `extended` has duplicates in both rows or none.
    pub convention_holds: bool,
}

/// Checks the two position rules for `letter` in `gp`.
pub fn check_insertion(gp: &GeneralizedPermutation, letter: &str) -> Result<()> {
    let l = gp.letter(letter)?;
    let (i, j) = gp.positions()[l as usize];
    let (ell, last) = (gp.ell(), gp.ell() + gp.m());
    if i == ell || j == ell || j == last {
        return Err(Error::IllegalPosition(format!("`{letter}` ends a row of {gp}")));
    }
    if i == 1 && j == ell + 1 {
        return Err(Error::IllegalPosition(format!("both occurrences of `{letter}` start a row of {gp}")));
    }
    Ok(())
}

pub fn insert_letter(base: &GeneralizedPermutation, letter: &str, a: Gap, b: Gap) -> Result<ExtensionWitness> {
    let extended = base.insert_letter_at(letter, a, b)?;
    check_insertion(&extended, letter)?;
    let convention_holds = extended.satisfies_convention();
    Ok(ExtensionWitness { base: base.clone(), extended, letter: letter.to_string(), gaps: (a.min(b), a.max(b)), convention_holds })
}

/// The gaps of `base` at which the two occurrences of `letter` sit in
/// `extended` (which must erase to `base`).
fn gaps_of(extended: &GeneralizedPermutation, letter: &str) -> Result<(Gap, Gap)> {
    let l = extended.letter(letter)?;
    let mut out = Vec::new();
    for row in [Row::Top, Row::Bottom] {
        let mut before = 0;
        for &x in extended.row(row) {
            if x == l {
                out.push(Gap::new(row, before));
            } else {
                before += 1;
            }
        }
    }
    Ok((out[0], out[1]))
}

/// If `extended` is a simple extension of `base`, the inserted letter.
pub fn is_simple_extension(extended: &GeneralizedPermutation, base: &GeneralizedPermutation) -> Result<Option<String>> {
    let extra: Vec<&String> = extended.alphabet().names().iter().filter(|n| base.alphabet().letter(n).is_none()).collect();
    let missing = base.alphabet().names().iter().any(|n| extended.alphabet().letter(n).is_none());
    if extra.len() != 1 || missing || extended.d() != base.d() + 1 {
        return Err(Error::AlphabetMismatch);
    }
    let alpha = extra[0].clone();
    let erased = match extended.erase_letters(&[alpha.as_str()]) {
        Ok(e) => e,
        Err(_) => return Ok(None),
    };
    if erased.to_string() != base.to_string() || check_insertion(extended, &alpha).is_err() {
        return Ok(None);
    }
    Ok(Some(alpha))
}

/// Rebuilds a witness from the two permutations.
pub fn witness_from(extended: &GeneralizedPermutation, base: &GeneralizedPermutation) -> Result<Option<ExtensionWitness>> {
    let Some(letter) = is_simple_extension(extended, base)? else { return Ok(None) };
    let gaps = gaps_of(extended, &letter)?;
    Ok(Some(ExtensionWitness {
        base: base.clone(),
        extended: extended.clone(),
        convention_holds: extended.satisfies_convention(),
        letter,
        gaps,
    }))
}

/// First unused name among `A..Z`, then `X1, X2, ...`.
pub fn fresh_letter(gp: &GeneralizedPermutation) -> String {
    ('A'..='Z')
        .map(|c| c.to_string())
        .chain((1..).map(|i| format!("X{i}")))
        .find(|n| gp.alphabet().letter(n).is_none())
        .unwrap()
}

fn next_to_last(row: &[u8]) -> Option<u8> {
    (row.len() >= 2).then(|| row[row.len() - 2])
}

/// The walk `E_*(η)` at `witness.extended` for an arrow `η` at
/// `witness.base`, together with the witness at the ends.
pub fn extend_arrow(witness: &ExtensionWitness, eta: &Arrow) -> Result<(Vec<Arrow>, ExtensionWitness)> {
    let pi = &witness.extended;
    if eta.source.to_string() != witness.base.to_string() {
        return Err(Error::CaseUnmatched(format!("arrow starts at {}, witness base is {}", eta.source, witness.base)));
    }
    let alpha = pi.letter(&witness.letter)?;
    let ntl_top = next_to_last(pi.top()) == Some(alpha);
    let ntl_bottom = next_to_last(pi.bottom()) == Some(alpha);
    if ntl_top && ntl_bottom {
        return Err(Error::CaseUnmatched(format!("`{}` is next-to-last in both rows of {pi}", witness.letter)));
    }
    let relevant = match eta.kind {
        MoveKind::Top => ntl_bottom.then_some(Row::Bottom),
        MoveKind::Bottom => ntl_top.then_some(Row::Top),
    };
    let count = match relevant {
        None => 1,
        Some(row) => {
            let r = pi.row(row);
            let n = r.len();
            let consecutive = n >= 3 && r[n - 3] == alpha;
            if consecutive {
                3
            } else {
                2
            }
        }
    };
    let mut arrows = Vec::with_capacity(count);
    let mut cur = pi.clone();
    for _ in 0..count {
        let a = apply_arrow(&cur, eta.kind).map_err(|e| Error::CaseUnmatched(e.to_string()))?;
        cur = a.target.clone();
        arrows.push(a);
    }
    let end = witness_from(&cur, &eta.target)?.ok_or_else(|| {
        Error::CaseUnmatched(format!("{cur} is not a simple extension of {}", eta.target))
    })?;
    Ok((arrows, end))
}

/// Applies `extend_arrow` along a whole walk of forward arrows.
pub fn extend_walk(witness: &ExtensionWitness, arrows: &[Arrow]) -> Result<(Vec<Arrow>, ExtensionWitness)> {
    let mut w = witness.clone();
    let mut out = Vec::new();
    for eta in arrows {
        let (g, next) = extend_arrow(&w, eta)?;
        out.extend(g);
        w = next;
    }
    Ok((out, w))
}

/// Gap used for a position of the turning orbit: before a top position,
/// after a bottom position.
fn gap_for(gp: &GeneralizedPermutation, k: usize) -> Gap {
    let ell = gp.ell();
    if k <= ell {
        Gap::new(Row::Top, k - 1)
    } else {
        Gap::new(Row::Bottom, k - ell)
    }
}

/// Positions of the orbit other than `1` and `ell + m`, read along the
/// turning bijection starting from `anchor`.
fn orbit_sequence(gp: &GeneralizedPermutation, orbit: &[usize], anchor: usize) -> Vec<usize> {
    let s = turning_map(gp);
    let last = gp.ell() + gp.m();
    let mut seq = vec![anchor];
    let mut k = s[anchor];
    while k != anchor {
        if k != 1 && k != last {
            seq.push(k);
        }
        k = s[k];
    }
    debug_assert_eq!(seq.len(), orbit.iter().filter(|&&k| k != 1 && k != last).count());
    seq
}

/// Anchors usable for splitting an orbit: its positions other than `1` and
/// `ell + m`, top positions first.
pub fn split_anchors(gp: &GeneralizedPermutation, orbit: usize) -> Result<Vec<usize>> {
    let orbits = turning_orbits(gp);
    let o = orbits.get(orbit).ok_or(Error::NoSuchSingularity(orbit))?;
    let last = gp.ell() + gp.m();
    let mut v: Vec<usize> = o.iter().copied().filter(|&k| k != 1 && k != last).collect();
    v.sort_unstable();
    Ok(v)
}

/// Splits the singularity of orbit `orbit` (index into
/// [`turning_orbits`]) into orders `m11` and `order - m11`, inserting the new
/// letter `name` relative to `anchor`.
pub fn split_singularity_at(
    gp: &GeneralizedPermutation,
    orbit: usize,
    anchor: usize,
    m11: i64,
    name: &str,
) -> Result<ExtensionWitness> {
    let orbits = turning_orbits(gp);
    let o = orbits.get(orbit).ok_or(Error::NoSuchSingularity(orbit))?;
    let m1 = orbit_order(gp, o);
    if m1 < 1 {
        return Err(Error::NotSplittable(m1));
    }
    let m12 = m1 - m11;
    if m11 < -1 || m12 < -1 {
        return Err(Error::BadSplit { order: m1, m11, m12 });
    }
    let last = gp.ell() + gp.m();
    if !o.contains(&anchor) || anchor == 1 || anchor == last {
        return Err(Error::IllegalPosition(format!("anchor {anchor} is not in the orbit")));
    }
    let seq = orbit_sequence(gp, o, anchor);
    if seq.len() as i64 != m1 + 2 {
        return Err(Error::OrbitTooSmall);
    }
    let target = seq[((1 + m11) as usize) % seq.len()];
    insert_letter(gp, name, gap_for(gp, anchor), gap_for(gp, target))
}

/// [`split_singularity_at`] with the first usable anchor.
pub fn split_singularity(gp: &GeneralizedPermutation, orbit: usize, m11: i64) -> Result<ExtensionWitness> {
    let anchor = *split_anchors(gp, orbit)?.first().ok_or(Error::OrbitTooSmall)?;
    split_singularity_at(gp, orbit, anchor, m11, &fresh_letter(gp))
}

/// Index of the first orbit whose singularity has order `order`.
pub fn orbit_with_order(gp: &GeneralizedPermutation, order: i64) -> Option<usize> {
    turning_orbits(gp).iter().position(|o| orbit_order(gp, o) == order)
}

/// Two splits of a singularity of a genuine permutation producing a strict
/// permutation with duplicates in both rows: first `(m11, m12 + m13)` with
/// the new letter duplicated in the top row, then `(m12, m13)` with the
/// second letter duplicated in the bottom row.
pub fn split_even_zero(gp: &GeneralizedPermutation, orbit: usize, m11: i64, m12: i64, m13: i64) -> Result<(ExtensionWitness, ExtensionWitness)> {
    if m11 % 2 == 0 || m12 % 2 == 0 {
        return Err(Error::ParityError(vec![m11, m12, m13]));
    }
    let orbits = turning_orbits(gp);
    let o = orbits.get(orbit).ok_or(Error::NoSuchSingularity(orbit))?;
    let m1 = orbit_order(gp, o);
    if m1 < 1 {
        return Err(Error::NotSplittable(m1));
    }
    if m11 + m12 + m13 != m1 || m13 < -1 || m11 < -1 || m12 < -1 {
        return Err(Error::BadSplit { order: m1, m11, m12: m12 + m13 });
    }
    let a_name = fresh_letter(gp);
    for anchor in split_anchors(gp, orbit)? {
        let Ok(first) = split_singularity_at(gp, orbit, anchor, m11, &a_name) else { continue };
        let mid = &first.extended;
        if mid.duplicates(Row::Top).is_empty() {
            continue;
        }
        let b_name = fresh_letter(mid);
        let rest = m12 + m13;
        let candidates: Vec<usize> = turning_orbits(mid)
            .iter()
            .enumerate()
            .filter(|(_, o)| orbit_order(mid, o) == rest)
            .map(|(i, _)| i)
            .collect();
        for idx in candidates {
            for anchor2 in split_anchors(mid, idx)? {
                let Ok(second) = split_singularity_at(mid, idx, anchor2, m12, &b_name) else { continue };
                let end = &second.extended;
                if end.duplicates(Row::Bottom).is_empty() || !end.satisfies_convention() || !end.is_irreducible() {
                    continue;
                }
                return Ok((first, second));
            }
        }
    }
    Err(Error::OrbitTooSmall)
}

/// Two-letter extension found by [`search_extensions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStepExtension {
    pub first: ExtensionWitness,
    pub second: ExtensionWitness,
}

impl TwoStepExtension {
    pub fn base(&self) -> &GeneralizedPermutation {
        &self.first.base
    }

    pub fn extended(&self) -> &GeneralizedPermutation {
        &self.second.extended
    }
}

fn gap_pairs(len: usize, row: Row) -> impl Iterator<Item = (Gap, Gap)> {
    (0..=len).flat_map(move |a| (a..=len).map(move |b| (Gap::new(row, a), Gap::new(row, b))))
}

/// Scans the vertices of `source` for two-letter extensions: a letter
/// `B` duplicated in the bottom row, then a letter `A` duplicated in the top
/// row. Candidates must be irreducible, have orders `target_orders` and pass
/// `accept`. At most `budget` candidates are examined.
pub fn search_extensions<F>(
    source: &RauzyClass,
    target_orders: &[i64],
    accept: F,
    budget: usize,
    max_results: usize,
) -> Result<Vec<TwoStepExtension>>
where
    F: Fn(&GeneralizedPermutation) -> bool + Sync,
{
    let mut target: Vec<i64> = target_orders.to_vec();
    target.sort_unstable_by(|a, b| b.cmp(a));
    let per_vertex: Vec<(usize, Vec<TwoStepExtension>)> = (0..source.len())
        .into_par_iter()
        .map(|v| {
            let tau = source.vertex(v);
            let mut found = Vec::new();
            let mut examined = 0usize;
            let (b_name, a_name) = ("B", "A");
            for (g1, g2) in gap_pairs(tau.m(), Row::Bottom) {
                let Ok(first) = insert_letter(&tau, b_name, g1, g2) else { continue };
                let mid = &first.extended;
                for (h1, h2) in gap_pairs(mid.ell(), Row::Top) {
                    examined += 1;
                    let Ok(second) = insert_letter(mid, a_name, h1, h2) else { continue };
                    let pi = &second.extended;
                    let Ok(sig) = orbit_signature(pi) else { continue };
                    if sig.orders != target || !pi.is_irreducible() || !accept(pi) {
                        continue;
                    }
                    found.push(TwoStepExtension { first: first.clone(), second });
                    if found.len() >= max_results {
                        return (examined, found);
                    }
                }
            }
            (examined, found)
        })
        .collect();
    let total: usize = per_vertex.iter().map(|(n, _)| n).sum();
    if total > budget {
        return Err(Error::BudgetExceeded { what: "extension search", limit: budget });
    }
    Ok(per_vertex.into_iter().flat_map(|(_, f)| f).take(max_results).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::stratum_signature;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn insertion_rules() {
        let t = gp("1 2 3 4 / 4 3 2 1");
        let w = insert_letter(&t, "B", Gap::new(Row::Bottom, 2), Gap::new(Row::Bottom, 2)).unwrap();
        assert_eq!(w.extended.to_string(), "1 2 3 4 / 4 3 B B 2 1");
        assert!(!w.convention_holds);
        assert_eq!(w.extended.erase_letters(&["B"]).unwrap(), t);
        let err = insert_letter(&t, "B", Gap::new(Row::Top, 4), Gap::new(Row::Bottom, 1));
        assert!(matches!(err, Err(Error::IllegalPosition(_))));
        let err = insert_letter(&t, "B", Gap::new(Row::Top, 0), Gap::new(Row::Bottom, 0));
        assert!(matches!(err, Err(Error::IllegalPosition(_))));
        assert!(insert_letter(&t, "B", Gap::new(Row::Top, 0), Gap::new(Row::Top, 0)).is_ok());
    }

    #[test]
    fn simple_extension_detection() {
        let t = gp("1 2 3 4 / 4 3 2 1");
        let p = gp("1 2 3 4 / 4 3 B B 2 1");
        assert_eq!(is_simple_extension(&p, &t).unwrap().as_deref(), Some("B"));
        let q = gp("1 2 3 A A 4 / 4 3 B B 2 1");
        assert_eq!(is_simple_extension(&q, &p).unwrap().as_deref(), Some("A"));
        assert!(matches!(is_simple_extension(&q, &t), Err(Error::AlphabetMismatch)));
        let bad = gp("1 2 3 4 / 4 3 2 1 B B");
        assert_eq!(is_simple_extension(&bad, &t).unwrap(), None);
        let w = witness_from(&p, &t).unwrap().unwrap();
        assert_eq!(w.gaps, (Gap::new(Row::Bottom, 2), Gap::new(Row::Bottom, 2)));
    }

    #[test]
    fn split_examples() {
        let g = gp("1 2 3 A A 4 / 4 3 B B 2 1");
        let idx = orbit_with_order(&g, 6).unwrap();
        let w = split_singularity(&g, idx, 3).unwrap();
        assert_eq!(stratum_signature(&w.extended).unwrap().orders, vec![3, 3, -1, -1]);
        let w = split_singularity(&g, idx, -1).unwrap();
        assert_eq!(stratum_signature(&w.extended).unwrap().orders, vec![7, -1, -1, -1]);
        let pole = orbit_with_order(&g, -1).unwrap();
        assert!(matches!(split_singularity(&g, pole, 0), Err(Error::NotSplittable(-1))));
        assert!(matches!(split_singularity(&g, idx, 8), Err(Error::BadSplit { .. })));
        assert!(matches!(split_singularity(&g, 99, 1), Err(Error::NoSuchSingularity(99))));
    }

    #[test]
    fn even_zero_split_of_tau4() {
        let t = gp("1 2 3 4 / 4 3 2 1");
        let (a, b) = split_even_zero(&t, 0, -1, -1, 6).unwrap();
        let end = &b.extended;
        assert!(end.satisfies_convention());
        assert!(!end.is_genuine());
        assert!(end.is_irreducible());
        assert_eq!(stratum_signature(end).unwrap().orders, vec![6, -1, -1]);
        assert_eq!(end.erase_letters(&[&b.letter, &a.letter]).unwrap(), t);
        assert!(matches!(split_even_zero(&t, 0, 2, -1, 3), Err(Error::ParityError(_))));
    }

    #[test]
    fn arrow_extension_cases() {
        let tau = gp("1 2 3 4 / 4 3 B B 2 1");
        let pi = gp("1 2 3 A A 4 / 4 3 B B 2 1");
        let w = witness_from(&pi, &tau).unwrap().unwrap();
        // A is next-to-last in the top row, with consecutive occurrences
        let eta = apply_arrow(&tau, MoveKind::Bottom).unwrap();
        let (g, end) = extend_arrow(&w, &eta).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(end.base, eta.target);
        let eta = apply_arrow(&tau, MoveKind::Top).unwrap();
        let (g, _) = extend_arrow(&w, &eta).unwrap();
        assert_eq!(g.len(), 1);
        let pi2 = gp("1 2 A 3 A 4 / 4 3 B B 2 1");
        let w2 = witness_from(&pi2, &tau).unwrap().unwrap();
        let eta = apply_arrow(&tau, MoveKind::Bottom).unwrap();
        let (g, _) = extend_arrow(&w2, &eta).unwrap();
        assert_eq!(g.len(), 2);
    }
}
