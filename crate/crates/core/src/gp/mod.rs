//! Generalized permutations: two rows of letters in which every letter of
//! the alphabet occurs exactly twice.
//!
//! Positions are 1-based: `1..=ell` is the top row, `ell+1..=ell+m` the
//! bottom row. Letters are stored as indices into a shared [`Alphabet`] whose
//! order is fixed at construction and is the index order of every matrix
//! built from the permutation.

mod reducibility;
mod suspension;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use reducibility::{Decomposition, EmptyCornerPattern, Reducibility};
pub use suspension::{check_suspension, ComplexRational, SuspensionDatum, SuspensionViolation};

/// Largest supported alphabet; letter sets are `u64` bitmasks.
pub const MAX_LETTERS: usize = 64;

pub type Letter = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Row {
    Top,
    Bottom,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Row::Top => "top",
            Row::Bottom => "bottom",
        })
    }
}

/// Insertion point inside a row: `index` letters of the row precede it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Gap {
    pub row: Row,
    pub index: usize,
}

impl Gap {
    pub fn new(row: Row, index: usize) -> Self {
        Gap { row, index }
    }
}

/// Bitmask over letter indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        LetterSet(it.into_iter().fold(0u64, |acc, l| acc | (1u64 << l)))
    }
    pub fn contains(self, l: Letter) -> bool {
        self.0 >> l & 1 == 1
    }
    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l;
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn union(self, o: Self) -> Self {
        LetterSet(self.0 | o.0)
    }
    pub fn intersection(self, o: Self) -> Self {
        LetterSet(self.0 & o.0)
    }
    pub fn difference(self, o: Self) -> Self {
        LetterSet(self.0 & !o.0)
    }
    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }
    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..64u8).filter(move |&l| self.contains(l))
    }
}

/// Ordered set of letter names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_LETTERS {
            return Err(Error::AlphabetTooLarge(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains('/') || n.chars().any(char::is_whitespace) {
                return Err(Error::MalformedText(format!("bad letter token `{n}`")));
            }
            if index.insert(n.clone(), i as Letter).is_some() {
                return Err(Error::MalformedText(format!("letter `{n}` declared twice")));
            }
        }
        Ok(Alphabet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }
}

#[derive(Clone)]
pub struct GeneralizedPermutation {
    alphabet: Arc<Alphabet>,
    top: Vec<Letter>,
    bottom: Vec<Letter>,
}

impl PartialEq for GeneralizedPermutation {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top
            && self.bottom == other.bottom
            && (Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet)
    }
}

impl Eq for GeneralizedPermutation {}

impl std::hash::Hash for GeneralizedPermutation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.top.hash(state);
        self.bottom.hash(state);
    }
}

impl fmt::Debug for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralizedPermutation({self})")
    }
}

impl fmt::Display for GeneralizedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[Letter]| {
            r.iter().map(|&l| self.alphabet.name(l)).collect::<Vec<_>>().join(" ")
        };
        write!(f, "{} / {}", row(&self.top), row(&self.bottom))
    }
}

impl std::str::FromStr for GeneralizedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl GeneralizedPermutation {
    /// Parses `"1 2 3 A A 4 / 4 3 B B 2 1"`. The alphabet is ordered by first
    /// appearance, top row first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split('/');
        let (top, bottom) = match (parts.next(), parts.next(), parts.next()) {
            (Some(t), Some(b), None) => (t, b),
            _ => {
                return Err(Error::MalformedText(format!(
                    "expected exactly one `/` separator in `{}`",
                    text.trim()
                )))
            }
        };
        let top: Vec<&str> = top.split_whitespace().collect();
        let bottom: Vec<&str> = bottom.split_whitespace().collect();
        if top.is_empty() || bottom.is_empty() {
            return Err(Error::MalformedText("both rows must be non-empty".into()));
        }
        Self::from_rows(&top, &bottom)
    }

    pub fn from_rows<S: AsRef<str>>(top: &[S], bottom: &[S]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for tok in top.iter().chain(bottom) {
            let tok = tok.as_ref();
            let c = counts.entry(tok).or_insert(0);
            if *c == 0 {
                names.push(tok.to_string());
            }
            *c += 1;
        }
        for n in &names {
            let c = counts[n.as_str()];
            if c != 2 {
                return Err(Error::LetterCountError { letter: n.clone(), count: c });
            }
        }
        let alphabet = Alphabet::new(names)?;
        let map = |r: &[S]| -> Vec<Letter> {
            r.iter().map(|t| alphabet.letter(t.as_ref()).unwrap()).collect()
        };
        let (t, b) = (map(top), map(bottom));
        Self::from_indices(Arc::new(alphabet), t, b)
    }

    /// Builds a permutation over an existing alphabet, checking every
    /// structural invariant.
    pub fn from_indices(alphabet: Arc<Alphabet>, top: Vec<Letter>, bottom: Vec<Letter>) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::EmptyRow("top"));
        }
        if bottom.is_empty() {
            return Err(Error::EmptyRow("bottom"));
        }
        let d = alphabet.len();
        if d < 2 {
            return Err(Error::AlphabetTooSmall(d));
        }
        let mut counts = vec![0usize; d];
        for &l in top.iter().chain(&bottom) {
            match counts.get_mut(l as usize) {
                Some(c) => *c += 1,
                None => return Err(Error::UnknownLetter(format!("#{l}"))),
            }
        }
        if let Some((l, &c)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(Error::LetterCountError { letter: alphabet.name(l as Letter).into(), count: c });
        }
        Ok(GeneralizedPermutation { alphabet, top, bottom })
    }

    pub(crate) fn from_parts_unchecked(alphabet: Arc<Alphabet>, top: Vec<Letter>, bottom: Vec<Letter>) -> Self {
        debug_assert_eq!(top.len() + bottom.len(), 2 * alphabet.len());
        GeneralizedPermutation { alphabet, top, bottom }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn top(&self) -> &[Letter] {
        &self.top
    }

    pub fn bottom(&self) -> &[Letter] {
        &self.bottom
    }

    pub fn row(&self, row: Row) -> &[Letter] {
        match row {
            Row::Top => &self.top,
            Row::Bottom => &self.bottom,
        }
    }

    /// Number of letters `d`.
    pub fn d(&self) -> usize {
        self.alphabet.len()
    }

    /// Length of the top row.
    pub fn ell(&self) -> usize {
        self.top.len()
    }

    /// Length of the bottom row.
    pub fn m(&self) -> usize {
        self.bottom.len()
    }

    pub fn name(&self, l: Letter) -> &str {
        self.alphabet.name(l)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.alphabet.letter(name).ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Letter at 1-based position `p`.
    pub fn at(&self, p: usize) -> Letter {
        let ell = self.top.len();
        if p <= ell {
            self.top[p - 1]
        } else {
            self.bottom[p - ell - 1]
        }
    }

    /// Both 1-based positions of every letter, `(i, j)` with `i < j`.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut first = vec![0usize; self.d()];
        let mut out = vec![(0usize, 0usize); self.d()];
        for (k, &l) in self.top.iter().chain(&self.bottom).enumerate() {
            let p = k + 1;
            if first[l as usize] == 0 {
                first[l as usize] = p;
            } else {
                out[l as usize] = (first[l as usize], p);
            }
        }
        out
    }

    /// The fixed-point-free involution on positions pairing the two
    /// occurrences of each letter. Index 0 is unused.
    pub fn sigma(&self) -> Vec<usize> {
        let mut s = vec![0usize; 2 * self.d() + 1];
        for (i, j) in self.positions() {
            s[i] = j;
            s[j] = i;
        }
        s
    }

    pub fn is_duplicate(&self, l: Letter) -> bool {
        let (i, j) = self.positions()[l as usize];
        (j <= self.ell()) || (i > self.ell())
    }

    pub fn row_set(&self, row: Row) -> LetterSet {
        LetterSet::from_letters(self.row(row).iter().copied())
    }

    /// Letters with both occurrences in `row`.
    pub fn duplicates(&self, row: Row) -> LetterSet {
        let mut seen = LetterSet::default();
        let mut dup = LetterSet::default();
        for &l in self.row(row) {
            if seen.contains(l) {
                dup.insert(l);
            }
            seen.insert(l);
        }
        dup
    }

    /// Letters occurring once in each row, in alphabet order.
    pub fn both_rows_letters(&self) -> Vec<Letter> {
        let s = self.row_set(Row::Top).intersection(self.row_set(Row::Bottom));
        s.iter().collect()
    }

    /// No duplicate letters and rows of equal length.
    pub fn is_genuine(&self) -> bool {
        self.duplicates(Row::Top).is_empty() && self.duplicates(Row::Bottom).is_empty()
    }

    /// A strict permutation must have duplicate letters in both rows;
    /// genuine permutations satisfy this vacuously.
    pub fn satisfies_convention(&self) -> bool {
        self.duplicates(Row::Top).is_empty() == self.duplicates(Row::Bottom).is_empty()
    }

    pub fn validate(&self) -> ValidityReport {
        let td = self.duplicates(Row::Top);
        let bd = self.duplicates(Row::Bottom);
        let genuine = td.is_empty() && bd.is_empty();
        let mut violations = Vec::new();
        if !td.is_empty() && bd.is_empty() {
            violations.push("duplicate letters only in the top row".to_string());
        }
        if td.is_empty() && !bd.is_empty() {
            violations.push("duplicate letters only in the bottom row".to_string());
        }
        let names = |s: LetterSet| s.iter().map(|l| self.name(l).to_string()).collect();
        ValidityReport {
            genuine,
            convention_holds: violations.is_empty(),
            top_duplicates: names(td),
            bottom_duplicates: names(bd),
            ell: self.ell(),
            m: self.m(),
            violations,
        }
    }

    /// Canonical one-line encoding used as a dedup key within a class.
    pub fn key(&self) -> Vec<u8> {
        let mut k = Vec::with_capacity(self.top.len() + self.bottom.len() + 1);
        k.push(self.top.len() as u8);
        k.extend_from_slice(&self.top);
        k.extend_from_slice(&self.bottom);
        k
    }

    pub(crate) fn from_key(alphabet: Arc<Alphabet>, key: &[u8]) -> Self {
        let ell = key[0] as usize;
        let top = key[1..=ell].to_vec();
        let bottom = key[ell + 1..].to_vec();
        Self::from_parts_unchecked(alphabet, top, bottom)
    }

    /// Removes every occurrence of `letters`, keeping the order of the rest.
    pub fn erase_letters(&self, letters: &[&str]) -> Result<Self> {
        let mut kill = LetterSet::default();
        for n in letters {
            kill.insert(self.letter(n)?);
        }
        if kill.is_empty() {
            return Ok(self.clone());
        }
        let keep: Vec<Letter> = (0..self.d() as Letter).filter(|&l| !kill.contains(l)).collect();
        let mut remap = vec![Letter::MAX; self.d()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old as usize] = new as Letter;
        }
        let alphabet = Alphabet::new(keep.iter().map(|&l| self.name(l).to_string()))?;
        let filt = |r: &[Letter]| -> Vec<Letter> {
            r.iter().filter(|&&l| !kill.contains(l)).map(|&l| remap[l as usize]).collect()
        };
        let (t, b) = (filt(&self.top), filt(&self.bottom));
        if t.is_empty() {
            return Err(Error::EmptyRow("top"));
        }
        if b.is_empty() {
            return Err(Error::EmptyRow("bottom"));
        }
        Self::from_indices(Arc::new(alphabet), t, b)
    }

    /// Inserts a fresh letter `name` at two gaps. The new letter is appended
    /// to the alphabet. When both gaps coincide the two occurrences are
    /// adjacent.
    pub fn insert_letter_at(&self, name: &str, a: Gap, b: Gap) -> Result<Self> {
        if self.alphabet.letter(name).is_some() {
            return Err(Error::IllegalPosition(format!("letter `{name}` already present")));
        }
        for g in [a, b] {
            if g.index > self.row(g.row).len() {
                return Err(Error::IllegalPosition(format!("gap {} past the end of the {} row", g.index, g.row)));
            }
        }
        let mut names = self.alphabet.names().to_vec();
        names.push(name.to_string());
        let alphabet = Arc::new(Alphabet::new(names)?);
        let new = (alphabet.len() - 1) as Letter;
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        // insert right-most first so earlier indices stay valid
        let (first, second) = if (a.row, a.index) >= (b.row, b.index) { (a, b) } else { (b, a) };
        for g in [first, second] {
            match g.row {
                Row::Top => top.insert(g.index, new),
                Row::Bottom => bottom.insert(g.index, new),
            }
        }
        Self::from_indices(alphabet, top, bottom)
    }

    /// Applies a relabeling `perm[old] = new` and reorders the alphabet
    /// accordingly.
    pub fn relabel(&self, perm: &[Letter], alphabet: Arc<Alphabet>) -> Self {
        let map = |r: &[Letter]| r.iter().map(|&l| perm[l as usize]).collect();
        Self::from_parts_unchecked(alphabet, map(&self.top), map(&self.bottom))
    }

    /// Reduced form: letters renamed `0, 1, ...` by first appearance, top
    /// row first. Returns the reduced permutation together with the map
    /// `old letter -> reduced letter`.
    pub fn reduced_form(&self) -> (Self, Vec<Letter>) {
        let mut map = vec![Letter::MAX; self.d()];
        let mut next = 0u8;
        for &l in self.top.iter().chain(&self.bottom) {
            if map[l as usize] == Letter::MAX {
                map[l as usize] = next;
                next += 1;
            }
        }
        let alphabet = reduced_alphabet(self.d());
        (self.relabel(&map, alphabet), map)
    }

    /// Reduced key: the dedup key of [`Self::reduced_form`], cheaper to get.
    pub fn reduced_key(&self) -> Vec<u8> {
        let mut map = [Letter::MAX; MAX_LETTERS];
        let mut next = 0u8;
        let mut k = Vec::with_capacity(2 * self.d() + 1);
        k.push(self.top.len() as u8);
        for &l in self.top.iter().chain(&self.bottom) {
            if map[l as usize] == Letter::MAX {
                map[l as usize] = next;
                next += 1;
            }
            k.push(map[l as usize]);
        }
        k
    }

    pub fn is_irreducible(&self) -> bool {
        self.reducibility().is_irreducible()
    }

    pub fn reducibility(&self) -> Reducibility {
        reducibility::analyse(self)
    }
}

/// Alphabet `0, 1, ..., d-1` shared by reduced forms.
pub fn reduced_alphabet(d: usize) -> Arc<Alphabet> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<Arc<Alphabet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        (0..=MAX_LETTERS)
            .map(|n| Arc::new(Alphabet::new((0..n).map(|i| i.to_string())).unwrap()))
            .collect()
    });
    cache[d].clone()
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ValidityReport {
    /// No duplicate letters (then the rows have equal length).
    pub genuine: bool,
    pub convention_holds: bool,
    pub top_duplicates: Vec<String>,
    pub bottom_duplicates: Vec<String>,
    pub ell: usize,
    pub m: usize,
    pub violations: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let t = gp("1 2 / 2 1");
        assert_eq!((t.ell(), t.m(), t.d()), (2, 2, 2));
        let s = gp("1 2 3 A A 4 / 4 3 B B 2 1");
        assert_eq!((s.ell(), s.m()), (6, 6));
        assert!(!s.is_genuine());
        assert!(matches!(
            GeneralizedPermutation::parse("1 2 / 2 2 1"),
            Err(Error::LetterCountError { ref letter, count: 3 }) if letter == "2"
        ));
    }

    #[test]
    fn parse_rejects_bad_text() {
        for bad in ["1 2 2 1", "1 2 / 2 / 1", " / 1 1", "1 1 / ", "1 / 1"] {
            assert!(GeneralizedPermutation::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_text() {
        let g = gp("  1   2 3 A A 4/4 3 B B 2  1 ");
        assert_eq!(g.to_string(), "1 2 3 A A 4 / 4 3 B B 2 1");
    }

    #[test]
    fn validate_examples() {
        let r = gp("1 2 3 4 / 4 3 2 1").validate();
        assert!(r.genuine && r.convention_holds);
        let r = gp("1 2 3 A A 4 / 4 3 B B 2 1").validate();
        assert!(!r.genuine && r.convention_holds);
        assert_eq!(r.top_duplicates, vec!["A"]);
        assert_eq!(r.bottom_duplicates, vec!["B"]);
        let r = gp("1 A A 2 / 2 1").validate();
        assert!(!r.genuine && !r.convention_holds);
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn sigma_pairs_positions() {
        let g = gp("1 2 3 A A 4 / 4 3 B B 2 1");
        let s = g.sigma();
        assert_eq!(s[1], 12);
        assert_eq!(s[4], 5);
        assert_eq!(s[6], 7);
        for p in 1..=12 {
            assert_ne!(s[p], p);
            assert_eq!(s[s[p]], p);
            assert_eq!(g.at(p), g.at(s[p]));
        }
    }

    #[test]
    fn erase_examples() {
        let g = gp("1 2 3 A A 4 / 4 3 B B 2 1");
        assert_eq!(g.erase_letters(&["A", "B"]).unwrap().to_string(), "1 2 3 4 / 4 3 2 1");
        assert_eq!(g.erase_letters(&[]).unwrap(), g);
        let row1 = gp("1 2 3 A 4 A 5 6 / 6 5 4 3 2 B B 1");
        assert_eq!(
            row1.erase_letters(&["A", "B"]).unwrap().to_string(),
            "1 2 3 4 5 6 / 6 5 4 3 2 1"
        );
        let g = gp("A A 1 / 1 2 2");
        assert!(matches!(g.erase_letters(&["A", "1"]), Err(Error::EmptyRow("top"))));
        assert!(matches!(g.erase_letters(&["Z"]), Err(Error::UnknownLetter(_))));
    }

    #[test]
    fn insert_then_erase() {
        let t = gp("1 2 3 4 / 4 3 2 1");
        let p = t.insert_letter_at("B", Gap::new(Row::Bottom, 2), Gap::new(Row::Bottom, 2)).unwrap();
        assert_eq!(p.to_string(), "1 2 3 4 / 4 3 B B 2 1");
        assert_eq!(p.erase_letters(&["B"]).unwrap(), t);
        let p = t.insert_letter_at("A", Gap::new(Row::Top, 1), Gap::new(Row::Bottom, 3)).unwrap();
        assert_eq!(p.to_string(), "1 A 2 3 4 / 4 3 2 A 1");
    }

    #[test]
    fn reduced_form_relabels_by_first_appearance() {
        let g = gp("b a c / c a b");
        let (r, map) = g.reduced_form();
        assert_eq!(r.to_string(), "0 1 2 / 2 1 0");
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(r.key(), g.reduced_key());
    }
}
