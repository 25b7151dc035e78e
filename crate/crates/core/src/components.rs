//! Connected components: hyperelliptic criterion, canonical representatives,
//! identification through Rauzy class membership, and verification of the
//! table of exceptional extensions.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::extensions::is_simple_extension;
use crate::gp::{GeneralizedPermutation, Letter};
use crate::induction::{
    cache_path, enumerate_class_with, load_class, save_class, ClassMode, MoveKind, RauzyClass, DEFAULT_CLASS_BUDGET,
};
use crate::strata::{stratum_signature, StratumSignature};

fn has_form_one(t: &[Letter], b: &[Letter]) -> bool {
    let n = t.len();
    if n < 2 || b.len() != n {
        return false;
    }
    let a = t[0];
    let Some(k) = t[1..].iter().position(|&x| x == a).map(|p| p + 1) else { return false };
    let first = &t[1..k];
    let second = &t[k + 1..];
    let xs: Vec<Letter> = first.iter().chain(second).copied().collect();
    let mut seen = std::collections::HashSet::new();
    if !xs.iter().all(|x| *x != a && seen.insert(*x)) {
        return false;
    }
    let s = first.len();
    let r = second.len();
    let bb = b[r];
    if xs.contains(&bb) || bb == a || b[n - 1] != bb {
        return false;
    }
    b[..r].iter().eq(second.iter().rev()) && b[r + 1..r + 1 + s].iter().eq(first.iter().rev())
}

fn has_form_two(t: &[Letter], b: &[Letter]) -> bool {
    let doubled = |r: &[Letter]| {
        let n = r.len();
        if n == 0 || !n.is_multiple_of(2) {
            return false;
        }
        let h = &r[..n / 2];
        let mut seen = std::collections::HashSet::new();
        h.iter().all(|x| seen.insert(*x)) && h == &r[n / 2..]
    };
    doubled(t) && doubled(b) && !t.iter().any(|x| b.contains(x))
}

fn rotations(r: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..r.len().max(1)).map(move |k| {
        let mut v = r.to_vec();
        if !v.is_empty() {
            v.rotate_left(k);
        }
        v
    })
}

/// Hyperelliptic criterion for permutations whose first top letter equals
/// the last bottom letter: after removing that letter the rows must have,
/// up to independent cyclic rotations, one of the two symmetric forms
/// `(a x_1..x_s a x_{s+1}..x_{s+r} / x_{s+r}..x_{s+1} b x_s..x_1 b)` or
/// `(X X / Y Y)`.
pub fn hyperelliptic_test(gp: &GeneralizedPermutation) -> Result<bool> {
    let z = gp.top()[0];
    if gp.bottom()[gp.m() - 1] != z {
        return Err(Error::CriterionInapplicable);
    }
    let t = &gp.top()[1..];
    let b = &gp.bottom()[..gp.m() - 1];
    for rt in rotations(t) {
        for rb in rotations(b) {
            if has_form_one(&rt, &rb) || has_form_two(&rt, &rb) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn from_numbers(top: &[usize], bottom: &[usize]) -> GeneralizedPermutation {
    let f = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    GeneralizedPermutation::from_rows(&f(top), &f(bottom)).expect("representative is well formed")
}

/// Rows of the table of exceptional extensions: start component, end
/// component and permutation.
pub const TABLE1: [(&str, &str, &str); 12] = [
    ("H(4)^hyp", "Q(6,3,-1)^reg", "1 2 3 A 4 A 5 6 / 6 5 4 3 2 B B 1"),
    ("H(4)^odd", "Q(6,3,-1)^reg", "1 2 3 4 A 5 A 6 / 6 4 B B 2 5 3 1"),
    ("H(4)^hyp", "Q(6,3,-1)^irr", "1 A 2 3 4 5 A 6 / 6 B B 5 4 3 2 1"),
    ("H(4)^odd", "Q(6,3,-1)^irr", "1 2 3 4 5 A A 6 / 6 B 3 B 5 2 4 1"),
    ("H(3,1)", "Q(3,3,3,-1)^reg", "1 A A 2 3 4 5 6 7 / 7 6 B 5 2 B 4 3 1"),
    ("H(3,1)", "Q(3,3,3,-1)^irr", "1 2 3 4 5 A 6 A 7 / 7 6 2 B B 5 4 3 1"),
    ("H(6)^even", "Q(6,3,3)^reg", "1 2 A 3 4 5 6 7 A 8 / 8 7 5 B 2 6 B 4 3 1"),
    ("H(6)^odd", "Q(6,3,3)^reg", "1 A 2 3 4 5 A 6 7 8 / 8 4 7 B 5 3 6 B 2 1"),
    ("H(6)^even", "Q(6,3,3)^irr", "1 2 3 4 A 5 A 6 7 8 / 8 7 5 B 2 6 B 4 3 1"),
    ("H(6)^odd", "Q(6,3,3)^irr", "1 2 3 4 5 6 A 7 A 8 / 8 B 5 B 3 7 4 6 2 1"),
    ("H(3,3)^nonhyp", "Q(3,3,3,3)^reg", "1 A 2 A 3 4 5 6 7 8 9 / 9 6 B 5 3 7 2 8 B 4 1"),
    ("H(3,3)^nonhyp", "Q(3,3,3,3)^irr", "1 A 2 A 3 4 5 6 7 8 9 / 9 5 2 6 4 3 B 8 B 7 1"),
];

/// Genus-two and genus-three extensions of hyperelliptic Abelian
/// components into non-hyperelliptic quadratic components.
pub const LOW_GENUS_EXTENSIONS: [(&str, &str, &str); 4] = [
    ("H(2)", "Q(6,-1,-1)^nonhyp", "1 2 3 A A 4 / 4 3 B B 2 1"),
    ("H(1,1)", "Q(3,3,-1,-1)^nonhyp", "1 2 A A 3 4 5 / 5 B B 4 3 2 1"),
    ("H(4)^hyp", "Q(10,-1,-1)^nonhyp", "1 A A 2 3 4 5 6 / 6 B B 5 4 3 2 1"),
    ("H(4)^hyp", "Q(6,1,1)^nonhyp", "1 A 2 3 A 4 5 6 / 6 B 5 4 B 3 2 1"),
];

fn parse_args(label: &str, name: &str) -> Option<Vec<i64>> {
    let rest = label.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    rest.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Displayed representatives: `tau_sym(d)`, `tau_zorich(g)`,
/// `sigma_zorich(g)`, `sigma_hyp(s,r)`, `table1(row)`.
pub fn canonical_rep(label: &str) -> Result<GeneralizedPermutation> {
    let label = label.trim();
    let range = |msg: String| Err(Error::OutOfRange(msg));
    if let Some(a) = parse_args(label, "tau_sym") {
        let [d] = a[..] else { return Err(Error::UnknownLabel(label.into())) };
        if !(2..=64).contains(&d) {
            return range(format!("tau_sym needs 2 <= d <= 64, got {d}"));
        }
        let top: Vec<usize> = (0..d as usize).collect();
        let bottom: Vec<usize> = top.iter().rev().copied().collect();
        return Ok(from_numbers(&top, &bottom));
    }
    if let Some(a) = parse_args(label, "tau_zorich").or_else(|| parse_args(label, "sigma_zorich")) {
        let [g] = a[..] else { return Err(Error::UnknownLabel(label.into())) };
        let sigma = label.starts_with("sigma");
        let min = if sigma { 4 } else { 3 };
        if g < min || g > 32 {
            return range(format!("{} needs {min} <= g <= 32, got {g}", if sigma { "sigma_zorich" } else { "tau_zorich" }));
        }
        let g = g as usize;
        let mut top = vec![0, 1];
        for k in 1..g {
            top.extend([3 * k - 1, 3 * k]);
        }
        let mut bottom = Vec::new();
        if sigma {
            bottom.extend([6, 5, 3, 2]);
            for k in 3..g {
                bottom.extend([3 * k, 3 * k - 1]);
            }
        } else {
            for k in 1..g {
                bottom.extend([3 * k, 3 * k - 1]);
            }
        }
        bottom.extend([1, 0]);
        return Ok(from_numbers(&top, &bottom));
    }
    if let Some(a) = parse_args(label, "sigma_hyp") {
        let [s, r] = a[..] else { return Err(Error::UnknownLabel(label.into())) };
        if s < 1 || r < 1 || s + r > 60 {
            return range(format!("sigma_hyp needs s, r >= 1, got ({s},{r})"));
        }
        let (s, r) = (s as usize, r as usize);
        let n = |x: usize| x.to_string();
        let mut top = vec![n(0), "A".into()];
        top.extend((1..=s).map(n));
        top.push("A".into());
        top.extend((s + 1..=s + r).map(n));
        let mut bottom: Vec<String> = (s + 1..=s + r).rev().map(n).collect();
        bottom.push("B".into());
        bottom.extend((1..=s).rev().map(n));
        bottom.push("B".into());
        bottom.push(n(0));
        return GeneralizedPermutation::from_rows(&top, &bottom);
    }
    if let Some(a) = parse_args(label, "table1") {
        let [row] = a[..] else { return Err(Error::UnknownLabel(label.into())) };
        if !(1..=12).contains(&row) {
            return range(format!("table1 rows are 1..=12, got {row}"));
        }
        return TABLE1[row as usize - 1].2.parse();
    }
    Err(Error::UnknownLabel(label.into()))
}

/// How a component label was established.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Evidence {
    /// The stratum is connected.
    ConnectedStratum,
    /// Same reduced Rauzy class as the representative.
    ClassMembership { representative: String },
    /// Not in the complete class of the only hyperelliptic Rauzy class of
    /// the stratum, which has exactly two components.
    OutsideHyperellipticClass { representative: String },
    /// Hyperelliptic criterion at the class vertex given.
    HyperellipticCriterion { vertex: String },
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::ConnectedStratum => write!(f, "connected stratum"),
            Evidence::ClassMembership { representative } => write!(f, "same class as {representative}"),
            Evidence::OutsideHyperellipticClass { representative } => {
                write!(f, "outside the hyperelliptic class of {representative}")
            }
            Evidence::HyperellipticCriterion { vertex } => write!(f, "hyperelliptic form at {vertex}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Identification {
    pub label: String,
    pub evidence: Evidence,
}

struct Entry {
    label: &'static str,
    rep: Rep,
}

enum Rep {
    Canonical(&'static str),
    Text(&'static str),
}

impl Rep {
    fn gp(&self) -> GeneralizedPermutation {
        match self {
            Rep::Canonical(l) => canonical_rep(l).expect("registry label"),
            Rep::Text(t) => t.parse().expect("registry permutation"),
        }
    }
}

/// Abelian strata (by orders) known to be connected.
const CONNECTED_ABELIAN: [&[i64]; 6] = [&[0], &[2], &[1, 1], &[3, 1], &[2, 1, 1], &[1, 1, 1, 1]];

/// Components represented by the class of a representative.
const REGISTRY: [Entry; 9] = [
    Entry { label: "H(4)^hyp", rep: Rep::Canonical("tau_sym(6)") },
    Entry { label: "H(4)^odd", rep: Rep::Canonical("tau_zorich(3)") },
    Entry { label: "H(2,2)^hyp", rep: Rep::Canonical("tau_sym(7)") },
    Entry { label: "H(6)^hyp", rep: Rep::Canonical("tau_sym(8)") },
    Entry { label: "H(6)^odd", rep: Rep::Canonical("tau_zorich(4)") },
    Entry { label: "H(6)^even", rep: Rep::Canonical("sigma_zorich(4)") },
    Entry { label: "H(3,3)^hyp", rep: Rep::Canonical("tau_sym(9)") },
    Entry { label: "Q(6,-1,-1)^nonhyp", rep: Rep::Text("1 2 3 A A 4 / 4 3 B B 2 1") },
    Entry { label: "Q(3,3,-1,-1)^nonhyp", rep: Rep::Text("1 2 A A 3 4 5 / 5 B B 4 3 2 1") },
];

/// Strata with exactly two components, one of which is the hyperelliptic
/// class listed: `(stratum, hyperelliptic label, other label)`.
const HYP_COMPLEMENTS: [(&str, &str, &str); 1] = [("H(3,3)", "H(3,3)^hyp", "H(3,3)^nonhyp")];

fn stratum_name(sig: &StratumSignature) -> String {
    match sig.abelian_orders() {
        Some(a) => format!("H({})", a.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")),
        None => sig.quadratic_label(),
    }
}

fn label_stratum(label: &str) -> &str {
    label.split('^').next().unwrap_or(label)
}

/// Reduced Rauzy classes of representatives, enumerated on demand and
/// persisted in a cache directory.
pub struct ComponentCatalog {
    cache_dir: Option<PathBuf>,
    budget: usize,
    classes: Mutex<HashMap<String, Arc<RauzyClass>>>,
}

impl ComponentCatalog {
    pub fn new(cache_dir: Option<PathBuf>, budget: usize) -> Self {
        ComponentCatalog { cache_dir, budget, classes: Mutex::new(HashMap::new()) }
    }

    /// In-memory catalog with the default budget.
    pub fn in_memory() -> Self {
        Self::new(None, DEFAULT_CLASS_BUDGET)
    }

    /// Reduced class of `rep`, loaded from or written to the cache.
    pub fn class_of(&self, rep: &GeneralizedPermutation) -> Result<Arc<RauzyClass>> {
        let key = rep.reduced_form().0.to_string();
        if let Some(c) = self.classes.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let path = self.cache_dir.as_ref().map(|d| cache_path(d, rep, ClassMode::Reduced));
        let loaded = path.as_ref().filter(|p| p.exists()).and_then(|p| load_class(p).ok()).filter(|c| c.is_complete() && c.contains(rep));
        let class = match loaded {
            Some(c) => c,
            None => {
                let c = enumerate_class_with(rep, ClassMode::Reduced, self.budget)?;
                if let Some(p) = &path {
                    save_class(&c, p)?;
                }
                c
            }
        };
        let class = Arc::new(class);
        self.classes.lock().unwrap().insert(key, class.clone());
        Ok(class)
    }

    /// Component of `gp`, or `None` when no certificate is available.
    pub fn identify(&self, gp: &GeneralizedPermutation) -> Result<Option<Identification>> {
        if !gp.is_irreducible() {
            return Err(Error::ReducibleSeed(gp.to_string()));
        }
        let sig = stratum_signature(gp)?;
        let stratum = stratum_name(&sig);
        if let Some(a) = sig.abelian_orders() {
            if CONNECTED_ABELIAN.contains(&a.as_slice()) {
                return Ok(Some(Identification { label: stratum, evidence: Evidence::ConnectedStratum }));
            }
        }
        for e in REGISTRY.iter().filter(|e| label_stratum(e.label) == stratum) {
            let rep = e.rep.gp();
            let class = self.class_of(&rep)?;
            if class.contains(gp) {
                return Ok(Some(Identification {
                    label: e.label.to_string(),
                    evidence: Evidence::ClassMembership { representative: rep.to_string() },
                }));
            }
        }
        for (s, hyp, other) in HYP_COMPLEMENTS {
            if s == stratum {
                let entry = REGISTRY.iter().find(|e| e.label == hyp).expect("registry entry");
                let rep = entry.rep.gp();
                let class = self.class_of(&rep)?;
                if class.is_complete() && !class.contains(gp) {
                    return Ok(Some(Identification {
                        label: other.to_string(),
                        evidence: Evidence::OutsideHyperellipticClass { representative: rep.to_string() },
                    }));
                }
            }
        }
        if sig.abelian_orders().is_none() {
            if let Some(v) = criterion_vertex(gp, 10_000) {
                let hyp = hyperelliptic_test(&v)?;
                return Ok(Some(Identification {
                    label: format!("{stratum}^{}", if hyp { "hyp" } else { "nonhyp" }),
                    evidence: Evidence::HyperellipticCriterion { vertex: v.to_string() },
                }));
            }
        }
        Ok(None)
    }
}

/// A vertex of the class of `gp` (searched forward, at most `limit`
/// vertices) whose first top letter equals its last bottom letter.
pub fn criterion_vertex(gp: &GeneralizedPermutation, limit: usize) -> Option<GeneralizedPermutation> {
    let ok = |g: &GeneralizedPermutation| g.top()[0] == g.bottom()[g.m() - 1];
    if ok(gp) {
        return Some(gp.clone());
    }
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::from([gp.clone()]);
    seen.insert(gp.reduced_key());
    while let Some(v) = queue.pop_front() {
        for k in MoveKind::BOTH {
            let Ok(a) = crate::induction::apply_arrow(&v, k) else { continue };
            if ok(&a.target) {
                return Some(a.target);
            }
            if seen.len() < limit && seen.insert(a.target.reduced_key()) {
                queue.push_back(a.target);
            }
        }
    }
    None
}

/// Component of `gp` using a fresh in-memory catalog.
pub fn identify_component(gp: &GeneralizedPermutation) -> Result<Option<Identification>> {
    ComponentCatalog::in_memory().identify(gp)
}

/// Outcome of checking one row of the extension table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RowReport {
    pub row: String,
    pub gp: String,
    pub start: String,
    pub end: String,
    /// Irreducible, with duplicates in both rows.
    pub irreducible_and_convention: bool,
    /// Letters in the order they are inserted into the erased permutation.
    pub insertion_order: Option<Vec<String>>,
    pub erased: String,
    pub start_identified: Option<String>,
    pub start_matches: bool,
    pub stratum: String,
    pub stratum_matches: bool,
    /// `None` when the criterion does not apply.
    pub hyperelliptic: Option<bool>,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Checks one `(start, end, gp)` entry.
pub fn verify_row(catalog: &ComponentCatalog, row: &str, start: &str, end: &str, text: &str) -> Result<RowReport> {
    let gp: GeneralizedPermutation = text.parse()?;
    let mut failures = Vec::new();
    let irr = gp.is_irreducible() && gp.satisfies_convention() && !gp.is_genuine();
    if !irr {
        failures.push("not irreducible with duplicates in both rows".to_string());
    }
    let tau = gp.erase_letters(&["A", "B"])?;
    let mut order = None;
    for (first, second) in [("A", "B"), ("B", "A")] {
        // erase `second` last means it was inserted first
        let mid = gp.erase_letters(&[first])?;
        if is_simple_extension(&mid, &tau)?.is_some() && is_simple_extension(&gp, &mid)?.is_some() {
            order = Some(vec![second.to_string(), first.to_string()]);
            break;
        }
    }
    if order.is_none() {
        failures.push("no order of A, B gives two nested simple extensions".to_string());
    }
    let ident = catalog.identify(&tau)?;
    let start_identified = ident.map(|i| i.label);
    let start_matches = start_identified.as_deref() == Some(start);
    if !start_matches {
        failures.push(format!("start identified as {start_identified:?}, expected {start}"));
    }
    let sig = stratum_signature(&gp)?;
    let stratum = sig.quadratic_label();
    let stratum_matches = stratum == label_stratum(end);
    if !stratum_matches {
        failures.push(format!("stratum {stratum}, expected {}", label_stratum(end)));
    }
    let hyperelliptic = hyperelliptic_test(&gp).ok();
    if hyperelliptic == Some(true) {
        failures.push("hyperelliptic criterion is positive".to_string());
    }
    Ok(RowReport {
        row: row.to_string(),
        gp: gp.to_string(),
        start: start.to_string(),
        end: end.to_string(),
        irreducible_and_convention: irr,
        insertion_order: order,
        erased: tau.to_string(),
        start_identified,
        start_matches,
        stratum,
        stratum_matches,
        hyperelliptic,
        passed: failures.is_empty(),
        failures,
    })
}

/// Verifies the selected rows (1-based) of the table.
pub fn verify_extension_table(catalog: &ComponentCatalog, rows: &[usize]) -> Result<Vec<RowReport>> {
    rows.iter()
        .map(|&r| {
            let (start, end, text) = TABLE1.get(r.wrapping_sub(1)).ok_or_else(|| Error::OutOfRange(format!("row {r}")))?;
            verify_row(catalog, &r.to_string(), start, end, text)
        })
        .collect()
}

/// Verifies the genus-two and genus-three extensions.
pub fn verify_low_genus(catalog: &ComponentCatalog) -> Result<Vec<RowReport>> {
    LOW_GENUS_EXTENSIONS
        .iter()
        .enumerate()
        .map(|(i, (start, end, text))| verify_row(catalog, &format!("low-genus-{}", i + 1), start, end, text))
        .collect()
}
