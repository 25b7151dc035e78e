//! Evidence for finite index: closures of Rauzy–Veech groups modulo a
//! prime, random cycle harvesting, complete walks and the decomposition of
//! mixed cycles into directed ones.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gp::GeneralizedPermutation;
use crate::homology::{kz_minus_walk, kz_walk, minus_quotient_action, quotient_action};
use crate::induction::{follow_walk, walk_to_string, MoveKind, RauzyClass, ReverseResolver, Step};
use crate::intmat::IntMatrix;

/// Largest modulus handled by [`ModpMatrix`].
pub const MAX_MODULUS: u64 = 251;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// `|Sp(2g, F_p)| = p^(g²) ∏_{i=1..g} (p^{2i} − 1)`, or `None` on overflow.
pub fn sp_order(g: u32, p: u64) -> Option<u128> {
    let p = p as u128;
    let mut acc = p.checked_pow(g * g)?;
    for i in 1..=g {
        acc = acc.checked_mul(p.checked_pow(2 * i)? - 1)?;
    }
    Some(acc)
}

/// Square matrix over `F_p`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModpMatrix {
    n: usize,
    p: u64,
    data: Vec<u8>,
}

impl ModpMatrix {
    pub fn identity(n: usize, p: u64) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        ModpMatrix { n, p, data }
    }

    pub fn from_int(m: &IntMatrix, p: u64) -> Result<Self> {
        check_modulus(p)?;
        assert!(m.is_square());
        Ok(ModpMatrix { n: m.rows(), p, data: m.mod_p(p).into_iter().map(|x| x as u8).collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j] as u64
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    s += self.get(i, k) * other.get(k, j);
                }
                data[i * n + j] = (s % self.p) as u8;
            }
        }
        ModpMatrix { n, p: self.p, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        ModpMatrix { n, p: self.p, data }
    }

    fn pack(&self, bits: usize) -> u128 {
        self.data.iter().fold(0u128, |acc, &x| (acc << bits) | x as u128)
    }

    /// Determinant over `F_p` by elimination.
    pub fn det(&self) -> u64 {
        let (n, p) = (self.n, self.p);
        let mut a: Vec<u64> = self.data.iter().map(|&x| x as u64).collect();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let piv = a[c * n + c];
            det = det * piv % p;
            let inv = pow_mod(piv, p - 2, p);
            for r in c + 1..n {
                let f = a[r * n + c] * inv % p;
                if f != 0 {
                    for j in c..n {
                        a[r * n + j] = (a[r * n + j] + p * p - f * a[c * n + j]) % p;
                    }
                }
            }
        }
        det
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn check_modulus(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    Ok(())
}

fn bfs_closure(gens: &[&ModpMatrix], n: usize, p: u64, bits: usize, budget: usize) -> Result<HashSet<u128>> {
    let id = ModpMatrix::identity(n, p);
    let mut seen: HashSet<u128> = HashSet::from([id.pack(bits)]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let products: Vec<(u128, ModpMatrix)> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| {
                let m = x.mul(g);
                (m.pack(bits), m)
            }))
            .collect();
        frontier = Vec::new();
        for (key, m) in products {
            if seen.insert(key) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded { what: "closure elements", limit: budget });
                }
                frontier.push(m);
            }
        }
    }
    Ok(seen)
}

/// Order of a closure and its index in the symplectic group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClosureOrder {
    pub p: u64,
    pub genus: u32,
    pub generators: usize,
    pub order: u128,
    pub sp_order: u128,
    pub index: u128,
}

/// Reduces an integral form to a primitive one modulo `p`, failing when
/// the result is degenerate.
pub fn form_mod_p(form: &IntMatrix, p: u64) -> Result<ModpMatrix> {
    let c = form.content();
    let f = if c > BigInt::from(1) { form.div_exact(&c) } else { form.clone() };
    let m = ModpMatrix::from_int(&f, p)?;
    if m.det() == 0 {
        return Err(Error::DegenerateForm(p));
    }
    Ok(m)
}

/// Subgroup of `Sp(form, F_p)` generated by `gens`, by breadth-first
/// closure under right multiplication. At most `budget` elements.
pub fn modp_closure(gens: &[ModpMatrix], form: &ModpMatrix, budget: usize) -> Result<ClosureOrder> {
    let (n, p) = (form.dim(), form.p);
    check_modulus(p)?;
    for (i, g) in gens.iter().enumerate() {
        if g.dim() != n || g.p != p || g.mul(form).mul(&g.transpose()) != *form {
            return Err(Error::NonSymplecticGenerator(i as u64));
        }
    }
    let bits = 64 - (p - 1).leading_zeros() as usize;
    if n * n * bits > 128 {
        return Err(Error::OutOfRange(format!("{n}x{n} matrices modulo {p} do not pack into 128 bits")));
    }
    // Only generators outside the group generated so far enlarge it.
    let mut accepted: Vec<&ModpMatrix> = Vec::new();
    let mut seen: HashSet<u128> = HashSet::from([ModpMatrix::identity(n, p).pack(bits)]);
    for g in gens {
        if seen.contains(&g.pack(bits)) {
            continue;
        }
        accepted.push(g);
        seen = bfs_closure(&accepted, n, p, bits, budget)?;
    }
    let genus = (n / 2) as u32;
    let sp = sp_order(genus, p).ok_or_else(|| Error::OutOfRange(format!("|Sp({}, {p})| overflows", n)))?;
    let order = seen.len() as u128;
    if sp % order != 0 {
        return Err(Error::NonDividingOrder { order, sp });
    }
    Ok(ClosureOrder { p, genus, generators: gens.len(), order, sp_order: sp, index: sp / order })
}

/// Which cocycle a group is generated by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Plus,
    Minus,
}

/// Random cycle harvesting parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarvestConfig {
    pub cycles: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Allow reversed steps in the random part.
    pub mixed: bool,
    /// Cap on the number of repetitions needed to close a labeled cycle.
    pub max_power: usize,
}

impl Default for HarvestConfig {
    fn default() -> Self {
        HarvestConfig { cycles: 200, max_len: 60, seed: 0, mixed: false, max_power: 512 }
    }
}

/// Admissible for the minus cocycle: the winner is not a duplicate letter.
fn admissible(class: &RauzyClass, v: usize, kind: MoveKind) -> bool {
    match class.winner(v, kind) {
        Some(w) => !class.vertex(v).is_duplicate(w),
        None => false,
    }
}

/// Shortest directed path from `from` to `to` using only allowed arrows.
fn path_with(class: &RauzyClass, from: usize, to: usize, allowed: &dyn Fn(usize, MoveKind) -> bool) -> Option<Vec<MoveKind>> {
    let mut prev: HashMap<usize, (usize, MoveKind)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = HashSet::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let (p, k) = prev[&cur];
                path.push(k);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for k in MoveKind::BOTH {
            if let Some(t) = class.target(v, k) {
                if allowed(v, k) && seen.insert(t) {
                    prev.insert(t, (v, k));
                    queue.push_back(t);
                }
            }
        }
    }
    None
}

fn same_rows(a: &GeneralizedPermutation, b: &GeneralizedPermutation) -> bool {
    a.top() == b.top() && a.bottom() == b.bottom()
}

/// Smallest power of `walk` that is a labeled cycle at `base`.
pub fn close_by_power(
    base: &GeneralizedPermutation,
    walk: &[Step],
    resolver: &dyn ReverseResolver,
    max_power: usize,
) -> Result<Option<Vec<Step>>> {
    let mut cur = base.clone();
    for k in 1..=max_power {
        let (_, end) = follow_walk(&cur, walk, Some(resolver))?;
        if same_rows(&end, base) {
            return Ok(Some(walk.repeat(k)));
        }
        cur = end;
    }
    Ok(None)
}

/// Random cycles at `base` through a reduced class containing it: a random
/// walk of length at most `max_len`, a shortest directed path back to the
/// base vertex, repeated until the labels return.
pub fn harvest_cycles(
    base: &GeneralizedPermutation,
    class: &RauzyClass,
    kind: GroupKind,
    cfg: &HarvestConfig,
) -> Result<Vec<Vec<Step>>> {
    let start = class.find(base).ok_or_else(|| Error::NotACycle(base.to_string()))?;
    let allowed = |v: usize, k: MoveKind| kind == GroupKind::Plus || admissible(class, v, k);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.cycles);
    let mut attempts = 0usize;
    while out.len() < cfg.cycles && attempts < cfg.cycles * 20 {
        attempts += 1;
        let len = rng.gen_range(1..=cfg.max_len.max(1));
        let mut v = start;
        let mut walk = Vec::with_capacity(len);
        for _ in 0..len {
            let mut options: Vec<(Step, usize)> = MoveKind::BOTH
                .iter()
                .filter_map(|&k| class.target(v, k).filter(|_| allowed(v, k)).map(|t| (Step::forward(k), t)))
                .collect();
            if cfg.mixed {
                for k in MoveKind::BOTH {
                    if let Some(s) = class.unique_source(v, k).filter(|&s| allowed(s, k)) {
                        options.push((Step::backward(k), s));
                    }
                }
            }
            if options.is_empty() {
                break;
            }
            let (step, t) = options[rng.gen_range(0..options.len())];
            walk.push(step);
            v = t;
        }
        let Some(back) = path_with(class, v, start, &allowed) else { continue };
        walk.extend(back.into_iter().map(Step::forward));
        if walk.is_empty() {
            continue;
        }
        if let Some(c) = close_by_power(base, &walk, class, cfg.max_power)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Integral matrices of the cycles on the quotient by the kernel of the
/// relevant form, together with that (non-degenerate) form.
pub fn cycle_matrices(
    base: &GeneralizedPermutation,
    cycles: &[Vec<Step>],
    kind: GroupKind,
    resolver: &dyn ReverseResolver,
) -> Result<(Vec<IntMatrix>, IntMatrix)> {
    let acts: Vec<_> = cycles
        .par_iter()
        .map(|c| {
            let coc = match kind {
                GroupKind::Plus => kz_walk(base, c, Some(resolver))?,
                GroupKind::Minus => kz_minus_walk(base, c, Some(resolver))?,
            };
            if !same_rows(&coc.end, base) {
                return Err(Error::NotACycle(coc.end.to_string()));
            }
            match kind {
                GroupKind::Plus => quotient_action(base, &coc.matrix),
                GroupKind::Minus => minus_quotient_action(base, &coc.matrix),
            }
        })
        .collect::<Result<_>>()?;
    let form = match acts.first() {
        Some(a) => a.form.clone(),
        None => {
            let id = IntMatrix::identity(match kind {
                GroupKind::Plus => base.d(),
                GroupKind::Minus => base.both_rows_letters().len(),
            });
            match kind {
                GroupKind::Plus => quotient_action(base, &id)?.form,
                GroupKind::Minus => minus_quotient_action(base, &id)?.form,
            }
        }
    };
    Ok((acts.into_iter().map(|a| a.matrix).collect(), form))
}

/// Closure of the cycle matrices modulo `p`.
pub fn cycles_closure(
    base: &GeneralizedPermutation,
    cycles: &[Vec<Step>],
    kind: GroupKind,
    resolver: &dyn ReverseResolver,
    p: u64,
    budget: usize,
) -> Result<ClosureOrder> {
    check_modulus(p)?;
    let (mats, form) = cycle_matrices(base, cycles, kind, resolver)?;
    let f = form_mod_p(&form, p)?;
    let mut gens: Vec<ModpMatrix> = Vec::new();
    let id = ModpMatrix::identity(f.dim(), p);
    for m in &mats {
        let g = ModpMatrix::from_int(m, p)?;
        if g != id && !gens.contains(&g) {
            gens.push(g);
        }
    }
    let mut res = modp_closure(&gens, &f, budget)?;
    res.generators = mats.len();
    Ok(res)
}

/// Minimum over the letters of the number of wins along a directed walk.
pub fn k_completeness(base: &GeneralizedPermutation, walk: &[Step]) -> Result<usize> {
    if walk.iter().any(|s| s.reversed) {
        return Err(Error::NotDirected(walk_to_string(walk)));
    }
    if walk.is_empty() {
        return Ok(0);
    }
    let (arrows, _) = follow_walk(base, walk, None)?;
    let mut wins = vec![0usize; base.d()];
    for a in &arrows {
        wins[a.arrow.winner as usize] += 1;
    }
    Ok(wins.into_iter().min().unwrap_or(0))
}

/// `true` when no non-empty proper prefix of `walk` is also a suffix.
pub fn is_unbordered(walk: &[Step]) -> bool {
    let n = walk.len();
    if n == 0 {
        return true;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && walk[i] != walk[k] {
            k = fail[k - 1];
        }
        if walk[i] == walk[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail[n - 1] == 0
}

/// A directed `k`-complete cycle at `base` without proper borders, found by
/// seeded random walks in a reduced class containing `base`.
pub fn find_gamma_star(base: &GeneralizedPermutation, class: &RauzyClass, k: usize, seed: u64, attempts: usize) -> Result<Vec<Step>> {
    let start = class.find(base).ok_or_else(|| Error::NotACycle(base.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = base.d();
    let step_cap = 64 * d * (k + 1) + class.len();
    for _ in 0..attempts {
        let mut cur = base.clone();
        let mut v = start;
        let mut wins = vec![0usize; d];
        let mut walk = Vec::new();
        while wins.iter().any(|&w| w < k) && walk.len() < step_cap {
            let opts: Vec<MoveKind> = MoveKind::BOTH.iter().copied().filter(|&m| class.target(v, m).is_some()).collect();
            if opts.is_empty() {
                break;
            }
            let m = opts[rng.gen_range(0..opts.len())];
            let a = crate::induction::apply_arrow(&cur, m)?;
            wins[a.winner as usize] += 1;
            cur = a.target;
            v = class.target(v, m).expect("checked");
            walk.push(Step::forward(m));
        }
        if wins.iter().any(|&w| w < k) {
            continue;
        }
        let Some(back) = class.shortest_path(v, start) else { continue };
        walk.extend(back.into_iter().map(Step::forward));
        let Some(cycle) = close_by_power(base, &walk, class, 512)? else { continue };
        if is_unbordered(&cycle) && k_completeness(base, &cycle)? >= k {
            return Ok(cycle);
        }
    }
    Err(Error::BudgetExceeded { what: "gamma-star attempts", limit: attempts })
}

/// Factor of a directed decomposition: `B_cycle^sign`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedFactor {
    pub cycle: Vec<Step>,
    pub inverse: bool,
}

/// Writes a closed walk with reversed steps as a product of directed
/// cycles at the base: `B_γ = B_{c_n}^{±1} ⋯ B_{c_1}^{±1}` (factors listed in
/// the order they are applied). Uses a labeled class containing `base` to
/// connect every vertex to the base by directed paths. The identity is
/// checked by exact multiplication.
pub fn directed_decomposition(base: &GeneralizedPermutation, walk: &[Step], class: &RauzyClass) -> Result<Vec<DirectedFactor>> {
    if walk.iter().all(|s| !s.reversed) {
        return Ok(vec![DirectedFactor { cycle: walk.to_vec(), inverse: false }]);
    }
    let b0 = class.find(base).ok_or_else(|| Error::NotACycle(base.to_string()))?;
    let (arrows, end) = follow_walk(base, walk, Some(class))?;
    if !same_rows(&end, base) {
        return Err(Error::NotACycle(end.to_string()));
    }
    let idx = |g: &GeneralizedPermutation| class.find(g).ok_or_else(|| Error::NotACycle(g.to_string()));
    let to_base = |v: usize| -> Result<Vec<Step>> {
        let p = class.shortest_path(v, b0).ok_or(Error::BudgetExceeded { what: "return path", limit: class.len() })?;
        Ok(p.into_iter().map(Step::forward).collect())
    };
    let from_base = |v: usize| -> Result<Vec<Step>> {
        let p = class.shortest_path(b0, v).ok_or(Error::BudgetExceeded { what: "path from base", limit: class.len() })?;
        Ok(p.into_iter().map(Step::forward).collect())
    };
    let loop_at = |v: usize| -> Result<Vec<Step>> { Ok([from_base(v)?, to_base(v)?].concat()) };
    let mut factors: Vec<DirectedFactor> = Vec::new();
    let mut push = |cycle: Vec<Step>, inverse: bool| {
        if cycle.is_empty() {
            return;
        }
        if let Some(last) = factors.last() {
            if last.cycle == cycle && last.inverse != inverse {
                factors.pop();
                return;
            }
        }
        factors.push(DirectedFactor { cycle, inverse });
    };
    for wa in &arrows {
        let (x, y) = (idx(&wa.arrow.source)?, idx(&wa.arrow.target)?);
        let through = [from_base(x)?, vec![Step::forward(wa.arrow.kind)], to_base(y)?].concat();
        if wa.reversed {
            // B_a^{-1} = H_x C_a^{-1} D_y H_y^{-1}
            push(loop_at(y)?, false);
            push(through, true);
        } else {
            // B_a = H_y D_y^{-1} C_a H_x^{-1}
            push(through, false);
            push(loop_at(y)?, true);
        }
    }
    let n = base.d();
    let mut prod = IntMatrix::identity(n);
    for f in &factors {
        let m = kz_walk(base, &f.cycle, None)?.matrix;
        let m = if f.inverse { m.inverse().expect("cocycle is unimodular") } else { m };
        prod = &m * &prod;
    }
    if prod != kz_walk(base, walk, Some(class))?.matrix {
        return Err(Error::DecompositionMismatch);
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induction::{enumerate_class_with, parse_walk, ClassMode};

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn sp_orders() {
        assert_eq!(sp_order(1, 2), Some(6));
        assert_eq!(sp_order(2, 2), Some(720));
        assert_eq!(sp_order(3, 2), Some(1_451_520));
        assert_eq!(sp_order(1, 3), Some(24));
    }

    #[test]
    fn determinant_mod_p() {
        let m = ModpMatrix::from_int(&IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]), 3).unwrap();
        assert_eq!(m.det(), 1);
        let m = ModpMatrix::from_int(&IntMatrix::from_rows(&[vec![2i64, 4], vec![1, 2]]), 5).unwrap();
        assert_eq!(m.det(), 0);
    }

    #[test]
    fn torus_closure() {
        let f = ModpMatrix::from_int(&IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]), 2).unwrap();
        let a = ModpMatrix::from_int(&IntMatrix::from_rows(&[vec![1i64, 1], vec![0, 1]]), 2).unwrap();
        let b = ModpMatrix::from_int(&IntMatrix::from_rows(&[vec![1i64, 0], vec![1, 1]]), 2).unwrap();
        let c = modp_closure(&[a.clone(), b], &f, 1000).unwrap();
        assert_eq!((c.order, c.index), (6, 1));
        assert_eq!(modp_closure(&[a], &f, 1000).unwrap().order, 2);
        assert!(matches!(modp_closure(&[], &f, 1000), Ok(ClosureOrder { order: 1, .. })));
        let bad = ModpMatrix::from_int(&IntMatrix::from_rows(&[vec![1i64, 0], vec![0, 0]]), 2).unwrap();
        assert!(matches!(modp_closure(&[bad], &f, 1000), Err(Error::NonSymplecticGenerator(0))));
    }

    #[test]
    fn completeness() {
        let t = gp("1 2 / 2 1");
        assert_eq!(k_completeness(&t, &[]).unwrap(), 0);
        assert_eq!(k_completeness(&t, &parse_walk("tb").unwrap()).unwrap(), 1);
        assert_eq!(k_completeness(&t, &parse_walk("ttbb").unwrap()).unwrap(), 2);
        assert!(matches!(k_completeness(&t, &parse_walk("tB").unwrap()), Err(Error::NotDirected(_))));
    }

    #[test]
    fn borders() {
        assert!(is_unbordered(&parse_walk("tb").unwrap()));
        assert!(is_unbordered(&parse_walk("ttb").unwrap()));
        assert!(!is_unbordered(&parse_walk("tbt").unwrap()));
        assert!(!is_unbordered(&parse_walk("tt").unwrap()));
    }

    #[test]
    fn gamma_star_torus_and_tau4() {
        for (g, k) in [("1 2 / 2 1", 1), ("1 2 / 2 1", 3), ("1 2 3 4 / 4 3 2 1", 1), ("1 2 3 4 / 4 3 2 1", 2)] {
            let g = gp(g);
            let class = enumerate_class_with(&g, ClassMode::Reduced, 1000).unwrap();
            let c = find_gamma_star(&g, &class, k, 7, 200).unwrap();
            assert!(k_completeness(&g, &c).unwrap() >= k);
            assert!(is_unbordered(&c));
            let (_, end) = follow_walk(&g, &c, None).unwrap();
            assert!(same_rows(&end, &g));
        }
    }

    #[test]
    fn torus_decomposition() {
        let t = gp("1 2 / 2 1");
        let class = enumerate_class_with(&t, ClassMode::Labeled, 10).unwrap();
        let f = directed_decomposition(&t, &parse_walk("tB").unwrap(), &class).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!((walk_to_string(&f[0].cycle), f[0].inverse), ("t".to_string(), false));
        assert_eq!((walk_to_string(&f[1].cycle), f[1].inverse), ("b".to_string(), true));
        let fwd = parse_walk("tbt").unwrap();
        assert_eq!(directed_decomposition(&t, &fwd, &class).unwrap(), vec![DirectedFactor { cycle: fwd, inverse: false }]);
    }

    #[test]
    fn tau4_mixed_decomposition() {
        let g = gp("1 2 3 4 / 4 3 2 1");
        let class = enumerate_class_with(&g, ClassMode::Labeled, 1000).unwrap();
        let cfg = HarvestConfig { cycles: 30, max_len: 20, seed: 3, mixed: true, max_power: 64 };
        let cycles = harvest_cycles(&g, &class, GroupKind::Plus, &cfg).unwrap();
        assert_eq!(cycles.len(), 30);
        for c in &cycles {
            directed_decomposition(&g, c, &class).unwrap();
        }
    }

    #[test]
    fn h2_closure_divides_six() {
        let g = gp("1 2 3 4 / 4 3 2 1");
        let class = enumerate_class_with(&g, ClassMode::Reduced, 1000).unwrap();
        let cycles = harvest_cycles(&g, &class, GroupKind::Plus, &HarvestConfig { cycles: 40, ..Default::default() }).unwrap();
        let c = cycles_closure(&g, &cycles, GroupKind::Plus, &class, 2, 1_000_000).unwrap();
        assert_eq!(c.genus, 2);
        assert_eq!(6 % c.index, 0, "{c:?}");
    }
}
