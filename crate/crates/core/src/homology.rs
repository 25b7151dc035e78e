//! Intersection forms and Kontsevich–Zorich cocycle matrices.
//!
//! Matrices act on row vectors. Along a walk `γ_1 … γ_n` the cocycle is
//! `B_γ = B_{γ_n} ⋯ B_{γ_1}` and satisfies `Ω_end = B_γ Ω_start B_γᵀ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gp::{GeneralizedPermutation, Letter};
use crate::induction::{follow_walk, Arrow, ReverseResolver, Step, WalkedArrow};
use crate::intmat::IntMatrix;

/// Alternating form indexed by a list of letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    /// Letter of each row/column, in alphabet order.
    pub letters: Vec<Letter>,
    pub names: Vec<String>,
    pub matrix: IntMatrix,
}

impl IntersectionForm {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn dim(&self) -> usize {
        self.letters.len()
    }
}

/// The form `Ω_π` on the full alphabet.
pub fn intersection_form(gp: &GeneralizedPermutation) -> IntersectionForm {
    let d = gp.d();
    let ell = gp.ell();
    let pos = gp.positions();
    let mut m = IntMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            if a == b {
                continue;
            }
            let v = omega_entry(pos[a], pos[b], ell);
            if v != 0 {
                m[(a, b)] = BigInt::from(v);
            }
        }
    }
    IntersectionForm {
        letters: (0..d as Letter).collect(),
        names: gp.alphabet().names().to_vec(),
        matrix: m,
    }
}

fn omega_entry((ia, ja): (usize, usize), (ib, jb): (usize, usize), ell: usize) -> i64 {
    if ia < ib && ib <= ell && ja > jb && jb > ell {
        return 1;
    }
    if ia < ib && ib < ja && ja < jb && jb <= ell {
        return 1;
    }
    if ib < ia && ia < jb && jb <= ell && ell < ja {
        return 1;
    }
    if ja > jb && jb > ia && ia > ell && ia > ib {
        return 1;
    }
    if ib < ia && ia <= ell && jb > ja && ja > ell {
        return -1;
    }
    if ib < ia && ia < jb && jb < ja && ja <= ell {
        return -1;
    }
    if ia < ib && ib < ja && ja <= ell && ell < jb {
        return -1;
    }
    if jb > ja && ja > ib && ib > ell && ib > ia {
        return -1;
    }
    0
}

/// Elementary matrix of one arrow, stored symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Identity,
    /// `Id + sign * E_{l w}`.
    Shear { l: usize, w: usize, sign: i8 },
    /// `Id - E_{l w} - 2 E_{l l}`, an involution.
    Flip { l: usize, w: usize },
}

impl Elementary {
    pub fn inverse(self) -> Self {
        match self {
            Elementary::Shear { l, w, sign } => Elementary::Shear { l, w, sign: -sign },
            e => e,
        }
    }

    pub fn to_matrix(self, n: usize) -> IntMatrix {
        self.left_apply(&IntMatrix::identity(n))
    }

    /// `self * acc`, as a row operation.
    pub fn left_apply(self, acc: &IntMatrix) -> IntMatrix {
        let mut out = acc.clone();
        self.left_apply_in_place(&mut out);
        out
    }

    pub fn left_apply_in_place(self, acc: &mut IntMatrix) {
        match self {
            Elementary::Identity => {}
            Elementary::Shear { l, w, sign } => acc.add_row_multiple(l, w, &BigInt::from(sign)),
            Elementary::Flip { l, w } => {
                for j in 0..acc.cols() {
                    let v = -(&acc[(l, j)] + &acc[(w, j)]);
                    acc[(l, j)] = v;
                }
            }
        }
    }
}

/// `B_η` for one arrow, evaluated with the form at its source.
pub fn kz_plus_elementary(arrow: &Arrow) -> Elementary {
    let (l, w) = (arrow.loser as usize, arrow.winner as usize);
    let pos = arrow.source.positions();
    if omega_entry(pos[l], pos[w], arrow.source.ell()) != 0 {
        Elementary::Shear { l, w, sign: 1 }
    } else {
        Elementary::Flip { l, w }
    }
}

pub fn kz_plus(arrow: &Arrow) -> IntMatrix {
    kz_plus_elementary(arrow).to_matrix(arrow.source.d())
}

/// Cocycle of a walk together with its end vertex.
#[derive(Debug, Clone)]
pub struct Cocycle {
    pub matrix: IntMatrix,
    pub end: GeneralizedPermutation,
}

/// Product of elementary factors along a walk.
pub fn plus_product(arrows: &[WalkedArrow], n: usize) -> IntMatrix {
    let mut acc = IntMatrix::identity(n);
    for wa in arrows {
        let e = kz_plus_elementary(&wa.arrow);
        let e = if wa.reversed { e.inverse() } else { e };
        e.left_apply_in_place(&mut acc);
    }
    acc
}

/// `B_γ` for a walk over `t`, `b`, `T`, `B`. Reversed steps need a resolver.
pub fn kz_walk(base: &GeneralizedPermutation, walk: &[Step], resolver: Option<&dyn ReverseResolver>) -> Result<Cocycle> {
    let (arrows, end) = follow_walk(base, walk, resolver)?;
    Ok(Cocycle { matrix: plus_product(&arrows, base.d()), end })
}

/// `B Ω Bᵀ`.
pub fn conjugate_form(b: &IntMatrix, omega: &IntMatrix) -> IntMatrix {
    &(b * omega) * &b.transpose()
}

/// Action of a cocycle on the quotient of homology by the kernel of a form.
#[derive(Debug, Clone)]
pub struct QuotientAction {
    /// Rows: integral basis vectors of a complement of the kernel.
    pub basis: IntMatrix,
    /// Rows: integral basis of the kernel.
    pub kernel: IntMatrix,
    /// Induced matrix on the quotient (row-vector convention).
    pub matrix: IntMatrix,
    /// Non-degenerate induced form `C Ω Cᵀ`.
    pub form: IntMatrix,
}

/// Splitting of `Z^n` into a complement and the kernel of `omega`:
/// `(C, K)` with `[C; K]` unimodular.
pub fn kernel_splitting(omega: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (u, h, _) = omega.row_echelon();
    let n = omega.rows();
    let zero_rows: Vec<usize> = (0..n).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
    let other: Vec<usize> = (0..n).filter(|i| !zero_rows.contains(i)).collect();
    (u.select_rows(&other), u.select_rows(&zero_rows))
}

/// Induced action of `b` (which must preserve `omega`) on the quotient by
/// `ker omega`.
pub fn quotient_action_for_form(omega: &IntMatrix, b: &IntMatrix) -> Result<QuotientAction> {
    if &conjugate_form(b, omega) != omega {
        return Err(Error::NotOmegaPreserving);
    }
    let (c, k) = kernel_splitting(omega);
    let r = c.rows();
    let n = omega.rows();
    let mut p = IntMatrix::zeros(n, n);
    for i in 0..n {
        let src = if i < r { c.row(i) } else { k.row(i - r) };
        for j in 0..n {
            p[(i, j)] = src[j].clone();
        }
    }
    let pinv = p.inverse().expect("splitting basis is unimodular");
    let conj = &(&p * b) * &pinv;
    debug_assert!(conj.block(r, n, 0, r).is_zero());
    let form = conjugate_form(&c, omega);
    Ok(QuotientAction { matrix: conj.block(0, r, 0, r), form, basis: c, kernel: k })
}

pub fn quotient_action(gp: &GeneralizedPermutation, b: &IntMatrix) -> Result<QuotientAction> {
    quotient_action_for_form(&intersection_form(gp).matrix, b)
}

/// Letters occurring in both rows, in alphabet order.
pub fn both_rows_letters(gp: &GeneralizedPermutation) -> Vec<Letter> {
    gp.both_rows_letters()
}

/// The form `Ω̃_π` on the letters occurring in both rows.
pub fn minus_form(gp: &GeneralizedPermutation) -> IntersectionForm {
    let tb = both_rows_letters(gp);
    let pos = gp.positions();
    let n = tb.len();
    let mut m = IntMatrix::zeros(n, n);
    for (a, &x) in tb.iter().enumerate() {
        for (b, &y) in tb.iter().enumerate() {
            let ((ix, jx), (iy, jy)) = (pos[x as usize], pos[y as usize]);
            if ix < iy && jx > jy {
                m[(a, b)] = BigInt::from(2);
            } else if iy < ix && jy > jx {
                m[(a, b)] = BigInt::from(-2);
            }
        }
    }
    IntersectionForm {
        names: tb.iter().map(|&l| gp.name(l).to_string()).collect(),
        letters: tb,
        matrix: m,
    }
}

/// `B̃_η` on the both-rows letters of the source. The winner must not be a
/// duplicate letter.
pub fn kz_minus_elementary(arrow: &Arrow) -> Result<Elementary> {
    let src = &arrow.source;
    if src.is_duplicate(arrow.winner) {
        return Err(Error::DuplicateWinner {
            kind: arrow.kind,
            gp: src.to_string(),
            winner: src.name(arrow.winner).to_string(),
        });
    }
    let tb = both_rows_letters(src);
    let idx = |l: Letter| tb.iter().position(|&x| x == l);
    Ok(match (idx(arrow.loser), idx(arrow.winner)) {
        (Some(l), Some(w)) => Elementary::Shear { l, w, sign: 1 },
        _ => Elementary::Identity,
    })
}

pub fn kz_minus(arrow: &Arrow) -> Result<IntMatrix> {
    let n = both_rows_letters(&arrow.source).len();
    Ok(kz_minus_elementary(arrow)?.to_matrix(n))
}

pub fn minus_product(arrows: &[WalkedArrow], n: usize) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(n);
    for wa in arrows {
        let e = kz_minus_elementary(&wa.arrow)?;
        let e = if wa.reversed { e.inverse() } else { e };
        e.left_apply_in_place(&mut acc);
    }
    Ok(acc)
}

/// `B̃_γ` for a walk in which no arrow has a duplicate winner.
pub fn kz_minus_walk(base: &GeneralizedPermutation, walk: &[Step], resolver: Option<&dyn ReverseResolver>) -> Result<Cocycle> {
    let (arrows, end) = follow_walk(base, walk, resolver)?;
    let n = both_rows_letters(base).len();
    Ok(Cocycle { matrix: minus_product(&arrows, n)?, end })
}

/// The form restricted to the rows given, as used for the minus quotient.
pub fn minus_quotient_action(gp: &GeneralizedPermutation, b: &IntMatrix) -> Result<QuotientAction> {
    quotient_action_for_form(&minus_form(gp).matrix, b)
}

/// `true` when `m` has determinant `±1`.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    let d = m.det();
    d == BigInt::one() || d == -BigInt::one()
}
