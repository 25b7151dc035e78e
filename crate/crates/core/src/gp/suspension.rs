//! Suspension data and the four conditions they must satisfy.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{GeneralizedPermutation, Row};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ComplexRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }
}

/// One complex number per letter, indexed by the permutation's alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionDatum(pub Vec<ComplexRational>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuspensionViolation {
    /// The datum does not have one entry per letter.
    WrongLength { expected: usize, found: usize },
    NonPositiveReal { letter: String },
    /// A proper prefix of the top row has imaginary sum `<= 0`.
    TopPrefix { length: usize },
    /// A proper prefix of the bottom row has imaginary sum `>= 0`.
    BottomPrefix { length: usize },
    /// The two rows do not sum to the same complex number.
    TotalMismatch,
}

/// Lists every failed condition; an empty list means `zeta` is a valid
/// suspension datum for `gp`. Arithmetic is exact.
pub fn check_suspension(gp: &GeneralizedPermutation, zeta: &SuspensionDatum) -> Vec<SuspensionViolation> {
    let d = gp.d();
    if zeta.0.len() != d {
        return vec![SuspensionViolation::WrongLength { expected: d, found: zeta.0.len() }];
    }
    let mut out = Vec::new();
    for (l, z) in zeta.0.iter().enumerate() {
        if !z.re.is_positive() {
            out.push(SuspensionViolation::NonPositiveReal { letter: gp.name(l as u8).to_string() });
        }
    }
    let prefix = |row: Row| -> Vec<BigRational> {
        let r = gp.row(row);
        let mut acc = BigRational::zero();
        r.iter()
            .map(|&l| {
                acc += &zeta.0[l as usize].im;
                acc.clone()
            })
            .collect()
    };
    let top = prefix(Row::Top);
    let bottom = prefix(Row::Bottom);
    for (k, s) in top[..top.len() - 1].iter().enumerate() {
        if !s.is_positive() {
            out.push(SuspensionViolation::TopPrefix { length: k + 1 });
        }
    }
    for (k, s) in bottom[..bottom.len() - 1].iter().enumerate() {
        if !s.is_negative() {
            out.push(SuspensionViolation::BottomPrefix { length: k + 1 });
        }
    }
    let re_sum = |row: Row| -> BigRational {
        gp.row(row).iter().map(|&l| zeta.0[l as usize].re.clone()).sum()
    };
    if top.last() != bottom.last() || re_sum(Row::Top) != re_sum(Row::Bottom) {
        out.push(SuspensionViolation::TotalMismatch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[(i64, i64)]) -> SuspensionDatum {
        SuspensionDatum(v.iter().map(|&(a, b)| ComplexRational::from_ints(a, b)).collect())
    }

    #[test]
    fn torus_data() {
        let t: GeneralizedPermutation = "1 2 / 2 1".parse().unwrap();
        assert!(check_suspension(&t, &z(&[(1, 1), (1, -1)])).is_empty());
        let v = check_suspension(&t, &z(&[(1, -1), (1, 1)]));
        assert!(v.contains(&SuspensionViolation::TopPrefix { length: 1 }));
        let v = check_suspension(&t, &z(&[(0, 1), (1, -1)]));
        assert_eq!(v, vec![SuspensionViolation::NonPositiveReal { letter: "1".into() }]);
    }

    #[test]
    fn strict_datum() {
        let g: GeneralizedPermutation = "1 2 3 A A 4 / 4 3 B B 2 1".parse().unwrap();
        // alphabet order: 1 2 3 A 4 B
        let good = z(&[(1, 8), (1, -2), (1, -2), (1, -1), (1, -2), (1, -1)]);
        assert!(check_suspension(&g, &good).is_empty());
        let unequal = z(&[(1, 8), (1, -2), (1, -2), (2, -1), (1, -2), (1, -1)]);
        assert_eq!(check_suspension(&g, &unequal), vec![SuspensionViolation::TotalMismatch]);
        assert!(check_suspension(&g, &z(&[(1, 1)])).len() == 1);
    }
}
