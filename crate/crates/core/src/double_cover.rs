//! Orientation double cover: the permutation-with-involution table and the
//! stratum of the cover.

use std::fmt;

use crate::error::{Error, Result};
use crate::gp::GeneralizedPermutation;
use crate::strata::StratumSignature;

/// Labels `(letter, ε)` to the left of `∗` (bottom row read right to left)
/// and to the right of it (top row read left to right). The first
/// occurrence of each letter, in position order, gets `ε = 0`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PermInvolution {
    pub left: Vec<(String, u8)>,
    pub right: Vec<(String, u8)>,
    /// `ι(A_l) ⊄ A_r` and `ι(A_r) ⊄ A_l`. Fails exactly when some row has
    /// no duplicate letter, in particular for genuine permutations.
    pub involution_condition: bool,
}

impl PermInvolution {
    /// Number of entries including `∗`.
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for PermInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |(l, e): &(String, u8)| format!("({l},{e})");
        let left: Vec<String> = self.left.iter().map(cell).collect();
        let right: Vec<String> = self.right.iter().map(cell).collect();
        write!(f, "{} * {}", left.join(" "), right.join(" "))
    }
}

pub fn to_perm_involution(gp: &GeneralizedPermutation) -> Result<PermInvolution> {
    if !gp.satisfies_convention() {
        return Err(Error::ConventionViolated(gp.to_string()));
    }
    let ell = gp.ell();
    let n = ell + gp.m();
    let sigma = gp.sigma();
    let eps = |p: usize| u8::from(sigma[p] < p);
    let label = |p: usize| (gp.name(gp.at(p)).to_string(), eps(p));
    let left: Vec<_> = (ell + 1..=n).rev().map(label).collect();
    let right: Vec<_> = (1..=ell).map(label).collect();
    // ι(A_l) ⊄ A_r: some bottom letter has its partner in the bottom row
    let bottom_dup = (ell + 1..=n).any(|p| sigma[p] > ell);
    let top_dup = (1..=ell).any(|p| sigma[p] <= ell);
    Ok(PermInvolution { left, right, involution_condition: bottom_dup && top_dup })
}

/// Stratum of the orientation double cover.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CoverStratum {
    /// Abelian orders of the cover, decreasing, marked points (order 0)
    /// included.
    pub orders: Vec<i64>,
    pub marked_points: usize,
    pub genus: i64,
    /// Number of odd orders downstairs.
    pub odd_orders: usize,
    /// Exactly two odd orders, so that the cover genus is `2g`.
    pub minus_eligible: bool,
}

impl CoverStratum {
    /// Orders without marked points.
    pub fn zeros(&self) -> Vec<i64> {
        self.orders.iter().copied().filter(|&o| o != 0).collect()
    }
}

impl fmt::Display for CoverStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.zeros().iter().map(|o| o.to_string()).collect();
        write!(f, "H({})", z.join(","))?;
        if self.marked_points > 0 {
            write!(f, " + {} marked", self.marked_points)?;
        }
        Ok(())
    }
}

/// An odd order `o` lifts to one zero of order `o + 1`; an even order `o`
/// lifts to two zeros of order `o / 2`. The genus is `2g - 1 + s/2` for `s`
/// odd orders.
pub fn cover_stratum(sig: &StratumSignature) -> CoverStratum {
    let mut orders = Vec::new();
    for &o in &sig.orders {
        if o % 2 != 0 {
            orders.push(o + 1);
        } else {
            orders.push(o / 2);
            orders.push(o / 2);
        }
    }
    orders.sort_unstable_by(|a, b| b.cmp(a));
    let s = sig.odd_count();
    let genus = 2 * sig.genus - 1 + s as i64 / 2;
    debug_assert_eq!(orders.iter().sum::<i64>(), 2 * genus - 2);
    CoverStratum {
        marked_points: orders.iter().filter(|&&o| o == 0).count(),
        orders,
        genus,
        odd_orders: s,
        minus_eligible: s == 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(orders: &[i64]) -> StratumSignature {
        StratumSignature::from_orders(orders.to_vec(), false).unwrap()
    }

    #[test]
    fn torus_table() {
        let t = to_perm_involution(&"1 2 / 2 1".parse().unwrap()).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.to_string(), "(1,1) (2,1) * (1,0) (2,0)");
        assert!(!t.involution_condition);
    }

    #[test]
    fn strict_table() {
        let g: GeneralizedPermutation = "1 2 3 A A 4 / 4 3 B B 2 1".parse().unwrap();
        let t = to_perm_involution(&g).unwrap();
        assert!(t.involution_condition);
        assert_eq!(t.left[0], ("1".to_string(), 1));
        assert_eq!(t.right[3], ("A".to_string(), 0));
        assert_eq!(t.right[4], ("A".to_string(), 1));
        let bad: GeneralizedPermutation = "1 A A 2 / 2 1".parse().unwrap();
        assert!(matches!(to_perm_involution(&bad), Err(Error::ConventionViolated(_))));
    }

    #[test]
    fn cover_examples() {
        let c = cover_stratum(&sig(&[6, -1, -1]));
        assert_eq!(c.orders, vec![3, 3, 0, 0]);
        assert_eq!(c.marked_points, 2);
        assert_eq!(c.genus, 4);
        assert!(c.minus_eligible);
        assert_eq!(c.to_string(), "H(3,3) + 2 marked");
        let c = cover_stratum(&sig(&[2, 3, 3]));
        assert_eq!(c.orders, vec![4, 4, 1, 1]);
        assert_eq!(c.genus, 6);
        let c = cover_stratum(&StratumSignature::from_orders(vec![4], true).unwrap());
        assert_eq!(c.orders, vec![2, 2]);
        assert_eq!(c.genus, 3);
    }
}
