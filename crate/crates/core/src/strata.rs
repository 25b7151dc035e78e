//! Singularity orders from the turning bijection on positions.

use std::fmt;

use crate::error::{Error, Result};
use crate::gp::GeneralizedPermutation;

/// The turning bijection `s` on positions `1..=2d` (index 0 unused).
pub fn turning_map(gp: &GeneralizedPermutation) -> Vec<usize> {
    let (ell, m) = (gp.ell(), gp.m());
    let sigma = gp.sigma();
    let mut s = vec![0usize; ell + m + 1];
    for k in 1..=ell + m {
        s[k] = if k == 1 {
            sigma[ell + 1]
        } else if k <= ell {
            sigma[k - 1]
        } else if k < ell + m {
            sigma[k + 1]
        } else {
            sigma[ell]
        };
    }
    s
}

/// Orbits of the turning bijection, each listed from its smallest position
/// in the order `k, s(k), s(s(k)), ...`; orbits sorted by smallest position.
pub fn turning_orbits(gp: &GeneralizedPermutation) -> Vec<Vec<usize>> {
    let s = turning_map(gp);
    let n = s.len() - 1;
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            orbit.push(k);
            k = s[k];
        }
        out.push(orbit);
    }
    out
}

/// Order of the singularity attached to an orbit.
pub fn orbit_order(gp: &GeneralizedPermutation, orbit: &[usize]) -> i64 {
    let last = gp.ell() + gp.m();
    orbit.iter().filter(|&&k| k != 1 && k != last).count() as i64 - 2
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StratumSignature {
    /// Quadratic orders, sorted in decreasing order.
    pub orders: Vec<i64>,
    pub genus: i64,
    pub marked_points: usize,
    /// The permutation was genuine, so the stratum is Abelian with orders
    /// `orders / 2`.
    pub abelian: bool,
}

impl StratumSignature {
    pub fn from_orders(mut orders: Vec<i64>, abelian: bool) -> Result<Self> {
        orders.sort_unstable_by(|a, b| b.cmp(a));
        let total: i64 = orders.iter().sum();
        if (total + 4) % 4 != 0 {
            return Err(Error::InconsistentGenus { from_orbits: total, from_rank: -1 });
        }
        let marked_points = orders.iter().filter(|&&o| o == 0).count();
        Ok(StratumSignature { genus: (total + 4) / 4, marked_points, orders, abelian })
    }

    /// Orders of the Abelian stratum when the signature comes from a genuine
    /// permutation.
    pub fn abelian_orders(&self) -> Option<Vec<i64>> {
        self.abelian.then(|| self.orders.iter().map(|o| o / 2).collect())
    }

    /// Number of odd orders.
    pub fn odd_count(&self) -> usize {
        self.orders.iter().filter(|o| *o % 2 != 0).count()
    }

    /// `Q(6,-1,-1)` style label of the quadratic orders.
    pub fn quadratic_label(&self) -> String {
        format!("Q({})", join(&self.orders))
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.abelian_orders() {
            Some(a) => write!(f, "H({}) [as {}]", join(&a), self.quadratic_label()),
            None => f.write_str(&self.quadratic_label()),
        }
    }
}

/// Signature from the orbit sizes alone.
pub fn orbit_signature(gp: &GeneralizedPermutation) -> Result<StratumSignature> {
    let orders = turning_orbits(gp).iter().map(|o| orbit_order(gp, o)).collect();
    StratumSignature::from_orders(orders, gp.is_genuine())
}

/// Signature with the genus cross-checked against the rank of the
/// intersection form.
pub fn stratum_signature(gp: &GeneralizedPermutation) -> Result<StratumSignature> {
    let sig = orbit_signature(gp)?;
    let rank = crate::homology::intersection_form(gp).rank() as i64;
    if rank != 2 * sig.genus {
        return Err(Error::InconsistentGenus { from_orbits: sig.genus, from_rank: rank / 2 });
    }
    Ok(sig)
}

/// Parses `"6,3,-1"` (optionally wrapped as `Q(...)`) into sorted orders.
pub fn parse_orders(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim().trim_start_matches(['Q', 'q']).trim_start_matches('(').trim_end_matches(')');
    let mut v = inner
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::MalformedText(format!("bad order `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    v.sort_unstable_by(|a, b| b.cmp(a));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(s: &str) -> GeneralizedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn orbits_examples() {
        assert_eq!(turning_orbits(&gp("1 2 / 2 1")), vec![vec![1, 2, 4, 3]]);
        assert_eq!(turning_orbits(&gp("1 2 3 4 / 4 3 2 1")), vec![vec![1, 4, 6, 2, 8, 5, 3, 7]]);
    }

    #[test]
    fn signature_examples() {
        let cases = [
            ("1 2 / 2 1", vec![0], 1),
            ("1 2 3 4 / 4 3 2 1", vec![4], 2),
            ("1 2 3 A A 4 / 4 3 B B 2 1", vec![6, -1, -1], 2),
            ("1 2 3 A 4 A 5 6 / 6 5 4 3 2 B B 1", vec![6, 3, -1], 3),
            ("1 2 A A 3 4 5 / 5 B B 4 3 2 1", vec![3, 3, -1, -1], 2),
            ("1 A A 2 3 4 5 6 / 6 B B 5 4 3 2 1", vec![10, -1, -1], 3),
            ("1 A 2 3 A 4 5 6 / 6 B 5 4 B 3 2 1", vec![6, 1, 1], 3),
        ];
        for (g, orders, genus) in cases {
            let s = stratum_signature(&gp(g)).unwrap();
            assert_eq!(s.orders, orders, "{g}");
            assert_eq!(s.genus, genus, "{g}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(stratum_signature(&gp("1 2 3 4 / 4 3 2 1")).unwrap().to_string(), "H(2) [as Q(4)]");
        assert_eq!(stratum_signature(&gp("1 2 3 A A 4 / 4 3 B B 2 1")).unwrap().to_string(), "Q(6,-1,-1)");
        let t = stratum_signature(&gp("1 2 / 2 1")).unwrap();
        assert_eq!(t.marked_points, 1);
    }

    #[test]
    fn orders_parsing() {
        assert_eq!(parse_orders("6,3,-1").unwrap(), vec![6, 3, -1]);
        assert_eq!(parse_orders("Q(-1,6,3)").unwrap(), vec![6, 3, -1]);
        assert!(parse_orders("6,x").is_err());
    }
}
