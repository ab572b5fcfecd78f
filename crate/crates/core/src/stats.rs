//! Element-order statistics: spectra, ψ, average order and i_k counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::rational::Rational;
use crate::structure::ElementSet;

const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Number of elements of each order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSpectrum {
    counts: BTreeMap<u64, u64>,
    group_order: u64,
}

impl OrderSpectrum {
    /// Builds a spectrum from raw counts, checking every invariant.
    pub fn from_counts(counts: BTreeMap<u64, u64>, group_order: u64) -> Result<Self> {
        let s = OrderSpectrum { counts, group_order };
        s.check()?;
        Ok(s)
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// `Σ d·count`, checked.
    pub fn psi(&self) -> Result<u64> {
        self.counts.iter().try_fold(0u64, |acc, (&d, &c)| {
            d.checked_mul(c)
                .and_then(|t| acc.checked_add(t))
                .ok_or_else(|| Error::Overflow("ψ exceeds u64".into()))
        })
    }

    pub fn avg_order(&self) -> Result<Rational> {
        Rational::from_counts(self.psi()?, self.group_order)
    }

    pub fn max_order(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(1)
    }

    /// Sum of counts, identity count, divisibility of |G| and of counts by φ(d).
    pub fn check(&self) -> Result<()> {
        let total: u64 = self.counts.values().sum();
        if total != self.group_order {
            return Err(Error::Precondition(format!("counts sum to {total}, not {}", self.group_order)));
        }
        if self.count(1) != 1 {
            return Err(Error::Precondition("exactly one element has order 1".into()));
        }
        for (&d, &c) in &self.counts {
            if c == 0 {
                return Err(Error::Precondition(format!("zero count stored for order {d}")));
            }
            if !self.group_order.is_multiple_of(d) {
                return Err(Error::Precondition(format!("order {d} does not divide {}", self.group_order)));
            }
            if c % euler_phi(d) != 0 {
                return Err(Error::Precondition(format!("φ({d}) does not divide {c}")));
            }
        }
        Ok(())
    }

    /// Only orders 1 and 2 occur.
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.counts.keys().all(|&d| d <= 2)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn tally(orders: &[u32]) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for &o in orders {
        *m.entry(o as u64).or_insert(0) += 1;
    }
    m
}

pub fn order_spectrum(group: &EnumeratedGroup) -> OrderSpectrum {
    let orders = group.element_orders();
    let counts = if orders.len() >= PARALLEL_THRESHOLD {
        orders.par_chunks(PARALLEL_THRESHOLD).map(tally).reduce(BTreeMap::new, |mut a, b| {
            for (d, c) in b {
                *a.entry(d).or_insert(0) += c;
            }
            a
        })
    } else {
        tally(orders)
    };
    OrderSpectrum { counts, group_order: group.order() as u64 }
}

pub fn psi(group: &EnumeratedGroup) -> Result<u64> {
    order_spectrum(group).psi()
}

pub fn psi_subset(group: &EnumeratedGroup, s: &ElementSet) -> Result<u64> {
    let orders = group.element_orders();
    s.iter().try_fold(0u64, |acc, x| {
        let o = *orders.get(x).ok_or(Error::IndexOutOfRange { index: x, order: group.order() })?;
        acc.checked_add(o as u64).ok_or_else(|| Error::Overflow("ψ exceeds u64".into()))
    })
}

pub fn avg_order(group: &EnumeratedGroup) -> Result<Rational> {
    order_spectrum(group).avg_order()
}

/// Number of elements of order exactly `k`.
pub fn i_k(group: &EnumeratedGroup, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    Ok(group.element_orders().iter().filter(|&&o| o as u64 == k).count() as u64)
}

/// `3n + (n − 2·i2 − (i3 + 1))`, the ψ floor for non-solvable groups in
/// terms of the involution and order-3 counts.
pub fn nonsolvable_psi_lower_bound(n: u64, i2: u64, i3: u64) -> Result<u64> {
    if i2 + i3 + 1 > n {
        return Err(Error::Precondition(format!("i2 + i3 + 1 = {} exceeds n = {n}", i2 + i3 + 1)));
    }
    let rest = n as i128 - 2 * i2 as i128 - (i3 as i128 + 1);
    let bound = 3 * n as i128 + rest;
    u64::try_from(bound.max(0)).map_err(|_| Error::Overflow("bound exceeds u64".into()))
}

/// Outcome of a conditional inequality: hypothesis failed, or conclusion
/// checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditional {
    Vacuous,
    Holds,
    Violated,
}

/// One of the refined lower bounds on o(G) for non-solvable groups with few
/// involutions or elements of order 3.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvolutionBound {
    pub hypothesis: String,
    pub conclusion: String,
    pub outcome: Conditional,
}

/// The four conditional bounds on o(G) for a non-solvable group, each
/// vacuous unless its hypothesis on i_2, i_3 holds.
pub fn involution_bounds(spectrum: &OrderSpectrum) -> Result<Vec<InvolutionBound>> {
    let n = spectrum.group_order() as i64;
    let i2 = spectrum.count(2) as i64;
    let i3 = spectrum.count(3) as i64;
    let o = spectrum.avg_order()?;
    let i2r = Rational::integer(i2);
    let nr = Rational::integer(n);
    let cases: [(String, bool, String, bool); 4] = [
        (
            "i2 ≤ n/20".into(),
            i2r <= nr * Rational::new(1, 20),
            "o ≥ 71/20".into(),
            o >= Rational::new(71, 20),
        ),
        (
            "i2 ≤ 10n/99".into(),
            i2r <= nr * Rational::new(10, 99),
            "o > 34479/10000".into(),
            o > Rational::new(34479, 10000),
        ),
        (
            "i2 < n/15".into(),
            i2r < nr * Rational::new(1, 15),
            "o > 211/60".into(),
            o > Rational::new(211, 60),
        ),
        (
            "i2 ≤ n/16 and i3 + 1 ≤ n/14".into(),
            i2r <= nr * Rational::new(1, 16) && Rational::integer(i3 + 1) <= nr * Rational::new(1, 14),
            "o > 19/5".into(),
            o > Rational::new(19, 5),
        ),
    ];
    Ok(cases
        .into_iter()
        .map(|(hypothesis, hyp, conclusion, concl)| InvolutionBound {
            hypothesis,
            conclusion,
            outcome: match (hyp, concl) {
                (false, _) => Conditional::Vacuous,
                (true, true) => Conditional::Holds,
                (true, false) => Conditional::Violated,
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_str;

    fn spectrum(s: &str) -> Vec<(u64, u64)> {
        order_spectrum(&enumerate_str(s).unwrap()).counts().iter().map(|(&d, &c)| (d, c)).collect()
    }

    #[test]
    fn spectra() {
        assert_eq!(spectrum("A5"), vec![(1, 1), (2, 15), (3, 20), (5, 24)]);
        assert_eq!(spectrum("C6"), vec![(1, 1), (2, 1), (3, 2), (6, 2)]);
        assert_eq!(spectrum("C2 x C2 x C2 x C2"), vec![(1, 1), (2, 15)]);
    }

    #[test]
    fn psi_values() {
        for (s, v) in [("A5", 211), ("A6", 1411), ("PSL(2,7)", 715), ("S5", 471)] {
            assert_eq!(psi(&enumerate_str(s).unwrap()).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn averages() {
        let avg = |s: &str| avg_order(&enumerate_str(s).unwrap()).unwrap();
        assert_eq!(avg("A5"), Rational::new(211, 60));
        assert_eq!(avg("S3"), Rational::new(13, 6));
        assert_eq!(avg("C6"), Rational::new(7, 2));
        assert_eq!(avg("C4"), Rational::new(11, 4));
        assert_eq!(avg("A5 x C7"), Rational::new(9073, 420));
    }

    #[test]
    fn subset_sums() {
        let s3 = enumerate_str("S3").unwrap();
        let odd: Vec<usize> = (0..6).filter(|&a| s3.element_order(a) == 2).collect();
        assert_eq!(psi_subset(&s3, &ElementSet::new(&s3, odd).unwrap()).unwrap(), 6);
        assert_eq!(psi_subset(&s3, &ElementSet::trivial(&s3)).unwrap(), 1);
        assert_eq!(psi_subset(&s3, &ElementSet::whole(&s3)).unwrap(), psi(&s3).unwrap());
    }

    #[test]
    fn involution_counts() {
        let a5 = enumerate_str("A5").unwrap();
        assert_eq!(i_k(&a5, 2).unwrap(), 15);
        assert_eq!(i_k(&a5, 3).unwrap(), 20);
        assert_eq!(i_k(&a5, 4).unwrap(), 0);
        assert_eq!(i_k(&enumerate_str("C2").unwrap(), 2).unwrap(), 1);
        assert!(i_k(&a5, 0).is_err());
    }

    #[test]
    fn lower_bound_formula() {
        assert_eq!(nonsolvable_psi_lower_bound(60, 15, 20).unwrap(), 189);
        assert_eq!(nonsolvable_psi_lower_bound(120, 25, 20).unwrap(), 409);
        assert_eq!(nonsolvable_psi_lower_bound(50, 0, 0).unwrap(), 199);
        assert!(nonsolvable_psi_lower_bound(10, 5, 5).is_err());
    }

    #[test]
    fn spectrum_invariants_rejected() {
        let bad = |pairs: &[(u64, u64)], n| OrderSpectrum::from_counts(pairs.iter().copied().collect(), n);
        assert!(bad(&[(1, 1), (2, 1)], 3).is_err());
        assert!(bad(&[(1, 2)], 2).is_err());
        assert!(bad(&[(1, 1), (3, 1), (2, 1)], 3).is_err());
        assert!(bad(&[(1, 1), (5, 3)], 4).is_err());
        assert!(bad(&[(1, 1), (2, 1), (3, 2), (6, 2)], 6).is_ok());
    }

    #[test]
    fn phi() {
        let got: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(got, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn conditional_bounds_on_a5() {
        let b = involution_bounds(&order_spectrum(&enumerate_str("A5").unwrap())).unwrap();
        assert!(b.iter().all(|x| x.outcome == Conditional::Vacuous));
    }
}
