//! Static data: tabulated ψ values and the simple groups whose orders have
//! only prime divisors in {2, 3, 5, 7, 11, 13}.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::enumerate_str;
use crate::stats::order_spectrum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownPsiRecord {
    pub name: String,
    /// Group spec that enumerates this group.
    pub spec: String,
    pub order: u64,
    pub psi: u64,
    pub source: String,
}

const TABULATED: &str = "tabulated value";

/// The seven tabulated values, exactly as published.
pub fn known_psi_table() -> Vec<KnownPsiRecord> {
    [
        ("A5", "A5", 60, 211),
        ("A6", "A6", 360, 1411),
        ("L2(7)", "PSL(2,7)", 168, 715),
        ("L2(8)", "PSL(2,8)", 504, 3319),
        ("L2(11)", "PSL(2,11)", 660, 3741),
        ("L2(13)", "PSL(2,13)", 1092, 7281),
        ("S5", "S5", 120, 501),
    ]
    .into_iter()
    .map(|(name, spec, order, psi)| KnownPsiRecord {
        name: name.into(),
        spec: spec.into(),
        order,
        psi,
        source: TABULATED.into(),
    })
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KnownPsiStatus {
    Match,
    /// The enumerated group has a different order; ψ was not compared.
    OrderMismatch { computed_order: u64 },
    PsiMismatch { computed_psi: u64 },
    Failed { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownPsiCheck {
    pub record: KnownPsiRecord,
    pub status: KnownPsiStatus,
}

impl KnownPsiCheck {
    pub fn is_match(&self) -> bool {
        self.status == KnownPsiStatus::Match
    }
}

/// Enumerates every tabulated group and compares order, then ψ.
pub fn verify_known_psi() -> Vec<KnownPsiCheck> {
    known_psi_table()
        .into_par_iter()
        .map(|record| {
            let status = match enumerate_str(&record.spec) {
                Err(e) => KnownPsiStatus::Failed { error: e.to_string() },
                Ok(g) if g.order() as u64 != record.order => {
                    KnownPsiStatus::OrderMismatch { computed_order: g.order() as u64 }
                }
                Ok(g) => match order_spectrum(&g).psi() {
                    Err(e) => KnownPsiStatus::Failed { error: e.to_string() },
                    Ok(p) if p == record.psi => KnownPsiStatus::Match,
                    Ok(p) => KnownPsiStatus::PsiMismatch { computed_psi: p },
                },
            };
            KnownPsiCheck { record, status }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleListEntry {
    pub pi_size: u8,
    pub name: String,
    /// Set for individual groups.
    pub order: Option<u64>,
    /// Set for parametric families.
    pub constraint: Option<String>,
    /// Prime divisors of the order; empty for families.
    pub primes: Vec<u64>,
}

/// Prime divisors in increasing order.
pub fn prime_set(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

const FIXED: &[(u8, &str, u64)] = &[
    (3, "A5", 60),
    (3, "A6", 360),
    (3, "S4(3) ≅ U4(2)", 25_920),
    (3, "L2(7)", 168),
    (3, "L2(8)", 504),
    (3, "L3(3)", 5_616),
    (3, "U3(3)", 6_048),
    (4, "L2(25)", 7_800),
    (4, "L2(49)", 58_800),
    (4, "L3(4)", 20_160),
    (4, "L4(3)", 6_065_280),
    (4, "U3(4)", 62_400),
    (4, "U3(5)", 126_000),
    (4, "U4(3)", 3_265_920),
    (4, "U5(2)", 13_685_760),
    (4, "S4(5)", 4_680_000),
    (4, "S4(7)", 138_297_600),
    (4, "S6(2)", 1_451_520),
    (4, "O8+(2)", 174_182_400),
    (4, "G2(3)", 4_245_696),
    (4, "3D4(2)", 211_341_312),
    (4, "2F4(2)'", 17_971_200),
    (4, "Sz(8)", 29_120),
    (4, "A7", 2_520),
    (4, "A8", 20_160),
    (4, "A9", 181_440),
    (4, "A10", 1_814_400),
    (4, "M11", 7_920),
    (4, "M12", 95_040),
    (4, "J2", 604_800),
    (5, "L5(3)", 237_783_237_120),
    (5, "S6(3)", 4_585_351_680),
    (5, "U4(5)", 14_742_000_000),
    (5, "U6(2)", 9_196_830_720),
    (5, "O7(3)", 4_585_351_680),
    (5, "O8+(3)", 4_952_179_814_400),
    (5, "G2(4)", 251_596_800),
    (5, "A11", 19_958_400),
    (5, "A12", 239_500_800),
    (5, "M22", 443_520),
    (5, "HS", 44_352_000),
    (5, "McL", 898_128_000),
    (6, "L6(3)", 21_032_402_889_738_240),
    (6, "A13", 3_113_510_400),
    (6, "A14", 43_589_145_600),
    (6, "A15", 653_837_184_000),
    (6, "A16", 10_461_394_944_000),
    (6, "Suz", 448_345_497_600),
    (6, "Fi22", 64_561_751_654_400),
];

const FAMILIES: &[(u8, &str, &str)] = &[
    (4, "L2(q)", "q a prime, |π(q²−1)| = 3"),
    (4, "L2(2^m)", "2^m − 1 = u, 2^m + 1 = 3t, u and t primes, t > 3"),
    (4, "L2(3^m)", "3^m − 1 = 2u, 3^m + 1 = 4t, u and t primes"),
    (5, "L2(q)", "q a prime power, |π(q²−1)| = 4"),
    (5, "L3(q)", "q a prime power, |π((q²−1)(q³−1))| = 4"),
    (5, "U3(q)", "q a prime power, |π((q²−1)(q³+1))| = 4"),
    (5, "O5(q) ≅ S4(q)", "q a prime power, |π(q⁴−1)| = 4"),
    (5, "Sz(2^(2m+1))", "|π((2^(2m+1)−1)(2^(4m+2)+1))| = 4"),
    (5, "R(q)", "q = 3^(2m+1), |π(q²−1)| = 3, |π(q²−q+1)| = 1"),
    (6, "L2(q)", "q a prime power, |π(q²−1)| = 5"),
    (6, "L3(q)", "q a prime power, |π((q²−1)(q³−1))| = 5"),
    (6, "L4(q)", "q a prime power, |π((q²−1)(q³−1)(q⁴−1))| = 5"),
    (6, "U3(q)", "q a prime power, |π((q²−1)(q³+1))| = 5"),
    (6, "U4(q)", "q a prime power, |π((q²−1)(q³+1)(q⁴−1))| = 5"),
    (6, "O5(q) ≅ S4(q)", "q a prime power, |π(q⁴−1)| = 5"),
    (6, "G2(q)", "q a prime power, |π(q⁶−1)| = 5"),
    (6, "Sz(2^(2m+1))", "|π((2^(2m+1)−1)(2^(4m+2)+1))| = 5"),
    (6, "R(3^(2m+1))", "|π((3^(2m+1)−1)(3^(6m+3)+1))| = 5"),
];

/// Simple groups with exactly `pi_size` prime divisors, all in
/// {2, 3, 5, 7, 11, 13}: families first, then individual groups.
pub fn our_simple_list(pi_size: u8) -> Result<Vec<SimpleListEntry>> {
    if !(3..=6).contains(&pi_size) {
        return Err(Error::Precondition(format!("prime-set size {pi_size} is outside 3..=6")));
    }
    let families = FAMILIES.iter().filter(|f| f.0 == pi_size).map(|&(k, name, c)| SimpleListEntry {
        pi_size: k,
        name: name.into(),
        order: None,
        constraint: Some(c.into()),
        primes: Vec::new(),
    });
    let fixed = FIXED.iter().filter(|f| f.0 == pi_size).map(|&(k, name, order)| SimpleListEntry {
        pi_size: k,
        name: name.into(),
        order: Some(order),
        constraint: None,
        primes: prime_set(order),
    });
    Ok(families.chain(fixed).collect())
}
