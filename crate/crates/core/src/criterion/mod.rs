//! Verdicts on the average element order: the solvability thresholds, their
//! consistency with an independent derived-series test, and the static
//! registries of known values.

mod corpus;
mod registry;
mod suites;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::rational::Rational;
use crate::stats::{order_spectrum, psi_subset, OrderSpectrum};
use crate::structure::{derived_series, is_normal, is_simple, ElementSet};

pub use corpus::{
    default_corpus, parse_corpus, verify_corpus, CorpusEntry, CorpusLine, CorpusReport, ScanOptions, Tally,
    DEFAULT_CORPUS,
};
pub use registry::{
    known_psi_table, our_simple_list, prime_set, verify_known_psi, KnownPsiCheck, KnownPsiRecord, KnownPsiStatus,
    SimpleListEntry,
};
pub use suites::{SuiteReport, SUITE_NAMES};

/// Exact threshold values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// o(S3).
    pub s3: Rational,
    /// o(A5).
    pub a5: Rational,
    /// Floor for simple groups other than A5.
    pub simple_floor: Rational,
    /// Floor for non-solvable groups.
    pub nonsolvable_floor: Rational,
    /// Offset in the index-3 bound.
    pub index3_offset: Rational,
    /// Floor on o(G) in the index-3 case.
    pub index3_floor: Rational,
}

impl Thresholds {
    pub fn standard() -> Self {
        Thresholds {
            s3: Rational::new(13, 6),
            a5: Rational::new(211, 60),
            simple_floor: Rational::new(71, 20),
            nonsolvable_floor: Rational::new(311, 100),
            index3_offset: Rational::new(8, 3),
            index3_floor: Rational::new(11, 3),
        }
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The hypothesis holds and so does the conclusion.
    Holds,
    /// The hypothesis holds and the group is the named exception.
    Exempt,
    /// The hypothesis does not hold.
    Vacuous,
    /// The hypothesis holds and the conclusion fails.
    Violated,
}

/// One threshold check, citing both sides of its comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub outcome: Outcome,
    pub comparison: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub order: u64,
    pub count: u64,
}

/// Everything `classify` learns about one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub spec: String,
    pub order: u64,
    pub psi: u64,
    pub o: Rational,
    /// Display only; comparisons use `o`.
    pub o_decimal: String,
    pub spectrum: Vec<SpectrumEntry>,
    pub i2: u64,
    pub i3: u64,
    pub solvable: bool,
    pub derived_series: Vec<usize>,
    pub certificates: Vec<String>,
    pub verdicts: Vec<Verdict>,
    pub consistent: bool,
}

pub const CERT_ELEMENTARY_ABELIAN_2: &str = "elementary abelian 2-group";
pub const CERT_S3: &str = "order 6 non-abelian ≅ S3";
pub const CERT_A5: &str = "order 60 simple ≅ A5";

impl ClassificationReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn has_certificate(&self, cert: &str) -> bool {
        self.certificates.iter().any(|c| c == cert)
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let t = Thresholds::standard();
        let position = match self.o.cmp(&t.a5) {
            std::cmp::Ordering::Less => format!("o = {} < 211/60", self.o),
            std::cmp::Ordering::Equal => "boundary: o = o(A5) = 211/60".to_string(),
            std::cmp::Ordering::Greater => format!("o = {} > 211/60", self.o),
        };
        let solv = if self.solvable { "solvable" } else { "non-solvable" };
        let mut notes = Vec::new();
        if self.verdicts.iter().any(|v| v.outcome == Outcome::Exempt) {
            notes.push("A5 boundary exemption");
        }
        if self.o == t.s3 && self.has_certificate(CERT_S3) {
            notes.push("S3 equality case");
        }
        let status = if self.consistent { "consistent" } else { "INCONSISTENT" };
        if notes.is_empty() {
            format!("{position}; {solv}; {status}")
        } else {
            format!("{position}; {solv}; {status} ({})", notes.join(", "))
        }
    }
}

/// Verdict names in report order.
pub const LOW_ORDER_BOUND: &str = "low_order_bound";
pub const A5_BOUNDARY: &str = "a5_boundary";
pub const STRICT_SOLVABILITY: &str = "strict_solvability";
pub const NONSOLVABLE_FLOOR: &str = "nonsolvable_floor";

fn verdict(name: &str, outcome: Outcome, comparison: String) -> Verdict {
    Verdict { name: name.to_string(), outcome, comparison }
}

pub fn spectrum_entries(spectrum: &OrderSpectrum) -> Vec<SpectrumEntry> {
    spectrum.counts().iter().map(|(&order, &count)| SpectrumEntry { order, count }).collect()
}

/// Computes o(G), the derived series and certificates, and checks every
/// threshold against the solvability verdict.
pub fn classify(spec: &str, group: &EnumeratedGroup) -> Result<ClassificationReport> {
    let t = Thresholds::standard();
    let spectrum = order_spectrum(group);
    let psi = spectrum.psi()?;
    let n = group.order() as u64;
    let o = spectrum.avg_order()?;
    let series: Vec<usize> = derived_series(group).iter().map(ElementSet::len).collect();
    let solvable = series.last() == Some(&1);

    let mut certificates = Vec::new();
    let elementary = spectrum.is_elementary_abelian_2();
    if elementary {
        certificates.push(CERT_ELEMENTARY_ABELIAN_2.to_string());
    }
    let s3 = n == 6 && !group.is_abelian();
    if s3 {
        certificates.push(CERT_S3.to_string());
    }
    let a5 = n == 60 && is_simple(group)?;
    if a5 {
        certificates.push(CERT_A5.to_string());
    }

    let ni = n as i64;
    let floor = Rational::integer(2) - Rational::new(1, ni);
    let mut verdicts = Vec::new();

    verdicts.push(if o <= t.s3 {
        if elementary && o == floor {
            verdict(LOW_ORDER_BOUND, Outcome::Holds, format!("o = {o} ≤ 13/6; elementary abelian 2-group with o = 2 − 1/{n} = {floor}"))
        } else if o == t.s3 && s3 {
            verdict(LOW_ORDER_BOUND, Outcome::Holds, format!("o = {o} = 13/6; order 6 non-abelian"))
        } else {
            verdict(
                LOW_ORDER_BOUND,
                Outcome::Violated,
                format!("o = {o} ≤ 13/6 but neither elementary abelian 2 with o = {floor} nor S3"),
            )
        }
    } else {
        verdict(LOW_ORDER_BOUND, Outcome::Vacuous, format!("o = {o} > 13/6"))
    });

    verdicts.push(if o <= t.a5 {
        if solvable {
            verdict(A5_BOUNDARY, Outcome::Holds, format!("o = {o} ≤ 211/60; solvable"))
        } else if a5 {
            verdict(A5_BOUNDARY, Outcome::Exempt, format!("o = {o} ≤ 211/60; non-solvable, order 60 simple"))
        } else {
            verdict(A5_BOUNDARY, Outcome::Violated, format!("o = {o} ≤ 211/60; non-solvable and not A5"))
        }
    } else {
        verdict(A5_BOUNDARY, Outcome::Vacuous, format!("o = {o} > 211/60"))
    });

    verdicts.push(if o < t.a5 {
        let outcome = if solvable { Outcome::Holds } else { Outcome::Violated };
        let s = if solvable { "solvable" } else { "non-solvable" };
        verdict(STRICT_SOLVABILITY, outcome, format!("o = {o} < 211/60; {s}"))
    } else {
        verdict(STRICT_SOLVABILITY, Outcome::Vacuous, format!("o = {o} ≥ 211/60"))
    });

    verdicts.push(if solvable {
        verdict(NONSOLVABLE_FLOOR, Outcome::Vacuous, "solvable".to_string())
    } else if o > t.nonsolvable_floor {
        verdict(NONSOLVABLE_FLOOR, Outcome::Holds, format!("non-solvable; o = {o} > 311/100"))
    } else {
        verdict(NONSOLVABLE_FLOOR, Outcome::Violated, format!("non-solvable; o = {o} ≤ 311/100"))
    });

    let consistent = verdicts.iter().all(|v| v.outcome != Outcome::Violated);
    Ok(ClassificationReport {
        spec: spec.to_string(),
        order: n,
        psi,
        o,
        o_decimal: o.to_decimal(6),
        spectrum: spectrum_entries(&spectrum),
        i2: spectrum.count(2),
        i3: spectrum.count(3),
        solvable,
        derived_series: series,
        certificates,
        verdicts,
        consistent,
    })
}

/// Result of the index-3 bound check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Index3Verdict {
    /// The group is solvable.
    NotApplicable,
    Checked {
        o_group: Rational,
        o_normal: Rational,
        /// `3·(o(G) − 8/3)`.
        bound: Rational,
        normal_below_bound: bool,
        group_above_floor: bool,
    },
}

impl Index3Verdict {
    pub fn holds(&self) -> bool {
        match self {
            Index3Verdict::NotApplicable => true,
            Index3Verdict::Checked { normal_below_bound, group_above_floor, .. } => {
                *normal_below_bound && *group_above_floor
            }
        }
    }
}

/// For a non-solvable group with a normal subgroup `n` of index 3, checks
/// `o(N) < 3·(o(G) − 8/3)` and `o(G) > 11/3`.
pub fn check_index3_bound(group: &EnumeratedGroup, n: &ElementSet) -> Result<Index3Verdict> {
    if n.len() * 3 != group.order() {
        return Err(Error::Precondition(format!("subgroup of order {} has index other than 3", n.len())));
    }
    if !is_normal(group, n)? {
        return Err(Error::NotNormal(format!("index-3 subgroup of {}", group.label())));
    }
    if derived_series(group).last().is_some_and(|t| t.len() == 1) {
        return Ok(Index3Verdict::NotApplicable);
    }
    let t = Thresholds::standard();
    let o_group = order_spectrum(group).avg_order()?;
    let o_normal = Rational::from_counts(psi_subset(group, n)?, n.len() as u64)?;
    let bound = Rational::integer(3) * (o_group - t.index3_offset);
    Ok(Index3Verdict::Checked {
        o_group,
        o_normal,
        bound,
        normal_below_bound: o_normal < bound,
        group_above_floor: o_group > t.index3_floor,
    })
}
