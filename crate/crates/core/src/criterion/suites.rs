//! Property suites run over a corpus of enumerated groups.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_index3_bound, ClassificationReport, Index3Verdict, Thresholds, CERT_A5};
use crate::group::{EnumeratedGroup, DEFAULT_CAP};
use crate::inversion::{
    compose_with_left_translation, inverted_set, inversion_map, identity_map, inner_automorphism, tested_ratios,
    AutoMap,
};
use crate::rational::Rational;
use crate::stats::{involution_bounds, nonsolvable_psi_lower_bound, order_spectrum, psi_subset, Conditional};
use crate::structure::{coset_ids, is_simple, normal_subgroup_inventory, quotient, solvable_radical, ElementSet};

const MAX_LISTED_FAILURES: usize = 20;

/// Largest order on which the coset-shift identity is checked exhaustively.
pub const TRANSLATION_ORDER_LIMIT: usize = 720;

pub const SUITE_NAMES: &[&str] = &[
    "order_floor",
    "odd_order_floor",
    "coprime_products",
    "quotient_descent",
    "spectrum_invariants",
    "nonsolvable_bounds",
    "involution_bounds",
    "simple_floor",
    "inverted_translation",
    "ratio_solvability",
    "radical_free_ratio",
    "index3_bound",
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    /// First few failures, described.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), ..Default::default() }
    }

    pub fn checked(&self) -> usize {
        self.passed + self.failed
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(&mut self, other: SuiteReport) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.vacuous += other.vacuous;
        for f in other.failures {
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }
}

/// A successfully enumerated corpus member.
pub(crate) struct Member<'a> {
    pub group: &'a EnumeratedGroup,
    pub report: &'a ClassificationReport,
}

fn per_group(name: &str, members: &[Member<'_>], f: impl Fn(&Member<'_>, &mut SuiteReport) + Sync) -> SuiteReport {
    let parts: Vec<SuiteReport> = members
        .par_iter()
        .map(|m| {
            let mut r = SuiteReport::new(name);
            f(m, &mut r);
            r
        })
        .collect();
    let mut out = SuiteReport::new(name);
    for p in parts {
        out.merge(p);
    }
    out
}

pub(crate) fn run_all(members: &[Member<'_>]) -> Vec<SuiteReport> {
    vec![
        order_floor(members),
        odd_order_floor(members),
        coprime_products(members),
        quotient_descent(members),
        spectrum_invariants(members),
        nonsolvable_bounds(members),
        involution_bound_cases(members),
        simple_floor(members),
        inverted_translation(members),
        ratio_solvability(members),
        radical_free_ratio(members),
        index3_bound(members),
    ]
}

fn order_floor(members: &[Member<'_>]) -> SuiteReport {
    per_group("order_floor", members, |m, r| {
        let n = m.report.order as i64;
        let o = m.report.o;
        let floor = Rational::integer(2) - Rational::new(1, n);
        let elementary = m.report.spectrum.iter().all(|e| e.order <= 2);
        r.record(o >= floor, || format!("{}: o = {o} < {floor}", m.report.spec));
        r.record((o == floor) == elementary, || {
            format!("{}: equality o = {floor} does not match the elementary abelian 2 test", m.report.spec)
        });
        if elementary {
            r.vacuous += 1;
        } else {
            let above = Rational::integer(2) + Rational::new(1, n);
            r.record(o >= above, || format!("{}: o = {o} < {above}", m.report.spec));
        }
    })
}

fn odd_order_floor(members: &[Member<'_>]) -> SuiteReport {
    per_group("odd_order_floor", members, |m, r| {
        let n = m.report.order as i64;
        if n % 2 == 0 {
            r.vacuous += 1;
            return;
        }
        let floor = Rational::integer(3) - Rational::new(2, n);
        r.record(m.report.o >= floor, || format!("{}: o = {} < {floor}", m.report.spec, m.report.o));
    })
}

/// Every unordered pair of non-trivial corpus groups with coprime orders,
/// enumerated as an actual direct product.
fn coprime_products(members: &[Member<'_>]) -> SuiteReport {
    let mut pairs = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (a, b) = (members[i].group.order(), members[j].group.order());
            if a > 1 && b > 1 && a.gcd(&b) == 1 && a * b <= DEFAULT_CAP {
                pairs.push((i, j));
            }
        }
    }
    let parts: Vec<SuiteReport> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut r = SuiteReport::new("coprime_products");
            let (a, b) = (&members[i], &members[j]);
            let label = format!("{} x {}", a.report.spec, b.report.spec);
            match EnumeratedGroup::direct_product(vec![a.group.clone(), b.group.clone()], DEFAULT_CAP) {
                Ok(p) => match order_spectrum(&p).avg_order() {
                    Ok(o) => {
                        let expected = a.report.o * b.report.o;
                        r.record(o == expected, || format!("{label}: o = {o}, product of factors {expected}"));
                    }
                    Err(e) => r.record(false, || format!("{label}: {e}")),
                },
                Err(e) => r.record(false, || format!("{label}: {e}")),
            }
            r
        })
        .collect();
    let mut out = SuiteReport::new("coprime_products");
    for p in parts {
        out.merge(p);
    }
    out.notes.push(format!("{} coprime pairs", pairs.len()));
    out
}

/// For each non-trivial normal subgroup in the inventory: the order of `gN`
/// divides the order of `g`, ψ is additive over cosets, and o(G/N) < o(G).
fn quotient_descent(members: &[Member<'_>]) -> SuiteReport {
    let mut out = per_group("quotient_descent", members, |m, r| {
        let g = m.group;
        for n in normal_subgroup_inventory(g) {
            let spec = &m.report.spec;
            let q = match quotient(g, &n) {
                Ok(q) => q,
                Err(e) => {
                    r.record(false, || format!("{spec}: quotient by N{}: {e}", n.len()));
                    continue;
                }
            };
            let ids = coset_ids(g, &n);
            let divides = (0..g.order()).all(|x| g.element_order(x) % q.element_order(ids[x]) == 0);
            r.record(divides, || format!("{spec}/N{}: a coset order does not divide an element order", n.len()));

            let mut by_coset = vec![0u64; q.order()];
            for x in 0..g.order() {
                by_coset[ids[x]] += g.element_order(x);
            }
            let additive = by_coset.iter().sum::<u64>() == m.report.psi
                && psi_subset(g, &n).ok() == Some(by_coset[ids[g.identity()]]);
            r.record(additive, || format!("{spec}/N{}: ψ is not additive over cosets", n.len()));

            match order_spectrum(&q).avg_order() {
                Ok(oq) => r.record(oq < m.report.o, || format!("{spec}/N{}: o(G/N) = {oq} ≥ o(G) = {}", n.len(), m.report.o)),
                Err(e) => r.record(false, || format!("{spec}/N{}: {e}", n.len())),
            }
        }
    });
    out.notes.push(format!("{} (G, N) instances", out.checked() / 3));
    out
}

fn spectrum_invariants(members: &[Member<'_>]) -> SuiteReport {
    per_group("spectrum_invariants", members, |m, r| {
        let g = m.group;
        let spec = &m.report.spec;
        let s = order_spectrum(g);
        r.record(s.check().is_ok(), || format!("{spec}: {}", s.check().unwrap_err()));
        let weighted: u64 = m.report.spectrum.iter().map(|e| e.order * e.count).sum();
        r.record(weighted == m.report.psi, || format!("{spec}: Σ d·count = {weighted} ≠ ψ = {}", m.report.psi));
        let same = quotient(g, &ElementSet::trivial(g)).map(|q| order_spectrum(&q) == s).unwrap_or(false);
        r.record(same, || format!("{spec}: quotient by the trivial subgroup changes the spectrum"));
        let iterative = (0..g.order()).all(|x| g.element_order(x) == g.element_order_iterative(x));
        r.record(iterative, || format!("{spec}: stored orders disagree with repeated multiplication"));
    })
}

fn nonsolvable_bounds(members: &[Member<'_>]) -> SuiteReport {
    let t = Thresholds::standard();
    per_group("nonsolvable_bounds", members, |m, r| {
        let rep = m.report;
        if rep.solvable {
            r.vacuous += 1;
            return;
        }
        let n = rep.order as i64;
        r.record(rep.o > t.nonsolvable_floor, || format!("{}: o = {} ≤ 311/100", rep.spec, rep.o));
        let i2_cap = Rational::new(4 * n, 15) - Rational::one();
        let i3_cap = Rational::new(7 * n, 20) - Rational::one();
        r.record(Rational::integer(rep.i2 as i64) <= i2_cap, || format!("{}: i2 = {} > {i2_cap}", rep.spec, rep.i2));
        r.record(Rational::integer(rep.i3 as i64) <= i3_cap, || format!("{}: i3 = {} > {i3_cap}", rep.spec, rep.i3));
        match nonsolvable_psi_lower_bound(rep.order, rep.i2, rep.i3) {
            Ok(b) => r.record(rep.psi >= b, || format!("{}: ψ = {} < {b}", rep.spec, rep.psi)),
            Err(e) => r.record(false, || format!("{}: {e}", rep.spec)),
        }
    })
}

fn involution_bound_cases(members: &[Member<'_>]) -> SuiteReport {
    per_group("involution_bounds", members, |m, r| {
        if m.report.solvable {
            r.vacuous += 1;
            return;
        }
        match involution_bounds(&order_spectrum(m.group)) {
            Ok(cases) => {
                for c in cases {
                    match c.outcome {
                        Conditional::Vacuous => r.vacuous += 1,
                        Conditional::Holds => r.record(true, String::new),
                        Conditional::Violated => r.record(false, || {
                            format!("{}: {} but not {}", m.report.spec, c.hypothesis, c.conclusion)
                        }),
                    }
                }
            }
            Err(e) => r.record(false, || format!("{}: {e}", m.report.spec)),
        }
    })
}

/// Simple corpus groups other than A5 have o ≥ 71/20.
fn simple_floor(members: &[Member<'_>]) -> SuiteReport {
    let t = Thresholds::standard();
    per_group("simple_floor", members, |m, r| {
        let simple = !m.group.is_trivial() && !m.report.solvable && is_simple(m.group).unwrap_or(false);
        if !simple || m.report.has_certificate(CERT_A5) {
            r.vacuous += 1;
            return;
        }
        r.record(m.report.o >= t.simple_floor, || format!("{}: simple with o = {} < 71/20", m.report.spec, m.report.o));
    })
}

/// For every tested θ and every x with θ(x) = x⁻¹: the maps
/// `g ↦ θ(x⁻¹gx)` invert exactly `S(θ)·x⁻¹`.
fn inverted_translation(members: &[Member<'_>]) -> SuiteReport {
    let mut out = per_group("inverted_translation", members, |m, r| {
        let g = m.group;
        if g.order() > TRANSLATION_ORDER_LIMIT {
            r.vacuous += 1;
            return;
        }
        let mut family: Vec<AutoMap> = vec![identity_map(g)];
        family.extend((0..g.order()).map(|x| inner_automorphism(g, x).expect("index in range")));
        if let Ok(inv) = inversion_map(g) {
            family.push(inv);
        }
        for theta in &family {
            let s = inverted_set(theta);
            for x in s.iter() {
                match compose_with_left_translation(theta, x) {
                    Ok(shifted) => {
                        let ok = inverted_set(&shifted) == s.right_translate(g, g.inv(x));
                        r.record(ok, || format!("{}: S(xθ) ≠ S(θ)x⁻¹ for x = {}", m.report.spec, g.describe(x)));
                    }
                    Err(e) => r.record(false, || format!("{}: {e}", m.report.spec)),
                }
            }
        }
    });
    out.notes.push(format!("groups of order ≤ {TRANSLATION_ORDER_LIMIT}; {}", crate::inversion::FAMILY_NOTE));
    out
}

/// A tested automorphism inverting more than 3/4 of the group forces
/// abelian; more than 4/15 forces solvable.
fn ratio_solvability(members: &[Member<'_>]) -> SuiteReport {
    let mut out = per_group("ratio_solvability", members, |m, r| {
        let best = tested_ratios(m.group).into_iter().map(|(_, q)| q).max().expect("family is non-empty");
        if best > Rational::new(3, 4) {
            r.record(m.group.is_abelian(), || format!("{}: ratio {best} > 3/4 but non-abelian", m.report.spec));
        } else {
            r.vacuous += 1;
        }
        if best > Rational::new(4, 15) {
            r.record(m.report.solvable, || format!("{}: ratio {best} > 4/15 but non-solvable", m.report.spec));
        } else {
            r.vacuous += 1;
        }
    });
    out.notes.push(crate::inversion::FAMILY_NOTE.to_string());
    out
}

/// Among non-solvable groups with trivial solvable radical, a tested ratio
/// above 2/9 occurs only on A5.
fn radical_free_ratio(members: &[Member<'_>]) -> SuiteReport {
    let mut out = per_group("radical_free_ratio", members, |m, r| {
        if m.report.solvable || solvable_radical(m.group).len() != 1 {
            r.vacuous += 1;
            return;
        }
        let best = tested_ratios(m.group).into_iter().map(|(_, q)| q).max().expect("family is non-empty");
        if best > Rational::new(2, 9) {
            r.record(m.report.has_certificate(CERT_A5), || {
                format!("{}: ratio {best} > 2/9 on a radical-free group other than A5", m.report.spec)
            });
        } else {
            r.record(true, String::new);
        }
    });
    out.notes.push(crate::inversion::FAMILY_NOTE.to_string());
    out
}

/// The index-3 bound on every index-3 normal subgroup in the inventory of a
/// non-solvable corpus group.
fn index3_bound(members: &[Member<'_>]) -> SuiteReport {
    per_group("index3_bound", members, |m, r| {
        if m.report.solvable || m.group.order() % 3 != 0 {
            r.vacuous += 1;
            return;
        }
        let mut found = false;
        for n in normal_subgroup_inventory(m.group).into_iter().filter(|n| n.len() * 3 == m.group.order()) {
            found = true;
            match check_index3_bound(m.group, &n) {
                Ok(v @ Index3Verdict::Checked { .. }) => r.record(v.holds(), || format!("{}: {v:?}", m.report.spec)),
                Ok(Index3Verdict::NotApplicable) => r.vacuous += 1,
                Err(e) => r.record(false, || format!("{}: {e}", m.report.spec)),
            }
        }
        if !found {
            r.vacuous += 1;
        }
    })
}
