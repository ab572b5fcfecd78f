//! Automorphisms given by their action on element indices, and how many
//! elements they send to their inverses.
//!
//! The tested family is the identity, every inner automorphism and, on
//! abelian groups, the inversion map. No other automorphisms are searched.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::rational::Rational;
use crate::structure::{conjugacy_classes, ElementSet};

/// Printed alongside every inversion report.
pub const FAMILY_NOTE: &str =
    "tested automorphisms: identity, all inner automorphisms, and inversion on abelian groups; outer automorphisms are not searched";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Identity,
    Inner(usize),
    Inversion,
    Explicit,
}

/// A bijection of element indices that respects multiplication.
///
/// Construction checks `f(g·s) = f(g)·f(s)` for every element `g` and every
/// generator `s`, together with `f(e) = e`. By induction on word length this
/// gives `f(g·h) = f(g)·f(h)` for all pairs, so the check is exact.
#[derive(Clone)]
pub struct AutoMap {
    group: EnumeratedGroup,
    images: Vec<usize>,
    provenance: Provenance,
}

impl AutoMap {
    pub fn new(group: &EnumeratedGroup, images: Vec<usize>, provenance: Provenance) -> Result<Self> {
        let n = group.order();
        if images.len() != n {
            return Err(Error::NotAutomorphism(format!("{} images for {n} elements", images.len())));
        }
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotAutomorphism("images do not form a bijection".into()));
            }
        }
        if images[group.identity()] != group.identity() {
            return Err(Error::NotAutomorphism("identity is moved".into()));
        }
        for &s in group.generators() {
            let fs = images[s];
            if let Some(g) = (0..n).find(|&g| images[group.mul(g, s)] != group.mul(images[g], fs)) {
                return Err(Error::NotAutomorphism(format!(
                    "f({}·{}) differs from f({})·f({})",
                    group.describe(g),
                    group.describe(s),
                    group.describe(g),
                    group.describe(s)
                )));
            }
        }
        Ok(AutoMap { group: group.clone(), images, provenance })
    }

    pub fn group(&self) -> &EnumeratedGroup {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }
}

impl PartialEq for AutoMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl std::fmt::Debug for AutoMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutoMap")
            .field("group", &self.group.label())
            .field("provenance", &self.provenance)
            .finish()
    }
}

pub fn identity_map(group: &EnumeratedGroup) -> AutoMap {
    AutoMap { group: group.clone(), images: (0..group.order()).collect(), provenance: Provenance::Identity }
}

/// `g ↦ x⁻¹ g x`.
pub fn inner_automorphism(group: &EnumeratedGroup, x: usize) -> Result<AutoMap> {
    group.try_inv(x)?;
    let images = (0..group.order()).map(|g| group.conj(g, x)).collect();
    Ok(AutoMap { group: group.clone(), images, provenance: Provenance::Inner(x) })
}

/// `g ↦ g⁻¹`, an automorphism only when the group is abelian.
pub fn inversion_map(group: &EnumeratedGroup) -> Result<AutoMap> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let images = (0..group.order()).map(|g| group.inv(g)).collect();
    Ok(AutoMap { group: group.clone(), images, provenance: Provenance::Inversion })
}

/// `g ↦ θ(x⁻¹ g x)`.
pub fn compose_with_left_translation(theta: &AutoMap, x: usize) -> Result<AutoMap> {
    let group = &theta.group;
    group.try_inv(x)?;
    let images = (0..group.order()).map(|g| theta.apply(group.conj(g, x))).collect();
    let provenance = match theta.provenance {
        Provenance::Identity => Provenance::Inner(x),
        _ if x == group.identity() => theta.provenance,
        _ => Provenance::Explicit,
    };
    AutoMap::new(group, images, provenance)
}

/// `{ g : θ(g) = g⁻¹ }`.
pub fn inverted_set(theta: &AutoMap) -> ElementSet {
    let g = &theta.group;
    ElementSet::from_sorted((0..g.order()).filter(|&a| theta.apply(a) == g.inv(a)).collect())
}

pub fn inversion_ratio(theta: &AutoMap) -> Rational {
    let n = theta.group.order() as u64;
    Rational::from_counts(inverted_set(theta).len() as u64, n).expect("group orders fit in i64")
}

fn inner_inverted_count(group: &EnumeratedGroup, x: usize) -> usize {
    (0..group.order()).filter(|&g| group.conj(g, x) == group.inv(g)).count()
}

/// The conjugator `x` maximizing `|S(g ↦ x⁻¹gx)| / |G|`, with ties broken by
/// the smallest index.
///
/// The count is constant on conjugacy classes, so one representative per
/// class is scanned; class representatives are minimum-index members, which
/// keeps the tie-break exact.
pub fn max_inner_inversion_ratio(group: &EnumeratedGroup) -> (usize, Rational) {
    let reps = conjugacy_classes(group).representatives();
    let counts: Vec<(usize, usize)> = reps.par_iter().map(|&x| (x, inner_inverted_count(group, x))).collect();
    let (x, c) = counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("every group has an identity class");
    (x, Rational::from_counts(c as u64, group.order() as u64).expect("group orders fit in i64"))
}

/// Identity, every inner automorphism, and inversion when abelian.
pub fn tested_family(group: &EnumeratedGroup) -> Vec<AutoMap> {
    let mut out = vec![identity_map(group)];
    out.extend((0..group.order()).map(|x| inner_automorphism(group, x).expect("index in range")));
    if let Ok(inv) = inversion_map(group) {
        out.push(inv);
    }
    out
}

/// Ratios attained by the tested family, without materializing every map:
/// identity, one inner map per conjugacy class, and inversion when abelian.
pub fn tested_ratios(group: &EnumeratedGroup) -> Vec<(Provenance, Rational)> {
    let n = group.order() as u64;
    let ratio = |c: usize| Rational::from_counts(c as u64, n).expect("group orders fit in i64");
    let mut out = vec![(Provenance::Identity, ratio(inner_inverted_count(group, group.identity())))];
    let reps = conjugacy_classes(group).representatives();
    out.extend(
        reps.par_iter()
            .map(|&x| (Provenance::Inner(x), ratio(inner_inverted_count(group, x))))
            .collect::<Vec<_>>(),
    );
    if let Ok(inv) = inversion_map(group) {
        out.push((Provenance::Inversion, inversion_ratio(&inv)));
    }
    out
}
