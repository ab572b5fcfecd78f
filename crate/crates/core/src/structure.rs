//! Subgroups, conjugacy classes, derived series and quotients of an
//! [`EnumeratedGroup`].
//!
//! Subgroups are built incrementally: a [`SubgroupBuilder`] keeps the current
//! member set and the generators actually needed so far, and adding a new
//! generator extends the closure without restarting it. Normal closures and
//! commutator subgroups reuse the builder's generator list, which stays short
//! (at most log₂|H| entries).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;

/// A sorted, duplicate-free set of element indices of some ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    members: Vec<usize>,
}

impl ElementSet {
    pub fn new(group: &EnumeratedGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= group.order()) {
            return Err(Error::IndexOutOfRange { index: bad, order: group.order() });
        }
        members.sort_unstable();
        members.dedup();
        Ok(ElementSet { members })
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ElementSet { members }
    }

    pub fn whole(group: &EnumeratedGroup) -> Self {
        ElementSet { members: (0..group.order()).collect() }
    }

    pub fn trivial(group: &EnumeratedGroup) -> Self {
        ElementSet { members: vec![group.identity()] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// `{ s·x : s ∈ self }`.
    pub fn right_translate(&self, group: &EnumeratedGroup, x: usize) -> ElementSet {
        let mut out: Vec<usize> = self.members.iter().map(|&s| group.mul(s, x)).collect();
        out.sort_unstable();
        ElementSet { members: out }
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }
}

/// Orbits of the group acting on itself by conjugation.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<ElementSet>,
    pub class_of: Vec<usize>,
}

impl ClassPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ElementSet::len).collect()
    }

    /// Minimum-index member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members[0]).collect()
    }
}

/// Incremental closure of a growing generating set.
pub struct SubgroupBuilder<'g> {
    group: &'g EnumeratedGroup,
    member: Vec<bool>,
    elements: Vec<usize>,
    gens: Vec<usize>,
}

impl<'g> SubgroupBuilder<'g> {
    pub fn new(group: &'g EnumeratedGroup) -> Self {
        let mut member = vec![false; group.order()];
        member[group.identity()] = true;
        SubgroupBuilder { group, member, elements: vec![group.identity()], gens: Vec::new() }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.member[a]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Generators that were actually needed.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Adds `x` as a generator; returns whether the subgroup grew.
    pub fn add(&mut self, x: usize) -> bool {
        if self.member[x] {
            return false;
        }
        let g = self.group;
        self.gens.push(x);
        // old elements are already closed under the old generators
        let old = self.elements.len();
        for i in 0..old {
            let y = g.mul(self.elements[i], x);
            self.push(y);
        }
        let mut head = old;
        while head < self.elements.len() {
            let e = self.elements[head];
            for k in 0..self.gens.len() {
                let y = g.mul(e, self.gens[k]);
                self.push(y);
            }
            head += 1;
        }
        true
    }

    fn push(&mut self, y: usize) {
        if !self.member[y] {
            self.member[y] = true;
            self.elements.push(y);
        }
    }

    pub fn extend(&mut self, xs: impl IntoIterator<Item = usize>) {
        for x in xs {
            self.add(x);
        }
    }

    /// Closes under conjugation by `ambient` (generators of a group that
    /// normalizes the result).
    pub fn close_under_conjugation(&mut self, ambient: &[usize]) {
        let mut i = 0;
        while i < self.gens.len() {
            let s = self.gens[i];
            for &a in ambient {
                let c = self.group.conj(s, a);
                self.add(c);
            }
            i += 1;
        }
    }

    pub fn finish(self) -> ElementSet {
        let mut members = self.elements;
        members.sort_unstable();
        ElementSet { members }
    }

    pub fn finish_with_generators(self) -> (ElementSet, Vec<usize>) {
        let gens = self.gens.clone();
        (self.finish(), gens)
    }
}

/// `⟨seed⟩`: closure of `seed ∪ {e}` under multiplication and inversion.
pub fn generated_subgroup(group: &EnumeratedGroup, seed: &ElementSet) -> ElementSet {
    let mut b = SubgroupBuilder::new(group);
    b.extend(seed.iter());
    b.finish()
}

/// A generating set of the subgroup `h` (assumed closed).
pub fn subgroup_generators(group: &EnumeratedGroup, h: &ElementSet) -> Vec<usize> {
    let mut b = SubgroupBuilder::new(group);
    b.extend(h.iter());
    b.gens
}

/// Smallest normal subgroup of the group containing `seed`.
pub fn normal_closure(group: &EnumeratedGroup, seed: &ElementSet) -> ElementSet {
    normal_closure_in(group, group.generators(), seed.iter()).0
}

/// Normal closure inside the subgroup generated by `ambient`, together with
/// a generating set of the result.
fn normal_closure_in(
    group: &EnumeratedGroup,
    ambient: &[usize],
    seed: impl IntoIterator<Item = usize>,
) -> (ElementSet, Vec<usize>) {
    let mut b = SubgroupBuilder::new(group);
    b.extend(seed);
    b.close_under_conjugation(ambient);
    b.finish_with_generators()
}

pub fn conjugacy_classes(group: &EnumeratedGroup) -> ClassPartition {
    let n = group.order();
    let gens = group.generators();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            for &s in gens {
                let y = group.conj(x, s);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    orbit.push(y);
                }
            }
            head += 1;
        }
        orbit.sort_unstable();
        classes.push(ElementSet { members: orbit });
    }
    ClassPartition { classes, class_of }
}

/// Derived series of the subgroup `h`, given its generators. Stops at the
/// trivial subgroup or at the first term equal to its predecessor (included).
fn derived_series_from(group: &EnumeratedGroup, h: ElementSet, gens: Vec<usize>) -> Vec<ElementSet> {
    let mut series = vec![h];
    let mut gens = gens;
    loop {
        let current = series.last().unwrap();
        if current.len() == 1 {
            break;
        }
        let commutators: Vec<usize> = gens
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| gens[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| group.commutator(a, b))
            .collect();
        let (next, next_gens) = normal_closure_in(group, &gens, commutators);
        let repeated = next.len() == current.len();
        series.push(next);
        gens = next_gens;
        if repeated {
            break;
        }
    }
    series
}

pub fn derived_series(group: &EnumeratedGroup) -> Vec<ElementSet> {
    derived_series_from(group, ElementSet::whole(group), group.generators().to_vec())
}

/// Derived series of a subgroup `h` of `group` (assumed closed).
pub fn derived_series_of(group: &EnumeratedGroup, h: &ElementSet) -> Vec<ElementSet> {
    let gens = subgroup_generators(group, h);
    derived_series_from(group, h.clone(), gens)
}

pub fn is_solvable(group: &EnumeratedGroup) -> bool {
    derived_series(group).last().is_some_and(|t| t.len() == 1)
}

pub fn is_subgroup_solvable(group: &EnumeratedGroup, h: &ElementSet) -> bool {
    derived_series_of(group, h).last().is_some_and(|t| t.len() == 1)
}

fn require_subgroup(group: &EnumeratedGroup, h: &ElementSet) -> Result<Vec<usize>> {
    if !h.contains(group.identity()) {
        return Err(Error::NotSubgroup("missing the identity".into()));
    }
    let mut b = SubgroupBuilder::new(group);
    b.extend(h.iter());
    if b.len() != h.len() {
        return Err(Error::NotSubgroup(format!(
            "a set of {} elements generates {} elements",
            h.len(),
            b.len()
        )));
    }
    Ok(b.gens)
}

/// Whether the subgroup `h` is invariant under conjugation by the group's
/// generators. Errors when `h` is not closed.
pub fn is_normal(group: &EnumeratedGroup, h: &ElementSet) -> Result<bool> {
    let gens = require_subgroup(group, h)?;
    Ok(gens.iter().all(|&s| group.generators().iter().all(|&a| h.contains(group.conj(s, a)))))
}

/// Non-abelian with no proper non-trivial normal subgroup.
pub fn is_simple(group: &EnumeratedGroup) -> Result<bool> {
    if group.is_trivial() {
        return Err(Error::TrivialGroup("simplicity of the trivial group".into()));
    }
    if group.is_abelian() {
        return Ok(false);
    }
    let classes = conjugacy_classes(group);
    Ok(classes
        .classes
        .iter()
        .skip(1)
        .all(|c| normal_closure_in(group, group.generators(), c.members[..1].iter().copied()).0.len() == group.order()))
}

/// Normal closures of each conjugacy class, with generators, in class order.
fn class_closures(group: &EnumeratedGroup, classes: &ClassPartition) -> Vec<(ElementSet, Vec<usize>)> {
    classes
        .classes
        .iter()
        .map(|c| normal_closure_in(group, group.generators(), c.members[..1].iter().copied()))
        .collect()
}

/// Largest normal solvable subgroup: the join of the solvable normal
/// closures of single conjugacy classes.
pub fn solvable_radical(group: &EnumeratedGroup) -> ElementSet {
    let classes = conjugacy_classes(group);
    let mut b = SubgroupBuilder::new(group);
    for (closure, gens) in class_closures(group, &classes) {
        if closure.iter().all(|x| b.contains(x)) {
            continue;
        }
        if derived_series_from(group, closure.clone(), gens.clone()).last().unwrap().len() == 1 {
            b.extend(gens);
        }
    }
    b.finish()
}

/// Distinct non-trivial normal subgroups reachable as normal closures of a
/// single conjugacy class or joins of two such closures. Not the full
/// lattice of normal subgroups in general. Sorted by size, then members.
pub fn normal_subgroup_inventory(group: &EnumeratedGroup) -> Vec<ElementSet> {
    let classes = conjugacy_classes(group);
    let mut seen = HashSet::new();
    let mut singles = Vec::new();
    for (closure, gens) in class_closures(group, &classes) {
        if closure.len() > 1 && seen.insert(closure.clone()) {
            singles.push((closure, gens));
        }
    }
    let mut out: Vec<ElementSet> = singles.iter().map(|(c, _)| c.clone()).collect();
    for i in 0..singles.len() {
        for j in i + 1..singles.len() {
            let (a, ga) = &singles[i];
            let (b, gb) = &singles[j];
            if a.iter().all(|x| b.contains(x)) || b.iter().all(|x| a.contains(x)) {
                continue;
            }
            let mut builder = SubgroupBuilder::new(group);
            builder.extend(ga.iter().chain(gb).copied());
            let join = builder.finish();
            if seen.insert(join.clone()) {
                out.push(join);
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// `G/N` with cosets named by their minimum-index member.
pub fn quotient(group: &EnumeratedGroup, n: &ElementSet) -> Result<EnumeratedGroup> {
    if !is_normal(group, n)? {
        return Err(Error::NotNormal(format!("subgroup of order {} in {}", n.len(), group.label())));
    }
    let size = group.order();
    let mut coset_of = vec![u32::MAX; size];
    let mut reps = Vec::with_capacity(size / n.len());
    for g in 0..size {
        if coset_of[g] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g as u32);
        for m in n.iter() {
            coset_of[group.mul(g, m)] = id;
        }
    }
    let label = format!("({})/N{}", group.label(), n.len());
    Ok(EnumeratedGroup::quotient_of(group, reps, coset_of, label))
}

/// Index of the coset containing each element, for a normal subgroup `n`.
pub fn coset_ids(group: &EnumeratedGroup, n: &ElementSet) -> Vec<usize> {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut next = 0;
    for g in 0..group.order() {
        if coset_of[g] == usize::MAX {
            for m in n.iter() {
                coset_of[group.mul(g, m)] = next;
            }
            next += 1;
        }
    }
    coset_of
}

pub fn centralizer(group: &EnumeratedGroup, a: usize) -> ElementSet {
    ElementSet {
        members: (0..group.order()).filter(|&g| group.mul(g, a) == group.mul(a, g)).collect(),
    }
}

/// Whether every member of `h` lies in `k`.
pub fn is_subset(h: &ElementSet, k: &ElementSet) -> bool {
    h.iter().all(|x| k.contains(x))
}

/// Whether the subgroup `h` is normalized by every element of `k`'s
/// generating set; used to check normality inside a subgroup.
pub fn is_normal_in(group: &EnumeratedGroup, h: &ElementSet, k: &ElementSet) -> bool {
    let mask = h.mask(group.order());
    let hg = subgroup_generators(group, h);
    let kg = subgroup_generators(group, k);
    hg.iter().all(|&s| kg.iter().all(|&a| mask[group.conj(s, a)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_str;

    fn g(s: &str) -> EnumeratedGroup {
        enumerate_str(s).unwrap()
    }

    fn find(group: &EnumeratedGroup, name: &str) -> usize {
        (0..group.order()).find(|&a| group.describe(a) == name).unwrap()
    }

    fn set(group: &EnumeratedGroup, xs: &[usize]) -> ElementSet {
        ElementSet::new(group, xs.iter().copied()).unwrap()
    }

    #[test]
    fn element_set_validation() {
        let s3 = g("S3");
        assert!(ElementSet::new(&s3, [0, 6]).is_err());
        assert_eq!(ElementSet::new(&s3, [3, 1, 3]).unwrap().members(), &[1, 3]);
    }

    #[test]
    fn generated_subgroups() {
        let a5 = g("A5");
        let c = find(&a5, "(1 2 3)");
        assert_eq!(generated_subgroup(&a5, &set(&a5, &[c])).len(), 3);
        assert_eq!(generated_subgroup(&a5, &set(&a5, a5.generators())).len(), 60);
        assert_eq!(generated_subgroup(&a5, &set(&a5, &[])).members(), &[0]);
    }

    #[test]
    fn normal_closures() {
        let s3 = g("S3");
        assert_eq!(normal_closure(&s3, &set(&s3, &[find(&s3, "(1 2)")])).len(), 6);
        let a4 = g("A4");
        assert_eq!(normal_closure(&a4, &set(&a4, &[find(&a4, "(1 2 3)")])).len(), 12);
        let c12 = g("C12");
        for a in 0..12 {
            let x = set(&c12, &[a]);
            assert_eq!(normal_closure(&c12, &x), generated_subgroup(&c12, &x));
        }
    }

    #[test]
    fn class_sizes() {
        let mut sizes = conjugacy_classes(&g("A5")).sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        let mut sizes = conjugacy_classes(&g("S3")).sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(conjugacy_classes(&g("C10")).classes.len(), 10);
        let p = conjugacy_classes(&g("S4"));
        assert_eq!(p.classes[0].members(), &[0]);
        for (id, c) in p.classes.iter().enumerate() {
            assert!(c.iter().all(|x| p.class_of[x] == id));
        }
    }

    #[test]
    fn derived_series_orders() {
        let orders = |s: &str| derived_series(&g(s)).iter().map(ElementSet::len).collect::<Vec<_>>();
        assert_eq!(orders("S4"), vec![24, 12, 4, 1]);
        assert_eq!(orders("A5"), vec![60, 60]);
        assert_eq!(orders("C9"), vec![9, 1]);
        assert_eq!(orders("C1"), vec![1]);
        assert_eq!(orders("SL(2,5)"), vec![120, 120]);
        assert_eq!(orders("SL(2,3)"), vec![24, 8, 2, 1]);
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&g("S4")));
        assert!(!is_solvable(&g("A5")));
        assert!(is_solvable(&g("Q8")));
        assert!(is_solvable(&g("D8")));
        assert!(is_solvable(&g("C2 x C2 x C2")));
        assert!(!is_solvable(&g("PSL(2,7)")));
        assert!(is_solvable(&g("PSL(2,3)")));
    }

    #[test]
    fn normality() {
        let s3 = g("S3");
        let a3 = generated_subgroup(&s3, &set(&s3, &[find(&s3, "(1 2 3)")]));
        assert!(is_normal(&s3, &a3).unwrap());
        let t = generated_subgroup(&s3, &set(&s3, &[find(&s3, "(1 2)")]));
        assert!(!is_normal(&s3, &t).unwrap());
        assert!(is_normal(&s3, &ElementSet::whole(&s3)).unwrap());
        let not_closed = set(&s3, &[0, find(&s3, "(1 2 3)")]);
        assert!(matches!(is_normal(&s3, &not_closed), Err(Error::NotSubgroup(_))));
        assert!(matches!(is_normal(&s3, &set(&s3, &[1])), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&g("A5")).unwrap());
        assert!(is_simple(&g("PSL(2,7)")).unwrap());
        assert!(!is_simple(&g("S5")).unwrap());
        assert!(!is_simple(&g("C7")).unwrap());
        assert!(!is_simple(&g("A4")).unwrap());
        assert!(is_simple(&g("C1")).is_err());
    }

    #[test]
    fn radicals() {
        assert_eq!(solvable_radical(&g("A5")).len(), 1);
        let p = g("A5 x C7");
        let r = solvable_radical(&p);
        assert_eq!(r.len(), 7);
        assert!(r.iter().all(|x| p.components(x).unwrap()[0] == 0));
        assert_eq!(solvable_radical(&g("S4")).len(), 24);
        assert_eq!(solvable_radical(&g("SL(2,5)")).len(), 2);
        assert_eq!(solvable_radical(&g("S5")).len(), 1);
    }

    #[test]
    fn quotients() {
        let s4 = g("S4");
        let v4 = derived_series(&s4)[2].clone();
        assert_eq!(v4.len(), 4);
        let q = quotient(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(quotient(&s4, &ElementSet::whole(&s4)).unwrap().order(), 1);
        let same = quotient(&s4, &ElementSet::trivial(&s4)).unwrap();
        assert_eq!(same.order(), 24);
        for a in 0..24 {
            assert_eq!(same.element_order(a), s4.element_order(a));
        }
        let s3 = g("S3");
        let t = generated_subgroup(&s3, &set(&s3, &[find(&s3, "(1 2)")]));
        assert!(matches!(quotient(&s3, &t), Err(Error::NotNormal(_))));
        assert!(matches!(quotient(&s3, &set(&s3, &[0, find(&s3, "(1 2 3)")])), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn quotient_of_quotient() {
        let s4 = g("S4");
        let series = derived_series(&s4);
        let q = quotient(&s4, &series[2]).unwrap();
        let a3 = derived_series(&q)[1].clone();
        assert_eq!(a3.len(), 3);
        let qq = quotient(&q, &a3).unwrap();
        assert_eq!(qq.order(), 2);
        assert_eq!(qq.element_order(1), 2);
    }

    #[test]
    fn centralizers() {
        let a5 = g("A5");
        assert_eq!(centralizer(&a5, 0).len(), 60);
        assert_eq!(centralizer(&a5, find(&a5, "(1 2 3 4 5)")).len(), 5);
        let c8 = g("C8");
        assert!((0..8).all(|a| centralizer(&c8, a).len() == 8));
    }

    #[test]
    fn inventory_contents() {
        let inv = normal_subgroup_inventory(&g("S4"));
        let sizes: Vec<usize> = inv.iter().map(ElementSet::len).collect();
        assert_eq!(sizes, vec![4, 12, 24]);
        let inv = normal_subgroup_inventory(&g("C2 x C2"));
        assert_eq!(inv.len(), 4);
        assert!(normal_subgroup_inventory(&g("A5")).iter().map(ElementSet::len).eq([60]));
    }

    #[test]
    fn normal_in_subgroup() {
        let s4 = g("S4");
        let series = derived_series(&s4);
        assert!(is_normal_in(&s4, &series[2], &series[1]));
        assert!(is_subset(&series[2], &series[1]));
    }
}
