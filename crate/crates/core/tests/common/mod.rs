//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

pub type Perm = Vec<usize>;

/// `(a·b)(i) = a(b(i))`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Order by repeated multiplication.
pub fn order(a: &Perm) -> u64 {
    let id = identity(a.len());
    let mut x = a.clone();
    let mut k = 1;
    while x != id {
        x = compose(&x, a);
        k += 1;
    }
    k
}

/// Every product of generators, breadth first.
pub fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

pub fn spectrum(elements: &[Perm]) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for x in elements {
        *m.entry(order(x)).or_insert(0) += 1;
    }
    m
}

pub fn psi(elements: &[Perm]) -> u64 {
    elements.iter().map(order).sum()
}

/// Sorted sizes of the orbits under `g ↦ x⁻¹gx` for all `x`.
pub fn class_sizes(elements: &[Perm]) -> Vec<usize> {
    let mut done: HashSet<Perm> = HashSet::new();
    let mut sizes = Vec::new();
    for g in elements {
        if done.contains(g) {
            continue;
        }
        let class: HashSet<Perm> = elements.iter().map(|x| compose(&compose(&inverse(x), g), x)).collect();
        sizes.push(class.len());
        done.extend(class);
    }
    sizes.sort_unstable();
    sizes
}

/// Subgroup generated by all commutators `a⁻¹b⁻¹ab` with `a, b ∈ h`.
pub fn derived_subgroup(degree: usize, h: &[Perm]) -> Vec<Perm> {
    let mut comms: HashSet<Perm> = HashSet::new();
    for a in h {
        for b in h {
            comms.insert(compose(&compose(&inverse(a), &inverse(b)), &compose(a, b)));
        }
    }
    let gens: Vec<Perm> = comms.into_iter().collect();
    closure(degree, &gens)
}

/// Orders of the derived series, stopping at the trivial group or the first
/// repeated order (included).
pub fn derived_orders(degree: usize, elements: &[Perm]) -> Vec<usize> {
    let mut out = vec![elements.len()];
    let mut h = elements.to_vec();
    while h.len() > 1 {
        let d = derived_subgroup(degree, &h);
        let repeated = d.len() == h.len();
        out.push(d.len());
        h = d;
        if repeated {
            break;
        }
    }
    out
}

/// For each `x`, the number of `g` with `x⁻¹gx = g⁻¹`.
pub fn inner_inverted_counts(elements: &[Perm]) -> Vec<usize> {
    elements
        .iter()
        .map(|x| {
            let xi = inverse(x);
            elements.iter().filter(|g| compose(&compose(&xi, g), x) == inverse(g)).count()
        })
        .collect()
}

/// 1-based cycles to an image vector.
pub fn cycles(degree: usize, cs: &[&[usize]]) -> Perm {
    let mut p = identity(degree);
    for c in cs {
        for k in 0..c.len() {
            p[c[k] - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    p
}

pub fn symmetric(n: usize) -> Vec<Perm> {
    let all: Vec<usize> = (1..=n).collect();
    closure(n, &[cycles(n, &[&[1, 2]]), cycles(n, &[&all])])
}

/// Even permutations of `symmetric(n)`.
pub fn alternating(n: usize) -> Vec<Perm> {
    symmetric(n).into_iter().filter(is_even).collect()
}

pub fn is_even(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for i in 0..p.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

pub fn cyclic(n: usize) -> Vec<Perm> {
    let all: Vec<usize> = (1..=n).collect();
    closure(n, &[cycles(n, &[&all])])
}

/// Symmetries of a regular n-gon, order 2n.
pub fn dihedral(n: usize) -> Vec<Perm> {
    let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
    closure(n, &[rot, refl])
}

/// Direct product acting on the disjoint union of the point sets.
pub fn product(a: &[Perm], b: &[Perm]) -> Vec<Perm> {
    let (da, db) = (a[0].len(), b[0].len());
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let mut p = x.clone();
            p.extend(y.iter().map(|&i| i + da));
            debug_assert_eq!(p.len(), da + db);
            out.push(p);
        }
    }
    out
}

/// 2×2 matrices over Z/p, row-major.
pub type Mat = [u64; 4];

pub fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

/// Element orders of SL(2,p) (or PSL(2,p) when `projective`), by listing
/// every determinant-one matrix.
pub fn linear_orders(p: u64, projective: bool) -> Vec<u64> {
    let mut mats = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let is_id = |m: &Mat| *m == [1, 0, 0, 1] || (projective && *m == [p - 1, 0, 0, p - 1]);
    let orders: Vec<(Mat, u64)> = mats
        .iter()
        .map(|m| {
            let mut x = *m;
            let mut k = 1;
            while !is_id(&x) {
                x = mat_mul(&x, m, p);
                k += 1;
            }
            (*m, k)
        })
        .collect();
    if !projective || p == 2 {
        return orders.into_iter().map(|(_, k)| k).collect();
    }
    // keep one of each pair {M, −M}
    let neg = |m: &Mat| m.map(|v| (p - v) % p);
    let mut kept = HashSet::new();
    let mut out = Vec::new();
    for (m, k) in orders {
        if !kept.contains(&neg(&m)) {
            kept.insert(m);
            out.push(k);
        }
    }
    out
}

pub fn tally(orders: &[u64]) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for &o in orders {
        *m.entry(o).or_insert(0) += 1;
    }
    m
}
