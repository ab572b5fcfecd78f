//! Concrete finite groups, fully materialized.
//!
//! An [`EnumeratedGroup`] holds every element of a finite group together with
//! an index map from canonical encodings back to positions, so elements are
//! handled as plain indices `0..order`. Index 0 is always the identity.

mod matrix;
mod perm;
mod spec;

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_integer::Integer;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

pub use matrix::ProjectiveMatrix;
pub use perm::Permutation;
pub use spec::{parse_spec, GroupSpec};

use crate::error::{Error, Result};
use crate::field::GaloisField;

/// Default ceiling on the number of elements [`enumerate`] will materialize.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Groups up to this order get a full multiplication table.
pub const TABLE_LIMIT: usize = 2048;

/// A concrete element, rebuilt on demand from the group's storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Perm(Permutation),
    Matrix(ProjectiveMatrix),
    Tuple(Vec<Element>),
    /// A coset of a normal subgroup, named by its minimum-index member.
    Coset(Box<Element>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p}"),
            Element::Matrix(m) => write!(f, "{m}"),
            Element::Tuple(parts) => {
                let s: Vec<String> = parts.iter().map(|e| e.to_string()).collect();
                write!(f, "<{}>", s.join(", "))
            }
            Element::Coset(rep) => write!(f, "{rep}N"),
        }
    }
}

/// A finite group with elements indexed `0..order`.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct EnumeratedGroup {
    inner: Arc<Inner>,
}

struct Inner {
    label: String,
    generators: Vec<usize>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
    backend: Backend,
}

enum Backend {
    Perm(PermBackend),
    Matrix(MatrixBackend),
    Product(ProductBackend),
    Quotient(QuotientBackend),
}

struct PermBackend {
    degree: usize,
    points: Vec<u16>,
    index: FxHashMap<Box<[u16]>, u32>,
}

struct MatrixBackend {
    field: Arc<GaloisField>,
    projective: bool,
    mats: Vec<[u16; 4]>,
    index: FxHashMap<[u16; 4], u32>,
}

struct ProductBackend {
    factors: Vec<EnumeratedGroup>,
    strides: Vec<usize>,
}

struct QuotientBackend {
    parent: EnumeratedGroup,
    reps: Vec<u32>,
    coset_of: Vec<u32>,
}

impl PermBackend {
    fn images(&self, a: usize) -> &[u16] {
        &self.points[a * self.degree..(a + 1) * self.degree]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.images(a), self.images(b));
        let prod: SmallVec<[u16; 32]> = pb.iter().map(|&i| pa[i as usize]).collect();
        self.index[&prod[..]] as usize
    }
}

impl MatrixBackend {
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = matrix::mul_codes(&self.field, &self.mats[a], &self.mats[b]);
        let m = if self.projective { matrix::canonical(&self.field, m) } else { m };
        self.index[&m] as usize
    }
}

impl ProductBackend {
    fn split(&self, a: usize) -> SmallVec<[usize; 4]> {
        let mut rest = a;
        self.strides
            .iter()
            .map(|&s| {
                let c = rest / s;
                rest %= s;
                c
            })
            .collect()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (sa, sb) = (self.split(a), self.split(b));
        self.factors
            .iter()
            .zip(&self.strides)
            .enumerate()
            .map(|(k, (g, &s))| g.mul(sa[k], sb[k]) * s)
            .sum()
    }
}

impl QuotientBackend {
    fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.parent.mul(self.reps[a] as usize, self.reps[b] as usize);
        self.coset_of[p] as usize
    }
}

impl Backend {
    fn len(&self) -> usize {
        match self {
            Backend::Perm(p) => p.index.len(),
            Backend::Matrix(m) => m.mats.len(),
            Backend::Product(p) => p.factors.iter().map(|g| g.order()).product(),
            Backend::Quotient(q) => q.reps.len(),
        }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Backend::Perm(p) => p.mul(a, b),
            Backend::Matrix(m) => m.mul(a, b),
            Backend::Product(p) => p.mul(a, b),
            Backend::Quotient(q) => q.mul(a, b),
        }
    }
}

impl EnumeratedGroup {
    fn assemble(label: String, generators: Vec<usize>, backend: Backend) -> Self {
        let n = backend.len();
        let mut generators = generators;
        generators.retain(|&g| g != 0);
        generators.sort_unstable();
        generators.dedup();
        let inverses = compute_inverses(&backend, n);
        let orders = compute_orders(&backend, n);
        let table = match backend {
            Backend::Perm(_) | Backend::Matrix(_) if n <= TABLE_LIMIT => {
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    t.extend((0..n).map(|b| backend.mul(a, b) as u32));
                }
                Some(t)
            }
            _ => None,
        };
        EnumeratedGroup { inner: Arc::new(Inner { label, generators, inverses, orders, table, backend }) }
    }

    /// Breadth-first closure of permutation generators of a common degree.
    pub fn from_permutations(
        label: impl Into<String>,
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidSpec("generator degrees differ".into()));
        }
        let gens: Vec<Vec<u16>> = generators.iter().map(|g| g.images().to_vec()).collect();
        let identity: Vec<u16> = (0..degree as u16).collect();
        let (elements, index) = closure(
            identity,
            &gens,
            |a, b| b.iter().map(|&i| a[i as usize]).collect(),
            |e| e.clone().into_boxed_slice(),
            cap,
        )?;
        let gen_idx = gens.iter().map(|g| index[g.as_slice()] as usize).collect();
        let points = elements.concat();
        let backend = Backend::Perm(PermBackend { degree, points, index });
        Ok(Self::assemble(label.into(), gen_idx, backend))
    }

    /// Breadth-first closure of 2×2 determinant-one matrix generators.
    pub fn from_matrices(
        label: impl Into<String>,
        field: &Arc<GaloisField>,
        projective: bool,
        generators: &[[u16; 4]],
        cap: usize,
    ) -> Result<Self> {
        let norm = |m: [u16; 4]| if projective { matrix::canonical(field, m) } else { m };
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if matrix::det(field, g) != 1 {
                return Err(Error::InvalidSpec("matrix determinant is not 1".into()));
            }
            gens.push(norm(*g));
        }
        let (mats, index) = closure(
            [1u16, 0, 0, 1],
            &gens,
            |a, b| norm(matrix::mul_codes(field, a, b)),
            |m| *m,
            cap,
        )?;
        let gen_idx = gens.iter().map(|g| index[g] as usize).collect();
        let backend = Backend::Matrix(MatrixBackend { field: Arc::clone(field), projective, mats, index });
        Ok(Self::assemble(label.into(), gen_idx, backend))
    }

    /// Direct product with componentwise multiplication; the element index
    /// is the mixed-radix number formed by the factor indices.
    pub fn direct_product(factors: Vec<EnumeratedGroup>, cap: usize) -> Result<Self> {
        let total = factors
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.order()))
            .filter(|&t| t <= cap)
            .ok_or(Error::CapExceeded { cap, partial: 0 })?;
        debug_assert!(total >= 1);
        let mut strides = vec![1usize; factors.len()];
        for k in (0..factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].order();
        }
        let mut generators = Vec::new();
        for (g, &s) in factors.iter().zip(&strides) {
            generators.extend(g.generators().iter().map(|&x| x * s));
        }
        let label = factors.iter().map(|g| g.label().to_string()).collect::<Vec<_>>().join(" x ");
        Ok(Self::assemble(label, generators, Backend::Product(ProductBackend { factors, strides })))
    }

    /// Quotient by a normal subgroup, given the coset id of every parent
    /// element and the minimum-index representative of every coset.
    pub(crate) fn quotient_of(parent: &EnumeratedGroup, reps: Vec<u32>, coset_of: Vec<u32>, label: String) -> Self {
        let generators = parent.generators().iter().map(|&g| coset_of[g] as usize).collect();
        let backend = Backend::Quotient(QuotientBackend { parent: parent.clone(), reps, coset_of });
        Self::assemble(label, generators, backend)
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn order(&self) -> usize {
        self.inner.orders.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.inner.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: a, order: self.order() })
        }
    }

    /// Index of the product `a·b`. Panics on out-of-range indices.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.inner.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.inner.backend.mul(a, b),
        }
    }

    pub fn try_mul(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverses[a] as usize
    }

    pub fn try_inv(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// `x⁻¹ g x`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (a, self.identity());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Order of element `a`, precomputed at construction (cycle-lcm for
    /// permutations, lcm of components for products).
    #[inline]
    pub fn element_order(&self, a: usize) -> u64 {
        self.inner.orders[a] as u64
    }

    pub fn try_element_order(&self, a: usize) -> Result<u64> {
        self.check(a)?;
        Ok(self.element_order(a))
    }

    /// Order by repeated multiplication, independent of the fast path.
    pub fn element_order_iterative(&self, a: usize) -> u64 {
        let mut x = a;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.inner.orders
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn has_table(&self) -> bool {
        self.inner.table.is_some()
    }

    /// Factor groups when this group was built as a direct product.
    pub fn factors(&self) -> Option<&[EnumeratedGroup]> {
        match &self.inner.backend {
            Backend::Product(p) => Some(&p.factors),
            _ => None,
        }
    }

    /// Index in this product of the element that is `a` in factor `k` and the
    /// identity elsewhere.
    pub fn embed_factor(&self, k: usize, a: usize) -> Result<usize> {
        match &self.inner.backend {
            Backend::Product(p) if k < p.factors.len() => {
                p.factors[k].check(a)?;
                Ok(a * p.strides[k])
            }
            _ => Err(Error::Precondition(format!("group has no factor {k}"))),
        }
    }

    /// Factor indices of a product element.
    pub fn components(&self, a: usize) -> Option<Vec<usize>> {
        match &self.inner.backend {
            Backend::Product(p) => Some(p.split(a).to_vec()),
            _ => None,
        }
    }

    pub fn element(&self, a: usize) -> Element {
        match &self.inner.backend {
            Backend::Perm(p) => Element::Perm(
                Permutation::from_images(p.images(a).to_vec()).expect("stored permutations are bijections"),
            ),
            Backend::Matrix(m) => Element::Matrix(
                ProjectiveMatrix::from_codes(&m.field, m.mats[a], m.projective)
                    .expect("stored matrices have determinant one"),
            ),
            Backend::Product(p) => {
                Element::Tuple(p.split(a).iter().zip(&p.factors).map(|(&c, g)| g.element(c)).collect())
            }
            Backend::Quotient(q) => Element::Coset(Box::new(q.parent.element(q.reps[a] as usize))),
        }
    }

    pub fn describe(&self, a: usize) -> String {
        self.element(a).to_string()
    }
}

impl fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("label", &self.label())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Breadth-first closure under right multiplication by the generators.
/// The identity lands at index 0.
#[allow(clippy::type_complexity)]
fn closure<E, K>(
    identity: E,
    gens: &[E],
    mul: impl Fn(&E, &E) -> E,
    key: impl Fn(&E) -> K,
    cap: usize,
) -> Result<(Vec<E>, FxHashMap<K, u32>)>
where
    K: Hash + Eq,
{
    let mut index = FxHashMap::default();
    index.insert(key(&identity), 0u32);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        for g in gens {
            let next = mul(&elements[head], g);
            let k = key(&next);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap, partial: elements.len() });
                }
                e.insert(elements.len() as u32);
                elements.push(next);
            }
        }
        head += 1;
    }
    Ok((elements, index))
}

fn compute_inverses(backend: &Backend, n: usize) -> Vec<u32> {
    match backend {
        Backend::Perm(p) => (0..n)
            .map(|a| {
                let mut inv: SmallVec<[u16; 32]> = SmallVec::from_elem(0, p.degree);
                for (i, &j) in p.images(a).iter().enumerate() {
                    inv[j as usize] = i as u16;
                }
                p.index[&inv[..]]
            })
            .collect(),
        Backend::Matrix(m) => m
            .mats
            .iter()
            .map(|a| {
                let inv = matrix::inverse_codes(&m.field, a);
                let inv = if m.projective { matrix::canonical(&m.field, inv) } else { inv };
                m.index[&inv]
            })
            .collect(),
        Backend::Product(p) => (0..n)
            .map(|a| {
                let parts = p.split(a);
                parts.iter().zip(&p.factors).zip(&p.strides).map(|((&c, g), &s)| g.inv(c) * s).sum::<usize>()
                    as u32
            })
            .collect(),
        Backend::Quotient(q) => q.reps.iter().map(|&r| q.coset_of[q.parent.inv(r as usize)]).collect(),
    }
}

fn compute_orders(backend: &Backend, n: usize) -> Vec<u32> {
    match backend {
        Backend::Perm(p) => (0..n)
            .map(|a| {
                let images = p.images(a);
                let mut seen: SmallVec<[bool; 32]> = SmallVec::from_elem(false, p.degree);
                let mut order = 1u64;
                for start in 0..p.degree {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0u64;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        x = images[x] as usize;
                        len += 1;
                    }
                    order = order.lcm(&len);
                }
                order as u32
            })
            .collect(),
        Backend::Matrix(m) => m
            .mats
            .iter()
            .map(|a| {
                let mut x = *a;
                let mut k = 1;
                while x != [1, 0, 0, 1] {
                    x = matrix::mul_codes(&m.field, &x, a);
                    if m.projective {
                        x = matrix::canonical(&m.field, x);
                    }
                    k += 1;
                }
                k
            })
            .collect(),
        Backend::Product(p) => (0..n)
            .map(|a| {
                p.split(a)
                    .iter()
                    .zip(&p.factors)
                    .fold(1u64, |acc, (&c, g)| acc.lcm(&g.element_order(c))) as u32
            })
            .collect(),
        Backend::Quotient(q) => (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = q.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect(),
    }
}

/// Enumerates the group described by `spec` under [`DEFAULT_CAP`].
pub fn enumerate(spec: &GroupSpec) -> Result<EnumeratedGroup> {
    enumerate_capped(spec, DEFAULT_CAP)
}

/// Parses and enumerates in one step.
pub fn enumerate_str(text: &str) -> Result<EnumeratedGroup> {
    enumerate(&parse_spec(text)?)
}

pub fn enumerate_capped(spec: &GroupSpec, cap: usize) -> Result<EnumeratedGroup> {
    spec.validate()?;
    if let Some(predicted) = spec.predicted_order() {
        if predicted > cap as u128 {
            return Err(Error::CapExceeded { cap, partial: 0 });
        }
    }
    let label = spec.to_string();
    match spec {
        GroupSpec::Alternating(n) => {
            EnumeratedGroup::from_permutations(label, *n, &alternating_generators(*n), cap)
        }
        GroupSpec::Symmetric(n) => EnumeratedGroup::from_permutations(label, *n, &symmetric_generators(*n), cap),
        GroupSpec::Cyclic(n) => {
            let gens = if *n > 1 { vec![cycle(*n, 0..*n)] } else { Vec::new() };
            EnumeratedGroup::from_permutations(label, *n, &gens, cap)
        }
        GroupSpec::Dihedral(n) => {
            let n = *n;
            let rotation = cycle(n, 0..n);
            let reflection =
                Permutation::from_images((0..n).map(|i| ((n - i) % n) as u16).collect()).expect("bijection");
            EnumeratedGroup::from_permutations(label, n, &[rotation, reflection], cap)
        }
        GroupSpec::Quaternion => EnumeratedGroup::from_permutations(label, 8, &quaternion_generators(), cap),
        GroupSpec::Psl2(q) | GroupSpec::Sl2(q) => {
            let field = Arc::new(GaloisField::for_order(*q).map_err(|e| Error::InvalidSpec(e.to_string()))?);
            let projective = matches!(spec, GroupSpec::Psl2(_));
            EnumeratedGroup::from_matrices(label, &field, projective, &linear_generators(&field), cap)
        }
        GroupSpec::Explicit { degree, generators } => {
            EnumeratedGroup::from_permutations(label, *degree, generators, cap)
        }
        GroupSpec::Product(factors) => {
            let groups = factors.iter().map(|f| enumerate_capped(f, cap)).collect::<Result<Vec<_>>>()?;
            EnumeratedGroup::direct_product(groups, cap)
        }
    }
}

fn cycle(degree: usize, points: impl Iterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(degree, &[points.collect()]).expect("valid cycle")
}

/// (1 2 3) together with (1 2 … n) for odd n or (2 3 … n) for even n.
fn alternating_generators(n: usize) -> Vec<Permutation> {
    if n < 3 {
        return Vec::new();
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    vec![cycle(n, 0..3), long]
}

/// (1 2) together with (1 2 … n).
fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return Vec::new();
    }
    vec![cycle(n, 0..2), cycle(n, 0..n)]
}

/// Left-regular action of i and j on the eight unit quaternions
/// ordered 1, −1, i, −i, j, −j, k, −k.
fn quaternion_generators() -> Vec<Permutation> {
    // unit products: UNIT[a][b] = (sign, unit) of e_a · e_b with e = (1, i, j, k)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let left = |unit: usize| {
        let images = (0..8)
            .map(|x| {
                let (neg, u) = (x % 2 == 1, x / 2);
                let (s, v) = UNIT[unit][u];
                (2 * v + usize::from(neg ^ s)) as u16
            })
            .collect();
        Permutation::from_images(images).expect("left multiplication is a bijection")
    };
    vec![left(1), left(2)]
}

/// [[1,1],[0,1]] and [[0,1],[−1,0]]; over non-prime fields also
/// diag(ζ, ζ⁻¹) for a primitive ζ, since the first two only generate
/// SL(2,p) there.
fn linear_generators(field: &GaloisField) -> Vec<[u16; 4]> {
    let mut gens = vec![[1, 1, 0, 1], [0, 1, field.neg(1), 0]];
    if field.spec().degree() > 1 {
        let z = field.primitive();
        gens.push([z, 0, 0, field.inv(z)]);
    }
    gens
}
