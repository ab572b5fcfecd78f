//! Arithmetic in GF(p^m) for small p and m.
//!
//! Elements are polynomials over GF(p) of degree < m, stored constant term
//! first and reduced modulo a fixed monic irreducible polynomial. Reading the
//! coefficient vector as a base-p integer (constant term least significant)
//! gives each element a *code* in `0..q`; that code order is the canonical
//! total order on the field, used downstream to normalize projective matrices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest extension degree the exhaustive irreducibility check accepts.
pub const MAX_DEGREE: usize = 4;

/// Largest field order for which [`GaloisField`] builds lookup tables.
pub const MAX_TABLE_ORDER: u32 = 1024;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Built-in moduli for the non-prime fields used by the group constructions.
/// Coefficients are listed constant term first.
fn builtin_modulus(q: u32) -> Option<Vec<u32>> {
    let poly = match q {
        4 => vec![1, 1, 1],     // x^2 + x + 1
        8 => vec![1, 1, 0, 1],  // x^3 + x + 1
        9 => vec![1, 0, 1],     // x^2 + 1
        16 => vec![1, 1, 0, 0, 1], // x^4 + x + 1
        25 => vec![2, 0, 1],    // x^2 + 2
        27 => vec![1, 2, 0, 1], // x^3 + 2x + 1
        _ => return None,
    };
    Some(poly)
}

// Polynomials over GF(p), constant term first. Trailing zeros are allowed in
// inputs; outputs are trimmed.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder of `a / b`; `b` must be non-zero after trimming.
fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u32; rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = (*rem.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        quot[shift] = coef;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (coef as u64 * bc as u64 % p as u64) as u32;
            rem[shift + i] = (rem[shift + i] + p - sub) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut factor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                factor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            factor.push(1);
            let (_, rem) = poly_divmod(modulus, &factor, p);
            if rem.is_empty() {
                return false;
            }
        }
    }
    true
}

/// A validated description of GF(p^m).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Validates `p` and `modulus` (constant term first, monic, degree `m`).
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Field("p not prime".into()));
        }
        if modulus.len() < 2 {
            return Err(Error::Field("modulus must have degree at least 1".into()));
        }
        let m = modulus.len() - 1;
        if m > MAX_DEGREE {
            return Err(Error::Field(format!(
                "extension degree {m} exceeds supported maximum {MAX_DEGREE}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Field("modulus coefficients must lie in [0, p)".into()));
        }
        if modulus[m] != 1 {
            return Err(Error::Field("modulus not monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::Field("modulus reducible".into()));
        }
        Ok(FieldSpec { p, m, modulus })
    }

    /// GF(q) with the built-in modulus for `q`, the modulus `x` for prime
    /// `q`, or otherwise the smallest irreducible monic modulus in code order.
    pub fn for_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q as u64)
            .ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        let p = p as u32;
        let m = m as usize;
        if m == 1 {
            return FieldSpec::new(p, vec![0, 1]);
        }
        if let Some(modulus) = builtin_modulus(q) {
            return FieldSpec::new(p, modulus);
        }
        if m > MAX_DEGREE {
            return Err(Error::Field(format!(
                "extension degree {m} exceeds supported maximum {MAX_DEGREE}"
            )));
        }
        let tail = (p as u64).pow(m as u32);
        for code in 0..tail {
            let mut poly = Vec::with_capacity(m + 1);
            let mut c = code;
            for _ in 0..m {
                poly.push((c % p as u64) as u32);
                c /= p as u64;
            }
            poly.push(1);
            if is_irreducible(&poly, p) {
                return FieldSpec::new(p, poly);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m as u32)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// An element of GF(p^m), tied to the field it was made in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl GfElement {
    /// Reduces each raw coefficient modulo p and zero-pads to length m.
    pub fn new(field: &Arc<FieldSpec>, raw: &[i64]) -> Result<Self> {
        if raw.len() > field.m {
            return Err(Error::Precondition(format!(
                "{} coefficients given for a degree-{} field",
                raw.len(),
                field.m
            )));
        }
        let p = field.p as i64;
        let mut coeffs: Vec<u32> = raw.iter().map(|&c| c.rem_euclid(p) as u32).collect();
        coeffs.resize(field.m, 0);
        Ok(GfElement { field: Arc::clone(field), coeffs })
    }

    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        GfElement { field: Arc::clone(field), coeffs: vec![0; field.m] }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = 1;
        e
    }

    pub fn from_code(field: &Arc<FieldSpec>, code: u32) -> Self {
        let mut coeffs = Vec::with_capacity(field.m);
        let mut c = code;
        for _ in 0..field.m {
            coeffs.push(c % field.p);
            c /= field.p;
        }
        GfElement { field: Arc::clone(field), coeffs }
    }

    /// Position in the canonical order: coefficients read as a base-p integer.
    pub fn code(&self) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * self.field.p + c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)))
        }
    }

    fn from_poly(field: &Arc<FieldSpec>, poly: Vec<u32>) -> Self {
        let (_, mut rem) = poly_divmod(&poly, &field.modulus, field.p);
        rem.resize(field.m, 0);
        GfElement { field: Arc::clone(field), coeffs: rem }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Ok(GfElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        GfElement { field: Arc::clone(&self.field), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Polynomial product reduced modulo the field modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let prod = poly_mul(&self.coeffs, &other.coeffs, self.field.p);
        Ok(Self::from_poly(&self.field, prod))
    }

    /// Inverse via the extended Euclidean algorithm against the modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.field.p;
        // Invariant: s_i * self ≡ r_i (mod modulus)
        let (mut r0, mut r1) = (self.field.modulus.clone(), trim(self.coeffs.clone()));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1, p);
            let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a non-zero constant since the modulus is irreducible
        let scale = inv_mod_p(r1[0], p);
        let out = poly_mul(&s1, &[scale], p);
        Ok(Self::from_poly(&self.field, out))
    }
}

impl fmt::Display for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Table-driven arithmetic on element codes, built from [`GfElement`] ops.
#[derive(Debug)]
pub struct GaloisField {
    spec: Arc<FieldSpec>,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q = spec.order();
        if q > MAX_TABLE_ORDER {
            return Err(Error::Field(format!(
                "GF({q}) is larger than the supported table size {MAX_TABLE_ORDER}"
            )));
        }
        let spec = Arc::new(spec);
        let q = q as usize;
        let elems: Vec<GfElement> = (0..q as u32).map(|c| GfElement::from_code(&spec, c)).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = a.add(b)?.code() as u16;
                mul[i * q + j] = a.mul(b)?.code() as u16;
            }
        }
        let neg = elems.iter().map(|a| a.neg().code() as u16).collect();
        let mut inv = vec![0u16; q];
        for a in elems.iter().skip(1) {
            inv[a.code() as usize] = a.inv()?.code() as u16;
        }
        let mut field = GaloisField { spec, q, add, mul, neg, inv, primitive: 1 };
        field.primitive = (1..q as u16)
            .find(|&g| field.mult_order(g) == q - 1)
            .expect("multiplicative group of a finite field is cyclic");
        Ok(field)
    }

    pub fn for_order(q: u32) -> Result<Self> {
        Self::new(FieldSpec::for_order(q)?)
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a non-zero code; `inv(0)` is reported as 0.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// A generator of the multiplicative group (smallest such code).
    pub fn primitive(&self) -> u16 {
        self.primitive
    }

    pub fn element(&self, code: u16) -> GfElement {
        GfElement::from_code(&self.spec, code as u32)
    }

    fn mult_order(&self, a: u16) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::for_order(q).unwrap())
    }

    fn all(f: &Arc<FieldSpec>) -> Vec<GfElement> {
        (0..f.order()).map(|c| GfElement::from_code(f, c)).collect()
    }

    #[test]
    fn make_reduces_and_pads() {
        let gf7 = field(7);
        assert_eq!(GfElement::new(&gf7, &[10]).unwrap().coeffs(), &[3]);
        assert_eq!(GfElement::new(&gf7, &[-1]).unwrap().coeffs(), &[6]);
        let gf8 = field(8);
        assert_eq!(gf8.modulus(), &[1, 1, 0, 1]);
        let x = GfElement::new(&gf8, &[0, 1, 0]).unwrap();
        assert_eq!(x.coeffs(), &[0, 1, 0]);
        assert_eq!(GfElement::new(&gf8, &[1]).unwrap().coeffs(), &[1, 0, 0]);
        assert!(GfElement::new(&gf8, &[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(FieldSpec::new(6, vec![0, 1]).unwrap_err(), Error::Field("p not prime".into()));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert_eq!(
            FieldSpec::new(2, vec![1, 0, 1]).unwrap_err(),
            Error::Field("modulus reducible".into())
        );
        // x^2 + 1 = (x+2)(x+3) over GF(5)
        assert!(FieldSpec::new(5, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::new(3, vec![1, 0, 2]).is_err());
        assert!(FieldSpec::for_order(6).is_err());
        assert!(FieldSpec::for_order(32).is_err());
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for q in [4, 8, 9, 16, 25, 27] {
            let f = FieldSpec::for_order(q).unwrap();
            assert_eq!(f.order(), q);
            assert_eq!(f.modulus(), builtin_modulus(q).unwrap().as_slice());
        }
        // searched moduli for fields without a built-in
        assert_eq!(FieldSpec::for_order(49).unwrap().order(), 49);
        assert_eq!(FieldSpec::for_order(81).unwrap().degree(), 4);
    }

    #[test]
    fn addition_examples() {
        let gf7 = field(7);
        let a = GfElement::new(&gf7, &[3]).unwrap();
        let b = GfElement::new(&gf7, &[5]).unwrap();
        assert_eq!(a.add(&b).unwrap().coeffs(), &[1]);
        let gf8 = field(8);
        let x = GfElement::new(&gf8, &[0, 1]).unwrap();
        assert!(x.add(&x).unwrap().is_zero());
        for a in all(&gf8) {
            assert_eq!(a.add(&GfElement::zero(&gf8)).unwrap(), a);
        }
    }

    #[test]
    fn multiplication_examples() {
        let gf8 = field(8);
        let x = GfElement::new(&gf8, &[0, 1]).unwrap();
        let x2 = GfElement::new(&gf8, &[0, 0, 1]).unwrap();
        assert_eq!(x.mul(&x2).unwrap().coeffs(), &[1, 1, 0]);
        let gf7 = field(7);
        let a = GfElement::new(&gf7, &[3]).unwrap();
        let b = GfElement::new(&gf7, &[5]).unwrap();
        assert_eq!(a.mul(&b).unwrap().coeffs(), &[1]);
        for q in [7, 8, 9, 16] {
            let f = field(q);
            for a in all(&f) {
                assert_eq!(a.mul(&GfElement::one(&f)).unwrap(), a);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let gf8 = field(8);
        let x = GfElement::new(&gf8, &[0, 1]).unwrap();
        assert_eq!(x.inv().unwrap().coeffs(), &[1, 0, 1]);
        let gf7 = field(7);
        assert_eq!(GfElement::new(&gf7, &[3]).unwrap().inv().unwrap().coeffs(), &[5]);
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27] {
            let f = field(q);
            assert_eq!(GfElement::one(&f).inv().unwrap(), GfElement::one(&f));
            assert_eq!(GfElement::zero(&f).inv().unwrap_err(), Error::ZeroInverse);
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = GfElement::one(&field(7));
        let b = GfElement::one(&field(5));
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn inverses_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            let f = field(q);
            let one = GfElement::one(&f);
            for a in all(&f).into_iter().skip(1) {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one, "GF({q}) a={a}");
            }
        }
    }

    #[test]
    fn multiplicative_orders_divide_q_minus_one() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27] {
            let f = field(q);
            let one = GfElement::one(&f);
            for a in all(&f).into_iter().skip(1) {
                let mut x = a.clone();
                let mut n = 1;
                while x != one {
                    x = x.mul(&a).unwrap();
                    n += 1;
                }
                assert_eq!((q - 1) % n, 0, "GF({q}) a={a} order {n}");
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = field(q);
            let els = all(&f);
            for a in &els {
                for b in &els {
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &els {
                        let ab_c = a.mul(b).unwrap().mul(c).unwrap();
                        let a_bc = a.mul(&b.mul(c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let lhs = a.mul(&b.add(c).unwrap()).unwrap();
                        let rhs = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                        let assoc = a.add(b).unwrap().add(c).unwrap();
                        assert_eq!(assoc, a.add(&b.add(c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_polynomial_ops() {
        for q in [4, 9, 25, 27] {
            let gf = GaloisField::for_order(q).unwrap();
            let spec = Arc::clone(gf.spec());
            for a in 0..q as u16 {
                let ea = GfElement::from_code(&spec, a as u32);
                assert_eq!(gf.neg(a) as u32, ea.neg().code());
                for b in 0..q as u16 {
                    let eb = GfElement::from_code(&spec, b as u32);
                    assert_eq!(gf.mul(a, b) as u32, ea.mul(&eb).unwrap().code());
                    assert_eq!(gf.sub(a, b) as u32, ea.sub(&eb).unwrap().code());
                }
            }
            assert_eq!(gf.mult_order(gf.primitive()), q as usize - 1);
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(1024), Some((2, 10)));
    }
}
