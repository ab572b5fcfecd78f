use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{GaloisField, GfElement};

/// A determinant-one 2×2 matrix over GF(q), optionally taken modulo ±I.
///
/// Entries are stored row-major as field codes. When `projective` is set and
/// q is odd, of the pair {M, −M} the stored one is the matrix whose first
/// non-zero entry has the smaller code; in characteristic 2 the pair
/// collapses, so the representative is unique.
#[derive(Clone)]
pub struct ProjectiveMatrix {
    field: Arc<GaloisField>,
    codes: [u16; 4],
    projective: bool,
}

impl ProjectiveMatrix {
    pub fn new(field: &Arc<GaloisField>, entries: [[GfElement; 2]; 2], projective: bool) -> Result<Self> {
        let mut codes = [0u16; 4];
        for (k, e) in entries.iter().flatten().enumerate() {
            if **e.field() != **field.spec() {
                return Err(Error::FieldMismatch(format!("entry from {}", e.field())));
            }
            codes[k] = e.code() as u16;
        }
        Self::from_codes(field, codes, projective)
    }

    pub fn from_codes(field: &Arc<GaloisField>, codes: [u16; 4], projective: bool) -> Result<Self> {
        if det(field, &codes) != 1 {
            return Err(Error::InvalidSpec("matrix determinant is not 1".into()));
        }
        let codes = if projective { canonical(field, codes) } else { codes };
        Ok(ProjectiveMatrix { field: Arc::clone(field), codes, projective })
    }

    pub fn identity(field: &Arc<GaloisField>, projective: bool) -> Self {
        ProjectiveMatrix { field: Arc::clone(field), codes: [1, 0, 0, 1], projective }
    }

    pub fn codes(&self) -> [u16; 4] {
        self.codes
    }

    pub fn entry(&self, row: usize, col: usize) -> GfElement {
        self.field.element(self.codes[2 * row + col])
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn mul(&self, other: &Self) -> Self {
        let codes = mul_codes(&self.field, &self.codes, &other.codes);
        let codes = if self.projective { canonical(&self.field, codes) } else { codes };
        ProjectiveMatrix { field: Arc::clone(&self.field), codes, projective: self.projective }
    }

    pub fn inverse(&self) -> Self {
        let codes = inverse_codes(&self.field, &self.codes);
        let codes = if self.projective { canonical(&self.field, codes) } else { codes };
        ProjectiveMatrix { field: Arc::clone(&self.field), codes, projective: self.projective }
    }

    pub fn is_identity(&self) -> bool {
        self.codes == [1, 0, 0, 1]
    }

    /// Least n ≥ 1 with Mⁿ equal to the identity (modulo ±I when projective).
    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }
}

impl PartialEq for ProjectiveMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.codes == other.codes && self.projective == other.projective
    }
}

impl Eq for ProjectiveMatrix {}

impl fmt::Debug for ProjectiveMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectiveMatrix({self})")
    }
}

impl fmt::Display for ProjectiveMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = (0..4).map(|k| self.field.element(self.codes[k]).to_string()).collect();
        write!(f, "[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
    }
}

pub(crate) fn det(field: &GaloisField, m: &[u16; 4]) -> u16 {
    field.sub(field.mul(m[0], m[3]), field.mul(m[1], m[2]))
}

#[inline]
pub(crate) fn mul_codes(field: &GaloisField, a: &[u16; 4], b: &[u16; 4]) -> [u16; 4] {
    [
        field.add(field.mul(a[0], b[0]), field.mul(a[1], b[2])),
        field.add(field.mul(a[0], b[1]), field.mul(a[1], b[3])),
        field.add(field.mul(a[2], b[0]), field.mul(a[3], b[2])),
        field.add(field.mul(a[2], b[1]), field.mul(a[3], b[3])),
    ]
}

/// Adjugate, which is the inverse for determinant one.
pub(crate) fn inverse_codes(field: &GaloisField, m: &[u16; 4]) -> [u16; 4] {
    [m[3], field.neg(m[1]), field.neg(m[2]), m[0]]
}

#[inline]
pub(crate) fn canonical(field: &GaloisField, m: [u16; 4]) -> [u16; 4] {
    let lead = m.iter().copied().find(|&c| c != 0).expect("invertible matrix has a non-zero entry");
    let neg_lead = field.neg(lead);
    if neg_lead < lead {
        m.map(|c| field.neg(c))
    } else {
        m
    }
}
