use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::GroupError;
use crate::ffield::{FieldElement, FieldSpec};
use crate::projgeom::ProjPoint;

/// An invertible k×k matrix up to scalars, acting on column vectors, scaled
/// so that its first nonzero entry in row-major order is 1.
#[derive(Clone)]
pub struct ProjMatrix {
    field: Arc<FieldSpec>,
    k: usize,
    entries: Vec<FieldElement>,
}

impl ProjMatrix {
    pub fn new(field: Arc<FieldSpec>, k: usize, entries: Vec<FieldElement>) -> Result<Self, GroupError> {
        assert_eq!(entries.len(), k * k, "matrix needs k*k entries");
        let m = ProjMatrix { field, k, entries };
        if m.det().is_zero() {
            return Err(GroupError::Singular);
        }
        Ok(m.normalized())
    }

    pub fn from_rows(field: Arc<FieldSpec>, rows: Vec<Vec<FieldElement>>) -> Result<Self, GroupError> {
        let k = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Self::new(field, k, entries)
    }

    pub fn identity(field: Arc<FieldSpec>, k: usize) -> Self {
        let mut entries = vec![field.zero(); k * k];
        for i in 0..k {
            entries[i * k + i] = field.one();
        }
        ProjMatrix { field, k, entries }
    }

    pub fn diagonal(field: Arc<FieldSpec>, diag: &[FieldElement]) -> Result<Self, GroupError> {
        let k = diag.len();
        let mut entries = vec![field.zero(); k * k];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * k + i] = d;
        }
        Self::new(field, k, entries)
    }

    /// Ones on the antidiagonal.
    pub fn antidiagonal(field: Arc<FieldSpec>, k: usize) -> Self {
        let mut entries = vec![field.zero(); k * k];
        for i in 0..k {
            entries[i * k + (k - 1 - i)] = field.one();
        }
        ProjMatrix { field, k, entries }
    }

    fn normalized(mut self) -> Self {
        let f = &*self.field;
        let lead = *self.entries.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
        if lead != f.one() {
            let s = f.inv(lead).unwrap();
            for e in self.entries.iter_mut() {
                *e = f.mul(*e, s);
            }
        }
        self
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    /// Entry encodings row by row.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.k).map(|r| r.iter().map(|e| e.value()).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        let f = &*self.field;
        (0..self.k).all(|i| {
            (0..self.k).all(|j| self.entry(i, j) == if i == j { f.one() } else { f.zero() })
        })
    }

    /// Determinant of the stored (normalized) representative.
    pub fn det(&self) -> FieldElement {
        let f = &*self.field;
        let k = self.k;
        let mut m = self.entries.clone();
        let mut det = f.one();
        for col in 0..k {
            let Some(piv) = (col..k).find(|&r| !m[r * k + col].is_zero()) else {
                return f.zero();
            };
            if piv != col {
                for j in 0..k {
                    m.swap(piv * k + j, col * k + j);
                }
                det = f.neg(det);
            }
            let pv = m[col * k + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for r in col + 1..k {
                let factor = f.mul(m[r * k + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..k {
                    let t = f.mul(factor, m[col * k + j]);
                    m[r * k + j] = f.sub(m[r * k + j], t);
                }
            }
        }
        det
    }

    /// Matrix product `self · other` (so `other` acts first on columns).
    pub fn mul(&self, other: &ProjMatrix) -> ProjMatrix {
        let f = &*self.field;
        let k = self.k;
        let mut entries = vec![f.zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = f.zero();
                for l in 0..k {
                    acc = f.add(acc, f.mul(self.entry(i, l), other.entry(l, j)));
                }
                entries[i * k + j] = acc;
            }
        }
        ProjMatrix {
            field: self.field.clone(),
            k,
            entries,
        }
        .normalized()
    }

    pub fn inverse(&self) -> ProjMatrix {
        let f = &*self.field;
        let k = self.k;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(self.field.clone(), k).entries;
        for col in 0..k {
            let piv = (col..k).find(|&r| !a[r * k + col].is_zero()).expect("invertible");
            for j in 0..k {
                a.swap(piv * k + j, col * k + j);
                inv.swap(piv * k + j, col * k + j);
            }
            let s = f.inv(a[col * k + col]).unwrap();
            for j in 0..k {
                a[col * k + j] = f.mul(a[col * k + j], s);
                inv[col * k + j] = f.mul(inv[col * k + j], s);
            }
            for r in 0..k {
                if r == col || a[r * k + col].is_zero() {
                    continue;
                }
                let factor = a[r * k + col];
                for j in 0..k {
                    let t = f.mul(factor, a[col * k + j]);
                    a[r * k + j] = f.sub(a[r * k + j], t);
                    let t = f.mul(factor, inv[col * k + j]);
                    inv[r * k + j] = f.sub(inv[r * k + j], t);
                }
            }
        }
        ProjMatrix {
            field: self.field.clone(),
            k,
            entries: inv,
        }
        .normalized()
    }

    /// `M P` for a column vector `P`.
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let f = &*self.field;
        let x = p.coords();
        let v: Vec<FieldElement> = (0..self.k)
            .map(|i| {
                (0..self.k).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.entry(i, j), x[j])))
            })
            .collect();
        ProjPoint::new(f, v).expect("invertible matrix")
    }

    /// Entrywise `x -> x^e`.
    pub fn frobenius(&self, e: u64) -> ProjMatrix {
        let f = &*self.field;
        ProjMatrix {
            field: self.field.clone(),
            k: self.k,
            entries: self.entries.iter().map(|&x| f.pow(x, e)).collect(),
        }
    }

    pub fn transpose(&self) -> ProjMatrix {
        let k = self.k;
        let mut entries = self.entries.clone();
        for i in 0..k {
            for j in 0..k {
                entries[j * k + i] = self.entries[i * k + j];
            }
        }
        ProjMatrix {
            field: self.field.clone(),
            k,
            entries,
        }
        .normalized()
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.mul(self);
            k += 1;
        }
        k
    }
}

impl PartialEq for ProjMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.entries == other.entries
    }
}

impl Eq for ProjMatrix {}

impl Hash for ProjMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.entries.hash(state);
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMatrix{:?}", self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::of_order(q).unwrap())
    }

    fn m(f: &Arc<FieldSpec>, rows: &[&[i64]]) -> ProjMatrix {
        ProjMatrix::from_rows(
            f.clone(),
            rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn normalization_and_equality() {
        let f = field(7);
        let a = m(&f, &[&[2, 4], &[0, 6]]);
        let b = m(&f, &[&[1, 2], &[0, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.entry(0, 0), f.one());
        assert!(ProjMatrix::from_rows(f.clone(), vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]).is_err());
    }

    #[test]
    fn inverse_and_product() {
        let f = field(9);
        let a = m(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(a.mul(&a.inverse()).is_identity());
        let b = ProjMatrix::antidiagonal(f.clone(), 3);
        let p = ProjPoint::new(&f, vec![f.one(), f.from_int(2), f.zero()]).unwrap();
        assert_eq!(a.mul(&b).apply(&p), a.apply(&b.apply(&p)));
        assert_eq!(b.order(), 2);
    }

    #[test]
    fn determinant_of_triangular_is_product_of_diagonal() {
        let f = field(7);
        let a = m(&f, &[&[1, 0, 0], &[5, 3, 0], &[2, 6, 4]]);
        assert_eq!(a.det(), f.from_int(12));
    }
}
