use std::sync::Arc;

use super::ProjPoint;
use crate::ffield::{FieldElement, FieldSpec};

/// PG(d, q) with a bijection between its points and `0..num_points()`.
///
/// Points whose leading 1 sits at coordinate `i` occupy a contiguous block,
/// ordered by the remaining coordinates read as base-q digits.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    field: Arc<FieldSpec>,
    dim: usize,
    offsets: Vec<usize>,
}

impl ProjectiveSpace {
    pub fn new(field: Arc<FieldSpec>, dim: usize) -> Self {
        let q = field.order() as usize;
        let mut offsets = Vec::with_capacity(dim + 2);
        let mut acc = 0usize;
        for i in 0..=dim {
            offsets.push(acc);
            acc += q.pow((dim - i) as u32);
        }
        offsets.push(acc);
        ProjectiveSpace {
            field,
            dim,
            offsets,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn num_points(&self) -> usize {
        self.offsets[self.dim + 1]
    }

    pub fn rank_of(&self, p: &ProjPoint) -> usize {
        let q = self.field.order() as usize;
        let c = p.coords();
        let lead = c.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let tail = c[lead + 1..]
            .iter()
            .fold(0usize, |acc, x| acc * q + x.value() as usize);
        self.offsets[lead] + tail
    }

    pub fn unrank(&self, idx: usize) -> ProjPoint {
        let q = self.field.order() as usize;
        let lead = (0..=self.dim)
            .rev()
            .find(|&i| self.offsets[i] <= idx)
            .unwrap();
        let mut tail = idx - self.offsets[lead];
        let mut coords = vec![self.field.zero(); self.dim + 1];
        coords[lead] = self.field.one();
        for j in (lead + 1..=self.dim).rev() {
            coords[j] = self.field.element((tail % q) as u64).unwrap();
            tail /= q;
        }
        ProjPoint::from_normalized(coords)
    }

    /// Calls `f` once per line with its `q + 1` points. Lines are enumerated
    /// as 2-dimensional subspaces in reduced row echelon form.
    pub fn for_each_line<F: FnMut(&[ProjPoint])>(&self, mut f: F) {
        let field = &*self.field;
        let q = field.order();
        let m = self.dim + 1;
        let mut buf: Vec<ProjPoint> = Vec::with_capacity(q as usize + 1);
        for c1 in 0..m {
            for c2 in c1 + 1..m {
                // free positions: row 1 at columns > c1 except c2, row 2 at columns > c2
                let free1: Vec<usize> = (c1 + 1..m).filter(|&j| j != c2).collect();
                let free2: Vec<usize> = (c2 + 1..m).collect();
                let total = q.pow((free1.len() + free2.len()) as u32);
                for code in 0..total {
                    let mut r1 = vec![field.zero(); m];
                    let mut r2 = vec![field.zero(); m];
                    r1[c1] = field.one();
                    r2[c2] = field.one();
                    let mut k = code;
                    for &j in &free1 {
                        r1[j] = field.element(k % q).unwrap();
                        k /= q;
                    }
                    for &j in &free2 {
                        r2[j] = field.element(k % q).unwrap();
                        k /= q;
                    }
                    buf.clear();
                    buf.push(ProjPoint::from_normalized(r2.clone()));
                    for t in field.elements() {
                        let v = r1
                            .iter()
                            .zip(&r2)
                            .map(|(&a, &b)| field.add(a, field.mul(t, b)))
                            .collect();
                        buf.push(ProjPoint::from_normalized(v));
                    }
                    f(&buf);
                }
            }
        }
    }
}

/// Rank of a list of vectors by Gaussian elimination.
pub fn rank(field: &FieldSpec, rows: &[&[FieldElement]]) -> usize {
    let mut m: Vec<Vec<FieldElement>> = rows.iter().map(|r| r.to_vec()).collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = field.inv(m[rank][col]).unwrap();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = field.mul(m[i][col], inv);
                for j in col..cols {
                    let t = field.mul(factor, m[rank][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
