use std::sync::Arc;

use super::{poly, FieldElement, FieldError, FieldSpec};

/// Canonical embedding GF(p^r) -> GF(p^(rt)): the class of `x` in the small
/// field is sent to the smallest-encoded root of its defining polynomial in
/// the large field.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    small: Arc<FieldSpec>,
    large: Arc<FieldSpec>,
    images: Vec<FieldElement>,
}

impl SubfieldEmbedding {
    pub fn new(small: Arc<FieldSpec>, large: Arc<FieldSpec>) -> Result<Self, FieldError> {
        let err = FieldError::NotASubfield {
            small: small.order() as u32,
            large: large.order() as u32,
        };
        if small.characteristic() != large.characteristic() || large.degree() % small.degree() != 0 {
            return Err(err);
        }
        let eval = |theta: FieldElement, c: &[u32]| {
            c.iter().rev().fold(large.zero(), |acc, &ci| {
                large.add(large.mul(acc, theta), large.from_int(ci as i64))
            })
        };
        let theta = large
            .elements()
            .find(|&t| eval(t, small.modulus()).is_zero())
            .ok_or(err)?;
        let r = small.degree() as usize;
        let p = small.characteristic() as u32;
        let images = small
            .elements()
            .map(|x| eval(theta, &poly::digits(x.value(), p, r)))
            .collect();
        Ok(SubfieldEmbedding {
            small,
            large,
            images,
        })
    }

    pub fn small(&self) -> &Arc<FieldSpec> {
        &self.small
    }

    pub fn large(&self) -> &Arc<FieldSpec> {
        &self.large
    }

    pub fn embed(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.field_order() as u64 != self.small.order() {
            return Err(FieldError::MixedFields {
                left: self.small.order() as u32,
                right: x.field_order(),
            });
        }
        Ok(self.images[x.value() as usize])
    }

    /// Inverse image of an element lying in the embedded subfield.
    pub fn restrict(&self, y: FieldElement) -> Option<FieldElement> {
        self.images
            .iter()
            .position(|&v| v == y)
            .map(|i| self.small.element(i as u64).unwrap())
    }
}

fn check_quadratic(ext: &FieldSpec, n: u64) -> Result<(), FieldError> {
    if n.checked_mul(n) != Some(ext.order()) {
        return Err(FieldError::NotQuadratic {
            q: ext.order() as u32,
            n,
        });
    }
    Ok(())
}

/// `{m in GF(n^2) : m^n + m = 0}`, in encoding order.
pub fn trace_zero_set(ext: &FieldSpec, n: u64) -> Result<Vec<FieldElement>, FieldError> {
    check_quadratic(ext, n)?;
    Ok(ext
        .elements()
        .filter(|&m| ext.add(ext.pow(m, n), m).is_zero())
        .collect())
}

/// First element `c` of GF(n^2), in encoding order, with `c^n + c + 1 = 0`.
pub fn unital_constant(ext: &FieldSpec, n: u64) -> Result<FieldElement, FieldError> {
    check_quadratic(ext, n)?;
    ext.elements()
        .find(|&c| ext.add(ext.add(ext.pow(c, n), c), ext.one()).is_zero())
        .ok_or(FieldError::NoUnitalConstant(ext.order() as u32))
}
