use super::{PermError, PermGroup, Permutation};
use crate::arith::lcm;

/// Default cap on the number of elements materialized by [`ElementTable`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 200_000;

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct TableLevel {
    base: u32,
    stride: usize,
    /// orbit position of each point, or `ABSENT`
    pos_of: Vec<u32>,
    reps_inv: Vec<Vec<u32>>,
}

/// Every element of a permutation group, indexed `0..order` with the
/// identity at index 0.
///
/// Element `i` is the product of one coset representative per chain level,
/// deepest level applied first; `i` is the mixed-radix number formed by the
/// orbit positions, level 0 most significant.
#[derive(Debug, Clone)]
pub struct ElementTable {
    degree: usize,
    len: usize,
    levels: Vec<TableLevel>,
    images: Vec<u16>,
    orders: Vec<u32>,
    generators: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self, PermError> {
        Self::with_bound(group, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(group: &PermGroup, bound: u64) -> Result<Self, PermError> {
        let order = group.order();
        if order > bound {
            return Err(PermError::EnumerationBound { order, bound });
        }
        let degree = group.degree();
        if degree > u16::MAX as usize {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let sizes = group.transversal_sizes();
        let k = sizes.len();
        let mut reps: Vec<Vec<Permutation>> = Vec::with_capacity(k);
        let mut levels = Vec::with_capacity(k);
        let mut stride = order as usize;
        for j in 0..k {
            stride /= sizes[j];
            let orbit = group.level_orbit(j);
            let mut pos_of = vec![ABSENT; degree];
            let level_reps: Vec<Permutation> = orbit.iter().map(|&y| group.rep(j, y)).collect();
            for (pos, &y) in orbit.iter().enumerate() {
                pos_of[y as usize] = pos as u32;
            }
            levels.push(TableLevel {
                base: orbit[0],
                stride,
                pos_of,
                reps_inv: level_reps.iter().map(|r| r.inverse().images().to_vec()).collect(),
            });
            reps.push(level_reps);
        }

        let len = order as usize;
        let mut images = Vec::with_capacity(len * degree);
        let mut orders = Vec::with_capacity(len);
        let mut buf = vec![0u32; degree];
        for idx in 0..len {
            buf.iter_mut().enumerate().for_each(|(i, x)| *x = i as u32);
            for j in (0..k).rev() {
                let pos = (idx / levels[j].stride) % sizes[j];
                let r = reps[j][pos].images();
                buf.iter_mut().for_each(|x| *x = r[*x as usize]);
            }
            images.extend(buf.iter().map(|&x| x as u16));
            orders.push(cycle_order(&buf));
        }

        let mut table = ElementTable {
            degree,
            len,
            levels,
            images,
            orders,
            generators: Vec::new(),
        };
        table.generators = group
            .generators()
            .iter()
            .map(|g| table.index_of(g).expect("generator is a member") as u32)
            .collect();
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self, i: usize) -> &[u16] {
        &self.images[i * self.degree..(i + 1) * self.degree]
    }

    pub fn element(&self, i: usize) -> Permutation {
        Permutation::from_images_unchecked(self.images(i).iter().map(|&x| x as u32).collect())
    }

    pub fn order_of(&self, i: usize) -> u64 {
        self.orders[i] as u64
    }

    /// Indices of the group's defining generators.
    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    pub fn num_fixed_points(&self, i: usize) -> usize {
        self.images(i)
            .iter()
            .enumerate()
            .filter(|(p, &x)| *p == x as usize)
            .count()
    }

    /// Whether all cycles of element `i` have the same length.
    pub fn generates_semiregular(&self, i: usize) -> bool {
        let ord = self.orders[i] as usize;
        let img = self.images(i);
        // equal cycle lengths iff every point has the full order as its cycle length
        (0..self.degree).all(|start| {
            let mut x = img[start] as usize;
            let mut len = 1;
            while x != start {
                x = img[x] as usize;
                len += 1;
            }
            len == ord
        })
    }

    /// Index of `g`, or `None` if `g` is not in the group.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.degree {
            return None;
        }
        let mut buf: Vec<u32> = g.images().to_vec();
        let mut idx = 0;
        for level in &self.levels {
            let b = buf[level.base as usize];
            let pos = level.pos_of[b as usize];
            if pos == ABSENT {
                return None;
            }
            idx += pos as usize * level.stride;
            let inv = &level.reps_inv[pos as usize];
            buf.iter_mut().for_each(|x| *x = inv[*x as usize]);
        }
        buf.iter()
            .enumerate()
            .all(|(i, &x)| i as u32 == x)
            .then_some(idx)
    }

    /// Index of a group member from the images of the base points, given
    /// as `base_image(j)` for the base point of level `j`.
    fn index_from_base_images(&self, base_image: impl Fn(usize) -> u32) -> usize {
        let mut positions = [0u32; 64];
        let mut idx = 0;
        for (j, level) in self.levels.iter().enumerate() {
            let mut x = base_image(j);
            for (m, prev) in self.levels[..j].iter().enumerate() {
                x = prev.reps_inv[positions[m] as usize][x as usize];
            }
            let pos = level.pos_of[x as usize];
            debug_assert_ne!(pos, ABSENT);
            positions[j] = pos;
            idx += pos as usize * level.stride;
        }
        idx
    }

    fn index_of_member(&self, img: &[u32]) -> usize {
        self.index_from_base_images(|j| img[self.levels[j].base as usize])
    }

    /// `i` followed by `j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let a = self.images(i);
        let b = self.images(j);
        self.index_from_base_images(|l| b[a[self.levels[l].base as usize] as usize] as u32)
    }

    pub fn inverse(&self, i: usize) -> usize {
        let a = self.images(i);
        let mut inv = vec![0u32; self.degree];
        for (p, &x) in a.iter().enumerate() {
            inv[x as usize] = p as u32;
        }
        self.index_of_member(&inv)
    }

    /// `j^-1 i j`.
    pub fn conjugate(&self, i: usize, j: usize) -> usize {
        let a = self.images(i);
        let h = self.images(j);
        let mut out = vec![0u32; self.degree];
        for (p, &x) in a.iter().enumerate() {
            out[h[p] as usize] = h[x as usize] as u32;
        }
        self.index_of_member(&out)
    }

    /// `i^k`.
    pub fn pow(&self, i: usize, k: u64) -> usize {
        let g = self.images(i);
        let k = k % self.orders[i] as u64;
        let img: Vec<u32> = self
            .levels
            .iter()
            .map(|l| (0..k).fold(l.base, |x, _| g[x as usize] as u32))
            .collect();
        self.index_from_base_images(|j| img[j])
    }

    /// All powers `g^0, g^1, …, g^(ord-1)` of element `i`, as indices.
    pub fn powers(&self, i: usize) -> Vec<usize> {
        let ord = self.orders[i] as usize;
        let g = self.images(i);
        let mut cur: Vec<u32> = self.levels.iter().map(|l| l.base).collect();
        let mut out = Vec::with_capacity(ord);
        out.push(0);
        for _ in 1..ord {
            cur.iter_mut().for_each(|x| *x = g[*x as usize] as u32);
            out.push(self.index_from_base_images(|j| cur[j]));
        }
        out
    }
}

fn cycle_order(img: &[u32]) -> u32 {
    let mut seen = vec![false; img.len()];
    let mut ord: u128 = 1;
    for start in 0..img.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u128;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = img[x] as usize;
            len += 1;
        }
        ord = lcm(ord, len);
    }
    ord as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn a5_on_6() -> PermGroup {
        // PSL(2,5) acting on the projective line: x+1, 4x, -1/x, with ∞ = 5
        let t = Permutation::from_images(vec![1, 2, 3, 4, 0, 5]).unwrap();
        let s = Permutation::from_images(vec![0, 4, 3, 2, 1, 5]).unwrap();
        let w = Permutation::from_images(vec![5, 4, 2, 3, 1, 0]).unwrap();
        PermGroup::new(6, vec![t, s, w]).unwrap()
    }

    #[test]
    fn enumerates_each_element_once() {
        let g = a5_on_6();
        assert_eq!(g.order(), 60);
        let t = ElementTable::new(&g).unwrap();
        assert_eq!(t.len(), 60);
        assert!(t.element(0).is_identity());
        let mut all: Vec<_> = (0..60).map(|i| t.element(i)).collect();
        for (i, e) in all.iter().enumerate() {
            assert_eq!(t.index_of(e), Some(i));
        }
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 60);
        let mut hist = BTreeMap::new();
        for i in 0..60 {
            *hist.entry(t.order_of(i)).or_insert(0) += 1;
        }
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 15), (3, 20), (5, 24)]);
    }

    #[test]
    fn table_arithmetic_matches_permutations() {
        let g = a5_on_6();
        let t = ElementTable::new(&g).unwrap();
        for i in 0..60 {
            let gi = t.element(i);
            assert_eq!(t.element(t.inverse(i)), gi.inverse());
            assert_eq!(t.element(t.pow(i, 7)), gi.pow(7));
            let pw = t.powers(i);
            assert_eq!(pw.len() as u64, gi.order());
            for j in (0..60).step_by(7) {
                let gj = t.element(j);
                assert_eq!(t.element(t.mul(i, j)), gi.compose(&gj));
                assert_eq!(t.element(t.conjugate(i, j)), gi.conjugate_by(&gj));
            }
        }
        let odd = Permutation::from_cycles(6, &[&[0, 1]]).unwrap();
        assert_eq!(t.index_of(&odd), None);
    }

    #[test]
    fn bound_is_enforced() {
        let g = a5_on_6();
        assert!(matches!(
            ElementTable::with_bound(&g, 59),
            Err(PermError::EnumerationBound { .. })
        ));
    }
}
