use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{CyclicSubgroups, ElementTable, PermError};
use crate::arith::{divisors, gcd};

/// Largest group order accepted by [`MulTable`].
pub const SUBGROUP_LATTICE_BOUND: usize = 660;

/// Full multiplication table of a small enumerated group.
#[derive(Debug, Clone)]
pub struct MulTable {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
    cyclic_generators: Vec<u32>,
}

impl MulTable {
    pub fn new(elements: &ElementTable) -> Result<Self, PermError> {
        let n = elements.len();
        if n > SUBGROUP_LATTICE_BOUND {
            return Err(PermError::EnumerationBound {
                order: n as u64,
                bound: SUBGROUP_LATTICE_BOUND as u64,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(elements.mul(i, j) as u16);
            }
        }
        let inv = (0..n).map(|i| elements.inverse(i) as u16).collect();
        let orders = (0..n).map(|i| elements.order_of(i) as u32).collect();
        let cs = CyclicSubgroups::new(elements);
        let cyclic_generators = (0..cs.subgroups.len())
            .map(|id| cs.generator(id) as u32)
            .collect();
        Ok(MulTable {
            n,
            table,
            inv,
            orders,
            cyclic_generators,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize] as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize] as u32
    }

    pub fn order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut bits = vec![0u64; self.n.div_ceil(64)];
        let mut elements = vec![0u32];
        bits[0] |= 1;
        let mut k = 0;
        while k < elements.len() {
            let x = elements[k];
            for &g in gens {
                let y = self.mul(x, g);
                let (w, b) = (y as usize / 64, y % 64);
                if bits[w] >> b & 1 == 0 {
                    bits[w] |= 1 << b;
                    elements.push(y);
                }
            }
            k += 1;
        }
        elements.sort_unstable();
        let mut gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        Subgroup {
            elements,
            gens,
            bits,
        }
    }
}

/// A subgroup as a sorted element-index set with a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u32>,
    gens: Vec<u32>,
    bits: Vec<u64>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits[x as usize / 64] >> (x % 64) & 1 == 1
    }
}

/// Every subgroup of a group of order at most 660: start from the cyclic
/// subgroups and join with cyclic subgroups until nothing new appears.
/// Sorted by order, then by element set.
pub fn all_subgroups(mt: &MulTable) -> Vec<Subgroup> {
    let cyclic: Vec<Subgroup> = mt.cyclic_generators.iter().map(|&g| mt.closure(&[g])).collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    for c in &cyclic {
        if seen.insert(c.bits.clone()) {
            subs.push(c.clone());
        }
    }
    let mut k = 0;
    while k < subs.len() {
        for &c in &mt.cyclic_generators {
            if subs[k].contains(c) {
                continue;
            }
            let mut gens = subs[k].gens.clone();
            gens.push(c);
            let joined = mt.closure(&gens);
            if seen.insert(joined.bits.clone()) {
                subs.push(joined);
            }
        }
        k += 1;
    }
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    subs
}

/// The nine subgroup types of PSL(2, p^r), in the order they are tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DicksonType {
    /// (1) elementary abelian p-group of order p^m, m ≤ r
    ElementaryAbelian { m: u32 },
    /// (2) cyclic of order z, z | (q±1)/2 (odd p) or z | q±1 (p = 2)
    Cyclic { z: u64 },
    /// (3) dihedral of order 2z, z as in (2)
    Dihedral { z: u64 },
    /// (4) elementary abelian p^m extended by a cyclic t, t | p^gcd(m,r) - 1
    Semidirect { m: u32, t: u64 },
    /// (5)
    A4,
    /// (6)
    S4,
    /// (7)
    A5,
    /// (8) PSL(2, p^m), m | r
    Psl { m: u32 },
    /// (9) PGL(2, p^m), 2m | r
    Pgl { m: u32 },
    Unknown,
}

impl DicksonType {
    pub fn number(&self) -> Option<u8> {
        Some(match self {
            DicksonType::ElementaryAbelian { .. } => 1,
            DicksonType::Cyclic { .. } => 2,
            DicksonType::Dihedral { .. } => 3,
            DicksonType::Semidirect { .. } => 4,
            DicksonType::A4 => 5,
            DicksonType::S4 => 6,
            DicksonType::A5 => 7,
            DicksonType::Psl { .. } => 8,
            DicksonType::Pgl { .. } => 9,
            DicksonType::Unknown => return None,
        })
    }
}

fn order_histogram(mt: &MulTable, sub: &Subgroup) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &x in &sub.elements {
        *h.entry(mt.order(x)).or_insert(0) += 1;
    }
    h
}

fn is_abelian(mt: &MulTable, sub: &Subgroup) -> bool {
    sub.gens
        .iter()
        .all(|&a| sub.gens.iter().all(|&b| mt.mul(a, b) == mt.mul(b, a)))
}

fn histogram_is(h: &BTreeMap<u32, usize>, expected: &[(u32, usize)]) -> bool {
    h.len() == expected.len() && expected.iter().all(|(k, v)| h.get(k) == Some(v))
}

/// `p^e` if `n` is a power of `p`.
fn log_p(n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    let mut x = n;
    while x % p == 0 && x > 1 {
        x /= p;
        e += 1;
    }
    (x == 1).then_some(e)
}

fn cyclic_condition(z: u64, p: u64, r: u32) -> bool {
    let q = p.pow(r);
    if p == 2 {
        (q - 1) % z == 0 || (q + 1) % z == 0
    } else {
        ((q - 1) / 2) % z == 0 || ((q + 1) / 2) % z == 0
    }
}

/// No proper nontrivial normal subgroup: the normal closure of every
/// nontrivial element is the whole subgroup.
fn is_simple(mt: &MulTable, sub: &Subgroup) -> bool {
    let mut done = vec![false; mt.len()];
    for &x in &sub.elements {
        if x == 0 || done[x as usize] {
            continue;
        }
        let mut class = vec![x];
        done[x as usize] = true;
        let mut k = 0;
        while k < class.len() {
            for &g in &sub.gens {
                let y = mt.conj(class[k], g);
                if !done[y as usize] {
                    done[y as usize] = true;
                    class.push(y);
                }
            }
            k += 1;
        }
        if mt.closure(&class).order() != sub.order() {
            return false;
        }
    }
    true
}

/// Classifies a subgroup of PSL(2, p^r) into the first matching type.
pub fn dickson_classify(mt: &MulTable, sub: &Subgroup, p: u64, r: u32) -> DicksonType {
    let n = sub.order() as u64;
    let hist = order_histogram(mt, sub);
    let abelian = is_abelian(mt, sub);
    let q = p.pow(r);

    // (1)
    if let Some(m) = log_p(n, p) {
        if m <= r && abelian && hist.keys().all(|&o| o == 1 || o as u64 == p) {
            return DicksonType::ElementaryAbelian { m };
        }
    }
    // (2)
    if hist.contains_key(&(n as u32)) && cyclic_condition(n, p, r) {
        return DicksonType::Cyclic { z: n };
    }
    // (3)
    if n % 2 == 0 && n >= 4 {
        let z = n / 2;
        if cyclic_condition(z, p, r) {
            let dihedral = sub.elements.iter().any(|&c| {
                if mt.order(c) as u64 != z {
                    return false;
                }
                let c_sub = mt.closure(&[c]);
                sub.elements
                    .iter()
                    .all(|&x| c_sub.contains(x) || mt.order(x) == 2)
            });
            if dihedral {
                return DicksonType::Dihedral { z };
            }
        }
    }
    // (4)
    let p_elems: Vec<u32> = sub
        .elements
        .iter()
        .copied()
        .filter(|&x| log_p(mt.order(x) as u64, p).is_some())
        .collect();
    if let Some(m) = log_p(p_elems.len() as u64, p) {
        let t = n / p_elems.len() as u64;
        if m >= 1 && t > 1 && n % p_elems.len() as u64 == 0 && gcd(t as u128, p as u128) == 1 {
            let psub = mt.closure(&p_elems);
            let exp_p = p_elems.iter().all(|&x| x == 0 || mt.order(x) as u64 == p);
            let has_t = hist.contains_key(&(t as u32));
            let bound = p.pow(gcd(m as u128, r as u128) as u32) - 1;
            if psub.order() == p_elems.len()
                && exp_p
                && is_abelian(mt, &psub)
                && has_t
                && bound % t == 0
            {
                return DicksonType::Semidirect { m, t };
            }
        }
    }
    let a4 = [(1, 1), (2, 3), (3, 8)];
    let s4 = [(1, 1), (2, 9), (3, 8), (4, 6)];
    let a5 = [(1, 1), (2, 15), (3, 20), (5, 24)];
    let s3 = [(1, 1), (2, 3), (3, 2)];
    // (5)
    if n == 12 && histogram_is(&hist, &a4) && (p != 2 || r % 2 == 0) {
        return DicksonType::A4;
    }
    // (6)
    if n == 24 && histogram_is(&hist, &s4) && (q as u128 * q as u128 - 1) % 16 == 0 {
        return DicksonType::S4;
    }
    // (7)
    if n == 60 && histogram_is(&hist, &a5) && (q as u128 * (q as u128 * q as u128 - 1)) % 5 == 0 {
        return DicksonType::A5;
    }
    // (8)
    for m in divisors(r as u128).into_iter().map(|m| m as u32) {
        let qm = p.pow(m);
        let order = qm * (qm * qm - 1) / if p == 2 { 1 } else { 2 };
        if order != n {
            continue;
        }
        let ok = match qm {
            2 => histogram_is(&hist, &s3),
            3 => histogram_is(&hist, &a4),
            _ => !abelian && is_simple(mt, sub),
        };
        if ok {
            return DicksonType::Psl { m };
        }
    }
    // (9)
    for m in divisors(r as u128).into_iter().map(|m| m as u32) {
        if r % (2 * m) != 0 {
            continue;
        }
        let qm = p.pow(m);
        if qm * (qm * qm - 1) != n {
            continue;
        }
        let ok = match qm {
            2 => histogram_is(&hist, &s3),
            3 => histogram_is(&hist, &s4),
            _ => {
                // index-2 subgroup generated by squares, itself simple
                let squares: Vec<u32> = sub.elements.iter().map(|&x| mt.mul(x, x)).collect();
                let sq = mt.closure(&squares);
                sq.order() as u64 * 2 == n && is_simple(mt, &sq)
            }
        };
        if ok {
            return DicksonType::Pgl { m };
        }
    }
    DicksonType::Unknown
}
