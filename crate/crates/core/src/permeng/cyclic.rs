use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ElementTable, Permutation};
use crate::arith::{divisors, gcd, prime_divisors};

/// A cyclic subgroup `⟨g⟩` with its fixed-point data.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicClass {
    /// Smallest element index among the generators of the subgroup.
    pub index: usize,
    #[serde(skip)]
    pub representative: Permutation,
    pub order: u64,
    /// No nontrivial element of the subgroup fixes a point.
    pub semiregular: bool,
    /// For each proper divisor `d` of the order, the number of points fixed
    /// by `g^d`.
    pub fixed_point_profile: BTreeMap<u64, usize>,
}

impl CyclicClass {
    pub fn from_element(index: usize, g: Permutation) -> Self {
        let order = g.order();
        let fixed_point_profile: BTreeMap<u64, usize> = divisors(order as u128)
            .into_iter()
            .map(|d| d as u64)
            .filter(|&d| d < order)
            .map(|d| (d, g.pow(d).num_fixed_points()))
            .collect();
        let semiregular = fixed_point_profile.values().all(|&c| c == 0);
        CyclicClass {
            index,
            representative: g,
            order,
            semiregular,
            fixed_point_profile,
        }
    }
}

/// All cyclic subgroups of an enumerated group.
#[derive(Debug, Clone)]
pub struct CyclicSubgroups {
    /// For each element, the id of the cyclic subgroup it generates.
    pub generated_by: Vec<u32>,
    /// Per id: element indices `g^0, …, g^(k-1)` for the smallest-index generator `g`.
    pub subgroups: Vec<Vec<u32>>,
    /// Per id: not properly contained in another cyclic subgroup.
    pub maximal: Vec<bool>,
}

impl CyclicSubgroups {
    pub fn new(table: &ElementTable) -> Self {
        let n = table.len();
        let mut generated_by = vec![u32::MAX; n];
        let mut subgroups: Vec<Vec<u32>> = Vec::new();
        for i in 0..n {
            if generated_by[i] != u32::MAX {
                continue;
            }
            let id = subgroups.len() as u32;
            let pw = table.powers(i);
            let ord = pw.len() as u128;
            for (k, &e) in pw.iter().enumerate() {
                if gcd(k as u128, ord) == 1 || ord == 1 {
                    generated_by[e] = id;
                }
            }
            subgroups.push(pw.into_iter().map(|e| e as u32).collect());
        }
        let mut maximal = vec![true; subgroups.len()];
        for sub in &subgroups {
            let ord = sub.len() as u128;
            for rho in prime_divisors(ord) {
                let below = sub[rho as usize % sub.len()] as usize;
                maximal[generated_by[below] as usize] = false;
            }
        }
        CyclicSubgroups {
            generated_by,
            subgroups,
            maximal,
        }
    }

    /// Generator index of subgroup `id`.
    pub fn generator(&self, id: usize) -> usize {
        self.subgroups[id][self.subgroups[id].len().min(2) - 1] as usize
    }

    /// Ids of the maximal cyclic subgroups, excluding the trivial subgroup.
    pub fn maximal_ids(&self) -> Vec<usize> {
        (0..self.subgroups.len())
            .filter(|&id| self.maximal[id] && self.subgroups[id].len() > 1)
            .collect()
    }
}

/// Cyclic subgroups that are maximal under inclusion, ordered by the index of
/// their smallest generator. The trivial group has none.
pub fn maximal_cyclic_subgroups(table: &ElementTable) -> Vec<CyclicClass> {
    let cs = CyclicSubgroups::new(table);
    cs.maximal_ids()
        .into_iter()
        .map(|id| {
            let g = cs.generator(id);
            CyclicClass::from_element(g, table.element(g))
        })
        .collect()
}

/// Orders of the nontrivial cyclic subgroups in which no nontrivial element
/// fixes a point.
pub fn semiregular_cyclic_orders(table: &ElementTable) -> BTreeSet<u64> {
    (1..table.len())
        .filter(|&i| table.generates_semiregular(i))
        .map(|i| table.order_of(i))
        .collect()
}

/// The same set restricted to the cyclic subgroups generated by `samples`.
/// Only a subset of the exact answer.
pub fn semiregular_cyclic_orders_sampled<'a>(
    samples: impl IntoIterator<Item = &'a Permutation>,
) -> BTreeSet<u64> {
    samples
        .into_iter()
        .filter(|g| !g.is_identity() && g.generates_semiregular())
        .map(|g| g.order())
        .collect()
}
