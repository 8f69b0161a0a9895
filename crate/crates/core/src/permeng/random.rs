use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;

const SLOTS: usize = 10;
const BURN_IN: usize = 50;

/// Product-replacement random walk with 10 slots and an accumulator.
/// Deterministic given the generators and the seed.
#[derive(Debug, Clone)]
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(degree: usize, generators: Vec<Permutation>, seed: u64) -> Self {
        let gens: Vec<Permutation> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let slots = if gens.is_empty() {
            vec![Permutation::identity(degree); SLOTS]
        } else {
            (0..SLOTS).map(|i| gens[i % gens.len()].clone()).collect()
        };
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..BURN_IN {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let i = self.rng.random_range(0..SLOTS);
        let mut j = self.rng.random_range(0..SLOTS - 1);
        if j >= i {
            j += 1;
        }
        let right = if self.rng.random_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        if self.rng.random_bool(0.5) {
            self.slots[i].then_assign(&right);
        } else {
            self.slots[i] = right.compose(&self.slots[i]);
        }
        self.acc.then_assign(&self.slots[i]);
    }

    pub fn next_element(&mut self) -> Permutation {
        self.step();
        self.acc.clone()
    }
}

impl Iterator for ProductReplacement {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        Some(self.next_element())
    }
}
