use super::{PermError, Permutation, ProductReplacement};

const UNREACHED: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// One level of a stabilizer chain: the base point, the strong generators
/// fixing all earlier base points, and a Schreier vector for the orbit.
#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// `label[x]` is the pool index of the generator `g` with `x = g(parent)`.
    label: Vec<u32>,
}

/// A permutation group given by generators, with a base and strong
/// generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    pool: Vec<Permutation>,
    pool_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

/// Random elements sifted after the target order is reached.
const CONFIRMATION_SIFTS: usize = 20;

impl PermGroup {
    /// Deterministic Schreier–Sims. Base points are chosen as the smallest
    /// point moved by the element that forces a new level.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        let mut g = Self::init(degree, generators)?;
        g.complete_deterministic();
        Ok(g)
    }

    /// Randomized Schreier–Sims for a group whose order is known in advance.
    /// Random elements are sifted until the chain order reaches `order`;
    /// since the chain order can never exceed the true order, reaching it
    /// proves the chain complete.
    pub fn with_known_order(
        degree: usize,
        generators: Vec<Permutation>,
        order: u64,
        seed: u64,
    ) -> Result<Self, PermError> {
        let mut g = Self::init(degree, generators)?;
        let mut pr = ProductReplacement::new(degree, g.generators.clone(), seed);
        let mut attempts = 0u32;
        while g.order() < order {
            attempts += 1;
            if attempts > 10_000 {
                return Err(PermError::RandomChainStalled {
                    reached: g.order(),
                    expected: order,
                });
            }
            let x = pr.next_element();
            let (h, l) = g.sift(x, 0);
            if !h.is_identity() {
                g.add_strong_generator(h, 0, l);
            }
        }
        // a strictly larger group would show up as a residue here
        for _ in 0..CONFIRMATION_SIFTS {
            let (h, l) = g.sift(pr.next_element(), 0);
            if !h.is_identity() {
                g.add_strong_generator(h, 0, l);
            }
        }
        if g.order() != order {
            return Err(PermError::OrderMismatch {
                computed: g.order(),
                expected: order,
            });
        }
        Ok(g)
    }

    fn init(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut grp = PermGroup {
            degree,
            generators,
            pool: Vec::new(),
            pool_inv: Vec::new(),
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = grp
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in gens {
            let fixes_base = grp.levels.iter().all(|l| g.image(l.base) == l.base);
            if fixes_base {
                let b = g.first_moved().expect("nonidentity");
                grp.push_level(b);
            }
            grp.pool_inv.push(g.inverse());
            grp.pool.push(g);
        }
        for j in 0..grp.levels.len() {
            let bases: Vec<u32> = grp.levels[..j].iter().map(|l| l.base).collect();
            grp.levels[j].gens = (0..grp.pool.len())
                .filter(|&i| bases.iter().all(|&b| grp.pool[i].image(b) == b))
                .collect();
            grp.rebuild_orbit(j);
        }
        Ok(grp)
    }

    fn push_level(&mut self, base: u32) {
        let mut label = vec![UNREACHED; self.degree];
        label[base as usize] = ROOT;
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            label,
        });
    }

    fn rebuild_orbit(&mut self, j: usize) {
        let level = &mut self.levels[j];
        level.label.iter_mut().for_each(|x| *x = UNREACHED);
        level.label[level.base as usize] = ROOT;
        level.orbit.clear();
        level.orbit.push(level.base);
        let mut k = 0;
        while k < level.orbit.len() {
            let x = level.orbit[k];
            for &gi in &level.gens {
                let y = self.pool[gi].image(x);
                if level.label[y as usize] == UNREACHED {
                    level.label[y as usize] = gi as u32;
                    level.orbit.push(y);
                }
            }
            k += 1;
        }
    }

    /// Adds `h` (fixing the base points before level `from`) as a strong
    /// generator for levels `from..=to`, opening a new level if needed.
    fn add_strong_generator(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h.first_moved().expect("nonidentity residue");
            self.push_level(b);
        }
        let idx = self.pool.len();
        self.pool_inv.push(h.inverse());
        self.pool.push(h);
        for j in from..=to {
            self.levels[j].gens.push(idx);
            self.rebuild_orbit(j);
        }
    }

    fn complete_deterministic(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let orbit = self.levels[iu].orbit.clone();
            let gens = self.levels[iu].gens.clone();
            for &y in &orbit {
                let uy = self.rep(iu, y);
                for &s in &gens {
                    let mut g = uy.compose(&self.pool[s]);
                    let z = self.pool[s].image(y);
                    self.strip_rep(iu, &mut g, z);
                    if g.is_identity() {
                        continue;
                    }
                    let (h, l) = self.sift(g, iu + 1);
                    if !h.is_identity() {
                        self.add_strong_generator(h, iu + 1, l);
                        i = l as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Replaces `g` by `g u^-1` where `u` is the coset representative at
    /// level `j` sending the base point to `y`.
    fn strip_rep(&self, j: usize, g: &mut Permutation, y: u32) {
        let level = &self.levels[j];
        let mut x = y;
        while x != level.base {
            let gi = level.label[x as usize] as usize;
            let inv = &self.pool_inv[gi];
            g.then_assign(inv);
            x = inv.image(x);
        }
    }

    /// Coset representative at level `j` sending the base point to `y`.
    pub(crate) fn rep(&self, j: usize, y: u32) -> Permutation {
        let mut inv = Permutation::identity(self.degree);
        self.strip_rep(j, &mut inv, y);
        inv.inverse()
    }

    /// Sifts `g` through the chain from level `start`. Returns the residue and
    /// the level at which sifting stopped (`levels.len()` if it went through).
    pub fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for j in start..self.levels.len() {
            let b = g.image(self.levels[j].base);
            if self.levels[j].label[b as usize] == UNREACHED {
                return (g, j);
            }
            self.strip_rep(j, &mut g, b);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.pool
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn level_orbit(&self, j: usize) -> &[u32] {
        &self.levels[j].orbit
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    /// Orbit of `point` under the whole group, in discovery order.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_under(self.degree, &self.generators, point)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Transitive, and the stabilizer of the first base point is transitive
    /// on the remaining points.
    pub fn is_two_transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree <= 2 {
            return self.order() as usize >= self.degree;
        }
        let b0 = self.levels[0].base;
        let stab: Vec<Permutation> = match self.levels.get(1) {
            Some(l) => l.gens.iter().map(|&i| self.pool[i].clone()).collect(),
            None => Vec::new(),
        };
        let other = if b0 == 0 { 1 } else { 0 };
        orbit_under(self.degree, &stab, other).len() == self.degree - 1
    }

    /// Order of the stabilizer of `point`, as |G| / |orbit|.
    pub fn stabilizer_order(&self, point: u32) -> u64 {
        self.order() / self.orbit(point).len() as u64
    }
}

pub(crate) fn orbit_under(degree: usize, gens: &[Permutation], point: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut k = 0;
    while k < orbit.len() {
        let x = orbit[k];
        for g in gens {
            let y = g.image(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        k += 1;
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sym(n: usize) -> Vec<Permutation> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![
            Permutation::from_cycles(n, &[&cyc]).unwrap(),
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
        ]
    }

    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7 {
            let g = PermGroup::new(n, sym(n)).unwrap();
            assert_eq!(g.order(), (1..=n as u64).product::<u64>());
            assert!(g.is_two_transitive());
        }
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::new(5, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(5)));
        assert!(!g.contains(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn order_matches_closure_and_membership() {
        // a transitive group of degree 8 generated by two odd-looking elements
        let a = Permutation::from_cycles(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]).unwrap();
        let b = Permutation::from_cycles(8, &[&[0, 4], &[1, 7], &[2, 6], &[3, 5]]).unwrap();
        let c = Permutation::from_cycles(8, &[&[1, 3], &[5, 7]]).unwrap();
        let gens = vec![a, b, c];
        let g = PermGroup::new(8, gens.clone()).unwrap();
        let all = closure(8, &gens);
        assert_eq!(g.order() as usize, all.len());
        for x in &all {
            assert!(g.contains(x));
        }
        let s8 = closure(8, &sym(8)[..]);
        let outside = s8.iter().filter(|x| !all.contains(*x)).count();
        let rejected = s8.iter().filter(|x| !g.contains(x)).count();
        assert_eq!(outside, rejected);
    }

    #[test]
    fn randomized_chain_reaches_known_order() {
        let g = PermGroup::with_known_order(6, sym(6), 720, 5).unwrap();
        assert_eq!(g.order(), 720);
        assert!(PermGroup::with_known_order(6, sym(6), 1440, 5).is_err());
    }

    #[test]
    fn non_two_transitive_detected() {
        let cyc = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let g = PermGroup::new(5, vec![cyc]).unwrap();
        assert!(g.is_transitive());
        assert!(!g.is_two_transitive());
        assert_eq!(g.stabilizer_order(0), 1);
    }
}
