//! Deterministic Schreier-Sims.
//!
//! The base is the points `0, 1, 2, ..` in order (trailing levels with
//! trivial orbits are dropped), so the chain for a fixed generator list is
//! fixed.

use super::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[b]` maps `base` to `b`, for `b` in the basic orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            base,
            gens,
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let image = s.apply(b);
                if self.transversal[image].is_none() {
                    let ub = self.transversal[b].as_ref().expect("orbit point");
                    self.transversal[image] = Some(ub.mul(s));
                    self.orbit.push(image);
                }
            }
        }
    }
}

/// Base and strong generating set with basic transversals.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let base: Vec<usize> = if gens.is_empty() {
            Vec::new()
        } else {
            (0..degree.saturating_sub(1)).collect()
        };
        for (i, &b) in base.iter().enumerate() {
            let level_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(b, degree, level_gens));
        }
        chain.complete();
        while chain.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            chain.levels.pop();
        }
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let level = i - 1;
            let orbit = self.levels[level].orbit.clone();
            let gens = self.levels[level].gens.clone();
            for &b in &orbit {
                for s in &gens {
                    let lvl = &self.levels[level];
                    let ub = lvl.transversal[b].as_ref().expect("orbit point");
                    let ubs = ub.mul(s);
                    let target = lvl.transversal[s.apply(b)].as_ref().expect("orbit closed");
                    if &ubs == target {
                        continue;
                    }
                    let schreier = ubs.mul(&target.invert());
                    let (residue, reached) = self.strip(schreier, level + 1);
                    if reached == self.levels.len() && residue.is_identity() {
                        continue;
                    }
                    if reached == self.levels.len() {
                        let point = residue.smallest_moved_point().expect("non-identity");
                        self.levels.push(Level::new(point, self.degree, Vec::new()));
                    }
                    for l in level + 1..=reached {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = reached + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` from level `start` down. Returns the residue and the first
    /// level where sifting failed (`levels.len()` if it passed through).
    fn strip(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base);
            match &level.transversal[beta] {
                Some(u) => g = g.mul(&u.invert()),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, reached) = self.strip(g.clone(), 0);
        reached == self.levels.len() && residue.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.orbit.len() as u64).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Every element exactly once, as products of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        // g = v_{k-1} ... v_1 v_0 with v_i from level i
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for g in &acc {
                for &b in &level.orbit {
                    let u = level.transversal[b].as_ref().expect("orbit point");
                    next.push(g.mul(u));
                }
            }
            acc = next;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let owned: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &owned).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=9usize {
            let full: Vec<usize> = (0..n).collect();
            let gens = [cyc(n, &[&[0, 1]]), cyc(n, &[&full])];
            let chain = StabChain::new(n, &gens);
            let order: u64 = chain.orbit_lengths().iter().product();
            assert_eq!(order, (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn base_is_deterministic_and_ascending() {
        let gens = [cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])];
        let chain = StabChain::new(6, &gens);
        assert_eq!(chain.base(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn membership_and_enumeration() {
        // A4 on 4 points
        let gens = [cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])];
        let chain = StabChain::new(4, &gens);
        assert!(chain.contains(&cyc(4, &[&[0, 1], &[2, 3]])));
        assert!(!chain.contains(&cyc(4, &[&[0, 1]])));
        let elems = chain.elements();
        assert_eq!(elems.len(), 12);
        let unique: std::collections::HashSet<_> = elems.iter().collect();
        assert_eq!(unique.len(), 12);
        assert!(elems.iter().all(|g| chain.contains(g)));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::new(3, &[Permutation::identity(3)]);
        assert!(chain.orbit_lengths().is_empty());
        assert_eq!(chain.elements().len(), 1);
    }
}
