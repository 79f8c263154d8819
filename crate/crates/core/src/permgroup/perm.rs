use std::fmt;

use serde::{Serialize, Serializer};

use super::GroupError;

/// A bijection on `{0, .., degree - 1}` stored as its image array.
///
/// Products act on the right: `a.compose(&b)` maps `i` to `b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize).ok_or(GroupError::NotBijection)?;
            if *slot {
                return Err(GroupError::NotBijection);
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 0-indexed disjoint (or not) cycles; later cycles are
    /// applied after earlier ones.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut perm = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            let mut seen = std::collections::HashSet::new();
            for (k, &point) in cycle.iter().enumerate() {
                if point >= degree {
                    return Err(GroupError::PointOutOfRange { point, degree });
                }
                if !seen.insert(point) {
                    return Err(GroupError::NotBijection);
                }
                images[point] = cycle[(k + 1) % cycle.len()] as u32;
            }
            perm = perm.compose(&Permutation { images })?;
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked [`compose`](Self::compose); degrees must agree.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn invert(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `other^-1 self other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.invert().mul(self).mul(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| other.images[j as usize] == self.images[other.images[i] as usize])
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i as u32 != j)
            .map(|(i, _)| i)
    }

    /// Cycle notation with points shifted by `offset` (1 for file output).
    pub fn to_cycle_string(&self, offset: usize) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + offset).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string(0))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.to_cycle_string(0))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_cycle_string(0))
    }
}
