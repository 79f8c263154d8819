use std::cmp::Reverse;
use std::collections::HashMap;

use super::perm::Permutation;

/// Fixed-size bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    words: Vec<u64>,
    len: usize,
}

impl IndexSet {
    pub fn new(capacity: usize) -> Self {
        IndexSet {
            words: vec![0; capacity.div_ceil(64)],
            len: 0,
        }
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.words[i as usize >> 6] >> (i & 63) & 1 == 1
    }

    /// Returns `true` when `i` was not present.
    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let word = &mut self.words[i as usize >> 6];
        let bit = 1u64 << (i & 63);
        if *word & bit != 0 {
            return false;
        }
        *word |= bit;
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros();
                rest &= rest - 1;
                Some((w as u32) * 64 + t)
            })
        })
    }
}

/// All elements of a group in canonical order: element order descending,
/// then image array ascending. The identity is therefore last.
#[derive(Debug, Clone)]
pub struct ElementTable {
    elements: Vec<Permutation>,
    orders: Vec<u32>,
    index: HashMap<Permutation, u32>,
}

impl ElementTable {
    pub fn new(mut elements: Vec<Permutation>) -> Self {
        let mut keyed: Vec<(u32, Permutation)> =
            elements.drain(..).map(|g| (g.order() as u32, g)).collect();
        keyed.sort_by(|a, b| (Reverse(a.0), &a.1).cmp(&(Reverse(b.0), &b.1)));
        let (orders, elements): (Vec<u32>, Vec<Permutation>) = keyed.into_iter().unzip();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        ElementTable {
            elements,
            orders,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order_of(&self, i: u32) -> u32 {
        self.orders[i as usize]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> u32 {
        self.len() as u32 - 1
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.get(a).mul(self.get(b))]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.index[&self.get(a).invert()]
    }

    #[inline]
    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.get(a).commutes_with(self.get(b))
    }

    /// The subgroup generated by `gens`, as an index set.
    pub fn closure(&self, gens: &[u32]) -> IndexSet {
        let mut set = IndexSet::new(self.len());
        let mut queue = vec![self.identity()];
        set.insert(self.identity());
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// A short generating set for the subgroup with the given elements:
    /// greedy in canonical order.
    pub fn generators_for(&self, members: &IndexSet) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut reached = IndexSet::new(self.len());
        reached.insert(self.identity());
        for x in members.iter() {
            if !reached.contains(x) {
                gens.push(x);
                reached = self.closure(&gens);
            }
        }
        gens
    }

    /// Conjugacy classes under the group generated by `gens`; each class is
    /// sorted and the classes are ordered by their least index.
    pub fn conjugacy_classes(&self, gens: &[Permutation]) -> Vec<Vec<u32>> {
        let inverses: Vec<Permutation> = gens.iter().map(|g| g.invert()).collect();
        let mut seen = IndexSet::new(self.len());
        let mut classes = Vec::new();
        for start in 0..self.len() as u32 {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut class = vec![start];
            let mut head = 0;
            while head < class.len() {
                let x = self.get(class[head]).clone();
                head += 1;
                for (g, gi) in gens.iter().zip(&inverses) {
                    let y = self.index[&gi.mul(&x).mul(g)];
                    if seen.insert(y) {
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}
