//! Exhaustive oracle: walks every abelian subgroup by adjoining one
//! commuting element at a time, with a Cayley table and a visited set. No
//! conjugacy reduction, no bounds.

use std::collections::HashSet;

use crate::permgroup::{IndexSet, PermGroup};

pub(crate) struct BruteOutcome {
    pub order: usize,
    pub gens: Vec<u32>,
    pub nodes: u64,
}

pub(crate) fn run(group: &PermGroup) -> BruteOutcome {
    let table = group.elements().expect("caller checked caps");
    let n = table.len();
    let mut cayley = vec![0u32; n * n];
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            cayley[a as usize * n + b as usize] = table.mul(a, b);
        }
    }
    let mul = |a: u32, b: u32| cayley[a as usize * n + b as usize];
    let commute = |a: u32, b: u32| mul(a, b) == mul(b, a);
    let identity = table.identity();
    let closure = |gens: &[u32]| {
        let mut set = IndexSet::new(n);
        set.insert(identity);
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    };

    let trivial = closure(&[]);
    let mut visited: HashSet<IndexSet> = HashSet::new();
    visited.insert(trivial.clone());
    let mut stack: Vec<(IndexSet, Vec<u32>)> = vec![(trivial, Vec::new())];
    let mut best = BruteOutcome {
        order: 1,
        gens: Vec::new(),
        nodes: 0,
    };
    while let Some((set, gens)) = stack.pop() {
        best.nodes += 1;
        if set.len() > best.order {
            best.order = set.len();
            best.gens = gens.clone();
        }
        for x in 0..n as u32 {
            if set.contains(x) || !gens.iter().all(|&g| commute(g, x)) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let next = closure(&next_gens);
            if visited.insert(next.clone()) {
                stack.push((next, next_gens));
            }
        }
    }
    best
}
