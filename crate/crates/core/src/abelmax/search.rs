//! Branch and bound for the largest abelian subgroup.
//!
//! Every nontrivial abelian subgroup contains an element of prime order, and
//! conjugating moves that element to its class representative. So the search
//! runs once per class of prime-order elements `r`, inside `C_G(r)`, starting
//! from `<r>`.
//!
//! Inside one such subtree a node is an abelian subgroup `A` together with
//! `C = C_G(A)`. Children adjoin `y` from `C \ A` with `y` above the previous
//! choice in canonical order, and a child is kept only when `y` is the least
//! new element of `<A, y>`; this gives each abelian subgroup a single path.
//! Any abelian `B` reached below `A` lies in `C`, has order a multiple of
//! `|A|` dividing `|C|`, and (on its path) consists of `A` plus candidates
//! past the last choice, which gives the bound.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::permgroup::{ElementTable, IndexSet, PermGroup};

/// Largest `d` with `a | d`, `d | c`, and `d <= a + extra`.
pub(crate) fn order_bound(a: usize, extra: usize, c: usize) -> usize {
    let mut k = (a + extra) / a;
    while k > 1 {
        if c.is_multiple_of(a * k) {
            return a * k;
        }
        k -= 1;
    }
    a
}

/// Elements of one centralizer `C_G(r)` with dense local indices.
/// Local order follows global canonical order.
struct LocalGroup<'t> {
    table: &'t ElementTable,
    members: Vec<u32>,
    local: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl<'t> LocalGroup<'t> {
    fn new(table: &'t ElementTable, members: Vec<u32>) -> Self {
        let mut local = vec![ABSENT; table.len()];
        for (i, &g) in members.iter().enumerate() {
            local[g as usize] = i as u32;
        }
        LocalGroup {
            table,
            members,
            local,
        }
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn global(&self, i: u32) -> u32 {
        self.members[i as usize]
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let g = self.table.mul(self.global(a), self.global(b));
        let l = self.local[g as usize];
        debug_assert_ne!(l, ABSENT, "centralizer is closed");
        l
    }

    fn commute(&self, a: u32, b: u32) -> bool {
        self.table.commute(self.global(a), self.global(b))
    }
}

struct Node {
    elements: Vec<u32>,
    set: IndexSet,
    gens: Vec<u32>,
    centralizer: Vec<u32>,
    last: Option<u32>,
}

#[derive(Debug, Clone)]
pub(crate) struct SubtreeBest {
    pub order: usize,
    pub gens: Vec<u32>,
}

struct Subtree<'a, 't> {
    group: &'a LocalGroup<'t>,
    best: &'a AtomicU64,
    nodes: u64,
    found: Option<SubtreeBest>,
}

impl Subtree<'_, '_> {
    fn best(&self) -> usize {
        self.best.load(Ordering::Relaxed) as usize
    }

    fn visit(&mut self, node: Node) {
        self.nodes += 1;
        let a = node.elements.len();
        if a > self.best() {
            self.best.fetch_max(a as u64, Ordering::Relaxed);
            if self.found.as_ref().is_none_or(|f| f.order < a) {
                self.found = Some(SubtreeBest {
                    order: a,
                    gens: node.gens.iter().map(|&g| self.group.global(g)).collect(),
                });
            }
        }
        let candidates: Vec<u32> = node
            .centralizer
            .iter()
            .copied()
            .filter(|&c| node.last.is_none_or(|l| c > l) && !node.set.contains(c))
            .collect();
        let c_len = node.centralizer.len();
        for (k, &y) in candidates.iter().enumerate() {
            if order_bound(a, candidates.len() - k, c_len) <= self.best() {
                break;
            }
            let Some((elements, set)) = self.extend(&node, y) else {
                continue;
            };
            let centralizer: Vec<u32> = node
                .centralizer
                .iter()
                .copied()
                .filter(|&c| self.group.commute(c, y))
                .collect();
            let mut gens = node.gens.clone();
            gens.push(y);
            self.visit(Node {
                elements,
                set,
                gens,
                centralizer,
                last: Some(y),
            });
        }
    }

    /// `<A, y>` as the cosets `y^j A`, or `None` when some new element
    /// precedes `y` (that subgroup is reached from a smaller choice).
    fn extend(&self, node: &Node, y: u32) -> Option<(Vec<u32>, IndexSet)> {
        let mut elements = node.elements.clone();
        let mut set = node.set.clone();
        let mut power = y;
        while !node.set.contains(power) {
            for &a in &node.elements {
                let z = self.group.mul(power, a);
                if z < y {
                    return None;
                }
                set.insert(z);
                elements.push(z);
            }
            power = self.group.mul(power, y);
        }
        Some((elements, set))
    }
}

pub(crate) struct SearchOutcome {
    pub best: Option<SubtreeBest>,
    pub nodes: u64,
}

/// Runs the per-class subtrees. `seed` is a lower bound already witnessed.
pub(crate) fn run(
    group: &PermGroup,
    table: &ElementTable,
    seed: usize,
    workers: usize,
) -> SearchOutcome {
    let classes = group
        .conjugacy_classes()
        .expect("table exists, so classes do");
    let mut roots: Vec<(u32, Vec<u32>)> = classes
        .iter()
        .map(|class| class[0])
        .filter(|&r| crate::numtheory::is_prime(table.order_of(r) as u64))
        .map(|r| {
            let cent: Vec<u32> = (0..table.len() as u32)
                .filter(|&g| table.commute(g, r))
                .collect();
            (r, cent)
        })
        .collect();
    // large centralizers first: they tend to raise the bound early
    roots.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));

    let best = AtomicU64::new(seed as u64);
    let solve = |(r, cent): &(u32, Vec<u32>)| -> (Option<SubtreeBest>, u64) {
        if cent.len() <= best.load(Ordering::Relaxed) as usize {
            return (None, 0);
        }
        let local = LocalGroup::new(table, cent.clone());
        let r_local = local.local[*r as usize];
        let identity = local.local[table.identity() as usize];
        let mut elements = vec![identity];
        let mut set = IndexSet::new(local.len());
        set.insert(identity);
        let mut power = r_local;
        while power != identity {
            set.insert(power);
            elements.push(power);
            power = local.mul(power, r_local);
        }
        let mut subtree = Subtree {
            group: &local,
            best: &best,
            nodes: 0,
            found: None,
        };
        subtree.visit(Node {
            elements,
            set,
            gens: vec![r_local],
            centralizer: (0..local.len() as u32).collect(),
            last: None,
        });
        (subtree.found, subtree.nodes)
    };

    let results: Vec<(Option<SubtreeBest>, u64)> = if workers <= 1 {
        roots.iter().map(solve).collect()
    } else {
        let collected = Mutex::new(vec![None; roots.len()]);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            roots.par_iter().enumerate().for_each(|(i, root)| {
                let out = solve(root);
                collected.lock().expect("no poisoned workers")[i] = Some(out);
            })
        });
        collected
            .into_inner()
            .expect("no poisoned workers")
            .into_iter()
            .map(|r| r.expect("every root solved"))
            .collect()
    };

    let mut outcome = SearchOutcome {
        best: None,
        nodes: 0,
    };
    for (found, nodes) in results {
        outcome.nodes += nodes;
        if let Some(f) = found {
            if outcome.best.as_ref().is_none_or(|b| b.order < f.order) {
                outcome.best = Some(f);
            }
        }
    }
    outcome
}
