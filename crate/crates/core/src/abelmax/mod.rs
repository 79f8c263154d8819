//! `m(G)`, the largest order of an abelian subgroup, and the p-group bounds
//! relating `|P|` to its abelian normal subgroups.

mod brute;
mod search;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::numtheory::prime_power_base;
use crate::permgroup::{GroupError, IndexSet, PermGroup, Permutation};

/// Groups above this order are refused by [`max_abelian_brute`].
pub const DEFAULT_BRUTE_CAP: u64 = 2000;

/// Generators of an abelian subgroup together with its order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianWitness {
    pub generators: Vec<Permutation>,
    pub order: u64,
    pub normal_in_parent: bool,
}

impl AbelianWitness {
    fn new(parent: &PermGroup, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let sub = if generators.is_empty() {
            PermGroup::trivial(parent.degree())
        } else {
            PermGroup::new(generators.clone())?
        };
        Ok(AbelianWitness {
            order: sub.order_u64().expect("subgroup of a capped group"),
            normal_in_parent: parent.is_normal(&sub),
            generators,
        })
    }

    /// Generators commute pairwise, lie in `parent`, and generate a
    /// subgroup of exactly `order` elements.
    pub fn verify(&self, parent: &PermGroup) -> bool {
        let commute = self
            .generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)));
        let inside = self.generators.iter().all(|g| parent.contains(g));
        let order = if self.generators.is_empty() {
            1
        } else {
            match PermGroup::new(self.generators.clone()) {
                Ok(sub) => sub.order_u64().unwrap_or(0),
                Err(_) => return false,
            }
        };
        commute && inside && order == self.order
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxAbelianResult {
    pub m: u64,
    pub witness: AbelianWitness,
    pub nodes_explored: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads for the per-class subtrees; 1 runs inline.
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1 }
    }
}

/// Exact `m(G)` by the pruned search. Needs the element table, so `|G|` must
/// be within the group's enumeration cap.
pub fn max_abelian_order(group: &PermGroup) -> Result<MaxAbelianResult, GroupError> {
    max_abelian_order_with(group, SearchOptions::default())
}

pub fn max_abelian_order_with(
    group: &PermGroup,
    options: SearchOptions,
) -> Result<MaxAbelianResult, GroupError> {
    let start = Instant::now();
    let table = group.elements()?;
    let finish = |gens: Vec<Permutation>, nodes: u64| -> Result<MaxAbelianResult, GroupError> {
        let witness = AbelianWitness::new(group, gens)?;
        Ok(MaxAbelianResult {
            m: witness.order,
            witness,
            nodes_explored: nodes,
            wall_time: start.elapsed(),
        })
    };
    if group.is_trivial() {
        return finish(Vec::new(), 1);
    }
    if group.is_abelian() {
        return finish(group.generators().to_vec(), 1);
    }
    // canonical order puts a largest-order element first
    let seed = table.order_of(0) as usize;
    let outcome = search::run(group, table, seed, options.workers.max(1));
    let gens = match outcome.best {
        Some(found) if found.order > seed => found.gens,
        _ => vec![0],
    };
    finish(
        gens.into_iter().map(|i| table.get(i).clone()).collect(),
        outcome.nodes,
    )
}

/// Exhaustive `m(G)` for `|G| <= DEFAULT_BRUTE_CAP`.
pub fn max_abelian_brute(group: &PermGroup) -> Result<MaxAbelianResult, GroupError> {
    max_abelian_brute_with_cap(group, DEFAULT_BRUTE_CAP)
}

pub fn max_abelian_brute_with_cap(
    group: &PermGroup,
    cap: u64,
) -> Result<MaxAbelianResult, GroupError> {
    let start = Instant::now();
    group.check_cap("brute-force", cap)?;
    let table = group.elements()?;
    let outcome = brute::run(group);
    let gens = outcome.gens.iter().map(|&i| table.get(i).clone()).collect();
    let witness = AbelianWitness::new(group, gens)?;
    debug_assert_eq!(witness.order as usize, outcome.order);
    Ok(MaxAbelianResult {
        m: witness.order,
        witness,
        nodes_explored: outcome.nodes,
        wall_time: start.elapsed(),
    })
}

fn p_group_prime(group: &PermGroup) -> Result<(u64, u32), GroupError> {
    let order = group
        .order_u64()
        .ok_or_else(|| GroupError::NotPGroup(group.order().to_string()))?;
    prime_power_base(order).ok_or_else(|| GroupError::NotPGroup(order.to_string()))
}

/// An abelian normal subgroup of largest order in the p-group `group`.
/// The result contains the center.
pub fn max_abelian_normal_in_pgroup(group: &PermGroup) -> Result<AbelianWitness, GroupError> {
    p_group_prime(group)?;
    let table = group.elements()?;
    let center: IndexSet = group.center()?.members().expect("from table").clone();
    let abelian = |set: &IndexSet| {
        let gens = table.generators_for(set);
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| table.commute(a, b)))
    };

    let mut best = center.clone();
    let mut visited = std::collections::HashSet::new();
    visited.insert(center.clone());
    let mut stack = vec![center];
    while let Some(a) = stack.pop() {
        if a.len() > best.len() {
            best = a.clone();
        }
        let a_gens = table.generators_for(&a);
        let cent: Vec<u32> = (0..table.len() as u32)
            .filter(|&x| a_gens.iter().all(|&g| table.commute(g, x)))
            .collect();
        if cent.len() <= best.len() {
            continue;
        }
        for &x in &cent {
            if a.contains(x) {
                continue;
            }
            let mut seeds = a_gens.clone();
            seeds.push(x);
            let n = group.normal_closure_set(&seeds)?;
            if abelian(&n) && visited.insert(n.clone()) {
                stack.push(n);
            }
        }
    }
    let gens = table
        .generators_for(&best)
        .into_iter()
        .map(|i| table.get(i).clone())
        .collect();
    AbelianWitness::new(group, gens)
}

/// `k`, `s`, `c` for a p-group of order `p^k` with largest abelian normal
/// subgroup `p^s` and center `p^c`, and the two bounds they must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub p: u64,
    pub k: u32,
    pub s: u32,
    pub c: u32,
    pub v: u32,
    /// `k <= s(s+1)/2`
    pub bound_holds: bool,
    /// `k - v <= (v - c)(v + c - 1)/2`
    pub center_bound_holds: bool,
    pub self_centralizing: bool,
}

fn log_p(n: u64, p: u64) -> u32 {
    let (mut n, mut e) = (n, 0);
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        e += 1;
    }
    e
}

pub fn lemma_check(group: &PermGroup) -> Result<LemmaReport, GroupError> {
    let (p, k) = p_group_prime(group)?;
    let witness = max_abelian_normal_in_pgroup(group)?;
    let center_order = group.center()?.order();
    let s = log_p(witness.order, p);
    let c = log_p(center_order, p);
    let v = s;
    let a = PermGroup::new(witness.generators.clone())?;
    let self_centralizing = group.centralizer(a.generators())?.order() == witness.order;
    let lhs = k as i64 - v as i64;
    let rhs2 = (v as i64 - c as i64) * (v as i64 + c as i64 - 1);
    Ok(LemmaReport {
        p,
        k,
        s,
        c,
        v,
        bound_holds: 2 * k <= s * (s + 1),
        center_bound_holds: 2 * lhs <= rhs2,
        self_centralizing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_named, GroupSpec};

    fn named(s: &str) -> PermGroup {
        build_named(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn trivial_and_abelian_shortcuts() {
        let t = named("sym:1");
        let r = max_abelian_order(&t).unwrap();
        assert_eq!(r.m, 1);
        assert!(r.witness.verify(&t));
        let c = named("cyclic:12");
        assert_eq!(max_abelian_order(&c).unwrap().m, 12);
        assert_eq!(max_abelian_brute(&c).unwrap().m, 12);
    }

    #[test]
    fn brute_cap_enforced() {
        let g = named("alt:7");
        assert!(matches!(
            max_abelian_brute(&g),
            Err(GroupError::Capacity { cap: 2000, .. })
        ));
    }

    #[test]
    fn pgroup_required() {
        assert!(matches!(
            max_abelian_normal_in_pgroup(&named("sym:3")),
            Err(GroupError::NotPGroup(_))
        ));
        assert!(lemma_check(&named("sym:1")).is_err());
    }

    #[test]
    fn d8_lemma_equality() {
        let d8 = named("dihedral:4");
        let r = lemma_check(&d8).unwrap();
        assert_eq!((r.p, r.k, r.s, r.c), (2, 3, 2, 1));
        assert!(r.bound_holds && r.center_bound_holds && r.self_centralizing);
    }
}
