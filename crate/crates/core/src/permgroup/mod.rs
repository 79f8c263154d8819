//! Permutation groups: stabilizer chains, element tables, and the subgroup
//! constructions the rest of the crate needs (centralizers, normal
//! closures, minimal normal subgroups, Sylow subgroups).

mod chain;
mod elements;
mod perm;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::numtheory::FactoredInteger;

pub use chain::StabChain;
pub use elements::{ElementTable, IndexSet};
pub use perm::Permutation;

/// Default cap on enumerating a group's elements.
pub const DEFAULT_ENUM_CAP: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("image array is not a permutation")]
    NotBijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("empty generator list; use PermGroup::trivial for the trivial group")]
    EmptyGenerators,
    #[error("{what} cap {cap} exceeded by group of order {order}")]
    Capacity {
        what: &'static str,
        cap: u64,
        order: String,
    },
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("group of order {0} is not a nontrivial p-group")]
    NotPGroup(String),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeNotDividing { p: u64, order: String },
}

/// A permutation group given by generators. Immutable once built; the
/// element table and conjugacy classes are computed lazily on first use.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: FactoredInteger,
    enum_cap: u64,
    elements: OnceLock<ElementTable>,
    classes: OnceLock<Vec<Vec<u32>>>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::EmptyGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        let chain = StabChain::new(degree, &generators);
        let order = chain
            .orbit_lengths()
            .into_iter()
            .map(|len| FactoredInteger::from_u64(len).expect("orbits are nonempty"))
            .fold(FactoredInteger::one(), |acc, f| acc.mul(&f));
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
            enum_cap: DEFAULT_ENUM_CAP,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(vec![Permutation::identity(degree)]).expect("one generator")
    }

    pub fn with_enum_cap(mut self, cap: u64) -> Self {
        self.enum_cap = cap;
        self.elements = OnceLock::new();
        self.classes = OnceLock::new();
        self
    }

    pub fn enum_cap(&self) -> u64 {
        self.enum_cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &FactoredInteger {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    fn capacity_error(&self, what: &'static str, cap: u64) -> GroupError {
        GroupError::Capacity {
            what,
            cap,
            order: self.order.to_string(),
        }
    }

    /// Fails with a capacity error unless `|G| <= cap`.
    pub fn check_cap(&self, what: &'static str, cap: u64) -> Result<u64, GroupError> {
        match self.order_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(self.capacity_error(what, cap)),
        }
    }

    pub fn elements(&self) -> Result<&ElementTable, GroupError> {
        self.check_cap("element-enumeration", self.enum_cap)?;
        Ok(self
            .elements
            .get_or_init(|| ElementTable::new(self.chain.elements())))
    }

    pub fn conjugacy_classes(&self) -> Result<&[Vec<u32>], GroupError> {
        let table = self.elements()?;
        Ok(self
            .classes
            .get_or_init(|| table.conjugacy_classes(&self.generators)))
    }

    fn index_all(&self, set: &[Permutation]) -> Result<Vec<u32>, GroupError> {
        let table = self.elements()?;
        set.iter()
            .map(|g| {
                table
                    .index_of(g)
                    .ok_or_else(|| GroupError::NotMember(g.to_string()))
            })
            .collect()
    }

    /// Wraps an index set of this group's elements as a subgroup.
    pub fn subgroup_from_members(&self, members: IndexSet) -> Result<Subgroup<'_>, GroupError> {
        let table = self.elements()?;
        let gens: Vec<Permutation> = table
            .generators_for(&members)
            .into_iter()
            .map(|i| table.get(i).clone())
            .collect();
        let group = if gens.is_empty() {
            PermGroup::trivial(self.degree)
        } else {
            PermGroup::new(gens)?
        }
        .with_enum_cap(self.enum_cap);
        Ok(Subgroup {
            parent: self,
            group,
            members: Some(members),
        })
    }

    /// `{ g in G : gs = sg for all s in set }`.
    pub fn centralizer(&self, set: &[Permutation]) -> Result<Subgroup<'_>, GroupError> {
        let idx = self.index_all(set)?;
        let table = self.elements()?;
        let mut members = IndexSet::new(table.len());
        for g in 0..table.len() as u32 {
            if idx.iter().all(|&s| table.commute(g, s)) {
                members.insert(g);
            }
        }
        self.subgroup_from_members(members)
    }

    pub fn center(&self) -> Result<Subgroup<'_>, GroupError> {
        let gens = self.generators.clone();
        self.centralizer(&gens)
    }

    /// Whether `h` (assumed to lie in this group) is normalized by every
    /// generator.
    pub fn is_normal(&self, h: &PermGroup) -> bool {
        self.generators.iter().all(|g| {
            h.generators()
                .iter()
                .all(|s| h.contains(&s.conjugate_by(g)))
        })
    }

    /// Members of the normal closure of the given element indices.
    pub fn normal_closure_set(&self, seeds: &[u32]) -> Result<IndexSet, GroupError> {
        let table = self.elements()?;
        let conj: Vec<(Permutation, Permutation)> = self
            .generators
            .iter()
            .map(|g| (g.invert(), g.clone()))
            .collect();
        let mut gens: Vec<u32> = seeds.to_vec();
        let mut members = table.closure(&gens);
        loop {
            let mut grew = false;
            let mut k = 0;
            while k < gens.len() {
                let s = table.get(gens[k]).clone();
                for (gi, g) in &conj {
                    let c = table
                        .index_of(&gi.mul(&s).mul(g))
                        .expect("conjugate lies in the group");
                    if !members.contains(c) {
                        gens.push(c);
                        members = table.closure(&gens);
                        grew = true;
                    }
                }
                k += 1;
            }
            if !grew {
                return Ok(members);
            }
        }
    }

    /// The smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<Subgroup<'_>, GroupError> {
        let idx = self.index_all(set)?;
        let members = self.normal_closure_set(&idx)?;
        self.subgroup_from_members(members)
    }

    /// All minimal normal subgroups, ordered by size then by least element.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<Subgroup<'_>>, GroupError> {
        let table = self.elements()?;
        let identity = table.identity();
        let mut closures: Vec<IndexSet> = Vec::new();
        for class in self.conjugacy_classes()? {
            if class[0] == identity {
                continue;
            }
            let n = self.normal_closure_set(&class[..1])?;
            if !closures.contains(&n) {
                closures.push(n);
            }
        }
        let mut minimal: Vec<IndexSet> = closures
            .iter()
            .filter(|n| !closures.iter().any(|m| m.len() < n.len() && m.is_subset(n)))
            .cloned()
            .collect();
        minimal.sort_by_key(|n| (n.len(), n.iter().next()));
        minimal
            .into_iter()
            .map(|n| self.subgroup_from_members(n))
            .collect()
    }

    /// True iff `|G| > 1` and every nontrivial normal closure is `G`.
    pub fn is_simple(&self) -> Result<bool, GroupError> {
        if self.is_trivial() {
            return Ok(false);
        }
        let table = self.elements()?;
        let identity = table.identity();
        for class in self.conjugacy_classes()? {
            if class[0] == identity {
                continue;
            }
            if self.normal_closure_set(&class[..1])?.len() != table.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A Sylow `p`-subgroup, grown inside successive normalizers from the
    /// first `p`-element in canonical order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup<'_>, GroupError> {
        let target = self
            .order
            .p_part(p)
            .to_u64()
            .expect("fits: order is capped");
        if target == 1 || !crate::numtheory::is_prime(p) {
            return Err(GroupError::PrimeNotDividing {
                p,
                order: self.order.to_string(),
            });
        }
        let table = self.elements()?;
        let is_p_power = |n: u32| {
            let mut n = n as u64;
            while n.is_multiple_of(p) {
                n /= p;
            }
            n == 1
        };
        let first = (0..table.len() as u32)
            .find(|&i| table.order_of(i) > 1 && is_p_power(table.order_of(i)))
            .expect("Cauchy: a p-element exists");
        let mut gens = vec![first];
        let mut members = table.closure(&gens);
        while (members.len() as u64) < target {
            let gen_perms: Vec<Permutation> = gens.iter().map(|&s| table.get(s).clone()).collect();
            let next = (0..table.len() as u32).find(|&y| {
                if members.contains(y) {
                    return false;
                }
                let g = table.get(y);
                let yp = table.index_of(&g.pow(p)).expect("closed");
                members.contains(yp)
                    && gen_perms.iter().all(|s| {
                        let c = table.index_of(&s.conjugate_by(g)).expect("closed");
                        members.contains(c)
                    })
            });
            let y = next.expect("p divides |N(P):P| while P is not Sylow");
            gens.push(y);
            members = table.closure(&gens);
        }
        self.subgroup_from_members(members)
    }

    /// Order, abelianness, and the multiset of element orders.
    pub fn fingerprint(&self) -> Result<Fingerprint, GroupError> {
        let table = self.elements()?;
        let mut element_orders = BTreeMap::new();
        for i in 0..table.len() as u32 {
            *element_orders.entry(table.order_of(i)).or_insert(0u64) += 1;
        }
        Ok(Fingerprint {
            order: table.len() as u64,
            abelian: self.is_abelian(),
            element_orders,
        })
    }

    /// Largest element order.
    pub fn exponent_max_order(&self) -> Result<u32, GroupError> {
        let table = self.elements()?;
        Ok(table.order_of(0))
    }
}

/// Isomorphism-invariant summary used in place of full isomorphism tests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: u64,
    pub abelian: bool,
    pub element_orders: BTreeMap<u32, u64>,
}

/// A subgroup of a [`PermGroup`], with its own stabilizer chain and (when
/// produced from the element table) its member set.
#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    parent: &'g PermGroup,
    group: PermGroup,
    members: Option<IndexSet>,
}

impl<'g> Subgroup<'g> {
    /// Every generator must lie in `parent`.
    pub fn from_generators(
        parent: &'g PermGroup,
        generators: Vec<Permutation>,
    ) -> Result<Self, GroupError> {
        if let Some(bad) = generators.iter().find(|g| !parent.contains(g)) {
            return Err(GroupError::NotMember(bad.to_string()));
        }
        let group = if generators.is_empty() {
            PermGroup::trivial(parent.degree())
        } else {
            PermGroup::new(generators)?
        }
        .with_enum_cap(parent.enum_cap());
        Ok(Subgroup {
            parent,
            group,
            members: None,
        })
    }

    pub fn parent(&self) -> &'g PermGroup {
        self.parent
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn order(&self) -> u64 {
        self.group.order_u64().expect("subgroup of a capped group")
    }

    pub fn members(&self) -> Option<&IndexSet> {
        self.members.as_ref()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.is_normal(&self.group)
    }
}
