use std::time::Instant;

use abelmax_core::abelmax::{
    lemma_check, max_abelian_brute, max_abelian_normal_in_pgroup, max_abelian_order,
    max_abelian_order_with, SearchOptions,
};
use abelmax_core::catalog::{build_named, GroupSpec};
use abelmax_core::permgroup::{PermGroup, Permutation};
use proptest::prelude::*;

fn named(s: &str) -> PermGroup {
    build_named(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

fn quaternion() -> PermGroup {
    let i = Permutation::from_cycles(8, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
    let j = Permutation::from_cycles(8, &[vec![0, 4, 2, 6], vec![1, 7, 3, 5]]).unwrap();
    PermGroup::new(vec![i, j]).unwrap()
}

#[test]
fn known_values() {
    for (spec, m) in [
        ("sym:3", 3),
        ("sym:4", 4),
        ("sym:5", 6),
        ("sym:6", 9),
        ("alt:4", 4),
        ("alt:5", 5),
        ("alt:6", 9),
        ("alt:7", 12),
        ("alt:8", 16),
        ("dihedral:4", 4),
        ("cyclic:12", 12),
        ("psl2:7", 7),
        ("pgl2:7", 8),
        ("agl3_2", 16),
        ("frobenius:5:4", 5),
        ("agammal1:3", 8),
    ] {
        let g = named(spec);
        let r = max_abelian_order(&g).unwrap();
        assert_eq!(r.m, m, "{spec}");
        assert!(r.witness.verify(&g), "{spec}");
    }
    let q8 = quaternion();
    assert_eq!(q8.order_u64(), Some(8));
    assert_eq!(max_abelian_order(&q8).unwrap().m, 4);
}

#[test]
fn search_agrees_with_brute_force_on_catalog() {
    for spec in [
        "sym:3",
        "sym:4",
        "sym:5",
        "alt:4",
        "alt:5",
        "dihedral:6",
        "dihedral:8",
        "psl2:7",
        "frobenius:7:6",
        "agammal1:2",
        "agl1:3",
        "pgl2:5",
    ] {
        let g = named(spec);
        let fast = max_abelian_order(&g).unwrap();
        let slow = max_abelian_brute(&g).unwrap();
        assert_eq!(fast.m, slow.m, "{spec}");
        assert!(slow.witness.verify(&g), "{spec}");
    }
}

#[test]
fn parallel_matches_sequential() {
    for spec in ["sym:6", "alt:7", "pgl2:11", "agl3_2"] {
        let g = named(spec);
        let one = max_abelian_order_with(&g, SearchOptions { workers: 1 }).unwrap();
        let four = max_abelian_order_with(&g, SearchOptions { workers: 4 }).unwrap();
        assert_eq!(one.m, four.m, "{spec}");
        let again = max_abelian_order_with(&g, SearchOptions { workers: 1 }).unwrap();
        assert_eq!(one.witness, again.witness, "{spec}");
    }
}

#[test]
fn mathieu_groups() {
    let start = Instant::now();
    let m11 = named("file:groups/m11.gens");
    assert_eq!(max_abelian_order(&m11).unwrap().m, 11);
    let m12 = named("file:groups/m12.gens");
    assert_eq!(max_abelian_order(&m12).unwrap().m, 16);
    eprintln!("mathieu searches took {:?}", start.elapsed());
}

#[test]
fn abelian_normal_subgroups_of_pgroups() {
    let d8 = named("dihedral:4");
    let w = max_abelian_normal_in_pgroup(&d8).unwrap();
    assert_eq!(w.order, 4);
    assert!(w.normal_in_parent && w.verify(&d8));

    let s8 = named("sym:8");
    let p = s8.sylow_subgroup(2).unwrap().into_group();
    assert_eq!(p.order_u64(), Some(128));
    let r = lemma_check(&p).unwrap();
    assert_eq!(r.k, 7);
    assert!(r.s >= 4);
    assert!(r.bound_holds && r.center_bound_holds && r.self_centralizing);

    let q = lemma_check(&quaternion()).unwrap();
    assert_eq!((q.k, q.s, q.c), (3, 2, 1));
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_subgroups_match_brute_force(
        a in perm_strategy(6),
        b in perm_strategy(6),
    ) {
        let g = PermGroup::new(vec![a, b]).unwrap();
        let fast = max_abelian_order(&g).unwrap();
        let slow = max_abelian_brute(&g).unwrap();
        prop_assert_eq!(fast.m, slow.m);
        prop_assert!(fast.witness.verify(&g));
        // m(G) divides |G|
        prop_assert_eq!(g.order_u64().unwrap() % fast.m, 0);
    }
}
