mod common;

use std::collections::HashSet;

use common::{blocks_through_one, closure, control_group, corpus, group, perm, X, Y};
use proptest::prelude::*;
use symgen::group::Primitivity;
use symgen::{Permutation, PermutationGroup};

#[test]
fn chain_order_matches_closure() {
    for (name, g) in corpus() {
        if g.order() > 20_000 {
            continue;
        }
        let elements = closure(&g);
        assert_eq!(g.order(), elements.len() as u128, "{name}");
        let fixing = elements.iter().filter(|p| p.image(1) == 1).count();
        assert_eq!(g.stabilizer(1).unwrap().order(), fixing as u128, "{name}");
    }
}

#[test]
fn known_orders() {
    let expected = [
        ("A5", 60u128),
        ("S5", 120),
        ("L3(2) on 7", 168),
        ("AGL(1,8)", 56),
        ("A7", 2520),
        ("S7", 5040),
        ("M11", 7920),
        ("2^5:A5", 1920),
    ];
    let groups = corpus();
    for (name, order) in expected {
        let g = &groups.iter().find(|(n, _)| *n == name).unwrap().1;
        assert_eq!(g.order(), order, "{name}");
    }
}

#[test]
fn membership_matches_closure() {
    let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
    for (name, g) in corpus() {
        if g.degree() != 4 {
            continue;
        }
        let elements = closure(&g);
        for p in closure(&s4) {
            assert_eq!(g.contains(&p), elements.contains(&p), "{name} {p}");
        }
    }
    let a7 = group(7, &["(1,2,3)", "(1,2,3,4,5,6,7)"]);
    assert!(a7.contains(&perm(7, "(1,2)(3,4)")));
    assert!(!a7.contains(&perm(7, "(1,2)")));
}

#[test]
fn primitivity_matches_block_search() {
    for (name, g) in corpus() {
        if g.degree() > 12 || !g.is_transitive() || g.degree() < 2 {
            continue;
        }
        let blocks = blocks_through_one(&g);
        match g.is_primitive().unwrap() {
            Primitivity::Primitive => assert!(blocks.is_empty(), "{name}: missed {blocks:?}"),
            Primitivity::Imprimitive { block } => {
                let mut block = block.clone();
                block.sort_unstable();
                assert!(blocks.contains(&block), "{name}: {block:?} is not a block");
            }
        }
    }
}

#[test]
fn normal_closure_is_normal_and_contains_seeds() {
    for (name, g) in corpus() {
        for seed in g.generators() {
            let c = g.normal_closure(std::slice::from_ref(seed)).unwrap();
            assert!(c.contains(seed), "{name}");
            assert!(c.is_subgroup_of(&g), "{name}");
            assert!(c.is_normalized_by(g.generators()), "{name}");
            assert_eq!(g.order() % c.order(), 0, "{name}");
        }
    }
}

#[test]
fn coset_action_degree_is_the_index() {
    for (name, g) in corpus() {
        if !g.is_transitive() || g.degree() > 12 {
            continue;
        }
        let stab = g.stabilizer(1).unwrap();
        let action = g.coset_action(stab.generators()).unwrap();
        assert_eq!(action.degree() as u128, g.order() / stab.order(), "{name}");
        assert_eq!(action.group.order(), g.order(), "{name}");
    }
}

#[test]
fn control_group_structure() {
    let n = control_group();
    assert_eq!(n.order(), 1920);
    assert!(n.is_transitive());
    let stab = n.stabilizer(1).unwrap();
    assert_eq!(stab.order(), 60);
    let mut sizes: Vec<usize> = stab.orbits().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 5, 5, 20]);

    let x = perm(32, X);
    let y = perm(32, Y);
    let x5 = n.normal_closure(&[x.pow(5)]).unwrap();
    assert_eq!(x5.order(), 2);
    let h = n.normal_closure(&[y.pow(3)]).unwrap();
    assert_eq!(h.order(), 32);
}

#[test]
fn control_coset_action_is_the_natural_action() {
    let n = control_group();
    let stab = n.stabilizer(1).unwrap();
    let action = n.coset_action(stab.generators()).unwrap();
    assert_eq!(action.degree(), 32);
    // coset i is N_1 r_i; r_i sends letter 1 somewhere, and that relabeling
    // must carry the coset action to the natural one
    let label: Vec<usize> = action.representatives.iter().map(|r| r.image(1)).collect();
    let distinct: HashSet<usize> = label.iter().copied().collect();
    assert_eq!(distinct.len(), 32);
    for (g, a) in n.generators().iter().zip(action.group.generators()) {
        for coset in 1..=32 {
            assert_eq!(label[a.image(coset) - 1], g.image(label[coset - 1]));
        }
    }
}

fn sample_group(index: usize) -> PermutationGroup {
    let groups = corpus();
    groups[index % groups.len()].1.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orbit_stabilizer(index in 0usize..1000, point_seed in 0usize..1000) {
        let g = sample_group(index);
        let point = point_seed % g.degree() + 1;
        let orbit = g.orbit(point).unwrap();
        let stab = g.stabilizer(point).unwrap();
        prop_assert_eq!(orbit.len() as u128 * stab.order(), g.order());
        for &q in orbit.points() {
            let path = orbit.word_to(q).unwrap();
            let image = path.iter().fold(point, |p, &i| g.generators()[i].image(p));
            prop_assert_eq!(image, q);
        }
    }

    #[test]
    fn products_stay_in_the_group(index in 0usize..1000, a in proptest::collection::vec(0usize..8, 0..12)) {
        let g = sample_group(index);
        let gens = g.generators();
        if gens.is_empty() {
            return Ok(());
        }
        let p = a.iter().fold(Permutation::identity(g.degree()), |acc, &i| &acc * &gens[i % gens.len()]);
        prop_assert!(g.contains(&p));
        prop_assert!(g.contains(&p.inverse()));
    }
}
