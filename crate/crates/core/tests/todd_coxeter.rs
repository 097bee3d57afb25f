mod common;

use common::{perm, presentations, word};
use proptest::prelude::*;
use symgen::j2::{builtin_resolver, PROGENITOR};
use symgen::presentation::{build_progenitor_quotient_presentation, cayley_presentation, DEFAULT_CAYLEY_BOUND};
use symgen::words::Assignment;
use symgen::{
    enumerate, EnumerationOptions, Generator, Letter, PermutationGroup, ProgenitorSpec, Strategy, VerifiedPresentation,
    Word,
};

fn both(p: &symgen::Presentation, sub: &[Word]) -> (symgen::CosetTable, symgen::CosetTable) {
    let h = enumerate(p, sub, &EnumerationOptions::with_strategy(Strategy::Hlt)).unwrap();
    let f = enumerate(p, sub, &EnumerationOptions::with_strategy(Strategy::Felsch)).unwrap();
    (h.table, f.table)
}

#[test]
fn corpus_indices() {
    for (name, p, order) in presentations() {
        let (h, f) = both(&p, &[]);
        assert_eq!(h.num_cosets(), order, "{name}");
        assert_eq!(h, f, "{name}: HLT and Felsch disagree");
        assert!(h.is_standard(), "{name}");
        assert!(h.is_closed_under(p.relators()), "{name}");
    }
}

/// Faithful permutation representations of some corpus presentations.
fn representation(name: &str) -> (usize, [&'static str; 2]) {
    match name {
        "A5" => (5, ["(1,2)(3,4)", "(1,3,5)"]),
        "S4" => (4, ["(1,2)", "(2,3,4)"]),
        "D8" => (4, ["(1,2,3,4)", "(1,3)"]),
        "L3(2)" => (7, ["(1,2)(3,6)", "(2,3,4)(5,6,7)"]),
        _ => unreachable!(),
    }
}

#[test]
fn subgroup_indices_match_the_permutation_representation() {
    let cases = [
        ("A5", vec!["a"]),
        ("A5", vec!["b"]),
        ("A5", vec!["a", "bab^-1"]),
        ("A5", vec!["ab"]),
        ("S4", vec!["b"]),
        ("S4", vec!["a", "b^-1ab"]),
        ("L3(2)", vec!["b", "abab^-1a"]),
        ("L3(2)", vec!["ab"]),
        ("D8", vec!["b"]),
        ("D8", vec!["a^2"]),
    ];
    let corpus = presentations();
    for (name, gens) in cases {
        let (_, p, order) = corpus.iter().find(|(n, _, _)| *n == name).unwrap();
        let sub: Vec<Word> = gens.iter().map(|s| word(s)).collect();
        let (degree, images) = representation(name);
        let a = Assignment::from_control(&['a', 'b'], &images.map(|c| perm(degree, c))).unwrap();
        for r in p.relators() {
            assert!(
                r.evaluate(&a).unwrap().is_identity(),
                "{name}: representation breaks {r}"
            );
        }
        let h = PermutationGroup::new(degree, sub.iter().map(|w| w.evaluate(&a).unwrap()).collect()).unwrap();

        let (hlt, felsch) = both(p, &sub);
        assert_eq!(hlt, felsch, "{name} {gens:?}");
        assert_eq!(hlt.num_cosets() as u128 * h.order(), *order as u128, "{name} {gens:?}");
        for w in &sub {
            assert_eq!(hlt.apply(1, w), Some(1), "{name}: {w} moves the subgroup coset");
        }
        let mut on_cosets = Assignment::new(hlt.num_cosets());
        for (g, q) in &hlt.coset_permutations() {
            on_cosets.set(*g, q.clone()).unwrap();
        }
        for r in p.relators() {
            assert!(r.evaluate(&on_cosets).unwrap().is_identity(), "{name}: {r}");
        }
    }
}

#[test]
fn standardize_is_idempotent() {
    for (name, p, _) in presentations() {
        let e = enumerate(&p, &[], &EnumerationOptions::default()).unwrap();
        let once = e.table.standardize();
        assert_eq!(once, once.standardize(), "{name}");
        assert_eq!(once, e.table, "{name}");
    }
}

#[test]
fn involutory_columns_are_self_inverse() {
    let p = symgen::Presentation::parse("generators: a t1\na^3\n(at1)^2").unwrap();
    let e = enumerate(&p, &[], &EnumerationOptions::default()).unwrap();
    assert_eq!(e.index(), 6);
    for c in 1..=6 {
        let d = e.table.act(c, Letter::Symmetric(1)).unwrap();
        assert_eq!(e.table.act(d, Letter::Symmetric(1)), Some(c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shuffled_runs_give_the_same_table(seed in any::<u64>(), index in 0usize..100, felsch in any::<bool>()) {
        let corpus = presentations();
        let (_, p, order) = &corpus[index % corpus.len()];
        let strategy = if felsch { Strategy::Felsch } else { Strategy::Hlt };
        let plain = enumerate(p, &[], &EnumerationOptions::with_strategy(strategy)).unwrap();
        let shuffled = enumerate(p, &[], &EnumerationOptions {
            shuffle_seed: Some(seed),
            ..EnumerationOptions::with_strategy(strategy)
        }).unwrap();
        prop_assert_eq!(plain.index(), *order);
        prop_assert_eq!(plain.table, shuffled.table);
    }
}

#[test]
fn j2_quotient_table() {
    let spec = ProgenitorSpec::parse_with(PROGENITOR, &builtin_resolver).unwrap();
    let cayley = cayley_presentation(spec.control(), spec.symbols(), DEFAULT_CAYLEY_BOUND).unwrap();
    let control = VerifiedPresentation::verify(cayley, spec.control(), &EnumerationOptions::default()).unwrap();
    let q = build_progenitor_quotient_presentation(&spec, &control).unwrap();
    let sub = [word("x"), word("y")];
    let (h, f) = both(&q, &sub);
    assert_eq!(h.num_cosets(), 315);
    assert_eq!(h, f);
    assert!(h.is_closed_under(q.relators()));
    assert_eq!(h.act(1, Letter::control('x')), Some(1));
    assert_eq!(h.act(1, Letter::control('y')), Some(1));
    // N t_i for the 32 letters are 32 distinct cosets next to N
    let mut single: Vec<usize> = (1..=32)
        .map(|i| {
            let u = spec.transversal_word(i).unwrap();
            h.apply(1, &Word::symmetric(1).conjugate(&u)).unwrap()
        })
        .collect();
    single.sort_unstable();
    single.dedup();
    assert_eq!(single.len(), 32);
    assert!(!single.contains(&1));
    let perms = h.coset_permutations();
    assert!(perms.contains_key(&Generator::Symmetric(1)));
    assert_eq!(perms[&Generator::Symmetric(1)].order(), 2);
}
