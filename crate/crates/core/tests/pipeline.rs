mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use common::{closure, word};
use symgen::j2::checks::{self, J2_ORDER};
use symgen::j2::{construct_image, double_coset_graph, run_verification, verify_identities, Image, ReferenceData};
use symgen::{EnumerationOptions, PermutationGroup, Strategy};

fn data() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(ReferenceData::builtin)
}

fn image() -> &'static Image {
    static IMAGE: OnceLock<Image> = OnceLock::new();
    IMAGE.get_or_init(|| construct_image(&data().spec, &EnumerationOptions::default()).unwrap())
}

#[test]
fn first_letter_is_the_enumerated_involution() {
    let img = image();
    assert_eq!(img.degree(), 315);
    assert_eq!(*img.letter(1), img.t);
    let x = &img.control_images[0];
    assert_eq!(img.letter(1).conjugate(x), *img.letter(2));
    assert_eq!(img.group.order(), J2_ORDER);
}

#[test]
fn felsch_gives_the_same_image() {
    let felsch = construct_image(&data().spec, &EnumerationOptions::with_strategy(Strategy::Felsch)).unwrap();
    let img = image();
    assert_eq!(felsch.t, img.t);
    assert_eq!(felsch.control_images, img.control_images);
}

#[test]
fn defining_expansions_and_the_x5_identity_hold() {
    let results = verify_identities(image(), &data().catalog);
    let by_label: BTreeMap<&str, bool> = results.iter().map(|r| (r.label.as_str(), r.passed)).collect();
    for label in ["given-3", "given-6", "12121", "182329", "2510"] {
        assert_eq!(by_label.get(label), Some(&true), "{label}");
    }
    assert!(results.len() >= 14);
}

#[test]
fn false_identities_are_rejected() {
    let entries = symgen::j2::parse_catalog("neg: t1t2 = 1\nneg2: [t1t3] = [t1t2]\nneg3: t1 ~ t2\n").unwrap();
    for r in verify_identities(image(), &entries) {
        assert!(!r.passed, "{}", r.statement);
    }
}

/// Orbits of the 1920 control elements on the 315 points, listed directly.
fn brute_force_double_cosets(img: &Image) -> Vec<Vec<usize>> {
    let elements = closure(&img.control_image);
    assert_eq!(elements.len(), 1920);
    let mut seen = vec![false; img.degree()];
    let mut out = Vec::new();
    for p in 1..=img.degree() {
        if seen[p - 1] {
            continue;
        }
        let mut orbit: Vec<usize> = elements.iter().map(|g| g.image(p)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &q in &orbit {
            seen[q - 1] = true;
        }
        out.push(orbit);
    }
    out
}

#[test]
fn graph_matches_brute_force() {
    let img = image();
    let graph = double_coset_graph(img);
    let orbits = brute_force_double_cosets(img);
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let mut counts = graph.counts();
    counts.sort_unstable();
    assert_eq!(counts, sizes);
    assert_eq!(sizes, vec![1, 10, 32, 32, 80, 160]);

    let orbit_of = |p: usize| orbits.iter().position(|o| o.contains(&p)).unwrap();
    for node in &graph.nodes {
        let p = node.representative;
        assert_eq!(node.stabilizer_order * node.count as u128, 1920);
        let mut valency: BTreeMap<usize, usize> = BTreeMap::new();
        for t in &img.letters {
            *valency.entry(orbit_of(t.image(p))).or_insert(0) += 1;
        }
        for (target_orbit, v) in valency {
            let target = graph.node_of_point[orbits[target_orbit][0] - 1];
            assert_eq!(graph.valency(node.index, target), v, "[{}]", node.label);
        }
    }
    for c in graph.invariants(img) {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn letter_orbits_at_t1() {
    let img = image();
    let p = img.point_of(&word("t1")).unwrap();
    let mut sizes: Vec<usize> = img.letter_orbits_at(p).iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 5, 5, 20]);
    for c in checks::letter_orbit_checks(img, data()) {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn coset_stabilizers() {
    let img = image();
    let graph = double_coset_graph(img);
    for c in checks::verify_coset_stabilizers(img, &graph, data()) {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn simplicity_and_structure() {
    let img = image();
    let report = checks::simplicity_suite(img);
    for c in &report.checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    assert!(report.simple);
    // H is extraspecial of order 32, so the abelian check is reported as failing
    assert!(!report.abelian.passed);
    for c in checks::symmetric_generation_checks(img)
        .iter()
        .chain(&checks::janko_check(img))
    {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn janko_class_size_by_orbit() {
    let img = image();
    let x5 = img.evaluate(&word("x^5")).unwrap();
    // conjugacy class of x^5 as an orbit under conjugation, listed directly
    let mut class = vec![x5.clone()];
    let mut seen = std::collections::HashSet::from([x5]);
    let mut k = 0;
    while k < class.len() {
        for g in img.group.generators() {
            let c = class[k].conjugate(g);
            if seen.insert(c.clone()) {
                class.push(c);
            }
        }
        k += 1;
    }
    assert_eq!(class.len(), 315);
}

#[test]
fn subgroup_rows_evaluate() {
    let img = image();
    let rows = checks::maximal_subgroup_orders(img, &data().subgroups);
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.skipped.is_none()));
    let control = rows.iter().find(|r| r.expected_order == 1920).unwrap();
    assert!(control.passed);
    // every row lies inside the group and has order dividing it
    for r in &rows {
        assert_eq!(J2_ORDER % r.order.unwrap(), 0, "{}", r.name);
    }
}

#[test]
fn dot_output_matches_the_graph() {
    let img = image();
    let graph = double_coset_graph(img);
    let dot = graph.to_dot();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=\"[").count(), 6);
    for n in &graph.nodes {
        assert!(dot.contains(&format!("\\n{}\"]", n.count)));
    }
    assert_eq!(dot.matches(" -> ").count(), graph.valencies().len());
}

#[test]
fn report_is_structurally_green() {
    let (_, report) = run_verification(data(), &EnumerationOptions::default()).unwrap();
    assert!(report.structural_pass, "{:?}", report.structural_failures());
    assert!(report.passed(false));
    assert_eq!(report.enumeration.cosets, 315);
}

#[test]
fn letters_generate_and_t1_is_not_central() {
    let img = image();
    let letters = PermutationGroup::new(img.degree(), img.letters.clone()).unwrap();
    assert_eq!(letters.order(), J2_ORDER);
    let central = img.group.generators().iter().all(|g| g.commutes_with(&img.t));
    assert!(!central);
}
