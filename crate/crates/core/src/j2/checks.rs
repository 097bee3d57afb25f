//! Structural checks on the image: letters, coset stabilizers, simplicity,
//! symmetric generation, the involution centralizer and maximal subgroups.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::graph::{normalize_partition, DoubleCosetGraph};
use super::{Check, Image, ReferenceData, SubgroupRow};
use crate::group::{PermutationGroup, Primitivity};
use crate::perm::Permutation;
use crate::words::Word;

pub const J2_ORDER: u128 = 604_800;

fn word(s: &str) -> Word {
    s.parse().expect("static word")
}

/// Faithfulness, relators, distinct involutory letters and equivariance
/// `t_i^n = t_{i^n}`.
pub fn image_checks(image: &Image) -> Vec<Check> {
    let control_order = image.spec.control().order();
    let order = image.group.order();
    let mut out = vec![
        Check::expect("number of cosets", image.degree(), 315),
        Check::expect("order of <X, Y, T>", order, J2_ORDER),
        Check::expect("order of <X, Y>", image.control_image.order(), control_order),
        Check::new(
            "control group embeds",
            image.is_faithful(),
            format!("{} distinct images", image.control_image.order()),
        ),
        Check::new(
            "|<X,Y>| * cosets = |<X,Y,T>|",
            image.control_image.order() * image.degree() as u128 == order,
            format!("{} * {} vs {order}", image.control_image.order(), image.degree()),
        ),
    ];
    let assignment = image.assignment();
    let failing: Vec<String> = image
        .quotient
        .relators()
        .iter()
        .filter(|r| !r.evaluate(&assignment).is_ok_and(|p| p.is_identity()))
        .map(|r| r.to_string())
        .collect();
    out.push(Check::new(
        "every relator is the identity",
        failing.is_empty(),
        format!("{} relators, failing {failing:?}", image.quotient.relators().len()),
    ));
    let distinct: HashSet<&Permutation> = image.letters.iter().collect();
    let involutions = image.letters.iter().all(|t| t.order() == 2);
    out.push(Check::new(
        "letters are distinct involutions",
        distinct.len() == image.letters.len() && involutions,
        format!("{} distinct of {}", distinct.len(), image.letters.len()),
    ));
    let mut equivariant = true;
    for (n, img) in image.spec.control().generators().iter().zip(&image.control_images) {
        for i in 1..=image.letters.len() {
            if image.letter(i).conjugate(img) != *image.letter(n.image(i)) {
                equivariant = false;
            }
        }
    }
    out.push(Check::new("t_i^n = t_(i^n) for control generators n", equivariant, ""));
    out
}

/// Named elements fix the coset of the matching word, and the coset
/// stabilizers have the orders forced by the node counts.
pub fn verify_coset_stabilizers(image: &Image, graph: &DoubleCosetGraph, data: &ReferenceData) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, w, expected, fixed_letters) in [
        ("gamma18", "t1t8", 24u128, vec![1usize, 8]),
        ("rho", "t1t2t4", 192, vec![1, 2, 4]),
    ] {
        let w = word(w);
        let point = image.point_of(&w).expect("letters assigned");
        let node = graph.node_of_point[point - 1];
        match data.named(name).and_then(|p| image.map_control(p)) {
            Some(g) => out.push(Check::new(
                format!("{name} fixes the coset N{w}"),
                g.image(point) == point,
                format!("moves {point} to {}", g.image(point)),
            )),
            None => out.push(Check::new(
                format!("{name} fixes the coset N{w}"),
                false,
                "not in the control group",
            )),
        }
        out.push(Check::expect(
            format!("coset stabilizer order at N{w}"),
            image.point_stabilizer_order(point),
            expected,
        ));
        out.push(Check::expect(
            format!("1920 / count of [{w}]"),
            image.control_image.order() / graph.nodes[node].count as u128,
            expected,
        ));
        // the letter stabilizer together with the named element
        let control = image.spec.control();
        let mut stab = control.clone();
        for &l in &fixed_letters {
            stab = stab.stabilizer(l).expect("letter in range");
        }
        if let Some(p) = data.named(name) {
            let mut gens = stab.generators().to_vec();
            gens.push(p.clone());
            let generated = PermutationGroup::new(control.degree(), gens).expect("same degree");
            out.push(Check::expect(
                format!("order of <stabilizer of letters {fixed_letters:?}, {name}>"),
                generated.order(),
                expected,
            ));
        }
    }
    out
}

/// Printed letter-orbit partitions against the computed ones. The partition
/// at `[t1]` is structural; the others are reported.
pub fn letter_orbit_checks(image: &Image, data: &ReferenceData) -> Vec<Check> {
    data.drawn
        .orbits
        .iter()
        .map(|(w, printed)| {
            let computed = match image.point_of(w) {
                Ok(p) => normalize_partition(&image.letter_orbits_at(p)),
                Err(_) => Vec::new(),
            };
            let printed = normalize_partition(printed);
            let sizes: Vec<usize> = computed.iter().map(Vec::len).collect();
            Check::new(
                format!("letter orbits at N{w}"),
                computed == printed,
                format!("computed sizes {sizes:?}"),
            )
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityReport {
    pub checks: Vec<Check>,
    /// Reported separately: the verdict only needs `H` solvable.
    pub abelian: Check,
    pub simple: bool,
}

/// Iwasawa's criterion: a perfect primitive group whose point stabilizer has
/// a solvable normal subgroup with conjugates generating the group is simple.
pub fn simplicity_suite(image: &Image) -> SimplicityReport {
    let g = &image.group;
    let order = g.order();
    let mut checks = vec![Check::new(
        "transitive",
        g.is_transitive(),
        format!("degree {}", g.degree()),
    )];
    let primitive = g.is_primitive();
    checks.push(Check::new(
        "primitive",
        matches!(primitive, Ok(Primitivity::Primitive)),
        match &primitive {
            Ok(Primitivity::Imprimitive { block }) => format!("block of size {}", block.len()),
            Ok(Primitivity::Primitive) => String::new(),
            Err(e) => e.to_string(),
        },
    ));
    checks.push(Check::expect(
        "order of the derived subgroup",
        g.derived_subgroup().order(),
        order,
    ));
    let y3 = image.evaluate(&word("y^3")).expect("control assigned");
    let h = image
        .control_image
        .normal_closure(&[y3])
        .expect("y^3 in the control image");
    checks.push(Check::expect("order of H = <<Y^3>>", h.order(), 32));
    let series: Vec<u128> = h.derived_series().iter().map(|d| d.order()).collect();
    checks.push(Check::new(
        "H is solvable",
        series.last() == Some(&1),
        format!("derived series orders {series:?}"),
    ));
    let stab = g.stabilizer(1).expect("point 1");
    checks.push(Check::new(
        "H is normal in the point stabilizer",
        h.is_subgroup_of(&stab) && h.is_normalized_by(stab.generators()),
        format!("stabilizer order {}", stab.order()),
    ));
    let closure = g.normal_closure(h.generators()).expect("H inside G");
    checks.push(Check::expect(
        "order of the normal closure of H",
        closure.order(),
        order,
    ));
    let derived = h.derived_subgroup().order();
    let abelian = Check::new(
        "H is abelian",
        h.is_abelian(),
        format!("derived subgroup of H has order {derived}"),
    );
    let simple = checks.iter().all(|c| c.passed);
    SimplicityReport {
        checks,
        abelian,
        simple,
    }
}

/// The stabilizer of letter 1 is `A5`, centralizes `t1`, and the 32
/// conjugates of `t1` generate the whole group.
pub fn symmetric_generation_checks(image: &Image) -> Vec<Check> {
    let control = image.spec.control();
    let stab = control.stabilizer(1).expect("letter 1");
    let gens: Vec<Permutation> = stab
        .generators()
        .iter()
        .map(|s| image.map_control(s).expect("control element").clone())
        .collect();
    let stab_image = PermutationGroup::new(image.degree(), gens).expect("same degree");
    let mut out = vec![
        Check::expect("order of the letter-1 stabilizer image", stab_image.order(), 60),
        Check::new("letter-1 stabilizer is perfect", stab_image.is_perfect(), ""),
        Check::new("letter-1 stabilizer is nonabelian", !stab_image.is_abelian(), ""),
        Check::new(
            "letter-1 stabilizer centralizes t1",
            stab_image.generators().iter().all(|s| s.commutes_with(&image.t)),
            "",
        ),
    ];
    let mut seen = HashSet::from([image.t.clone()]);
    let mut queue = VecDeque::from([image.t.clone()]);
    while let Some(c) = queue.pop_front() {
        for n in &image.control_images {
            let d = c.conjugate(n);
            if seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    out.push(Check::expect(
        "conjugates of t1 under the control image",
        seen.len(),
        32,
    ));
    let letters = PermutationGroup::new(image.degree(), image.letters.clone()).expect("same degree");
    out.push(Check::expect("order of <t1, ..., t32>", letters.order(), J2_ORDER));
    out
}

/// `x^5` has centralizer of order 1920 and moves every letter.
pub fn janko_check(image: &Image) -> Vec<Check> {
    let x5 = image.evaluate(&word("x^5")).expect("control assigned");
    let class = image.group.class_size(&x5).expect("member");
    let x5_letters = image.spec.assignment();
    let x5_letters = word("x^5").evaluate(&x5_letters).expect("control assigned");
    vec![
        Check::expect("class size of X^5", class, 315),
        Check::expect("centralizer order of X^5", image.group.order() / class, 1920),
        Check::new(
            "control image centralizes X^5",
            image.control_images.iter().all(|n| n.commutes_with(&x5)),
            "",
        ),
        Check::expect("letters fixed by x^5", x5_letters.fixed_points().len(), 0),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupResult {
    pub name: String,
    pub generators: String,
    pub expected_order: u128,
    pub order: Option<u128>,
    pub passed: bool,
    /// Set when the row was skipped.
    pub skipped: Option<String>,
}

pub fn maximal_subgroup_orders(image: &Image, rows: &[SubgroupRow]) -> Vec<SubgroupResult> {
    let assignment = image.assignment();
    rows.iter()
        .map(|row| {
            let evaluated = row.generators.as_ref().map_err(Clone::clone).and_then(|ws| {
                ws.iter()
                    .map(|w| w.evaluate(&assignment).map_err(|e| format!("{w}: {e}")))
                    .collect::<Result<Vec<_>, _>>()
            });
            match evaluated {
                Ok(gens) => {
                    let order = PermutationGroup::new(image.degree(), gens)
                        .expect("same degree")
                        .order();
                    SubgroupResult {
                        name: row.name.clone(),
                        generators: row.source.clone(),
                        expected_order: row.expected_order,
                        order: Some(order),
                        passed: order == row.expected_order,
                        skipped: None,
                    }
                }
                Err(reason) => SubgroupResult {
                    name: row.name.clone(),
                    generators: row.source.clone(),
                    expected_order: row.expected_order,
                    order: None,
                    passed: false,
                    skipped: Some(reason),
                },
            }
        })
        .collect()
}
