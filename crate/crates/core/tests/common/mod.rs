#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use symgen::presentation::Presentation;
use symgen::{Permutation, PermutationGroup, Word};

pub fn perm(degree: usize, cycles: &str) -> Permutation {
    Permutation::parse_with_degree(cycles, degree).unwrap()
}

pub fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
    PermutationGroup::new(degree, gens.iter().map(|g| perm(degree, g)).collect()).unwrap()
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

pub const X: &str = "(1,2)(3,5,7,11,17,4,6,9,14,22)(8,13,20,29,23,10,16,25,30,18)(12,19,28,32,26,15,24,27,31,21)";
pub const Y: &str = "(1,3)(2,4)(5,8)(6,10)(7,12,17,27,14,23)(9,15,22,28,11,18)(13,21,24,30,32,20)(16,26,19,29,31,25)";
pub const TAU: &str =
    "(1,4)(2,3)(5,10)(6,8)(7,28)(9,27)(11,12)(13,29)(14,15)(16,30)(17,18)(19,20)(21,31)(22,23)(24,25)(26,32)";
pub const PI: &str = "(1,3,12,16,7)(2,4,15,13,9)(5,28,14,23,26)(6,27,11,18,21)(8,19,30,20,22)(10,24,29,25,17)";

pub fn control_group() -> PermutationGroup {
    group(32, &[X, Y])
}

/// Named permutation groups of order at most 20000.
pub fn corpus() -> Vec<(&'static str, PermutationGroup)> {
    vec![
        ("trivial", PermutationGroup::trivial(5)),
        ("C2", group(2, &["(1,2)"])),
        ("C4", group(4, &["(1,2,3,4)"])),
        ("V4", group(4, &["(1,2)(3,4)", "(1,3)(2,4)"])),
        ("S3", group(3, &["(1,2)", "(1,2,3)"])),
        ("D10", group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"])),
        ("A4", group(4, &["(1,2,3)", "(2,3,4)"])),
        ("S4", group(4, &["(1,2)", "(1,2,3,4)"])),
        ("C2xC4 intransitive", group(6, &["(1,2)", "(3,4,5,6)"])),
        ("A5", group(5, &["(1,2,3)", "(1,2,3,4,5)"])),
        ("S5", group(5, &["(1,2)", "(1,2,3,4,5)"])),
        ("A5 on 6", group(6, &["(1,2,3,4,5)", "(1,6)(2,5)"])),
        ("L3(2) on 7", group(7, &["(1,2,3,4,5,6,7)", "(2,4)(5,6)"])),
        ("AGL(1,8)", group(8, &["(1,2)(3,4)(5,6)(7,8)", "(2,3,5,4,7,8,6)"])),
        ("wreath C2 C3", group(6, &["(1,2)", "(1,3,5)(2,4,6)"])),
        ("S3 x S3 on 6", group(6, &["(1,2)", "(1,2,3)", "(4,5)", "(4,5,6)"])),
        ("D12 on 6", group(6, &["(1,2,3,4,5,6)", "(2,6)(3,5)"])),
        ("A6", group(6, &["(1,2,3)", "(2,3,4,5,6)"])),
        ("S6", group(6, &["(1,2)", "(1,2,3,4,5,6)"])),
        ("A7", group(7, &["(1,2,3)", "(1,2,3,4,5,6,7)"])),
        ("S7", group(7, &["(1,2)", "(1,2,3,4,5,6,7)"])),
        ("M11", group(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"])),
        ("C3 wr C2 on 6", group(6, &["(1,2,3)", "(1,4)(2,5)(3,6)"])),
        ("2^5:A5", control_group()),
    ]
}

/// Every element, by breadth-first multiplication until nothing new appears.
pub fn closure(g: &PermutationGroup) -> HashSet<Permutation> {
    let id = Permutation::identity(g.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for s in g.generators() {
            let b = &a * s;
            if seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    seen
}

/// All nontrivial blocks containing point 1, by checking every subset.
pub fn blocks_through_one(g: &PermutationGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set: Vec<usize> = std::iter::once(1)
            .chain((0..n - 1).filter(|b| mask & (1 << b) != 0).map(|b| b + 2))
            .collect();
        if set.len() == 1 || set.len() == n || !n.is_multiple_of(set.len()) {
            continue;
        }
        let members: HashSet<usize> = set.iter().copied().collect();
        let is_block = g.generators().iter().all(|s| {
            let image: HashSet<usize> = set.iter().map(|&p| s.image(p)).collect();
            image == members || image.is_disjoint(&members)
        });
        if is_block {
            out.push(set);
        }
    }
    out
}

/// Small presentations with their group orders.
pub fn presentations() -> Vec<(&'static str, Presentation, usize)> {
    let p = |text: &str| Presentation::parse(text).unwrap();
    vec![
        ("C3", p("a^3"), 3),
        ("C6", p("a^6"), 6),
        ("V4", p("a^2\nb^2\n(ab)^2"), 4),
        ("S3", p("a^2\nb^2\n(ab)^3"), 6),
        ("D8", p("a^4\nb^2\n(ab)^2"), 8),
        ("Q8", p("a^4\na^2b^-2\nb^-1aba"), 8),
        ("A4", p("a^2\nb^3\n(ab)^3"), 12),
        ("S4", p("a^2\nb^3\n(ab)^4"), 24),
        ("A5", p("a^2\nb^3\n(ab)^5"), 60),
        ("C2 x C2 symmetric", p("generators: a t1\na^2\n(at1)^2"), 4),
        ("trivial by collapse", p("a^3\na^2"), 1),
        ("L3(2)", p("a^2\nb^3\n(ab)^7\n(abab^-1)^4"), 168),
    ]
}
