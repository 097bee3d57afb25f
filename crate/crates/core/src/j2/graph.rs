//! Double cosets `N w N` as orbits of the control image on the coset points.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::{Check, DrawnGraph, Image};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Serialize)]
pub struct Node {
    pub index: usize,
    /// Shortest, then lexicographically least, word in the symmetric generators.
    pub label: String,
    #[serde(skip)]
    pub word: Word,
    pub representative: usize,
    pub count: usize,
    pub stabilizer_order: u128,
    pub letter_orbits: Vec<Vec<usize>>,
}

/// Multiplying the representative of `source` by the letters of one orbit
/// of its stabilizer lands in `target`.
#[derive(Debug, Clone, Serialize)]
pub struct Edge {
    pub source: usize,
    pub letter: usize,
    pub valency: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleCosetGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    pub node_of_point: Vec<usize>,
}

pub fn double_coset_graph(image: &Image) -> DoubleCosetGraph {
    let degree = image.degree();
    let letters = image.letters.len();
    // Breadth-first over the letters in order gives each point its shortest,
    // lexicographically least word.
    let mut word_of: Vec<Option<Vec<u32>>> = vec![None; degree];
    let mut order = Vec::with_capacity(degree);
    word_of[0] = Some(Vec::new());
    let mut queue = VecDeque::from([1usize]);
    while let Some(p) = queue.pop_front() {
        order.push(p);
        for i in 1..=letters {
            let q = image.letter(i).image(p);
            if word_of[q - 1].is_none() {
                let mut w = word_of[p - 1].clone().expect("visited");
                w.push(i as u32);
                word_of[q - 1] = Some(w);
                queue.push_back(q);
            }
        }
    }

    let mut node_of_point = vec![usize::MAX; degree];
    let mut nodes = Vec::new();
    for &p in &order {
        if node_of_point[p - 1] != usize::MAX {
            continue;
        }
        let orbit = image.control_image.orbit(p).expect("point in range");
        let index = nodes.len();
        for &q in orbit.points() {
            node_of_point[q - 1] = index;
        }
        let letters = word_of[p - 1].clone().unwrap_or_default();
        let word = Word::from_letters(letters.into_iter().map(Letter::Symmetric).collect());
        nodes.push(Node {
            index,
            label: word.to_string(),
            word,
            representative: p,
            count: orbit.len(),
            stabilizer_order: image.point_stabilizer_order(p),
            letter_orbits: image.letter_orbits_at(p),
        });
    }

    let mut edges = Vec::new();
    for node in &nodes {
        for orbit in &node.letter_orbits {
            let letter = orbit[0];
            let q = image.letter(letter).image(node.representative);
            edges.push(Edge {
                source: node.index,
                letter,
                valency: orbit.len(),
                target: node_of_point[q - 1],
            });
        }
    }
    DoubleCosetGraph {
        nodes,
        edges,
        node_of_point,
    }
}

impl DoubleCosetGraph {
    /// Total valency from `source` into `target`.
    pub fn valency(&self, source: usize, target: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.source == source && e.target == target)
            .map(|e| e.valency)
            .sum()
    }

    /// Aggregated valencies keyed by `(source, target)`.
    pub fn valencies(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry((e.source, e.target)).or_insert(0) += e.valency;
        }
        out
    }

    pub fn node_containing(&self, image: &Image, w: &Word) -> Option<usize> {
        image.point_of(w).ok().map(|p| self.node_of_point[p - 1])
    }

    pub fn counts(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.count).collect()
    }

    /// Counts sum to the degree, stabilizer orders match orbit-stabilizer,
    /// valencies sum to the number of letters and the handshake identity.
    pub fn invariants(&self, image: &Image) -> Vec<Check> {
        let control_order = image.control_image.order();
        let letters = image.letters.len();
        let mut out = vec![Check::expect(
            "node counts sum to the number of cosets",
            self.counts().iter().sum::<usize>(),
            image.degree(),
        )];
        let bad_stab: Vec<&str> = self
            .nodes
            .iter()
            .filter(|n| n.stabilizer_order * n.count as u128 != control_order)
            .map(|n| n.label.as_str())
            .collect();
        out.push(Check::new(
            "stabilizer order times count is the control order",
            bad_stab.is_empty(),
            format!("violations at {bad_stab:?}"),
        ));
        let bad_sum: Vec<&str> = self
            .nodes
            .iter()
            .filter(|n| {
                self.edges
                    .iter()
                    .filter(|e| e.source == n.index)
                    .map(|e| e.valency)
                    .sum::<usize>()
                    != letters
            })
            .map(|n| n.label.as_str())
            .collect();
        out.push(Check::new(
            format!("valencies at each node sum to {letters}"),
            bad_sum.is_empty(),
            format!("violations at {bad_sum:?}"),
        ));
        let vals = self.valencies();
        let mut bad_hand = Vec::new();
        for (&(s, t), &v) in &vals {
            let back = vals.get(&(t, s)).copied().unwrap_or(0);
            if self.nodes[s].count * v != self.nodes[t].count * back {
                bad_hand.push(format!("{} -> {}", self.nodes[s].label, self.nodes[t].label));
            }
        }
        out.push(Check::new(
            "handshake identity on every edge",
            bad_hand.is_empty(),
            format!("violations at {bad_hand:?}"),
        ));
        out
    }

    /// Differences between the computed graph and a drawn one.
    pub fn compare_drawn(&self, image: &Image, drawn: &DrawnGraph) -> Vec<String> {
        let mut out = Vec::new();
        let locate = |w: &Word| self.node_containing(image, w);
        for (w, count) in &drawn.nodes {
            match locate(w) {
                None => out.push(format!("drawn node [{w}] does not evaluate")),
                Some(k) if self.nodes[k].count != *count => out.push(format!(
                    "node [{w}] drawn with {count} cosets, computed {}",
                    self.nodes[k].count
                )),
                Some(_) => {}
            }
        }
        for (a, b, v) in &drawn.edges {
            if let (Some(s), Some(t)) = (locate(a), locate(b)) {
                let computed = self.valency(s, t);
                if computed != *v {
                    out.push(format!(
                        "edge [{a}] -> [{b}] drawn with valency {v}, computed {computed}"
                    ));
                }
            }
        }
        for (s, t) in self.valencies().keys() {
            let drawn_edge = drawn
                .edges
                .iter()
                .any(|(a, b, _)| locate(a) == Some(*s) && locate(b) == Some(*t));
            if !drawn_edge {
                out.push(format!(
                    "edge [{}] -> [{}] not drawn",
                    self.nodes[*s].label, self.nodes[*t].label
                ));
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph double_cosets {\n");
        for n in &self.nodes {
            let name = if n.word.is_empty() { "*" } else { n.label.as_str() };
            let _ = writeln!(s, "  n{} [label=\"[{}]\\n{}\"];", n.index, name, n.count);
        }
        for ((a, b), v) in self.valencies() {
            let _ = writeln!(s, "  n{a} -> n{b} [label=\"{v}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Letter-orbit partition as a sorted list of sorted orbits.
pub fn normalize_partition(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    out.sort();
    out
}
