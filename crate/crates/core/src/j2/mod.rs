//! Construction of J2 as the image of the progenitor `2^*32 : (2^5:A5)`
//! and the structural checks run against it.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::presentation::{
    build_progenitor_quotient_presentation, cayley_presentation, parse_named_permutations, strip_comment, Presentation,
    PresentationError, ProgenitorSpec, VerifiedPresentation, DEFAULT_CAYLEY_BOUND,
};
use crate::todd_coxeter::{enumerate, EnumerationOptions, Statistics};
use crate::words::{Assignment, Generator, Word, WordError};

pub mod catalog;
pub mod checks;
pub mod graph;
pub mod report;

pub use catalog::{parse_catalog, verify_identities, CatalogEntry, IdentityResult};
pub use graph::{double_coset_graph, DoubleCosetGraph};
pub use report::{run_verification, Report};

pub const CONTROL_PERM: &str = include_str!("../../data/control.perm");
pub const PROGENITOR: &str = include_str!("../../data/j2.prog");
pub const NAMED_PERM: &str = include_str!("../../data/named.perm");
pub const RELATIONS: &str = include_str!("../../data/relations.cat");
pub const MAXIMAL_SUBGROUPS: &str = include_str!("../../data/maxsub.tab");
pub const DRAWN_GRAPH: &str = include_str!("../../data/drawn.graph");

/// A failed pipeline stage.
#[derive(Debug, Error)]
#[error("{stage}: {message}")]
pub struct StageError {
    pub stage: &'static str,
    pub message: String,
}

impl StageError {
    fn new(stage: &'static str, message: impl ToString) -> Self {
        StageError {
            stage,
            message: message.to_string(),
        }
    }
}

/// One pass/fail finding.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn expect<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, found: T, expected: T) -> Self {
        let passed = found == expected;
        Check::new(name, passed, format!("found {found:?}, expected {expected:?}"))
    }
}

/// Resolves `include` lines against the embedded data files.
pub fn builtin_resolver(name: &str) -> Result<String, PresentationError> {
    match name {
        "control.perm" => Ok(CONTROL_PERM.to_string()),
        "named.perm" => Ok(NAMED_PERM.to_string()),
        other => Err(PresentationError::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no embedded file {other}"),
        ))),
    }
}

/// The row of a subgroup generator table.
#[derive(Debug, Clone)]
pub struct SubgroupRow {
    pub name: String,
    pub expected_order: u128,
    pub source: String,
    /// Parsed generators, or the reason the row could not be read.
    pub generators: Result<Vec<Word>, String>,
}

pub fn parse_subgroup_table(text: &str) -> Vec<SubgroupRow> {
    let mut rows = Vec::new();
    for raw in text.lines() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.splitn(3, '|').map(str::trim).collect();
        let (name, order, source) = match parts.as_slice() {
            [n, o, s] => (*n, *o, *s),
            _ => {
                rows.push(SubgroupRow {
                    name: line.to_string(),
                    expected_order: 0,
                    source: String::new(),
                    generators: Err("expected `name | order | generators`".into()),
                });
                continue;
            }
        };
        let expected_order = order.parse().unwrap_or(0);
        let generators = source
            .split(',')
            .map(|w| w.trim().parse::<Word>().map_err(|e| format!("{:?}: {e}", w.trim())))
            .collect();
        rows.push(SubgroupRow {
            name: name.to_string(),
            expected_order,
            source: source.to_string(),
            generators,
        });
    }
    rows
}

/// The double coset graph as drawn: nodes with counts, edges with the valency
/// at their source, and printed letter-orbit partitions at some nodes.
#[derive(Debug, Clone, Default)]
pub struct DrawnGraph {
    pub nodes: Vec<(Word, usize)>,
    pub edges: Vec<(Word, Word, usize)>,
    pub orbits: Vec<(Word, Vec<Vec<usize>>)>,
}

pub fn parse_drawn_graph(text: &str) -> Result<DrawnGraph, String> {
    let mut g = DrawnGraph::default();
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| format!("line {}: {msg}", n + 1);
        let word = |s: &str| s.parse::<Word>().map_err(|e| bad(&e.to_string()));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad number"));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["node", w, c] => g.nodes.push((word(w)?, num(c)?)),
            ["edge", a, b, v] => g.edges.push((word(a)?, word(b)?, num(v)?)),
            ["orbits", w, "=", ..] => {
                let rest = line.split_once('=').map(|(_, r)| r).unwrap_or("");
                let parts = rest
                    .split('|')
                    .map(|o| o.split_whitespace().map(num).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                g.orbits.push((word(w)?, parts));
            }
            _ => return Err(bad("unrecognised line")),
        }
    }
    Ok(g)
}

/// Everything the checks compare against: the progenitor, named control
/// elements, the identity catalog, the subgroup table and the drawn graph.
#[derive(Debug, Clone)]
pub struct ReferenceData {
    pub spec: ProgenitorSpec,
    pub named: Vec<(String, Permutation)>,
    pub catalog: Vec<CatalogEntry>,
    pub subgroups: Vec<SubgroupRow>,
    pub drawn: DrawnGraph,
}

impl ReferenceData {
    pub fn builtin() -> Self {
        let spec = ProgenitorSpec::parse_with(PROGENITOR, &builtin_resolver).expect("embedded progenitor");
        ReferenceData::with_spec(spec)
    }

    /// Embedded tables with a caller-supplied progenitor.
    pub fn with_spec(spec: ProgenitorSpec) -> Self {
        let lines: Vec<(usize, String)> = NAMED_PERM
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l).to_string()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        ReferenceData {
            spec,
            named: parse_named_permutations(&lines).expect("embedded permutations"),
            catalog: parse_catalog(RELATIONS).expect("embedded catalog"),
            subgroups: parse_subgroup_table(MAXIMAL_SUBGROUPS),
            drawn: parse_drawn_graph(DRAWN_GRAPH).expect("embedded graph"),
        }
    }

    pub fn named(&self, name: &str) -> Option<&Permutation> {
        self.named.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Named elements lie in the control group and the relation words
    /// evaluate to the printed `tau` and `pi`.
    pub fn validate(&self) -> Vec<Check> {
        let control = self.spec.control();
        let mut out = vec![Check::expect("control group order", control.order(), 1920)];
        for (name, p) in &self.named {
            out.push(Check::new(
                format!("{name} lies in the control group"),
                p.degree() == control.degree() && control.contains(p),
                p.to_string(),
            ));
        }
        let assignment = self.spec.assignment();
        for (rel, name) in self.spec.relations().iter().zip(["tau", "pi"]) {
            let value = rel.control.evaluate(&assignment).ok();
            let printed = self.named(name);
            out.push(Check::new(
                format!("{} evaluates to {name}", rel.control),
                value.is_some() && value.as_ref() == printed,
                value.map_or("unassigned".into(), |v| v.to_string()),
            ));
        }
        out
    }
}

/// The permutation image of the progenitor quotient on the cosets of the
/// control group.
#[derive(Debug, Clone)]
pub struct Image {
    pub spec: ProgenitorSpec,
    pub control_relators: usize,
    pub quotient: Presentation,
    pub stats: Statistics,
    pub control_images: Vec<Permutation>,
    pub t: Permutation,
    /// `<X, Y, T>` on the cosets.
    pub group: PermutationGroup,
    /// `<X, Y>` on the cosets.
    pub control_image: PermutationGroup,
    /// `t_1 .. t_n`, index `i - 1`.
    pub letters: Vec<Permutation>,
    to_image: HashMap<Permutation, Permutation>,
    from_image: HashMap<Permutation, Permutation>,
}

/// Builds the control presentation, the quotient presentation, enumerates its
/// cosets over the control subgroup and returns the resulting action.
pub fn construct_image(spec: &ProgenitorSpec, options: &EnumerationOptions) -> Result<Image, StageError> {
    let control = spec.control();
    if !control.is_transitive() {
        return Err(StageError::new("control", "control group is not transitive"));
    }
    let cayley = cayley_presentation(control, spec.symbols(), DEFAULT_CAYLEY_BOUND)
        .map_err(|e| StageError::new("control", e))?;
    let control_options = EnumerationOptions {
        max_definitions: options.max_definitions.max(DEFAULT_CAYLEY_BOUND as usize * 10),
        ..options.clone()
    };
    let verified =
        VerifiedPresentation::verify(cayley, control, &control_options).map_err(|e| StageError::new("control", e))?;
    let quotient =
        build_progenitor_quotient_presentation(spec, &verified).map_err(|e| StageError::new("presentation", e))?;
    let subgroup: Vec<Word> = spec
        .symbols()
        .iter()
        .map(|&c| Word::letter(crate::words::Letter::control(c)))
        .collect();
    let enumeration = enumerate(&quotient, &subgroup, options).map_err(|e| StageError::new("enumeration", e))?;
    let perms = enumeration.table.coset_permutations();
    let control_images: Vec<Permutation> = spec
        .symbols()
        .iter()
        .map(|&c| perms[&Generator::Control(c)].clone())
        .collect();
    let t = perms[&Generator::Symmetric(1)].clone();
    let degree = enumeration.index();

    let mut letters = Vec::with_capacity(spec.degree());
    let control_assignment =
        Assignment::from_control(spec.symbols(), &control_images).map_err(|e| StageError::new("image", e))?;
    for i in 1..=spec.degree() {
        let u = spec.transversal_word(i).map_err(|e| StageError::new("image", e))?;
        let u = u
            .evaluate(&control_assignment)
            .map_err(|e| StageError::new("image", e))?;
        letters.push(t.conjugate(&u));
    }

    let (to_image, from_image) = control_isomorphism(control.generators(), &control_images, control.degree(), degree)
        .map_err(|m| StageError::new("image", m))?;
    let mut gens = control_images.clone();
    gens.push(t.clone());
    let group = PermutationGroup::new(degree, gens).map_err(|e| StageError::new("image", e))?;
    let control_image =
        PermutationGroup::new(degree, control_images.clone()).map_err(|e| StageError::new("image", e))?;
    Ok(Image {
        spec: spec.clone(),
        control_relators: verified.presentation().relators().len(),
        quotient,
        stats: enumeration.stats,
        control_images,
        t,
        group,
        control_image,
        letters,
        to_image,
        from_image,
    })
}

type ElementMaps = (HashMap<Permutation, Permutation>, HashMap<Permutation, Permutation>);

/// Walks the Cayley graph of the control group and its image together. Fails
/// if the generator correspondence does not extend to a homomorphism.
fn control_isomorphism(
    source: &[Permutation],
    target: &[Permutation],
    source_degree: usize,
    target_degree: usize,
) -> Result<ElementMaps, String> {
    let mut to_image = HashMap::new();
    let start = (
        Permutation::identity(source_degree),
        Permutation::identity(target_degree),
    );
    to_image.insert(start.0.clone(), start.1.clone());
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        for (g, h) in source.iter().zip(target) {
            let next = (&a * g, &b * h);
            match to_image.get(&next.0) {
                Some(existing) if existing != &next.1 => {
                    return Err(format!("generator images are not a homomorphism at {}", next.0));
                }
                Some(_) => {}
                None => {
                    to_image.insert(next.0.clone(), next.1.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let from_image: HashMap<Permutation, Permutation> = to_image.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    Ok((to_image, from_image))
}

impl Image {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn letter(&self, i: usize) -> &Permutation {
        &self.letters[i - 1]
    }

    /// Control generators and every `t_i` assigned.
    pub fn assignment(&self) -> Assignment {
        let mut a = Assignment::from_control(self.spec.symbols(), &self.control_images).expect("same degree");
        for (i, t) in self.letters.iter().enumerate() {
            a.set(Generator::Symmetric(i as u32 + 1), t.clone())
                .expect("same degree");
        }
        a
    }

    pub fn evaluate(&self, w: &Word) -> Result<Permutation, WordError> {
        w.evaluate(&self.assignment())
    }

    /// The coset `N w`, as a point of the action.
    pub fn point_of(&self, w: &Word) -> Result<usize, WordError> {
        Ok(self.evaluate(w)?.image(1))
    }

    /// Image of a control-group element given on the letters.
    pub fn map_control(&self, p: &Permutation) -> Option<&Permutation> {
        self.to_image.get(p)
    }

    /// Action on the letters of an element of the control image.
    pub fn letter_action(&self, p: &Permutation) -> Option<&Permutation> {
        self.from_image.get(p)
    }

    /// The control group is mapped injectively.
    pub fn is_faithful(&self) -> bool {
        self.to_image.len() as u128 == self.spec.control().order() && self.from_image.len() == self.to_image.len()
    }

    /// Orbits on the letters of the stabilizer of `point` in the control image.
    pub fn letter_orbits_at(&self, point: usize) -> Vec<Vec<usize>> {
        let stab = self.control_image.stabilizer_generators(point).expect("point in range");
        let on_letters: Vec<Permutation> = stab
            .iter()
            .map(|s| {
                self.letter_action(s)
                    .expect("stabilizer lies in the control image")
                    .clone()
            })
            .collect();
        let g = PermutationGroup::new(self.spec.degree(), on_letters).expect("letter degree");
        g.orbits()
    }

    pub fn point_stabilizer_order(&self, point: usize) -> u128 {
        self.control_image.stabilizer(point).expect("point in range").order()
    }
}
