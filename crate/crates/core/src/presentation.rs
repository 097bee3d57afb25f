//! Finite presentations: Cayley-graph presentations of concrete permutation
//! groups, verification by coset enumeration, and progenitor quotients.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::group::{GroupError, PermutationGroup};
use crate::perm::{PermError, Permutation};
use crate::todd_coxeter::{enumerate, EnumerationError, EnumerationOptions};
use crate::words::{expand_progenitor_relator, transversal_word, Assignment, Generator, Letter, Word, WordError};

pub const DEFAULT_CAYLEY_BOUND: u128 = 10_000;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("relator {0} uses undeclared generator {1}")]
    UndeclaredGenerator(String, String),
    #[error("group order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: u128, bound: u128 },
    #[error("control presentation does not present the control group: {0}")]
    Unverified(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("control group is not transitive on {0} letters")]
    NotTransitive(usize),
    #[error("control word {0} does not evaluate inside the control group")]
    ControlWordOutside(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Generators plus relators. Symmetric generators are involutions; their
/// squares are implied by the alphabet and never listed as relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Freely reduces the relators, drops empty ones and sorts them by length
    /// and then lexicographically, without duplicates.
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let declared: HashSet<Generator> = generators.iter().copied().collect();
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.generators().into_iter().find(|g| !declared.contains(g)) {
                return Err(PresentationError::UndeclaredGenerator(r.to_string(), g.to_string()));
            }
            let r = r.free_reduce();
            if !r.is_empty() {
                rels.push(r);
            }
        }
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        rels.dedup();
        Ok(Presentation {
            generators,
            relators: rels,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn control_symbols(&self) -> Vec<char> {
        self.generators
            .iter()
            .filter_map(|g| match g {
                Generator::Control(c) => Some(*c),
                Generator::Symmetric(_) => None,
            })
            .collect()
    }

    /// Parses one relator per line; `#` starts a comment. An optional
    /// `generators: x y t1` line fixes the alphabet and its order, otherwise
    /// generators are taken in order of first appearance.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut declared: Option<Vec<Generator>> = None;
        let mut seen: Vec<Generator> = Vec::new();
        let mut relators = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("generators:") {
                let gens = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        parse_generator(s).ok_or_else(|| PresentationError::Syntax {
                            line: n + 1,
                            msg: format!("bad generator {s:?}"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                declared = Some(gens);
                continue;
            }
            let w: Word = line.parse().map_err(|e: WordError| PresentationError::Syntax {
                line: n + 1,
                msg: e.to_string(),
            })?;
            for l in w.letters() {
                let g = l.generator();
                if !seen.contains(&g) {
                    seen.push(g);
                }
            }
            relators.push(w);
        }
        Presentation::new(declared.unwrap_or(seen), relators)
    }

    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let mut out = format!("generators: {}\n", gens.join(" "));
        for r in &self.relators {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "< {} | {} relators >", gens.join(", "), self.relators.len())
    }
}

fn parse_generator(s: &str) -> Option<Generator> {
    let w: Word = s.parse().ok()?;
    match w.letters() {
        [Letter::Control { symbol, inverse: false }] => Some(Generator::Control(*symbol)),
        [Letter::Symmetric(k)] => Some(Generator::Symmetric(*k)),
        _ => None,
    }
}

pub fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Subgroup generator words, one per line, `#` comments.
pub fn parse_word_list(text: &str) -> Result<Vec<Word>, PresentationError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        out.push(line.parse().map_err(|e: WordError| PresentationError::Syntax {
            line: n + 1,
            msg: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Least cyclic rotation of `w` or of its inverse.
fn canonical_cyclic(w: &Word) -> Word {
    let w = w.cyclic_reduce();
    let n = w.len();
    let inv = w.inverse();
    let mut best = w.clone();
    for base in [&w, &inv] {
        let letters = base.letters();
        for k in 0..n {
            let rot: Vec<Letter> = letters[k..].iter().chain(&letters[..k]).copied().collect();
            let rot = Word::from_letters(rot);
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Presentation of `group` on its generators (named by `symbols`) whose
/// relators are the cycles closed by the non-tree edges of a breadth-first
/// spanning tree of the Cayley graph. Relators are cyclically reduced and
/// stored as the least rotation of themselves or their inverse.
pub fn cayley_presentation(
    group: &PermutationGroup,
    symbols: &[char],
    bound: u128,
) -> Result<Presentation, PresentationError> {
    let order = group.order();
    if order > bound {
        return Err(PresentationError::OrderTooLarge { order, bound });
    }
    let gens = group.generators();
    let mut moves: Vec<(Letter, Permutation)> = Vec::new();
    for (&s, g) in symbols.iter().zip(gens) {
        moves.push((Letter::control(s), g.clone()));
        moves.push((Letter::control(s).inverse(), g.inverse()));
    }
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![group.identity()];
    let mut tree_word: Vec<Word> = vec![Word::empty()];
    // Tree edge into each element: (parent, letter)
    let mut tree_edge: Vec<Option<(usize, Letter)>> = vec![None];
    index.insert(group.identity(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (letter, m) in &moves {
            let next = &elements[i] * m;
            if !index.contains_key(&next) {
                let j = elements.len();
                index.insert(next.clone(), j);
                elements.push(next);
                tree_word.push(tree_word[i].concat(&Word::letter(*letter)));
                tree_edge.push(Some((i, *letter)));
                queue.push_back(j);
            }
        }
    }
    let mut relators = Vec::new();
    for i in 0..elements.len() {
        for (&s, g) in symbols.iter().zip(gens) {
            let letter = Letter::control(s);
            let j = index[&(&elements[i] * g)];
            let is_tree = tree_edge[j] == Some((i, letter)) || tree_edge[i] == Some((j, letter.inverse()));
            if is_tree {
                continue;
            }
            let cycle = tree_word[i]
                .concat(&Word::letter(letter))
                .concat(&tree_word[j].inverse());
            let cycle = canonical_cyclic(&cycle);
            if !cycle.is_empty() {
                relators.push(cycle);
            }
        }
    }
    let generators = symbols
        .iter()
        .take(gens.len())
        .map(|&c| Generator::Control(c))
        .collect();
    Presentation::new(generators, relators)
}

/// Outcome of checking a presentation against a concrete group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationCheck {
    Holds,
    Fails(String),
    /// Enumeration over the trivial subgroup hit the definition limit.
    Indeterminate(String),
}

impl PresentationCheck {
    pub fn holds(&self) -> bool {
        matches!(self, PresentationCheck::Holds)
    }
}

/// Checks that every relator evaluates to the identity on `group`'s generators
/// and that enumeration over the trivial subgroup gives exactly `|group|` cosets.
/// The presentation's control generators are matched to `group`'s generators
/// in order.
pub fn verify_presentation(
    presentation: &Presentation,
    group: &PermutationGroup,
    options: &EnumerationOptions,
) -> PresentationCheck {
    let symbols = presentation.control_symbols();
    if symbols.len() != group.generators().len() || symbols.len() != presentation.generators().len() {
        return PresentationCheck::Fails("generator arity differs".into());
    }
    let assignment = match Assignment::from_control(&symbols, group.generators()) {
        Ok(a) => a,
        Err(e) => return PresentationCheck::Fails(e.to_string()),
    };
    for r in presentation.relators() {
        match r.evaluate(&assignment) {
            Ok(p) if p.is_identity() => {}
            Ok(_) => return PresentationCheck::Fails(format!("relator {r} is not the identity")),
            Err(e) => return PresentationCheck::Fails(e.to_string()),
        }
    }
    match enumerate(presentation, &[], options) {
        Ok(e) if e.index() as u128 == group.order() => PresentationCheck::Holds,
        Ok(e) => PresentationCheck::Fails(format!(
            "enumeration gives {} cosets, group order is {}",
            e.index(),
            group.order()
        )),
        Err(err @ EnumerationError::LimitExceeded { .. }) => PresentationCheck::Indeterminate(err.to_string()),
        Err(err) => PresentationCheck::Fails(err.to_string()),
    }
}

/// A presentation that has passed [`verify_presentation`] against its group.
#[derive(Debug, Clone)]
pub struct VerifiedPresentation {
    presentation: Presentation,
    group: PermutationGroup,
}

impl VerifiedPresentation {
    pub fn verify(
        presentation: Presentation,
        group: &PermutationGroup,
        options: &EnumerationOptions,
    ) -> Result<Self, PresentationError> {
        match verify_presentation(&presentation, group, options) {
            PresentationCheck::Holds => Ok(VerifiedPresentation {
                presentation,
                group: group.clone(),
            }),
            PresentationCheck::Fails(why) | PresentationCheck::Indeterminate(why) => {
                Err(PresentationError::Unverified(why))
            }
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }
}

/// One defining relation `(w t_i)^k` of a progenitor quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTriple {
    pub control: Word,
    pub letter: usize,
    pub exponent: u32,
}

impl fmt::Display for RelationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} t{})^{}", self.control, self.letter, self.exponent)
    }
}

/// A progenitor `2^*n : N` with control group `N` given by named permutations,
/// and the relations factored out.
#[derive(Debug, Clone)]
pub struct ProgenitorSpec {
    symbols: Vec<char>,
    control: PermutationGroup,
    relations: Vec<RelationTriple>,
}

impl ProgenitorSpec {
    pub fn new(
        symbols: Vec<char>,
        generators: Vec<Permutation>,
        relations: Vec<RelationTriple>,
    ) -> Result<Self, PresentationError> {
        let degree = generators.first().map_or(1, |g| g.degree());
        let control = PermutationGroup::new(degree, generators)?;
        if !control.is_transitive() {
            return Err(PresentationError::NotTransitive(degree));
        }
        let assignment = Assignment::from_control(&symbols, control.generators())?;
        for r in &relations {
            if !r.control.is_control_only() || r.letter == 0 || r.letter > degree {
                return Err(PresentationError::ControlWordOutside(r.to_string()));
            }
            let p = r.control.evaluate(&assignment)?;
            if !control.contains(&p) {
                return Err(PresentationError::ControlWordOutside(r.control.to_string()));
            }
        }
        Ok(ProgenitorSpec {
            symbols,
            control,
            relations,
        })
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn control(&self) -> &PermutationGroup {
        &self.control
    }

    pub fn degree(&self) -> usize {
        self.control.degree()
    }

    pub fn relations(&self) -> &[RelationTriple] {
        &self.relations
    }

    pub fn without_relations(&self) -> Self {
        ProgenitorSpec {
            relations: Vec::new(),
            ..self.clone()
        }
    }

    pub fn assignment(&self) -> Assignment {
        Assignment::from_control(&self.symbols, self.control.generators()).expect("same degree")
    }

    /// Word in the control generators mapping letter 1 to `letter`.
    pub fn transversal_word(&self, letter: usize) -> Result<Word, WordError> {
        transversal_word(&self.control, &self.symbols, letter)
    }

    /// `(c t_i)^k` with the control part collected on the left.
    pub fn expand(&self, relation: &RelationTriple) -> Result<crate::words::ExpandedRelator, WordError> {
        let c = relation.control.evaluate(&self.assignment())?;
        Ok(expand_progenitor_relator(
            &relation.control,
            &c,
            relation.letter,
            relation.exponent,
        ))
    }

    /// Reads the progenitor file format:
    ///
    /// ```text
    /// degree 32
    /// x = (1,2)(3,5,...)
    /// y = (1,3)(2,4)...
    /// relation x^5y^3 | 1 | 3
    /// include control.perm
    /// ```
    ///
    /// Single-letter names are control generators, in order of appearance;
    /// longer names are ignored here. `include` names are passed to `resolve`.
    pub fn parse_with(
        text: &str,
        resolve: &dyn Fn(&str) -> Result<String, PresentationError>,
    ) -> Result<Self, PresentationError> {
        let mut lines = Vec::new();
        collect_lines(text, resolve, &mut lines, 0)?;
        let named = parse_named_permutations(&lines)?;
        let mut symbols = Vec::new();
        let mut gens = Vec::new();
        for (name, p) in named {
            let mut chars = name.chars();
            if let (Some(c), None) = (chars.next(), chars.next()) {
                if c != 't' {
                    symbols.push(c);
                    gens.push(p);
                }
            }
        }
        let mut relations = Vec::new();
        for (n, line) in &lines {
            if let Some(rest) = line.strip_prefix("relation") {
                let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
                let bad = |msg: &str| PresentationError::Syntax {
                    line: *n,
                    msg: msg.to_string(),
                };
                if parts.len() != 3 {
                    return Err(bad("expected `relation <word> | <letter> | <exponent>`"));
                }
                relations.push(RelationTriple {
                    control: parts[0].parse().map_err(|e: WordError| bad(&e.to_string()))?,
                    letter: parts[1].parse().map_err(|_| bad("bad letter"))?,
                    exponent: parts[2].parse().map_err(|_| bad("bad exponent"))?,
                });
            }
        }
        ProgenitorSpec::new(symbols, gens, relations)
    }

    /// Parses with `include` paths taken relative to `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self, PresentationError> {
        let resolve = |name: &str| -> Result<String, PresentationError> {
            let path = match base {
                Some(b) => b.join(name),
                None => name.into(),
            };
            Ok(std::fs::read_to_string(path)?)
        };
        ProgenitorSpec::parse_with(text, &resolve)
    }

    pub fn load(path: &Path) -> Result<Self, PresentationError> {
        let text = std::fs::read_to_string(path)?;
        ProgenitorSpec::parse(&text, path.parent())
    }
}

fn collect_lines(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, PresentationError>,
    out: &mut Vec<(usize, String)>,
    depth: usize,
) -> Result<(), PresentationError> {
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("include ") {
            if depth > 4 {
                return Err(PresentationError::Syntax {
                    line: n + 1,
                    msg: "include nesting too deep".into(),
                });
            }
            let inner = resolve(rest.trim())?;
            collect_lines(&inner, resolve, out, depth + 1)?;
            continue;
        }
        out.push((n + 1, line.to_string()));
    }
    Ok(())
}

/// Parses `degree N` and `name = cycles` lines; a line starting with `(`
/// continues the previous permutation.
pub fn parse_named_permutations(lines: &[(usize, String)]) -> Result<Vec<(String, Permutation)>, PresentationError> {
    let mut degree = None;
    let mut pending: Vec<(usize, String, String)> = Vec::new();
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix("degree") {
            degree = Some(rest.trim().parse::<usize>().map_err(|_| PresentationError::Syntax {
                line: *n,
                msg: "bad degree".into(),
            })?);
        } else if line.starts_with('(') {
            match pending.last_mut() {
                Some((_, _, cycles)) => cycles.push_str(line),
                None => {
                    return Err(PresentationError::Syntax {
                        line: *n,
                        msg: "cycles without a name".into(),
                    })
                }
            }
        } else if let Some((name, cycles)) = line.split_once('=') {
            if !line.starts_with("relation") {
                pending.push((*n, name.trim().to_string(), cycles.trim().to_string()));
            }
        }
    }
    let degree = degree.ok_or(PresentationError::Syntax {
        line: 0,
        msg: "missing `degree` line".into(),
    })?;
    pending
        .into_iter()
        .map(|(n, name, cycles)| {
            Permutation::parse_with_degree(&cycles, degree)
                .map(|p| (name, p))
                .map_err(|e| PresentationError::Syntax {
                    line: n,
                    msg: e.to_string(),
                })
        })
        .collect()
}

/// Schreier generators of the stabilizer of `point`, as words in the control
/// symbols, deduplicated by value. Returns `(word, permutation)` pairs.
pub fn stabilizer_schreier_words(
    group: &PermutationGroup,
    symbols: &[char],
    point: usize,
) -> Result<Vec<(Word, Permutation)>, PresentationError> {
    let assignment = Assignment::from_control(symbols, group.generators())?;
    let orbit = group.orbit(point).map_err(|_| WordError::NotInOrbit(point))?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &p in orbit.points() {
        let u_p = Word::from_generator_path(&orbit.word_to(p).expect("orbit point"), symbols);
        for (gi, g) in group.generators().iter().enumerate() {
            let q = g.image(p);
            let u_q = Word::from_generator_path(&orbit.word_to(q).expect("orbit point"), symbols);
            let w = u_p
                .concat(&Word::letter(Letter::control(symbols[gi])))
                .concat(&u_q.inverse())
                .free_reduce();
            let value = w.evaluate(&assignment)?;
            if !value.is_identity() && seen.insert(value.clone()) {
                out.push((w, value));
            }
        }
    }
    Ok(out)
}

/// Relators of the progenitor quotient on the control symbols and one
/// symmetric generator `t1`: the control relators, `[t1, s]` for each Schreier
/// generator `s` of the stabilizer of letter 1, and `(w u_i^-1 t1 u_i)^k` for
/// each relation `(w, i, k)`, where `u_i` maps letter 1 to `i`.
pub fn build_progenitor_quotient_presentation(
    spec: &ProgenitorSpec,
    control: &VerifiedPresentation,
) -> Result<Presentation, PresentationError> {
    let t = Word::symmetric(1);
    let mut generators: Vec<Generator> = spec.symbols().iter().map(|&c| Generator::Control(c)).collect();
    generators.push(Generator::Symmetric(1));
    let mut relators: Vec<Word> = control.presentation().relators().to_vec();
    for (s, _) in stabilizer_schreier_words(spec.control(), spec.symbols(), 1)? {
        relators.push(t.concat(&s.inverse()).concat(&t).concat(&s));
    }
    for rel in spec.relations() {
        let u = spec.transversal_word(rel.letter)?;
        let t_i = t.conjugate(&u);
        relators.push(rel.control.concat(&t_i).pow(rel.exponent as i64));
    }
    Presentation::new(generators, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_with_degree(s, n).unwrap()
    }

    #[test]
    fn cyclic_group_presentation() {
        let c3 = PermutationGroup::new(3, vec![perm(3, "(1,2,3)")]).unwrap();
        let p = cayley_presentation(&c3, &['a'], DEFAULT_CAYLEY_BOUND).unwrap();
        assert_eq!(p.relators(), &["a^3".parse::<Word>().unwrap()]);
        assert!(verify_presentation(&p, &c3, &EnumerationOptions::default()).holds());
    }

    #[test]
    fn wrong_presentations_fail() {
        let c3 = PermutationGroup::new(3, vec![perm(3, "(1,2,3)")]).unwrap();
        let opts = EnumerationOptions::default();
        let square = Presentation::parse("a^2").unwrap();
        assert!(matches!(
            verify_presentation(&square, &c3, &opts),
            PresentationCheck::Fails(_)
        ));
        let sixth = Presentation::parse("a^6").unwrap();
        assert!(matches!(
            verify_presentation(&sixth, &c3, &opts),
            PresentationCheck::Fails(_)
        ));
    }

    #[test]
    fn infinite_presentation_is_indeterminate() {
        let z = PermutationGroup::new(3, vec![perm(3, "(1,2,3)")]).unwrap();
        let p = Presentation::new(vec![Generator::Control('a')], vec![]).unwrap();
        let opts = EnumerationOptions {
            max_definitions: 100,
            ..Default::default()
        };
        assert!(matches!(
            verify_presentation(&p, &z, &opts),
            PresentationCheck::Indeterminate(_)
        ));
    }

    #[test]
    fn order_bound_is_enforced() {
        let s4 = PermutationGroup::new(4, vec![perm(4, "(1,2)"), perm(4, "(1,2,3,4)")]).unwrap();
        assert!(matches!(
            cayley_presentation(&s4, &['a', 'b'], 10),
            Err(PresentationError::OrderTooLarge { order: 24, bound: 10 })
        ));
    }

    #[test]
    fn undeclared_generator_rejected() {
        let r = vec!["ab".parse().unwrap()];
        assert!(Presentation::new(vec![Generator::Control('a')], r).is_err());
    }

    #[test]
    fn parse_and_print() {
        let p = Presentation::parse("# S3\ngenerators: a b\nb^2\na^2 # involution\n(ab)^3\n").unwrap();
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[0].to_string(), "a^2");
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn trivial_control_group_progenitor() {
        let spec = ProgenitorSpec::new(vec![], vec![], vec![]);
        // the trivial group on one letter has no generators; build it by hand
        assert!(spec.is_ok());
        let spec = spec.unwrap();
        let control = VerifiedPresentation::verify(
            Presentation::new(vec![], vec![]).unwrap(),
            spec.control(),
            &EnumerationOptions::default(),
        )
        .unwrap();
        let p = build_progenitor_quotient_presentation(&spec, &control).unwrap();
        assert_eq!(p.generators(), &[Generator::Symmetric(1)]);
        let e = enumerate(&p, &[], &EnumerationOptions::default()).unwrap();
        assert_eq!(e.index(), 2);
    }
}
