//! Permutation groups given by generators, with a lazily built stabilizer chain.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::perm::Permutation;
use crate::union_find::DisjointSets;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range 1..{degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("element is not a member of the group")]
    NotMember,
    #[error("subgroup generator is not contained in the group")]
    NotSubgroup,
}

/// One level of a stabilizer chain: the orbit of the base point under the
/// level's strong generators, with a transversal element per orbit point.
#[derive(Debug, Clone)]
struct Level {
    base: u32,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `(u, u^-1)` with `base^u = point`, indexed by zero-based point.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    /// For each orbit position, how many generators have been applied to it.
    processed: Vec<usize>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let e = Permutation::identity(degree);
        transversal[base as usize] = Some((e.clone(), e));
        Level {
            base,
            generators: Vec::new(),
            orbit: vec![base],
            transversal,
            processed: vec![0],
        }
    }
}

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// Base points are the first points moved by the elements that force a new
/// level, so the chain depends only on the order of insertion.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize) -> Self {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain::new(degree);
        for g in generators {
            chain.insert(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// One-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base as usize + 1).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// All strong generators, without repetition, in insertion order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for level in &self.levels {
            for g in &level.generators {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Strips `g` through the chain from level `start`. Returns the residue
    /// and the level at which stripping stopped.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.sift_from(g, 0)
    }

    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let p = h.as_slice()[level.base as usize] as usize;
            match &level.transversal[p] {
                Some((_, u_inv)) => h = &h * u_inv,
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    /// Adds `g` to the group. Returns whether the group grew.
    pub fn insert(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "permutation degree mismatch");
        self.insert_from(0, g)
    }

    fn insert_from(&mut self, start: usize, g: &Permutation) -> bool {
        let (h, depth) = self.sift_from(g, start);
        if h.is_identity() {
            return false;
        }
        if depth == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue") - 1;
            self.levels.push(Level::new(base as u32, self.degree));
        }
        for level in &mut self.levels[start..=depth] {
            level.generators.push(h.clone());
        }
        for i in (start..=depth).rev() {
            self.close(i);
        }
        true
    }

    /// Extends the orbit at level `i` and feeds every new Schreier generator
    /// into the levels below.
    fn close(&mut self, i: usize) {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            loop {
                let level = &mut self.levels[i];
                if level.processed[k] >= level.generators.len() {
                    break;
                }
                let s = level.generators[level.processed[k]].clone();
                level.processed[k] += 1;
                let p = level.orbit[k] as usize;
                let q = s.as_slice()[p] as usize;
                let u_p = &level.transversal[p].as_ref().expect("orbit point").0;
                let u_ps = u_p * &s;
                match &level.transversal[q] {
                    None => {
                        let inv = u_ps.inverse();
                        level.transversal[q] = Some((u_ps, inv));
                        level.orbit.push(q as u32);
                        level.processed.push(0);
                    }
                    Some((_, u_q_inv)) => {
                        let schreier = &u_ps * u_q_inv;
                        if !schreier.is_identity() {
                            self.insert_from(i + 1, &schreier);
                        }
                    }
                }
            }
            k += 1;
        }
    }
}

/// Orbit of a point together with a breadth-first Schreier tree.
#[derive(Debug, Clone)]
pub struct Orbit {
    seed: usize,
    points: Vec<usize>,
    /// For each zero-based point in the orbit other than the seed, the
    /// predecessor point and the generator index reaching it.
    tree: Vec<Option<(usize, usize)>>,
}

impl Orbit {
    pub fn seed(&self) -> usize {
        self.seed
    }

    /// One-based points in discovery order.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        point == self.seed || self.tree.get(point - 1).is_some_and(|t| t.is_some())
    }

    /// Generator indices whose left-to-right product maps the seed to `point`.
    pub fn word_to(&self, point: usize) -> Option<Vec<usize>> {
        if !self.contains(point) {
            return None;
        }
        let mut word = Vec::new();
        let mut p = point;
        while p != self.seed {
            let (prev, gen) = self.tree[p - 1].expect("tree edge");
            word.push(gen);
            p = prev;
        }
        word.reverse();
        Some(word)
    }
}

/// Permutation action of a group on the right cosets of a subgroup.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub group: PermutationGroup,
    /// Coset representatives in the numbering of the action.
    pub representatives: Vec<Permutation>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A nontrivial block containing point 1.
    Imprimitive {
        block: Vec<usize>,
    },
}

#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermutationGroup {
    /// Group generated by `generators`; an empty list gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    fn from_chain(degree: usize, generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermutationGroup {
            degree,
            generators,
            chain: lock,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::from_generators(self.degree, &self.generators))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_point(&self, point: usize) -> Result<(), GroupError> {
        if point == 0 || point > self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Breadth-first orbit of `point`, generators tried in their stored order.
    pub fn orbit(&self, point: usize) -> Result<Orbit, GroupError> {
        self.check_point(point)?;
        let mut tree = vec![None; self.degree];
        let mut seen = vec![false; self.degree];
        seen[point - 1] = true;
        let mut points = vec![point];
        let mut k = 0;
        while k < points.len() {
            let p = points[k];
            for (gi, g) in self.generators.iter().enumerate() {
                let q = g.image(p);
                if !seen[q - 1] {
                    seen[q - 1] = true;
                    tree[q - 1] = Some((p, gi));
                    points.push(q);
                }
            }
            k += 1;
        }
        Ok(Orbit {
            seed: point,
            points,
            tree,
        })
    }

    /// All orbits, each in discovery order, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if seen[p - 1] {
                continue;
            }
            let orbit = self.orbit(p).expect("point in range");
            for &q in orbit.points() {
                seen[q - 1] = true;
            }
            out.push(orbit.points().to_vec());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(1).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Element of the group, as a product of generators, mapping `seed` to each
    /// orbit point. Index by zero-based point.
    fn orbit_transversal(&self, orbit: &Orbit) -> Vec<Option<Permutation>> {
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree];
        reps[orbit.seed() - 1] = Some(self.identity());
        for &q in &orbit.points()[1..] {
            let (prev, gen) = orbit.tree[q - 1].expect("tree edge");
            let rep = reps[prev - 1].as_ref().expect("parent first") * &self.generators[gen];
            reps[q - 1] = Some(rep);
        }
        reps
    }

    /// Deduplicated nontrivial Schreier generators of the stabilizer of `point`.
    pub fn stabilizer_generators(&self, point: usize) -> Result<Vec<Permutation>, GroupError> {
        let orbit = self.orbit(point)?;
        let reps = self.orbit_transversal(&orbit);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &p in orbit.points() {
            let u_p = reps[p - 1].as_ref().expect("orbit point");
            for g in &self.generators {
                let q = g.image(p);
                let u_q = reps[q - 1].as_ref().expect("orbit point");
                let s = &(u_p * g) * &u_q.inverse();
                if !s.is_identity() && seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermutationGroup, GroupError> {
        Ok(PermutationGroup::new(self.degree, self.stabilizer_generators(point)?).expect("same degree"))
    }

    /// Smallest subgroup containing `seeds` and normalized by this group's generators.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermutationGroup, GroupError> {
        if let Some(s) = seeds.iter().find(|s| s.degree() != self.degree) {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: s.degree(),
            });
        }
        let mut chain = StabilizerChain::new(self.degree);
        let mut gens = Vec::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for s in seeds {
            if chain.insert(s) {
                gens.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        while let Some(k) = queue.pop_front() {
            for g in &self.generators {
                let c = k.conjugate(g);
                if chain.insert(&c) {
                    gens.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        Ok(PermutationGroup::from_chain(self.degree, gens, chain))
    }

    /// Normal closure of the commutators of all generator pairs.
    pub fn derived_subgroup(&self) -> PermutationGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms).expect("same degree")
    }

    /// Derived series down to its terminal member (inclusive).
    pub fn derived_series(&self) -> Vec<PermutationGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether conjugation by each of `by` maps this group into itself.
    pub fn is_normalized_by(&self, by: &[Permutation]) -> bool {
        by.iter()
            .all(|n| self.generators.iter().all(|g| self.contains(&g.conjugate(n))))
    }

    /// Minimal block containing points 1 and `q`, by union-find closure.
    fn minimal_block(&self, q: usize) -> Vec<usize> {
        let mut ds = DisjointSets::new(self.degree);
        let mut pending = vec![(0usize, q - 1)];
        ds.union(0, q - 1);
        while let Some((a, b)) = pending.pop() {
            for g in &self.generators {
                let ga = g.as_slice()[a] as usize;
                let gb = g.as_slice()[b] as usize;
                if ds.union(ga, gb).is_some() {
                    pending.push((ga, gb));
                }
            }
        }
        let root = ds.find(0);
        (0..self.degree)
            .filter(|&p| ds.find(p) == root)
            .map(|p| p + 1)
            .collect()
    }

    /// Primitivity test for a transitive group.
    pub fn is_primitive(&self) -> Result<Primitivity, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        if self.degree <= 2 {
            return Ok(Primitivity::Primitive);
        }
        // A block through 1 is a union of orbits of the stabilizer of 1, so one
        // representative per such orbit suffices.
        let stab = self.stabilizer(1)?;
        for orbit in stab.orbits() {
            let q = orbit[0];
            if q == 1 {
                continue;
            }
            let block = self.minimal_block(q);
            if block.len() < self.degree {
                return Ok(Primitivity::Imprimitive { block });
            }
        }
        Ok(Primitivity::Primitive)
    }

    /// Size of the conjugacy class of `p` in this group.
    pub fn class_size(&self, p: &Permutation) -> Result<u128, GroupError> {
        if !self.contains(p) {
            return Err(GroupError::NotMember);
        }
        let mut seen = HashSet::new();
        seen.insert(p.clone());
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(c) = queue.pop_front() {
            for g in &self.generators {
                let d = c.conjugate(g);
                if seen.insert(d.clone()) {
                    queue.push_back(d);
                }
            }
        }
        Ok(seen.len() as u128)
    }

    pub fn centralizer_order(&self, p: &Permutation) -> Result<u128, GroupError> {
        Ok(self.order() / self.class_size(p)?)
    }

    /// Action on the right cosets of `⟨subgroup⟩`, numbered breadth-first from the
    /// subgroup itself with generators in stored order.
    pub fn coset_action(&self, subgroup: &[Permutation]) -> Result<CosetAction, GroupError> {
        if subgroup.iter().any(|h| !self.contains(h)) {
            return Err(GroupError::NotSubgroup);
        }
        let sub = PermutationGroup::new(self.degree, subgroup.to_vec())?;
        let mut reps: Vec<Permutation> = vec![self.identity()];
        let mut rep_inverses: Vec<Permutation> = vec![self.identity()];
        let mut images: Vec<Vec<usize>> = vec![Vec::new(); self.generators.len()];
        let mut k = 0;
        while k < reps.len() {
            for (gi, g) in self.generators.iter().enumerate() {
                let c = &reps[k] * g;
                let found = rep_inverses.iter().position(|r_inv| sub.contains(&(&c * r_inv)));
                let idx = match found {
                    Some(j) => j,
                    None => {
                        rep_inverses.push(c.inverse());
                        reps.push(c);
                        reps.len() - 1
                    }
                };
                images[gi].push(idx + 1);
            }
            k += 1;
        }
        let gens = images
            .iter()
            .map(|im| Permutation::from_images(im).expect("coset action is a bijection"))
            .collect();
        Ok(CosetAction {
            group: PermutationGroup::new(reps.len(), gens)?,
            representatives: reps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_with_degree(s, n).unwrap()
    }

    fn s3() -> PermutationGroup {
        PermutationGroup::new(3, vec![perm(3, "(1,2)"), perm(3, "(1,2,3)")]).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(PermutationGroup::new(2, vec![perm(2, "(1,2)")]).unwrap().order(), 2);
        assert_eq!(s3().order(), 6);
        assert_eq!(PermutationGroup::trivial(5).order(), 1);
        assert!(s3().contains(&perm(3, "(2,3)")));
        assert!(!s3().contains(&perm(4, "(2,3)")));
    }

    #[test]
    fn orbit_words_reach_their_points() {
        let g = s3();
        let orbit = g.orbit(1).unwrap();
        assert_eq!(orbit.points(), &[1, 2, 3]);
        for &q in orbit.points() {
            let w = orbit.word_to(q).unwrap();
            let img = w.iter().fold(1, |p, &i| g.generators()[i].image(p));
            assert_eq!(img, q);
        }
        let trivial = PermutationGroup::trivial(6);
        assert_eq!(trivial.orbit(5).unwrap().points(), &[5]);
        assert!(g.orbit(4).is_err());
    }

    #[test]
    fn stabilizers() {
        let c3 = PermutationGroup::new(3, vec![perm(3, "(1,2,3)")]).unwrap();
        assert!(c3.stabilizer_generators(1).unwrap().is_empty());
        assert_eq!(s3().stabilizer(1).unwrap().order(), 2);
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(s3().derived_subgroup().order(), 3);
        let klein = PermutationGroup::new(4, vec![perm(4, "(1,2)(3,4)"), perm(4, "(1,3)(2,4)")]).unwrap();
        assert_eq!(klein.derived_subgroup().order(), 1);
        assert!(klein.is_abelian());
        let series: Vec<u128> = s3().derived_series().iter().map(|g| g.order()).collect();
        assert_eq!(series, vec![6, 3, 1]);
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let g = s3();
        assert_eq!(g.normal_closure(&[g.identity()]).unwrap().order(), 1);
        assert_eq!(g.normal_closure(&[perm(3, "(1,2)")]).unwrap().order(), 6);
    }

    #[test]
    fn primitivity() {
        let c4 = PermutationGroup::new(4, vec![perm(4, "(1,2,3,4)")]).unwrap();
        assert_eq!(
            c4.is_primitive().unwrap(),
            Primitivity::Imprimitive { block: vec![1, 3] }
        );
        assert_eq!(s3().is_primitive().unwrap(), Primitivity::Primitive);
        let intransitive = PermutationGroup::new(4, vec![perm(4, "(1,2)")]).unwrap();
        assert_eq!(intransitive.is_primitive(), Err(GroupError::NotTransitive));
    }

    #[test]
    fn class_sizes() {
        let g = s3();
        assert_eq!(g.class_size(&perm(3, "(1,2)")).unwrap(), 3);
        assert_eq!(g.class_size(&g.identity()).unwrap(), 1);
        assert_eq!(g.centralizer_order(&perm(3, "(1,2,3)")).unwrap(), 3);
        let c3 = PermutationGroup::new(3, vec![perm(3, "(1,2,3)")]).unwrap();
        assert_eq!(c3.class_size(&perm(3, "(1,2)")), Err(GroupError::NotMember));
    }

    #[test]
    fn coset_actions() {
        let g = s3();
        let whole = g.coset_action(g.generators()).unwrap();
        assert_eq!(whole.degree(), 1);
        let sign = g.coset_action(&[perm(3, "(1,2,3)")]).unwrap();
        assert_eq!(sign.degree(), 2);
        assert_eq!(sign.group.generators()[0], perm(2, "(1,2)"));
        assert!(sign.group.generators()[1].is_identity());
        let c3 = PermutationGroup::new(3, vec![perm(3, "(1,2,3)")]).unwrap();
        assert!(c3.coset_action(&[perm(3, "(1,2)")]).is_err());
    }

    #[test]
    fn empty_generator_list_is_trivial() {
        let g = PermutationGroup::new(7, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.derived_subgroup().order() == 1);
        assert!(PermutationGroup::new(3, vec![perm(4, "(1,2)")]).is_err());
    }
}
