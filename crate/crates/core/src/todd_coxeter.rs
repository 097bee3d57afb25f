//! Todd-Coxeter coset enumeration.
//!
//! Two strategies share one table: HLT (scan-and-fill every relator at every
//! coset, with periodic lookahead) and Felsch (define the first gap, then close
//! all consequences before the next definition). Coincidences are resolved
//! with a union-find over coset indices in which the smaller index survives.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;
use crate::presentation::Presentation;
use crate::union_find::DisjointSets;
use crate::words::{Generator, Letter, Word};

pub const DEFAULT_MAX_DEFINITIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy {other:?} (expected hlt or felsch)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    pub strategy: Strategy,
    /// Upper bound on cosets ever defined, including the subgroup coset.
    pub max_definitions: usize,
    /// HLT only: run a full lookahead pass whenever the live coset count
    /// passes this many, then double it.
    pub lookahead_threshold: usize,
    /// Randomizes relator scanning order (HLT) or deduction processing order
    /// (Felsch). The final standardized table does not depend on it.
    pub shuffle_seed: Option<u64>,
    pub trace: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            strategy: Strategy::Hlt,
            max_definitions: DEFAULT_MAX_DEFINITIONS,
            lookahead_threshold: 4096,
            shuffle_seed: None,
            trace: false,
        }
    }
}

impl EnumerationOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        EnumerationOptions {
            strategy,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub definitions: usize,
    pub max_live: usize,
    pub coincidences: usize,
    pub lookaheads: usize,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} definitions, max {} live cosets, {} coincidences",
            self.definitions, self.max_live, self.coincidences
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("limit exceeded: more than {limit} coset definitions ({stats})")]
    LimitExceeded { limit: usize, stats: Statistics },
    #[error("subgroup word uses generator {0} outside the presentation")]
    UnknownGenerator(String),
}

/// Column layout: one column per control generator and one per inverse;
/// symmetric generators are involutions and use a single column.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Columns {
    generators: Vec<Generator>,
    letters: Vec<Letter>,
    inverse: Vec<usize>,
}

impl Columns {
    fn new(generators: &[Generator]) -> Self {
        let mut letters = Vec::new();
        let mut inverse = Vec::new();
        for &g in generators {
            let c = letters.len();
            match g {
                Generator::Control(symbol) => {
                    letters.push(Letter::control(symbol));
                    letters.push(Letter::Control { symbol, inverse: true });
                    inverse.push(c + 1);
                    inverse.push(c);
                }
                Generator::Symmetric(k) => {
                    letters.push(Letter::Symmetric(k));
                    inverse.push(c);
                }
            }
        }
        Columns {
            generators: generators.to_vec(),
            letters,
            inverse,
        }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn column(&self, letter: Letter) -> Option<usize> {
        self.letters.iter().position(|&l| l == letter)
    }

    fn encode(&self, word: &Word) -> Result<Vec<usize>, EnumerationError> {
        word.letters()
            .iter()
            .map(|&l| {
                self.column(l)
                    .ok_or_else(|| EnumerationError::UnknownGenerator(l.generator().to_string()))
            })
            .collect()
    }

    fn name(&self, col: usize) -> String {
        Word::letter(self.letters[col]).to_string()
    }
}

/// A complete coset table. Cosets are numbered from 1; coset 1 is the subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    columns: Columns,
    /// `rows[(c - 1) * width + col]` is the image of coset `c` under column `col`.
    rows: Vec<u32>,
    cosets: usize,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.cosets
    }

    pub fn generators(&self) -> &[Generator] {
        &self.columns.generators
    }

    fn width(&self) -> usize {
        self.columns.len()
    }

    /// Image of `coset` under a letter of the alphabet.
    pub fn act(&self, coset: usize, letter: Letter) -> Option<usize> {
        let col = self.columns.column(letter)?;
        Some(self.rows[(coset - 1) * self.width() + col] as usize)
    }

    /// Image of `coset` under a word, read left to right.
    pub fn apply(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation of the cosets induced by each generator.
    pub fn coset_permutations(&self) -> BTreeMap<Generator, Permutation> {
        let w = self.width();
        let mut out = BTreeMap::new();
        for &g in &self.columns.generators {
            let col = self.columns.column(g.letter()).expect("declared generator");
            let images: Vec<u32> = (0..self.cosets).map(|c| self.rows[c * w + col] - 1).collect();
            out.insert(g, Permutation::from_zero_based(images));
        }
        out
    }

    /// Renumbers cosets breadth-first from coset 1, columns in order.
    pub fn standardize(&self) -> CosetTable {
        let w = self.width();
        let mut new_index = vec![0u32; self.cosets + 1];
        let mut order = vec![1usize];
        new_index[1] = 1;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for col in 0..w {
                let d = self.rows[(c - 1) * w + col] as usize;
                if new_index[d] == 0 {
                    order.push(d);
                    new_index[d] = order.len() as u32;
                }
            }
            k += 1;
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for &c in &order {
            for col in 0..w {
                rows.push(new_index[self.rows[(c - 1) * w + col] as usize]);
            }
        }
        CosetTable {
            columns: self.columns.clone(),
            rows,
            cosets: self.cosets,
        }
    }

    pub fn is_standard(&self) -> bool {
        *self == self.standardize()
    }

    /// Whether every relator closes at every coset.
    pub fn is_closed_under(&self, relators: &[Word]) -> bool {
        relators
            .iter()
            .all(|r| (1..=self.cosets).all(|c| self.apply(c, r) == Some(c)))
    }

    /// Plain-text rendering, one row per coset.
    pub fn render(&self) -> String {
        let w = self.width();
        let mut out = String::from("coset");
        for col in 0..w {
            out.push_str(&format!("\t{}", self.columns.name(col)));
        }
        out.push('\n');
        for c in 0..self.cosets {
            out.push_str(&(c + 1).to_string());
            for col in 0..w {
                out.push_str(&format!("\t{}", self.rows[c * w + col]));
            }
            out.push('\n');
        }
        out
    }
}

/// Outcome of a successful enumeration.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Standardized table.
    pub table: CosetTable,
    pub stats: Statistics,
    /// `DEF coset gen -> coset` and `COI a=b` lines, when tracing was requested.
    pub trace: Vec<String>,
}

impl Enumeration {
    pub fn index(&self) -> usize {
        self.table.num_cosets()
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `presentation`.
pub fn enumerate(
    presentation: &Presentation,
    subgroup: &[Word],
    options: &EnumerationOptions,
) -> Result<Enumeration, EnumerationError> {
    let columns = Columns::new(presentation.generators());
    let relators = presentation
        .relators()
        .iter()
        .map(|r| columns.encode(r))
        .collect::<Result<Vec<_>, _>>()?;
    let subgroup = subgroup
        .iter()
        .map(|w| columns.encode(&w.free_reduce()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut e = Enumerator::new(columns, options);
    match options.strategy {
        Strategy::Hlt => e.run_hlt(&relators, &subgroup)?,
        Strategy::Felsch => e.run_felsch(&relators, &subgroup)?,
    }
    // Final safety net: any scan that does not close is finished HLT-style.
    e.close_all(&relators)?;
    let table = e.compact().standardize();
    Ok(Enumeration {
        table,
        stats: e.stats,
        trace: e.trace.unwrap_or_default(),
    })
}

struct Enumerator {
    columns: Columns,
    width: usize,
    inv: Vec<usize>,
    /// Flat table, row 0 unused, 0 = undefined.
    table: Vec<u32>,
    uf: DisjointSets,
    live: usize,
    limit: usize,
    stats: Statistics,
    trace: Option<Vec<String>>,
    deductions: Vec<(usize, usize)>,
    rng: Option<ChaCha8Rng>,
    lookahead_at: usize,
}

impl Enumerator {
    fn new(columns: Columns, options: &EnumerationOptions) -> Self {
        let width = columns.len();
        let inv = columns.inverse.clone();
        Enumerator {
            columns,
            width,
            inv,
            table: vec![0; 2 * width],
            // index 0 is a sentinel; coset 1 is the subgroup
            uf: DisjointSets::new(2),
            live: 1,
            limit: options.max_definitions.max(1),
            stats: Statistics {
                definitions: 1,
                max_live: 1,
                ..Default::default()
            },
            trace: options.trace.then(Vec::new),
            deductions: Vec::new(),
            rng: options.shuffle_seed.map(ChaCha8Rng::seed_from_u64),
            lookahead_at: options.lookahead_threshold.max(16),
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> usize {
        self.table[c * self.width + col] as usize
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, d: usize) {
        self.table[c * self.width + col] = d as u32;
    }

    #[inline]
    fn alive(&self, c: usize) -> bool {
        self.uf.is_root(c)
    }

    fn cosets_allocated(&self) -> usize {
        self.uf.len() - 1
    }

    fn limit_error(&self) -> EnumerationError {
        EnumerationError::LimitExceeded {
            limit: self.limit,
            stats: self.stats,
        }
    }

    fn define(&mut self, c: usize, col: usize) -> Result<usize, EnumerationError> {
        if self.stats.definitions >= self.limit {
            return Err(self.limit_error());
        }
        let d = self.uf.push();
        self.table.extend(std::iter::repeat_n(0, self.width));
        self.stats.definitions += 1;
        self.live += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        self.set(c, col, d);
        self.set(d, self.inv[col], c);
        if let Some(t) = self.trace.as_mut() {
            t.push(format!("DEF {c} {} -> {d}", self.columns.name(col)));
        }
        self.deductions.push((c, col));
        Ok(d)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        if let Some(dead) = self.uf.union(a, b) {
            self.live -= 1;
            queue.push(dead);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        if let Some(t) = self.trace.as_mut() {
            t.push(format!("COI {}={}", a.min(b), a.max(b)));
        }
        self.stats.coincidences += 1;
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let e = queue[qi];
            qi += 1;
            for x in 0..self.width {
                let f = self.get(e, x);
                if f == 0 {
                    continue;
                }
                let xi = self.inv[x];
                self.set(f, xi, 0);
                let mu = self.uf.find(e);
                let nu = self.uf.find(f);
                let mu_x = self.get(mu, x);
                if mu_x != 0 {
                    self.merge(nu, mu_x, &mut queue);
                    continue;
                }
                let nu_xi = self.get(nu, xi);
                if nu_xi != 0 {
                    self.merge(mu, nu_xi, &mut queue);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, xi, mu);
                self.deductions.push((mu, x));
            }
        }
    }

    /// HLT scan: follows the relator from both ends, defining cosets to close
    /// the gap.
    fn scan_and_fill(&mut self, c: usize, rel: &[usize]) -> Result<(), EnumerationError> {
        if rel.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = rel.len() as isize - 1;
        loop {
            while i <= j {
                let next = self.get(f, rel[i as usize]);
                if next == 0 {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let next = self.get(b, self.inv[rel[j as usize]]);
                if next == 0 {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = rel[i as usize];
                self.set(f, x, b);
                self.set(b, self.inv[x], f);
                self.deductions.push((f, x));
                return Ok(());
            }
            self.define(f, rel[i as usize])?;
        }
    }

    /// Scan without defining: closes, deduces a single entry, or finds a coincidence.
    fn scan(&mut self, c: usize, rel: &[usize]) {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = rel.len() as isize - 1;
        while i <= j {
            let next = self.get(f, rel[i as usize]);
            if next == 0 {
                break;
            }
            f = next;
            i += 1;
        }
        if i > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j >= i {
            let next = self.get(b, self.inv[rel[j as usize]]);
            if next == 0 {
                break;
            }
            b = next;
            j -= 1;
        }
        if j < i {
            self.coincidence(f, b);
        } else if i == j {
            let x = rel[i as usize];
            self.set(f, x, b);
            self.set(b, self.inv[x], f);
            self.deductions.push((f, x));
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        self.stats.lookaheads += 1;
        let n = self.cosets_allocated();
        for c in 1..=n {
            for rel in relators {
                if !self.alive(c) {
                    break;
                }
                self.scan(c, rel);
            }
        }
        self.deductions.clear();
    }

    fn relator_order(&mut self, count: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..count).collect();
        if let Some(rng) = self.rng.as_mut() {
            for i in (1..count).rev() {
                let j = rng.gen_range(0..=i);
                order.swap(i, j);
            }
        }
        order
    }

    fn run_hlt(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), EnumerationError> {
        for w in subgroup {
            self.scan_and_fill(1, w)?;
        }
        let mut c = 1;
        while c <= self.cosets_allocated() {
            if self.alive(c) {
                let order = self.relator_order(relators.len());
                for &r in &order {
                    self.scan_and_fill(c, &relators[r])?;
                    if !self.alive(c) {
                        break;
                    }
                }
                for x in 0..self.width {
                    if !self.alive(c) {
                        break;
                    }
                    if self.get(c, x) == 0 {
                        self.define(c, x)?;
                    }
                }
            }
            self.deductions.clear();
            if self.live > self.lookahead_at {
                self.lookahead(relators);
                self.lookahead_at *= 2;
            }
            c += 1;
        }
        Ok(())
    }

    fn run_felsch(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), EnumerationError> {
        // Every cyclic conjugate of every relator and its inverse, by first column.
        let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.width];
        for rel in relators {
            let inverse: Vec<usize> = rel.iter().rev().map(|&x| self.inv[x]).collect();
            for word in [rel, &inverse] {
                for k in 0..word.len() {
                    let rot: Vec<usize> = word[k..].iter().chain(&word[..k]).copied().collect();
                    let bucket = &mut by_first[rot[0]];
                    if !bucket.contains(&rot) {
                        bucket.push(rot);
                    }
                }
            }
        }
        for w in subgroup {
            self.scan_and_fill(1, w)?;
        }
        self.process_deductions(&by_first);
        let mut c = 1;
        loop {
            while c <= self.cosets_allocated() && (!self.alive(c) || (0..self.width).all(|x| self.get(c, x) != 0)) {
                c += 1;
            }
            if c > self.cosets_allocated() {
                return Ok(());
            }
            let x = (0..self.width).find(|&x| self.get(c, x) == 0).expect("gap");
            self.define(c, x)?;
            self.process_deductions(&by_first);
        }
    }

    fn pop_deduction(&mut self) -> Option<(usize, usize)> {
        if self.deductions.is_empty() {
            return None;
        }
        match self.rng.as_mut() {
            Some(rng) => {
                let k = rng.gen_range(0..self.deductions.len());
                Some(self.deductions.swap_remove(k))
            }
            None => self.deductions.pop(),
        }
    }

    fn process_deductions(&mut self, by_first: &[Vec<Vec<usize>>]) {
        while let Some((a, x)) = self.pop_deduction() {
            if !self.alive(a) {
                continue;
            }
            for rel in &by_first[x] {
                self.scan(a, rel);
                if !self.alive(a) {
                    break;
                }
            }
            if !self.alive(a) {
                continue;
            }
            let b = self.get(a, x);
            if b == 0 || !self.alive(b) {
                continue;
            }
            for rel in &by_first[self.inv[x]] {
                self.scan(b, rel);
                if !self.alive(b) {
                    break;
                }
            }
        }
    }

    /// Scans every relator at every live coset, filling where needed, until the
    /// table is closed.
    fn close_all(&mut self, relators: &[Vec<usize>]) -> Result<(), EnumerationError> {
        loop {
            let before = (self.stats.definitions, self.stats.coincidences);
            let mut c = 1;
            while c <= self.cosets_allocated() {
                if self.alive(c) {
                    for rel in relators {
                        self.scan_and_fill(c, rel)?;
                        if !self.alive(c) {
                            break;
                        }
                    }
                    for x in 0..self.width {
                        if self.alive(c) && self.get(c, x) == 0 {
                            self.define(c, x)?;
                        }
                    }
                }
                c += 1;
            }
            self.deductions.clear();
            if (self.stats.definitions, self.stats.coincidences) == before {
                return Ok(());
            }
        }
    }

    /// Live rows, renumbered in increasing order of their current index.
    fn compact(&mut self) -> CosetTable {
        let n = self.cosets_allocated();
        let mut index = vec![0u32; n + 1];
        let mut live = Vec::new();
        for (c, slot) in index.iter_mut().enumerate().skip(1) {
            if self.alive(c) {
                live.push(c);
                *slot = live.len() as u32;
            }
        }
        let mut rows = Vec::with_capacity(live.len() * self.width);
        for &c in &live {
            for x in 0..self.width {
                let d = self.get(c, x);
                debug_assert!(d != 0 && self.alive(d));
                rows.push(index[d]);
            }
        }
        CosetTable {
            columns: self.columns.clone(),
            rows,
            cosets: live.len(),
        }
    }
}
