//! Words over control generators (single letters with signed powers) and
//! symmetric generators `t1, t2, ...` (involutions).
//!
//! Grammar: letters `a`..`z` other than `t` are control generators, `t<k>` is
//! the k-th symmetric generator, `^<int>` raises the preceding item to a power,
//! `*` is an optional separator and parentheses group. `1` is the empty word.
//! LaTeX-flavoured input (`t_{18}`, `x^{-1}`, `t_2`) is accepted as well.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::PermutationGroup;
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("no permutation assigned to {0}")]
    Unassigned(String),
    #[error("assigned permutations have differing degrees")]
    DegreeMismatch,
    #[error("point {0} is not in the orbit of 1")]
    NotInOrbit(usize),
}

/// A single letter of a word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    /// Control generator `symbol`, or its inverse.
    Control { symbol: char, inverse: bool },
    /// Symmetric generator `t_k`; self-inverse.
    Symmetric(u32),
}

impl Letter {
    pub fn control(symbol: char) -> Self {
        Letter::Control { symbol, inverse: false }
    }

    pub fn inverse(self) -> Self {
        match self {
            Letter::Control { symbol, inverse } => Letter::Control {
                symbol,
                inverse: !inverse,
            },
            t @ Letter::Symmetric(_) => t,
        }
    }

    /// The generator this letter belongs to, ignoring sign.
    pub fn generator(self) -> Generator {
        match self {
            Letter::Control { symbol, .. } => Generator::Control(symbol),
            Letter::Symmetric(k) => Generator::Symmetric(k),
        }
    }
}

/// A generator of an alphabet: a control symbol or a symmetric letter index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    Control(char),
    Symmetric(u32),
}

impl Generator {
    pub fn is_involution(self) -> bool {
        matches!(self, Generator::Symmetric(_))
    }

    pub fn letter(self) -> Letter {
        match self {
            Generator::Control(symbol) => Letter::control(symbol),
            Generator::Symmetric(k) => Letter::Symmetric(k),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Control(c) => write!(f, "{c}"),
            Generator::Symmetric(k) => write!(f, "t{k}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letter(letter: Letter) -> Self {
        Word { letters: vec![letter] }
    }

    pub fn symmetric(k: u32) -> Self {
        Word::letter(Letter::Symmetric(k))
    }

    /// Word spelling the given generator indices of `symbols`, all positive.
    pub fn from_generator_path(path: &[usize], symbols: &[char]) -> Self {
        Word {
            letters: path.iter().map(|&i| Letter::control(symbols[i])).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `u^-1 self u`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    /// Cancels adjacent `s s^-1` pairs and `t_k t_k` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free reduction followed by cancellation between the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let mut lo = 0;
        let mut hi = w.letters.len();
        while hi - lo >= 2 && w.letters[lo] == w.letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: w.letters[lo..hi].to_vec(),
        }
    }

    /// Generators used by this word, sorted.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.letters.iter().map(|l| l.generator()).collect();
        gens.sort();
        gens.dedup();
        gens
    }

    pub fn symmetric_letters(&self) -> Vec<u32> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                Letter::Symmetric(k) => Some(*k),
                _ => None,
            })
            .collect()
    }

    pub fn is_control_only(&self) -> bool {
        self.letters.iter().all(|l| matches!(l, Letter::Control { .. }))
    }

    /// Left-to-right product of the assigned permutations.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Permutation, WordError> {
        let mut acc = Permutation::identity(assignment.degree);
        for &l in &self.letters {
            let p = assignment.get(l)?;
            acc = &acc * p;
        }
        Ok(acc)
    }
}

/// Permutations assigned to generators, with inverses precomputed.
#[derive(Debug, Clone)]
pub struct Assignment {
    degree: usize,
    values: BTreeMap<Letter, Permutation>,
}

impl Assignment {
    pub fn new(degree: usize) -> Self {
        Assignment {
            degree,
            values: BTreeMap::new(),
        }
    }

    /// Assigns the control generators `symbols[i] -> perms[i]`.
    pub fn from_control(symbols: &[char], perms: &[Permutation]) -> Result<Self, WordError> {
        let degree = perms.first().map_or(0, |p| p.degree());
        let mut a = Assignment::new(degree);
        for (&s, p) in symbols.iter().zip(perms) {
            a.set(Generator::Control(s), p.clone())?;
        }
        Ok(a)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&mut self, generator: Generator, value: Permutation) -> Result<(), WordError> {
        if value.degree() != self.degree {
            return Err(WordError::DegreeMismatch);
        }
        match generator {
            Generator::Control(symbol) => {
                self.values
                    .insert(Letter::Control { symbol, inverse: true }, value.inverse());
                self.values.insert(Letter::control(symbol), value);
            }
            Generator::Symmetric(k) => {
                self.values.insert(Letter::Symmetric(k), value);
            }
        }
        Ok(())
    }

    pub fn get(&self, letter: Letter) -> Result<&Permutation, WordError> {
        self.values
            .get(&letter)
            .ok_or_else(|| WordError::Unassigned(letter.generator().to_string()))
    }
}

/// `(c t_i)^k` written as `c^k` followed by the letters
/// `t_{i^{c^(k-1)}}, ..., t_{i^c}, t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedRelator {
    pub control_part: Word,
    pub letters: Vec<usize>,
}

/// Moves every control element in `(c t_i)^k` to the front using
/// `t_j c = c t_{j^c}`. `control` is the permutation `c` acting on the letters.
pub fn expand_progenitor_relator(
    control_word: &Word,
    control: &Permutation,
    letter: usize,
    exponent: u32,
) -> ExpandedRelator {
    let mut letters = Vec::with_capacity(exponent as usize);
    let mut powers = Vec::with_capacity(exponent as usize);
    let mut j = letter;
    for _ in 0..exponent {
        powers.push(j);
        j = control.image(j);
    }
    // powers[m] = i^{c^m}; the letter in position m (from the left) is i^{c^(k-1-m)}.
    for m in (0..exponent as usize).rev() {
        letters.push(powers[m]);
    }
    ExpandedRelator {
        control_part: control_word.pow(exponent as i64),
        letters,
    }
}

/// Deterministic word in `group`'s generators (named by `symbols`) mapping 1 to `target`.
pub fn transversal_word(group: &PermutationGroup, symbols: &[char], target: usize) -> Result<Word, WordError> {
    let orbit = group.orbit(1).map_err(|_| WordError::NotInOrbit(target))?;
    let path = orbit.word_to(target).ok_or(WordError::NotInOrbit(target))?;
    Ok(Word::from_generator_path(&path, symbols))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            match self.letters[i] {
                Letter::Symmetric(k) => {
                    write!(f, "t{k}")?;
                    i += 1;
                }
                l @ Letter::Control { symbol, inverse } => {
                    let mut run = 1;
                    while i + run < self.letters.len() && self.letters[i + run] == l {
                        run += 1;
                    }
                    match (run, inverse) {
                        (1, false) => write!(f, "{symbol}")?,
                        (r, false) => write!(f, "{symbol}^{r}")?,
                        (r, true) => write!(f, "{symbol}^-{r}")?,
                    }
                    i += run;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let w = parser.word()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.error("unexpected character"));
        }
        Ok(w)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> WordError {
        WordError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace() || c == b'*') {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') => break,
                _ => {
                    let item = self.item()?;
                    letters.extend_from_slice(&item.letters);
                }
            }
        }
        Ok(Word { letters })
    }

    fn item(&mut self) -> Result<Word, WordError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word, WordError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(b't') => {
                self.pos += 1;
                if self.peek() == Some(b'_') {
                    self.pos += 1;
                }
                let braced = self.peek() == Some(b'{');
                if braced {
                    self.pos += 1;
                }
                let k = self.digits()?;
                if braced {
                    if self.peek() != Some(b'}') {
                        return Err(self.error("expected '}'"));
                    }
                    self.pos += 1;
                }
                if k == 0 {
                    return Err(self.error("symmetric generators are numbered from 1"));
                }
                Ok(Word::symmetric(k as u32))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(Word::letter(Letter::control(c as char)))
            }
            _ => Err(self.error("expected a generator")),
        }
    }

    fn digits(&mut self) -> Result<u64, WordError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.error("integer overflow"))
    }

    fn exponent(&mut self) -> Result<i64, WordError> {
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let mag = self.digits()? as i64;
        if braced {
            if self.peek() != Some(b'}') {
                return Err(self.error("expected '}'"));
            }
            self.pos += 1;
        }
        Ok(if negative { -mag } else { mag })
    }
}
