//! Permutations of `{1..n}` stored as image tables.
//!
//! Points act on the right and products read left to right: `(p * q)(i) = q(p(i))`.
//! Conjugation follows the same convention, `g^h = h^-1 g h`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image table is not a bijection of 1..{0}")]
    NotBijection(usize),
    #[error("point {point} out of range 1..{degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
}

/// A bijection of `{1..degree}`.
///
/// Images are stored zero-based; every public point argument is one-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from one-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut table = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(PermError::NotBijection(n));
            }
            seen[img - 1] = true;
            table.push((img - 1) as u32);
        }
        Ok(Permutation {
            images: table.into_boxed_slice(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&i| !std::mem::replace(&mut seen[i as usize], true))
        });
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles of one-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut table: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::RepeatedPoint(p));
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                table[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation::from_zero_based(table))
    }

    /// Parses disjoint-cycle notation such as `(1, 2)(3, 5, 7)` on `degree` points.
    /// Whitespace, including line breaks, is ignored. `()` is the identity.
    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based `point`.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// Zero-based image table.
    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.images
    }

    /// One-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        let q = &other.images;
        Permutation {
            images: self.images.iter().map(|&i| q[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// `by^-1 * self * by`.
    pub fn conjugate(&self, by: &Permutation) -> Permutation {
        // (by^-1 self by)(by(i)) = by(self(i))
        let b = &by.images;
        let mut out = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[b[i] as usize] = b[j as usize];
        }
        Permutation::from_zero_based(out)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        &(&a.inverse() * &b.inverse()) * &(a * b)
    }

    /// Disjoint cycles of length at least two, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&p| self.image(p) == p).collect()
    }

    /// Smallest one-based point not fixed, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i + 1)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product. Panics on degree mismatch; use
    /// [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation with the degree taken as the largest point mentioned.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        Self::from_cycles(degree, &cycles)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Syntax(format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| PermError::Syntax("unclosed cycle".into()))?;
        let inner = &body[..close];
        if !inner.is_empty() {
            let cycle = inner
                .split(',')
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| PermError::Syntax(format!("bad point {tok:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        rest = &body[close + 1..];
    }
    Ok(cycles)
}
