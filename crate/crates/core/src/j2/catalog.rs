//! Identity catalog: labeled equalities between words, checked in the image.

use serde::Serialize;

use super::Image;
use crate::presentation::strip_comment;
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `lhs = rhs` as group elements.
    Equal,
    /// `N lhs = N rhs`.
    SameCoset,
    /// `N lhs N = N rhs N`.
    SameDoubleCoset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub claim: Claim,
    pub lhs: Word,
    pub rhs: Word,
}

impl std::fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.claim {
            Claim::Equal => write!(f, "{} = {}", self.lhs, self.rhs),
            Claim::SameCoset => write!(f, "{} ~ {}", self.lhs, self.rhs),
            Claim::SameDoubleCoset => write!(f, "[{}] = [{}]", self.lhs, self.rhs),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityResult {
    pub label: String,
    pub claim: Claim,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

/// Lines are `label: lhs = rhs`, `label: lhs ~ rhs` or `label: [lhs] = [rhs]`.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| format!("line {}: {msg}", n + 1);
        let (label, body) = line.split_once(':').ok_or_else(|| bad("missing label"))?;
        let body = body.trim();
        let (claim, lhs, rhs) = if let Some((l, r)) = body.split_once('~') {
            (Claim::SameCoset, l, r)
        } else if let Some((l, r)) = body.split_once('=') {
            let (l, r) = (l.trim(), r.trim());
            match (bracketed(l), bracketed(r)) {
                (Some(l), Some(r)) => (Claim::SameDoubleCoset, l, r),
                (None, None) => (Claim::Equal, l, r),
                _ => return Err(bad("mixed bracketed and plain sides")),
            }
        } else {
            return Err(bad("expected `=` or `~`"));
        };
        let word = |s: &str| s.trim().parse::<Word>().map_err(|e| bad(&e.to_string()));
        out.push(CatalogEntry {
            label: label.trim().to_string(),
            claim,
            lhs: word(lhs)?,
            rhs: word(rhs)?,
        });
    }
    Ok(out)
}

fn bracketed(s: &str) -> Option<&str> {
    s.strip_prefix('[').and_then(|s| s.strip_suffix(']'))
}

/// Evaluates every entry; failures are findings and never stop the run.
pub fn verify_identities(image: &Image, entries: &[CatalogEntry]) -> Vec<IdentityResult> {
    let assignment = image.assignment();
    let orbit_of = orbit_index(image);
    entries
        .iter()
        .map(|e| {
            let values = e
                .lhs
                .evaluate(&assignment)
                .and_then(|l| Ok((l, e.rhs.evaluate(&assignment)?)));
            let (passed, detail) = match values {
                Err(err) => (false, err.to_string()),
                Ok((l, r)) => match e.claim {
                    Claim::Equal => {
                        let q = &l * &r.inverse();
                        let moved = q.degree() - q.fixed_points().len();
                        (q.is_identity(), format!("lhs * rhs^-1 moves {moved} points"))
                    }
                    Claim::SameCoset => {
                        let (a, b) = (l.image(1), r.image(1));
                        (a == b, format!("cosets {a} and {b}"))
                    }
                    Claim::SameDoubleCoset => {
                        let (a, b) = (orbit_of[l.image(1) - 1], orbit_of[r.image(1) - 1]);
                        (a == b, format!("double cosets {a} and {b}"))
                    }
                },
            };
            IdentityResult {
                label: e.label.clone(),
                claim: e.claim,
                statement: e.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}

/// Index of the control-image orbit containing each point, numbered by least point.
fn orbit_index(image: &Image) -> Vec<usize> {
    let mut index = vec![0; image.degree()];
    for (k, orbit) in image.control_image.orbits().iter().enumerate() {
        for &p in orbit {
            index[p - 1] = k;
        }
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_three_claim_kinds() {
        let c = parse_catalog("# c\na: x^5y^3 = t1t4t1\nb: t1t2 ~ t3\nc: [t1t2t1] = [t1t2]\n").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].claim, Claim::Equal);
        assert_eq!(c[1].claim, Claim::SameCoset);
        assert_eq!(c[2].claim, Claim::SameDoubleCoset);
        assert_eq!(c[2].to_string(), "[t1t2t1] = [t1t2]");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_catalog("no label here").is_err());
        assert!(parse_catalog("a: [t1] = t2").is_err());
        assert!(parse_catalog("a: t1 t2").is_err());
    }

    #[test]
    fn embedded_catalog_parses() {
        let c = parse_catalog(super::super::RELATIONS).unwrap();
        assert!(c.len() >= 14);
        assert!(c.iter().any(|e| e.label == "given-3"));
    }
}
