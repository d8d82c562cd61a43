use std::fmt;

use super::poly::PolyElement;
use super::word::{check_alphabet, parse_word_prefix, Word};
use crate::error::{Error, Result};

/// An element of C_n: a finite orthogonal set of pairs `(x, y)`, each standing
/// for the cylinder bisection `{(xw, |x|−|y|, yw)}`.
///
/// Stored in canonical form: no complete sibling family `(xc, yc)` for every
/// letter `c` is present, and pairs are sorted by `x`. Canonical forms are
/// exactly the decompositions into maximal cylinders, so equality of
/// elements is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CnElement {
    n: usize,
    pairs: Vec<(Word, Word)>,
}

/// The union of two elements is not a bisection; the two pairs show why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incompatible {
    pub left: (Word, Word),
    pub right: (Word, Word),
}

impl fmt::Display for Incompatible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} and {}/{} overlap without being nested",
            self.left.0, self.left.1, self.right.0, self.right.1
        )
    }
}

fn orthogonal(a: &(Word, Word), b: &(Word, Word)) -> bool {
    !a.0.comparable(&b.0) && !a.1.comparable(&b.1)
}

/// `b = (xp, yp)` for `a = (x, y)`: the cylinder of `b` lies inside that of `a`.
fn nested_in(b: &(Word, Word), a: &(Word, Word)) -> bool {
    match (b.0.strip_prefix(&a.0), b.1.strip_prefix(&a.1)) {
        (Some(p), Some(q)) => p == q,
        _ => false,
    }
}

impl CnElement {
    /// Validates the alphabet and orthogonality, then canonicalises.
    pub fn new(n: usize, pairs: Vec<(Word, Word)>) -> Result<Self> {
        check_alphabet(n)?;
        for (x, y) in &pairs {
            if !x.fits(n) || !y.fits(n) {
                return Err(Error::Malformed(format!(
                    "{x}/{y} uses letters beyond a{n}"
                )));
            }
        }
        for (i, a) in pairs.iter().enumerate() {
            for b in &pairs[i + 1..] {
                if !orthogonal(a, b) {
                    return Err(Error::NotOrthogonal(format!(
                        "{}/{} and {}/{}",
                        a.0, a.1, b.0, b.1
                    )));
                }
            }
        }
        Ok(Self::canonical(n, pairs))
    }

    fn canonical(n: usize, mut pairs: Vec<(Word, Word)>) -> Self {
        loop {
            pairs.sort();
            let family = pairs.iter().find_map(|(x, y)| {
                let c = x.last()?;
                if y.last() != Some(c) {
                    return None;
                }
                let parent = (x.without_last(), y.without_last());
                let complete = (0..n as u8).all(|d| {
                    let mut cx = parent.0.clone();
                    let mut cy = parent.1.clone();
                    cx.push(d);
                    cy.push(d);
                    pairs.binary_search(&(cx, cy)).is_ok()
                });
                complete.then_some(parent)
            });
            let Some((px, py)) = family else { break };
            pairs.retain(|(x, y)| {
                !(x.len() == px.len() + 1
                    && y.len() == py.len() + 1
                    && px.is_prefix_of(x)
                    && py.is_prefix_of(y)
                    && x.last() == y.last())
            });
            pairs.push((px, py));
        }
        Self { n, pairs }
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::new(n, vec![(Word::empty(), Word::empty())])
    }

    /// `ψ(xy⁻¹) = {(x, y)}` and `ψ(0) = ∅`.
    pub fn psi(n: usize, a: &PolyElement) -> Result<Self> {
        match a {
            PolyElement::Zero => Self::zero(n),
            PolyElement::Pair { x, y } => Self::new(n, vec![(x.clone(), y.clone())]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Longest word in either coordinate.
    pub fn max_len(&self) -> usize {
        self.pairs
            .iter()
            .map(|(x, y)| x.len().max(y.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(
            self.n,
            self.pairs
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        )
    }

    fn same_alphabet(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Malformed(format!(
                "elements of C_{} and C_{} cannot be combined",
                self.n, other.n
            )))
        }
    }

    /// Pairwise polycyclic products with zeros dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_alphabet(other)?;
        let mut out = Vec::new();
        for (x, y) in &self.pairs {
            for (u, v) in &other.pairs {
                let p = PolyElement::pair(x.clone(), y.clone())
                    .mul(&PolyElement::pair(u.clone(), v.clone()));
                if let PolyElement::Pair { x, y } = p {
                    out.push((x, y));
                }
            }
        }
        Self::new(self.n, out)
    }

    /// The join, when the union of the two bisections is a bisection.
    ///
    /// Two cylinders have a bisection as union exactly when they are
    /// orthogonal or one is nested in the other by a common suffix, so the
    /// join is the union with nested pieces dropped.
    pub fn join(&self, other: &Self) -> Result<std::result::Result<Self, Incompatible>> {
        self.same_alphabet(other)?;
        let mut keep: Vec<(Word, Word)> = Vec::new();
        for a in &self.pairs {
            for b in &other.pairs {
                if !(orthogonal(a, b) || nested_in(a, b) || nested_in(b, a)) {
                    return Ok(Err(Incompatible {
                        left: a.clone(),
                        right: b.clone(),
                    }));
                }
            }
        }
        for a in &self.pairs {
            if !other.pairs.iter().any(|b| b != a && nested_in(a, b)) {
                keep.push(a.clone());
            }
        }
        for b in &other.pairs {
            if !self.pairs.iter().any(|a| nested_in(b, a)) {
                keep.push(b.clone());
            }
        }
        Self::new(self.n, keep).map(Ok)
    }

    /// Join of a family; `Err` at the first incompatible step.
    pub fn join_all<'a>(
        n: usize,
        items: impl IntoIterator<Item = &'a CnElement>,
    ) -> Result<std::result::Result<Self, Incompatible>> {
        let mut acc = Self::zero(n)?;
        for item in items {
            match acc.join(item)? {
                Ok(j) => acc = j,
                Err(e) => return Ok(Err(e)),
            }
        }
        Ok(Ok(acc))
    }

    /// Both coordinate sets are maximal prefix codes: a unit of C_n, that is
    /// an element of the Thompson group V_{n,1}.
    pub fn is_unit(&self) -> bool {
        let xs: Vec<&Word> = self.pairs.iter().map(|(x, _)| x).collect();
        let ys: Vec<&Word> = self.pairs.iter().map(|(_, y)| y).collect();
        is_maximal_prefix_code(self.n, &xs, 0) && is_maximal_prefix_code(self.n, &ys, 0)
    }

    /// `A·A⁻¹ = A⁻¹·A = 1`.
    pub fn is_unit_definitional(&self) -> bool {
        let one = Self::canonical(self.n, vec![(Word::empty(), Word::empty())]);
        let inv = self.inverse();
        self.mul(&inv).is_ok_and(|p| p == one) && inv.mul(self).is_ok_and(|p| p == one)
    }

    /// Reads `{x1/y1, x2/y2, ...}` with `e` for the empty word.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "expected {x/y, ...}".into(),
            })?;
        let mut pairs = Vec::new();
        let mut offset = t.len() - t.trim_start().len() + 1;
        if !inner.trim().is_empty() {
            for item in inner.split(',') {
                let pos = offset + item.len() - item.trim_start().len();
                let (xs, ys) = item.trim().split_once('/').ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("expected x/y, found {:?}", item.trim()),
                })?;
                let word = |text: &str, at: usize| -> Result<Word> {
                    let text = text.trim();
                    let (w, used) = parse_word_prefix(text, at)?;
                    if used != text.len() {
                        return Err(Error::Parse {
                            pos: at + used,
                            msg: format!("unexpected input in {text:?}"),
                        });
                    }
                    Ok(w)
                };
                pairs.push((word(xs, pos)?, word(ys, pos + xs.len() + 1)?));
                offset += item.len() + 1;
            }
        }
        Self::new(n, pairs)
    }
}

/// A finite prefix-free set is a maximal prefix code when it is `{ε}` or
/// every first letter leads to a maximal residual code.
fn is_maximal_prefix_code(n: usize, words: &[&Word], depth: usize) -> bool {
    if words.is_empty() {
        return false;
    }
    if words.iter().any(|w| w.len() == depth) {
        return words.len() == 1;
    }
    (0..n as u8).all(|c| {
        let residual: Vec<&Word> = words
            .iter()
            .copied()
            .filter(|w| w.letters()[depth] == c)
            .collect();
        is_maximal_prefix_code(n, &residual, depth + 1)
    })
}

impl fmt::Display for CnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(x, y)| format!("{x}/{y}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for CnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}{}", self.n, self)
    }
}
