use std::fmt;
use std::str::FromStr;

use super::word::{parse_word_prefix, Word};
use crate::error::{Error, Result};

/// An element of the polycyclic monoid: zero, or the reduced word `xy⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyElement {
    Zero,
    Pair { x: Word, y: Word },
}

impl PolyElement {
    pub fn pair(x: Word, y: Word) -> Self {
        Self::Pair { x, y }
    }

    pub fn one() -> Self {
        Self::pair(Word::empty(), Word::empty())
    }

    /// The generator `a_{i+1}`.
    pub fn generator(i: u8) -> Self {
        Self::pair(Word::letter(i), Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero)
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            Self::Zero => true,
            Self::Pair { x, y } => x == y,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Zero => Self::Zero,
            Self::Pair { x, y } => Self::pair(y.clone(), x.clone()),
        }
    }

    /// `(xy⁻¹)(uv⁻¹)` is `(xp)v⁻¹` if `u = yp`, `x(vq)⁻¹` if `y = uq`, and 0 otherwise.
    pub fn mul(&self, other: &Self) -> Self {
        let (Self::Pair { x, y }, Self::Pair { x: u, y: v }) = (self, other) else {
            return Self::Zero;
        };
        if let Some(p) = u.strip_prefix(y) {
            Self::pair(x.concat(&p), v.clone())
        } else if let Some(q) = y.strip_prefix(u) {
            Self::pair(x.clone(), v.concat(&q))
        } else {
            Self::Zero
        }
    }

    pub fn fits(&self, n: usize) -> bool {
        match self {
            Self::Zero => true,
            Self::Pair { x, y } => x.fits(n) && y.fits(n),
        }
    }

    /// Every non-zero element with `|x|, |y| ≤ len`, plus zero first.
    pub fn all_up_to(n: usize, len: usize) -> Vec<Self> {
        let words = Word::all_up_to(n, len);
        std::iter::once(Self::Zero)
            .chain(
                words
                    .iter()
                    .flat_map(|x| words.iter().map(move |y| Self::pair(x.clone(), y.clone()))),
            )
            .collect()
    }
}

/// `0` and `1` as themselves, otherwise `.`-separated generators with `*` marking inverses, in
/// product order: `xy⁻¹` with `x = a1a2`, `y = a2` prints as `a1.a2.a2*`.
impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Self::Pair { x, y } = self else {
            return f.write_str("0");
        };
        if x.is_empty() && y.is_empty() {
            return f.write_str("1");
        }
        let mut tokens: Vec<String> = x.letters().iter().map(|c| format!("a{}", c + 1)).collect();
        tokens.extend(y.letters().iter().rev().map(|c| format!("a{}*", c + 1)));
        f.write_str(&tokens.join("."))
    }
}

/// Any product of generators and their inverses is accepted and reduced.
impl FromStr for PolyElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "0" => return Ok(Self::Zero),
            "1" | "" => return Ok(Self::one()),
            _ => {}
        }
        let mut acc = Self::one();
        let mut offset = 0;
        for token in t.split('.') {
            let tok = token.trim();
            let (inverse, body) = match tok.strip_suffix('*') {
                Some(b) => (true, b),
                None => (false, tok),
            };
            let (w, used) = parse_word_prefix(body, offset)?;
            if used != body.len() || w.len() != 1 {
                return Err(Error::Parse {
                    pos: offset,
                    msg: format!("expected a generator like a1 or a1*, found {tok:?}"),
                });
            }
            let g = Self::generator(w.letters()[0]);
            acc = acc.mul(&if inverse { g.inverse() } else { g });
            offset += token.len() + 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: &str, y: &str) -> PolyElement {
        PolyElement::pair(x.parse().unwrap(), y.parse().unwrap())
    }

    #[test]
    fn products() {
        assert_eq!(p("a1", "a2").mul(&p("a2", "a1")), p("a1", "a1"));
        assert_eq!(p("a1", "a2").mul(&PolyElement::Zero), PolyElement::Zero);
        assert_eq!(p("a1", "e").mul(&p("a2", "e")), p("a1a2", "e"));
        assert_eq!(p("e", "a1").mul(&p("a2", "e")), PolyElement::Zero);
        // a1⁻¹ a1 = 1, a1 a1⁻¹ is idempotent
        assert_eq!(p("e", "a1").mul(&p("a1", "e")), PolyElement::one());
        assert!(p("a1", "e").mul(&p("e", "a1")).is_idempotent());
    }

    #[test]
    fn associativity_exhaustive() {
        let all = PolyElement::all_up_to(2, 2);
        for a in &all {
            for b in &all {
                let ab = a.mul(b);
                for c in &all {
                    assert_eq!(ab.mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn syntax_round_trip() {
        for e in PolyElement::all_up_to(3, 2) {
            let s = e.to_string();
            assert_eq!(s.parse::<PolyElement>().unwrap(), e, "{s}");
        }
        assert_eq!("a1.a2*".parse::<PolyElement>().unwrap(), p("a1", "a2"));
        assert_eq!(
            "a1.a1*.a2*".parse::<PolyElement>().unwrap(),
            p("a1", "a2a1")
        );
        assert_eq!("a1*.a2".parse::<PolyElement>().unwrap(), PolyElement::Zero);
        assert!("a1.b2".parse::<PolyElement>().is_err());
    }
}
