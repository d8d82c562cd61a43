use std::fmt;
use std::str::FromStr;

use super::periodic::EvPeriodicWord;
use super::poly::PolyElement;
use super::word::Word;
use crate::error::{Error, Result};

/// The arrow `(x·w, |x| − |y|, y·w)` of the Cuntz groupoid, restricted to
/// eventually periodic words.
///
/// Canonical form: `x` and `y` never end in the same letter. Any common
/// trailing letter is pushed into the tail, and with that rule each arrow
/// has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuntzArrow {
    x: Word,
    y: Word,
    k: i64,
    tail: EvPeriodicWord,
}

impl CuntzArrow {
    pub fn new(mut x: Word, mut y: Word, mut tail: EvPeriodicWord) -> Self {
        while let (Some(a), Some(b)) = (x.last(), y.last()) {
            if a != b {
                break;
            }
            x.pop();
            y.pop();
            tail = tail.prepend(&Word::letter(a));
        }
        let k = x.len() as i64 - y.len() as i64;
        Self { x, y, k, tail }
    }

    /// `(z, 0, z)`.
    pub fn identity(z: EvPeriodicWord) -> Self {
        Self::new(Word::empty(), Word::empty(), z)
    }

    /// The arrow `(z, k, z′)` if it exists: some suffix of `z` after `i`
    /// letters equals the suffix of `z′` after `i − k` letters.
    pub fn from_points(z: &EvPeriodicWord, k: i64, z2: &EvPeriodicWord) -> Option<Self> {
        let i0 = [0, k, z.prefix().len() as i64, z2.prefix().len() as i64 + k]
            .into_iter()
            .max()
            .unwrap_or(0);
        let j0 = i0 - k;
        let (i0, j0) = (i0 as usize, j0 as usize);
        let w = z.drop(i0);
        (w == z2.drop(j0)).then(|| Self::new(z.take(i0), z2.take(j0), w))
    }

    pub fn target_prefix(&self) -> &Word {
        &self.x
    }

    pub fn source_prefix(&self) -> &Word {
        &self.y
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn tail(&self) -> &EvPeriodicWord {
        &self.tail
    }

    /// `x·w`.
    pub fn target(&self) -> EvPeriodicWord {
        self.tail.prepend(&self.x)
    }

    /// `y·w`.
    pub fn source(&self) -> EvPeriodicWord {
        self.tail.prepend(&self.y)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            x: self.y.clone(),
            y: self.x.clone(),
            k: -self.k,
            tail: self.tail.clone(),
        }
    }

    /// `self · other`, defined when the source of `self` is the target of
    /// `other`.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        if self.source() != other.target() {
            return None;
        }
        let (y1, x2) = (&self.y, &other.x);
        if y1.len() >= x2.len() {
            let p = y1.strip_prefix(x2)?;
            Some(Self::new(
                self.x.clone(),
                other.y.concat(&p),
                self.tail.clone(),
            ))
        } else {
            let q = x2.strip_prefix(y1)?;
            Some(Self::new(
                self.x.concat(&q),
                other.y.clone(),
                other.tail.clone(),
            ))
        }
    }

    pub fn fits(&self, n: usize) -> bool {
        self.x.fits(n) && self.y.fits(n) && self.tail.fits(n)
    }
}

/// `x/y @ u(v)^w`.
impl fmt::Display for CuntzArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} @ {}", self.x, self.y, self.tail)
    }
}

impl fmt::Debug for CuntzArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self}, k={})", self.k)
    }
}

impl FromStr for CuntzArrow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (pair, tail) = s.split_once('@').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected x/y @ u(v)^w".into(),
        })?;
        let (x, y) = pair.split_once('/').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected x/y before '@'".into(),
        })?;
        Ok(Self::new(x.parse()?, y.parse()?, tail.parse()?))
    }
}

/// The ultrafilter of P_n given by the coset of `rep = xy⁻¹` at the point
/// `z`, read as the arrow `(x·w, |x| − |y|, z)` with `z = y·w`.
pub fn ultrafilter_to_arrow(rep: &PolyElement, z: &EvPeriodicWord) -> Result<CuntzArrow> {
    let PolyElement::Pair { x, y } = rep else {
        return Err(Error::NotAFilter(
            "the zero element lies in no ultrafilter".into(),
        ));
    };
    let w = z
        .strip_prefix(y)
        .ok_or_else(|| Error::NotPrefix(y.to_string(), z.to_string()))?;
    Ok(CuntzArrow::new(x.clone(), y.clone(), w))
}

/// The canonical coset representative and point of an arrow.
pub fn arrow_to_ultrafilter(g: &CuntzArrow) -> (PolyElement, EvPeriodicWord) {
    (PolyElement::pair(g.x.clone(), g.y.clone()), g.source())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> EvPeriodicWord {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_absorbs_common_suffix() {
        let a = CuntzArrow::new(w("a1a2"), w("a2"), ev("(a1)^w"));
        assert_eq!(a, CuntzArrow::new(w("a1"), w("e"), ev("a2(a1)^w")));
        assert_eq!(a.to_string(), "a1/e @ a2(a1)^w");
        assert_eq!(a.k(), 1);
        assert_eq!(a.to_string().parse::<CuntzArrow>().unwrap(), a);
    }

    #[test]
    fn composition_example() {
        let tail = ev("(a1)^w");
        let g = CuntzArrow::new(w("a1"), w("e"), tail.clone());
        let h = CuntzArrow::new(w("e"), w("a2"), tail.clone());
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.target(), ev("a1(a1)^w"));
        assert_eq!(gh.source(), ev("a2(a1)^w"));
        assert_eq!(gh.k(), 0);
        assert_eq!(h.compose(&g), None);
        let id = g.compose(&g.inverse()).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.tail(), &g.target());
    }

    #[test]
    fn from_points_recovers_arrows() {
        let g = CuntzArrow::new(w("a1a2"), w("a2a2a1"), ev("a1(a2a1)^w"));
        assert_eq!(
            CuntzArrow::from_points(&g.target(), g.k(), &g.source()),
            Some(g.clone())
        );
        assert_eq!(
            CuntzArrow::from_points(&ev("(a1)^w"), 0, &ev("(a2)^w")),
            None
        );
        // a1^ω is shift-invariant, so every k gives an arrow
        let z = ev("(a1)^w");
        for k in -3..=3 {
            let a = CuntzArrow::from_points(&z, k, &z).unwrap();
            assert_eq!(a.k(), k);
        }
    }

    #[test]
    fn ultrafilter_examples() {
        let z = ev("a2(a1)^w");
        let g = ultrafilter_to_arrow(&PolyElement::pair(w("a1"), w("a2")), &z).unwrap();
        assert_eq!(g.target(), ev("(a1)^w"));
        assert_eq!(g.source(), z);
        assert_eq!(g.k(), 0);
        assert_eq!(
            arrow_to_ultrafilter(&g),
            (PolyElement::pair(w("a1"), w("a2")), z.clone())
        );
        let id = ultrafilter_to_arrow(&PolyElement::one(), &z).unwrap();
        assert!(id.is_identity());
        assert!(matches!(
            ultrafilter_to_arrow(&PolyElement::pair(w("e"), w("a1")), &z),
            Err(Error::NotPrefix(..))
        ));
        // (a1a1)(a2a1)⁻¹ is another representative of the same coset
        let alt = ultrafilter_to_arrow(&PolyElement::pair(w("a1a1"), w("a2a1")), &z).unwrap();
        assert_eq!(alt, g);
        let shift = CuntzArrow::new(w("a1a1"), w("e"), ev("(a2)^w"));
        assert_eq!(
            arrow_to_ultrafilter(&shift).0,
            PolyElement::pair(w("a1a1"), w("e"))
        );
    }
}
