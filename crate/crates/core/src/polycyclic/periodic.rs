use std::fmt;
use std::str::FromStr;

use super::word::{parse_word_prefix, Word};
use crate::error::{Error, Result};

/// The infinite word `u·v^ω`, kept in normal form: `v` is primitive and `u`
/// does not end with the last letter of `v` (otherwise `v` could be rotated
/// to absorb it). Two values are equal exactly when the infinite words are.
///
/// Printed as `u(v)^w`, with `u` omitted when empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvPeriodicWord {
    prefix: Word,
    period: Word,
}

fn primitive_root(v: &[u8]) -> &[u8] {
    let n = v.len();
    (1..=n)
        .filter(|&d| n.is_multiple_of(d))
        .map(|d| &v[..d])
        .find(|root| v.chunks(root.len()).all(|c| c == *root))
        .unwrap_or(v)
}

impl EvPeriodicWord {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Malformed("period must be non-empty".into()));
        }
        Ok(Self::normalize(prefix, period))
    }

    fn normalize(mut prefix: Word, period: Word) -> Self {
        let mut v = primitive_root(period.letters()).to_vec();
        while !prefix.is_empty() && prefix.last() == v.last().copied() {
            prefix.pop();
            v.rotate_right(1);
        }
        Self {
            prefix,
            period: Word::new(v),
        }
    }

    /// `v^ω`.
    pub fn periodic(period: Word) -> Result<Self> {
        Self::new(Word::empty(), period)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The letter at position `i`.
    pub fn letter(&self, i: usize) -> u8 {
        let u = self.prefix.letters();
        if i < u.len() {
            u[i]
        } else {
            let v = self.period.letters();
            v[(i - u.len()) % v.len()]
        }
    }

    /// The first `len` letters.
    pub fn take(&self, len: usize) -> Word {
        Word::new((0..len).map(|i| self.letter(i)).collect())
    }

    /// `p·self`.
    pub fn prepend(&self, p: &Word) -> Self {
        Self::normalize(p.concat(&self.prefix), self.period.clone())
    }

    /// The suffix after the first `k` letters.
    pub fn drop(&self, k: usize) -> Self {
        let u = self.prefix.letters();
        if k <= u.len() {
            return Self::normalize(Word::from(&u[k..]), self.period.clone());
        }
        let mut v = self.period.letters().to_vec();
        let shift = (k - u.len()) % v.len();
        v.rotate_left(shift);
        Self::normalize(Word::empty(), Word::new(v))
    }

    /// `w` with `self = p·w`, when `p` is a prefix.
    pub fn strip_prefix(&self, p: &Word) -> Option<Self> {
        (self.take(p.len()) == *p).then(|| self.drop(p.len()))
    }

    pub fn fits(&self, n: usize) -> bool {
        self.prefix.fits(n) && self.period.fits(n)
    }
}

impl fmt::Display for EvPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{}", self.prefix)?;
        }
        write!(f, "({})^w", self.period)
    }
}

impl fmt::Debug for EvPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `u(v)^w`, `u(v)^ω` and `(v)^w`; `u` may be `e`.
impl FromStr for EvPeriodicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let open = t.find('(').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected u(v)^w".into(),
        })?;
        let prefix: Word = t[..open].parse()?;
        let rest = &t[open + 1..];
        let close = rest.find(')').ok_or_else(|| Error::Parse {
            pos: open,
            msg: "unclosed period".into(),
        })?;
        let (period, used) = parse_word_prefix(&rest[..close], open + 1)?;
        if used != close {
            return Err(Error::Parse {
                pos: open + 1 + used,
                msg: "unexpected input in period".into(),
            });
        }
        match rest[close + 1..].trim() {
            "^w" | "^ω" => {}
            other => {
                return Err(Error::Parse {
                    pos: open + close + 2,
                    msg: format!("expected ^w after the period, found {other:?}"),
                })
            }
        }
        if period.is_empty() {
            return Err(Error::Parse {
                pos: open + 1,
                msg: "period must be non-empty".into(),
            });
        }
        Self::new(prefix, period)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Letterwise comparison on a prefix long enough to decide equality:
/// `|u| + |u'| + 2·lcm(|v|, |v'|)`.
pub fn equal_by_prefix(a: &EvPeriodicWord, b: &EvPeriodicWord) -> bool {
    let (p, q) = (a.period.len(), b.period.len());
    let bound = a.prefix.len() + b.prefix.len() + 2 * (p / gcd(p, q) * q);
    a.take(bound) == b.take(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> EvPeriodicWord {
        s.parse().unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(ev("(a1a1)^w"), ev("(a1)^w"));
        assert_eq!(ev("a1(a1)^w"), ev("(a1)^w"));
        assert_eq!(ev("a2(a1a2)^w"), ev("(a2a1)^w"));
        assert_eq!(ev("a1a2a1(a2a1)^w").to_string(), "(a1a2)^w");
        assert_eq!(ev("a2a2a1(a2a1)^w").to_string(), "a2(a2a1)^w");
        assert_ne!(ev("a2(a1)^w"), ev("(a1)^w"));
        assert_eq!(ev("e(a1a2)^ω").to_string(), "(a1a2)^w");
    }

    #[test]
    fn drop_and_prepend() {
        let z = ev("a2(a1)^w");
        assert_eq!(z.drop(1), ev("(a1)^w"));
        assert_eq!(z.drop(5), ev("(a1)^w"));
        assert_eq!(z.strip_prefix(&"a2".parse().unwrap()), Some(ev("(a1)^w")));
        assert_eq!(z.strip_prefix(&"a1".parse().unwrap()), None);
        assert_eq!(ev("(a1)^w").prepend(&"a2".parse().unwrap()), z);
        assert_eq!(ev("(a1a2)^w").drop(1), ev("(a2a1)^w"));
    }

    #[test]
    fn equality_agrees_with_prefix_comparison() {
        let samples = [
            "(a1)^w",
            "a1(a1)^w",
            "a2(a1)^w",
            "(a1a2)^w",
            "a1(a2a1)^w",
            "a2(a1a2)^w",
            "(a2a1)^w",
            "a1a2(a1a2a1a2)^w",
            "(a1a1a2)^w",
            "a1(a1a2a1)^w",
        ];
        for a in samples {
            for b in samples {
                let (x, y) = (ev(a), ev(b));
                assert_eq!(x == y, equal_by_prefix(&x, &y), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_bad_syntax() {
        assert!("a1a2".parse::<EvPeriodicWord>().is_err());
        assert!("a1()^w".parse::<EvPeriodicWord>().is_err());
        assert!("a1(a2)".parse::<EvPeriodicWord>().is_err());
    }
}
