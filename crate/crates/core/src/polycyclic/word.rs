use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Alphabet sizes accepted for P_n and C_n.
pub const ALPHABET: std::ops::RangeInclusive<usize> = 2..=6;

pub fn check_alphabet(n: usize) -> Result<()> {
    if ALPHABET.contains(&n) {
        Ok(())
    } else {
        Err(Error::AlphabetSize(n))
    }
}

/// A finite word over `a1..an`, stored as zero-based letters.
/// Printed as `a1a2…`, with `e` for the empty word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The one-letter word `a_{i+1}`.
    pub fn letter(i: u8) -> Self {
        Self(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// All letters are below `n`.
    pub fn fits(&self, n: usize) -> bool {
        self.0.iter().all(|&c| (c as usize) < n)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, c: u8) {
        self.0.push(c);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `p` with `self = prefix · p`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|s| Word(s.to_vec()))
    }

    /// One is a prefix of the other.
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn take(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn without_last(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Every word of length `len` over `n` letters, in lexicographic order.
    pub fn all_of_length(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..n as u8).map(move |c| {
                        let mut w = w.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Every word of length at most `len`.
    pub fn all_up_to(n: usize, len: usize) -> Vec<Word> {
        (0..=len).flat_map(|l| Word::all_of_length(n, l)).collect()
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for &c in &self.0 {
            write!(f, "a{}", c + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reads `a<digits>` letters from the start of `s`, returning the word and
/// the number of bytes consumed. `e` and `ε` denote the empty word.
pub(crate) fn parse_word_prefix(s: &str, offset: usize) -> Result<(Word, usize)> {
    for empty in ["ε", "e"] {
        if let Some(rest) = s.strip_prefix(empty) {
            if !rest.starts_with(|c: char| c.is_ascii_alphanumeric()) {
                return Ok((Word::empty(), empty.len()));
            }
        }
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut letters = Vec::new();
    while i < bytes.len() && bytes[i] == b'a' {
        let start = i + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let index: usize = s[start..end].parse().map_err(|_| Error::Parse {
            pos: offset + i,
            msg: "expected a letter index after 'a'".into(),
        })?;
        if index == 0 || index > u8::MAX as usize {
            return Err(Error::Parse {
                pos: offset + start,
                msg: format!("letter index {index} out of range"),
            });
        }
        letters.push((index - 1) as u8);
        i = end;
    }
    Ok((Word(letters), i))
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(Word::empty());
        }
        let (w, used) = parse_word_prefix(t, 0)?;
        if used != t.len() {
            return Err(Error::Parse {
                pos: used,
                msg: format!("unexpected input in word {t:?}"),
            });
        }
        Ok(w)
    }
}
