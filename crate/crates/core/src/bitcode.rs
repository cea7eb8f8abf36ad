//! Bit-vector codewords, code parsing and validation, full and
//! index-restricted Hamming distances, and the XOR translation that moves any
//! sent codeword to the all-zero word.
//!
//! Text convention: bit position 1 is the leftmost character, so the tuple
//! `001010` has ones at positions 3 and 5. Internally position `s` of an
//! `n`-bit word maps to bit `n - s` of the backing integer, which makes the
//! numeric order of the backing integers the lexicographic order of the
//! rendered strings.

use std::collections::HashMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A fixed-length binary word of at most 64 bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: u64,
    n: u32,
}

impl Codeword {
    /// Builds a codeword from its backing integer; only the low `n` bits may
    /// be set.
    pub fn new(bits: u64, n: u32) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::BlocklengthTooLarge { n: n as usize });
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::Inconsistency {
                detail: format!("codeword value {bits:#x} does not fit in {n} bits"),
            });
        }
        Ok(Self { bits, n })
    }

    pub fn zero(n: u32) -> Self {
        Self { bits: 0, n }
    }

    /// Parses a string over {0,1}; position 1 is the leftmost character.
    pub fn parse(text: &str) -> Result<Self> {
        let n = text.chars().count();
        if n == 0 || n > 64 {
            return Err(Error::BlocklengthTooLarge { n });
        }
        let mut bits = 0u64;
        for ch in text.chars() {
            bits <<= 1;
            match ch {
                '0' => {}
                '1' => bits |= 1,
                other => return Err(Error::IllegalCharacter { ch: other, line: 0 }),
            }
        }
        Ok(Self { bits, n: n as u32 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The bit at 1-based position `pos` (1 = leftmost).
    pub fn bit(&self, pos: u32) -> bool {
        debug_assert!(pos >= 1 && pos <= self.n);
        (self.bits >> (self.n - pos)) & 1 == 1
    }

    /// Returns a copy with the bit at 1-based position `pos` flipped.
    pub fn flip(&self, pos: u32) -> Self {
        debug_assert!(pos >= 1 && pos <= self.n);
        Self {
            bits: self.bits ^ (1u64 << (self.n - pos)),
            n: self.n,
        }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn xor(&self, other: Codeword) -> Codeword {
        debug_assert_eq!(self.n, other.n);
        Self {
            bits: self.bits ^ other.bits,
            n: self.n,
        }
    }

    /// The set of positions holding a one.
    pub fn support(&self) -> IndexSet {
        IndexSet {
            mask: self.bits,
            n: self.n,
        }
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 1..=self.n {
            f.write_str(if self.bit(pos) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl Serialize for Codeword {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Codeword {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Codeword::parse(&text).map_err(D::Error::custom)
    }
}

fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the index positions {1, ..., n}, stored as a bit-mask sharing
/// the codeword convention (position s <-> bit n - s).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet {
    mask: u64,
    n: u32,
}

impl IndexSet {
    pub fn empty(n: u32) -> Self {
        Self { mask: 0, n }
    }

    pub fn full(n: u32) -> Self {
        Self {
            mask: low_mask(n),
            n,
        }
    }

    pub fn from_positions<I: IntoIterator<Item = u32>>(n: u32, positions: I) -> Result<Self> {
        let mut set = Self::empty(n);
        for pos in positions {
            if pos == 0 || pos > n {
                return Err(Error::PositionOutOfRange { pos, n });
            }
            set.mask |= 1u64 << (n - pos);
        }
        Ok(set)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, pos: u32) -> bool {
        pos >= 1 && pos <= self.n && (self.mask >> (self.n - pos)) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn union(&self, other: IndexSet) -> IndexSet {
        debug_assert_eq!(self.n, other.n);
        IndexSet {
            mask: self.mask | other.mask,
            n: self.n,
        }
    }

    pub fn intersection(&self, other: IndexSet) -> IndexSet {
        debug_assert_eq!(self.n, other.n);
        IndexSet {
            mask: self.mask & other.mask,
            n: self.n,
        }
    }

    /// Complement within {1, ..., n}.
    pub fn complement(&self) -> IndexSet {
        IndexSet {
            mask: !self.mask & low_mask(self.n),
            n: self.n,
        }
    }

    /// Member positions in ascending order.
    pub fn positions(&self) -> Vec<u32> {
        (1..=self.n).filter(|&pos| self.contains(pos)).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for pos in self.positions() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{pos}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSet({self})")
    }
}

/// Hamming distance between two equal-length words.
pub fn hamming(u: Codeword, v: Codeword) -> Result<u32> {
    if u.n != v.n {
        return Err(Error::LengthMismatch {
            left: u.n,
            right: v.n,
        });
    }
    Ok((u.bits ^ v.bits).count_ones())
}

/// Hamming distance restricted to the positions in `s`; zero when `s` is
/// empty.
pub fn hamming_restricted(u: Codeword, v: Codeword, s: IndexSet) -> Result<u32> {
    if u.n != v.n || u.n != s.n {
        return Err(Error::LengthMismatch {
            left: u.n,
            right: if u.n != v.n { v.n } else { s.n },
        });
    }
    Ok(((u.bits ^ v.bits) & s.mask).count_ones())
}

/// An ordered list of at least two distinct codewords of equal blocklength.
///
/// Codeword indices are 1-based throughout the crate: index 1 is the first
/// line of the text form.
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    n: u32,
    words: Vec<Codeword>,
}

impl Code {
    pub fn new(words: Vec<Codeword>) -> Result<Self> {
        if words.len() < 2 {
            return Err(Error::TooFewCodewords);
        }
        let n = words[0].n;
        let mut seen = HashMap::new();
        for (idx, word) in words.iter().enumerate() {
            if word.n != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: word.n,
                });
            }
            if let Some(_prev) = seen.insert(word.bits, idx) {
                return Err(Error::DuplicateCodeword {
                    word: word.to_string(),
                    line: idx + 1,
                });
            }
        }
        Ok(Self { n, words })
    }

    /// Parses the one-codeword-per-line text format. Blank lines and lines
    /// beginning with `#` are ignored; error line numbers refer to the input
    /// as given.
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut expected: Option<usize> = None;
        for (line_no, raw) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let len = line.chars().count();
            match expected {
                None => {
                    if len > 64 {
                        return Err(Error::BlocklengthTooLarge { n: len });
                    }
                    expected = Some(len);
                }
                Some(n) if len != n => {
                    return Err(Error::RaggedLine {
                        line: line_no,
                        len,
                        expected: n,
                    });
                }
                Some(_) => {}
            }
            let word = Codeword::parse(line).map_err(|e| match e {
                Error::IllegalCharacter { ch, .. } => Error::IllegalCharacter { ch, line: line_no },
                other => other,
            })?;
            if seen.insert(word.bits, line_no).is_some() {
                return Err(Error::DuplicateCodeword {
                    word: word.to_string(),
                    line: line_no,
                });
            }
            words.push(word);
        }
        if words.len() < 2 {
            return Err(Error::TooFewCodewords);
        }
        let n = words[0].n;
        Ok(Self { n, words })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of codewords M.
    pub fn m(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    /// The codeword with 1-based index `index`.
    ///
    /// Panics when out of range; public entry points validate indices first.
    pub fn word(&self, index: usize) -> Codeword {
        self.words[index - 1]
    }

    /// XORs every codeword with the sent one and moves the sent codeword
    /// (now all-zero) to index 1; the other codewords keep their relative
    /// order. Pairwise distances are preserved.
    pub fn canonicalize(&self, sent: usize) -> Result<Code> {
        if sent == 0 || sent > self.words.len() {
            return Err(Error::IndexOutOfRange {
                index: sent,
                m: self.words.len(),
            });
        }
        let pivot = self.words[sent - 1];
        let mut words = Vec::with_capacity(self.words.len());
        words.push(Codeword::zero(self.n));
        for (idx, word) in self.words.iter().enumerate() {
            if idx != sent - 1 {
                words.push(word.xor(pivot));
            }
        }
        Ok(Code {
            n: self.n,
            words,
        })
    }

    /// True when the first codeword is all-zero (the form the partition
    /// constructions require).
    pub fn is_canonical(&self) -> bool {
        self.words[0].bits == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for word in &self.words {
            out.push_str(&word.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(n={}, M={}, [", self.n, self.words.len())?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "])")
    }
}
