use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};

use crate::{Error, Result};

/// Widest word the scheme supports.
pub const MAX_WORD_BITS: usize = 32;

/// An `m`-bit word over F₂.
///
/// Position 1 of a printed bit string (the leftmost character) is bit 0 of the
/// integer, which is also the coefficient of `x⁰` when the word is read as a
/// field element. The width `m` is carried by the surrounding context; bits at
/// or above `m` are always zero.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub u64);

impl Word {
    pub const ZERO: Word = Word(0);

    /// The unit word `e_j` (0-based position).
    #[inline]
    pub fn unit(j: usize) -> Word {
        Word(1 << j)
    }

    /// All-ones mask of width `m`.
    #[inline]
    pub fn mask(m: usize) -> u64 {
        if m >= 64 {
            u64::MAX
        } else {
            (1u64 << m) - 1
        }
    }

    #[inline]
    pub fn bit(self, j: usize) -> bool {
        (self.0 >> j) & 1 == 1
    }

    #[inline]
    pub fn bit_u(self, j: usize) -> usize {
        ((self.0 >> j) & 1) as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Inner product over F₂.
    #[inline]
    pub fn dot(self, other: Word) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    /// Parse a printed bit string, leftmost character first. Spaces are ignored.
    pub fn parse(bits: &str) -> Result<(Word, usize)> {
        let mut value = 0u64;
        let mut len = 0usize;
        for c in bits.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => {}
                '1' => {
                    if len >= 64 {
                        return Err(Error::InvalidWord(bits.to_string()));
                    }
                    value |= 1 << len;
                }
                _ => return Err(Error::InvalidWord(bits.to_string())),
            }
            len += 1;
        }
        if len == 0 || len > 64 {
            return Err(Error::InvalidWord(bits.to_string()));
        }
        Ok((Word(value), len))
    }

    /// Parse a bit string that must have exactly `m` characters.
    pub fn from_bits(bits: &str, m: usize) -> Result<Word> {
        let (w, len) = Word::parse(bits)?;
        if len != m {
            return Err(Error::Dimension {
                op: "Word::from_bits",
                expected: m,
                found: len,
            });
        }
        Ok(w)
    }

    /// Printed form with `m` characters.
    pub fn to_bits(self, m: usize) -> String {
        (0..m)
            .map(|j| if self.bit(j) { '1' } else { '0' })
            .collect()
    }
}

impl BitXor for Word {
    type Output = Word;
    #[inline]
    fn bitxor(self, rhs: Word) -> Word {
        Word(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Word {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Word) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for Word {
    type Output = Word;
    #[inline]
    fn bitand(self, rhs: Word) -> Word {
        Word(self.0 & rhs.0)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:#x})", self.0)
    }
}

/// Parse a whole column of printed words, all of width `m`.
pub fn parse_words(bits: &[&str], m: usize) -> Result<Vec<Word>> {
    bits.iter().map(|s| Word::from_bits(s, m)).collect()
}

/// XOR of all words in the slice.
pub fn xor_all(words: &[Word]) -> Word {
    words.iter().fold(Word::ZERO, |acc, &w| acc ^ w)
}
