//! Continuous little-endian bit packing: bit 0 of the first value goes to bit 0
//! of the first byte.

use super::word::Word;

#[derive(Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bits: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_bits(&mut self, value: u64, n: usize) {
        for i in 0..n {
            if self.bits % 8 == 0 {
                self.bytes.push(0);
            }
            if (value >> i) & 1 == 1 {
                *self.bytes.last_mut().unwrap() |= 1 << (self.bits % 8);
            }
            self.bits += 1;
        }
    }

    pub fn push_words(&mut self, words: &[Word], m: usize) {
        for w in words {
            self.push_bits(w.0, m);
        }
    }

    /// Pad with zero bits to the next byte boundary.
    pub fn align(&mut self) {
        self.bits = self.bytes.len() * 8;
    }

    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    pub fn remaining_bits(&self) -> usize {
        self.bytes.len() * 8 - self.pos
    }

    /// `None` when the input runs out.
    pub fn read_bits(&mut self, n: usize) -> Option<u64> {
        if n > self.remaining_bits() {
            return None;
        }
        let mut v = 0u64;
        for i in 0..n {
            let p = self.pos + i;
            if (self.bytes[p / 8] >> (p % 8)) & 1 == 1 {
                v |= 1 << i;
            }
        }
        self.pos += n;
        Some(v)
    }

    pub fn read_words(&mut self, count: usize, m: usize) -> Option<Vec<Word>> {
        (0..count).map(|_| self.read_bits(m).map(Word)).collect()
    }

    /// Skip to the next byte boundary; returns false if the skipped padding
    /// bits were not all zero.
    pub fn align(&mut self) -> bool {
        let pad = (8 - self.pos % 8) % 8;
        match self.read_bits(pad) {
            Some(v) => v == 0,
            None => false,
        }
    }

    pub fn byte_position(&self) -> usize {
        (self.pos + 7) / 8
    }
}
