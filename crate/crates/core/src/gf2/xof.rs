//! Deterministic bit streams from SHAKE-128.
//!
//! A stream is keyed as `SHAKE-128(seed ∥ 0x00 ∥ tag)`. Bits are taken from the
//! output bytes in order, least significant bit of each byte first, so any
//! prefix of a stream is independent of how much is eventually read.

use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::{Shake128, Shake128Reader};

use super::matrix::BitVec;
use super::word::Word;

pub const SEED_BYTES: usize = 16;

/// A 128-bit seed.
pub type Seed = [u8; SEED_BYTES];

/// The (seed, domain tag) pair that names a stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetRandom {
    seed: Seed,
    tag: Vec<u8>,
}

impl DetRandom {
    pub fn new(seed: Seed, tag: &[u8]) -> Self {
        DetRandom {
            seed,
            tag: tag.to_vec(),
        }
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn tag(&self) -> &[u8] {
        &self.tag
    }

    /// A fresh reader positioned at bit 0.
    pub fn stream(&self) -> BitStream {
        let mut h = Shake128::default();
        h.update(&self.seed);
        h.update(&[0x00]);
        h.update(&self.tag);
        BitStream {
            reader: h.finalize_xof(),
            buf: 0,
            avail: 0,
            position: 0,
        }
    }

    /// The first `nbits` bits of the stream.
    pub fn bits(&self, nbits: usize) -> BitVec {
        let mut s = self.stream();
        let mut v = BitVec::zeros(nbits);
        for i in 0..nbits {
            v.set(i, s.next_bit());
        }
        v
    }

    /// The first `n` bytes of the stream.
    pub fn bytes(&self, n: usize) -> Vec<u8> {
        let mut s = self.stream();
        let mut out = vec![0u8; n];
        s.fill_bytes(&mut out);
        out
    }
}

/// A positioned reader over a [`DetRandom`] stream.
pub struct BitStream {
    reader: Shake128Reader,
    buf: u64,
    avail: u32,
    position: u64,
}

impl BitStream {
    /// Number of bits consumed so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    fn refill(&mut self) {
        let mut b = [0u8; 8];
        self.reader.read(&mut b);
        self.buf = u64::from_le_bytes(b);
        self.avail = 64;
    }

    pub fn next_bit(&mut self) -> bool {
        self.next_bits(1) == 1
    }

    /// The next `n <= 64` bits; the first bit read lands in bit 0.
    pub fn next_bits(&mut self, n: usize) -> u64 {
        assert!(n <= 64);
        let mut out = 0u64;
        let mut filled = 0usize;
        while filled < n {
            if self.avail == 0 {
                self.refill();
            }
            let take = (n - filled).min(self.avail as usize);
            let chunk = if take == 64 {
                self.buf
            } else {
                self.buf & ((1u64 << take) - 1)
            };
            out |= chunk << filled;
            self.buf = if take == 64 { 0 } else { self.buf >> take };
            self.avail -= take as u32;
            filled += take;
        }
        self.position += n as u64;
        out
    }

    /// A uniform `m`-bit word.
    pub fn next_word(&mut self, m: usize) -> Word {
        Word(self.next_bits(m))
    }

    pub fn fill_bytes(&mut self, out: &mut [u8]) {
        for b in out {
            *b = self.next_bits(8) as u8;
        }
    }

    /// Uniform integer in `0..bound` by rejection on the smallest covering
    /// power of two.
    pub fn next_below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        if bound == 1 {
            return 0;
        }
        let bits = usize::BITS - (bound - 1).leading_zeros();
        loop {
            let v = self.next_bits(bits as usize) as usize;
            if v < bound {
                return v;
            }
        }
    }
}
