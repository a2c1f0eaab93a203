//! Bit-level substrate: words, matrices, `F(2^m)` and seeded streams.

mod field;
mod matrix;
mod pack;
mod word;
mod xof;

pub use field::{is_irreducible, modulus_for, Gf2m};
pub use matrix::{BitMatrix, BitVec};
pub use pack::{BitReader, BitWriter};
pub use word::{parse_words, xor_all, Word, MAX_WORD_BITS};
pub use xof::{BitStream, DetRandom, Seed, SEED_BYTES};

use crate::{Error, Result};

/// Uniform `rows × cols` matrix, filled row by row from the stream.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut BitStream) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.next_bit() {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Uniform nonsingular `m × m` matrix by rejection sampling.
pub fn random_nonsingular(m: usize, rng: &mut BitStream) -> BitMatrix {
    loop {
        let candidate = random_matrix(m, m, rng);
        if candidate.rank() == m {
            return candidate;
        }
    }
}

/// System matrix `A = A1 ∥ A2` with `A1` (`l × l`) nonsingular and `A2` uniform.
pub fn gen_system_matrix(l: usize, k: usize, rng: &mut BitStream) -> Result<BitMatrix> {
    if l == 0 || l >= k {
        return Err(Error::InvalidParams(format!(
            "system matrix needs 1 <= l < k, got l={l}, k={k}"
        )));
    }
    let a1 = random_nonsingular(l, rng);
    let a2 = random_matrix(l, k - l, rng);
    a1.concat(&a2)
}
