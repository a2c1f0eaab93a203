use crate::gf2::{random_nonsingular, BitMatrix, BitStream, Word};
use crate::{Error, Result};

/// A factorization table with `m` type-2 blocks.
///
/// Block `j` holds two words: row 0 is selected when input bit `j` is 0, row 1
/// when it is 1. Evaluation is the XOR of one selected row per block, so
/// `β(r) = c₀ ⊕ r·D` where `c₀` is the XOR of all row-0 entries and `D` has the
/// block differences `d_j = B_j[0] ⊕ B_j[1]` as rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionTable {
    m: usize,
    /// `rows[2j + b]` is row `b` of block `j`.
    rows: Vec<Word>,
}

impl SubstitutionTable {
    /// Build from `2m` rows, blocks in order, row 0 before row 1.
    pub fn from_rows(m: usize, rows: Vec<Word>) -> Result<Self> {
        if rows.len() != 2 * m {
            return Err(Error::Dimension {
                op: "SubstitutionTable::from_rows",
                expected: 2 * m,
                found: rows.len(),
            });
        }
        if rows.iter().any(|w| w.0 & !Word::mask(m) != 0) {
            return Err(Error::InvalidWord(format!("row wider than {m} bits")));
        }
        Ok(SubstitutionTable { m, rows })
    }

    /// Build from blocks given as `(row0, row1)` pairs.
    pub fn from_blocks(m: usize, blocks: &[(Word, Word)]) -> Result<Self> {
        let rows = blocks.iter().flat_map(|&(a, b)| [a, b]).collect();
        SubstitutionTable::from_rows(m, rows)
    }

    /// The all-zero table.
    pub fn zero(m: usize) -> Self {
        SubstitutionTable {
            m,
            rows: vec![Word::ZERO; 2 * m],
        }
    }

    /// Block `j` is `(0, e_j)`; evaluation is the identity map.
    pub fn canonical(m: usize) -> Self {
        let rows = (0..m).flat_map(|j| [Word::ZERO, Word::unit(j)]).collect();
        SubstitutionTable { m, rows }
    }

    /// A random proper table: uniform row-0 entries and a uniformly random
    /// basis of difference vectors.
    pub fn simple_random(m: usize, rng: &mut BitStream) -> Self {
        let diffs = random_nonsingular(m, rng);
        let rows = (0..m)
            .flat_map(|j| {
                let r0 = rng.next_word(m);
                [r0, r0 ^ diffs.row_word(j)]
            })
            .collect();
        SubstitutionTable { m, rows }
    }

    /// A uniformly random `2m × m` array with no structure imposed.
    pub fn uniform_random(m: usize, rng: &mut BitStream) -> Self {
        let rows = (0..2 * m).map(|_| rng.next_word(m)).collect();
        SubstitutionTable { m, rows }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    #[inline]
    pub fn block(&self, j: usize) -> (Word, Word) {
        (self.rows[2 * j], self.rows[2 * j + 1])
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [Word] {
        &mut self.rows
    }

    /// `β(r)`: XOR of row `r_j` of every block `j`.
    #[inline]
    pub fn eval(&self, r: Word) -> Word {
        let mut acc = Word::ZERO;
        for j in 0..self.m {
            acc ^= self.rows[2 * j + r.bit_u(j)];
        }
        acc
    }

    /// Checked form of [`eval`](Self::eval).
    pub fn eval_forward(&self, r: Word) -> Result<Word> {
        if r.0 & !Word::mask(self.m) != 0 {
            return Err(Error::Dimension {
                op: "eval_forward",
                expected: self.m,
                found: 64 - r.0.leading_zeros() as usize,
            });
        }
        Ok(self.eval(r))
    }

    /// `c₀`, the image of the all-zero input.
    pub fn offset(&self) -> Word {
        (0..self.m).fold(Word::ZERO, |acc, j| acc ^ self.rows[2 * j])
    }

    /// `D`, the `m × m` matrix of block differences.
    pub fn difference_matrix(&self) -> BitMatrix {
        let diffs: Vec<Word> = (0..self.m)
            .map(|j| self.rows[2 * j] ^ self.rows[2 * j + 1])
            .collect();
        BitMatrix::from_words(&diffs, self.m)
    }

    /// True iff the difference vectors are linearly independent, which makes
    /// evaluation a bijection on `{0,1}^m`.
    pub fn is_proper(&self) -> bool {
        self.difference_matrix().rank() == self.m
    }

    /// Precomputed inverse for a proper table.
    pub fn decoder(&self) -> Result<Decoder> {
        let inv = self
            .difference_matrix()
            .inverse()
            .map_err(|_| Error::ImproperTable)?;
        Ok(Decoder {
            offset: self.offset(),
            inv,
        })
    }

    /// The unique `r` with `β(r) = z`, found by solving `r·D = z ⊕ c₀`.
    pub fn eval_inverse_simple(&self, z: Word) -> Result<Word> {
        Ok(self.decoder()?.decode(z))
    }

    /// Entrywise XOR of two tables.
    pub fn add(&self, other: &SubstitutionTable) -> Result<SubstitutionTable> {
        if self.m != other.m {
            return Err(Error::Dimension {
                op: "add_tables",
                expected: self.m,
                found: other.m,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| a ^ b)
            .collect();
        Ok(SubstitutionTable { m: self.m, rows })
    }

    /// Every row replaced by `row · w`.
    pub fn scale(&self, w: &BitMatrix) -> Result<SubstitutionTable> {
        if w.rows() != self.m || w.cols() != self.m {
            return Err(Error::Dimension {
                op: "scale_table",
                expected: self.m,
                found: if w.rows() != self.m {
                    w.rows()
                } else {
                    w.cols()
                },
            });
        }
        let rows = self.rows.iter().map(|&r| w.mul_word(r)).collect();
        Ok(SubstitutionTable { m: self.m, rows })
    }

    /// Printed form, one string per row.
    pub fn to_rows(&self) -> Vec<String> {
        self.rows.iter().map(|w| w.to_bits(self.m)).collect()
    }
}

/// Inverse evaluation of a proper table: `r = (z ⊕ c₀)·D⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoder {
    offset: Word,
    inv: BitMatrix,
}

impl Decoder {
    #[inline]
    pub fn decode(&self, z: Word) -> Word {
        self.inv.mul_word(z ^ self.offset)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::gf2::DetRandom;

    pub(crate) fn table(rows: &[&str]) -> SubstitutionTable {
        let m = rows[0].len();
        let words = rows
            .iter()
            .map(|r| Word::from_bits(r, m).unwrap())
            .collect();
        SubstitutionTable::from_rows(m, words).unwrap()
    }

    /// First column of the worked masking table.
    pub(crate) fn simple_base() -> SubstitutionTable {
        table(&[
            "000000", "100000", "100000", "010000", "000000", "001000", "110000", "000100",
            "100000", "010110", "111000", "001001",
        ])
    }

    /// Brute-force inverse, independent of the linear solve.
    fn search_inverse(t: &SubstitutionTable, z: Word) -> Option<Word> {
        (0..1u64 << t.width()).map(Word).find(|&r| t.eval(r) == z)
    }

    /// Iterative peeling: repeatedly find a block whose difference vector owns a
    /// bit no other remaining block touches, read that input bit off the target,
    /// and strip the block's contribution. Gets stuck on tables without such a
    /// triangular structure, in which case it returns `None`.
    fn peel_inverse(t: &SubstitutionTable, z: Word) -> Option<Word> {
        let m = t.width();
        let mut rest = z ^ t.offset();
        let diffs: Vec<Word> = (0..m).map(|j| t.block(j).0 ^ t.block(j).1).collect();
        let mut remaining: Vec<usize> = (0..m).collect();
        let mut r = Word::ZERO;
        while !remaining.is_empty() {
            let (idx, bit) = remaining.iter().enumerate().find_map(|(idx, &j)| {
                (0..m)
                    .rev()
                    .find(|&p| {
                        diffs[j].bit(p) && remaining.iter().all(|&o| o == j || !diffs[o].bit(p))
                    })
                    .map(|p| (idx, p))
            })?;
            let j = remaining.remove(idx);
            if rest.bit(bit) {
                r ^= Word::unit(j);
                rest ^= diffs[j];
            }
        }
        rest.is_zero().then_some(r)
    }

    #[test]
    fn canonical_layout_and_identity() {
        let c = SubstitutionTable::canonical(4);
        assert_eq!(
            c.to_rows(),
            ["0000", "1000", "0000", "0100", "0000", "0010", "0000", "0001"]
        );
        let r = Word::from_bits("0110", 4).unwrap();
        assert_eq!(c.eval_forward(r).unwrap(), r);
        let c6 = SubstitutionTable::canonical(6);
        for w in 0..64 {
            assert_eq!(c6.eval(Word(w)), Word(w));
            assert_eq!(c6.eval_inverse_simple(Word(w)).unwrap(), Word(w));
        }
        assert!(c.is_proper());
    }

    #[test]
    fn worked_base_is_proper_and_invertible() {
        let t = simple_base();
        assert!(t.is_proper());
        for r in 0..64 {
            let z = t.eval(Word(r));
            assert_eq!(t.eval_inverse_simple(z).unwrap(), Word(r));
            assert_eq!(peel_inverse(&t, z), Some(Word(r)));
        }
    }

    #[test]
    fn improper_table_is_reported() {
        // d1 = d2 = 100000
        let t = table(&[
            "000000", "100000", "010000", "110000", "000000", "001000", "000000", "000100",
            "000000", "000010", "000000", "000001",
        ]);
        assert!(!t.is_proper());
        assert_eq!(t.eval_inverse_simple(Word::ZERO), Err(Error::ImproperTable));
    }

    #[test]
    fn width_one() {
        let mut s = DetRandom::new([1; 16], b"m1").stream();
        for _ in 0..8 {
            let t = SubstitutionTable::simple_random(1, &mut s);
            let (a, b) = t.block(0);
            assert_eq!(a ^ b, Word(1));
        }
    }

    #[test]
    fn random_simple_tables_are_proper_bijections() {
        let mut s = DetRandom::new([2; 16], b"simple").stream();
        for m in 1..=10 {
            let t = SubstitutionTable::simple_random(m, &mut s);
            assert!(t.is_proper());
            let dec = t.decoder().unwrap();
            let mut seen = vec![false; 1 << m];
            for r in 0..1u64 << m {
                let z = t.eval(Word(r));
                assert!(!seen[z.0 as usize], "collision at m={m}");
                seen[z.0 as usize] = true;
                assert_eq!(dec.decode(z), Word(r));
            }
        }
        let again =
            SubstitutionTable::simple_random(6, &mut DetRandom::new([3; 16], b"x").stream());
        assert_eq!(
            again,
            SubstitutionTable::simple_random(6, &mut DetRandom::new([3; 16], b"x").stream())
        );
    }

    #[test]
    fn linear_solve_agrees_with_search() {
        let mut s = DetRandom::new([4; 16], b"search").stream();
        for _ in 0..20 {
            let t = SubstitutionTable::simple_random(7, &mut s);
            for z in (0..128).step_by(5) {
                assert_eq!(
                    Some(t.eval_inverse_simple(Word(z)).unwrap()),
                    search_inverse(&t, Word(z))
                );
            }
        }
    }

    #[test]
    fn eval_rejects_wide_input() {
        let t = SubstitutionTable::canonical(4);
        assert!(t.eval_forward(Word(0b10000)).is_err());
        assert!(SubstitutionTable::from_rows(4, vec![Word::ZERO; 7]).is_err());
        assert!(SubstitutionTable::from_rows(2, vec![Word(8); 4]).is_err());
    }

    #[test]
    fn add_and_scale() {
        let t = simple_base();
        assert_eq!(t.add(&t).unwrap(), SubstitutionTable::zero(6));
        assert_eq!(t.add(&SubstitutionTable::zero(6)).unwrap(), t);
        assert_eq!(t.scale(&BitMatrix::identity(6)).unwrap(), t);
        assert!(t.scale(&BitMatrix::identity(5)).is_err());
        assert!(t.add(&SubstitutionTable::zero(5)).is_err());
    }
}
