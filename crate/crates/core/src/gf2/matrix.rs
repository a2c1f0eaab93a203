//! Dense bit vectors and bit matrices over F₂.
//!
//! Rows are packed little-endian into `u64` limbs: column `c` of a row lives in
//! bit `c % 64` of limb `c / 64`. All products are row-vector × matrix, which is
//! how every map in the scheme is written.

use std::fmt;

use super::word::Word;
use crate::{Error, Result};

#[inline]
fn limbs_for(bits: usize) -> usize {
    (bits + 63) / 64
}

/// A bit vector of arbitrary length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    limbs: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            limbs: vec![0; limbs_for(len)],
        }
    }

    pub fn from_word(w: Word, len: usize) -> Self {
        assert!(len <= 64);
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.limbs[0] = w.0 & Word::mask(len);
        }
        v
    }

    pub fn parse(bits: &str) -> Result<Self> {
        let chars: Vec<char> = bits.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = BitVec::zeros(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::InvalidWord(bits.to_string())),
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.limbs[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.limbs[i / 64] |= bit;
        } else {
            self.limbs[i / 64] &= !bit;
        }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// The vector as a single word. Only valid for `len <= 64`.
    pub fn to_word(&self) -> Word {
        assert!(self.len <= 64);
        Word(self.limbs.first().copied().unwrap_or(0))
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bits())
    }
}

/// A dense `rows × cols` matrix over F₂, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    limbs: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = limbs_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            limbs: vec![0; stride * rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from printed rows, each row a bit string with column 1 leftmost.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<BitVec> = rows
            .iter()
            .map(|r| BitVec::parse(r))
            .collect::<Result<_>>()?;
        BitMatrix::from_bitvecs(&parsed)
    }

    pub fn from_bitvecs(rows: &[BitVec]) -> Result<Self> {
        let cols = rows.first().map(BitVec::len).unwrap_or(0);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::Dimension {
                    op: "BitMatrix::from_bitvecs",
                    expected: cols,
                    found: v.len(),
                });
            }
            m.row_limbs_mut(r).copy_from_slice(v.limbs());
        }
        Ok(m)
    }

    /// Build an `n × cols` matrix whose rows are the given words.
    pub fn from_words(words: &[Word], cols: usize) -> Self {
        assert!(cols <= 64);
        let mut m = BitMatrix::zeros(words.len(), cols);
        for (r, w) in words.iter().enumerate() {
            if cols > 0 {
                m.limbs[r * m.stride] = w.0 & Word::mask(cols);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.limbs[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.stride + c / 64;
        let bit = 1u64 << (c % 64);
        if value {
            self.limbs[idx] |= bit;
        } else {
            self.limbs[idx] &= !bit;
        }
    }

    #[inline]
    fn row_limbs(&self, r: usize) -> &[u64] {
        &self.limbs[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_limbs_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.limbs[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            limbs: self.row_limbs(r).to_vec(),
        }
    }

    /// Row `r` as a word. Only valid for `cols <= 64`.
    #[inline]
    pub fn row_word(&self, r: usize) -> Word {
        debug_assert!(self.cols <= 64);
        if self.stride == 0 {
            Word::ZERO
        } else {
            Word(self.limbs[r * self.stride])
        }
    }

    /// All rows as words. Only valid for `cols <= 64`.
    pub fn row_words(&self) -> Vec<Word> {
        (0..self.rows).map(|r| self.row_word(r)).collect()
    }

    fn xor_row_into(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.limbs.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.limbs.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.stride {
            self.limbs.swap(a * self.stride + i, b * self.stride + i);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Row vector × matrix: result column `n` is the XOR of `M[p][n]` over the
    /// rows `p` selected by `v`.
    pub fn vec_mul(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows {
            return Err(Error::Dimension {
                op: "vec_mat_mul",
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.cols);
        for p in (0..self.rows).filter(|&p| v.get(p)) {
            for (o, x) in out.limbs.iter_mut().zip(self.row_limbs(p)) {
                *o ^= x;
            }
        }
        Ok(out)
    }

    /// Word × matrix for matrices with at most 64 rows and columns.
    #[inline]
    pub fn mul_word(&self, w: Word) -> Word {
        debug_assert!(self.rows <= 64 && self.cols <= 64);
        let mut acc = 0u64;
        let mut bits = w.0;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            acc ^= self.limbs[p * self.stride];
            bits &= bits - 1;
        }
        Word(acc)
    }

    /// Matrix product over F₂.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension {
                op: "mat_mul",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for p in (0..self.cols).filter(|&p| self.get(r, p)) {
                let src = rhs.row_limbs(p);
                let dst = &mut out.limbs[r * out.stride..(r + 1) * out.stride];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// Apply a `l × k` matrix to a vector of `k` words: `u_i = XOR_{j: A[i][j]=1} y_j`.
    pub fn apply_words(&self, y: &[Word]) -> Result<Vec<Word>> {
        if y.len() != self.cols {
            return Err(Error::Dimension {
                op: "mat_apply_words",
                expected: self.cols,
                found: y.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Word::ZERO;
                for (limb_idx, &limb) in self.row_limbs(i).iter().enumerate() {
                    let mut bits = limb;
                    while bits != 0 {
                        let j = limb_idx * 64 + bits.trailing_zeros() as usize;
                        acc ^= y[j];
                        bits &= bits - 1;
                    }
                }
                acc
            })
            .collect())
    }

    /// Rank over F₂ by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(None)
    }

    /// Reduce in place to row echelon form; when `aug` is given, apply the same
    /// row operations to it. Pivots are taken column by column, choosing the
    /// first row at or below the current one with a set bit. Returns the rank.
    fn eliminate(&mut self, mut aug: Option<&mut BitMatrix>) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            if let Some(a) = aug.as_deref_mut() {
                a.swap_rows(rank, pivot);
            }
            for r in 0..self.rows {
                if r != rank && self.get(r, c) {
                    self.xor_row_into(r, rank);
                    if let Some(a) = aug.as_deref_mut() {
                        a.xor_row_into(r, rank);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse over F₂, or [`Error::Singular`] when the rank is short.
    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension {
                op: "mat_inverse",
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut work = self.clone();
        let mut inv = BitMatrix::identity(self.rows);
        if work.eliminate(Some(&mut inv)) < self.rows {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    /// Solve `x · self = b` for a row vector `x`. Returns one solution and a
    /// basis of the left null space, or `None` when the system is inconsistent.
    pub fn solve_left(&self, b: &BitVec) -> Result<Option<(BitVec, Vec<BitVec>)>> {
        if b.len() != self.cols {
            return Err(Error::Dimension {
                op: "solve_left",
                expected: self.cols,
                found: b.len(),
            });
        }
        // x·M = b  ⇔  Mᵀ·xᵀ = bᵀ: eliminate on [Mᵀ | b].
        let t = self.transpose();
        let n = t.cols;
        let mut aug = BitMatrix::zeros(t.rows, n + 1);
        for r in 0..t.rows {
            for c in 0..n {
                if t.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            if b.get(r) {
                aug.set(r, n, true);
            }
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..n {
            if rank == aug.rows {
                break;
            }
            let Some(p) = (rank..aug.rows).find(|&r| aug.get(r, c)) else {
                continue;
            };
            aug.swap_rows(rank, p);
            for r in 0..aug.rows {
                if r != rank && aug.get(r, c) {
                    aug.xor_row_into(r, rank);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if (rank..aug.rows).any(|r| aug.get(r, n)) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(n);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, aug.get(r, n));
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = BitVec::zeros(n);
                v.set(f, true);
                for (r, &c) in pivots.iter().enumerate() {
                    if aug.get(r, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect();
        Ok(Some((x, kernel)))
    }

    /// Pack rows consecutively, each row padded to a byte boundary; column 0 is
    /// bit 0 of the row's first byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let row_bytes = (self.cols + 7) / 8;
        let mut out = Vec::with_capacity(row_bytes * self.rows);
        for r in 0..self.rows {
            let limbs = self.row_limbs(r);
            for b in 0..row_bytes {
                out.push((limbs[b / 8] >> ((b % 8) * 8)) as u8);
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], rows: usize, cols: usize) -> Result<BitMatrix> {
        let row_bytes = (cols + 7) / 8;
        if bytes.len() != row_bytes * rows {
            return Err(Error::Dimension {
                op: "BitMatrix::from_bytes",
                expected: row_bytes * rows,
                found: bytes.len(),
            });
        }
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for (b, &byte) in bytes[r * row_bytes..(r + 1) * row_bytes].iter().enumerate() {
                m.limbs[r * m.stride + b / 8] |= (byte as u64) << ((b % 8) * 8);
            }
            if cols % 64 != 0 && m.stride > 0 {
                let last = r * m.stride + m.stride - 1;
                if m.limbs[last] >> (cols % 64) != 0 {
                    return Err(Error::InvalidWord("nonzero padding bits".into()));
                }
            }
        }
        Ok(m)
    }

    /// Copy of the column range `[from, to)`.
    pub fn columns(&self, from: usize, to: usize) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, to - from);
        for r in 0..self.rows {
            for c in from..to {
                if self.get(r, c) {
                    out.set(r, c - from, true);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self ∥ rhs]`.
    pub fn concat(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension {
                op: "BitMatrix::concat",
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn to_rows(&self) -> Vec<String> {
        (0..self.rows).map(|r| self.row(r).to_bits()).collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BitMatrix {}x{} {:?}",
            self.rows,
            self.cols,
            self.to_rows()
        )
    }
}
