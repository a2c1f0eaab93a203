//! Arithmetic in `F(2^m)` for `m <= 32`.
//!
//! Elements are [`Word`]s read as polynomials with bit 0 the coefficient of `x⁰`.

use super::word::{Word, MAX_WORD_BITS};
use crate::{Error, Result};

/// `F(2^m)` with a fixed irreducible modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2m {
    m: usize,
    /// Full modulus including the `x^m` term.
    modulus: u64,
}

/// Carry-less product of two polynomials of degree < 32.
#[inline]
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut bits = b;
    while bits != 0 {
        let i = bits.trailing_zeros();
        acc ^= a << i;
        bits &= bits - 1;
    }
    acc
}

#[inline]
fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, f: u64) -> u64 {
    let df = degree(f);
    while a != 0 && degree(a) >= df {
        a ^= f << (degree(a) - df);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `m` is irreducible iff `x^(2^m) ≡ x (mod f)` and
/// `gcd(x^(2^(m/p)) - x, f) = 1` for every prime `p | m`.
pub fn is_irreducible(f: u64) -> bool {
    let m = degree(f);
    if m < 1 {
        return false;
    }
    let m = m as usize;
    let x_pow_2k = |k: usize| {
        let mut acc = poly_mod(0b10, f);
        for _ in 0..k {
            acc = poly_mod(clmul(acc, acc), f);
        }
        acc
    };
    if x_pow_2k(m) != poly_mod(0b10, f) {
        return false;
    }
    prime_factors(m)
        .into_iter()
        .all(|p| poly_gcd(f, x_pow_2k(m / p) ^ 0b10) == 1)
}

/// The modulus used for width `m`. The common widths use fixed low-weight
/// polynomials; any other width gets the numerically smallest irreducible
/// polynomial with a nonzero constant term.
pub fn modulus_for(m: usize) -> u64 {
    match m {
        6 => (1 << 6) | 0b11,
        8 => 0x11B,
        16 => 0x1002B,
        32 => (1 << 32) | 0x8D,
        _ => {
            let top = 1u64 << m;
            (top | 1..top << 1)
                .step_by(2)
                .find(|&f| is_irreducible(f))
                .expect("an irreducible polynomial exists for every degree")
        }
    }
}

impl Gf2m {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_WORD_BITS {
            return Err(Error::InvalidParams(format!(
                "field width {m} outside 1..={MAX_WORD_BITS}"
            )));
        }
        Ok(Gf2m {
            m,
            modulus: modulus_for(m),
        })
    }

    /// Field with an explicit modulus, which must be irreducible.
    pub fn with_modulus(modulus: u64) -> Result<Self> {
        let m = degree(modulus);
        if m < 1 || m as usize > MAX_WORD_BITS || !is_irreducible(modulus) {
            return Err(Error::InvalidParams(format!(
                "{modulus:#x} is not an irreducible polynomial of degree 1..={MAX_WORD_BITS}"
            )));
        }
        Ok(Gf2m {
            m: m as usize,
            modulus,
        })
    }

    pub fn width(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn mul(&self, a: Word, b: Word) -> Word {
        Word(poly_mod(clmul(a.0, b.0), self.modulus))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Word) -> Result<Word> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // Invariant: s_i·a ≡ r_i (mod f).
        let (mut r0, mut r1) = (self.modulus, a.0);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 1 {
            let mut q = 0u64;
            let mut rem = r0;
            let d1 = degree(r1);
            while rem != 0 && degree(rem) >= d1 {
                let shift = degree(rem) - d1;
                q ^= 1 << shift;
                rem ^= r1 << shift;
            }
            (r0, r1) = (r1, rem);
            (s0, s1) = (s1, s0 ^ clmul(q, s1));
        }
        Ok(Word(poly_mod(s1, self.modulus)))
    }

    pub fn pow(&self, a: Word, mut e: u64) -> Word {
        let mut base = a;
        let mut acc = Word(1);
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_bits(s, 6).unwrap()
    }

    #[test]
    fn fixed_moduli_are_irreducible() {
        for m in [6, 8, 16, 32] {
            assert!(is_irreducible(modulus_for(m)), "m={m}");
            assert_eq!(degree(modulus_for(m)) as usize, m);
        }
        assert!(!is_irreducible(0b101)); // x²+1 = (x+1)²
        assert!(is_irreducible(0b111));
    }

    #[test]
    fn searched_moduli_for_other_widths() {
        for m in 1..=32 {
            let f = modulus_for(m);
            assert_eq!(degree(f) as usize, m);
            assert!(is_irreducible(f));
        }
        assert_eq!(modulus_for(1), 0b11);
        assert_eq!(modulus_for(2), 0b111);
    }

    #[test]
    fn gamma_products_match_worked_table() {
        let f = Gf2m::new(6).unwrap();
        // γ = 1 + x + x² + x⁴
        let gamma = Word(0b10111);
        assert_eq!(gamma, w("111010"));
        let pairs = [
            ("101111", "001011"),
            ("100111", "110101"),
            ("101100", "011011"),
            ("011000", "100011"),
            ("000001", "101111"),
            ("110000", "100111"),
        ];
        for (a, b) in pairs {
            assert_eq!(f.mul(w(a), gamma), w(b), "{a}·γ");
        }
        assert_eq!(f.mul(w("101111"), Word(1)), w("101111"));
    }

    #[test]
    fn inverse_of_gamma() {
        let f = Gf2m::new(6).unwrap();
        let gamma = w("111010");
        let g = f.inv(gamma).unwrap();
        assert_eq!(f.mul(gamma, g), w("100000"));
        assert_eq!(f.inv(Word(1)).unwrap(), Word(1));
        assert_eq!(f.inv(Word::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn euclid_agrees_with_fermat() {
        // a^(2^m - 2) is an independent route to a⁻¹.
        for m in [1, 2, 5, 6, 8] {
            let f = Gf2m::new(m).unwrap();
            for a in 1..(1u64 << m) {
                let a = Word(a);
                assert_eq!(f.inv(a).unwrap(), f.pow(a, (1u64 << m) - 2), "m={m}");
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(Gf2m::with_modulus(0b101).is_err());
        assert!(Gf2m::with_modulus(0x11B).is_ok());
        assert!(Gf2m::new(0).is_err());
        assert!(Gf2m::new(33).is_err());
    }
}
