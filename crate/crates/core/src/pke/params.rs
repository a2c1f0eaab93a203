use std::fmt;

use crate::gf2::MAX_WORD_BITS;
use crate::{Error, Result};

/// `(m, k, l, q)`: word width, vector length, message words, share count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub q: usize,
}

impl ParamSet {
    pub const LINE128: ParamSet = ParamSet {
        m: 8,
        k: 32,
        l: 16,
        q: 3,
    };
    pub const LINE192: ParamSet = ParamSet {
        m: 16,
        k: 24,
        l: 12,
        q: 2,
    };
    pub const LINE256: ParamSet = ParamSet {
        m: 16,
        k: 32,
        l: 16,
        q: 2,
    };
    pub const PRESETS: [(&'static str, ParamSet); 3] = [
        ("LINE128", ParamSet::LINE128),
        ("LINE192", ParamSet::LINE192),
        ("LINE256", ParamSet::LINE256),
    ];

    /// Every field must fit one header byte.
    pub fn new(m: usize, k: usize, l: usize, q: usize) -> Result<Self> {
        let p = ParamSet { m, k, l, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ParamSet { m, k, l, q } = *self;
        if m == 0 || m > MAX_WORD_BITS {
            return Err(Error::InvalidParams(format!(
                "m must be in 1..={MAX_WORD_BITS}, got {m}"
            )));
        }
        if l == 0 || l >= k {
            return Err(Error::InvalidParams(format!(
                "need 1 <= l < k, got l={l}, k={k}"
            )));
        }
        if k > 255 {
            return Err(Error::InvalidParams(format!(
                "k must be at most 255, got {k}"
            )));
        }
        if !(2..=255).contains(&q) {
            return Err(Error::InvalidParams(format!(
                "q must be in 2..=255, got {q}"
            )));
        }
        Ok(())
    }

    pub fn preset(name: &str) -> Option<ParamSet> {
        Self::PRESETS
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|&(_, p)| p)
    }

    pub fn preset_name(&self) -> Option<&'static str> {
        Self::PRESETS
            .iter()
            .find(|(_, p)| p == self)
            .map(|&(n, _)| n)
    }

    /// Public tables `n_β = 2km²` bits.
    pub fn public_table_bits(&self) -> usize {
        2 * self.k * self.m * self.m
    }

    /// Secret factorizable tables `n_f = 2lm²` bits.
    pub fn secret_table_bits(&self) -> usize {
        2 * self.l * self.m * self.m
    }

    /// All `ω` matrices `n_w = qm²` bits, counting the identity `ω_1`.
    pub fn omega_bits(&self) -> usize {
        self.q * self.m * self.m
    }

    /// `t_A`: `n_t = lm` bits.
    pub fn t_bits(&self) -> usize {
        self.l * self.m
    }

    /// Ciphertext `n_u = qlm` bits.
    pub fn ciphertext_bits(&self) -> usize {
        self.q * self.l * self.m
    }

    /// Plaintext head `lm` bits.
    pub fn message_bits(&self) -> usize {
        self.l * self.m
    }

    pub fn message_bytes(&self) -> usize {
        self.message_bits().div_ceil(8)
    }

    pub fn ciphertext_bytes(&self) -> usize {
        self.ciphertext_bits().div_ceil(8)
    }

    /// Seed plus the `k` explicit tables `β'_{1i}`.
    pub fn public_key_payload_bytes(&self) -> usize {
        crate::gf2::SEED_BYTES + self.public_table_bits().div_ceil(8)
    }

    /// `ω_2..ω_q`, `n` secret tables and `t_A`, bit-packed.
    pub fn secret_core_bytes(&self, tables: usize) -> usize {
        ((self.q - 1) * self.m * self.m + tables * 2 * self.m * self.m + self.t_bits()).div_ceil(8)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ParamSet { m, k, l, q } = *self;
        match self.preset_name() {
            Some(n) => write!(f, "{n} (m={m}, k={k}, l={l}, q={q})"),
            None => write!(f, "m={m}, k={k}, l={l}, q={q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for (name, p) in ParamSet::PRESETS {
            p.validate().unwrap();
            assert_eq!(ParamSet::preset(name), Some(p));
            assert_eq!(p.preset_name(), Some(name));
        }
        assert_eq!(ParamSet::preset("line192"), Some(ParamSet::LINE192));
        assert_eq!(ParamSet::preset("LINE512"), None);
    }

    #[test]
    fn invalid_sets() {
        assert!(ParamSet::new(0, 4, 2, 2).is_err());
        assert!(ParamSet::new(33, 4, 2, 2).is_err());
        assert!(ParamSet::new(8, 4, 4, 2).is_err());
        assert!(ParamSet::new(8, 4, 0, 2).is_err());
        assert!(ParamSet::new(8, 4, 2, 1).is_err());
        assert!(ParamSet::new(8, 256, 2, 2).is_err());
        assert!(ParamSet::new(6, 12, 6, 2).is_ok());
    }

    #[test]
    fn key_sizes() {
        let p = ParamSet::LINE128;
        assert_eq!(p.public_key_payload_bytes(), 528);
        assert_eq!(p.secret_core_bytes(p.l), 288);
        assert_eq!(p.secret_core_bytes(1), 48);
        assert_eq!(ParamSet::LINE192.secret_core_bytes(12), 824);
        assert_eq!(ParamSet::LINE256.secret_core_bytes(16), 1088);
        assert_eq!(p.ciphertext_bytes(), 48);
    }
}
