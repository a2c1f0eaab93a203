use crate::pke::ParamSet;

/// Closed-form sizes (bits) and secrecy exponents (log₂) for one parameter set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimates {
    pub params: ParamSet,
    /// Generator seed `n_A`.
    pub n_a: usize,
    pub n_beta: usize,
    pub n_f: usize,
    pub n_w: usize,
    pub n_t: usize,
    pub n_u: usize,
    /// `s_T = (k−l)m`, also log₂ N₁.
    pub s_t_cipher: usize,
    /// `s_σ = (q−1)m²`, also log₂ N₂.
    pub s_sigma: usize,
    /// `s_t = lm`.
    pub s_t_key: usize,
    /// `s_β = l·log₂((2^m)!)`.
    pub s_beta: f64,
    /// log₂ N₃ read as `lm + l·log₂(2^m)`.
    pub n3_words: f64,
    /// log₂ N₃ read as `lm + l·log₂((2^m)!)`.
    pub n3_factorial: f64,
}

impl Estimates {
    pub fn min_secrecy(&self) -> usize {
        self.s_t_cipher.min(self.s_sigma)
    }
}

/// `log₂(n!)`: exact summation up to `2^20`, Stirling's series beyond.
pub fn log2_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 1 << 20 {
        return (2..=n).map(|i| (i as f64).log2()).sum();
    }
    let x = n as f64;
    let ln = x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x * x);
    ln / std::f64::consts::LN_2
}

/// `log₂((2^m)!)` without overflowing `2^m` for `m` up to 63.
fn log2_factorial_pow2(m: usize) -> f64 {
    log2_factorial(1u64 << m)
}

pub fn complexity_estimates(params: ParamSet) -> Estimates {
    let ParamSet { m, k, l, q } = params;
    let s_beta = l as f64 * log2_factorial_pow2(m);
    Estimates {
        params,
        n_a: 8 * crate::gf2::SEED_BYTES,
        n_beta: params.public_table_bits(),
        n_f: params.secret_table_bits(),
        n_w: params.omega_bits(),
        n_t: params.t_bits(),
        n_u: params.ciphertext_bits(),
        s_t_cipher: (k - l) * m,
        s_sigma: (q - 1) * m * m,
        s_t_key: l * m,
        s_beta,
        n3_words: (l * m + l * m) as f64,
        n3_factorial: (l * m) as f64 + s_beta,
    }
}
