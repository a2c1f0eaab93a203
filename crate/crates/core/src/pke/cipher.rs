use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::gf2::{BitReader, BitWriter, Word};
use crate::{Error, Result};

use super::keys::{PublicKey, SecretKey};
use super::params::ParamSet;

/// Plaintext head `x_1..x_l` and an optional explicit tail `x_{l+1}..x_k`.
/// Without a tail, encryption derives it from the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub head: Vec<Word>,
    pub tail: Option<Vec<Word>>,
}

impl Message {
    pub fn new(head: Vec<Word>) -> Self {
        Message { head, tail: None }
    }

    pub fn with_tail(head: Vec<Word>, tail: Vec<Word>) -> Self {
        Message {
            head,
            tail: Some(tail),
        }
    }

    /// Head words read from `lm` bits of `bytes`; padding bits must be zero.
    pub fn from_bytes(params: ParamSet, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != params.message_bytes() {
            return Err(Error::Dimension {
                op: "Message::from_bytes",
                expected: params.message_bytes(),
                found: bytes.len(),
            });
        }
        let mut r = BitReader::new(bytes);
        let head = r.read_words(params.l, params.m).expect("length checked");
        if !r.align() {
            return Err(Error::InvalidWord(
                "nonzero padding bits after the message head".into(),
            ));
        }
        Ok(Message::new(head))
    }

    pub fn head_bytes(&self, params: ParamSet) -> Vec<u8> {
        let mut w = BitWriter::new();
        w.push_words(&self.head, params.m);
        w.finish()
    }

    fn check(&self, params: ParamSet) -> Result<()> {
        let mask = Word::mask(params.m);
        if self.head.len() != params.l {
            return Err(Error::Dimension {
                op: "message head",
                expected: params.l,
                found: self.head.len(),
            });
        }
        if let Some(t) = &self.tail {
            if t.len() != params.k - params.l {
                return Err(Error::Dimension {
                    op: "message tail",
                    expected: params.k - params.l,
                    found: t.len(),
                });
            }
        }
        let all = self.head.iter().chain(self.tail.iter().flatten());
        if let Some(w) = all.into_iter().find(|w| w.0 & !mask != 0) {
            return Err(Error::InvalidWord(format!(
                "{w:?} wider than {} bits",
                params.m
            )));
        }
        Ok(())
    }

    /// `x_1..x_k`, deriving the tail when none is set.
    pub fn full(&self, params: ParamSet) -> Result<Vec<Word>> {
        self.check(params)?;
        let mut x = self.head.clone();
        match &self.tail {
            Some(t) => x.extend_from_slice(t),
            None => x.extend(derive_tail(&self.head, params)),
        }
        Ok(x)
    }
}

/// `x_{l+1}..x_k` from SHAKE-256(packed head ∥ 0x01 ∥ m ∥ k ∥ l ∥ q).
pub fn derive_tail(head: &[Word], params: ParamSet) -> Vec<Word> {
    let mut w = BitWriter::new();
    w.push_words(head, params.m);
    let mut h = Shake256::default();
    h.update(&w.finish());
    h.update(&[
        0x01,
        params.m as u8,
        params.k as u8,
        params.l as u8,
        params.q as u8,
    ]);
    let n = params.k - params.l;
    let mut out = vec![0u8; (n * params.m).div_ceil(8)];
    h.finalize_xof().read(&mut out);
    BitReader::new(&out)
        .read_words(n, params.m)
        .expect("buffer sized for the tail")
}

/// `u'_1..u'_q`, each `l` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub(crate) params: ParamSet,
    pub(crate) shares: Vec<Vec<Word>>,
}

impl Ciphertext {
    pub fn new(params: ParamSet, shares: Vec<Vec<Word>>) -> Result<Self> {
        params.validate()?;
        if shares.len() != params.q {
            return Err(Error::Dimension {
                op: "Ciphertext::new",
                expected: params.q,
                found: shares.len(),
            });
        }
        let mask = Word::mask(params.m);
        for s in &shares {
            if s.len() != params.l {
                return Err(Error::Dimension {
                    op: "Ciphertext::new",
                    expected: params.l,
                    found: s.len(),
                });
            }
            if s.iter().any(|w| w.0 & !mask != 0) {
                return Err(Error::InvalidWord("ciphertext word wider than m".into()));
            }
        }
        Ok(Ciphertext { params, shares })
    }

    pub fn params(&self) -> ParamSet {
        self.params
    }

    pub fn shares(&self) -> &[Vec<Word>] {
        &self.shares
    }

    /// Flip bit `bit` of the packed ciphertext (`0..qlm`).
    pub fn flip_bit(&mut self, bit: usize) {
        let m = self.params.m;
        let (word, pos) = (bit / m, bit % m);
        let (j, i) = (word / self.params.l, word % self.params.l);
        self.shares[j][i].0 ^= 1 << pos;
    }
}

/// Intermediate values of one encryption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncryptTrace {
    pub x: Vec<Word>,
    /// `y_{j,i} = β'_{j,i}(x_i)`, `q × k`.
    pub y: Vec<Vec<Word>>,
    pub ciphertext: Ciphertext,
}

pub fn encrypt(pk: &PublicKey, msg: &Message) -> Result<Ciphertext> {
    Ok(encrypt_trace(pk, msg)?.ciphertext)
}

pub fn encrypt_trace(pk: &PublicKey, msg: &Message) -> Result<EncryptTrace> {
    let params = pk.params;
    let x = msg.full(params)?;
    let y: Vec<Vec<Word>> = pk
        .tables
        .iter()
        .map(|row| row.iter().zip(&x).map(|(t, &xi)| t.eval(xi)).collect())
        .collect();
    let shares = y
        .iter()
        .map(|yj| pk.a.apply_words(yj))
        .collect::<Result<Vec<_>>>()?;
    Ok(EncryptTrace {
        x,
        y,
        ciphertext: Ciphertext { params, shares },
    })
}

/// Intermediate values of one decryption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecryptTrace {
    /// `u'_σ = Σ_j u'_j ω_j`
    pub u_prime: Vec<Word>,
    /// `u_σ = u'_σ + t_A`
    pub u_sigma: Vec<Word>,
    /// `y[l] = A1⁻¹ × u_σ`
    pub y: Vec<Word>,
    pub head: Vec<Word>,
}

/// Total on well-shaped input: any ciphertext decodes to some head.
pub fn decrypt(sk: &SecretKey, ct: &Ciphertext) -> Result<Vec<Word>> {
    Ok(decrypt_trace(sk, ct)?.head)
}

pub fn decrypt_trace(sk: &SecretKey, ct: &Ciphertext) -> Result<DecryptTrace> {
    if ct.params != sk.params {
        return Err(Error::ParamsMismatch);
    }
    let u_prime = sk.omegas.aggregate_vectors(&ct.shares)?;
    let u_sigma: Vec<Word> = u_prime.iter().zip(&sk.t_a).map(|(&u, &t)| u ^ t).collect();
    let y = sk.a1_inv.apply_words(&u_sigma)?;
    let head = y
        .iter()
        .enumerate()
        .map(|(i, &yi)| sk.decoder(i).decode(yi))
        .collect();
    Ok(DecryptTrace {
        u_prime,
        u_sigma,
        y,
        head,
    })
}

/// Decrypts, re-derives the tail, re-encrypts and rejects on any mismatch.
pub fn decrypt_checked(sk: &SecretKey, pk: &PublicKey, ct: &Ciphertext) -> Result<Vec<Word>> {
    if pk.params != sk.params || ct.params != sk.params {
        return Err(Error::ParamsMismatch);
    }
    let head = decrypt(sk, ct)?;
    let again = encrypt(pk, &Message::new(head.clone()))?;
    if again != *ct {
        return Err(Error::Reject);
    }
    Ok(head)
}
