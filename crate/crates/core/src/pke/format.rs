//! Binary formats. Every object starts with a 10-byte header
//! `"LINE" ∥ version ∥ kind ∥ m ∥ k ∥ l ∥ q` followed by a payload whose words
//! are bit-packed continuously (little-endian bit order) and zero-padded to a
//! byte boundary at the end of each packed section.

use crate::gf2::{BitMatrix, BitReader, BitWriter, Seed, Word, SEED_BYTES};
use crate::logsig::SubstitutionTable;
use crate::sharing::OmegaSet;
use crate::{DecodeError, Error, Result};

use super::cipher::{Ciphertext, Message};
use super::keys::{regenerate_public, PublicKey, SecretKey, SecretMode};
use super::params::ParamSet;

pub const MAGIC: &[u8; 4] = b"LINE";
pub const VERSION: u8 = 1;
pub const HEADER_BYTES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Kind {
    PublicKey = 1,
    SecretKey = 2,
    Ciphertext = 3,
    Message = 4,
}

impl Kind {
    fn from_byte(b: u8) -> Option<Kind> {
        match b {
            1 => Some(Kind::PublicKey),
            2 => Some(Kind::SecretKey),
            3 => Some(Kind::Ciphertext),
            4 => Some(Kind::Message),
            _ => None,
        }
    }
}

fn header(kind: Kind, p: ParamSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_BYTES);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[
        VERSION, kind as u8, p.m as u8, p.k as u8, p.l as u8, p.q as u8,
    ]);
    out
}

/// Reads and validates the header without checking the kind.
pub fn peek_header(bytes: &[u8]) -> Result<(Kind, ParamSet), DecodeError> {
    if bytes.len() < HEADER_BYTES {
        return Err(DecodeError::Truncated {
            needed: HEADER_BYTES,
            available: bytes.len(),
        });
    }
    if &bytes[..4] != MAGIC {
        return Err(DecodeError::BadMagic);
    }
    if bytes[4] != VERSION {
        return Err(DecodeError::Version(bytes[4]));
    }
    let kind = Kind::from_byte(bytes[5]).ok_or(DecodeError::Kind {
        expected: 0,
        found: bytes[5],
    })?;
    let [m, k, l, q] = [bytes[6], bytes[7], bytes[8], bytes[9]].map(usize::from);
    let params = ParamSet::new(m, k, l, q).map_err(|e| DecodeError::Params(e.to_string()))?;
    Ok((kind, params))
}

/// Header check plus exact payload length; returns the payload.
fn open(
    bytes: &[u8],
    kind: Kind,
    payload_len: impl Fn(ParamSet, &[u8]) -> usize,
) -> Result<(ParamSet, &[u8]), DecodeError> {
    let (found, params) = peek_header(bytes)?;
    if found != kind {
        return Err(DecodeError::Kind {
            expected: kind as u8,
            found: found as u8,
        });
    }
    let payload = &bytes[HEADER_BYTES..];
    let need = payload_len(params, payload);
    if payload.len() < need {
        return Err(DecodeError::Truncated {
            needed: HEADER_BYTES + need,
            available: bytes.len(),
        });
    }
    if payload.len() > need {
        return Err(DecodeError::Trailing(payload.len() - need));
    }
    Ok((params, payload))
}

fn take_seed(payload: &[u8]) -> Seed {
    let mut seed = [0u8; SEED_BYTES];
    seed.copy_from_slice(&payload[..SEED_BYTES]);
    seed
}

fn words(r: &mut BitReader<'_>, count: usize, m: usize) -> Vec<Word> {
    r.read_words(count, m).expect("payload length checked")
}

fn finish(r: &mut BitReader<'_>) -> Result<(), DecodeError> {
    if r.align() {
        Ok(())
    } else {
        Err(DecodeError::Payload("nonzero padding bits"))
    }
}

fn push_tables(w: &mut BitWriter, tables: &[SubstitutionTable], m: usize) {
    for t in tables {
        w.push_words(t.rows(), m);
    }
}

fn read_tables(r: &mut BitReader<'_>, n: usize, m: usize) -> Vec<SubstitutionTable> {
    (0..n)
        .map(|_| SubstitutionTable::from_rows(m, words(r, 2 * m, m)).expect("2m rows of m bits"))
        .collect()
}

impl PublicKey {
    /// Header, public seed and the `k` tables `β'_{1i}`.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let seed = self.seed.ok_or(Error::NotSeedDerived)?;
        let mut out = header(Kind::PublicKey, self.params);
        out.extend_from_slice(&seed);
        let mut w = BitWriter::new();
        push_tables(&mut w, &self.tables[0], self.params.m);
        out.extend(w.finish());
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<PublicKey> {
        let (params, payload) = open(bytes, Kind::PublicKey, |p, _| p.public_key_payload_bytes())?;
        let seed = take_seed(payload);
        let mut r = BitReader::new(&payload[SEED_BYTES..]);
        let first = read_tables(&mut r, params.k, params.m);
        finish(&mut r)?;
        PublicKey::from_public_seed(params, seed, first)
    }
}

impl SecretKey {
    /// Header, mode byte, public seed, then `ω_2..ω_q`, the secret tables and
    /// `t_A` packed as one section.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let seed = self.public_seed.ok_or(Error::NotSeedDerived)?;
        let m = self.params.m;
        let mut out = header(Kind::SecretKey, self.params);
        out.push(match self.mode {
            SecretMode::Independent => 0,
            SecretMode::Shared => 1,
        });
        out.extend_from_slice(&seed);
        let mut w = BitWriter::new();
        for om in self.omegas.secret() {
            w.push_words(&om.row_words(), m);
        }
        push_tables(&mut w, &self.tables, m);
        w.push_words(&self.t_a, m);
        out.extend(w.finish());
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<SecretKey> {
        let mode_of = |b: u8| match b {
            0 => Some(SecretMode::Independent),
            1 => Some(SecretMode::Shared),
            _ => None,
        };
        let (params, payload) = open(bytes, Kind::SecretKey, |p, payload| {
            let n = payload
                .first()
                .and_then(|&b| mode_of(b))
                .map_or(p.l, |mode| mode.table_count(p.l));
            1 + SEED_BYTES + p.secret_core_bytes(n)
        })?;
        let mode = mode_of(payload[0]).ok_or(DecodeError::Payload("unknown secret table mode"))?;
        let seed = take_seed(&payload[1..]);
        let ParamSet { m, l, q, .. } = params;
        let mut r = BitReader::new(&payload[1 + SEED_BYTES..]);
        let omegas = (1..q)
            .map(|_| BitMatrix::from_words(&words(&mut r, m, m), m))
            .collect();
        let tables = read_tables(&mut r, mode.table_count(l), m);
        let t_a = words(&mut r, l, m);
        finish(&mut r)?;
        let omegas =
            OmegaSet::new(m, omegas).map_err(|_| DecodeError::Payload("singular omega matrix"))?;
        if tables.iter().any(|t| !t.is_proper()) {
            return Err(DecodeError::Payload("secret table is not proper").into());
        }
        let (a, _) = regenerate_public(params, &seed)?;
        SecretKey::assemble(params, Some(seed), mode, omegas, tables, t_a, &a)
    }
}

impl Ciphertext {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = header(Kind::Ciphertext, self.params);
        let mut w = BitWriter::new();
        for s in &self.shares {
            w.push_words(s, self.params.m);
        }
        out.extend(w.finish());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Ciphertext> {
        let (params, payload) = open(bytes, Kind::Ciphertext, |p, _| p.ciphertext_bytes())?;
        let mut r = BitReader::new(payload);
        let shares = (0..params.q)
            .map(|_| words(&mut r, params.l, params.m))
            .collect();
        finish(&mut r)?;
        Ok(Ciphertext { params, shares })
    }

    /// As `from_bytes`, also requiring the header to carry `params`.
    pub fn from_bytes_for(bytes: &[u8], params: ParamSet) -> Result<Ciphertext> {
        let ct = Ciphertext::from_bytes(bytes)?;
        if ct.params != params {
            return Err(DecodeError::ParamsMismatch.into());
        }
        Ok(ct)
    }
}

impl Message {
    /// Header, a tail flag byte, then the head (and tail, if present).
    pub fn to_bytes(&self, params: ParamSet) -> Result<Vec<u8>> {
        let x = self.full(params)?;
        let mut out = header(Kind::Message, params);
        out.push(self.tail.is_some() as u8);
        let mut w = BitWriter::new();
        let n = if self.tail.is_some() {
            params.k
        } else {
            params.l
        };
        w.push_words(&x[..n], params.m);
        out.extend(w.finish());
        Ok(out)
    }

    pub fn decode(bytes: &[u8]) -> Result<(ParamSet, Message)> {
        let (params, payload) = open(bytes, Kind::Message, |p, payload| {
            let n = if payload.first() == Some(&1) {
                p.k
            } else {
                p.l
            };
            1 + (n * p.m).div_ceil(8)
        })?;
        let with_tail = match payload[0] {
            0 => false,
            1 => true,
            _ => return Err(DecodeError::Payload("unknown tail flag").into()),
        };
        let mut r = BitReader::new(&payload[1..]);
        let head = words(&mut r, params.l, params.m);
        let tail = with_tail.then(|| words(&mut r, params.k - params.l, params.m));
        finish(&mut r)?;
        Ok((params, Message { head, tail }))
    }
}
