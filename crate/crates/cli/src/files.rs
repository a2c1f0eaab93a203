use line_core::attacks::complexity_estimates;
use line_core::gf2::BitReader;
use line_core::pke::{self, keygen_with, KeygenOptions, SecretMode, HEADER_BYTES};
use line_core::{Ciphertext, Message, ParamSet, PublicKey, SecretKey, Word};

use crate::args::{DecryptArgs, EncryptArgs, KeygenArgs};
use crate::{read_file, write_file, CliError};

const LENGTH_PREFIX: usize = 8;

pub fn keygen(a: &KeygenArgs) -> Result<String, CliError> {
    let p = a.params.resolve(None)?;
    let seed = a.seed.unwrap_or_else(rand::random);
    let options = KeygenOptions {
        mode: a.mode(),
        steps: a.steps.into(),
    };
    let (pk, sk) = keygen_with(p, &seed, options)?;
    let pk_bytes = pk.to_bytes()?;
    let sk_bytes = sk.to_bytes()?;
    write_file(&a.pk, &pk_bytes)?;
    write_file(&a.sk, &sk_bytes)?;
    let e = complexity_estimates(p);
    let mode = match a.mode() {
        SecretMode::Independent => "independent",
        SecretMode::Shared => "shared",
    };
    Ok(format!(
        "keygen {p} mode={mode} pk={} pk_bytes={} pk_payload={} sk={} sk_bytes={} sk_core={} \
         n_beta={} n_f={} n_w={} n_t={}\n",
        a.pk.display(),
        pk_bytes.len(),
        pk_bytes.len() - HEADER_BYTES,
        a.sk.display(),
        sk_bytes.len(),
        p.secret_core_bytes(a.mode().table_count(p.l)),
        e.n_beta,
        e.n_f,
        e.n_w,
        e.n_t,
    ))
}

fn load_pk(path: &std::path::Path) -> Result<PublicKey, CliError> {
    Ok(PublicKey::from_bytes(&read_file(path)?)?)
}

fn load_sk(path: &std::path::Path) -> Result<SecretKey, CliError> {
    Ok(SecretKey::from_bytes(&read_file(path)?)?)
}

/// Packed tail words; padding bits must be zero.
fn parse_tail(hex_tail: &str, p: ParamSet) -> Result<Vec<Word>, CliError> {
    let bytes = hex::decode(hex_tail)
        .map_err(|e| CliError::Usage(format!("--inject-tail is not hex: {e}")))?;
    let bits = (p.k - p.l) * p.m;
    if bytes.len() != bits.div_ceil(8) {
        return Err(CliError::Usage(format!(
            "--inject-tail needs {} bytes for {} words of {} bits",
            bits.div_ceil(8),
            p.k - p.l,
            p.m
        )));
    }
    let mut r = BitReader::new(&bytes);
    let tail = r.read_words(p.k - p.l, p.m).expect("length checked");
    if !r.align() {
        return Err(CliError::Usage(
            "--inject-tail has nonzero padding bits".into(),
        ));
    }
    Ok(tail)
}

/// Plaintext bytes per block in multi-block mode.
fn block_bytes(p: ParamSet) -> Result<usize, CliError> {
    if p.message_bits() % 8 != 0 {
        return Err(CliError::Usage(format!(
            "--multi needs l·m divisible by 8, got {}",
            p.message_bits()
        )));
    }
    Ok(p.message_bytes())
}

pub fn encrypt(a: &EncryptArgs) -> Result<String, CliError> {
    let pk = load_pk(&a.pk)?;
    let p = pk.params();
    let plain = read_file(&a.input)?;
    let (out, blocks) = if a.multi {
        let n = block_bytes(p)?;
        let mut out = (plain.len() as u64).to_le_bytes().to_vec();
        let mut blocks = 0;
        for chunk in plain.chunks(n) {
            let mut block = chunk.to_vec();
            block.resize(n, 0);
            out.extend(pke::encrypt(&pk, &Message::from_bytes(p, &block)?)?.to_bytes());
            blocks += 1;
        }
        (out, blocks)
    } else {
        let mut msg = Message::from_bytes(p, &plain)?;
        if let Some(t) = &a.inject_tail {
            msg.tail = Some(parse_tail(t, p)?);
        }
        (pke::encrypt(&pk, &msg)?.to_bytes(), 1)
    };
    write_file(&a.output, &out)?;
    Ok(format!(
        "encrypt {p} blocks={blocks} in_bytes={} out_bytes={}\n",
        plain.len(),
        out.len()
    ))
}

pub fn decrypt(a: &DecryptArgs) -> Result<String, CliError> {
    let sk = load_sk(&a.sk)?;
    let pk = match &a.pk {
        Some(path) => Some(load_pk(path)?),
        None => None,
    };
    let p = sk.params();
    if pk.as_ref().is_some_and(|pk| pk.params() != p) {
        return Err(CliError::Malformed(
            "public and secret key parameter sets differ".into(),
        ));
    }
    let open = |bytes: &[u8]| -> Result<Vec<u8>, CliError> {
        let ct = Ciphertext::from_bytes_for(bytes, p)?;
        let head = match (&pk, a.checked) {
            (Some(pk), true) => pke::decrypt_checked(&sk, pk, &ct)?,
            _ => pke::decrypt(&sk, &ct)?,
        };
        Ok(Message::new(head).head_bytes(p))
    };
    let data = read_file(&a.input)?;
    let (plain, blocks) = if a.multi {
        let n = block_bytes(p)?;
        let ct_len = HEADER_BYTES + p.ciphertext_bytes();
        let prefix: [u8; LENGTH_PREFIX] = data
            .get(..LENGTH_PREFIX)
            .and_then(|s| s.try_into().ok())
            .ok_or_else(|| CliError::Malformed("missing length prefix".into()))?;
        let len = u64::from_le_bytes(prefix);
        let blocks = usize::try_from(len)
            .ok()
            .map(|len| len.div_ceil(n))
            .filter(|b| b.checked_mul(ct_len) == Some(data.len() - LENGTH_PREFIX))
            .ok_or_else(|| {
                CliError::Malformed(format!(
                    "length prefix {len} does not match {} ciphertext bytes",
                    data.len() - LENGTH_PREFIX
                ))
            })?;
        let mut plain = Vec::with_capacity(blocks * n);
        for block in data[LENGTH_PREFIX..].chunks(ct_len) {
            plain.extend(open(block)?);
        }
        plain.truncate(len as usize);
        (plain, blocks)
    } else {
        (open(&data)?, 1)
    };
    write_file(&a.output, &plain)?;
    Ok(format!(
        "decrypt {p} blocks={blocks} checked={} out_bytes={}\n",
        a.checked,
        plain.len()
    ))
}
