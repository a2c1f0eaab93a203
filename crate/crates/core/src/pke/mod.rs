//! Parameter sets, key generation, encryption, decryption and file formats.
//!
//! Encryption evaluates every public table on its message word and applies
//! `A` to each of the `q` resulting vectors. Decryption aggregates the shares
//! with `ω`, removes `t_A`, solves the square part of the system with `A1⁻¹`
//! and inverts the secret tables.

mod cipher;
mod format;
mod keys;
mod params;

pub use cipher::{
    decrypt, decrypt_checked, decrypt_trace, derive_tail, encrypt, encrypt_trace, Ciphertext,
    DecryptTrace, EncryptTrace, Message,
};
pub use format::{peek_header, Kind, HEADER_BYTES, MAGIC, VERSION};
pub use keys::{
    keygen, keygen_from_parts, keygen_with, seeded_parts, KeyParts, KeygenOptions, PublicKey,
    SecretKey, SecretMode,
};
pub use params::ParamSet;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{DetRandom, Word};
    use crate::logsig::MaskingSteps;
    use crate::Error;

    fn random_head(p: ParamSet, s: &mut crate::gf2::BitStream) -> Vec<Word> {
        (0..p.l).map(|_| s.next_word(p.m)).collect()
    }

    #[test]
    fn keygen_is_deterministic() {
        let (pk1, sk1) = keygen(ParamSet::LINE128, &[1; 16]).unwrap();
        let (pk2, sk2) = keygen(ParamSet::LINE128, &[1; 16]).unwrap();
        assert_eq!(pk1, pk2);
        assert_eq!(sk1, sk2);
        let (pk3, _) = keygen(ParamSet::LINE128, &[2; 16]).unwrap();
        assert_ne!(pk1, pk3);
    }

    #[test]
    fn seeded_parts_rebuild_the_same_keys() {
        let p = ParamSet::new(6, 12, 6, 3).unwrap();
        let (pk, sk) = keygen(p, &[12; 16]).unwrap();
        let (public_seed, parts) = seeded_parts(p, &[12; 16], KeygenOptions::default()).unwrap();
        assert_eq!(pk.seed(), Some(&public_seed));
        let (pk2, sk2) = keygen_from_parts(p, parts).unwrap();
        assert_eq!(pk2.tables(), pk.tables());
        assert_eq!(sk2.t_a(), sk.t_a());
    }

    #[test]
    fn system_matrix_prefix_is_invertible() {
        let (pk, sk) = keygen(ParamSet::LINE256, &[3; 16]).unwrap();
        let a1 = pk.system_matrix().columns(0, 16);
        assert_eq!(
            a1.mul(sk.a1_inverse()).unwrap(),
            crate::gf2::BitMatrix::identity(16)
        );
    }

    #[test]
    fn roundtrip_across_modes_and_steps() {
        let mut s = DetRandom::new([4; 16], b"msgs").stream();
        for p in [
            ParamSet::new(6, 12, 6, 2).unwrap(),
            ParamSet::new(3, 5, 2, 4).unwrap(),
            ParamSet::new(1, 2, 1, 2).unwrap(),
            ParamSet::new(32, 4, 2, 2).unwrap(),
        ] {
            for mode in [SecretMode::Independent, SecretMode::Shared] {
                for steps in [
                    MaskingSteps::FULL,
                    MaskingSteps::SHUFFLE_AND_OFFSET,
                    MaskingSteps::NONE,
                ] {
                    let (pk, sk) = keygen_with(p, &[5; 16], KeygenOptions { mode, steps }).unwrap();
                    for _ in 0..20 {
                        let head = random_head(p, &mut s);
                        let ct = encrypt(&pk, &Message::new(head.clone())).unwrap();
                        assert_eq!(decrypt(&sk, &ct).unwrap(), head);
                        assert_eq!(decrypt_checked(&sk, &pk, &ct).unwrap(), head);
                    }
                }
            }
        }
    }

    #[test]
    fn encryption_is_deterministic() {
        let (pk, _) = keygen(ParamSet::LINE192, &[6; 16]).unwrap();
        let msg = Message::new(vec![Word(0xBEEF); 12]);
        assert_eq!(encrypt(&pk, &msg).unwrap(), encrypt(&pk, &msg).unwrap());
    }

    #[test]
    fn zero_ciphertext_decrypts_to_something() {
        let p = ParamSet::LINE128;
        let (pk, sk) = keygen(p, &[7; 16]).unwrap();
        let zero = Ciphertext::new(p, vec![vec![Word::ZERO; p.l]; p.q]).unwrap();
        let head = decrypt(&sk, &zero).unwrap();
        let expected: Vec<Word> = sk
            .a1_inverse()
            .apply_words(sk.t_a())
            .unwrap()
            .iter()
            .enumerate()
            .map(|(i, &y)| sk.table(i).decoder().unwrap().decode(y))
            .collect();
        assert_eq!(head, expected);
        assert_eq!(decrypt_checked(&sk, &pk, &zero), Err(Error::Reject));
    }

    #[test]
    fn tampering_and_foreign_keys_rejected() {
        let p = ParamSet::LINE128;
        let (pk, sk) = keygen(p, &[8; 16]).unwrap();
        let (pk_other, _) = keygen(p, &[9; 16]).unwrap();
        let mut s = DetRandom::new([8; 16], b"tamper").stream();
        for _ in 0..50 {
            let msg = Message::new(random_head(p, &mut s));
            let ct = encrypt(&pk, &msg).unwrap();
            let mut bad = ct.clone();
            bad.flip_bit(s.next_below(p.ciphertext_bits()));
            assert_eq!(decrypt_checked(&sk, &pk, &bad), Err(Error::Reject));
            let foreign = encrypt(&pk_other, &msg).unwrap();
            assert_eq!(decrypt_checked(&sk, &pk, &foreign), Err(Error::Reject));
        }
    }

    #[test]
    fn explicit_tail_is_used_and_must_fit() {
        let p = ParamSet::new(6, 12, 6, 2).unwrap();
        let (pk, sk) = keygen(p, &[10; 16]).unwrap();
        let head = vec![Word(1); 6];
        let derived = Message::new(head.clone());
        let injected = Message::with_tail(head.clone(), vec![Word(0); 6]);
        let c1 = encrypt(&pk, &derived).unwrap();
        let c2 = encrypt(&pk, &injected).unwrap();
        assert_ne!(c1, c2);
        assert_eq!(decrypt(&sk, &c2).unwrap(), head);
        assert_eq!(decrypt_checked(&sk, &pk, &c2), Err(Error::Reject));
        assert!(encrypt(&pk, &Message::with_tail(head.clone(), vec![Word(0); 5])).is_err());
        assert!(encrypt(&pk, &Message::new(vec![Word(64); 6])).is_err());
        assert!(encrypt(&pk, &Message::new(vec![Word(1); 5])).is_err());
    }

    #[test]
    fn params_mismatch_is_reported() {
        let (_, sk) = keygen(ParamSet::LINE192, &[11; 16]).unwrap();
        let (pk, _) = keygen(ParamSet::LINE256, &[11; 16]).unwrap();
        let ct = encrypt(&pk, &Message::new(vec![Word(0); 16])).unwrap();
        assert_eq!(decrypt(&sk, &ct), Err(Error::ParamsMismatch));
    }

    #[test]
    fn derive_tail_shape_and_determinism() {
        let p = ParamSet::LINE128;
        let head = vec![Word(0); 16];
        let t = derive_tail(&head, p);
        assert_eq!(t.len(), 16);
        assert_eq!(t, derive_tail(&head, p));
        assert_ne!(t, derive_tail(&[Word(1)].repeat(16), p));
        let p6 = ParamSet::new(6, 12, 6, 2).unwrap();
        assert!(derive_tail(&[Word(0); 6], p6).iter().all(|w| w.0 < 64));
    }

    #[test]
    fn unserializable_when_built_from_parts() {
        let inst = crate::vectors::appendix_key_parts().unwrap();
        let (pk, sk) = keygen_from_parts(crate::vectors::appendix_params(), inst).unwrap();
        assert_eq!(pk.to_bytes(), Err(Error::NotSeedDerived));
        assert_eq!(sk.to_bytes(), Err(Error::NotSeedDerived));
    }
}
