//! Shared fixtures for the benchmarks.

use line_core::gf2::DetRandom;
use line_core::pke::{encrypt, keygen};
use line_core::{Ciphertext, Message, ParamSet, PublicKey, SecretKey, Word};

pub const SEED: [u8; 16] = *b"criterion-bench!";

/// A key pair with `n` seeded messages and their ciphertexts.
pub struct Fixture {
    pub pk: PublicKey,
    pub sk: SecretKey,
    pub messages: Vec<Message>,
    pub ciphertexts: Vec<Ciphertext>,
}

impl Fixture {
    pub fn new(p: ParamSet, n: usize) -> Self {
        let (pk, sk) = keygen(p, &SEED).expect("valid parameters");
        let mut s = DetRandom::new(SEED, b"bench/fixture").stream();
        let messages: Vec<Message> = (0..n)
            .map(|_| Message::new((0..p.l).map(|_| s.next_word(p.m)).collect::<Vec<Word>>()))
            .collect();
        let ciphertexts = messages
            .iter()
            .map(|m| encrypt(&pk, m).expect("valid message"))
            .collect();
        Fixture {
            pk,
            sk,
            messages,
            ciphertexts,
        }
    }
}
