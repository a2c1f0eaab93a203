//! LINE public-key encryption.
//!
//! The scheme hides a bijective, factorizable substitution behind an
//! underdetermined linear system `A·y = u` over words of `m` bits. Encryption
//! is keyless table evaluation followed by `q` matrix applications; decryption
//! collapses the `q` ciphertext shares with the secret matrices `ω_j`, removes
//! the mask image `t_A`, solves the square part of the system and inverts the
//! secret substitutions.
//!
//! Layout:
//!
//! * [`gf2`]: bit words, bit matrices, `F(2^m)` arithmetic and the seeded XOF stream.
//! * [`logsig`]: type-2 substitution tables and the masking chain `ρ1..ρ5`.
//! * [`sharing`]: `ω`/`τ` secret sharing and construction of the public tables.
//! * [`pke`]: parameter sets, key generation, encryption, decryption, file formats.
//! * [`attacks`]: desk-scale versions of the four attacks plus closed-form estimates.
//! * [`vectors`]: the fixed worked example (substitution table and full key/cipher trace).

pub mod attacks;
mod error;
pub mod gf2;
pub mod logsig;
pub mod pke;
pub mod sharing;
pub mod vectors;

pub use error::{DecodeError, Error, Result};
pub use gf2::{BitMatrix, BitVec, DetRandom, Gf2m, Word};
pub use logsig::{MaskingRecipe, SecretSubstitution, SubstitutionTable};
pub use pke::{Ciphertext, Message, ParamSet, PublicKey, SecretKey};
