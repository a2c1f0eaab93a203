//! Byte-level golden values. Expected bytes were computed with an independent
//! SHAKE implementation (Python hashlib), not with this crate.

use line_core::gf2::DetRandom;
use line_core::pke::derive_tail;
use line_core::{ParamSet, Word};

fn unhex(s: &str) -> Vec<u8> {
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap())
        .collect()
}

#[test]
fn xof_stream_prefix_per_tag() {
    assert_eq!(
        DetRandom::new([0; 16], b"A").bytes(16),
        unhex("84fc4301cc773f142d2d8e7b590efa2d")
    );
    assert_eq!(
        DetRandom::new([0; 16], b"B").bytes(16),
        unhex("85c8c61435fda37d48f0d7e9023d2953")
    );
}

#[test]
fn xof_bits_are_lsb_first() {
    // 0x84 = 1000_0100: bits 2 and 7 set.
    let bits = DetRandom::new([0; 16], b"A").bits(8);
    assert_eq!(bits.to_bits(), "00100001");
}

#[test]
fn derive_tail_zero_head_line128() {
    let tail = derive_tail(&[Word(0); 16], ParamSet::LINE128);
    let bytes: Vec<u8> = tail.iter().map(|w| w.0 as u8).collect();
    assert_eq!(bytes, unhex("bf18549ab917aded0be70b357f44b1c7"));
}

#[test]
fn derive_tail_packs_six_bit_words() {
    let p = ParamSet::new(6, 12, 6, 2).unwrap();
    let head: Vec<Word> = (1..=6).map(Word).collect();
    let tail: Vec<u64> = derive_tail(&head, p).iter().map(|w| w.0).collect();
    assert_eq!(tail, [6, 22, 31, 15, 52, 52]);
}
