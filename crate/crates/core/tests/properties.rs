use line_core::gf2::{random_matrix, random_nonsingular, BitStream};
use line_core::logsig::{MaskingSteps, SecretSubstitution};
use line_core::pke::{decrypt, encrypt, keygen, keygen_with, KeygenOptions, SecretMode};
use line_core::sharing::OmegaSet;
use line_core::{
    BitMatrix, BitVec, Ciphertext, DetRandom, Gf2m, Message, ParamSet, PublicKey, SecretKey,
    SubstitutionTable, Word,
};
use proptest::prelude::*;

fn stream(seed: [u8; 16]) -> BitStream {
    DetRandom::new(seed, b"prop").stream()
}

fn word(m: usize) -> impl Strategy<Value = Word> {
    (0..=Word::mask(m)).prop_map(Word)
}

fn small_params() -> impl Strategy<Value = ParamSet> {
    (1usize..=8, 2usize..=6, 2usize..=4)
        .prop_flat_map(|(m, k, q)| (1..k).prop_map(move |l| ParamSet::new(m, k, l, q).unwrap()))
}

fn field_case() -> impl Strategy<Value = (usize, Word, Word, Word)> {
    prop_oneof![Just(6usize), Just(8), Just(16)]
        .prop_flat_map(|m| (Just(m), word(m), word(m), word(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((m, a, b, c) in field_case()) {
        let f = Gf2m::new(m).unwrap();
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, Word(b.0 ^ c.0)), Word(f.mul(a, b).0 ^ f.mul(a, c).0));
        prop_assert_eq!(f.mul(a, Word(1)), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Word(1));
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn vec_mat_is_linear(seed in any::<[u8; 16]>(), rows in 1usize..40, cols in 1usize..90) {
        let mut s = stream(seed);
        let m = random_matrix(rows, cols, &mut s);
        let v = random_bitvec(rows, &mut s);
        let w = random_bitvec(rows, &mut s);
        let mut vw = v.clone();
        vw.xor_assign(&w);
        let mut expect = m.vec_mul(&v).unwrap();
        expect.xor_assign(&m.vec_mul(&w).unwrap());
        prop_assert_eq!(m.vec_mul(&vw).unwrap(), expect);
        prop_assert!(m.vec_mul(&BitVec::zeros(rows)).unwrap().is_zero());
    }

    #[test]
    fn mul_word_matches_vec_mul(seed in any::<[u8; 16]>(), rows in 1usize..=32, cols in 1usize..=32) {
        let mut s = stream(seed);
        let m = random_matrix(rows, cols, &mut s);
        let w = s.next_word(rows);
        prop_assert_eq!(m.mul_word(w), m.vec_mul(&BitVec::from_word(w, rows)).unwrap().to_word());
    }

    #[test]
    fn product_is_associative(seed in any::<[u8; 16]>(), a in 1usize..20, b in 1usize..20, c in 1usize..20, d in 1usize..20) {
        let mut s = stream(seed);
        let x = random_matrix(a, b, &mut s);
        let y = random_matrix(b, c, &mut s);
        let z = random_matrix(c, d, &mut s);
        prop_assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<[u8; 16]>(), n in 1usize..48) {
        let mut s = stream(seed);
        let m = random_nonsingular(n, &mut s);
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(n));
        prop_assert_eq!(inv.mul(&m).unwrap(), BitMatrix::identity(n));
        prop_assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn solve_left_returns_solutions(seed in any::<[u8; 16]>(), rows in 1usize..24, cols in 1usize..24) {
        let mut s = stream(seed);
        let m = random_matrix(rows, cols, &mut s);
        let x0 = random_bitvec(rows, &mut s);
        let b = m.vec_mul(&x0).unwrap();
        let (x, kernel) = m.solve_left(&b).unwrap().expect("b is in the row space");
        prop_assert_eq!(m.vec_mul(&x).unwrap(), b);
        prop_assert_eq!(kernel.len(), rows - m.rank());
        for z in &kernel {
            prop_assert!(m.vec_mul(z).unwrap().is_zero());
        }
    }

    #[test]
    fn tables_are_affine(seed in any::<[u8; 16]>(), m in 1usize..=12) {
        let mut s = stream(seed);
        let t = SubstitutionTable::uniform_random(m, &mut s);
        let (r1, r2) = (s.next_word(m), s.next_word(m));
        prop_assert_eq!(
            t.eval(r1).0 ^ t.eval(r2).0 ^ t.eval(Word(r1.0 ^ r2.0)).0,
            t.eval(Word::ZERO).0
        );
    }

    #[test]
    fn masked_secret_tables_invert(seed in any::<[u8; 16]>(), m in 1usize..=12) {
        let mut s = stream(seed);
        for steps in [MaskingSteps::FULL, MaskingSteps::SHUFFLE_AND_OFFSET, MaskingSteps::NONE] {
            let sub = SecretSubstitution::random(m, steps, &mut s);
            prop_assert!(sub.masked().is_proper());
            let dec = sub.masked().decoder().unwrap();
            let r = s.next_word(m);
            let z = sub.masked().eval(r);
            prop_assert_eq!(sub.eval_inverse(z), r);
            prop_assert_eq!(dec.decode(z), r);
        }
    }

    #[test]
    fn aggregation_is_linear(seed in any::<[u8; 16]>(), m in 1usize..=10, q in 2usize..=5) {
        let mut s = stream(seed);
        let om = OmegaSet::random(m, q, &mut s);
        let a: Vec<Word> = (0..q).map(|_| s.next_word(m)).collect();
        let b: Vec<Word> = (0..q).map(|_| s.next_word(m)).collect();
        let ab: Vec<Word> = a.iter().zip(&b).map(|(x, y)| Word(x.0 ^ y.0)).collect();
        prop_assert_eq!(
            om.aggregate(&ab).unwrap().0,
            om.aggregate(&a).unwrap().0 ^ om.aggregate(&b).unwrap().0
        );
        // ω_1 = I: a lone first share passes through.
        let mut e = vec![Word::ZERO; q];
        e[0] = a[0];
        prop_assert_eq!(om.aggregate(&e).unwrap(), a[0]);
    }

    #[test]
    fn roundtrip_small_params(p in small_params(), seed in any::<[u8; 16]>(), shared in any::<bool>()) {
        let mode = if shared { SecretMode::Shared } else { SecretMode::Independent };
        let (pk, sk) = keygen_with(p, &seed, KeygenOptions { mode, steps: MaskingSteps::FULL }).unwrap();
        let mut s = stream(seed);
        for _ in 0..8 {
            let head: Vec<Word> = (0..p.l).map(|_| s.next_word(p.m)).collect();
            let ct = encrypt(&pk, &Message::new(head.clone())).unwrap();
            prop_assert_eq!(decrypt(&sk, &ct).unwrap(), head);
        }
    }

    #[test]
    fn serialization_roundtrip(p in small_params(), seed in any::<[u8; 16]>()) {
        let (pk, sk) = keygen(p, &seed).unwrap();
        prop_assert_eq!(&PublicKey::from_bytes(&pk.to_bytes().unwrap()).unwrap(), &pk);
        prop_assert_eq!(&SecretKey::from_bytes(&sk.to_bytes().unwrap()).unwrap(), &sk);
        let mut s = stream(seed);
        let head: Vec<Word> = (0..p.l).map(|_| s.next_word(p.m)).collect();
        let msg = Message::new(head.clone());
        let ct = encrypt(&pk, &msg).unwrap();
        prop_assert_eq!(&Ciphertext::from_bytes(&ct.to_bytes()).unwrap(), &ct);
        let (p2, msg2) = Message::decode(&msg.to_bytes(p).unwrap()).unwrap();
        prop_assert_eq!(p2, p);
        prop_assert_eq!(&msg2.head, &head);
        let tailed = Message::with_tail(msg2.head.clone(), vec![Word::ZERO; p.k - p.l]);
        let (_, back) = Message::decode(&tailed.to_bytes(p).unwrap()).unwrap();
        prop_assert_eq!(back, tailed);
    }

    #[test]
    fn decoders_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..700)) {
        let _ = PublicKey::from_bytes(&bytes);
        let _ = SecretKey::from_bytes(&bytes);
        let _ = Ciphertext::from_bytes(&bytes);
        let _ = Message::decode(&bytes);
    }

    #[test]
    fn decoders_never_panic_behind_valid_header(
        kind in 1u8..=4,
        p in small_params(),
        payload in proptest::collection::vec(any::<u8>(), 0..200),
    ) {
        let mut bytes = b"LINE".to_vec();
        bytes.extend([1, kind, p.m as u8, p.k as u8, p.l as u8, p.q as u8]);
        bytes.extend(payload);
        let _ = PublicKey::from_bytes(&bytes);
        let _ = SecretKey::from_bytes(&bytes);
        let _ = Ciphertext::from_bytes(&bytes);
        let _ = Message::decode(&bytes);
    }
}

fn random_bitvec(len: usize, s: &mut BitStream) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        v.set(i, s.next_bit());
    }
    v
}
