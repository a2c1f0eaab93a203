use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::gf2::{BitMatrix, Word};
use crate::logsig::SubstitutionTable;
use crate::pke::{Ciphertext, Message, PublicKey, SecretKey};
use crate::sharing::OmegaSet;
use crate::{Error, Result};

use super::{check_cap, AttackReport, ATTACK1_CAP, ATTACK2_CAP, ATTACK3_CAP, TABULATE_CAP};

/// Unpacks a candidate index into `count` words of `m` bits.
fn words_of(index: u64, count: usize, m: usize) -> Vec<Word> {
    (0..count)
        .map(|i| Word((index >> (i * m)) & Word::mask(m)))
        .collect()
}

/// Joint images `(β'_{1i}(x), …, β'_{qi}(x))` over all `x`, packed `m` bits per share.
fn joint_images(tables: &[Vec<SubstitutionTable>], i: usize, m: usize) -> HashSet<u128> {
    (0..1u64 << m)
        .map(|x| pack(tables.iter().map(|row| row[i].eval(Word(x))), m))
        .collect()
}

fn pack(words: impl Iterator<Item = Word>, m: usize) -> u128 {
    words
        .enumerate()
        .fold(0u128, |acc, (j, w)| acc | (w.0 as u128) << (j * m))
}

/// Attack 1 on explicit components, allowing `k = l`.
///
/// For every tail candidate the attacker evaluates the public tables on it,
/// strips `A2 ×` that contribution from each share and solves
/// `y[l] = A1⁻¹ × u''_j`. A candidate survives when, at every head position,
/// the `q` recovered words are the joint image of one input under the public
/// tables.
pub fn attack1_components(
    m: usize,
    l: usize,
    a: &BitMatrix,
    tables: &[Vec<SubstitutionTable>],
    shares: &[Vec<Word>],
    truth_tail: Option<&[Word]>,
) -> Result<AttackReport> {
    let k = a.cols();
    let q = tables.len();
    if a.rows() != l || k < l || shares.len() != q || tables.iter().any(|r| r.len() != k) {
        return Err(Error::ParamsMismatch);
    }
    let exponent = (k - l) * m;
    check_cap(exponent, ATTACK1_CAP)?;
    check_cap(m, TABULATE_CAP)?;
    if q * m > 128 {
        return Err(Error::Unsupported(format!("q·m = {} exceeds 128", q * m)));
    }
    let start = Instant::now();
    let a1_inv = a.columns(0, l).inverse()?;
    let a2 = (k > l).then(|| a.columns(l, k));
    let images: Vec<HashSet<u128>> = (0..l).map(|i| joint_images(tables, i, m)).collect();

    let survives = |tail: &[Word]| -> bool {
        let heads: Vec<Vec<Word>> = tables
            .iter()
            .zip(shares)
            .map(|(row, u)| {
                let mut u = u.clone();
                if let Some(a2) = &a2 {
                    let y_tail: Vec<Word> =
                        row[l..].iter().zip(tail).map(|(t, &x)| t.eval(x)).collect();
                    for (ui, si) in u.iter_mut().zip(a2.apply_words(&y_tail).expect("shape")) {
                        *ui ^= si;
                    }
                }
                a1_inv.apply_words(&u).expect("shape")
            })
            .collect();
        (0..l).all(|i| images[i].contains(&pack(heads.iter().map(|h| h[i]), m)))
    };

    let truth_seen = AtomicBool::new(false);
    let survivors = (0..1u64 << exponent)
        .into_par_iter()
        .filter(|&c| {
            let tail = words_of(c, k - l, m);
            let ok = survives(&tail);
            if ok && truth_tail == Some(&tail[..]) {
                truth_seen.store(true, Ordering::Relaxed);
            }
            ok
        })
        .count() as u64;
    Ok(AttackReport {
        attack: 1,
        m,
        k,
        l,
        q,
        exponent,
        examined: 1 << exponent,
        survivors,
        truth: truth_tail.map(|_| truth_seen.into_inner()),
        elapsed: start.elapsed(),
        extra: vec![("tail_words".into(), (k - l).to_string())],
    })
}

/// Brute force over the hashed tail `x_{l+1}..x_k`. With `truth`, reports
/// whether the true tail (explicit or derived) survives the filter.
pub fn attack1_tail_bruteforce(
    pk: &PublicKey,
    ct: &Ciphertext,
    truth: Option<&Message>,
) -> Result<AttackReport> {
    let p = pk.params();
    if ct.params() != p {
        return Err(Error::ParamsMismatch);
    }
    check_cap((p.k - p.l) * p.m, ATTACK1_CAP)?;
    let tail = truth
        .map(|msg| msg.full(p))
        .transpose()?
        .map(|x| x[p.l..].to_vec());
    attack1_components(
        p.m,
        p.l,
        pk.system_matrix(),
        pk.tables(),
        ct.shares(),
        tail.as_deref(),
    )
}

/// Enumerates all `ω_2..ω_q` tuples, singular ones included. A tuple survives
/// when the aggregated trailing outputs of the public tables agree on the two
/// full inputs `x'` and `x''`.
pub fn attack2_omega_enum(
    pk: &PublicKey,
    x1: &[Word],
    x2: &[Word],
    truth: Option<&OmegaSet>,
) -> Result<AttackReport> {
    let p = pk.params();
    let (m, k, l, q) = (p.m, p.k, p.l, p.q);
    if x1.len() != k || x2.len() != k {
        return Err(Error::Dimension {
            op: "attack2 inputs",
            expected: k,
            found: x1.len().min(x2.len()),
        });
    }
    let exponent = (q - 1) * m * m;
    check_cap(exponent, ATTACK2_CAP)?;
    let start = Instant::now();
    // Per trailing position: the q public outputs for each input.
    let outs = |x: &[Word]| -> Vec<Vec<Word>> {
        (l..k)
            .map(|i| pk.tables().iter().map(|row| row[i].eval(x[i])).collect())
            .collect()
    };
    let (o1, o2) = (outs(x1), outs(x2));
    let candidate = |c: u64| -> Vec<BitMatrix> {
        (0..q - 1)
            .map(|j| BitMatrix::from_words(&words_of(c >> (j * m * m), m, m), m))
            .collect()
    };
    let aggregate = |omegas: &[BitMatrix], ys: &[Word]| -> Word {
        omegas
            .iter()
            .zip(&ys[1..])
            .fold(ys[0], |acc, (om, &y)| acc ^ om.mul_word(y))
    };
    let truth_index = truth.map(|om| {
        om.secret().iter().enumerate().fold(0u64, |acc, (j, w)| {
            acc | w
                .row_words()
                .iter()
                .enumerate()
                .fold(0u64, |a, (r, rw)| a | rw.0 << (r * m))
                << (j * m * m)
        })
    });
    let truth_seen = AtomicBool::new(false);
    let survivors = (0..1u64 << exponent)
        .into_par_iter()
        .filter(|&c| {
            let oms = candidate(c);
            let ok = o1
                .iter()
                .zip(&o2)
                .all(|(a, b)| aggregate(&oms, a) == aggregate(&oms, b));
            if ok && truth_index == Some(c) {
                truth_seen.store(true, Ordering::Relaxed);
            }
            ok
        })
        .count() as u64;
    Ok(AttackReport {
        attack: 2,
        m,
        k,
        l,
        q,
        exponent,
        examined: 1 << exponent,
        survivors,
        truth: truth.map(|_| truth_seen.into_inner()),
        elapsed: start.elapsed(),
        extra: vec![("identical_inputs".into(), (x1 == x2).to_string())],
    })
}

/// Enumerates `t_A` candidates under the hypothesis that `ω` and the secret
/// tables are known (taken from `hypothesis`, whose own `t_A` is ignored).
/// A candidate survives when decryption with it yields the known head.
pub fn attack3_t_enum(
    pk: &PublicKey,
    hypothesis: &SecretKey,
    ct: &Ciphertext,
    known_head: &[Word],
    truth: Option<&[Word]>,
) -> Result<AttackReport> {
    let p = pk.params();
    if hypothesis.params() != p || ct.params() != p {
        return Err(Error::ParamsMismatch);
    }
    let (m, k, l, q) = (p.m, p.k, p.l, p.q);
    if known_head.len() != l {
        return Err(Error::Dimension {
            op: "attack3 known head",
            expected: l,
            found: known_head.len(),
        });
    }
    let exponent = l * m;
    check_cap(exponent, ATTACK3_CAP)?;
    let start = Instant::now();
    let u_prime = hypothesis.omegas().aggregate_vectors(ct.shares())?;
    let a1_inv = pk.system_matrix().columns(0, l).inverse()?;
    // Decoding is affine, so the target y is fixed and t is checked against it.
    let target: Vec<Word> = (0..l)
        .map(|i| hypothesis.table(i).eval(known_head[i]))
        .collect();
    let truth_seen = AtomicBool::new(false);
    let survivors = (0..1u64 << exponent)
        .into_par_iter()
        .filter(|&c| {
            let t = words_of(c, l, m);
            let u: Vec<Word> = u_prime.iter().zip(&t).map(|(&a, &b)| a ^ b).collect();
            let ok = a1_inv.apply_words(&u).expect("shape") == target;
            if ok && truth == Some(&t[..]) {
                truth_seen.store(true, Ordering::Relaxed);
            }
            ok
        })
        .count() as u64;
    Ok(AttackReport {
        attack: 3,
        m,
        k,
        l,
        q,
        exponent,
        examined: 1 << exponent,
        survivors,
        truth: truth.map(|_| truth_seen.into_inner()),
        elapsed: start.elapsed(),
        extra: vec![("s_t".into(), exponent.to_string())],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::DetRandom;
    use crate::pke::{encrypt, keygen, ParamSet};

    fn tiny(m: usize, k: usize, l: usize, q: usize, seed: u8) -> (PublicKey, SecretKey) {
        keygen(ParamSet::new(m, k, l, q).unwrap(), &[seed; 16]).unwrap()
    }

    #[test]
    fn attack1_counts_and_truth() {
        for seed in 0..100u8 {
            let (pk, _) = tiny(2, 3, 2, 2, seed);
            let mut s = DetRandom::new([seed; 16], b"a1").stream();
            let msg = Message::new(vec![s.next_word(2), s.next_word(2)]);
            let ct = encrypt(&pk, &msg).unwrap();
            let r = attack1_tail_bruteforce(&pk, &ct, Some(&msg)).unwrap();
            assert_eq!((r.examined, r.exponent), (1 << ((3 - 2) * 2), (3 - 2) * 2));
            assert!(r.survivors >= 1 && r.survivors <= r.examined);
            assert_eq!(r.truth, Some(true));
        }
    }

    #[test]
    fn attack1_degenerate_square_system() {
        let (pk, _) = tiny(3, 3, 2, 2, 1);
        let a = pk.system_matrix().columns(0, 2);
        let tables: Vec<Vec<_>> = pk.tables().iter().map(|r| r[..2].to_vec()).collect();
        let x = [Word(5), Word(2)];
        let shares: Vec<Vec<Word>> = tables
            .iter()
            .map(|row| {
                let y: Vec<Word> = row.iter().zip(&x).map(|(t, &xi)| t.eval(xi)).collect();
                a.apply_words(&y).unwrap()
            })
            .collect();
        let r = attack1_components(3, 2, &a, &tables, &shares, Some(&[])).unwrap();
        assert_eq!((r.examined, r.survivors, r.truth), (1, 1, Some(true)));
    }

    #[test]
    fn attack1_refuses_large() {
        let (pk, _) = keygen(ParamSet::LINE128, &[0; 16]).unwrap();
        let ct = encrypt(&pk, &Message::new(vec![Word(0); 16])).unwrap();
        assert_eq!(
            attack1_tail_bruteforce(&pk, &ct, None),
            Err(Error::CapExceeded {
                exponent: 128,
                cap: ATTACK1_CAP
            })
        );
    }

    #[test]
    fn attack2_counts_and_truth() {
        for seed in 0..100u8 {
            let (pk, sk) = tiny(2, 3, 2, 2, seed);
            let mut s = DetRandom::new([seed; 16], b"a2").stream();
            let x1: Vec<Word> = (0..3).map(|_| s.next_word(2)).collect();
            let x2: Vec<Word> = (0..3).map(|_| s.next_word(2)).collect();
            let r = attack2_omega_enum(&pk, &x1, &x2, Some(sk.omegas())).unwrap();
            assert_eq!(r.examined, 16);
            assert_eq!(r.truth, Some(true));
            let same = attack2_omega_enum(&pk, &x1, &x1, Some(sk.omegas())).unwrap();
            assert_eq!(same.survivors, 16);
        }
    }

    #[test]
    fn attack2_three_shares() {
        let (pk, sk) = tiny(2, 4, 2, 3, 9);
        let x1 = [Word(0), Word(1), Word(2), Word(3)];
        let x2 = [Word(3), Word(2), Word(1), Word(0)];
        let r = attack2_omega_enum(&pk, &x1, &x2, Some(sk.omegas())).unwrap();
        assert_eq!((r.exponent, r.examined), (8, 256));
        assert_eq!(r.truth, Some(true));
        let (pk, _) = tiny(5, 6, 2, 2, 9);
        let x = [Word(0); 6];
        assert_eq!(
            attack2_omega_enum(&pk, &x, &x, None),
            Err(Error::CapExceeded {
                exponent: 25,
                cap: ATTACK2_CAP
            })
        );
    }

    #[test]
    fn attack3_counts_and_truth() {
        for seed in 0..100u8 {
            let (pk, sk) = tiny(2, 3, 2, 2, seed);
            let head = vec![Word((seed % 4) as u64), Word(1)];
            let ct = encrypt(&pk, &Message::new(head.clone())).unwrap();
            let r = attack3_t_enum(&pk, &sk, &ct, &head, Some(sk.t_a())).unwrap();
            assert_eq!((r.examined, r.survivors, r.truth), (16, 1, Some(true)));
        }
        let (pk, sk) = tiny(1, 2, 1, 2, 3);
        let ct = encrypt(&pk, &Message::new(vec![Word(1)])).unwrap();
        let r = attack3_t_enum(&pk, &sk, &ct, &[Word(1)], Some(sk.t_a())).unwrap();
        assert_eq!((r.examined, r.truth), (2, Some(true)));
    }
}
