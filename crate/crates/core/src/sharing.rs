//! Homomorphic secret sharing over substitution tables.
//!
//! The aggregation `σ(v_1..v_q) = Σ_j v_j·ω_j` (with `ω_1 = I`) is linear, so it
//! commutes with the word-level system matrix and with table evaluation. The
//! public tables are built so that aggregating their outputs gives back the
//! secret substitution on the first `l` positions and a constant on the rest.

use crate::gf2::{random_nonsingular, xor_all, BitMatrix, BitStream, Word};
use crate::logsig::SubstitutionTable;
use crate::{Error, Result};

/// `ω_1..ω_q`; `ω_1` is the identity and the others are nonsingular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSet {
    m: usize,
    mats: Vec<BitMatrix>,
}

impl OmegaSet {
    /// `secret` holds `ω_2..ω_q`.
    pub fn new(m: usize, secret: Vec<BitMatrix>) -> Result<Self> {
        for w in &secret {
            if w.rows() != m || w.cols() != m {
                return Err(Error::Dimension {
                    op: "OmegaSet::new",
                    expected: m,
                    found: w.rows().max(w.cols()),
                });
            }
            if w.rank() != m {
                return Err(Error::Singular);
            }
        }
        let mut mats = Vec::with_capacity(secret.len() + 1);
        mats.push(BitMatrix::identity(m));
        mats.extend(secret);
        Ok(OmegaSet { m, mats })
    }

    pub fn random(m: usize, q: usize, rng: &mut BitStream) -> Self {
        let secret = (1..q).map(|_| random_nonsingular(m, rng)).collect();
        OmegaSet::new(m, secret).expect("sampled matrices are nonsingular")
    }

    pub fn q(&self) -> usize {
        self.mats.len()
    }

    pub fn width(&self) -> usize {
        self.m
    }

    /// `ω_{j+1}` for 0-based `j`.
    pub fn get(&self, j: usize) -> &BitMatrix {
        &self.mats[j]
    }

    /// `ω_2..ω_q`.
    pub fn secret(&self) -> &[BitMatrix] {
        &self.mats[1..]
    }

    /// `Σ_j words_j · ω_j`.
    pub fn aggregate(&self, words: &[Word]) -> Result<Word> {
        if words.len() != self.mats.len() {
            return Err(Error::Dimension {
                op: "aggregate_words",
                expected: self.mats.len(),
                found: words.len(),
            });
        }
        Ok(words
            .iter()
            .zip(&self.mats)
            .fold(Word::ZERO, |acc, (&w, om)| acc ^ om.mul_word(w)))
    }

    /// Componentwise aggregation of `q` equally long word vectors.
    pub fn aggregate_vectors(&self, vecs: &[Vec<Word>]) -> Result<Vec<Word>> {
        if vecs.len() != self.mats.len() {
            return Err(Error::Dimension {
                op: "aggregate_vectors",
                expected: self.mats.len(),
                found: vecs.len(),
            });
        }
        let n = vecs[0].len();
        if let Some(bad) = vecs.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension {
                op: "aggregate_vectors",
                expected: n,
                found: bad.len(),
            });
        }
        Ok((0..n)
            .map(|i| {
                vecs.iter()
                    .zip(&self.mats)
                    .fold(Word::ZERO, |acc, (v, om)| acc ^ om.mul_word(v[i]))
            })
            .collect())
    }
}

/// The `m × m` masks `τ_{ji}` for `j` in `1..=q`, `i` in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMask {
    m: usize,
    q: usize,
    k: usize,
    rows: Vec<Word>,
}

impl TauMask {
    /// `masks[j][i]` is the `m` rows of `τ_{j+1,i+1}`.
    pub fn new(m: usize, masks: Vec<Vec<Vec<Word>>>) -> Result<Self> {
        let q = masks.len();
        let k = masks.first().map(Vec::len).unwrap_or(0);
        let mut rows = Vec::with_capacity(q * k * m);
        for per_j in &masks {
            if per_j.len() != k {
                return Err(Error::Dimension {
                    op: "TauMask::new",
                    expected: k,
                    found: per_j.len(),
                });
            }
            for tau in per_j {
                if tau.len() != m {
                    return Err(Error::Dimension {
                        op: "TauMask::new",
                        expected: m,
                        found: tau.len(),
                    });
                }
                rows.extend_from_slice(tau);
            }
        }
        Ok(TauMask { m, q, k, rows })
    }

    pub fn random(m: usize, q: usize, k: usize, rng: &mut BitStream) -> Self {
        let rows = (0..q * k * m).map(|_| rng.next_word(m)).collect();
        TauMask { m, q, k, rows }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.q, self.k, self.m)
    }

    /// Rows of `τ_{j+1,i+1}`.
    pub fn get(&self, j: usize, i: usize) -> &[Word] {
        let start = (j * self.k + i) * self.m;
        &self.rows[start..start + self.m]
    }
}

/// `β + τ`: row `p` of the mask is added to both rows of block `p`.
pub fn add_tau(table: &SubstitutionTable, tau: &[Word]) -> Result<SubstitutionTable> {
    let m = table.width();
    if tau.len() != m {
        return Err(Error::Dimension {
            op: "add_tau",
            expected: m,
            found: tau.len(),
        });
    }
    Ok(crate::logsig::add_offsets(table, tau))
}

/// `τ̂ = Σ_p τ[p]`, the constant by which `add_tau` shifts every evaluation.
pub fn tau_hat(tau: &[Word]) -> Word {
    xor_all(tau)
}

pub fn scale_table(table: &SubstitutionTable, w: &BitMatrix) -> Result<SubstitutionTable> {
    table.scale(w)
}

pub fn add_tables(a: &SubstitutionTable, b: &SubstitutionTable) -> Result<SubstitutionTable> {
    a.add(b)
}

/// Reductions of the masks: `τ̂_{ji}`, their images `τ̂_{Aj} = A × τ̂_j`, the
/// shared constant `t_i = Σ_j τ̂_{ji} ω_j` and its image `t_A = Σ_j τ̂_{Aj} ω_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauHat {
    /// `q × k`
    pub hats: Vec<Vec<Word>>,
    /// `q × l`
    pub hat_images: Vec<Vec<Word>>,
    /// `k`
    pub t: Vec<Word>,
    /// `l`
    pub t_a: Vec<Word>,
}

impl TauHat {
    pub fn compute(taus: &TauMask, a: &BitMatrix, omegas: &OmegaSet) -> Result<Self> {
        let (q, k, _) = taus.shape();
        if q != omegas.q() {
            return Err(Error::Dimension {
                op: "TauHat::compute",
                expected: omegas.q(),
                found: q,
            });
        }
        let hats: Vec<Vec<Word>> = (0..q)
            .map(|j| (0..k).map(|i| tau_hat(taus.get(j, i))).collect())
            .collect();
        let hat_images = hats
            .iter()
            .map(|h| a.apply_words(h))
            .collect::<Result<Vec<_>>>()?;
        let t = omegas.aggregate_vectors(&hats)?;
        let t_a = omegas.aggregate_vectors(&hat_images)?;
        Ok(TauHat {
            hats,
            hat_images,
            t,
            t_a,
        })
    }
}

/// Unmasked random share tables `β_{ji}` for `j` in `2..=q`: uniform `2m × m`
/// arrays, not required to be bijective.
pub fn draw_shares(
    m: usize,
    q: usize,
    k: usize,
    rng: &mut BitStream,
) -> Vec<Vec<SubstitutionTable>> {
    (1..q)
        .map(|_| {
            (0..k)
                .map(|_| SubstitutionTable::uniform_random(m, rng))
                .collect()
        })
        .collect()
}

/// The public tables `β'_{ji}`, indexed `[j][i]` with 0-based `j` and `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicSet {
    pub tables: Vec<Vec<SubstitutionTable>>,
}

/// Build the public tables:
///
/// * `β'_{ji} = β_{ji} + τ_{ji}` for `j >= 2`,
/// * `β'_{1i} = β_i + Σ_{j>=2} β_{ji}ω_j + τ_{1i}` for `i <= l`,
/// * `β'_{1i} = Σ_{j>=2} β_{ji}ω_j + τ_{1i}` for `i > l`.
///
/// `secret` holds the `l` proper tables `β_i`; `shares[j-2][i]` is `β_{ji}`.
pub fn build_public_set(
    secret: &[SubstitutionTable],
    shares: &[Vec<SubstitutionTable>],
    omegas: &OmegaSet,
    taus: &TauMask,
) -> Result<PublicSet> {
    let (q, k, m) = taus.shape();
    let l = secret.len();
    if omegas.q() != q || shares.len() + 1 != q {
        return Err(Error::Dimension {
            op: "build_public_set",
            expected: q,
            found: shares.len() + 1,
        });
    }
    if l == 0 || l >= k {
        return Err(Error::InvalidParams(format!(
            "need 1 <= l < k, got l={l}, k={k}"
        )));
    }
    if let Some(bad) = shares.iter().find(|s| s.len() != k) {
        return Err(Error::Dimension {
            op: "build_public_set",
            expected: k,
            found: bad.len(),
        });
    }
    if secret.iter().any(|t| !t.is_proper()) {
        return Err(Error::ImproperTable);
    }
    let mut tables = Vec::with_capacity(q);
    let mut first = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = if i < l {
            secret[i].clone()
        } else {
            SubstitutionTable::zero(m)
        };
        for (j, share) in shares.iter().enumerate() {
            acc = acc.add(&share[i].scale(omegas.get(j + 1))?)?;
        }
        first.push(add_tau(&acc, taus.get(0, i))?);
    }
    tables.push(first);
    for (j, share) in shares.iter().enumerate() {
        tables.push(
            share
                .iter()
                .enumerate()
                .map(|(i, t)| add_tau(t, taus.get(j + 1, i)))
                .collect::<Result<_>>()?,
        );
    }
    Ok(PublicSet { tables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::DetRandom;
    use crate::logsig::{MaskingSteps, SecretSubstitution};

    struct Instance {
        secret: Vec<SubstitutionTable>,
        shares: Vec<Vec<SubstitutionTable>>,
        omegas: OmegaSet,
        taus: TauMask,
        public: PublicSet,
    }

    fn instance(m: usize, k: usize, l: usize, q: usize, tag: &[u8]) -> Instance {
        let mut s = DetRandom::new([5; 16], tag).stream();
        let secret: Vec<_> = (0..l)
            .map(|_| SecretSubstitution::random(m, MaskingSteps::FULL, &mut s).into_masked())
            .collect();
        let shares = draw_shares(m, q, k, &mut s);
        let omegas = OmegaSet::random(m, q, &mut s);
        let taus = TauMask::random(m, q, k, &mut s);
        let public = build_public_set(&secret, &shares, &omegas, &taus).unwrap();
        Instance {
            secret,
            shares,
            omegas,
            taus,
            public,
        }
    }

    #[test]
    fn add_tau_edge_cases() {
        let mut s = DetRandom::new([1; 16], b"tau").stream();
        let t = SubstitutionTable::uniform_random(6, &mut s);
        let tau: Vec<Word> = (0..6).map(|_| s.next_word(6)).collect();
        assert_eq!(add_tau(&t, &[Word::ZERO; 6]).unwrap(), t);
        assert_eq!(add_tau(&add_tau(&t, &tau).unwrap(), &tau).unwrap(), t);
        assert!(add_tau(&t, &tau[..5]).is_err());
        assert_eq!(tau_hat(&[Word::ZERO; 6]), Word::ZERO);
    }

    #[test]
    fn add_tau_shifts_by_tau_hat() {
        let mut s = DetRandom::new([2; 16], b"shift").stream();
        for m in [1, 4, 6, 8] {
            let t = SubstitutionTable::uniform_random(m, &mut s);
            let tau: Vec<Word> = (0..m).map(|_| s.next_word(m)).collect();
            let shifted = add_tau(&t, &tau).unwrap();
            let h = tau_hat(&tau);
            for w in 0..1u64 << m {
                assert_eq!(shifted.eval(Word(w)), t.eval(Word(w)) ^ h);
            }
        }
    }

    #[test]
    fn scaling_commutes_with_evaluation() {
        let mut s = DetRandom::new([3; 16], b"scale").stream();
        for _ in 0..50 {
            let t = SubstitutionTable::uniform_random(8, &mut s);
            let w = crate::gf2::random_matrix(8, 8, &mut s);
            let scaled = scale_table(&t, &w).unwrap();
            let r = s.next_word(8);
            assert_eq!(scaled.eval(r), w.mul_word(t.eval(r)));
        }
    }

    #[test]
    fn single_share_aggregation_is_passthrough() {
        let om = OmegaSet::new(6, vec![]).unwrap();
        assert_eq!(om.aggregate(&[Word(0b101)]).unwrap(), Word(0b101));
        assert!(om.aggregate(&[Word(1), Word(2)]).is_err());
    }

    #[test]
    fn omega_set_rejects_singular() {
        assert_eq!(
            OmegaSet::new(3, vec![BitMatrix::zeros(3, 3)]),
            Err(Error::Singular)
        );
        assert!(OmegaSet::new(3, vec![BitMatrix::identity(4)]).is_err());
    }

    #[test]
    fn trailing_components_aggregate_to_zero_before_masks() {
        for (m, k, l, q) in [(6, 12, 6, 3), (4, 6, 3, 2), (8, 6, 3, 4)] {
            let inst = instance(m, k, l, q, b"trail");
            for i in l..k {
                for w in 0..1u64 << m {
                    let outs: Vec<Word> = std::iter::once(Word::ZERO)
                        .chain(inst.shares.iter().map(|s| s[i].eval(Word(w))))
                        .collect();
                    // β_{1i} before τ is Σ_{j>=2} β_{ji}ω_j, so the full sum is zero.
                    let pre_first = inst.omegas.aggregate(&outs).unwrap();
                    let mut all = outs.clone();
                    all[0] = pre_first;
                    assert_eq!(inst.omegas.aggregate(&all).unwrap(), Word::ZERO);
                }
            }
        }
    }

    #[test]
    fn public_outputs_aggregate_to_secret_plus_constant() {
        for (m, k, l, q) in [(6, 12, 6, 3), (6, 12, 6, 2), (4, 7, 3, 4), (8, 4, 2, 2)] {
            let inst = instance(m, k, l, q, b"const");
            let t = TauHat::compute(&inst.taus, &BitMatrix::identity(k), &inst.omegas)
                .unwrap()
                .t;
            for i in 0..k {
                for w in 0..1u64 << m {
                    let outs: Vec<Word> = inst
                        .public
                        .tables
                        .iter()
                        .map(|tj| tj[i].eval(Word(w)))
                        .collect();
                    let mut v = inst.omegas.aggregate(&outs).unwrap();
                    if i < l {
                        v ^= inst.secret[i].eval(Word(w));
                    }
                    assert_eq!(v, t[i], "i={i} w={w}");
                }
            }
        }
    }

    #[test]
    fn one_share_degenerate_case() {
        let mut s = DetRandom::new([6; 16], b"q1").stream();
        let secret = vec![SubstitutionTable::simple_random(4, &mut s); 2];
        let omegas = OmegaSet::new(4, vec![]).unwrap();
        let taus = TauMask::random(4, 1, 3, &mut s);
        let p = build_public_set(&secret, &[], &omegas, &taus).unwrap();
        assert_eq!(p.tables.len(), 1);
        assert_eq!(p.tables[0][0], add_tau(&secret[0], taus.get(0, 0)).unwrap());
        assert_eq!(
            p.tables[0][2],
            add_tau(&SubstitutionTable::zero(4), taus.get(0, 2)).unwrap()
        );
    }

    #[test]
    fn improper_secret_is_rejected() {
        let mut s = DetRandom::new([7; 16], b"bad").stream();
        let secret = vec![SubstitutionTable::zero(4)];
        let omegas = OmegaSet::random(4, 2, &mut s);
        let taus = TauMask::random(4, 2, 3, &mut s);
        let shares = draw_shares(4, 2, 3, &mut s);
        assert_eq!(
            build_public_set(&secret, &shares, &omegas, &taus),
            Err(Error::ImproperTable)
        );
    }

    #[test]
    fn aggregation_commutes_with_system_matrix() {
        let mut s = DetRandom::new([8; 16], b"commute").stream();
        for _ in 0..1000 {
            let (m, l, k, q) = (8, 5, 9, 3);
            let a = crate::gf2::random_matrix(l, k, &mut s);
            let om = OmegaSet::random(m, q, &mut s);
            let ys: Vec<Vec<Word>> = (0..q)
                .map(|_| (0..k).map(|_| s.next_word(m)).collect())
                .collect();
            let lhs = a.apply_words(&om.aggregate_vectors(&ys).unwrap()).unwrap();
            let images: Vec<Vec<Word>> = ys.iter().map(|y| a.apply_words(y).unwrap()).collect();
            let rhs = om.aggregate_vectors(&images).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
