use crate::gf2::{gen_system_matrix, BitMatrix, DetRandom, Seed, Word, SEED_BYTES};
use crate::logsig::{Decoder, MaskingSteps, SecretSubstitution, SubstitutionTable};
use crate::sharing::{add_tau, build_public_set, OmegaSet, TauHat, TauMask};
use crate::{Error, Result};

use super::params::ParamSet;

pub(crate) const TAG_PUBLIC_SEED: &[u8] = b"line/public-seed";
pub(crate) const TAG_SYSTEM_MATRIX: &[u8] = b"line/system-matrix";
pub(crate) const TAG_PUBLIC_SHARES: &[u8] = b"line/public-shares";
pub(crate) const TAG_SECRET: &[u8] = b"line/secret";

/// How many factorizable tables back the `l` secret positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SecretMode {
    /// `l` independent tables `β_1..β_l`.
    #[default]
    Independent,
    /// One table `β` used at every position.
    Shared,
}

impl SecretMode {
    pub fn table_count(self, l: usize) -> usize {
        match self {
            SecretMode::Independent => l,
            SecretMode::Shared => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KeygenOptions {
    pub mode: SecretMode,
    pub steps: MaskingSteps,
}

/// `A` and all `q × k` public tables `β'_{ji}`. Only `β'_{1i}` and the seed
/// are serialized; the rest is regenerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub(crate) params: ParamSet,
    pub(crate) seed: Option<Seed>,
    pub(crate) a: BitMatrix,
    pub(crate) tables: Vec<Vec<SubstitutionTable>>,
}

impl PublicKey {
    pub fn params(&self) -> ParamSet {
        self.params
    }

    /// `None` for keys assembled from explicit parts.
    pub fn seed(&self) -> Option<&Seed> {
        self.seed.as_ref()
    }

    pub fn system_matrix(&self) -> &BitMatrix {
        &self.a
    }

    /// `β'_{j+1,i+1}`.
    pub fn table(&self, j: usize, i: usize) -> &SubstitutionTable {
        &self.tables[j][i]
    }

    pub fn tables(&self) -> &[Vec<SubstitutionTable>] {
        &self.tables
    }

    pub(crate) fn from_public_seed(
        params: ParamSet,
        seed: Seed,
        first: Vec<SubstitutionTable>,
    ) -> Result<PublicKey> {
        let (a, shares) = regenerate_public(params, &seed)?;
        let mut tables = Vec::with_capacity(params.q);
        tables.push(first);
        tables.extend(shares);
        Ok(PublicKey {
            params,
            seed: Some(seed),
            a,
            tables,
        })
    }
}

/// `ω_2..ω_q`, the secret tables, `t_A` and the cached `A1⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretKey {
    pub(crate) params: ParamSet,
    pub(crate) public_seed: Option<Seed>,
    pub(crate) mode: SecretMode,
    pub(crate) omegas: OmegaSet,
    pub(crate) tables: Vec<SubstitutionTable>,
    pub(crate) decoders: Vec<Decoder>,
    pub(crate) t_a: Vec<Word>,
    pub(crate) a1_inv: BitMatrix,
}

impl SecretKey {
    pub(crate) fn assemble(
        params: ParamSet,
        public_seed: Option<Seed>,
        mode: SecretMode,
        omegas: OmegaSet,
        tables: Vec<SubstitutionTable>,
        t_a: Vec<Word>,
        a: &BitMatrix,
    ) -> Result<SecretKey> {
        let decoders = tables
            .iter()
            .map(SubstitutionTable::decoder)
            .collect::<Result<Vec<_>>>()?;
        let a1_inv = a.columns(0, params.l).inverse()?;
        Ok(SecretKey {
            params,
            public_seed,
            mode,
            omegas,
            tables,
            decoders,
            t_a,
            a1_inv,
        })
    }

    pub fn params(&self) -> ParamSet {
        self.params
    }

    pub fn mode(&self) -> SecretMode {
        self.mode
    }

    pub fn omegas(&self) -> &OmegaSet {
        &self.omegas
    }

    /// The secret table used at 0-based position `i < l`.
    pub fn table(&self, i: usize) -> &SubstitutionTable {
        match self.mode {
            SecretMode::Independent => &self.tables[i],
            SecretMode::Shared => &self.tables[0],
        }
    }

    pub fn tables(&self) -> &[SubstitutionTable] {
        &self.tables
    }

    pub(crate) fn decoder(&self, i: usize) -> &Decoder {
        match self.mode {
            SecretMode::Independent => &self.decoders[i],
            SecretMode::Shared => &self.decoders[0],
        }
    }

    pub fn t_a(&self) -> &[Word] {
        &self.t_a
    }

    pub fn a1_inverse(&self) -> &BitMatrix {
        &self.a1_inv
    }
}

/// Explicit inputs for key construction, bypassing the seeded generator.
#[derive(Clone, Debug)]
pub struct KeyParts {
    pub a: BitMatrix,
    pub omegas: OmegaSet,
    pub mode: SecretMode,
    /// `l` tables, or one when `mode` is `Shared`.
    pub secret: Vec<SubstitutionTable>,
    /// Unmasked shares `β_{ji}`, `shares[j-2][i]`.
    pub shares: Vec<Vec<SubstitutionTable>>,
    pub taus: TauMask,
}

/// Regenerates `A` and `β'_{ji}` for `j >= 2` from the public seed.
pub(crate) fn regenerate_public(
    params: ParamSet,
    public_seed: &Seed,
) -> Result<(BitMatrix, Vec<Vec<SubstitutionTable>>)> {
    let a = gen_system_matrix(
        params.l,
        params.k,
        &mut DetRandom::new(*public_seed, TAG_SYSTEM_MATRIX).stream(),
    )?;
    let mut s = DetRandom::new(*public_seed, TAG_PUBLIC_SHARES).stream();
    let shares = (1..params.q)
        .map(|_| {
            (0..params.k)
                .map(|_| SubstitutionTable::uniform_random(params.m, &mut s))
                .collect()
        })
        .collect();
    Ok((a, shares))
}

pub fn keygen(params: ParamSet, seed: &Seed) -> Result<(PublicKey, SecretKey)> {
    keygen_with(params, seed, KeygenOptions::default())
}

/// Deterministic per `(params, seed, options)`.
pub fn keygen_with(
    params: ParamSet,
    seed: &Seed,
    options: KeygenOptions,
) -> Result<(PublicKey, SecretKey)> {
    let (public_seed, parts) = seeded_parts(params, seed, options)?;
    let (mut pk, mut sk) = keygen_from_parts(params, parts)?;
    pk.seed = Some(public_seed);
    sk.public_seed = Some(public_seed);
    Ok((pk, sk))
}

/// The public seed and every secret input `keygen_with` draws from `seed`,
/// including the masks `τ` that the finished keys discard.
pub fn seeded_parts(
    params: ParamSet,
    seed: &Seed,
    options: KeygenOptions,
) -> Result<(Seed, KeyParts)> {
    params.validate()?;
    let ParamSet { m, k, l, q } = params;
    let mut public_seed = [0u8; SEED_BYTES];
    public_seed.copy_from_slice(&DetRandom::new(*seed, TAG_PUBLIC_SEED).bytes(SEED_BYTES));
    let (a, public_shares) = regenerate_public(params, &public_seed)?;

    let mut s = DetRandom::new(*seed, TAG_SECRET).stream();
    let omegas = OmegaSet::random(m, q, &mut s);
    let secret = (0..options.mode.table_count(l))
        .map(|_| SecretSubstitution::random(m, options.steps, &mut s).into_masked())
        .collect();
    let taus = TauMask::random(m, q, k, &mut s);
    // β_{ji} = β'_{ji} + τ_{ji}, so that adding τ back yields the public table.
    let shares = public_shares
        .iter()
        .enumerate()
        .map(|(j, row)| {
            row.iter()
                .enumerate()
                .map(|(i, t)| add_tau(t, taus.get(j + 1, i)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let parts = KeyParts {
        a,
        omegas,
        mode: options.mode,
        secret,
        shares,
        taus,
    };
    Ok((public_seed, parts))
}

/// Builds a key pair from explicit parts. The result has no seed and cannot be
/// serialized.
pub fn keygen_from_parts(params: ParamSet, parts: KeyParts) -> Result<(PublicKey, SecretKey)> {
    params.validate()?;
    let ParamSet { m, k, l, q } = params;
    let KeyParts {
        a,
        omegas,
        mode,
        secret,
        shares,
        taus,
    } = parts;
    if (a.rows(), a.cols()) != (l, k) {
        return Err(Error::Dimension {
            op: "keygen_from_parts: system matrix",
            expected: l * k,
            found: a.rows() * a.cols(),
        });
    }
    if omegas.width() != m || omegas.q() != q || taus.shape() != (q, k, m) {
        return Err(Error::ParamsMismatch);
    }
    if secret.len() != mode.table_count(l) {
        return Err(Error::Dimension {
            op: "keygen_from_parts: secret tables",
            expected: mode.table_count(l),
            found: secret.len(),
        });
    }
    if secret.iter().any(|t| t.width() != m) || shares.iter().flatten().any(|t| t.width() != m) {
        return Err(Error::ParamsMismatch);
    }
    let per_position: Vec<SubstitutionTable> = (0..l)
        .map(|i| match mode {
            SecretMode::Independent => secret[i].clone(),
            SecretMode::Shared => secret[0].clone(),
        })
        .collect();
    let public = build_public_set(&per_position, &shares, &omegas, &taus)?;
    let hats = TauHat::compute(&taus, &a, &omegas)?;
    let sk = SecretKey::assemble(params, None, mode, omegas, secret, hats.t_a, &a)?;
    let pk = PublicKey {
        params,
        seed: None,
        a,
        tables: public.tables,
    };
    Ok((pk, sk))
}
