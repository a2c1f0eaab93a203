use super::table::{Decoder, SubstitutionTable};
use crate::gf2::{random_nonsingular, BitMatrix, BitStream, Gf2m, Word};
use crate::{Error, Result};

/// Which of the value-masking steps are applied. The row swap and block
/// permutation are always part of a recipe (an all-zero mask and the identity
/// permutation disable them).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaskingSteps {
    /// Add `ν_j` to both rows of block `j`.
    pub offsets: bool,
    /// Multiply every row by `γ` in `F(2^m)`.
    pub field_scale: bool,
    /// Multiply every row by `ψ`.
    pub matrix_scale: bool,
}

impl MaskingSteps {
    pub const FULL: MaskingSteps = MaskingSteps {
        offsets: true,
        field_scale: true,
        matrix_scale: true,
    };
    /// Only swap, permutation and offsets.
    pub const SHUFFLE_AND_OFFSET: MaskingSteps = MaskingSteps {
        offsets: true,
        field_scale: false,
        matrix_scale: false,
    };
    pub const NONE: MaskingSteps = MaskingSteps {
        offsets: false,
        field_scale: false,
        matrix_scale: false,
    };
}

impl Default for MaskingSteps {
    fn default() -> Self {
        MaskingSteps::FULL
    }
}

/// Parameters of the masking chain `ρ1..ρ5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskingRecipe {
    /// `ρ1`: bit `j` set swaps the two rows of block `j`.
    pub swap_mask: Word,
    /// `ρ2`: old block `i` moves to position `block_perm[i]` (0-based).
    pub block_perm: Vec<usize>,
    /// `ρ3`: per-block offsets `ν_j`.
    pub nu: Vec<Word>,
    /// `ρ4`: nonzero field multiplier.
    pub gamma: Word,
    /// `ρ5`: nonsingular `m × m` matrix.
    pub psi: BitMatrix,
    pub steps: MaskingSteps,
}

impl MaskingRecipe {
    /// The recipe that changes nothing.
    pub fn identity(m: usize) -> Self {
        MaskingRecipe {
            swap_mask: Word::ZERO,
            block_perm: (0..m).collect(),
            nu: vec![Word::ZERO; m],
            gamma: Word(1),
            psi: BitMatrix::identity(m),
            steps: MaskingSteps::NONE,
        }
    }

    /// Random recipe: uniform swap mask, uniform permutation (Fisher–Yates),
    /// uniform offsets, uniform nonzero `γ` and uniform nonsingular `ψ`.
    pub fn random(m: usize, steps: MaskingSteps, rng: &mut BitStream) -> Self {
        let swap_mask = rng.next_word(m);
        let mut block_perm: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            let j = rng.next_below(i + 1);
            block_perm.swap(i, j);
        }
        let nu = (0..m).map(|_| rng.next_word(m)).collect();
        let gamma = loop {
            let g = rng.next_word(m);
            if !g.is_zero() {
                break g;
            }
        };
        let psi = random_nonsingular(m, rng);
        MaskingRecipe {
            swap_mask,
            block_perm,
            nu,
            gamma,
            psi,
            steps,
        }
    }

    pub fn width(&self) -> usize {
        self.block_perm.len()
    }

    /// `ν_Σ`, the XOR of all offsets.
    pub fn nu_sum(&self) -> Word {
        self.nu.iter().fold(Word::ZERO, |a, &b| a ^ b)
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.block_perm.len() != m || self.nu.len() != m {
            return Err(Error::InvalidRecipe("recipe width does not match table"));
        }
        let mut seen = vec![false; m];
        for &d in &self.block_perm {
            if d >= m || seen[d] {
                return Err(Error::InvalidRecipe("block map is not a permutation"));
            }
            seen[d] = true;
        }
        if self.swap_mask.0 & !Word::mask(m) != 0
            || self.nu.iter().any(|w| w.0 & !Word::mask(m) != 0)
            || self.gamma.0 & !Word::mask(m) != 0
        {
            return Err(Error::InvalidRecipe("word wider than the table"));
        }
        if self.steps.field_scale && self.gamma.is_zero() {
            return Err(Error::InvalidRecipe("field multiplier is zero"));
        }
        if self.steps.matrix_scale {
            if self.psi.rows() != m || self.psi.cols() != m {
                return Err(Error::InvalidRecipe("matrix multiplier has wrong shape"));
            }
            if self.psi.rank() != m {
                return Err(Error::InvalidRecipe("matrix multiplier is singular"));
            }
        }
        Ok(())
    }
}

/// Apply one step at a time; exposed so each intermediate table can be checked.
pub fn swap_rows(t: &SubstitutionTable, mask: Word) -> SubstitutionTable {
    let mut out = t.clone();
    for j in 0..t.width() {
        if mask.bit(j) {
            out.rows_mut().swap(2 * j, 2 * j + 1);
        }
    }
    out
}

pub fn permute_blocks(t: &SubstitutionTable, dest: &[usize]) -> SubstitutionTable {
    let mut out = t.clone();
    for (i, &d) in dest.iter().enumerate() {
        let (a, b) = t.block(i);
        out.rows_mut()[2 * d] = a;
        out.rows_mut()[2 * d + 1] = b;
    }
    out
}

pub fn add_offsets(t: &SubstitutionTable, nu: &[Word]) -> SubstitutionTable {
    let mut out = t.clone();
    for (j, &v) in nu.iter().enumerate() {
        out.rows_mut()[2 * j] ^= v;
        out.rows_mut()[2 * j + 1] ^= v;
    }
    out
}

pub fn field_scale(t: &SubstitutionTable, field: &Gf2m, gamma: Word) -> SubstitutionTable {
    let mut out = t.clone();
    for r in out.rows_mut() {
        *r = field.mul(*r, gamma);
    }
    out
}

/// `ρ1` then `ρ2` then the active value steps.
pub fn apply_masking(
    base: &SubstitutionTable,
    recipe: &MaskingRecipe,
) -> Result<SubstitutionTable> {
    let m = base.width();
    recipe.validate(m)?;
    let mut t = swap_rows(base, recipe.swap_mask);
    t = permute_blocks(&t, &recipe.block_perm);
    if recipe.steps.offsets {
        t = add_offsets(&t, &recipe.nu);
    }
    if recipe.steps.field_scale {
        t = field_scale(&t, &Gf2m::new(m)?, recipe.gamma);
    }
    if recipe.steps.matrix_scale {
        t = t.scale(&recipe.psi)?;
    }
    Ok(t)
}

/// A masked substitution together with the simple factorization and the
/// recipe that produced it.
#[derive(Clone, Debug)]
pub struct SecretSubstitution {
    base: SubstitutionTable,
    recipe: MaskingRecipe,
    masked: SubstitutionTable,
    unmask: Unmask,
}

#[derive(Clone, Debug)]
struct Unmask {
    base_decoder: Decoder,
    psi_inv: Option<BitMatrix>,
    gamma_inv: Option<Word>,
    nu_sum: Option<Word>,
    field: Gf2m,
}

impl SecretSubstitution {
    pub fn new(base: SubstitutionTable, recipe: MaskingRecipe) -> Result<Self> {
        let m = base.width();
        let base_decoder = base.decoder()?;
        let masked = apply_masking(&base, &recipe)?;
        let field = Gf2m::new(m)?;
        let unmask = Unmask {
            base_decoder,
            psi_inv: recipe
                .steps
                .matrix_scale
                .then(|| recipe.psi.inverse())
                .transpose()?,
            gamma_inv: recipe
                .steps
                .field_scale
                .then(|| field.inv(recipe.gamma))
                .transpose()?,
            nu_sum: recipe.steps.offsets.then(|| recipe.nu_sum()),
            field,
        };
        Ok(SecretSubstitution {
            base,
            recipe,
            masked,
            unmask,
        })
    }

    /// Random simple factorization masked by a random recipe.
    pub fn random(m: usize, steps: MaskingSteps, rng: &mut BitStream) -> Self {
        let base = SubstitutionTable::simple_random(m, rng);
        let recipe = MaskingRecipe::random(m, steps, rng);
        SecretSubstitution::new(base, recipe).expect("random recipe is valid for a proper base")
    }

    pub fn base(&self) -> &SubstitutionTable {
        &self.base
    }

    pub fn recipe(&self) -> &MaskingRecipe {
        &self.recipe
    }

    pub fn masked(&self) -> &SubstitutionTable {
        &self.masked
    }

    pub fn into_masked(self) -> SubstitutionTable {
        self.masked
    }

    /// Invert the masked table through the recipe: strip `ψ`, `γ` and `ν_Σ`
    /// from the word, decode against the simple factorization, then undo the
    /// row swaps and move each bit back to its block's position.
    pub fn eval_inverse(&self, z: Word) -> Word {
        let u = &self.unmask;
        let mut z3 = z;
        if let Some(psi_inv) = &u.psi_inv {
            z3 = psi_inv.mul_word(z3);
        }
        if let Some(g) = u.gamma_inv {
            z3 = u.field.mul(z3, g);
        }
        if let Some(nu) = u.nu_sum {
            z3 ^= nu;
        }
        let r1 = u.base_decoder.decode(z3) ^ self.recipe.swap_mask;
        let mut r = Word::ZERO;
        for (i, &d) in self.recipe.block_perm.iter().enumerate() {
            if r1.bit(i) {
                r ^= Word::unit(d);
            }
        }
        r
    }
}
