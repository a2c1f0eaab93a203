//! Factorizable type-2 substitutions on `{0,1}^m` and the masking chain that
//! hides their simple factorization.

mod masking;
mod table;

pub use masking::{
    add_offsets, apply_masking, field_scale, permute_blocks, swap_rows, MaskingRecipe,
    MaskingSteps, SecretSubstitution,
};
pub use table::{Decoder, SubstitutionTable};
