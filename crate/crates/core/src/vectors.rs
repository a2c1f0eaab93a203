//! The fixed worked example: one substitution masked step by step, and a
//! complete `m = 6, k = 12, l = 6, q = 2` key, encryption and decryption trace.
//!
//! Strings are printed with bit 0 leftmost. [`Vectors::check`] recomputes every
//! derived value through the library and compares it with the embedded data.

use crate::gf2::{BitMatrix, Gf2m, Word};
use crate::logsig::{
    add_offsets, apply_masking, field_scale, permute_blocks, swap_rows, MaskingRecipe,
    MaskingSteps, SecretSubstitution, SubstitutionTable,
};
use crate::pke::{
    decrypt_trace, encrypt_trace, keygen_from_parts, KeyParts, Message, ParamSet, SecretMode,
};
use crate::sharing::{OmegaSet, TauHat, TauMask};
use crate::Result;

pub const M: usize = 6;
pub const K: usize = 12;
pub const L: usize = 6;
pub const Q: usize = 2;

/// `ρ1`: swap the rows of blocks 1, 2, 4 and 5.
pub const SWAP_MASK: &str = "110110";
/// `ρ2` as printed, `340152`: old block `i` moves to position `BLOCK_PERM[i]`.
pub const BLOCK_PERM: [usize; 6] = [3, 4, 0, 1, 5, 2];
pub const NU: [&str; 6] = ["101111", "101000", "111001", "010100", "000000", "011110"];
/// `γ = 1 + x + x² + x⁴`.
pub const GAMMA: &str = "111010";
pub const PSI: [&str; 6] = ["101000", "001010", "110001", "000111", "010000", "111010"];

pub const SYSTEM_MATRIX: [&str; 6] = [
    "110101111100",
    "000011001010",
    "010101111001",
    "001101101111",
    "110011101101",
    "000111010010",
];
pub const OMEGA_2: [&str; 6] = ["010011", "101110", "010010", "000011", "010101", "110001"];

/// The masking stages of one substitution: row `j` holds block `B_{j+1}` at
/// every stage, two words per stage (`β₁`, after `ρ1`, `ρ2`, `ρ3`, `ρ4`, `ρ5`).
pub const TABLE1: [[&str; 12]; 6] = [
    [
        "000000", "100000", "100000", "000000", "000000", "001000", "101111", "100111", "001011",
        "110101", "011011", "011111",
    ],
    [
        "100000", "010000", "010000", "100000", "000100", "110000", "101100", "011000", "011011",
        "100011", "010001", "000010",
    ],
    [
        "000000", "001000", "000000", "001000", "111000", "001001", "000001", "110000", "101111",
        "100111", "110100", "000101",
    ],
    [
        "110000", "000100", "000100", "110000", "100000", "000000", "110100", "010100", "111000",
        "000010", "010011", "010000",
    ],
    [
        "100000", "010110", "010110", "100000", "010000", "100000", "010000", "100000", "011101",
        "111010", "000110", "000011",
    ],
    [
        "111000", "001001", "111000", "001001", "010110", "100000", "001000", "111110", "111110",
        "111001", "000100", "101001",
    ],
];

/// `τ_{j,i}` as printed: `TAU[j][p][i]` is row `p` of `τ_{j+1,i+1}`.
pub const TAU: [[[&str; 12]; 6]; 2] = [
    [
        [
            "000111", "100000", "111100", "010111", "000010", "111100", "101100", "110111",
            "010011", "100011", "100011", "100001",
        ],
        [
            "010101", "101011", "101100", "101001", "011011", "110111", "010000", "101101",
            "001011", "011010", "101000", "000001",
        ],
        [
            "101100", "011110", "100000", "010100", "001101", "010001", "010011", "000010",
            "111110", "000010", "010000", "110111",
        ],
        [
            "101001", "010111", "100001", "100001", "111001", "001010", "011101", "111010",
            "001011", "100010", "011000", "010100",
        ],
        [
            "011010", "011001", "000100", "100110", "110000", "010011", "010010", "110010",
            "010101", "010111", "010001", "011010",
        ],
        [
            "101011", "010110", "000001", "000000", "010111", "100011", "101100", "001110",
            "000011", "001000", "100010", "011111",
        ],
    ],
    [
        [
            "001001", "011110", "101100", "010011", "111111", "011111", "110001", "001110",
            "001000", "011001", "001110", "100000",
        ],
        [
            "010111", "001110", "101011", "110001", "001011", "101001", "100010", "101010",
            "010100", "010101", "001011", "010011",
        ],
        [
            "110110", "100110", "010111", "101011", "001101", "110000", "100010", "101000",
            "110101", "011000", "101011", "011001",
        ],
        [
            "110011", "011011", "110011", "101000", "101111", "110011", "110000", "111111",
            "011100", "001010", "010110", "101100",
        ],
        [
            "010111", "011111", "110110", "100101", "010001", "110101", "010100", "110111",
            "100001", "011001", "100010", "011011",
        ],
        [
            "100101", "101111", "010100", "100010", "100001", "100010", "110100", "110010",
            "111110", "111011", "111111", "011100",
        ],
    ],
];

/// `τ̂_{j,i}`.
pub const TAU_HAT: [[&str; 12]; 2] = [
    [
        "100110", "001101", "010100", "101101", "001010", "100000", "001100", "011110", "111011",
        "000110", "110000", "000110",
    ],
    [
        "101001", "011101", "000001", "100110", "100110", "100010", "100001", "110110", "101010",
        "111100", "100101", "000001",
    ],
];

/// `τ̂_{Aj} = A × τ̂_j`.
pub const TAU_HAT_A: [[&str; 6]; 2] = [
    ["001001", "100001", "101111", "011110", "110110", "101001"],
    ["110001", "001011", "100101", "010110", "000110", "110001"],
];

pub const TAU_HAT_A2_OMEGA: [&str; 6] =
    ["001100", "110110", "100001", "111000", "010110", "001100"];

pub const T_A: [&str; 6] = ["000101", "010111", "001110", "100110", "100000", "100101"];

/// `β_{2,i}` as printed: column `i` is a table, row `r` is row `r % 2` of block `r / 2`.
pub const SHARES_2: [[&str; 12]; 12] = [
    [
        "010011", "000110", "110101", "100100", "100101", "111111", "101110", "111011", "111101",
        "001110", "101111", "000010",
    ],
    [
        "100011", "010110", "011110", "110110", "100000", "110101", "111101", "001010", "110110",
        "001101", "011101", "100101",
    ],
    [
        "010010", "110001", "110100", "001000", "101101", "101111", "001100", "001011", "010000",
        "111111", "000111", "110100",
    ],
    [
        "011111", "100001", "011010", "011101", "000001", "101011", "101000", "001110", "111100",
        "010010", "000001", "010101",
    ],
    [
        "000111", "100100", "110000", "100000", "100011", "100111", "010000", "001111", "010000",
        "010100", "100101", "001000",
    ],
    [
        "001110", "001011", "110111", "000110", "110101", "010010", "010011", "100100", "011011",
        "100100", "000011", "111001",
    ],
    [
        "110100", "010011", "110010", "010111", "101010", "100111", "101111", "001110", "101001",
        "010010", "101101", "001001",
    ],
    [
        "011101", "111000", "111000", "111110", "001001", "110100", "110001", "101111", "000000",
        "100001", "101010", "111100",
    ],
    [
        "011011", "111100", "010110", "100011", "001010", "010110", "110101", "000000", "000110",
        "110100", "100011", "011110",
    ],
    [
        "010011", "000001", "010100", "001111", "010000", "100110", "000110", "101101", "001100",
        "000110", "100001", "101011",
    ],
    [
        "011001", "000011", "001100", "110011", "100011", "100111", "000110", "101101", "110000",
        "110110", "010010", "010000",
    ],
    [
        "100010", "111110", "011100", "011011", "011010", "011111", "001111", "011100", "110010",
        "111001", "101111", "101101",
    ],
];

/// `β'_{j,i}`, laid out like [`SHARES_2`].
pub const PUBLIC: [[[&str; 12]; 12]; 2] = [
    [
        [
            "010110", "101101", "101000", "011100", "111000", "101111", "111011", "111100",
            "001110", "100111", "000101", "110100",
        ],
        [
            "101111", "000111", "001001", "100011", "001110", "101100", "110001", "110000",
            "111000", "000011", "101101", "000000",
        ],
        [
            "111111", "110110", "000011", "101010", "111001", "000000", "000001", "011011",
            "100101", "010010", "001111", "111111",
        ],
        [
            "001100", "001011", "000111", "100101", "101000", "010000", "010001", "101001",
            "100111", "100001", "011001", "011101",
        ],
        [
            "111111", "111010", "101001", "110011", "001110", "010001", "111101", "110111",
            "010000", "101111", "110001", "100101",
        ],
        [
            "101101", "101101", "111111", "000111", "000111", "101111", "011001", "010010",
            "100110", "010010", "110100", "101001",
        ],
        [
            "000100", "001110", "011010", "111011", "111110", "101101", "111011", "111110",
            "111011", "011001", "101011", "110111",
        ],
        [
            "110111", "101000", "011110", "001000", "001010", "100100", "010001", "011100",
            "001011", "000000", "001100", "111000",
        ],
        [
            "000100", "110011", "111010", "010111", "110001", "101101", "011101", "110010",
            "000011", "101001", "100110", "110000",
        ],
        [
            "010011", "101011", "101010", "010000", "011101", "010101", "000100", "000001",
            "000100", "000001", "110011", "111111",
        ],
        [
            "100010", "110110", "010100", "011101", "100100", "010011", "111010", "111101",
            "111110", "100011", "011001", "110001",
        ],
        [
            "000100", "000110", "010111", "110001", "010111", "010001", "011001", "110001",
            "101011", "010110", "000100", "101100",
        ],
    ],
    [
        [
            "011010", "011000", "011001", "110111", "011010", "100000", "011111", "110101",
            "110101", "010111", "100001", "100010",
        ],
        [
            "101010", "001000", "110010", "100101", "011111", "101010", "001100", "000100",
            "111110", "010100", "010011", "000101",
        ],
        [
            "000101", "111111", "011111", "111001", "100110", "000110", "101110", "100001",
            "000100", "101010", "001100", "100111",
        ],
        [
            "001000", "101111", "110001", "101100", "001010", "000010", "001010", "100100",
            "101000", "000111", "001010", "000110",
        ],
        [
            "110001", "000010", "100111", "001011", "101110", "010111", "110010", "100111",
            "100101", "001100", "001110", "010001",
        ],
        [
            "111000", "101101", "100000", "101101", "111000", "100010", "110001", "001100",
            "101110", "111100", "101000", "100000",
        ],
        [
            "000111", "001000", "000001", "111111", "000101", "010100", "011111", "110001",
            "110101", "011000", "111011", "100101",
        ],
        [
            "101110", "100011", "001011", "010110", "100110", "000111", "000001", "010000",
            "011100", "101011", "111100", "010000",
        ],
        [
            "001100", "100011", "100000", "000110", "011011", "100011", "100001", "110111",
            "100111", "101101", "000001", "000101",
        ],
        [
            "000100", "011110", "100010", "101010", "000001", "010011", "010010", "011010",
            "101101", "011111", "000011", "110000",
        ],
        [
            "111100", "101100", "011000", "010001", "000010", "000101", "110010", "011111",
            "001110", "001101", "101101", "001100",
        ],
        [
            "000111", "010001", "001000", "111001", "111011", "111101", "111011", "101110",
            "001100", "000010", "010000", "110001",
        ],
    ],
];

/// `x_1..x_12`; the tail `x_7..x_12` is given, not derived.
pub const X: [&str; 12] = [
    "111111", "001111", "111000", "001101", "001011", "001101", "010100", "101010", "101001",
    "100100", "001101", "010001",
];

/// `y_{j,i} = β'_{j,i}(x_i)`.
pub const Y: [[&str; 12]; 2] = [
    [
        "101110", "110011", "000101", "011111", "110010", "011000", "100001", "111011", "101000",
        "110100", "010000", "100111",
    ],
    [
        "110111", "100110", "011010", "001010", "111011", "011101", "110101", "011101", "001010",
        "111001", "101000", "100100",
    ],
];

/// `u'_j = A × y_j`.
pub const U: [[&str; 6]; 2] = [
    ["011100", "010010", "100001", "001000", "101101", "011110"],
    ["011101", "000100", "110111", "000111", "010101", "011001"],
];

pub const U2_OMEGA: [&str; 6] = ["001110", "000011", "011010", "100111", "011100", "001101"];

pub const U_PRIME: [&str; 6] = ["010010", "010001", "111011", "101111", "110001", "010011"];

pub const U_SIGMA: [&str; 6] = ["010111", "000110", "110101", "001001", "010001", "110110"];

pub const A1_INV: [&str; 6] = ["101000", "111010", "110110", "010001", "110011", "100011"];

pub const Y_HEAD: [&str; 6] = ["100010", "110101", "001001", "110000", "110110", "110000"];

pub const X_HEAD: [&str; 6] = ["111111", "001111", "111000", "001101", "001011", "001101"];

pub fn appendix_params() -> ParamSet {
    ParamSet {
        m: M,
        k: K,
        l: L,
        q: Q,
    }
}

fn w(s: &str) -> Word {
    Word::from_bits(s, M).expect("embedded word")
}

fn ws(s: &[&str]) -> Vec<Word> {
    s.iter().map(|x| w(x)).collect()
}

fn mat(rows: &[&str]) -> BitMatrix {
    BitMatrix::from_rows(rows).expect("embedded matrix")
}

fn tables_from_columns(printed: &[[&str; 12]; 12]) -> Vec<SubstitutionTable> {
    (0..K)
        .map(|i| {
            SubstitutionTable::from_rows(M, printed.iter().map(|r| w(r[i])).collect())
                .expect("12 rows")
        })
        .collect()
}

/// All embedded data parsed into library types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vectors {
    /// Stage tables `β₁..β₆`.
    pub stages: Vec<SubstitutionTable>,
    pub recipe: MaskingRecipe,
    pub a: BitMatrix,
    pub omega_2: BitMatrix,
    pub taus: TauMask,
    pub shares: Vec<SubstitutionTable>,
    pub public: Vec<Vec<SubstitutionTable>>,
    pub tau_hat: Vec<Vec<Word>>,
    pub tau_hat_a: Vec<Vec<Word>>,
    pub tau_hat_a2_omega: Vec<Word>,
    pub t_a: Vec<Word>,
    pub x: Vec<Word>,
    pub y: Vec<Vec<Word>>,
    pub u: Vec<Vec<Word>>,
    pub u2_omega: Vec<Word>,
    pub u_prime: Vec<Word>,
    pub u_sigma: Vec<Word>,
    pub a1_inv: BitMatrix,
    pub y_head: Vec<Word>,
    pub x_head: Vec<Word>,
}

/// Outcome of comparing one table's derived words with the embedded ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub table: &'static str,
    pub words: usize,
    pub mismatches: Vec<String>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct Checker {
    table: &'static str,
    words: usize,
    mismatches: Vec<String>,
}

impl Checker {
    fn new(table: &'static str) -> Self {
        Checker {
            table,
            words: 0,
            mismatches: Vec::new(),
        }
    }

    fn words(&mut self, what: &str, got: &[Word], want: &[Word]) {
        self.words += want.len();
        if got.len() != want.len() {
            self.mismatches.push(format!(
                "{what}: {} words, expected {}",
                got.len(),
                want.len()
            ));
            return;
        }
        for (i, (g, e)) in got.iter().zip(want).enumerate() {
            if g != e {
                self.mismatches.push(format!(
                    "{what}[{}]: got {}, expected {}",
                    i + 1,
                    g.to_bits(M),
                    e.to_bits(M)
                ));
            }
        }
    }

    fn tables(&mut self, what: &str, got: &[SubstitutionTable], want: &[SubstitutionTable]) {
        for (i, (g, e)) in got.iter().zip(want).enumerate() {
            self.words(&format!("{what}{}", i + 1), g.rows(), e.rows());
        }
    }

    fn fail(&mut self, what: String) {
        self.mismatches.push(what);
    }

    fn done(self) -> TableCheck {
        TableCheck {
            table: self.table,
            words: self.words,
            mismatches: self.mismatches,
        }
    }
}

/// Names accepted by [`Vectors::corrupt`], in check order.
pub const TABLE_NAMES: [&str; 6] = ["1", "A.2", "A.4", "A.5", "A.6", "A.7"];

impl Vectors {
    pub fn embedded() -> Vectors {
        let stages = (0..6)
            .map(|c| {
                let rows = TABLE1
                    .iter()
                    .flat_map(|b| [w(b[2 * c]), w(b[2 * c + 1])])
                    .collect();
                SubstitutionTable::from_rows(M, rows).expect("12 rows")
            })
            .collect();
        let recipe = MaskingRecipe {
            swap_mask: w(SWAP_MASK),
            block_perm: BLOCK_PERM.to_vec(),
            nu: ws(&NU),
            gamma: w(GAMMA),
            psi: mat(&PSI),
            steps: MaskingSteps::FULL,
        };
        let taus = TauMask::new(
            M,
            TAU.iter()
                .map(|tj| {
                    (0..K)
                        .map(|i| tj.iter().map(|r| w(r[i])).collect())
                        .collect()
                })
                .collect(),
        )
        .expect("q × k masks of m rows");
        Vectors {
            stages,
            recipe,
            a: mat(&SYSTEM_MATRIX),
            omega_2: mat(&OMEGA_2),
            taus,
            shares: tables_from_columns(&SHARES_2),
            public: PUBLIC.iter().map(tables_from_columns).collect(),
            tau_hat: TAU_HAT.iter().map(|t| ws(t)).collect(),
            tau_hat_a: TAU_HAT_A.iter().map(|t| ws(t)).collect(),
            tau_hat_a2_omega: ws(&TAU_HAT_A2_OMEGA),
            t_a: ws(&T_A),
            x: ws(&X),
            y: Y.iter().map(|t| ws(t)).collect(),
            u: U.iter().map(|t| ws(t)).collect(),
            u2_omega: ws(&U2_OMEGA),
            u_prime: ws(&U_PRIME),
            u_sigma: ws(&U_SIGMA),
            a1_inv: mat(&A1_INV),
            y_head: ws(&Y_HEAD),
            x_head: ws(&X_HEAD),
        }
    }

    /// Flip bit 0 of one expected word of `table`, so that its check fails.
    /// Returns false for an unknown table name.
    pub fn corrupt(&mut self, table: &str) -> bool {
        let flip = |v: &mut Word| v.0 ^= 1;
        match table {
            "1" => {
                let mut rows = self.stages[3].rows().to_vec();
                flip(&mut rows[0]);
                self.stages[3] = SubstitutionTable::from_rows(M, rows).expect("same shape");
            }
            "A.2" => flip(&mut self.t_a[2]),
            "A.4" => {
                let mut rows = self.public[0][4].rows().to_vec();
                flip(&mut rows[7]);
                self.public[0][4] = SubstitutionTable::from_rows(M, rows).expect("same shape");
            }
            "A.5" => {
                let mut rows = self.public[1][11].rows().to_vec();
                flip(&mut rows[11]);
                self.public[1][11] = SubstitutionTable::from_rows(M, rows).expect("same shape");
            }
            "A.6" => flip(&mut self.u[1][5]),
            "A.7" => flip(&mut self.y_head[4]),
            _ => return false,
        }
        true
    }

    /// The simple factorization `β₁`.
    pub fn base(&self) -> &SubstitutionTable {
        &self.stages[0]
    }

    /// The masked substitution `β` used at every secret position.
    pub fn secret(&self) -> Result<SecretSubstitution> {
        SecretSubstitution::new(self.base().clone(), self.recipe.clone())
    }

    pub fn omegas(&self) -> Result<OmegaSet> {
        OmegaSet::new(M, vec![self.omega_2.clone()])
    }

    /// Key inputs with one shared secret table. The masked table is rebuilt
    /// from `β₁` and the recipe, not taken from the stage data.
    pub fn key_parts(&self) -> Result<KeyParts> {
        Ok(KeyParts {
            a: self.a.clone(),
            omegas: self.omegas()?,
            mode: SecretMode::Shared,
            secret: vec![self.secret()?.into_masked()],
            shares: vec![self.shares.clone()],
            taus: self.taus.clone(),
        })
    }

    pub fn message(&self) -> Message {
        Message::with_tail(self.x[..L].to_vec(), self.x[L..].to_vec())
    }

    /// Recompute every table and compare word by word.
    pub fn check(&self) -> Vec<TableCheck> {
        let mut out = vec![self.check_stages()];
        match self.check_key_and_cipher() {
            Ok(mut rest) => out.append(&mut rest),
            Err(e) => {
                for table in &TABLE_NAMES[1..] {
                    let mut c = Checker::new(table);
                    c.fail(format!("construction failed: {e}"));
                    out.push(c.done());
                }
            }
        }
        out
    }

    fn check_stages(&self) -> TableCheck {
        let mut c = Checker::new("1");
        let r = &self.recipe;
        let field = Gf2m::new(M).expect("m = 6");
        let mut derived = vec![self.base().clone()];
        derived.push(swap_rows(&derived[0], r.swap_mask));
        derived.push(permute_blocks(&derived[1], &r.block_perm));
        derived.push(add_offsets(&derived[2], &r.nu));
        derived.push(field_scale(&derived[3], &field, r.gamma));
        derived.push(derived[4].scale(&r.psi).expect("m × m"));
        c.tables("stage", &derived, &self.stages);
        match apply_masking(self.base(), r) {
            Ok(t) if t == derived[5] => {}
            Ok(_) => c.fail("full chain differs from the stepwise result".into()),
            Err(e) => c.fail(format!("masking failed: {e}")),
        }
        c.done()
    }

    fn check_key_and_cipher(&self) -> Result<Vec<TableCheck>> {
        let params = appendix_params();
        let omegas = self.omegas()?;
        let (pk, sk) = keygen_from_parts(params, self.key_parts()?)?;

        let mut a2 = Checker::new("A.2");
        let hats = TauHat::compute(&self.taus, &self.a, &omegas)?;
        for j in 0..Q {
            a2.words(
                &format!("tau_hat_{}", j + 1),
                &hats.hats[j],
                &self.tau_hat[j],
            );
            a2.words(
                &format!("tau_hat_A{}", j + 1),
                &hats.hat_images[j],
                &self.tau_hat_a[j],
            );
        }
        let scaled: Vec<Word> = hats.hat_images[1]
            .iter()
            .map(|&v| self.omega_2.mul_word(v))
            .collect();
        a2.words("tau_hat_A2_omega2", &scaled, &self.tau_hat_a2_omega);
        a2.words("t_A", &hats.t_a, &self.t_a);
        a2.words("t_A (key)", sk.t_a(), &self.t_a);

        let mut a4 = Checker::new("A.4");
        a4.tables("beta'_1,", &pk.tables()[0], &self.public[0]);
        let mut a5 = Checker::new("A.5");
        a5.tables("beta'_2,", &pk.tables()[1], &self.public[1]);

        let mut a6 = Checker::new("A.6");
        let enc = encrypt_trace(&pk, &self.message())?;
        for j in 0..Q {
            a6.words(&format!("y_{}", j + 1), &enc.y[j], &self.y[j]);
            a6.words(
                &format!("u'_{}", j + 1),
                &enc.ciphertext.shares()[j],
                &self.u[j],
            );
        }

        let mut a7 = Checker::new("A.7");
        let dec = decrypt_trace(&sk, &enc.ciphertext)?;
        let u2w: Vec<Word> = enc.ciphertext.shares()[1]
            .iter()
            .map(|&v| self.omega_2.mul_word(v))
            .collect();
        a7.words("u'_2 omega_2", &u2w, &self.u2_omega);
        a7.words("u'", &dec.u_prime, &self.u_prime);
        a7.words("u_sigma", &dec.u_sigma, &self.u_sigma);
        a7.words(
            "A1^-1",
            &sk.a1_inverse().row_words(),
            &self.a1_inv.row_words(),
        );
        let a1 = self.a.columns(0, L);
        if a1.mul(&self.a1_inv)? != BitMatrix::identity(L) {
            a7.fail("A1 times the printed inverse is not the identity".into());
        }
        a7.words("y", &dec.y, &self.y_head);
        a7.words("x", &dec.head, &self.x_head);

        Ok(vec![a2.done(), a4.done(), a5.done(), a6.done(), a7.done()])
    }
}

/// Appendix key inputs with the embedded data.
pub fn appendix_key_parts() -> Result<KeyParts> {
    Vectors::embedded().key_parts()
}
