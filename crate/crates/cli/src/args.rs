use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use line_core::gf2::{Seed, SEED_BYTES};
use line_core::logsig::MaskingSteps;
use line_core::pke::SecretMode;
use line_core::ParamSet;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "line", version, about = "LINE public-key encryption tool")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a plaintext file.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file.
    Decrypt(DecryptArgs),
    /// Replay the embedded worked example bit for bit.
    Selftest(SelftestArgs),
    /// Size formulas and measured encryption/decryption cost.
    Bench(BenchArgs),
    /// Run one of the desk-scale attacks.
    Attack(AttackArgs),
    /// Print sizes and secrecy estimates for parameter sets.
    Params(ParamsArgs),
}

/// Either `--preset` or explicit `--m --k --l --q`.
#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// LINE128, LINE192 or LINE256.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["m", "k", "l", "q"])]
    pub preset: Option<String>,
    /// Bits per word.
    #[arg(long)]
    pub m: Option<usize>,
    /// Words per vector.
    #[arg(long)]
    pub k: Option<usize>,
    /// Message words.
    #[arg(long)]
    pub l: Option<usize>,
    /// Number of shares.
    #[arg(long)]
    pub q: Option<usize>,
}

impl ParamArgs {
    pub fn is_empty(&self) -> bool {
        self.preset.is_none()
            && self.m.is_none()
            && self.k.is_none()
            && self.l.is_none()
            && self.q.is_none()
    }

    /// Missing explicit fields are taken from `defaults`; without defaults all
    /// four are required.
    pub fn resolve(&self, defaults: Option<ParamSet>) -> Result<ParamSet, CliError> {
        if let Some(name) = &self.preset {
            return ParamSet::preset(name)
                .ok_or_else(|| CliError::Usage(format!("unknown preset {name:?}")));
        }
        let pick = |v: Option<usize>, d: Option<usize>, flag: &str| {
            v.or(d).ok_or_else(|| {
                CliError::Usage(format!(
                    "missing --{flag}: give --preset or all of --m --k --l --q"
                ))
            })
        };
        let p = ParamSet {
            m: pick(self.m, defaults.map(|d| d.m), "m")?,
            k: pick(self.k, defaults.map(|d| d.k), "k")?,
            l: pick(self.l, defaults.map(|d| d.l), "l")?,
            q: pick(self.q, defaults.map(|d| d.q), "q")?,
        };
        p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(p)
    }
}

pub fn parse_seed(s: &str) -> Result<Seed, String> {
    let bytes = hex::decode(s).map_err(|e| format!("seed is not hex: {e}"))?;
    bytes
        .try_into()
        .map_err(|_| format!("seed must be {} hex characters", 2 * SEED_BYTES))
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepsArg {
    /// ρ1..ρ5.
    #[default]
    Full,
    /// ρ1..ρ3.
    ShuffleOffset,
    /// Unmasked base table.
    None,
}

impl From<StepsArg> for MaskingSteps {
    fn from(s: StepsArg) -> Self {
        match s {
            StepsArg::Full => MaskingSteps::FULL,
            StepsArg::ShuffleOffset => MaskingSteps::SHUFFLE_AND_OFFSET,
            StepsArg::None => MaskingSteps::NONE,
        }
    }
}

#[derive(Args, Debug)]
pub struct KeygenArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// 32 hex characters; random when absent.
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<Seed>,
    #[arg(long, default_value = "pk.bin")]
    pub pk: PathBuf,
    #[arg(long, default_value = "sk.bin")]
    pub sk: PathBuf,
    /// One secret table shared by all message positions.
    #[arg(long)]
    pub shared: bool,
    /// Masking applied to the secret tables.
    #[arg(long, value_enum, default_value_t)]
    pub steps: StepsArg,
}

impl KeygenArgs {
    pub fn mode(&self) -> SecretMode {
        if self.shared {
            SecretMode::Shared
        } else {
            SecretMode::Independent
        }
    }
}

#[derive(Args, Debug)]
pub struct EncryptArgs {
    #[arg(long)]
    pub pk: PathBuf,
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
    /// Encrypt any length as independent blocks behind a length prefix.
    #[arg(long, conflicts_with = "inject_tail")]
    pub multi: bool,
    /// Packed tail words in hex, used instead of the derived tail.
    #[arg(long, value_name = "HEX")]
    pub inject_tail: Option<String>,
}

#[derive(Args, Debug)]
pub struct DecryptArgs {
    #[arg(long)]
    pub sk: PathBuf,
    /// Required with --checked.
    #[arg(long)]
    pub pk: Option<PathBuf>,
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
    /// Re-encrypt with the derived tail and reject on mismatch.
    #[arg(long, requires = "pk")]
    pub checked: bool,
    #[arg(long)]
    pub multi: bool,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Flip one word of the named embedded table before checking.
    #[arg(long, hide = true, value_name = "TABLE")]
    pub corrupt_vector: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RowSet {
    /// Rows of the general cost table.
    Table2,
    /// Rows of the ciphertext and secrecy table.
    Table3,
    /// The three named presets.
    Presets,
    #[default]
    All,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// A single row instead of a row set.
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t)]
    pub rows: RowSet,
    /// Timed batches per row; the median is reported.
    #[arg(long, default_value_t = 15)]
    pub samples: usize,
    /// Messages per timed batch.
    #[arg(long, default_value_t = 64)]
    pub batch: usize,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct AttackArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: u8,
    /// Defaults: m=2 k=3 l=2 q=2 for attacks 1-3; the worked example geometry
    /// m=6 k=12 l=6 q=2 for attack 4.
    #[command(flatten)]
    pub params: ParamArgs,
    /// 32 hex characters. Without it attack 4 on the worked example geometry
    /// uses the embedded instance; other runs draw a random seed.
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<Seed>,
    /// Attack 4: use the true τ̂ instead of a random guess.
    #[arg(long)]
    pub with_true_tauhat: bool,
    /// Attack 4: number of tail batches; defaults to q − 1.
    #[arg(long)]
    pub batches: Option<usize>,
    /// Attack 2: use the same input twice.
    #[arg(long)]
    pub identical: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    /// All presets when absent.
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub csv: bool,
}
