//! Desk-scale versions of the four attacks and the closed-form estimates.
//!
//! The enumerating attacks refuse search spaces above fixed caps; they
//! demonstrate the counting claims on toy parameters, nothing more.

mod analytic;
mod enumerate;
mod estimates;

use std::fmt::Write as _;
use std::time::Duration;

pub use analytic::{attack4_analytic, Attack4Report, ColumnSolution};
pub use enumerate::{
    attack1_components, attack1_tail_bruteforce, attack2_omega_enum, attack3_t_enum,
};
pub use estimates::{complexity_estimates, log2_factorial, Estimates};

use crate::{Error, Result};

/// Largest `(k−l)m` attack 1 will enumerate.
pub const ATTACK1_CAP: usize = 24;
/// Largest `(q−1)m²` attack 2 will enumerate.
pub const ATTACK2_CAP: usize = 24;
/// Largest `lm` attack 3 will enumerate.
pub const ATTACK3_CAP: usize = 20;
/// Largest `m` for which attacks 1 and 3 tabulate full substitution images.
pub const TABULATE_CAP: usize = 16;

pub(crate) fn check_cap(exponent: usize, cap: usize) -> Result<()> {
    if exponent > cap {
        Err(Error::CapExceeded { exponent, cap })
    } else {
        Ok(())
    }
}

/// Result of one enumerating attack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackReport {
    pub attack: u8,
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub q: usize,
    /// log₂ of the search space.
    pub exponent: usize,
    pub examined: u64,
    pub survivors: u64,
    /// `None` without ground truth; otherwise whether the truth survived.
    pub truth: Option<bool>,
    pub elapsed: Duration,
    /// Attack-specific values, printed after the common fields.
    pub extra: Vec<(String, String)>,
}

impl AttackReport {
    fn truth_label(&self) -> &'static str {
        match self.truth {
            None => "unknown",
            Some(true) => "found",
            Some(false) => "missed",
        }
    }

    fn fields(&self) -> Vec<(String, String)> {
        let mut f: Vec<(String, String)> = [
            ("attack", self.attack.to_string()),
            ("m", self.m.to_string()),
            ("k", self.k.to_string()),
            ("l", self.l.to_string()),
            ("q", self.q.to_string()),
            ("exponent", self.exponent.to_string()),
            ("examined", self.examined.to_string()),
            ("survivors", self.survivors.to_string()),
            ("truth", self.truth_label().to_string()),
            ("elapsed_us", self.elapsed.as_micros().to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        f.extend(self.extra.iter().cloned());
        f
    }

    /// One `key=value` pair per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    pub fn csv_header(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(k, _)| k)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn csv_row(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(_, v)| v)
            .collect::<Vec<_>>()
            .join(",")
    }
}
