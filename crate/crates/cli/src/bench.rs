//! Size formulas per parameter row and measured encryption/decryption cost.

use std::fmt::Write;
use std::hint::black_box;
use std::time::Instant;

use line_core::attacks::{complexity_estimates, Estimates};
use line_core::gf2::DetRandom;
use line_core::pke::{decrypt, encrypt, keygen};
use line_core::{Message, ParamSet, Word};

use crate::args::{BenchArgs, ParamsArgs, RowSet};
use crate::CliError;

const fn row(m: usize, l: usize, k: usize, q: usize) -> ParamSet {
    ParamSet { m, k, l, q }
}

/// Rows of the general-parameter cost table, as `(m, l, k, q)`.
pub const TABLE2_ROWS: [ParamSet; 11] = [
    row(8, 16, 32, 2),
    row(8, 16, 32, 3),
    row(8, 16, 32, 4),
    row(8, 32, 48, 2),
    row(8, 32, 64, 2),
    row(16, 8, 16, 2),
    row(16, 12, 24, 2),
    row(16, 16, 32, 2),
    row(16, 16, 32, 3),
    row(16, 32, 48, 3),
    row(32, 16, 32, 2),
];

/// Rows of the ciphertext, secrecy and timing table.
pub const TABLE3_ROWS: [ParamSet; 8] = [
    row(8, 16, 32, 2),
    row(8, 16, 32, 3),
    row(8, 32, 64, 2),
    row(16, 8, 16, 2),
    row(16, 12, 24, 2),
    row(16, 16, 32, 2),
    row(16, 16, 32, 3),
    row(16, 32, 48, 3),
];

const BENCH_SEED: [u8; 16] = *b"line-bench-seed!";

/// Per-ciphertext wall time in nanoseconds, median and minimum over samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub enc_median_ns: f64,
    pub enc_min_ns: f64,
    pub dec_median_ns: f64,
    pub dec_min_ns: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Times `samples` batches of `batch` encryptions (tail derivation included)
/// and decryptions under one seeded key pair. One untimed batch warms up.
pub fn measure(p: ParamSet, samples: usize, batch: usize) -> line_core::Result<Timing> {
    let samples = samples.max(1);
    let batch = batch.max(1);
    let (pk, sk) = keygen(p, &BENCH_SEED)?;
    let mut s = DetRandom::new(BENCH_SEED, b"bench/messages").stream();
    let msgs: Vec<Message> = (0..batch)
        .map(|_| Message::new((0..p.l).map(|_| s.next_word(p.m)).collect::<Vec<Word>>()))
        .collect();
    let cts = msgs
        .iter()
        .map(|m| encrypt(&pk, m))
        .collect::<line_core::Result<Vec<_>>>()?;
    let time = |f: &dyn Fn()| -> Vec<f64> {
        f();
        (0..samples)
            .map(|_| {
                let t = Instant::now();
                f();
                t.elapsed().as_nanos() as f64 / batch as f64
            })
            .collect()
    };
    let enc = time(&|| {
        for m in &msgs {
            black_box(encrypt(&pk, black_box(m)).expect("valid message"));
        }
    });
    let dec = time(&|| {
        for c in &cts {
            black_box(decrypt(&sk, black_box(c)).expect("matching key"));
        }
    });
    Ok(Timing {
        enc_median_ns: median(enc.clone()),
        enc_min_ns: min(&enc),
        dec_median_ns: median(dec.clone()),
        dec_min_ns: min(&dec),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub estimates: Estimates,
    pub timing: Timing,
}

impl BenchRow {
    pub fn params(&self) -> ParamSet {
        self.estimates.params
    }

    /// Encryption time per ciphertext bit (`qlm`).
    pub fn enc_ns_per_bit(&self) -> f64 {
        self.timing.enc_median_ns / self.estimates.n_u as f64
    }

    /// Decryption time per bit of `min(s_T, s_σ)`.
    pub fn dec_ns_per_bit(&self) -> f64 {
        self.timing.dec_median_ns / self.estimates.min_secrecy() as f64
    }

    pub const CSV_HEADER: &'static str = "m,l,k,q,n_beta,n_f,n_w,n_t,n_u,s_T,s_sigma,\
        enc_median_ns,enc_min_ns,dec_median_ns,dec_min_ns,enc_ns_per_bit,dec_ns_per_bit";

    pub fn csv_row(&self) -> String {
        let e = &self.estimates;
        let p = e.params;
        let t = &self.timing;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.1},{:.1},{:.1},{:.1},{:.4},{:.4}",
            p.m,
            p.l,
            p.k,
            p.q,
            e.n_beta,
            e.n_f,
            e.n_w,
            e.n_t,
            e.n_u,
            e.s_t_cipher,
            e.s_sigma,
            t.enc_median_ns,
            t.enc_min_ns,
            t.dec_median_ns,
            t.dec_min_ns,
            self.enc_ns_per_bit(),
            self.dec_ns_per_bit()
        )
    }

    fn text_row(&self) -> String {
        let e = &self.estimates;
        let p = e.params;
        format!(
            "{:>3} {:>6} {:>2} {:>7} {:>6} {:>5} {:>4} {:>5} {:>4} {:>7} {:>9.2} {:>10.3} {:>9.2} {:>10.3}",
            p.m,
            format!("{}x{}", p.l, p.k),
            p.q,
            e.n_beta,
            e.n_f,
            e.n_w,
            e.n_t,
            e.n_u,
            e.s_t_cipher,
            e.s_sigma,
            self.timing.enc_median_ns / 1e3,
            self.enc_ns_per_bit(),
            self.timing.dec_median_ns / 1e3,
            self.dec_ns_per_bit()
        )
    }
}

const TEXT_HEADER: &str = "  m    lxk  q  n_beta    n_f   n_w  n_t   n_u  s_T s_sigma    enc_us enc_ns/bit    dec_us dec_ns/bit";

pub fn bench_row(p: ParamSet, samples: usize, batch: usize) -> line_core::Result<BenchRow> {
    Ok(BenchRow {
        estimates: complexity_estimates(p),
        timing: measure(p, samples, batch)?,
    })
}

/// Presets ordered by `q·k·l·m` with their median encryption time.
#[derive(Clone, Debug, PartialEq)]
pub struct Monotonic {
    pub order: Vec<(ParamSet, usize, f64)>,
}

impl Monotonic {
    pub fn new(rows: &[(ParamSet, Timing)]) -> Self {
        let mut order: Vec<(ParamSet, usize, f64)> = rows
            .iter()
            .map(|(p, t)| (*p, p.q * p.k * p.l * p.m, t.enc_median_ns))
            .collect();
        order.sort_by_key(|&(_, w, _)| w);
        Monotonic { order }
    }

    /// Strictly larger `q·k·l·m` takes strictly longer to encrypt.
    pub fn holds(&self) -> bool {
        self.order
            .windows(2)
            .all(|w| w[0].1 == w[1].1 || w[0].2 < w[1].2)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .order
            .iter()
            .map(|(p, w, ns)| {
                let name = p
                    .preset_name()
                    .map_or_else(|| p.to_string(), str::to_string);
                format!("{name}(qklm={w}, enc_us={:.2})", ns / 1e3)
            })
            .collect();
        format!(
            "monotonic_encrypt={} order: {}\n",
            if self.holds() { "pass" } else { "FAIL" },
            parts.join(" < ")
        )
    }
}

fn unique_rows(set: RowSet) -> Vec<ParamSet> {
    let presets = ParamSet::PRESETS.map(|(_, p)| p);
    let mut rows: Vec<ParamSet> = match set {
        RowSet::Table2 => TABLE2_ROWS.to_vec(),
        RowSet::Table3 => TABLE3_ROWS.to_vec(),
        RowSet::Presets => presets.to_vec(),
        RowSet::All => TABLE2_ROWS
            .iter()
            .chain(&TABLE3_ROWS)
            .chain(&presets)
            .copied()
            .collect(),
    };
    let mut seen = Vec::new();
    rows.retain(|p| {
        let fresh = !seen.contains(p);
        seen.push(*p);
        fresh
    });
    rows
}

/// The report, and an error when the monotonic check ran and failed.
pub fn command(a: &BenchArgs) -> Result<(String, Result<(), CliError>), CliError> {
    let rows = if a.params.is_empty() {
        unique_rows(a.rows)
    } else {
        vec![a.params.resolve(None)?]
    };
    let mut text = String::new();
    text.push_str(if a.csv {
        BenchRow::CSV_HEADER
    } else {
        TEXT_HEADER
    });
    text.push('\n');
    let mut preset_timings = Vec::new();
    for p in rows {
        let r = bench_row(p, a.samples, a.batch)?;
        text.push_str(&if a.csv { r.csv_row() } else { r.text_row() });
        text.push('\n');
        if p.preset_name().is_some() {
            preset_timings.push((p, r.timing));
        }
    }
    let mut verdict = Ok(());
    if preset_timings.len() == ParamSet::PRESETS.len() {
        let mono = Monotonic::new(&preset_timings);
        if !a.csv {
            text.push_str(&mono.to_text());
        }
        if !mono.holds() {
            verdict = Err(CliError::Failed(
                "bench: encryption time is not monotonic in q·k·l·m across presets".into(),
            ));
        }
    }
    Ok((text, verdict))
}

const PARAMS_CSV_HEADER: &str = "m,k,l,q,n_a,n_beta,n_f,n_w,n_t,n_u,pk_payload_bytes,\
    sk_core_bytes,ct_bytes,s_T,s_sigma,s_t,s_beta,n3_words,n3_factorial";

fn params_csv(e: &Estimates) -> String {
    let p = e.params;
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3},{:.3},{:.3}",
        p.m,
        p.k,
        p.l,
        p.q,
        e.n_a,
        e.n_beta,
        e.n_f,
        e.n_w,
        e.n_t,
        e.n_u,
        p.public_key_payload_bytes(),
        p.secret_core_bytes(p.l),
        p.ciphertext_bytes(),
        e.s_t_cipher,
        e.s_sigma,
        e.s_t_key,
        e.s_beta,
        e.n3_words,
        e.n3_factorial
    )
}

pub fn params_command(a: &ParamsArgs) -> Result<String, CliError> {
    let sets: Vec<ParamSet> = if a.params.is_empty() {
        ParamSet::PRESETS.iter().map(|&(_, p)| p).collect()
    } else {
        vec![a.params.resolve(None)?]
    };
    let mut text = String::new();
    if a.csv {
        let _ = writeln!(text, "{PARAMS_CSV_HEADER}");
    }
    for p in sets {
        let e = complexity_estimates(p);
        if a.csv {
            let _ = writeln!(text, "{}", params_csv(&e));
            continue;
        }
        let header: Vec<&str> = PARAMS_CSV_HEADER.split(',').collect();
        let row = params_csv(&e);
        let _ = writeln!(text, "[{p}]");
        for (k, v) in header.iter().zip(row.split(',')) {
            let _ = writeln!(text, "{k}={v}");
        }
    }
    Ok(text)
}
