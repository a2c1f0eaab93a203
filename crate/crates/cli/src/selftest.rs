use std::fmt::Write;
use std::time::Instant;

use line_core::vectors::{Vectors, M, TABLE_NAMES};
use line_core::Word;

use crate::args::SelftestArgs;
use crate::CliError;

/// Forward and inverse evaluation of the masked worked-example table on one
/// word, plus bijectivity over all inputs.
fn cross_check(v: &Vectors) -> Result<(), String> {
    let sub = v.secret().map_err(|e| e.to_string())?;
    let x = Word::from_bits("001011", M).expect("literal");
    let z = Word::from_bits("110110", M).expect("literal");
    let got = sub.masked().eval(x);
    if got != z {
        return Err(format!(
            "beta(001011) = {}, expected 110110",
            got.to_bits(M)
        ));
    }
    if sub.eval_inverse(z) != x {
        return Err("beta^-1(110110) != 001011".into());
    }
    let mut seen = vec![false; 1 << M];
    for r in 0..1u64 << M {
        let out = sub.masked().eval(Word(r)).0 as usize;
        if std::mem::replace(&mut seen[out], true) {
            return Err(format!("beta is not injective: repeated output {out}"));
        }
    }
    Ok(())
}

/// Returns the report and whether every check passed.
pub fn run(a: &SelftestArgs) -> Result<(String, bool), CliError> {
    let start = Instant::now();
    let mut v = Vectors::embedded();
    if let Some(table) = &a.corrupt_vector {
        if !v.corrupt(table) {
            return Err(CliError::Usage(format!(
                "unknown table {table:?}, expected one of {}",
                TABLE_NAMES.join(", ")
            )));
        }
    }
    let mut text = String::new();
    let mut passed = true;
    let mut words = 0;
    for check in v.check() {
        words += check.words;
        let status = if check.passed() { "ok" } else { "FAIL" };
        let _ = writeln!(
            text,
            "table {}: {} words {}",
            check.table, check.words, status
        );
        for m in &check.mismatches {
            let _ = writeln!(text, "  {m}");
        }
        passed &= check.passed();
    }
    match cross_check(&v) {
        Ok(()) => {
            text.push_str("cross-check beta(001011)=110110, inverse, 64-word bijection: ok\n")
        }
        Err(e) => {
            let _ = writeln!(text, "cross-check: FAIL {e}");
            passed = false;
        }
    }
    let _ = writeln!(
        text,
        "words={words} elapsed_us={}",
        start.elapsed().as_micros()
    );
    let tables = TABLE_NAMES.join(", ");
    if passed {
        let _ = writeln!(text, "SELFTEST PASS (tables: {tables})");
    } else {
        let _ = writeln!(text, "SELFTEST FAIL (tables: {tables})");
    }
    Ok((text, passed))
}
