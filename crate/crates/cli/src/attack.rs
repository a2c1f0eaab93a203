use std::time::Instant;

use line_core::attacks::{
    attack1_tail_bruteforce, attack2_omega_enum, attack3_t_enum, attack4_analytic,
};
use line_core::gf2::{BitStream, DetRandom, Seed};
use line_core::pke::{encrypt, keygen, keygen_from_parts, seeded_parts, KeygenOptions};
use line_core::sharing::TauHat;
use line_core::vectors::{appendix_params, Vectors};
use line_core::{Message, ParamSet, Word};

use crate::args::AttackArgs;
use crate::CliError;

const SMALL: ParamSet = ParamSet {
    m: 2,
    k: 3,
    l: 2,
    q: 2,
};

fn words(s: &mut BitStream, n: usize, m: usize) -> Vec<Word> {
    (0..n).map(|_| s.next_word(m)).collect()
}

/// `key=value` lines into a two-line CSV.
fn text_to_csv(text: &str) -> String {
    let (keys, values): (Vec<&str>, Vec<&str>) =
        text.lines().filter_map(|line| line.split_once('=')).unzip();
    format!("{}\n{}\n", keys.join(","), values.join(","))
}

pub fn run(a: &AttackArgs) -> Result<String, CliError> {
    let defaults = if a.id == 4 { appendix_params() } else { SMALL };
    let p = a.params.resolve(Some(defaults))?;
    let embedded = a.id == 4 && a.seed.is_none() && p == appendix_params();
    let seed: Seed = a.seed.unwrap_or_else(rand::random);
    let mut s = DetRandom::new(seed, b"line/attack-inputs").stream();
    let instance = if embedded {
        "embedded".to_string()
    } else {
        hex::encode(seed)
    };
    let mut text = match a.id {
        1 => {
            let (pk, _) = keygen(p, &seed)?;
            let msg = Message::new(words(&mut s, p.l, p.m));
            let ct = encrypt(&pk, &msg)?;
            attack1_tail_bruteforce(&pk, &ct, Some(&msg))?.to_text()
        }
        2 => {
            let (pk, sk) = keygen(p, &seed)?;
            let x1 = words(&mut s, p.k, p.m);
            let x2 = if a.identical {
                x1.clone()
            } else {
                words(&mut s, p.k, p.m)
            };
            attack2_omega_enum(&pk, &x1, &x2, Some(sk.omegas()))?.to_text()
        }
        3 => {
            let (pk, sk) = keygen(p, &seed)?;
            let head = words(&mut s, p.l, p.m);
            let ct = encrypt(&pk, &Message::new(head.clone()))?;
            attack3_t_enum(&pk, &sk, &ct, &head, Some(sk.t_a()))?.to_text()
        }
        _ => attack4(a, p, embedded, &seed, &mut s)?,
    };
    text.push_str(&format!("instance={instance}\n"));
    Ok(if a.csv { text_to_csv(&text) } else { text })
}

fn attack4(
    a: &AttackArgs,
    p: ParamSet,
    embedded: bool,
    seed: &Seed,
    s: &mut BitStream,
) -> Result<String, CliError> {
    let start = Instant::now();
    let (pk, omegas, true_hats, batches) = if embedded {
        let v = Vectors::embedded();
        let (pk, _) = keygen_from_parts(p, v.key_parts()?)?;
        let mut batches = vec![v.x[p.l..].to_vec()];
        for _ in 1..a.batches.unwrap_or(1).max(1) {
            batches.push(words(s, p.k - p.l, p.m));
        }
        (pk, v.omegas()?, v.tau_hat.clone(), batches)
    } else {
        let (_, parts) = seeded_parts(p, seed, KeygenOptions::default())?;
        let hats = TauHat::compute(&parts.taus, &parts.a, &parts.omegas)?.hats;
        let omegas = parts.omegas.clone();
        let (pk, _) = keygen_from_parts(p, parts)?;
        let n = a.batches.unwrap_or(p.q - 1).max(1);
        let batches = (0..n).map(|_| words(s, p.k - p.l, p.m)).collect();
        (pk, omegas, hats, batches)
    };
    let hats = if a.with_true_tauhat {
        true_hats
    } else {
        (0..p.q).map(|_| words(s, p.k, p.m)).collect()
    };
    let report = attack4_analytic(&pk, &batches, &hats, Some(&omegas))?;
    Ok(format!(
        "{}tau_hat={}\nbatches={}\nelapsed_us={}\n",
        report.to_text(),
        if a.with_true_tauhat { "true" } else { "guess" },
        batches.len(),
        start.elapsed().as_micros()
    ))
}
