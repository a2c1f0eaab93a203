use crate::gf2::{BitMatrix, BitVec, Word};
use crate::pke::PublicKey;
use crate::sharing::OmegaSet;
use crate::{Error, Result};

/// Affine solution set for column `n` of `ω_2..ω_q`, stacked: bit
/// `(j−2)·m + p` of a solution is entry `(p, n)` of `ω_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSolution {
    pub particular: BitVec,
    pub kernel: Vec<BitVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attack4Report {
    pub q: usize,
    pub m: usize,
    pub equations: usize,
    pub unknowns: usize,
    /// `None` for a column whose system is inconsistent.
    pub columns: Vec<Option<ColumnSolution>>,
    /// Whether the supplied true `ω` satisfies every equation.
    pub truth_in_set: Option<bool>,
    /// Number of equations violated by all solutions checked: the particular
    /// solution and each particular + kernel vector. Zero for a correct solve.
    pub residual: usize,
}

impl Attack4Report {
    pub fn consistent(&self) -> bool {
        self.columns.iter().all(Option::is_some)
    }

    /// Dimension of the solution space per column (minimum over columns).
    pub fn solution_dimension(&self) -> Option<usize> {
        self.columns
            .iter()
            .map(|c| c.as_ref().map(|s| s.kernel.len()))
            .min()
            .flatten()
    }

    pub fn to_text(&self) -> String {
        let dims: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                c.as_ref()
                    .map_or("none".into(), |s| s.kernel.len().to_string())
            })
            .collect();
        let truth = match self.truth_in_set {
            None => "unknown",
            Some(true) => "found",
            Some(false) => "missed",
        };
        format!(
            "attack=4\nq={}\nm={}\nequations={}\nunknowns={}\nconsistent={}\nkernel_dims={}\nresidual={}\ntruth={}\n",
            self.q,
            self.m,
            self.equations,
            self.unknowns,
            self.consistent(),
            dims.join(" "),
            self.residual,
            truth
        )
    }
}

/// Per column `n`, solve `Σ_j (β'_{ji}(x_i) + τ̂_{ji}) ω_j[·, n] = 0` for
/// every trailing position `i` and every batch of trailing inputs, with
/// `ω_1 = I` moved to the right-hand side.
///
/// `batches[b]` holds `x_{l+1}..x_k`; `tau_hat[j][i]` covers all `k` positions.
pub fn attack4_analytic(
    pk: &PublicKey,
    batches: &[Vec<Word>],
    tau_hat: &[Vec<Word>],
    truth: Option<&OmegaSet>,
) -> Result<Attack4Report> {
    let p = pk.params();
    let (m, k, l, q) = (p.m, p.k, p.l, p.q);
    if !(2..=3).contains(&q) {
        return Err(Error::Unsupported(format!(
            "attack 4 covers q = 2 or 3, got {q}"
        )));
    }
    if batches.is_empty() || batches.iter().any(|b| b.len() != k - l) {
        return Err(Error::Dimension {
            op: "attack4 batches",
            expected: k - l,
            found: batches.first().map_or(0, Vec::len),
        });
    }
    if tau_hat.len() != q || tau_hat.iter().any(|t| t.len() != k) {
        return Err(Error::Dimension {
            op: "attack4 tau_hat",
            expected: q * k,
            found: tau_hat.iter().map(Vec::len).sum(),
        });
    }
    let unknowns = (q - 1) * m;
    // v[e][j] = β'_{ji}(x_i) + τ̂_{ji} for equation e.
    let v: Vec<Vec<Word>> = batches
        .iter()
        .flat_map(|b| {
            (l..k).map(move |i| {
                (0..q)
                    .map(|j| pk.table(j, i).eval(b[i - l]) ^ tau_hat[j][i])
                    .collect::<Vec<Word>>()
            })
        })
        .collect();
    let equations = v.len();
    let mut coeff = BitMatrix::zeros(equations, unknowns);
    for (e, row) in v.iter().enumerate() {
        for j in 1..q {
            for bit in 0..m {
                if row[j].bit(bit) {
                    coeff.set(e, (j - 1) * m + bit, true);
                }
            }
        }
    }
    let rhs_for = |n: usize| {
        let mut r = BitVec::zeros(equations);
        for (e, row) in v.iter().enumerate() {
            r.set(e, row[0].bit(n));
        }
        r
    };
    let violated = |x: &BitVec, n: usize| -> usize {
        let lhs = coeff.transpose().vec_mul(x).expect("shape");
        let mut diff = lhs;
        diff.xor_assign(&rhs_for(n));
        diff.count_ones()
    };

    let ct = coeff.transpose();
    let mut columns = Vec::with_capacity(m);
    let mut residual = 0;
    for n in 0..m {
        let sol = ct.solve_left(&rhs_for(n))?;
        if let Some((x, kernel)) = &sol {
            residual += violated(x, n);
            for z in kernel {
                let mut y = x.clone();
                y.xor_assign(z);
                residual += violated(&y, n);
            }
        }
        columns.push(sol.map(|(particular, kernel)| ColumnSolution { particular, kernel }));
    }
    let truth_in_set = truth.map(|om| {
        (0..m).all(|n| {
            let mut x = BitVec::zeros(unknowns);
            for (j, w) in om.secret().iter().enumerate() {
                for row in 0..m {
                    x.set(j * m + row, w.get(row, n));
                }
            }
            violated(&x, n) == 0
        })
    });
    Ok(Attack4Report {
        q,
        m,
        equations,
        unknowns,
        columns,
        truth_in_set,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pke::{keygen, keygen_from_parts, seeded_parts, ParamSet};
    use crate::sharing::TauHat;
    use crate::vectors::Vectors;

    #[test]
    fn appendix_instance_with_true_tau_hat() {
        let v = Vectors::embedded();
        let (pk, _) =
            keygen_from_parts(crate::vectors::appendix_params(), v.key_parts().unwrap()).unwrap();
        let omegas = v.omegas().unwrap();
        let r = attack4_analytic(&pk, &[v.x[6..].to_vec()], &v.tau_hat, Some(&omegas)).unwrap();
        assert_eq!((r.equations, r.unknowns), (6, 6));
        assert!(r.consistent());
        assert_eq!(r.residual, 0);
        assert_eq!(r.truth_in_set, Some(true));
    }

    #[test]
    fn underdetermined_rank_bound() {
        // k − l = 2 < m = 6: every column keeps at least 4 free dimensions.
        let p = ParamSet::new(6, 8, 6, 2).unwrap();
        let (pk, sk) = keygen(p, &[3; 16]).unwrap();
        let hats = hats_for(p, 3);
        let r = attack4_analytic(&pk, &[vec![Word(1), Word(2)]], &hats, Some(sk.omegas())).unwrap();
        assert!(r.solution_dimension().unwrap() >= 4);
        assert_eq!(r.truth_in_set, Some(true));
        assert_eq!(r.residual, 0);
    }

    fn hats_for(p: ParamSet, seed: u8) -> Vec<Vec<Word>> {
        let (_, parts) = seeded_parts(p, &[seed; 16], Default::default()).unwrap();
        TauHat::compute(&parts.taus, &parts.a, &parts.omegas)
            .unwrap()
            .hats
    }

    #[test]
    fn three_shares_with_two_batches() {
        let p = ParamSet::new(2, 4, 2, 3).unwrap();
        let (pk, sk) = keygen(p, &[4; 16]).unwrap();
        let hats = hats_for(p, 4);
        let batches = vec![vec![Word(0), Word(1)], vec![Word(3), Word(2)]];
        let r = attack4_analytic(&pk, &batches, &hats, Some(sk.omegas())).unwrap();
        assert_eq!((r.equations, r.unknowns), (4, 4));
        assert_eq!(r.truth_in_set, Some(true));
        assert_eq!(r.residual, 0);
    }

    #[test]
    fn wrong_guess_is_reported_not_asserted() {
        let v = Vectors::embedded();
        let (pk, _) =
            keygen_from_parts(crate::vectors::appendix_params(), v.key_parts().unwrap()).unwrap();
        let mut wrong = v.tau_hat.clone();
        wrong[1][7].0 ^= 1;
        let r = attack4_analytic(
            &pk,
            &[v.x[6..].to_vec()],
            &wrong,
            Some(&v.omegas().unwrap()),
        )
        .unwrap();
        assert_eq!(r.truth_in_set, Some(false));
        assert_eq!(r.residual, 0);
    }

    #[test]
    fn unsupported_share_count() {
        let p = ParamSet::new(2, 3, 2, 4).unwrap();
        let (pk, _) = keygen(p, &[5; 16]).unwrap();
        assert!(matches!(
            attack4_analytic(&pk, &[vec![Word(0)]], &vec![vec![Word(0); 3]; 4], None),
            Err(Error::Unsupported(_))
        ));
    }
}
