//! Shannon and Tsallis entropies, the q-logarithm, relative and conditional
//! entropies, and the non-additivity correction term.
//!
//! Everything is in nats. Terms with vanishing probability contribute their
//! limit value 0 to every sum, which keeps all criteria finite.

use crate::error::{Error, Result};
use crate::measure::JointDistribution;

/// A discrete probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Validates entries >= 0 (tiny negatives down to -1e-12 are clamped)
    /// and normalization within 1e-10.
    pub fn new(p: Vec<f64>) -> Result<Self> {
        let mut p = p;
        for x in &mut p {
            if *x < 0.0 {
                if *x < -1e-12 {
                    return Err(Error::InvalidParameter(format!("negative probability {x}")));
                }
                *x = 0.0;
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self(p))
    }

    /// Uniform distribution over n outcomes.
    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl std::ops::Deref for ProbVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// x^e, routed through `powi` when e is a small integer so that the common
/// exponents (q = 2 gives e = -1, 2) are correctly rounded.
#[inline]
pub(crate) fn powq(x: f64, e: f64) -> f64 {
    if e == e.round() && e.abs() <= 32.0 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// The q-logarithm ln_q(x) = (x^(1-q) - 1)/(1 - q); natural log at q = 1.
pub fn ln_q(x: f64, q: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "ln_q requires a positive argument, got {x}"
        )));
    }
    if q == 1.0 {
        Ok(x.ln())
    } else {
        Ok((powq(x, 1.0 - q) - 1.0) / (1.0 - q))
    }
}

/// Shannon entropy S(P) = -sum_i p_i ln(p_i), with 0 ln 0 := 0.
pub fn shannon(p: &ProbVector) -> f64 {
    shannon_raw(p)
}

fn shannon_raw(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Tsallis entropy S_q(P) = -sum_i p_i^q ln_q(p_i) = (1 - sum_i p_i^q)/(q - 1),
/// converging to the Shannon entropy as q -> 1.
pub fn tsallis(p: &ProbVector, q: f64) -> f64 {
    tsallis_raw(p, q)
}

fn tsallis_raw(p: &[f64], q: f64) -> f64 {
    assert!(q > 0.0, "Tsallis entropy needs q > 0");
    if q == 1.0 {
        return shannon_raw(p);
    }
    let sum_pq: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| powq(x, q)).sum();
    (1.0 - sum_pq) / (q - 1.0)
}

/// Generalized relative entropy D_q(P||R) = -sum_i p_i ln_q(r_i / p_i).
///
/// Reduces to the Kullback-Leibler divergence at q = 1. Errors when the
/// reference R vanishes on the support of P.
pub fn relative_entropy_q(p: &ProbVector, r: &ProbVector, q: f64) -> Result<f64> {
    assert!(q >= 1.0, "relative entropy supported for q >= 1");
    if p.len() != r.len() {
        return Err(Error::DimensionMismatch(format!(
            "distributions of length {} vs {}",
            p.len(),
            r.len()
        )));
    }
    let mut acc = 0.0;
    for (i, (&pi, &ri)) in p.iter().zip(r.iter()).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if ri <= 0.0 {
            return Err(Error::SupportViolation { index: i, p: pi });
        }
        acc -= pi * ln_q(ri / pi, q).expect("ratio is positive");
    }
    Ok(acc)
}

/// Conditional Tsallis entropy S_q(B|A) = S_q(A,B) - S_q(A), where A indexes
/// the rows of the joint table.
pub fn conditional_tsallis(joint: &JointDistribution, q: f64) -> f64 {
    assert!(q >= 1.0, "conditional entropy supported for q >= 1");
    if q == 1.0 {
        return shannon_raw(joint.probabilities()) - shannon_raw(&joint.row_marginals());
    }
    let sum_joint: f64 = joint
        .probabilities()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| powq(x, q))
        .sum();
    let sum_marg: f64 = joint
        .row_marginals()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| powq(x, q))
        .sum();
    (sum_marg - sum_joint) / (q - 1.0)
}

/// The correction term
/// C(A,B) = sum_i p_i^q [ln_q p_i]^2 - sum_ij p_ij^q ln_q(p_i) ln_q(p_ij)
/// that restores the steering bound for non-additive entropies.
///
/// Terms with p_ij = 0 take their limit value 0; rows with p_i = 0 have no
/// nonzero entries and drop out entirely.
pub fn correction_term(joint: &JointDistribution, q: f64) -> f64 {
    let marg = joint.row_marginals();
    let mut single = 0.0;
    let mut cross = 0.0;
    for (i, &pi) in marg.iter().enumerate() {
        if pi <= 0.0 {
            continue;
        }
        let lq_pi = ln_q(pi, q).expect("marginal is positive");
        single += powq(pi, q) * lq_pi * lq_pi;
        for j in 0..joint.n_b() {
            let pij = joint.prob(i, j);
            if pij <= 0.0 {
                continue;
            }
            let lq_pij = ln_q(pij, q).expect("entry is positive");
            cross += powq(pij, q) * lq_pi * lq_pij;
        }
    }
    single - cross
}
