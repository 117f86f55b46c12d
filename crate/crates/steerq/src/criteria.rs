//! Steering and separability criteria, together with the entropic
//! uncertainty bounds they are compared against.
//!
//! Every criterion here has the same logical shape: local-hidden-state models
//! force the left-hand side to stay at or above a state-independent bound, so
//! `lhs < bound` certifies steerability. Violation is flagged only beyond a
//! 1e-12 margin, keeping exact boundary states on the non-violating side.

use serde::{Deserialize, Serialize};

use crate::entropy::{self, powq};
use crate::error::{Error, Result};
use crate::measure::JointDistribution;
use crate::states::BlochForm;
use crate::VIOLATION_TOL;

/// Outcome of one criterion evaluation. `margin` is the violation margin:
/// positive means violated, with the same 1e-12 tolerance as `violated`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub lhs: f64,
    pub bound: f64,
    pub violated: bool,
    pub margin: f64,
    /// Set when Alice's marginal is pure and the Pauli q = 2 criterion is
    /// vacuous (the state is a product across that decomposition).
    #[serde(default)]
    pub alice_marginal_pure: bool,
}

impl CriterionResult {
    /// Criteria of the form "nonsteerable => lhs >= bound".
    pub fn from_lower_bound(lhs: f64, bound: f64) -> Self {
        Self {
            lhs,
            bound,
            violated: lhs < bound - VIOLATION_TOL,
            margin: bound - lhs,
            alice_marginal_pure: false,
        }
    }

    /// Criteria of the form "nonsteerable => lhs <= bound" (norm tests).
    pub fn from_upper_bound(lhs: f64, bound: f64) -> Self {
        Self {
            lhs,
            bound,
            violated: lhs > bound + VIOLATION_TOL,
            margin: lhs - bound,
            alice_marginal_pure: false,
        }
    }
}

/// A state-independent lower bound on sum_k S_q(B_k) for m measurement
/// bases in dimension d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyBound {
    pub value: f64,
    pub d: usize,
    pub m: usize,
    pub q: f64,
}

/// Shannon-entropy bound for a complete set of d + 1 MUBs:
/// (d+1) ln((d+1)/2) for odd d, and
/// (d/2) ln(d/2) + (d/2 + 1) ln(d/2 + 1) for even d.
pub fn bound_shannon_complete_mubs(d: usize) -> Result<UncertaintyBound> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
    }
    let df = d as f64;
    let value = if d % 2 == 1 {
        (df + 1.0) * ((df + 1.0) / 2.0).ln()
    } else {
        let h = df / 2.0;
        h * h.ln() + (h + 1.0) * (h + 1.0).ln()
    };
    Ok(UncertaintyBound {
        value,
        d,
        m: d + 1,
        q: 1.0,
    })
}

/// Tsallis bound C_B^(q) = m ln_q(m d / (d + m - 1)) for m MUBs, q in (1, 2].
///
/// Near q = 1 with even d this is weaker than the Shannon bound for complete
/// MUB sets; callers wanting q = 1 should prefer [`select_bound`].
pub fn bound_tsallis(d: usize, m: usize, q: f64) -> Result<UncertaintyBound> {
    if d < 2 || !(2..=d + 1).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "need d >= 2 and 2 <= m <= d + 1, got d = {d}, m = {m}"
        )));
    }
    if !(q > 1.0 && q <= 2.0) {
        return Err(Error::NoBound { q });
    }
    let arg = (m * d) as f64 / (d + m - 1) as f64;
    let value = m as f64 * entropy::ln_q(arg, q)?;
    Ok(UncertaintyBound { value, d, m, q })
}

/// Bound selection policy: q in (1, 2] uses the Tsallis bound; q = 1 uses
/// the Shannon complete-MUB bound when m = d + 1 and otherwise the q -> 1
/// limit m ln(m d / (d + m - 1)); other q have no known bound.
pub fn select_bound(d: usize, m: usize, q: f64) -> Result<UncertaintyBound> {
    if q == 1.0 {
        if m == d + 1 {
            return bound_shannon_complete_mubs(d);
        }
        if d < 2 || !(2..=d + 1).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "need d >= 2 and 2 <= m <= d + 1, got d = {d}, m = {m}"
            )));
        }
        let arg = (m * d) as f64 / (d + m - 1) as f64;
        return Ok(UncertaintyBound {
            value: m as f64 * arg.ln(),
            d,
            m,
            q,
        });
    }
    bound_tsallis(d, m, q)
}

fn check_q_range(q: f64) -> Result<()> {
    if q > 1.0 && q <= 2.0 {
        Ok(())
    } else {
        Err(Error::NoBound { q })
    }
}

/// Shannon steering left-hand side sum_k S(B_k|A_k), to be compared with a
/// Shannon uncertainty bound.
pub fn shannon_steering_lhs(joints: &[JointDistribution]) -> f64 {
    joints
        .iter()
        .map(|j| entropy::conditional_tsallis(j, 1.0))
        .sum()
}

/// Tsallis steering left-hand side in probability form:
/// (1/(q-1)) sum_k [1 - sum_ij (p_ij^(k))^q / (p_i^(k))^(q-1)].
/// Rows with vanishing marginal contribute 0.
pub fn tsallis_steering_lhs(joints: &[JointDistribution], q: f64) -> Result<f64> {
    check_q_range(q)?;
    let mut total = 0.0;
    for joint in joints {
        let marg = joint.row_marginals();
        let mut sum = 0.0;
        for (i, &pi) in marg.iter().enumerate() {
            if pi <= 0.0 {
                continue;
            }
            let denom = powq(pi, q - 1.0);
            for j in 0..joint.n_b() {
                let pij = joint.prob(i, j);
                if pij > 0.0 {
                    sum += powq(pij, q) / denom;
                }
            }
        }
        total += 1.0 - sum;
    }
    Ok(total / (q - 1.0))
}

/// The same left-hand side in entropy form,
/// sum_k [S_q(B_k|A_k) + (1-q) C(A_k,B_k)]; agrees with
/// [`tsallis_steering_lhs`] to within 1e-10 on any joint table.
pub fn tsallis_steering_lhs_entropy_form(joints: &[JointDistribution], q: f64) -> Result<f64> {
    check_q_range(q)?;
    Ok(joints
        .iter()
        .map(|j| entropy::conditional_tsallis(j, q) + (1.0 - q) * entropy::correction_term(j, q))
        .sum())
}

/// Closed-form Tsallis left-hand side for an isotropic state probed with m
/// MUBs: (m/(q-1)) (1 - d^-q {[1 + (d-1) alpha]^q + (d-1)(1-alpha)^q}).
pub fn isotropic_lhs_closed_form(d: usize, m: usize, q: f64, alpha: f64) -> Result<f64> {
    check_q_range(q)?;
    check_iso_params(d, m, alpha)?;
    let df = d as f64;
    let bracket = powq(1.0 + (df - 1.0) * alpha, q) + (df - 1.0) * powq(1.0 - alpha, q);
    Ok(m as f64 / (q - 1.0) * (1.0 - bracket / powq(df, q)))
}

/// Shannon (q = 1) left-hand side for an isotropic state probed with m MUBs,
/// m [S(A,B) - ln d] on the measurement-independent joint table.
pub fn isotropic_lhs_shannon(d: usize, m: usize, alpha: f64) -> Result<f64> {
    check_iso_params(d, m, alpha)?;
    let df = d as f64;
    let dd = df * df;
    let pc = (1.0 + (df - 1.0) * alpha) / dd;
    let pe = (1.0 - alpha) / dd;
    let mut s_joint = 0.0;
    if pc > 0.0 {
        s_joint -= df * pc * pc.ln();
    }
    if pe > 0.0 {
        s_joint -= df * (df - 1.0) * pe * pe.ln();
    }
    Ok(m as f64 * (s_joint - df.ln()))
}

fn check_iso_params(d: usize, m: usize, alpha: f64) -> Result<()> {
    if d < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "need d >= 2 and m >= 2, got d = {d}, m = {m}"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Pauli-measurement criterion at q = 2 for a two-qubit state in normal form:
/// sum_i [1 - a_i^2 - b_i^2 - c_i^2 + 2 a_i b_i c_i] / [2 (1 - a_i^2)] >= 1.
///
/// When some |a_i| = 1 Alice's marginal is pure, which only happens for
/// product states; those are unsteerable, so the result is reported as a
/// vacuous non-violation with `alice_marginal_pure` set instead of dividing
/// by zero.
pub fn two_qubit_pauli_q2(bloch: &BlochForm) -> CriterionResult {
    let mut lhs = 0.0;
    for i in 0..3 {
        let (a, b, c) = (bloch.a[i], bloch.b[i], bloch.c[i]);
        if a.abs() >= 1.0 - 1e-9 {
            return CriterionResult {
                lhs: 1.0,
                bound: 1.0,
                violated: false,
                margin: 0.0,
                alice_marginal_pure: true,
            };
        }
        lhs += (1.0 - a * a - b * b - c * c + 2.0 * a * b * c) / (2.0 * (1.0 - a * a));
    }
    CriterionResult::from_lower_bound(lhs, 1.0)
}

/// Canonical Pauli axes, shared by Alice and Bob.
pub const CANONICAL_AXES: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// General-axes Tsallis left-hand side for a two-qubit state in Bloch form
/// with projective measurements along unit axes u_k (Alice) and v_k (Bob):
///
///   (1/(q-1)) sum_k [1 - sum_{mu,nu} (1 + mu a.u_k + nu b.v_k + mu nu T_k)^q
///                        / (2^(q+1) (1 + mu a.u_k)^(q-1))],
///
/// where T_k = sum_i c_i u_ik v_ik. Compare against `bound_tsallis(2, 3, q)`.
/// With canonical axes and q = 2 this reduces to [`two_qubit_pauli_q2`].
pub fn two_qubit_general_lhs(
    bloch: &BlochForm,
    axes_a: &[[f64; 3]; 3],
    axes_b: &[[f64; 3]; 3],
    q: f64,
) -> Result<f64> {
    check_q_range(q)?;
    for u in axes_a.iter().chain(axes_b.iter()) {
        let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "measurement axes must be unit vectors, |u| = {norm}"
            )));
        }
    }
    let dot = |x: &[f64; 3], y: &[f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let mut total = 0.0;
    for k in 0..3 {
        let au = dot(&bloch.a, &axes_a[k]);
        let bv = dot(&bloch.b, &axes_b[k]);
        let t_k = (0..3)
            .map(|i| bloch.c[i] * axes_a[k][i] * axes_b[k][i])
            .sum::<f64>();
        let mut sum = 0.0;
        for mu in [1.0, -1.0] {
            let marginal = 1.0 + mu * au;
            if marginal <= 1e-15 {
                // Alice's outcome has zero probability: the row contributes 0.
                continue;
            }
            let denom = powq(2.0, q + 1.0) * powq(marginal, q - 1.0);
            for nu in [1.0, -1.0] {
                let p4 = (1.0 + mu * au + nu * bv + mu * nu * t_k).max(0.0);
                sum += powq(p4, q) / denom;
            }
        }
        total += 1.0 - sum;
    }
    Ok(total / (q - 1.0))
}

/// Global-observable criterion for binary (+1/-1) settings:
/// (1/(q-1)) sum_k {1 - [p(+,+) + p(-,-)]^q - [p(+,-) + p(-,+)]^q} >= C_B^(q).
/// Only 2 x 2 tables are accepted: the global-product coarse-graining is
/// defined here for +-1 observables.
pub fn separable_entropic_lhs(joints: &[JointDistribution], q: f64) -> Result<f64> {
    check_q_range(q)?;
    let mut total = 0.0;
    for joint in joints {
        if joint.n_a() != 2 || joint.n_b() != 2 {
            return Err(Error::InvalidParameter(format!(
                "global-observable criterion needs binary outcomes, got {}x{}",
                joint.n_a(),
                joint.n_b()
            )));
        }
        let same = joint.prob(0, 0) + joint.prob(1, 1);
        let diff = joint.prob(0, 1) + joint.prob(1, 0);
        total += 1.0 - powq(same, q) - powq(diff, q);
    }
    Ok(total / (q - 1.0))
}

/// Bloch-form specialization of [`separable_entropic_lhs`] for canonical
/// Pauli axes, where the global outcome probabilities are (1 +- c_k)/2:
/// (1/(q-1)) sum_k {1 - 2^-q [(1 + c_k)^q + (1 - c_k)^q]}.
pub fn separable_entropic_lhs_bloch(bloch: &BlochForm, q: f64) -> Result<f64> {
    check_q_range(q)?;
    let mut total = 0.0;
    for &t_k in &bloch.c {
        total +=
            1.0 - (powq((1.0 + t_k).max(0.0), q) + powq((1.0 - t_k).max(0.0), q)) / powq(2.0, q);
    }
    Ok(total / (q - 1.0))
}

/// Linear three-setting criterion: steerability follows if
/// sqrt(sum_i c_i^2) > 1.
pub fn linear_criterion(c: [f64; 3]) -> CriterionResult {
    let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    CriterionResult::from_upper_bound(norm, 1.0)
}

/// Reference threshold (d^(3/2) - 1)/(d^2 - 1) for isotropic states with a
/// complete set of MUBs, used for comparison output.
pub fn cavalcanti_threshold(d: usize) -> f64 {
    assert!(d >= 2, "reference threshold defined for d >= 2");
    let df = d as f64;
    (df.powf(1.5) - 1.0) / (df * df - 1.0)
}
