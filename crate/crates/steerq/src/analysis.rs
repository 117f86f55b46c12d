//! Threshold finding, dimension sweeps, Monte-Carlo classification of random
//! states, and the one-way steering window of the partially entangled family.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{
    cavalcanti_threshold, isotropic_lhs_closed_form, isotropic_lhs_shannon, linear_criterion,
    select_bound, separable_entropic_lhs_bloch, two_qubit_pauli_q2, CriterionResult,
};
use crate::error::{Error, Result};
use crate::measure::is_prime;
use crate::states::{
    bloch_normal_form, make_one_way, sample_hs_indexed, DensityMatrix, OneWayFamilyParams,
};
use crate::VIOLATION_TOL;

/// Critical white-noise level of the isotropic family for one (d, m, q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub d: usize,
    pub m: usize,
    pub q: f64,
    pub alpha_crit: f64,
    pub iterations: usize,
}

/// Bisection for the alpha where the isotropic left-hand side meets the
/// uncertainty bound. The left-hand side is strictly decreasing in alpha, so
/// the root is unique; q = 1 runs the Shannon path with the matching bound.
pub fn critical_alpha(d: usize, m: usize, q: f64, tol: f64) -> Result<ThresholdResult> {
    if tol < 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "bisection tolerance must be >= 1e-12, got {tol}"
        )));
    }
    let bound = select_bound(d, m, q)?.value;
    let lhs = |alpha: f64| -> Result<f64> {
        if q == 1.0 {
            isotropic_lhs_shannon(d, m, alpha)
        } else {
            isotropic_lhs_closed_form(d, m, q, alpha)
        }
    };
    let f_lo = lhs(0.0)? - bound;
    let f_hi = lhs(1.0)? - bound;
    if f_lo <= 0.0 || f_hi >= 0.0 {
        return Err(Error::NeverViolated { d, m, q });
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if lhs(mid)? - bound > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(ThresholdResult {
        d,
        m,
        q,
        alpha_crit: 0.5 * (lo + hi),
        iterations,
    })
}

/// One row of the critical-noise comparison across dimensions, for a complete
/// set of d + 1 MUBs. Non-prime dimensions, where the MUB construction is
/// unavailable, carry empty threshold columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure1Row {
    pub d: usize,
    pub alpha_q1: Option<f64>,
    pub alpha_q2: Option<f64>,
    pub alpha_cavalcanti: f64,
}

/// Critical alpha per dimension at q -> 1 and q = 2, next to the reference
/// threshold (d^(3/2) - 1)/(d^2 - 1).
pub fn figure1_table(dims: &[usize]) -> Result<Vec<Figure1Row>> {
    dims.iter()
        .map(|&d| {
            if d < 2 {
                return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
            }
            let (alpha_q1, alpha_q2) = if is_prime(d) {
                (
                    Some(critical_alpha(d, d + 1, 1.0, 1e-12)?.alpha_crit),
                    Some(critical_alpha(d, d + 1, 2.0, 1e-12)?.alpha_crit),
                )
            } else {
                (None, None)
            };
            Ok(Figure1Row {
                d,
                alpha_q1,
                alpha_q2,
                alpha_cavalcanti: cavalcanti_threshold(d),
            })
        })
        .collect()
}

/// Violation pattern of one random state under the three criteria compared
/// in the Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    /// No criterion violated.
    None,
    /// All three violated.
    AllThree,
    /// Only the Pauli q = 2 criterion violated.
    OnlyEq21,
    /// The global-observable and linear criteria violated, but not the
    /// Pauli q = 2 one; empirically empty.
    OnlyLinear,
    /// Any other pattern; the global-observable and linear criteria coincide
    /// at q = 2, so this stays exactly empty.
    Overflow,
}

/// Violation counts over a classified ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CategoryCounts {
    pub none: u64,
    pub all_three: u64,
    pub only_eq21: u64,
    pub only_linear: u64,
    pub overflow: u64,
}

impl CategoryCounts {
    fn add(&mut self, category: Category) {
        match category {
            Category::None => self.none += 1,
            Category::AllThree => self.all_three += 1,
            Category::OnlyEq21 => self.only_eq21 += 1,
            Category::OnlyLinear => self.only_linear += 1,
            Category::Overflow => self.overflow += 1,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.none += other.none;
        self.all_three += other.all_three;
        self.only_eq21 += other.only_eq21;
        self.only_linear += other.only_linear;
        self.overflow += other.overflow;
        self
    }

    pub fn total(&self) -> u64 {
        self.none + self.all_three + self.only_eq21 + self.only_linear + self.overflow
    }
}

/// Per-category fractions of a classified ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryFractions {
    pub none: f64,
    pub all_three: f64,
    pub only_eq21: f64,
    pub only_linear: f64,
    pub overflow: f64,
}

/// Result of classifying a seeded Hilbert-Schmidt ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub n_samples: u64,
    pub seed: u64,
    pub counts: CategoryCounts,
    pub fractions: CategoryFractions,
}

impl EnsembleReport {
    fn from_counts(n_samples: u64, seed: u64, counts: CategoryCounts) -> Self {
        let n = n_samples as f64;
        Self {
            n_samples,
            seed,
            counts,
            fractions: CategoryFractions {
                none: counts.none as f64 / n,
                all_three: counts.all_three as f64 / n,
                only_eq21: counts.only_eq21 as f64 / n,
                only_linear: counts.only_linear as f64 / n,
                overflow: counts.overflow as f64 / n,
            },
        }
    }
}

/// Classifies one two-qubit state: normal form, then the Pauli q = 2
/// criterion, the global-observable criterion at q = 2 and the linear
/// criterion.
pub fn classify_state(rho: &DensityMatrix) -> Result<Category> {
    let nf = bloch_normal_form(rho)?;
    let v21 = two_qubit_pauli_q2(&nf).violated;
    let lhs18 = separable_entropic_lhs_bloch(&nf, 2.0)?;
    let v18 = CriterionResult::from_lower_bound(lhs18, 1.0).violated;
    let vlin = linear_criterion(nf.c).violated;
    Ok(match (v21, v18, vlin) {
        (false, false, false) => Category::None,
        (true, true, true) => Category::AllThree,
        (true, false, false) => Category::OnlyEq21,
        (false, true, true) => Category::OnlyLinear,
        _ => Category::Overflow,
    })
}

fn classify_draw(seed: u64, index: u64) -> Category {
    let rho = sample_hs_indexed(4, seed, index).expect("dimension 4 is valid");
    classify_state(&rho).expect("sampled states are two-qubit")
}

/// Classifies `n` Hilbert-Schmidt random two-qubit states, serially.
///
/// Draw `i` depends only on `(seed, i)`, so the first k classifications of a
/// longer run coincide with a shorter run's, and the parallel variant
/// produces identical counts.
pub fn classify_ensemble(n: u64, seed: u64) -> EnsembleReport {
    let mut counts = CategoryCounts::default();
    for i in 0..n {
        counts.add(classify_draw(seed, i));
    }
    EnsembleReport::from_counts(n, seed, counts)
}

/// Parallel version of [`classify_ensemble`]; the per-draw substreams make
/// the result independent of the thread count.
pub fn classify_ensemble_par(n: u64, seed: u64) -> EnsembleReport {
    let counts = (0..n)
        .into_par_iter()
        .fold(CategoryCounts::default, |mut acc, i| {
            acc.add(classify_draw(seed, i));
            acc
        })
        .reduce(CategoryCounts::default, CategoryCounts::merge);
    EnsembleReport::from_counts(n, seed, counts)
}

/// Detection window of the one-way steerable family at a fixed theta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneWayWindow {
    pub theta: f64,
    /// Lowest beta at which the q = 2 three-Pauli criterion fires.
    pub lower: f64,
    /// Top of the known one-way regime for three settings.
    pub beta_max: f64,
    /// Whether the Bob-to-Alice unsteerability condition (division reading)
    /// holds at beta = beta_max.
    pub bob_to_alice_unsteerable_check: bool,
}

fn one_way_lower(theta: f64) -> f64 {
    let cos2t = (2.0 * theta).cos();
    let sin2t_sq = (2.0 * theta).sin().powi(2);
    if cos2t < 1e-6 {
        // Removable 0/0 at theta = pi/4; series expansion in cos(2 theta)
        // around the Werner-state limit 1/sqrt(3).
        (1.0 + cos2t * cos2t / 9.0) / 3f64.sqrt()
    } else {
        (3.0 - (1.0 + 8.0 * sin2t_sq).sqrt()).sqrt() / (2.0 * cos2t)
    }
}

fn one_way_beta_max(theta: f64) -> f64 {
    1.0 / (1.0 + 2.0 * (2.0 * theta).sin().powi(2)).sqrt()
}

/// Bob-to-Alice unsteerability condition for all projective measurements.
///
/// The inequality is cos^2(2 theta) >= (2 beta - 1) / [(2 - beta) beta^3];
/// `product_reading` evaluates the right-hand side as a product instead of a
/// quotient, for comparison of the two possible groupings.
pub fn bob_to_alice_unsteerable(theta: f64, beta: f64, product_reading: bool) -> bool {
    let lhs = (2.0 * theta).cos().powi(2);
    let factor = (2.0 - beta) * beta.powi(3);
    let rhs = if product_reading {
        (2.0 * beta - 1.0) * factor
    } else {
        (2.0 * beta - 1.0) / factor
    };
    lhs >= rhs
}

/// One-way detection window for theta in the open interval (0, pi/4):
/// the entropic q = 2 criterion fires for lower < beta <= beta_max with
/// beta_max = [1 + 2 sin^2(2 theta)]^(-1/2).
pub fn one_way_window(theta: f64) -> Result<OneWayWindow> {
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_4) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, pi/4), got {theta}"
        )));
    }
    let beta_max = one_way_beta_max(theta);
    Ok(OneWayWindow {
        theta,
        lower: one_way_lower(theta),
        beta_max,
        bob_to_alice_unsteerable_check: bob_to_alice_unsteerable(theta, beta_max, false),
    })
}

/// Window membership and criterion verdict for one (theta, beta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneWayReport {
    pub theta: f64,
    pub beta: f64,
    pub lower: f64,
    pub beta_max: f64,
    pub inside_window: bool,
    pub criterion: CriterionResult,
}

/// Builds the one-way family state, evaluates the q = 2 three-Pauli
/// criterion in its normal form, and reports the verdict next to the
/// analytic window membership.
pub fn verify_one_way_threshold(theta: f64, beta: f64) -> Result<OneWayReport> {
    let params = OneWayFamilyParams::new(theta, beta)?;
    let rho = make_one_way(params)?;
    let nf = bloch_normal_form(&rho)?;
    let criterion = two_qubit_pauli_q2(&nf);
    let lower = one_way_lower(theta);
    let beta_max = one_way_beta_max(theta);
    Ok(OneWayReport {
        theta,
        beta,
        lower,
        beta_max,
        inside_window: beta > lower + VIOLATION_TOL && beta <= beta_max + VIOLATION_TOL,
        criterion,
    })
}
