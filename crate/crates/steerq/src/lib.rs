//! Entropic steering detection for bipartite quantum states.
//!
//! Steering criteria built from generalized (Tsallis) entropic uncertainty
//! relations: a local-hidden-state model forces the summed conditional
//! entropies of Bob's outcomes to respect a state-independent bound, so a
//! violation witnesses steerability. The crate covers the full pipeline:
//!
//! - [`states`]: dense density matrices, isotropic / two-qubit / one-way
//!   state families, Hilbert-Schmidt random sampling, Bloch normal form.
//! - [`measure`]: projective bases (Pauli, mutually unbiased bases in prime
//!   dimension) and joint outcome distributions.
//! - [`entropy`]: q-logarithm, Shannon and Tsallis entropies, relative and
//!   conditional entropies, the non-additivity correction term.
//! - [`criteria`]: the steering inequalities themselves plus the entropic
//!   uncertainty bounds they are tested against.
//! - [`analysis`]: critical-noise thresholds by bisection, dimension sweeps,
//!   Monte-Carlo classification of random states, one-way steering windows.
//!
//! All quantities are in nats. Violation flags use a fixed margin tolerance
//! of 1e-12 so that boundary states classify as non-violating.
//!
//! ```
//! use steerq::{analysis, criteria};
//!
//! // Critical white-noise level for a two-qubit isotropic (Werner) state
//! // probed with all three Pauli bases at q = 2: alpha_crit = 1/sqrt(3).
//! let t = analysis::critical_alpha(2, 3, 2.0, 1e-12).unwrap();
//! assert!((t.alpha_crit - 1.0 / 3f64.sqrt()).abs() < 1e-9);
//!
//! // The same threshold, seen as a criterion evaluation just above it.
//! let lhs = criteria::isotropic_lhs_closed_form(2, 3, 2.0, 0.6).unwrap();
//! let bound = criteria::bound_tsallis(2, 3, 2.0).unwrap();
//! assert!(lhs < bound.value);
//! ```

pub mod analysis;
pub mod criteria;
pub mod entropy;
pub mod linalg;
pub mod measure;
pub mod states;

mod error;

pub use error::{Error, Result};

pub use analysis::{EnsembleReport, Figure1Row, OneWayWindow, ThresholdResult};
pub use criteria::{CriterionResult, UncertaintyBound};
pub use entropy::ProbVector;
pub use linalg::ComplexMatrix;
pub use measure::{JointDistribution, MeasurementBasis};
pub use states::{BlochForm, DensityMatrix, OneWayFamilyParams, Subsystem};

/// Tolerance for Hermiticity, unit trace and positivity checks on states.
pub const STATE_TOL: f64 = 1e-10;

/// Margin below the bound required before a criterion reports violation.
pub const VIOLATION_TOL: f64 = 1e-12;

/// Largest local dimension accepted by the state constructors; dense
/// eigensolvers stay cheap up to here and the applications need d <= 13.
pub const MAX_LOCAL_DIM: usize = 32;
