//! Shared input builders for the steering benchmarks.

use steerq::measure::JointDistribution;
use steerq::states::{sample_hs_indexed, DensityMatrix};

/// A fixed batch of Hilbert-Schmidt random two-qubit states.
pub fn two_qubit_batch(n: u64, seed: u64) -> Vec<DensityMatrix> {
    (0..n)
        .map(|i| sample_hs_indexed(4, seed, i).expect("d = 4 is valid"))
        .collect()
}

/// The measurement-independent isotropic joint table, repeated for m settings.
pub fn isotropic_joints(d: usize, m: usize, alpha: f64) -> Vec<JointDistribution> {
    let table = steerq::measure::isotropic_mub_distribution(d, alpha).expect("valid parameters");
    (0..m).map(|_| table.clone()).collect()
}
