//! Density matrices and the state families used by the steering applications:
//! isotropic states, the two-qubit Bloch normal form of
//! rho = (1/4)[1 + a.sigma (x) 1 + 1 (x) b.sigma + sum_i c_i sigma_i (x) sigma_i],
//! the one-way steerable family, and Hilbert-Schmidt random states.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::{MAX_LOCAL_DIM, STATE_TOL};

/// Which factor of a bipartite state to keep under a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// A positive unit-trace Hermitian operator.
///
/// Construction validates Hermiticity (entrywise, 1e-10), unit trace (1e-10)
/// and positivity (smallest eigenvalue >= -1e-10); every constructor in this
/// module returns states that pass these checks.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim || dim == 0 {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if dim > MAX_LOCAL_DIM * MAX_LOCAL_DIM {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} exceeds the dense-solver limit {}",
                MAX_LOCAL_DIM * MAX_LOCAL_DIM
            )));
        }
        let herm = linalg::hermiticity_defect(&matrix);
        if herm > STATE_TOL {
            return Err(Error::NotPhysical(format!(
                "Hermiticity defect {herm:.3e} exceeds {STATE_TOL:.0e}"
            )));
        }
        let trace: Complex64 = (0..dim).map(|i| matrix[(i, i)]).sum();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::NotPhysical(format!("trace {trace} != 1")));
        }
        let min_eig = linalg::hermitian_eigenvalues(&matrix)[0];
        if min_eig < -STATE_TOL {
            return Err(Error::NotPhysical(format!(
                "smallest eigenvalue {min_eig:.3e} is negative"
            )));
        }
        Ok(Self { dim, matrix })
    }

    /// |psi><psi| for a state vector; the vector is normalized first.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let scale = 1.0 / norm_sq;
        let n = psi.len();
        let matrix = ComplexMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() * scale);
        Self::new(matrix)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Self::new(linalg::identity(dim) * c(1.0 / dim as f64, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Tr[rho^2].
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        acc
    }

    /// Reduced state on the kept subsystem of a d_a x d_b bipartition.
    pub fn partial_trace(&self, d_a: usize, d_b: usize, keep: Subsystem) -> Result<Self> {
        if d_a * d_b != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{d_a} * {d_b} != state dimension {}",
                self.dim
            )));
        }
        let m = &self.matrix;
        let reduced = match keep {
            Subsystem::A => ComplexMatrix::from_fn(d_a, d_a, |i, j| {
                (0..d_b).map(|b| m[(i * d_b + b, j * d_b + b)]).sum()
            }),
            Subsystem::B => ComplexMatrix::from_fn(d_b, d_b, |i, j| {
                (0..d_a).map(|a| m[(a * d_b + i, a * d_b + j)]).sum()
            }),
        };
        Self::new(reduced)
    }
}

/// The maximally entangled state sum_i |ii>/sqrt(d) on d x d.
pub fn phi_plus(d: usize) -> Vec<Complex64> {
    let amp = 1.0 / (d as f64).sqrt();
    let mut psi = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        psi[i * d + i] = c(amp, 0.0);
    }
    psi
}

fn check_local_dim(d: usize) -> Result<()> {
    if !(2..=MAX_LOCAL_DIM).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "local dimension must lie in [2, {MAX_LOCAL_DIM}], got {d}"
        )));
    }
    Ok(())
}

/// The isotropic state alpha |phi+><phi+| + (1 - alpha)/d^2 * 1 on d x d.
pub fn make_isotropic(d: usize, alpha: f64) -> Result<DensityMatrix> {
    check_local_dim(d)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let dd = d * d;
    let psi = phi_plus(d);
    let mut m = linalg::outer(&psi) * c(alpha, 0.0);
    let noise = (1.0 - alpha) / dd as f64;
    for i in 0..dd {
        m[(i, i)] += c(noise, 0.0);
    }
    DensityMatrix::new(m)
}

/// Local Bloch vectors a, b and diagonal correlations c of a two-qubit state
/// in normal form. The constructor enforces |a| <= 1, |b| <= 1 and
/// |c_i| <= 1 (up to 1e-10); positivity is checked by [`make_two_qubit`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [f64; 3],
}

impl BlochForm {
    pub fn new(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Result<Self> {
        let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm(a) > 1.0 + STATE_TOL {
            return Err(Error::InvalidParameter(format!("|a| = {} > 1", norm(a))));
        }
        if norm(b) > 1.0 + STATE_TOL {
            return Err(Error::InvalidParameter(format!("|b| = {} > 1", norm(b))));
        }
        if c.iter().any(|&x| x.abs() > 1.0 + STATE_TOL) {
            return Err(Error::InvalidParameter(format!("|c_i| > 1 in {c:?}")));
        }
        Ok(Self { a, b, c })
    }

    /// Bell-diagonal form: vanishing local Bloch vectors.
    pub fn bell_diagonal(c: [f64; 3]) -> Result<Self> {
        Self::new([0.0; 3], [0.0; 3], c)
    }
}

/// Builds the two-qubit operator
/// (1/4)[1(x)1 + a.sigma (x) 1 + 1 (x) b.sigma + sum_i c_i sigma_i (x) sigma_i]
/// and validates it; correlations incompatible with positivity are rejected.
pub fn make_two_qubit(bloch: &BlochForm) -> Result<DensityMatrix> {
    let sig = linalg::paulis();
    let id = linalg::identity(2);
    let mut m = linalg::tensor(&id, &id);
    for (i, s) in sig.iter().enumerate() {
        m += linalg::tensor(s, &id) * c(bloch.a[i], 0.0);
        m += linalg::tensor(&id, s) * c(bloch.b[i], 0.0);
        m += linalg::tensor(s, s) * c(bloch.c[i], 0.0);
    }
    DensityMatrix::new(m * c(0.25, 0.0))
}

/// Parameters of the one-way steerable family
/// beta |psi(theta)><psi(theta)| + (1 - beta) (1/2) (x) rho_B^theta
/// with |psi(theta)> = cos(theta)|00> + sin(theta)|11>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneWayFamilyParams {
    pub theta: f64,
    pub beta: f64,
}

impl OneWayFamilyParams {
    pub fn new(theta: f64, beta: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_4).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, pi/4], got {theta}"
            )));
        }
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in [0, 1], got {beta}"
            )));
        }
        Ok(Self { theta, beta })
    }
}

pub fn make_one_way(params: OneWayFamilyParams) -> Result<DensityMatrix> {
    let (ct, st) = (params.theta.cos(), params.theta.sin());
    let beta = params.beta;
    let mut psi = vec![Complex64::ZERO; 4];
    psi[0] = c(ct, 0.0);
    psi[3] = c(st, 0.0);
    let pure = linalg::outer(&psi);
    // rho_B^theta = Tr_A |psi><psi| = diag(cos^2, sin^2)
    let mut noise = ComplexMatrix::zeros(4, 4);
    for a in 0..2 {
        noise[(a * 2, a * 2)] = c(0.5 * ct * ct, 0.0);
        noise[(a * 2 + 1, a * 2 + 1)] = c(0.5 * st * st, 0.0);
    }
    DensityMatrix::new(pure * c(beta, 0.0) + noise * c(1.0 - beta, 0.0))
}

/// Deterministic per-draw generator: every (seed, draw index) pair selects an
/// independent ChaCha stream, so sampling plans can be evaluated in any order
/// or in parallel and still reproduce the serial ensemble.
pub fn substream_rng(seed: u64, draw_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw_index);
    rng
}

/// One draw from the Hilbert-Schmidt measure on d-dimensional states:
/// a complex Gaussian vector on system (x) ancilla (ancilla dimension d) is
/// normalized to a pure state and the ancilla is traced out.
pub fn sample_hs_random(d: usize, rng: &mut ChaCha8Rng) -> Result<DensityMatrix> {
    check_local_dim(d)?;
    let mut psi = vec![Complex64::ZERO; d * d];
    let mut norm_sq = 0.0;
    for z in psi.iter_mut() {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *z = c(re, im);
        norm_sq += z.norm_sqr();
    }
    // Reduced state on the system: rho[i,j] = sum_b psi[i d + b] conj(psi[j d + b]).
    let m = ComplexMatrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|b| psi[i * d + b] * psi[j * d + b].conj())
            .sum::<Complex64>()
            / norm_sq
    });
    DensityMatrix::new(m)
}

/// Convenience wrapper drawing the `draw_index`-th state of the (seeded)
/// Hilbert-Schmidt ensemble.
pub fn sample_hs_indexed(d: usize, seed: u64, draw_index: u64) -> Result<DensityMatrix> {
    sample_hs_random(d, &mut substream_rng(seed, draw_index))
}

/// Pauli expectations of a two-qubit state: local vectors
/// a_i = Tr[rho (sigma_i (x) 1)], b_j = Tr[rho (1 (x) sigma_j)] and the
/// correlation matrix T_ij = Tr[rho (sigma_i (x) sigma_j)].
pub fn pauli_expectations(
    rho: &DensityMatrix,
) -> Result<(Vector3<f64>, Vector3<f64>, Matrix3<f64>)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit operation on dimension {}",
            rho.dim()
        )));
    }
    let sig = linalg::paulis();
    let id = linalg::identity(2);
    let mut a = Vector3::zeros();
    let mut b = Vector3::zeros();
    let mut t = Matrix3::zeros();
    for i in 0..3 {
        a[i] = linalg::real_trace_product(rho.matrix(), &linalg::tensor(&sig[i], &id));
        b[i] = linalg::real_trace_product(rho.matrix(), &linalg::tensor(&id, &sig[i]));
        for j in 0..3 {
            t[(i, j)] = linalg::real_trace_product(rho.matrix(), &linalg::tensor(&sig[i], &sig[j]));
        }
    }
    Ok((a, b, t))
}

/// Normal form of a two-qubit state under local unitaries.
///
/// The correlation matrix is factored as T = O_A diag(c) O_B^T with proper
/// rotations O_A, O_B (a signed SVD: any determinant defect is absorbed by
/// flipping the sign of the smallest-magnitude c component and its rotation
/// column); the local vectors are rotated into the same frame. Components of
/// c come out sorted by descending magnitude.
pub fn bloch_normal_form(rho: &DensityMatrix) -> Result<BlochForm> {
    let (a, b, t) = pauli_expectations(rho)?;
    let svd = t.svd(true, true);
    let u = svd.u.expect("3x3 SVD with compute_u");
    let v_t = svd.v_t.expect("3x3 SVD with compute_v");
    let s = svd.singular_values;
    let du = u.determinant().signum();
    let dv = v_t.determinant().signum();

    // O_A = U diag(1,1,du), O_B = V diag(1,1,dv); then
    // T = O_A diag(s1, s2, s3 du dv) O_B^T with det(O_A) = det(O_B) = +1.
    let o_a = u * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, du));
    let o_b = v_t.transpose() * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, dv));
    let cvec = [s[0], s[1], s[2] * du * dv];

    let a_rot = o_a.transpose() * a;
    let b_rot = o_b.transpose() * b;
    BlochForm::new(
        [a_rot[0], a_rot[1], a_rot[2]],
        [b_rot[0], b_rot[1], b_rot[2]],
        cvec,
    )
}
