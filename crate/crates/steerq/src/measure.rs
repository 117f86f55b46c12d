//! Projective measurement bases and joint outcome distributions.
//!
//! Bases are rank-1: a `MeasurementBasis` is an orthonormal set of `dim` unit
//! vectors whose projectors sum to the identity. Mutually unbiased families
//! are available for prime dimensions via the quadratic Gauss-sum
//! construction; d = 2 uses the three Pauli eigenbases.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::states::DensityMatrix;

/// An orthonormal rank-1 projective measurement: `dim` unit vectors.
#[derive(Debug, Clone)]
pub struct MeasurementBasis {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl MeasurementBasis {
    /// Validates pairwise orthonormality (and hence projector completeness)
    /// to within 1e-10.
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 || vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(
                "basis needs dim vectors of length dim".into(),
            ));
        }
        for i in 0..dim {
            for j in i..dim {
                let ip: Complex64 = vectors[i]
                    .iter()
                    .zip(&vectors[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip - expected).norm() > 1e-10 {
                    return Err(Error::InvalidParameter(format!(
                        "vectors {i},{j} not orthonormal: <i|j> = {ip}"
                    )));
                }
            }
        }
        let basis = Self { dim, vectors };
        debug_assert!(basis.completeness_defect() <= 1e-10);
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Projector |e_i><e_i| onto the i-th outcome.
    pub fn projector(&self, i: usize) -> ComplexMatrix {
        linalg::outer(&self.vectors[i])
    }

    /// Entrywise complex conjugate of every vector. Measuring the conjugated
    /// basis on Bob's side aligns outcomes with Alice's for the maximally
    /// entangled state sum_i |ii>/sqrt(d).
    pub fn conjugated(&self) -> Self {
        Self {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|z| z.conj()).collect())
                .collect(),
        }
    }

    /// max-norm of sum_i |e_i><e_i| - 1.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            sum += self.projector(i);
        }
        linalg::max_abs_diff(&sum, &linalg::identity(self.dim))
    }
}

/// Eigenbases of sigma_x, sigma_y, sigma_z, in that order.
pub fn pauli_bases() -> Vec<MeasurementBasis> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = vec![vec![c(s, 0.), c(s, 0.)], vec![c(s, 0.), c(-s, 0.)]];
    let y = vec![vec![c(s, 0.), c(0., s)], vec![c(s, 0.), c(0., -s)]];
    let z = vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(1., 0.)]];
    [x, y, z]
        .into_iter()
        .map(|v| MeasurementBasis::new(v).expect("Pauli bases are orthonormal"))
        .collect()
}

/// Eigenbasis of the qubit observable u.sigma for a unit Bloch axis u;
/// outcome 0 is the +1 eigenvector.
pub fn basis_from_axis(u: [f64; 3]) -> Result<MeasurementBasis> {
    let norm = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "measurement axis must be a unit vector, |u| = {norm}"
        )));
    }
    let theta = (u[2] / norm).clamp(-1.0, 1.0).acos();
    let phi = u[1].atan2(u[0]);
    let (ch, sh) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let phase = Complex64::from_polar(1.0, phi);
    let plus = vec![c(ch, 0.), phase * sh];
    let minus = vec![c(sh, 0.), -phase * ch];
    MeasurementBasis::new(vec![plus, minus])
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// The first `m` of the d+1 mutually unbiased bases in prime dimension d:
/// the computational basis followed by the quadratic-phase bases with
/// components omega^(l(j + k l))/sqrt(d), omega = exp(2 pi i / d).
///
/// d = 2 needs the imaginary unit and is served by the Pauli eigenbases
/// (computational first). Prime-power dimensions are not implemented.
pub fn mub_prime(d: usize, m: usize) -> Result<Vec<MeasurementBasis>> {
    if !is_prime(d) {
        return Err(Error::NotPrime { d });
    }
    if !(2..=d + 1).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= m <= d + 1, got m = {m} for d = {d}"
        )));
    }
    if d == 2 {
        let p = pauli_bases();
        let ordered = vec![p[2].clone(), p[0].clone(), p[1].clone()];
        return Ok(ordered.into_iter().take(m).collect());
    }

    let mut bases = Vec::with_capacity(m);
    let computational: Vec<Vec<Complex64>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|l| c(if l == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    bases.push(MeasurementBasis::new(computational)?);

    let root = 1.0 / (d as f64).sqrt();
    for k in 0..m - 1 {
        let vectors: Vec<Vec<Complex64>> = (0..d)
            .map(|j| {
                (0..d)
                    .map(|l| {
                        let exponent = (l * (j + k * l)) % d;
                        Complex64::from_polar(root, 2.0 * PI * exponent as f64 / d as f64)
                    })
                    .collect()
            })
            .collect();
        bases.push(MeasurementBasis::new(vectors)?);
    }
    debug_assert!(check_mub(&bases));
    Ok(bases)
}

/// Largest deviation of any cross-basis overlap |<e_i|f_j>|^2 from 1/d.
pub fn mub_overlap_deviation(bases: &[MeasurementBasis]) -> f64 {
    let d = bases[0].dim();
    let target = 1.0 / d as f64;
    let mut worst = 0.0f64;
    for a in 0..bases.len() {
        for b in a + 1..bases.len() {
            for e in bases[a].vectors() {
                for f in bases[b].vectors() {
                    let ip: Complex64 = e.iter().zip(f).map(|(x, y)| x.conj() * y).sum();
                    worst = worst.max((ip.norm_sqr() - target).abs());
                }
            }
        }
    }
    worst
}

/// True iff every cross-basis overlap satisfies |<e_i|f_j>|^2 = 1/d
/// within 1e-9.
pub fn check_mub(bases: &[MeasurementBasis]) -> bool {
    if bases.is_empty() {
        return false;
    }
    let d = bases[0].dim();
    if bases.iter().any(|b| b.dim() != d) {
        return false;
    }
    let target = 1.0 / d as f64;
    for a in 0..bases.len() {
        for b in a + 1..bases.len() {
            for e in bases[a].vectors() {
                for f in bases[b].vectors() {
                    let ip: Complex64 = e.iter().zip(f).map(|(x, y)| x.conj() * y).sum();
                    if (ip.norm_sqr() - target).abs() > 1e-9 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Joint outcome table of one measurement setting.
#[derive(Debug, Clone)]
pub struct JointDistribution {
    n_a: usize,
    n_b: usize,
    p: Vec<f64>, // row-major, Alice indexes rows
}

impl JointDistribution {
    /// Validates normalization within 1e-10; entries down to -1e-12 are
    /// clamped to 0 so entropy terms stay well defined.
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        let n_a = table.len();
        if n_a == 0 || table.iter().any(|r| r.len() != table[0].len()) {
            return Err(Error::DimensionMismatch("ragged probability table".into()));
        }
        let n_b = table[0].len();
        let mut p = Vec::with_capacity(n_a * n_b);
        for row in &table {
            for &x in row {
                if x < -1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "negative joint probability {x}"
                    )));
                }
                p.push(x.max(0.0));
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "joint probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { n_a, n_b, p })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    #[inline]
    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.n_b + j]
    }

    /// Flat row-major view of the table.
    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    /// Alice's marginal distribution p_i (row sums).
    pub fn row_marginals(&self) -> Vec<f64> {
        (0..self.n_a)
            .map(|i| (0..self.n_b).map(|j| self.prob(i, j)).sum())
            .collect()
    }

    /// Bob's marginal distribution p_j (column sums).
    pub fn col_marginals(&self) -> Vec<f64> {
        (0..self.n_b)
            .map(|j| (0..self.n_a).map(|i| self.prob(i, j)).sum())
            .collect()
    }
}

/// p_ij = Tr[(P_i (x) P_j) rho] for rank-1 projective bases on each side.
pub fn joint_distribution(
    rho: &DensityMatrix,
    basis_a: &MeasurementBasis,
    basis_b: &MeasurementBasis,
) -> Result<JointDistribution> {
    let (da, db) = (basis_a.dim(), basis_b.dim());
    if rho.dim() != da * db {
        return Err(Error::DimensionMismatch(format!(
            "state dim {} != {da} * {db}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let mut table = vec![vec![0.0; db]; da];
    let mut prod = vec![Complex64::ZERO; da * db];
    for (i, e) in basis_a.vectors().iter().enumerate() {
        for (j, f) in basis_b.vectors().iter().enumerate() {
            for a in 0..da {
                for b in 0..db {
                    prod[a * db + b] = e[a] * f[b];
                }
            }
            // <v| rho |v>
            let mut acc = Complex64::ZERO;
            for r in 0..da * db {
                let mut row = Complex64::ZERO;
                for s in 0..da * db {
                    row += m[(r, s)] * prod[s];
                }
                acc += prod[r].conj() * row;
            }
            table[i][j] = acc.re;
        }
    }
    JointDistribution::new(table)
}

/// The measurement-independent joint table of an isotropic state probed with
/// any MUB on Alice's side and its conjugate on Bob's: the diagonal carries
/// p_ii = [1 + (d-1) alpha]/d^2 and every off-diagonal entry (1 - alpha)/d^2.
pub fn isotropic_mub_distribution(d: usize, alpha: f64) -> Result<JointDistribution> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let dd = (d * d) as f64;
    let diag = (1.0 + (d as f64 - 1.0) * alpha) / dd;
    let off = (1.0 - alpha) / dd;
    let table = (0..d)
        .map(|i| (0..d).map(|j| if i == j { diag } else { off }).collect())
        .collect();
    JointDistribution::new(table)
}
