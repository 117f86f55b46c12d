//! Small dense complex linear algebra shared by the state and measurement layers.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense complex matrix; all operators in this crate are small (dim <= 1024).
pub type ComplexMatrix = DMatrix<Complex64>;

/// Shorthand complex constructor.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// n x n identity.
pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// The Pauli matrices (sigma_x, sigma_y, sigma_z), in that order.
pub fn paulis() -> [ComplexMatrix; 3] {
    let sx = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
    let sy = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
    let sz = ComplexMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
    [sx, sy, sz]
}

/// Kronecker product m1 (x) m2; dimensions multiply.
pub fn tensor(m1: &ComplexMatrix, m2: &ComplexMatrix) -> ComplexMatrix {
    m1.kronecker(m2)
}

/// Outer product |v><v| of a (not necessarily normalized) vector.
pub fn outer(v: &[Complex64]) -> ComplexMatrix {
    let n = v.len();
    ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj())
}

/// Largest entrywise deviation from Hermiticity, max_ij |M_ij - conj(M_ji)|.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut eigs: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// max_ij |A_ij - B_ij|.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Expectation value Tr[rho * op] of a Hermitian op; imaginary part is discarded.
pub fn real_trace_product(rho: &ComplexMatrix, op: &ComplexMatrix) -> f64 {
    let n = rho.nrows();
    let mut tr = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            tr += rho[(i, k)] * op[(k, i)];
        }
    }
    tr.re
}
