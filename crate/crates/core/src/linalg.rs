//! Dense complex matrix helpers.
//!
//! Everything downstream works with [`CMatrix`], a column-major
//! `nalgebra::DMatrix<Complex64>`. Large products go through
//! `matrixmultiply::zgemm`; Hermitian spectra through nalgebra's
//! symmetric eigensolver.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Complex zero.
pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
/// Complex one.
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Negative eigenvalues of a Gram matrix down to this value are rounded to zero.
pub const GRAM_CLAMP: f64 = -1e-12;

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_element(rows, cols, ZERO)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().copied().sum()
}

/// `Tr(a * b)` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// `Tr(a * b^*)`, the Hilbert-Schmidt inner product.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn hs_norm_sqr(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff: shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Kronecker product with `a` as the outer (first) factor.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Matrix product through `zgemm`; noticeably faster than the generic
/// nalgebra path for the |G|²-sized phase-space matrices.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul: inner dimensions differ");
    let (m, k, n) = (a.nrows(), a.ncols(), b.ncols());
    let mut c = zeros(m, n);
    if m == 0 || n == 0 || k == 0 {
        return c;
    }
    // Column-major: row stride 1, column stride = number of rows.
    unsafe {
        matrixmultiply::zgemm(
            matrixmultiply::CGemmOption::Standard,
            matrixmultiply::CGemmOption::Standard,
            m,
            k,
            n,
            [1.0, 0.0],
            a.as_ptr() as *const [f64; 2],
            1,
            m as isize,
            b.as_ptr() as *const [f64; 2],
            1,
            k as isize,
            [0.0, 0.0],
            c.as_mut_ptr() as *mut [f64; 2],
            1,
            m as isize,
        );
    }
    c
}

/// `a·b` for a sparse `b`, touching only the nonzero entries of `b`.
pub fn matmul_sparse_right(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul: inner dimensions differ");
    let mut c = zeros(a.nrows(), b.ncols());
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let v = b[(k, j)];
            if v != ZERO {
                c.column_mut(j).axpy(v, &a.column(k), ONE);
            }
        }
    }
    c
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of the Hermitian
/// part `(m + m^*)/2`. Callers that need Hermiticity itself checked must do
/// it separately.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert!(m.is_square(), "hermitian_eigen: matrix not square");
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), zeros(0, 0));
    }
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = nalgebra::linalg::SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(0.0)
}

/// Singular values in descending order, from the eigenvalues of `m^* m`.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let gram = if m.nrows() >= m.ncols() { m.adjoint() * m } else { m * m.adjoint() };
    let mut sv: Vec<f64> = hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|l| if (GRAM_CLAMP..0.0).contains(&l) { 0.0 } else { l.max(0.0).sqrt() })
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Schatten p-norm: the ℓ^p norm of the singular values. `p = f64::INFINITY`
/// gives the operator norm.
pub fn schatten_norm(m: &CMatrix, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let sv = singular_values(m);
    Ok(lp_norm(&sv, p))
}

pub fn operator_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

pub(crate) fn lp_norm(values: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        values.iter().copied().fold(0.0, f64::max)
    } else if p == 1.0 {
        values.iter().sum()
    } else if p == 2.0 {
        values.iter().map(|s| s * s).sum::<f64>().sqrt()
    } else {
        values.iter().map(|s| s.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Root of unity `exp(2πi·k/n)`, snapped to exact values at the quarter turns.
pub fn root_of_unity(k: i64, n: u64) -> Complex64 {
    let n = n as i64;
    let k = k.rem_euclid(n);
    if 4 * k % n == 0 {
        return match 4 * k / n {
            0 => ONE,
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64);
    Complex64::new(Float::cos(theta), Float::sin(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn schatten_examples() {
        assert!((schatten_norm(&identity(2), 1.0).unwrap() - 2.0).abs() < 1e-14);
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![c(3.0, 0.0), c(4.0, 0.0)]));
        assert!((schatten_norm(&d, 2.0).unwrap() - 5.0).abs() < 1e-14);
        assert!((schatten_norm(&d, f64::INFINITY).unwrap() - 4.0).abs() < 1e-14);
        assert!(matches!(schatten_norm(&d, 0.5), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn zgemm_matches_naive_product() {
        let a = CMatrix::from_fn(5, 3, |i, j| c(i as f64 - j as f64, (i * j) as f64 * 0.5));
        let b = CMatrix::from_fn(3, 4, |i, j| c((i + 2 * j) as f64, -(j as f64)));
        assert!(max_abs_diff(&matmul(&a, &b), &(&a * &b)) < 1e-13);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = CMatrix::from_fn(4, 5, |i, j| c(i as f64 + 0.5, j as f64 - 1.0));
        let b = CMatrix::from_fn(5, 3, |i, j| if (i + j) % 3 == 0 { c(1.5, i as f64) } else { ZERO });
        assert!(max_abs_diff(&matmul_sparse_right(&a, &b), &(&a * &b)) < 1e-13);
    }

    #[test]
    fn roots_of_unity_are_exact_at_quarters() {
        assert_eq!(root_of_unity(1, 4), c(0.0, 1.0));
        assert_eq!(root_of_unity(-1, 2), c(-1.0, 0.0));
        assert_eq!(root_of_unity(6, 3), ONE);
        let w = root_of_unity(1, 3);
        assert!((w * w * w - ONE).norm() < 1e-15);
    }

    #[test]
    fn eigen_sorted_and_orthonormal() {
        let m = CMatrix::from_fn(4, 4, |i, j| {
            let z = c((i + j) as f64, i as f64 - j as f64);
            if i == j {
                c(z.re, 0.0)
            } else {
                z
            }
        });
        let (vals, vecs) = hermitian_eigen(&m);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        assert!(max_abs_diff(&(vecs.adjoint() * &vecs), &identity(4)) < 1e-12);
        let recon = &vecs
            * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(4, vals.iter().map(|&v| c(v, 0.0))))
            * vecs.adjoint();
        assert!(max_abs_diff(&recon, &m) < 1e-12);
    }
}
