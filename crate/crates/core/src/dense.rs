//! Small dense complex-matrix utilities on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{modulus, Real, C};

pub type CMatrix<T> = DMatrix<C<T>>;

/// Largest entrywise modulus of `a - b`, as `f64`.
pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| modulus(*x - *y).as_f64())
        .fold(0.0, f64::max)
}

/// Largest entrywise modulus of `a`.
pub fn max_abs<T: Real>(a: &CMatrix<T>) -> f64 {
    a.iter().map(|x| modulus(*x).as_f64()).fold(0.0, f64::max)
}

/// `max |a - a†|`.
pub fn hermiticity_residual<T: Real>(a: &CMatrix<T>) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

/// `max |u u† - 1|`.
pub fn unitarity_residual<T: Real>(u: &CMatrix<T>) -> f64 {
    let id = CMatrix::<T>::identity(u.nrows(), u.ncols());
    max_abs_diff(&(u * u.adjoint()), &id)
}

/// `u · a · u†`.
pub fn conjugate<T: Real>(u: &CMatrix<T>, a: &CMatrix<T>) -> CMatrix<T> {
    u * a * u.adjoint()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Only the Hermitian part of `a` is used.
pub fn hermitian_eigenvalues<T: Real>(a: &CMatrix<T>) -> Vec<T> {
    let h = (a + a.adjoint()) * C::new(T::of(0.5), T::zero());
    let mut ev: Vec<T> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.partial_cmp(y).expect("NaN eigenvalue"));
    ev
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching unit eigenvectors as columns.
pub fn hermitian_eigh<T: Real>(a: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let h = (a + a.adjoint()) * C::new(T::of(0.5), T::zero());
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("NaN eigenvalue")
    });
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let cols: Vec<DVector<C<T>>> = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    (vals, CMatrix::from_columns(&cols))
}

/// Real part of the trace.
pub fn trace_re<T: Real>(a: &CMatrix<T>) -> T {
    a.trace().re
}

/// Rank counted as eigenvalues above `tol` (Hermitian input).
pub fn hermitian_rank<T: Real>(a: &CMatrix<T>, tol: f64) -> usize {
    hermitian_eigenvalues(a)
        .into_iter()
        .filter(|v| v.as_f64().abs() > tol)
        .count()
}
