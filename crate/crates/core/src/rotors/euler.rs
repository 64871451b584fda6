//! Real orthogonal transforms and their factorisation into plane rotations
//!
//! ```text
//!     T = E_1^{det T} · Π_{j<k} R_{jk}(θ_{jk})      (lexicographic order)
//! ```
//!
//! where `E_1^ε` is the identity or the reflection of the first axis, and
//! `R_{jk}(θ)` rotates the `(j, k)` coordinate plane, sending `e_j` to
//! `cos θ e_j + sin θ e_k`. Indices here are 0-based matrix indices.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{domain, Result};
use crate::scalar::{Real, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct OrthoTransform<T: Real> {
    mat: DMatrix<T>,
    det_sign: i8,
}

/// `ε` and the plane-rotation angles of an orthogonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactorization<T: Real> {
    pub size: usize,
    /// `+1` or `-1`; `-1` means a leading reflection of axis 0.
    pub reflection: i8,
    /// `(j, k, θ_{jk})` with `j < k`, lexicographic, `θ ∈ [0, 2π)`.
    pub angles: Vec<(usize, usize, T)>,
}

/// Largest entry of `|M Mᵀ - 1|`.
pub fn orthogonality_residual<T: Real>(m: &DMatrix<T>) -> f64 {
    let id = DMatrix::<T>::identity(m.nrows(), m.ncols());
    (m * m.transpose() - id)
        .iter()
        .map(|v| v.abs().as_f64())
        .fold(0.0, f64::max)
}

/// The matrix of `R_{jk}(θ)` in dimension `size`.
pub fn plane_rotation<T: Real>(size: usize, j: usize, k: usize, theta: T) -> DMatrix<T> {
    let mut r = DMatrix::<T>::identity(size, size);
    let (s, c) = theta.sin_cos();
    r[(j, j)] = c;
    r[(k, k)] = c;
    r[(k, j)] = s;
    r[(j, k)] = -s;
    r
}

/// Rotates rows `j` and `k` of `m` by `R_{jk}(-θ)`, given `c = cos θ`, `s = sin θ`.
fn rotate_rows_inverse<T: Real>(m: &mut DMatrix<T>, j: usize, k: usize, c: T, s: T) {
    for col in 0..m.ncols() {
        let a = m[(j, col)];
        let b = m[(k, col)];
        m[(j, col)] = c * a + s * b;
        m[(k, col)] = -s * a + c * b;
    }
}

impl<T: Real> OrthoTransform<T> {
    /// Checks orthogonality against the default tolerance for `T`.
    pub fn new(mat: DMatrix<T>) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return domain(format!("transform is {}x{}", mat.nrows(), mat.ncols()));
        }
        let tol = Tolerances::for_scalar::<T>().orth;
        let res = orthogonality_residual(&mat);
        if res > tol {
            return domain(format!("matrix is not orthogonal (residual {res:e})"));
        }
        let det_sign = if mat.determinant() < T::zero() { -1 } else { 1 };
        Ok(OrthoTransform { mat, det_sign })
    }

    pub fn identity(size: usize) -> Self {
        OrthoTransform {
            mat: DMatrix::identity(size, size),
            det_sign: 1,
        }
    }

    /// Haar-random orthogonal matrix; `special` restricts to determinant `+1`.
    pub fn random<R: Rng + ?Sized>(size: usize, special: bool, rng: &mut R) -> Self {
        let g = DMatrix::<T>::from_fn(size, size, |_, _| {
            let v: f64 = StandardNormal.sample(rng);
            T::of(v)
        });
        let qr = g.qr();
        let r = qr.r();
        let mut q = qr.q();
        for i in 0..size {
            if r[(i, i)] < T::zero() {
                q.column_mut(i).neg_mut();
            }
        }
        if special && q.determinant() < T::zero() {
            q.column_mut(0).neg_mut();
        }
        let det_sign = if q.determinant() < T::zero() { -1 } else { 1 };
        OrthoTransform { mat: q, det_sign }
    }

    pub fn size(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.mat
    }

    pub fn det_sign(&self) -> i8 {
        self.det_sign
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.size() != rhs.size() {
            return domain("composing transforms of different sizes");
        }
        Ok(OrthoTransform {
            mat: &self.mat * &rhs.mat,
            det_sign: self.det_sign * rhs.det_sign,
        })
    }
}

/// Sequential Givens annihilation, column by column.
///
/// After the optional reflection, the remaining special-orthogonal matrix `M`
/// is peeled as `M = P_0 P_1 ⋯`, `P_j = R_{j,j+1} ⋯ R_{j,N-1}`, where `P_j`
/// is chosen so that `P_j e_j` equals column `j` of what is left.
pub fn euler_decompose<T: Real>(t: &OrthoTransform<T>) -> Result<EulerFactorization<T>> {
    let tol = Tolerances::for_scalar::<T>().orth;
    let res = orthogonality_residual(&t.mat);
    if res > tol {
        return domain(format!("matrix is not orthogonal (residual {res:e})"));
    }
    let size = t.size();
    let mut m = t.mat.clone();
    if t.det_sign < 0 {
        m.row_mut(0).neg_mut();
    }
    let two_pi = T::two_pi();
    let mut angles = Vec::with_capacity(size * size.saturating_sub(1) / 2);
    for j in 0..size.saturating_sub(1) {
        for k in j + 1..size {
            let a = m[(j, j)];
            let b = m[(k, j)];
            let r = (a * a + b * b).sqrt();
            let (c, s) = if r > T::zero() {
                (a / r, b / r)
            } else {
                (T::one(), T::zero())
            };
            let mut theta = s.atan2(c);
            if theta < T::zero() {
                theta += two_pi;
            }
            if theta >= two_pi {
                theta = T::zero();
            }
            rotate_rows_inverse(&mut m, j, k, c, s);
            angles.push((j, k, theta));
        }
    }
    Ok(EulerFactorization {
        size,
        reflection: t.det_sign,
        angles,
    })
}

impl<T: Real> EulerFactorization<T> {
    /// `E_1^ε · Π R_{jk}(θ_{jk})`.
    pub fn recompose(&self) -> DMatrix<T> {
        let mut m = DMatrix::<T>::identity(self.size, self.size);
        if self.reflection < 0 {
            m[(0, 0)] = -T::one();
        }
        for &(j, k, theta) in &self.angles {
            m *= plane_rotation(self.size, j, k, theta);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_has_zero_angles() {
        let f = euler_decompose(&OrthoTransform::<f64>::identity(4)).unwrap();
        assert_eq!(f.reflection, 1);
        assert_eq!(f.angles.len(), 6);
        assert!(f.angles.iter().all(|&(_, _, t)| t == 0.0));
    }

    #[test]
    fn two_dimensional_rotation() {
        let theta = 2.3;
        let t = OrthoTransform::new(plane_rotation::<f64>(2, 0, 1, theta)).unwrap();
        let f = euler_decompose(&t).unwrap();
        assert_eq!(f.reflection, 1);
        assert_eq!(f.angles.len(), 1);
        let (j, k, got) = f.angles[0];
        assert_eq!((j, k), (0, 1));
        assert!((got - theta).abs() < 1e-14);
    }

    #[test]
    fn reflection_flag() {
        let mut m = DMatrix::<f64>::identity(3, 3);
        m[(2, 2)] = -1.0;
        let t = OrthoTransform::new(m.clone()).unwrap();
        assert_eq!(t.det_sign(), -1);
        let f = euler_decompose(&t).unwrap();
        assert_eq!(f.reflection, -1);
        assert!(max_diff(&f.recompose(), &m) < 1e-14);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let m = DMatrix::<f64>::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(OrthoTransform::new(m).is_err());
    }

    #[test]
    fn lexicographic_order_and_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = OrthoTransform::<f64>::random(5, false, &mut rng);
        let f = euler_decompose(&t).unwrap();
        let pairs: Vec<(usize, usize)> = f.angles.iter().map(|&(j, k, _)| (j, k)).collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(pairs, sorted);
        assert!(f
            .angles
            .iter()
            .all(|&(_, _, t)| (0.0..std::f64::consts::TAU).contains(&t)));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 0..100 {
            let size = 1 + i % 7;
            let t = OrthoTransform::<f64>::random(size, i % 2 == 0, &mut rng);
            let f = euler_decompose(&t).unwrap();
            assert!(max_diff(&f.recompose(), t.matrix()) <= 1e-10);
        }
    }

    #[test]
    fn random_special_has_positive_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let t = OrthoTransform::<f64>::random(5, true, &mut rng);
            assert_eq!(t.det_sign(), 1);
            assert!((t.matrix().determinant() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_precision_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = OrthoTransform::<f32>::random(5, false, &mut rng);
        let f = euler_decompose(&t).unwrap();
        let err = (f.recompose() - t.matrix())
            .iter()
            .map(|v| v.abs())
            .fold(0.0f32, f32::max);
        assert!(err < 1e-5);
    }
}
