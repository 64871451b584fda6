//! Scalar abstraction shared by every dense routine in the crate.
//!
//! The symplectic Pauli algebra is exact and never touches this trait. Everything
//! that renders operators as matrices, samples states or evaluates entropies is
//! generic over [`Real`], which is implemented for `f32` and `f64`.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating point type usable as the base field of the dense layer.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Default + Send + Sync + 'static
{
    /// Multiplier applied to the double-precision default tolerances.
    const TOLERANCE_SCALE: f64;

    /// Converts a literal. Panics only if the value is not representable at all.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Real for f64 {
    const TOLERANCE_SCALE: f64 = 1.0;
}

impl Real for f32 {
    const TOLERANCE_SCALE: f64 = 1e5;
}

/// Complex number over a [`Real`] field.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

/// `|z|` without requiring `num_traits::Float` on the base field.
#[inline]
pub fn modulus<T: Real>(z: C<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// Numerical tolerances for the dense layer.
///
/// Double-precision defaults sit an order of magnitude above the rounding
/// accumulated at the dense size limit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Hermiticity of states and imaginary parts of expansion coefficients.
    pub herm: f64,
    /// Deviation of the trace from one.
    pub trace: f64,
    /// Accepted negative eigenvalue magnitude.
    pub psd: f64,
    /// Reconstruction and pipeline agreement.
    pub recon: f64,
    /// Orthogonality of real transforms and unitarity of bases.
    pub orth: f64,
    /// Residual of lifted rotor conjugation.
    pub lift: f64,
    /// Optimisation gap.
    pub opt: f64,
}

impl Tolerances {
    pub const F64: Tolerances = Tolerances {
        herm: 1e-10,
        trace: 1e-10,
        psd: 1e-9,
        recon: 1e-8,
        orth: 1e-10,
        lift: 1e-8,
        opt: 1e-6,
    };

    /// Defaults scaled to the precision of `T`.
    pub fn for_scalar<T: Real>() -> Self {
        let s = T::TOLERANCE_SCALE;
        let base = Self::F64;
        Tolerances {
            herm: base.herm * s,
            trace: base.trace * s,
            psd: base.psd * s,
            recon: base.recon * s,
            orth: base.orth * s,
            lift: base.lift * s,
            opt: (base.opt * s).min(1e-2),
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::F64
    }
}
