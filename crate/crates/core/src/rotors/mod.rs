//! Unitaries acting on the extended generator set by conjugation.
//!
//! A plane rotor for extended indices `j ≠ k` satisfies
//!
//! ```text
//!     U Γ_j U† =  cos θ Γ_j + sin θ Γ_k
//!     U Γ_k U† = -sin θ Γ_j + cos θ Γ_k
//! ```
//!
//! and fixes every other `Γ_i`. Orthogonal transforms of the generator span are
//! lifted by composing rotors along their Euler factorisation.

mod euler;

pub use euler::{
    euler_decompose, orthogonality_residual, plane_rotation, EulerFactorization,
    OrthoTransform,
};

use crate::clifford::GeneratorSet;
use crate::dense::{conjugate, max_abs_diff, CMatrix};
use crate::error::{domain, Error, Result};
use crate::pauli::PauliString;
use crate::scalar::{creal, Real};
use crate::states::{gvector_full, DensityMatrix};

fn check_extended(gens: &GeneratorSet, j: usize) -> Result<()> {
    if j > 2 * gens.n() {
        return domain(format!(
            "extended index {j} outside 0..={}",
            2 * gens.n()
        ));
    }
    Ok(())
}

/// `a·1 + b·P` for a Pauli string `P`.
fn affine<T: Real>(a: T, b: T, p: &PauliString) -> Result<CMatrix<T>> {
    let d = 1usize << p.n();
    let mut m = CMatrix::<T>::identity(d, d) * creal(a);
    // to_dense enforces the size guard before we write into m
    p.to_dense::<T>()?;
    p.add_scaled_into(creal(b), &mut m);
    Ok(m)
}

/// `cos(θ/2)·1 + sin(θ/2)·Γ_k Γ_j`, valid for any pair of extended indices.
pub fn plane_rotor_direct<T: Real>(
    gens: &GeneratorSet,
    j: usize,
    k: usize,
    theta: T,
) -> Result<CMatrix<T>> {
    check_extended(gens, j)?;
    check_extended(gens, k)?;
    if j == k {
        return domain("plane rotor needs two distinct indices");
    }
    let half = theta / T::of(2.0);
    let bivector = gens.extended(k)? * gens.extended(j)?;
    affine(half.cos(), half.sin(), &bivector)
}

/// Unitary `V` with `V Γ_i V† = Γ_{family[i-1]}` for `i = 1..=2n`.
///
/// `family` lists `2n` distinct extended indices. `V` is built from quarter-turn
/// swaps `Γ_a → Γ_b, Γ_b → -Γ_a`, with a half-turn in a free plane to repair a
/// wrong sign.
pub fn permutation_unitary<T: Real>(gens: &GeneratorSet, family: &[usize]) -> Result<CMatrix<T>> {
    let m = 2 * gens.n();
    if family.len() != m {
        return domain(format!("family needs {m} indices, got {}", family.len()));
    }
    for (i, &f) in family.iter().enumerate() {
        check_extended(gens, f)?;
        if family[..i].contains(&f) {
            return domain(format!("index {f} repeated in family"));
        }
    }
    let d = gens.dim();
    let mut w = CMatrix::<T>::identity(d, d);
    // images[i] = (a, s): current W Γ_i W† = s Γ_a
    let mut images: Vec<(usize, i8)> = (0..=m).map(|i| (i, 1)).collect();
    let quarter = T::frac_pi_2();

    for i in 1..=m {
        let target = family[i - 1];
        let (a, _) = images[i];
        if a != target {
            let s = plane_rotor_direct(gens, a, target, quarter)?;
            w = &s * &w;
            for img in images.iter_mut() {
                if img.0 == a {
                    img.0 = target;
                } else if img.0 == target {
                    *img = (a, -img.1);
                }
            }
        }
        if images[i].1 < 0 {
            let free = (0..=m)
                .find(|c| !family[..i].contains(c))
                .expect("2n+1 indices leave one free slot");
            let h = plane_rotor_direct(gens, target, free, T::pi())?;
            w = &h * &w;
            for img in images.iter_mut() {
                if img.0 == target || img.0 == free {
                    img.1 = -img.1;
                }
            }
        }
    }
    Ok(w)
}

/// Plane rotor in the `(j, k)` plane of the extended set.
///
/// Pairs inside `1..=2n` use the direct bivector exponential. Pairs touching
/// `Γ₀` conjugate the `(1, 2)` rotor by a permutation unitary that carries
/// `Γ₁, Γ₂` to `Γ_j, Γ_k`.
pub fn plane_rotor<T: Real>(
    gens: &GeneratorSet,
    j: usize,
    k: usize,
    theta: T,
) -> Result<CMatrix<T>> {
    check_extended(gens, j)?;
    check_extended(gens, k)?;
    if j == k {
        return domain("plane rotor needs two distinct indices");
    }
    if j != 0 && k != 0 {
        return plane_rotor_direct(gens, j, k, theta);
    }
    let m = 2 * gens.n();
    let mut family = vec![j, k];
    family.extend((0..=m).filter(|&i| i != j && i != k).take(m - 2));
    let v = permutation_unitary::<T>(gens, &family)?;
    let r12 = plane_rotor_direct(gens, 1, 2, theta)?;
    Ok(&v * r12 * v.adjoint())
}

/// `Γ₀ Γ_j`: flips the signs of `Γ_j` and `Γ₀`, fixes the rest.
pub fn flip_unitary<T: Real>(gens: &GeneratorSet, j: usize) -> Result<CMatrix<T>> {
    if j == 0 || j > 2 * gens.n() {
        return domain(format!("flip index {j} outside 1..={}", 2 * gens.n()));
    }
    (gens.gamma0() * gens.generator(j)?).to_dense()
}

/// Maps matrix row `r` of a transform to an extended index.
fn index_map(gens: &GeneratorSet, size: usize) -> Result<usize> {
    let m = 2 * gens.n();
    if size == m {
        Ok(1)
    } else if size == m + 1 {
        Ok(0)
    } else {
        domain(format!(
            "transform size {size} must be 2n = {m} or 2n+1 = {}",
            m + 1
        ))
    }
}

/// Unitary `U(T)` with `U Γ_k U† = Σ_j T_{jk} Γ_j`.
///
/// A transform of size `2n` acts on `Γ₁..Γ₂ₙ` and may be improper; it then sends
/// `Γ₀` to `det(T) Γ₀`. A transform of size `2n+1` acts on `(Γ₀, …, Γ₂ₙ)` and
/// must be special orthogonal.
pub fn lift<T: Real>(t: &OrthoTransform<T>, gens: &GeneratorSet) -> Result<CMatrix<T>> {
    let offset = index_map(gens, t.size())?;
    if offset == 0 && t.det_sign() < 0 {
        return Err(Error::Orientation);
    }
    let f = euler_decompose(t)?;
    let d = gens.dim();
    let mut u = if f.reflection < 0 {
        flip_unitary(gens, 1)?
    } else {
        CMatrix::<T>::identity(d, d)
    };
    for &(j, k, theta) in &f.angles {
        if theta == T::zero() {
            continue;
        }
        u *= plane_rotor(gens, j + offset, k + offset, theta)?;
    }
    Ok(u)
}

/// `max_k max |U Γ_k U† − Σ_j T_{jk} Γ_j|` over the indices `t` acts on.
pub fn lift_residual<T: Real>(
    u: &CMatrix<T>,
    t: &OrthoTransform<T>,
    gens: &GeneratorSet,
) -> Result<f64> {
    let offset = index_map(gens, t.size())?;
    let dense = gens.dense_extended::<T>()?;
    let mat = t.matrix();
    let mut worst = 0.0f64;
    for k in 0..t.size() {
        let lhs = conjugate(u, &dense[k + offset]);
        let mut rhs = CMatrix::<T>::zeros(gens.dim(), gens.dim());
        for j in 0..t.size() {
            rhs += &dense[j + offset] * creal(mat[(j, k)]);
        }
        worst = worst.max(max_abs_diff(&lhs, &rhs));
    }
    Ok(worst)
}

/// `½ρ + ½ U(F_j) ρ U(F_j)†`.
pub fn flip_average<T: Real>(
    rho: &CMatrix<T>,
    gens: &GeneratorSet,
    j: usize,
) -> Result<CMatrix<T>> {
    let f = flip_unitary::<T>(gens, j)?;
    Ok((rho + conjugate(&f, rho)) * creal(T::of(0.5)))
}

/// Output of [`reduce_to_axis`].
#[derive(Debug, Clone)]
pub struct AxisReduction<T: Real> {
    /// `(1/d)(1 + √ℓ Γ₁)`, obtained by rotating and flip-averaging.
    pub rho_hat: DensityMatrix<T>,
    /// The rotation applied before flip-averaging.
    pub unitary: CMatrix<T>,
    /// `Σ_{j=0}^{2n} g_j²`.
    pub ell: T,
}

/// Squared norms below this are treated as a zero vector part.
const DEGENERATE: f64 = 1e-30;
/// Rotations whose half-angle cosine `1 + cos` falls below this start with a
/// half turn in the `(1, 2)` plane.
const ANTIPODAL: f64 = 1e-6;

/// Rotates `rho` so its extended vector lies along `Γ₁`, then averages over the
/// sign flips of `Γ₂..Γ₂ₙ` to remove every other component.
///
/// The rotation is composed of three reflections pairs: `R = Γ₁ m̂` aligning the
/// generator part with `Γ₁`, `R' = Γ₂ n̂` exchanging `Γ₀` and `Γ₂`, and
/// `R'' = Γ₁ k̂` folding the former pseudoscalar part onto `Γ₁`. Conjugating the
/// result back with the returned unitary reproduces [`crate::states::project`].
pub fn reduce_to_axis<T: Real>(
    rho: &DensityMatrix<T>,
    gens: &GeneratorSet,
) -> Result<AxisReduction<T>> {
    let g = gvector_full(rho, gens)?;
    let mut coeffs = g.as_slice().to_vec();
    let m = 2 * gens.n();
    let d = gens.dim();
    let g1 = gens.generator(1)?;
    let g2 = gens.generator(2)?;

    let l_prime = coeffs[1..].iter().fold(T::zero(), |acc, v| acc + *v * *v);
    let g0 = coeffs[0];
    let ell = l_prime + g0 * g0;
    let mut u = CMatrix::<T>::identity(d, d);

    if l_prime.as_f64() > DEGENERATE {
        let root = l_prime.sqrt();
        if (T::one() + coeffs[1] / root).as_f64() < ANTIPODAL {
            u = plane_rotor_direct(gens, 1, 2, T::pi())? * u;
            coeffs[1] = -coeffs[1];
            coeffs[2] = -coeffs[2];
        }
        // R = Γ₁ m̂ = c((1 + g₁/√ℓ')·1 + Σ_{j≥2} (g_j/√ℓ') Γ₁Γ_j)
        let cos = coeffs[1] / root;
        let c = T::one() / (T::of(2.0) * (T::one() + cos)).sqrt();
        let mut r = CMatrix::<T>::identity(d, d) * creal(c * (T::one() + cos));
        for (j, gj) in coeffs.iter().enumerate().take(m + 1).skip(2) {
            if *gj != T::zero() {
                (g1 * gens.generator(j)?).add_scaled_into(creal(c * *gj / root), &mut r);
            }
        }
        u = r * u;
    }

    // R' = Γ₂ (Γ₀ + Γ₂)/√2 = (1 + Γ₂Γ₀)/√2
    let h = T::one() / T::of(2.0).sqrt();
    let r_prime = affine(h, h, &(g2 * gens.gamma0()))?;
    u = r_prime * u;

    if ell.as_f64() > DEGENERATE {
        // R'' = Γ₁ k̂ with k̂ = (ĝ'' + Γ₁)/√(2(1 + a)), a = √ℓ'/√ℓ
        let root_ell = ell.sqrt();
        let a = l_prime.sqrt() / root_ell;
        let c = T::one() / (T::of(2.0) * (T::one() + a)).sqrt();
        let r2 = affine(c * (T::one() + a), c * g0 / root_ell, &(g1 * g2))?;
        u = r2 * u;
    }

    let mut hat = conjugate(&u, rho.matrix());
    for j in 2..=m {
        hat = flip_average(&hat, gens, j)?;
    }
    // exact Hermitian symmetrisation against rounding
    let hat = (&hat + hat.adjoint()) * creal(T::of(0.5));
    Ok(AxisReduction {
        rho_hat: DensityMatrix::from_trusted(gens.n(), hat),
        unitary: u,
        ell,
    })
}
