//! Density matrices, their expansion in the graded basis, the projection onto
//! identity + vector + pseudoscalar components, and states built from
//! coefficient vectors.
//!
//! Every state on `n` qubits can be written as
//!
//! ```text
//!     ρ = (1/d) (1 + Σ_j g_j Γ_j + Σ_{j<k} g_{jk} Γ_{jk} + … + g_0 Γ_0),   d = 2^n
//! ```
//!
//! with real coefficients `g_S = Tr(ρ Γ_S)`. The projection keeps only `1`, the
//! `Γ_j` and `Γ_0`; it maps states to states, and the kept coefficients satisfy
//! `Σ_{j=0}^{2n} g_j² ≤ 1`. Conversely every point of that ball is a state.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::clifford::{graded_basis, GeneratorSet, GradedBasisElement};
use crate::dense::{hermitian_eigenvalues, hermiticity_residual, CMatrix};
use crate::error::{domain, Error, Result};
use crate::pauli::{PauliString, MAX_DENSE_QUBITS};
use crate::scalar::{cplx, creal, Real, Tolerances, C};

/// A validated density matrix on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    n: usize,
    mat: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates with the default tolerances for `T`.
    pub fn new(mat: CMatrix<T>) -> Result<Self> {
        Self::with_tolerances(mat, &Tolerances::for_scalar::<T>())
    }

    /// Accepts a matrix that is Hermitian within `tol.herm`, has trace within
    /// `tol.trace` of one and no eigenvalue below `-tol.psd`. The stored matrix
    /// is the Hermitian part rescaled to unit trace.
    pub fn with_tolerances(mat: CMatrix<T>, tol: &Tolerances) -> Result<Self> {
        let n = qubits_for_side(mat.nrows(), mat.ncols())?;
        let herm = hermiticity_residual(&mat);
        if herm > tol.herm {
            return Err(Error::InvalidState(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re.as_f64() - 1.0).abs() > tol.trace || tr.im.as_f64().abs() > tol.trace {
            return Err(Error::InvalidState(format!(
                "trace is {} + {}i",
                tr.re.as_f64(),
                tr.im.as_f64()
            )));
        }
        let herm_part = (&mat + mat.adjoint()) * creal(T::of(0.5) / tr.re);
        let min_ev = hermitian_eigenvalues(&herm_part)[0].as_f64();
        if min_ev < -tol.psd {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min_ev:e})"
            )));
        }
        Ok(DensityMatrix { n, mat: herm_part })
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalised, nonzero) vector.
    pub fn from_pure(psi: &DVector<C<T>>) -> Result<Self> {
        let norm = psi.norm();
        if norm <= T::zero() {
            return domain("zero state vector");
        }
        let v = psi / creal(norm);
        let mat = &v * v.adjoint();
        let n = qubits_for_side(mat.nrows(), mat.ncols())?;
        Ok(DensityMatrix { n, mat })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let d = 1usize << n;
        let mat = CMatrix::<T>::identity(d, d) * creal(T::one() / T::of(d as f64));
        Ok(DensityMatrix { n, mat })
    }

    /// Trusted constructor for matrices that are states by construction.
    pub(crate) fn from_trusted(n: usize, mat: CMatrix<T>) -> Self {
        DensityMatrix { n, mat }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.mat
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigenvalues(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> T {
        self.eigenvalues()[0]
    }

    /// `Re Tr(ρ P)` for a Pauli string.
    pub fn expectation(&self, p: &PauliString) -> Result<T> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        Ok(p.trace_with(&self.mat)?.re)
    }

    /// Serialises as `{"n": .., "data": [[re, im], ...]}` in row-major order
    /// with 17 significant digits per number.
    pub fn to_json(&self) -> String {
        let mut s = format!("{{\"n\": {}, \"data\": [", self.n);
        let d = self.dim();
        for r in 0..d {
            for c in 0..d {
                if r + c > 0 {
                    s.push_str(", ");
                }
                let z = self.mat[(r, c)];
                s.push_str(&format!(
                    "[{:.16e}, {:.16e}]",
                    z.re.as_f64(),
                    z.im.as_f64()
                ));
            }
        }
        s.push_str("]}");
        s
    }

    /// Parses the document written by [`DensityMatrix::to_json`] and validates it.
    pub fn from_json(doc: &str) -> Result<Self> {
        let raw: StateDocument =
            serde_json::from_str(doc).map_err(|e| Error::Format(e.to_string()))?;
        check_qubits(raw.n)?;
        let d = 1usize << raw.n;
        if raw.data.len() != d * d {
            return Err(Error::Format(format!(
                "expected {} entries for n = {}, found {}",
                d * d,
                raw.n,
                raw.data.len()
            )));
        }
        let mat = CMatrix::from_row_iterator(
            d,
            d,
            raw.data.iter().map(|[re, im]| cplx(T::of(*re), T::of(*im))),
        );
        Self::new(mat)
    }
}

#[derive(Deserialize)]
struct StateDocument {
    n: usize,
    data: Vec<[f64; 2]>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return domain("states need at least one qubit");
    }
    if n > MAX_DENSE_QUBITS {
        return Err(Error::Capacity {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn qubits_for_side(rows: usize, cols: usize) -> Result<usize> {
    if rows != cols {
        return Err(Error::InvalidState(format!("matrix is {rows}x{cols}")));
    }
    if rows < 2 || !rows.is_power_of_two() {
        return Err(Error::InvalidState(format!(
            "side {rows} is not a power of two >= 2"
        )));
    }
    let n = rows.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

fn check_gens<T: Real>(rho: &DensityMatrix<T>, gens: &GeneratorSet) -> Result<()> {
    if rho.n != gens.n() {
        return Err(Error::DimensionMismatch {
            left: rho.n,
            right: gens.n(),
        });
    }
    Ok(())
}

/// Coefficients `g_0, g_1, …, g_{2n}` on the extended generator set.
///
/// Index `0` is the pseudoscalar coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GVector<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Real> GVector<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 {
            return domain("GVector needs at least one qubit");
        }
        if values.len() != 2 * n + 1 {
            return domain(format!(
                "GVector for n = {n} needs {} entries, got {}",
                2 * n + 1,
                values.len()
            ));
        }
        Ok(GVector { n, values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![T::zero(); 2 * n + 1])
    }

    /// Zero-pads the first `prefix.len()` extended coefficients.
    pub fn from_prefix(n: usize, prefix: &[T]) -> Result<Self> {
        if prefix.len() > 2 * n + 1 {
            return domain(format!(
                "{} coefficients exceed the {} extended generators",
                prefix.len(),
                2 * n + 1
            ));
        }
        let mut values = vec![T::zero(); 2 * n + 1];
        values[..prefix.len()].copy_from_slice(prefix);
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize) -> T {
        self.values[j]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn norm_sq(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + *v * *v)
    }
}

/// All `4^n` coefficients `Tr(ρ E)` in graded-basis order.
#[derive(Debug, Clone)]
pub struct GradedExpansion<T: Real> {
    n: usize,
    elements: Vec<GradedBasisElement>,
    coeffs: Vec<T>,
}

impl<T: Real> GradedExpansion<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GradedBasisElement, T)> + '_ {
        self.elements.iter().zip(self.coeffs.iter().copied())
    }

    /// Coefficient of the element with the given (sorted) generator indices.
    pub fn coefficient(&self, indices: &[usize]) -> Option<T> {
        self.elements
            .iter()
            .position(|e| e.indices == indices)
            .map(|i| self.coeffs[i])
    }

    pub fn identity_coefficient(&self) -> T {
        self.coeffs[0]
    }

    /// The vector and pseudoscalar coefficients.
    pub fn gvector(&self) -> GVector<T> {
        let m = 2 * self.n;
        let mut values = Vec::with_capacity(m + 1);
        values.push(*self.coeffs.last().expect("nonempty expansion"));
        values.extend_from_slice(&self.coeffs[1..=m]);
        GVector {
            n: self.n,
            values,
        }
    }

    /// `(1/d) Σ_E c_E E`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let d = 1usize << self.n;
        let mut m = CMatrix::<T>::zeros(d, d);
        let scale = T::one() / T::of(d as f64);
        for (e, c) in self.iter() {
            e.string.add_scaled_into(creal(c * scale), &mut m);
        }
        m
    }
}

/// Expands `rho` in the graded basis of `gens`.
pub fn expand<T: Real>(rho: &DensityMatrix<T>, gens: &GeneratorSet) -> Result<GradedExpansion<T>> {
    check_gens(rho, gens)?;
    let tol = Tolerances::for_scalar::<T>();
    let elements = graded_basis(gens);
    let mut coeffs = Vec::with_capacity(elements.len());
    for e in &elements {
        let c = e.string.trace_with(rho.matrix())?;
        if c.im.as_f64().abs() > tol.herm {
            return Err(Error::InvalidState(format!(
                "coefficient of {:?} has imaginary part {:e}",
                e.indices,
                c.im.as_f64()
            )));
        }
        coeffs.push(c.re);
    }
    Ok(GradedExpansion {
        n: rho.n,
        elements,
        coeffs,
    })
}

/// All `2n + 1` extended coefficients `g_j = Tr(ρ Γ_j)`.
pub fn gvector_full<T: Real>(rho: &DensityMatrix<T>, gens: &GeneratorSet) -> Result<GVector<T>> {
    check_gens(rho, gens)?;
    let values = gens
        .extended_set()
        .into_iter()
        .map(|g| rho.expectation(g))
        .collect::<Result<Vec<T>>>()?;
    GVector::new(rho.n, values)
}

/// Coefficients of the first `k` observables `(Γ_0, …, Γ_{k-1})`; the remaining
/// entries are zero.
pub fn gvector<T: Real>(rho: &DensityMatrix<T>, gens: &GeneratorSet, k: usize) -> Result<GVector<T>> {
    check_gens(rho, gens)?;
    if k == 0 || k > gens.extended_len() {
        return domain(format!(
            "K = {k} outside 1..={} for n = {}",
            gens.extended_len(),
            gens.n()
        ));
    }
    let mut values = vec![T::zero(); gens.extended_len()];
    for (j, v) in values.iter_mut().enumerate().take(k) {
        *v = rho.expectation(gens.extended(j)?)?;
    }
    GVector::new(rho.n, values)
}

/// `(1/d)(1 + Σ_{j=0}^{2n} g_j Γ_j)` without any validation.
pub(crate) fn assemble<T: Real>(g: &GVector<T>, gens: &GeneratorSet) -> Result<CMatrix<T>> {
    let d = gens.dim();
    let scale = T::one() / T::of(d as f64);
    let mut m = CMatrix::<T>::identity(d, d) * creal(scale);
    for (j, gamma) in gens.extended_set().into_iter().enumerate() {
        let c = g.get(j);
        if c != T::zero() {
            gamma.add_scaled_into(creal(c * scale), &mut m);
        }
    }
    Ok(m)
}

/// Keeps only the identity, vector and pseudoscalar components of `rho`.
///
/// The result is validated as a state with the default tolerances.
pub fn project<T: Real>(rho: &DensityMatrix<T>, gens: &GeneratorSet) -> Result<DensityMatrix<T>> {
    let g = gvector_full(rho, gens)?;
    DensityMatrix::new(assemble(&g, gens)?)
}

/// The state `(1/d)(1 + Σ_j g_j Γ_j)` for a point of the unit ball.
pub fn from_gvector<T: Real>(g: &GVector<T>, gens: &GeneratorSet) -> Result<DensityMatrix<T>> {
    if g.n() != gens.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: gens.n(),
        });
    }
    let tol = Tolerances::for_scalar::<T>();
    let norm_sq = g.norm_sq().as_f64();
    if norm_sq > 1.0 + tol.psd {
        return Err(Error::BallViolation(norm_sq));
    }
    // A = Σ g_j Γ_j squares to |g|² · 1, so the spectrum is (1 ± |g|)/d.
    Ok(DensityMatrix::from_trusted(gens.n(), assemble(g, gens)?))
}

/// Sampling ensembles for random states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    /// Haar-random pure states.
    PureHaar,
    /// Hilbert–Schmidt measure: `G G† / Tr(G G†)` with `G` a square complex Ginibre matrix.
    MixedHs,
}

/// Normalised complex Gaussian vector (Haar-distributed direction).
pub fn random_pure_vector<T: Real, R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<C<T>> {
    let v = DVector::from_fn(dim, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        cplx(T::of(re), T::of(im))
    });
    let norm = v.norm();
    v / creal(norm)
}

/// Deterministic random state for a given seed.
pub fn random_state<T: Real>(n: usize, seed: u64, ensemble: Ensemble) -> Result<DensityMatrix<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_with(n, &mut rng, ensemble)
}

/// Random state drawn from a caller-supplied generator.
pub fn random_state_with<T: Real, R: rand::Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    ensemble: Ensemble,
) -> Result<DensityMatrix<T>> {
    check_qubits(n)?;
    let d = 1usize << n;
    let mat = match ensemble {
        Ensemble::PureHaar => {
            let v = random_pure_vector::<T, _>(d, rng);
            &v * v.adjoint()
        }
        Ensemble::MixedHs => {
            let g = CMatrix::<T>::from_fn(d, d, |_, _| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                cplx(T::of(re), T::of(im))
            });
            let w = &g * g.adjoint();
            let tr = w.trace().re;
            let w = w * creal(T::one() / tr);
            // exact Hermitian symmetrisation
            (&w + w.adjoint()) * creal(T::of(0.5))
        }
    };
    Ok(DensityMatrix::from_trusted(n, mat))
}
