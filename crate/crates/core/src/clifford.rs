//! The anti-commuting generator set on `n` qubits and its graded operator basis.
//!
//! Generators come from the Jordan–Wigner construction
//!
//! ```text
//!     Γ_{2j-1} = Z^{⊗(j-1)} ⊗ X ⊗ 1^{⊗(n-j)}
//!     Γ_{2j}   = Z^{⊗(j-1)} ⊗ Y ⊗ 1^{⊗(n-j)}
//! ```
//!
//! Every product of `m` distinct generators (indices ascending) is multiplied by
//! `i^{m(m-1)/2}`, which makes it Hermitian and involutory for every grade. The
//! top-grade element is the pseudoscalar `Γ₀ = i^n Γ₁⋯Γ₂ₙ`. For `n = 1` this is
//! `iXY = -Z`.
//!
//! Indices: generators are numbered `1..=2n`; the *extended* index `0` refers to
//! `Γ₀`.

use itertools::Itertools;

use crate::dense::CMatrix;
use crate::error::{domain, Error, Result};
use crate::pauli::PauliString;
use crate::scalar::{creal, Real};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    gammas: Vec<PauliString>,
    gamma0: PauliString,
}

/// One element of the graded operator basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasisElement {
    /// Strictly increasing generator indices in `1..=2n`.
    pub indices: Vec<usize>,
    pub string: PauliString,
}

impl GradedBasisElement {
    pub fn grade(&self) -> usize {
        self.indices.len()
    }
}

/// Phase exponent `m(m-1)/2 mod 4` that makes a grade-`m` product Hermitian.
pub fn hermitizing_phase(grade: usize) -> u8 {
    ((grade * grade.saturating_sub(1) / 2) % 4) as u8
}

/// Builds `Γ₁..Γ₂ₙ` and `Γ₀` for `n` qubits.
pub fn jordan_wigner(n: usize) -> Result<GeneratorSet> {
    if n == 0 {
        return domain("jordan_wigner needs at least one qubit");
    }
    let mut gammas = Vec::with_capacity(2 * n);
    for j in 0..n {
        for symbol in ['X', 'Y'] {
            let mut g = PauliString::single(n, j, symbol)?;
            for q in 0..j {
                g = &g * &PauliString::single(n, q, 'Z')?;
            }
            gammas.push(g);
        }
    }
    let mut top = PauliString::identity(n);
    for g in &gammas {
        top = &top * g;
    }
    let gamma0 = top.times_i_pow(hermitizing_phase(2 * n));
    Ok(GeneratorSet { n, gammas, gamma0 })
}

impl GeneratorSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hilbert space dimension `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Number of extended elements, `2n + 1`.
    pub fn extended_len(&self) -> usize {
        2 * self.n + 1
    }

    /// `Γ_j` for `j ∈ 1..=2n`.
    pub fn generator(&self, j: usize) -> Result<&PauliString> {
        if j == 0 || j > 2 * self.n {
            return domain(format!("generator index {j} outside 1..={}", 2 * self.n));
        }
        Ok(&self.gammas[j - 1])
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gammas
    }

    pub fn gamma0(&self) -> &PauliString {
        &self.gamma0
    }

    /// `Γ_j` for extended index `j ∈ 0..=2n`.
    pub fn extended(&self, j: usize) -> Result<&PauliString> {
        if j == 0 {
            Ok(&self.gamma0)
        } else {
            self.generator(j)
        }
    }

    /// `(Γ₀, Γ₁, …, Γ₂ₙ)` in extended order.
    pub fn extended_set(&self) -> Vec<&PauliString> {
        std::iter::once(&self.gamma0).chain(&self.gammas).collect()
    }

    /// Hermitized product of the generators in `indices` (any order accepted,
    /// sorted internally; repeats rejected).
    pub fn graded_element(&self, indices: &[usize]) -> Result<GradedBasisElement> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("repeated generator index in {indices:?}"));
        }
        let mut s = PauliString::identity(self.n);
        for &j in &idx {
            s = &s * self.generator(j)?;
        }
        let s = s.times_i_pow(hermitizing_phase(idx.len()));
        Ok(GradedBasisElement {
            indices: idx,
            string: s,
        })
    }

    /// Dense renderings of `(Γ₀, …, Γ₂ₙ)`.
    pub fn dense_extended<T: Real>(&self) -> Result<Vec<CMatrix<T>>> {
        self.extended_set().iter().map(|g| g.to_dense()).collect()
    }

    /// Set with `Γ₀` substituted for `Γ_j`; still a generating set.
    pub fn with_pseudoscalar_at(&self, j: usize) -> Result<Vec<PauliString>> {
        self.generator(j)?;
        let mut v = self.gammas.clone();
        v[j - 1] = self.gamma0.clone();
        Ok(v)
    }
}

/// All `4^n` basis elements, grades ascending and index sets lexicographic
/// within a grade.
pub fn graded_basis(gens: &GeneratorSet) -> Vec<GradedBasisElement> {
    let m = 2 * gens.n;
    let mut out = Vec::with_capacity(1 << m);
    for grade in 0..=m {
        for combo in (1..=m).combinations(grade) {
            out.push(
                gens.graded_element(&combo)
                    .expect("combinations are strictly increasing and in range"),
            );
        }
    }
    out
}

/// Projectors onto the `+1` and `-1` eigenspaces: `P^b = (1 + (-1)^b g) / 2`.
pub fn eigenprojectors<T: Real>(g: &PauliString) -> Result<(CMatrix<T>, CMatrix<T>)> {
    if !g.is_involution() {
        return Err(Error::Domain(format!("{g} is not a Hermitian involution")));
    }
    let dense = g.to_dense::<T>()?;
    let d = dense.nrows();
    let id = CMatrix::<T>::identity(d, d);
    let half = creal(T::of(0.5));
    let p0 = (&id + &dense) * half;
    let p1 = (&id - &dense) * half;
    Ok((p0, p1))
}
