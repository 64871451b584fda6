//! Anti-commuting Clifford observables on `n` qubits.
//!
//! Pauli strings in symplectic form, the Jordan–Wigner generators
//! `Γ₁..Γ₂ₙ` with the pseudoscalar `Γ₀`, density matrices and their expansion
//! in the graded operator basis, rotor unitaries for orthogonal transforms of
//! the generators, and entropic uncertainty bounds for measuring `Γ₀..Γ_{K-1}`.
//!
//! Numerical code is generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix the scalar type.
//!
//! ```
//! use clifford_ur::{jordan_wigner, closed_form_min, RenyiOrder};
//!
//! let gens = jordan_wigner(2).unwrap();
//! assert_eq!(gens.generator(1).unwrap().to_label(), "XI");
//! let bound = closed_form_min::<f64>(5, RenyiOrder::Shannon).unwrap();
//! assert!((bound.value - 0.8).abs() < 1e-15);
//! ```

pub mod clifford;
pub mod dense;
pub mod error;
pub mod pauli;
pub mod rotors;
pub mod scalar;
pub mod states;
pub mod uncertainty;

pub use clifford::{eigenprojectors, graded_basis, jordan_wigner, GeneratorSet, GradedBasisElement};
pub use error::{Error, Result};
pub use pauli::{PauliString, MAX_DENSE_QUBITS};
pub use rotors::{
    euler_decompose, flip_unitary, lift, plane_rotor, reduce_to_axis, AxisReduction,
    EulerFactorization, OrthoTransform,
};
pub use scalar::{Real, Tolerances};
pub use states::{
    expand, from_gvector, gvector, gvector_full, project, random_state, DensityMatrix, Ensemble,
    GVector, GradedExpansion,
};
pub use uncertainty::{
    closed_form_min, concavity_profile, entropy_average, find_minimizer, maassen_uffink_bound,
    observable_entropy, renyi_entropy, BoundKind, EntropyReport, MinimizerConfig, RenyiOrder,
};

pub type CMatrix64 = dense::CMatrix<f64>;
pub type CMatrix32 = dense::CMatrix<f32>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type GVector64 = GVector<f64>;
pub type GVector32 = GVector<f32>;
pub type OrthoTransform64 = OrthoTransform<f64>;
pub type OrthoTransform32 = OrthoTransform<f32>;
pub type EntropyReport64 = EntropyReport<f64>;
pub type EntropyReport32 = EntropyReport<f32>;
