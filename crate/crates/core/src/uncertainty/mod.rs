//! Entropies of two-outcome measurements of the extended generators and the
//! lower bounds on their averages.
//!
//! Every entropy is in bits. Measuring `Γ_j` on `ρ` gives outcome `b` with
//! probability `(1 + (-1)^b g_j)/2`, `g_j = Tr(ρ Γ_j)`, so all averages depend
//! on the state only through its extended vector.

mod concavity;
mod minimize;

pub use concavity::{
    concavity_f, concavity_profile, finite_difference_errors, uniform_grid, ConcavityPoint,
};
pub use minimize::{
    ball_objective, find_minimizer, pure_state_minimum, sample_ball, EntropyReport,
    MinimizerConfig,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{eigenprojectors, GeneratorSet};
use crate::dense::{trace_re, unitarity_residual, CMatrix};
use crate::error::{domain, Error, Result};
use crate::pauli::PauliString;
use crate::scalar::{modulus, Real, Tolerances};
use crate::states::DensityMatrix;

/// Order `α` of a Rényi entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    /// `α = 1`
    Shannon,
    /// `α = 2`
    Collision,
    /// `α = ∞`
    Min,
    /// Any other finite `α > 0`.
    Other(f64),
}

impl RenyiOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return domain(format!("Rényi order must be positive, got {alpha}"));
        }
        Ok(if alpha.is_infinite() {
            RenyiOrder::Min
        } else if (alpha - 1.0).abs() < 1e-12 {
            RenyiOrder::Shannon
        } else if alpha == 2.0 {
            RenyiOrder::Collision
        } else {
            RenyiOrder::Other(alpha)
        })
    }

    pub fn alpha(&self) -> f64 {
        match self {
            RenyiOrder::Shannon => 1.0,
            RenyiOrder::Collision => 2.0,
            RenyiOrder::Min => f64::INFINITY,
            RenyiOrder::Other(a) => *a,
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenyiOrder::Min => f.write_str("inf"),
            other => write!(f, "{}", other.alpha()),
        }
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(RenyiOrder::Min),
            _ => {
                let alpha: f64 = t.parse().map_err(|_| Error::Parse {
                    label: t.to_string(),
                    reason: "expected a positive number or \"inf\"".into(),
                })?;
                RenyiOrder::new(alpha)
            }
        }
    }
}

impl Serialize for RenyiOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RenyiOrder::Min => s.serialize_str("inf"),
            other => s.serialize_f64(other.alpha()),
        }
    }
}

impl<'de> Deserialize<'de> for RenyiOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(a) => RenyiOrder::new(a),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

fn log2<T: Real>(x: T) -> T {
    x.ln() / T::ln_2()
}

/// Entropy of an already validated, clipped distribution.
fn entropy_unchecked<T: Real>(p: &[T], order: RenyiOrder) -> T {
    match order {
        RenyiOrder::Shannon => p
            .iter()
            .filter(|v| **v > T::zero())
            .fold(T::zero(), |acc, v| acc - *v * log2(*v)),
        RenyiOrder::Collision => -log2(p.iter().fold(T::zero(), |acc, v| acc + *v * *v)),
        RenyiOrder::Min => -log2(p.iter().fold(T::zero(), |acc, v| acc.max(*v))),
        RenyiOrder::Other(a) => {
            let a = T::of(a);
            let s = p
                .iter()
                .filter(|v| **v > T::zero())
                .fold(T::zero(), |acc, v| acc + v.powf(a));
            log2(s) / (T::one() - a)
        }
    }
}

/// Rényi entropy of a probability vector, in bits.
///
/// Entries within the PSD tolerance below zero are clipped; the sum must be
/// one within the trace tolerance.
pub fn renyi_entropy<T: Real>(p: &[T], order: RenyiOrder) -> Result<T> {
    let tol = Tolerances::for_scalar::<T>();
    if p.is_empty() {
        return domain("empty probability vector");
    }
    let sum = p.iter().fold(T::zero(), |acc, v| acc + *v);
    if (sum.as_f64() - 1.0).abs() > tol.trace {
        return domain(format!("probabilities sum to {}", sum.as_f64()));
    }
    if let Some(bad) = p.iter().find(|v| v.as_f64() < -tol.psd) {
        return domain(format!("negative probability {}", bad.as_f64()));
    }
    let clipped: Vec<T> = p.iter().map(|v| v.clamp(T::zero(), T::one())).collect();
    Ok(entropy_unchecked(&clipped, order))
}

/// Outcome distribution `((1+g)/2, (1-g)/2)` clipped to `[0, 1]`.
fn binary_distribution<T: Real>(g: T) -> [T; 2] {
    let half = T::of(0.5);
    let g = g.clamp(-T::one(), T::one());
    [half * (T::one() + g), half * (T::one() - g)]
}

/// Entropy of measuring an involution with expectation `g`.
pub fn binary_entropy<T: Real>(g: T, order: RenyiOrder) -> T {
    entropy_unchecked(&binary_distribution(g), order)
}

/// `d/dg` of [`binary_entropy`]; probabilities are kept away from zero so the
/// Shannon slope stays finite at `g = ±1`.
pub fn binary_entropy_slope<T: Real>(g: T, order: RenyiOrder) -> T {
    let floor = T::of(1e-30);
    let [p, q] = binary_distribution(g);
    let (p, q) = (p.max(floor), q.max(floor));
    let ln2 = T::ln_2();
    let half = T::of(0.5);
    match order {
        RenyiOrder::Shannon => half * (q.ln() - p.ln()) / ln2,
        RenyiOrder::Collision => -T::of(2.0) * g / ((T::one() + g * g) * ln2),
        RenyiOrder::Min => {
            if g == T::zero() {
                T::zero()
            } else {
                -g.signum() / ((T::one() + g.abs()) * ln2)
            }
        }
        RenyiOrder::Other(a) => {
            let a = T::of(a);
            let am1 = a - T::one();
            let s = p.powf(a) + q.powf(a);
            half * a / (T::one() - a) * (p.powf(am1) - q.powf(am1)) / (s * ln2)
        }
    }
}

fn check_observable(g: &PauliString, rho: &DensityMatrix<impl Real>) -> Result<()> {
    if g.n() != rho.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: rho.n(),
        });
    }
    if !g.is_involution() {
        return domain(format!("{g} is not a Hermitian involution"));
    }
    Ok(())
}

/// `H_α(Γ|ρ)` from the expectation `Tr(ρΓ)`.
pub fn observable_entropy<T: Real>(
    rho: &DensityMatrix<T>,
    g: &PauliString,
    order: RenyiOrder,
) -> Result<T> {
    check_observable(g, rho)?;
    Ok(binary_entropy(rho.expectation(g)?, order))
}

/// `H_α(Γ|ρ)` from the eigenprojector probabilities `Tr(Γ^b ρ)`.
pub fn observable_entropy_projectors<T: Real>(
    rho: &DensityMatrix<T>,
    g: &PauliString,
    order: RenyiOrder,
) -> Result<T> {
    check_observable(g, rho)?;
    let (p0, p1) = eigenprojectors::<T>(g)?;
    let probs = [
        trace_re(&(p0 * rho.matrix())),
        trace_re(&(p1 * rho.matrix())),
    ];
    renyi_entropy(&probs, order)
}

fn check_k(gens: &GeneratorSet, k: usize) -> Result<()> {
    if k == 0 || k > 2 * gens.n() + 1 {
        return domain(format!(
            "K = {k} outside 1..={} for n = {}",
            2 * gens.n() + 1,
            gens.n()
        ));
    }
    Ok(())
}

/// `(1/K) Σ_{j<K} H_α(Γ_j|ρ)` over the extended set `Γ₀, Γ₁, …`.
pub fn entropy_average<T: Real>(
    rho: &DensityMatrix<T>,
    gens: &GeneratorSet,
    k: usize,
    order: RenyiOrder,
) -> Result<T> {
    check_k(gens, k)?;
    if rho.n() != gens.n() {
        return Err(Error::DimensionMismatch {
            left: rho.n(),
            right: gens.n(),
        });
    }
    let mut acc = T::zero();
    for j in 0..k {
        acc += observable_entropy(rho, gens.extended(j)?, order)?;
    }
    Ok(acc / T::of(k as f64))
}

/// Whether a closed form is the exact minimum or only a proven lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm<T> {
    pub value: T,
    pub kind: BoundKind,
}

/// Minimum of the `K`-observable average entropy:
///
/// ```text
///     α = 1   1 − 1/K
///     α = 2   1 − log₂(1 + 1/K)
///     α = ∞   1 − log₂(1 + 1/√K)   (lower bound)
/// ```
pub fn closed_form_min<T: Real>(k: usize, order: RenyiOrder) -> Result<ClosedForm<T>> {
    if k == 0 {
        return domain("K must be at least 1");
    }
    let kk = T::of(k as f64);
    let one = T::one();
    Ok(match order {
        RenyiOrder::Shannon => ClosedForm {
            value: one - one / kk,
            kind: BoundKind::Exact,
        },
        RenyiOrder::Collision => ClosedForm {
            value: one - log2(one + one / kk),
            kind: BoundKind::Exact,
        },
        RenyiOrder::Min => ClosedForm {
            value: one - log2(one + one / kk.sqrt()),
            kind: BoundKind::LowerBound,
        },
        RenyiOrder::Other(a) => {
            return domain(format!("no closed form for Rényi order {a}"));
        }
    })
}

/// The two steps bounding the collision average from below:
/// `avg ≥ −log₂((1/2K) Σ (1 + g_j²)) ≥ 1 − log₂(1 + 1/K)`.
///
/// Returns `(average, middle, bound)` for the first `g.len()` expectations.
pub fn collision_chain<T: Real>(g: &[T]) -> Result<(T, T, T)> {
    if g.is_empty() {
        return domain("empty expectation vector");
    }
    let k = T::of(g.len() as f64);
    let avg = ball_objective(g, RenyiOrder::Collision);
    let s = g.iter().fold(T::zero(), |acc, v| acc + T::one() + *v * *v);
    let middle = -log2(s / (T::of(2.0) * k));
    let bound = closed_form_min::<T>(g.len(), RenyiOrder::Collision)?.value;
    Ok((avg, middle, bound))
}

fn check_unitary<T: Real>(u: &CMatrix<T>, label: &str) -> Result<()> {
    if !u.is_square() {
        return domain(format!("basis {label} is not square"));
    }
    let res = unitarity_residual(u);
    if res > Tolerances::for_scalar::<T>().orth {
        return domain(format!("basis {label} is not unitary (residual {res:e})"));
    }
    Ok(())
}

/// `−log₂ max_{i,j} |⟨a_i|b_j⟩|` for bases given as unitary column matrices.
pub fn maassen_uffink_bound<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<T> {
    check_unitary(a, "A")?;
    check_unitary(b, "B")?;
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    let overlaps = a.adjoint() * b;
    let c = overlaps
        .iter()
        .fold(T::zero(), |acc, z| acc.max(modulus(*z)));
    Ok(-log2(c))
}

/// Shannon entropy of measuring `rho` in the basis given by the columns of `basis`.
pub fn basis_entropy<T: Real>(rho: &DensityMatrix<T>, basis: &CMatrix<T>) -> Result<T> {
    check_unitary(basis, "B")?;
    if basis.nrows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: basis.nrows(),
            right: rho.dim(),
        });
    }
    let rotated = basis.adjoint() * rho.matrix() * basis;
    let p: Vec<T> = rotated.diagonal().iter().map(|z| z.re).collect();
    renyi_entropy(&p, RenyiOrder::Shannon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::jordan_wigner;
    use crate::dense::hermitian_eigh;
    use crate::scalar::C;
    use crate::states::{from_gvector, gvector, random_state, Ensemble, GVector};
    use proptest::prelude::*;

    fn plus_state() -> DensityMatrix<f64> {
        let h = C::new(0.5, 0.0);
        DensityMatrix::new(CMatrix::from_element(2, 2, h)).unwrap()
    }

    #[test]
    fn order_parsing() {
        assert_eq!("inf".parse::<RenyiOrder>().unwrap(), RenyiOrder::Min);
        assert_eq!("1".parse::<RenyiOrder>().unwrap(), RenyiOrder::Shannon);
        assert_eq!("2".parse::<RenyiOrder>().unwrap(), RenyiOrder::Collision);
        assert_eq!("0.5".parse::<RenyiOrder>().unwrap(), RenyiOrder::Other(0.5));
        assert!("-1".parse::<RenyiOrder>().is_err());
        assert!("x".parse::<RenyiOrder>().is_err());
        assert_eq!(RenyiOrder::Min.to_string(), "inf");
        assert_eq!(RenyiOrder::Shannon.to_string(), "1");
        let json = serde_json::to_string(&[RenyiOrder::Min, RenyiOrder::Collision]).unwrap();
        assert_eq!(json, r#"["inf",2.0]"#);
        let back: Vec<RenyiOrder> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![RenyiOrder::Min, RenyiOrder::Collision]);
    }

    #[test]
    fn entropy_examples() {
        for order in [
            RenyiOrder::Shannon,
            RenyiOrder::Collision,
            RenyiOrder::Min,
            RenyiOrder::Other(0.5),
            RenyiOrder::Other(3.0),
        ] {
            assert!((renyi_entropy(&[0.5f64, 0.5], order).unwrap() - 1.0).abs() < 1e-15);
            assert_eq!(renyi_entropy(&[1.0, 0.0], order).unwrap(), 0.0);
        }
        let h = renyi_entropy(&[0.75, 0.25], RenyiOrder::Shannon).unwrap();
        // -(3/4) log2(3/4) - (1/4) log2(1/4)
        let expected = 2.0 - 0.75 * 3f64.log2();
        assert!((h - expected).abs() < 1e-15);
        assert!((h - 0.811278124459).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_bad_input() {
        assert!(renyi_entropy(&[0.6, 0.6], RenyiOrder::Shannon).is_err());
        assert!(renyi_entropy(&[1.1, -0.1], RenyiOrder::Shannon).is_err());
        assert!(renyi_entropy::<f64>(&[], RenyiOrder::Shannon).is_err());
        // tiny negative noise is clipped
        assert!(renyi_entropy(&[1.0 + 1e-12, -1e-12], RenyiOrder::Shannon).is_ok());
    }

    #[test]
    fn near_shannon_limit() {
        let p = [0.3f64, 0.7];
        let h1 = renyi_entropy(&p, RenyiOrder::Shannon).unwrap();
        let near = renyi_entropy(&p, RenyiOrder::Other(1.0 + 1e-7)).unwrap();
        assert!((h1 - near).abs() < 1e-6);
        assert_eq!(RenyiOrder::new(1.0).unwrap(), RenyiOrder::Shannon);
    }

    #[test]
    fn observable_examples() {
        let gens = jordan_wigner(1).unwrap();
        let mixed = DensityMatrix::<f64>::maximally_mixed(1).unwrap();
        for j in 0..=2 {
            let g = gens.extended(j).unwrap();
            assert_eq!(observable_entropy(&mixed, g, RenyiOrder::Shannon).unwrap(), 1.0);
        }
        let plus = plus_state();
        let x = gens.generator(1).unwrap();
        let y = gens.generator(2).unwrap();
        assert!(observable_entropy(&plus, x, RenyiOrder::Shannon).unwrap().abs() < 1e-15);
        assert!((observable_entropy(&plus, y, RenyiOrder::Shannon).unwrap() - 1.0).abs() < 1e-15);
        let not_herm = PauliString::from_label("X").unwrap().times_i_pow(1);
        assert!(observable_entropy(&plus, &not_herm, RenyiOrder::Shannon).is_err());
    }

    #[test]
    fn projector_route_agrees() {
        let gens = jordan_wigner(2).unwrap();
        for seed in 0..5 {
            let rho = random_state::<f64>(2, seed, Ensemble::MixedHs).unwrap();
            for j in 0..=4 {
                let g = gens.extended(j).unwrap();
                for order in [RenyiOrder::Shannon, RenyiOrder::Collision, RenyiOrder::Min] {
                    let a = observable_entropy(&rho, g, order).unwrap();
                    let b = observable_entropy_projectors(&rho, g, order).unwrap();
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn average_examples() {
        let gens = jordan_wigner(1).unwrap();
        let plus = plus_state();
        let avg = entropy_average(&plus, &gens, 3, RenyiOrder::Shannon).unwrap();
        assert!((avg - 2.0 / 3.0).abs() < 1e-15);
        let mixed = DensityMatrix::<f64>::maximally_mixed(1).unwrap();
        for k in 1..=3 {
            for order in [RenyiOrder::Shannon, RenyiOrder::Collision, RenyiOrder::Min] {
                assert_eq!(entropy_average(&mixed, &gens, k, order).unwrap(), 1.0);
            }
        }
        assert!(entropy_average(&plus, &gens, 0, RenyiOrder::Shannon).is_err());
        assert!(entropy_average(&plus, &gens, 4, RenyiOrder::Shannon).is_err());

        let gens2 = jordan_wigner(2).unwrap();
        let rho = random_state::<f64>(2, 11, Ensemble::PureHaar).unwrap();
        let avg = entropy_average(&rho, &gens2, 5, RenyiOrder::Shannon).unwrap();
        assert!(avg >= 0.8 - 1e-6);
    }

    #[test]
    fn closed_form_values() {
        let c = closed_form_min::<f64>(3, RenyiOrder::Shannon).unwrap();
        assert!((c.value - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(c.kind, BoundKind::Exact);
        let c = closed_form_min::<f64>(3, RenyiOrder::Collision).unwrap();
        assert!((c.value - 0.584962500721).abs() < 1e-12);
        let c = closed_form_min::<f64>(4, RenyiOrder::Min).unwrap();
        assert!((c.value - 0.415037499279).abs() < 1e-12);
        assert_eq!(c.kind, BoundKind::LowerBound);
        let c = closed_form_min::<f64>(5, RenyiOrder::Collision).unwrap();
        assert!((c.value - 0.736965594166).abs() < 1e-12);
        assert_eq!(closed_form_min::<f64>(1, RenyiOrder::Collision).unwrap().value, 0.0);
        assert!(closed_form_min::<f64>(3, RenyiOrder::Other(0.5)).is_err());
        assert!(closed_form_min::<f64>(0, RenyiOrder::Shannon).is_err());
    }

    #[test]
    fn closed_forms_increase_with_k() {
        for order in [RenyiOrder::Shannon, RenyiOrder::Collision, RenyiOrder::Min] {
            let vals: Vec<f64> = (1..20)
                .map(|k| closed_form_min::<f64>(k, order).unwrap().value)
                .collect();
            assert!(vals.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn eigenstate_attains_shannon_bound() {
        for n in 1..=3 {
            let gens = jordan_wigner(n).unwrap();
            for j in 0..=2 * n {
                let mut values = vec![0.0; 2 * n + 1];
                values[j] = 1.0;
                let rho = from_gvector(&GVector::new(n, values).unwrap(), &gens).unwrap();
                for k in (j + 1)..=2 * n + 1 {
                    let avg = entropy_average(&rho, &gens, k, RenyiOrder::Shannon).unwrap();
                    let bound = closed_form_min::<f64>(k, RenyiOrder::Shannon).unwrap().value;
                    assert!((avg - bound).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn symmetric_point_attains_collision_bound() {
        let gens = jordan_wigner(2).unwrap();
        let k = 5;
        let v = (1.0 / k as f64).sqrt();
        let rho = from_gvector(&GVector::new(2, vec![v; 5]).unwrap(), &gens).unwrap();
        let avg = entropy_average(&rho, &gens, k, RenyiOrder::Collision).unwrap();
        let bound = closed_form_min::<f64>(k, RenyiOrder::Collision).unwrap().value;
        assert!((avg - bound).abs() < 1e-12);
    }

    #[test]
    fn maassen_uffink_examples() {
        let id = CMatrix::<f64>::identity(2, 2);
        assert_eq!(maassen_uffink_bound(&id, &id).unwrap(), 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = CMatrix::<f64>::from_row_slice(
            2,
            2,
            &[C::new(s, 0.0), C::new(s, 0.0), C::new(s, 0.0), C::new(-s, 0.0)],
        );
        assert!((maassen_uffink_bound(&id, &h).unwrap() - 0.5).abs() < 1e-15);
        let bad = id.clone() * C::new(2.0, 0.0);
        assert!(maassen_uffink_bound(&id, &bad).is_err());
    }

    #[test]
    fn maassen_uffink_holds_for_generator_eigenbases() {
        let gens = jordan_wigner(2).unwrap();
        let (_, a) = hermitian_eigh(&gens.generator(1).unwrap().to_dense::<f64>().unwrap());
        let (_, b) = hermitian_eigh(&gens.generator(2).unwrap().to_dense::<f64>().unwrap());
        let bound = maassen_uffink_bound(&a, &b).unwrap();
        for seed in 0..100 {
            let rho = random_state::<f64>(2, seed, Ensemble::PureHaar).unwrap();
            let avg = 0.5 * (basis_entropy(&rho, &a).unwrap() + basis_entropy(&rho, &b).unwrap());
            assert!(avg >= bound - 1e-12);
        }
    }

    #[test]
    fn slopes_match_differences() {
        let h = 1e-6;
        for order in [
            RenyiOrder::Shannon,
            RenyiOrder::Collision,
            RenyiOrder::Min,
            RenyiOrder::Other(0.5),
            RenyiOrder::Other(3.0),
        ] {
            for g in [-0.9f64, -0.3, 0.2, 0.7] {
                let fd = (binary_entropy(g + h, order) - binary_entropy(g - h, order)) / (2.0 * h);
                let an = binary_entropy_slope(g, order);
                assert!((fd - an).abs() < 1e-6, "{order} at {g}: {fd} vs {an}");
            }
        }
        assert!(binary_entropy_slope(1.0f64, RenyiOrder::Shannon).is_finite());
    }

    proptest! {
        #[test]
        fn averages_respect_bounds(seed in any::<u64>(), n in 1usize..=3, pure in any::<bool>()) {
            let gens = jordan_wigner(n).unwrap();
            let ens = if pure { Ensemble::PureHaar } else { Ensemble::MixedHs };
            let rho = random_state::<f64>(n, seed, ens).unwrap();
            for k in 1..=2 * n + 1 {
                let g = gvector(&rho, &gens, k).unwrap();
                prop_assert!(g.norm_sq() <= 1.0 + 1e-9);
                for order in [RenyiOrder::Shannon, RenyiOrder::Collision, RenyiOrder::Min] {
                    let avg = entropy_average(&rho, &gens, k, order).unwrap();
                    let bound = closed_form_min::<f64>(k, order).unwrap().value;
                    prop_assert!(avg >= bound - 1e-9);
                }
                let (avg, middle, bound) = collision_chain(&g.as_slice()[..k]).unwrap();
                prop_assert!(avg >= middle - 1e-12);
                prop_assert!(middle >= bound - 1e-9);
            }
        }
    }
}
