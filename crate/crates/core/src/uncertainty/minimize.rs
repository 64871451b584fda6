//! Numerical minimisation of average entropies.
//!
//! The average over `Γ₀..Γ_{K-1}` depends only on `(g_0, …, g_{K-1})`, and every
//! point of the closed unit ball is the vector of some state, so the search runs
//! over the `K`-ball: uniform sampling, then projected gradient descent with
//! Armijo backtracking from the best samples. An independent route descends
//! over pure state vectors on the Hilbert-space sphere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{binary_entropy, binary_entropy_slope, check_k, closed_form_min, BoundKind, RenyiOrder};
use crate::clifford::GeneratorSet;
use crate::error::{domain, Result};
use crate::pauli::MAX_DENSE_QUBITS;
use crate::scalar::{Real, C};
use crate::states::{random_pure_vector, GVector};

/// Samples drawn per parallel task; fixed so results do not depend on the
/// thread count.
const CHUNK: usize = 8192;
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizerConfig {
    /// Uniform ball samples.
    pub samples: usize,
    pub seed: u64,
    /// Descent iterations per start.
    pub max_iter: usize,
    /// Number of best samples refined by descent.
    pub refine_starts: usize,
    /// Random pure states seeding the Hilbert-space route; 0 disables it.
    pub pure_starts: usize,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        MinimizerConfig {
            samples: 200_000,
            seed: 0,
            max_iter: 1000,
            refine_starts: 4,
            pure_starts: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport<T> {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub alpha: RenyiOrder,
    pub closed_form_bound: Option<T>,
    pub bound_kind: Option<BoundKind>,
    pub numeric_min: T,
    pub argmin_g: GVector<T>,
    pub samples: usize,
    pub seed: u64,
    /// `numeric_min − closed_form_bound`.
    pub gap: Option<T>,
    /// Minimum found by the pure-state route.
    pub cross_min: Option<T>,
    pub descent_iterations: usize,
}

/// `(1/K) Σ_j H_α((1 ± g_j)/2)` with `K = g.len()`.
pub fn ball_objective<T: Real>(g: &[T], order: RenyiOrder) -> T {
    let sum = g
        .iter()
        .fold(T::zero(), |acc, v| acc + binary_entropy(*v, order));
    sum / T::of(g.len() as f64)
}

fn ball_gradient<T: Real>(g: &[T], order: RenyiOrder, out: &mut [T]) {
    let inv = T::one() / T::of(g.len() as f64);
    for (o, v) in out.iter_mut().zip(g) {
        *o = binary_entropy_slope(*v, order) * inv;
    }
}

fn norm<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, v| acc + *v * *v).sqrt()
}

fn project_ball<T: Real>(x: &mut [T]) {
    let r = norm(x);
    if r > T::one() {
        for v in x.iter_mut() {
            *v /= r;
        }
    }
}

fn uniform_ball_point<T: Real, R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<T> {
    loop {
        let dir: Vec<f64> = (0..k).map(|_| StandardNormal.sample(rng)).collect();
        let len = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len > 0.0 {
            let u: f64 = rng.random();
            let r = u.powf(1.0 / k as f64);
            return dir.iter().map(|v| T::of(v * r / len)).collect();
        }
    }
}

fn keep_best<T: Real, P>(best: &mut Vec<(T, P)>, keep: usize, value: T, point: P) {
    if best.len() == keep && best.last().is_some_and(|(v, _)| value >= *v) {
        return;
    }
    let pos = best.partition_point(|(v, _)| *v <= value);
    best.insert(pos, (value, point));
    best.truncate(keep);
}

/// The `keep` lowest-objective points among `samples` uniform draws from the
/// `k`-ball, ascending. Deterministic in `seed` regardless of thread count.
pub fn sample_ball<T: Real>(
    k: usize,
    order: RenyiOrder,
    samples: usize,
    seed: u64,
    keep: usize,
) -> Vec<(T, Vec<T>)> {
    let keep = keep.max(1);
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Vec<(T, Vec<T>)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut best = Vec::with_capacity(keep + 1);
            for _ in 0..count {
                let x = uniform_ball_point::<T, _>(k, &mut rng);
                let v = ball_objective(&x, order);
                keep_best(&mut best, keep, v, x);
            }
            best
        })
        .collect();
    let mut best = Vec::with_capacity(keep + 1);
    for (v, x) in partial.into_iter().flatten() {
        keep_best(&mut best, keep, v, x);
    }
    best
}

/// Projected gradient descent on the unit ball. Returns the final point, its
/// value and the number of iterations taken.
fn descend_ball<T: Real>(x0: &[T], order: RenyiOrder, max_iter: usize) -> (Vec<T>, T, usize) {
    let k = x0.len();
    let mut x = x0.to_vec();
    project_ball(&mut x);
    let mut fx = ball_objective(&x, order);
    let mut grad = vec![T::zero(); k];
    let mut y = vec![T::zero(); k];
    let mut step = T::one();
    let armijo = T::of(ARMIJO);
    let mut iters = 0;
    while iters < max_iter {
        iters += 1;
        ball_gradient(&x, order, &mut grad);
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            for i in 0..k {
                y[i] = x[i] - step * grad[i];
            }
            project_ball(&mut y);
            let dec = (0..k).fold(T::zero(), |acc, i| acc + grad[i] * (x[i] - y[i]));
            let fy = ball_objective(&y, order);
            if dec > T::zero() && fy <= fx - armijo * dec {
                accepted = Some(fy);
                break;
            }
            step *= T::of(0.5);
        }
        let Some(fy) = accepted else { break };
        std::mem::swap(&mut x, &mut y);
        fx = fy;
        step = (step * T::of(2.0)).min(T::of(1e8));
    }
    (x, fx, iters)
}

/// Sparse action of one Pauli string: `row[c]` and `value[c]` for column `c`.
struct SparsePauli<T: Real> {
    row: Vec<usize>,
    value: Vec<C<T>>,
}

impl<T: Real> SparsePauli<T> {
    fn new(p: &crate::pauli::PauliString) -> Self {
        let d = 1usize << p.n();
        let mut row = vec![0; d];
        let mut value = vec![C::new(T::zero(), T::zero()); d];
        p.for_each_entry::<T>(|r, c, v| {
            row[c] = r;
            value[c] = v;
        });
        SparsePauli { row, value }
    }

    fn apply(&self, psi: &[C<T>], out: &mut [C<T>]) {
        for (c, z) in psi.iter().enumerate() {
            out[self.row[c]] = self.value[c] * *z;
        }
    }
}

fn re_inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.re * y.re + x.im * y.im)
}

fn normalize<T: Real>(psi: &mut [C<T>]) {
    let n = re_inner(psi, psi).sqrt();
    for z in psi.iter_mut() {
        *z = z.unscale(n);
    }
}

struct PureObjective<T: Real> {
    ops: Vec<SparsePauli<T>>,
    order: RenyiOrder,
}

impl<T: Real> PureObjective<T> {
    fn expectations(&self, psi: &[C<T>], scratch: &mut [C<T>]) -> Vec<T> {
        self.ops
            .iter()
            .map(|op| {
                op.apply(psi, scratch);
                re_inner(psi, scratch)
            })
            .collect()
    }

    fn value(&self, psi: &[C<T>], scratch: &mut [C<T>]) -> T {
        ball_objective(&self.expectations(psi, scratch), self.order)
    }

    /// Euclidean gradient `(2/K) Σ_j h'(g_j) Γ_j ψ` w.r.t. the real inner product.
    fn gradient(&self, psi: &[C<T>], scratch: &mut [C<T>], out: &mut [C<T>]) {
        let g = self.expectations(psi, scratch);
        let scale = T::of(2.0) / T::of(g.len() as f64);
        out.iter_mut().for_each(|z| *z = C::new(T::zero(), T::zero()));
        for (op, gj) in self.ops.iter().zip(&g) {
            op.apply(psi, scratch);
            let w = binary_entropy_slope(*gj, self.order) * scale;
            for (o, s) in out.iter_mut().zip(scratch.iter()) {
                *o += s.scale(w);
            }
        }
    }
}

fn descend_sphere<T: Real>(
    obj: &PureObjective<T>,
    psi0: Vec<C<T>>,
    max_iter: usize,
) -> (Vec<C<T>>, T) {
    let d = psi0.len();
    let mut psi = psi0;
    let mut scratch = vec![C::new(T::zero(), T::zero()); d];
    let mut grad = scratch.clone();
    let mut trial = scratch.clone();
    let mut fx = obj.value(&psi, &mut scratch);
    let mut step = T::one();
    let armijo = T::of(ARMIJO);
    for _ in 0..max_iter {
        obj.gradient(&psi, &mut scratch, &mut grad);
        let radial = re_inner(&psi, &grad);
        for (g, p) in grad.iter_mut().zip(&psi) {
            *g -= p.scale(radial);
        }
        let gnorm2 = re_inner(&grad, &grad);
        if gnorm2 == T::zero() {
            break;
        }
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            for i in 0..d {
                trial[i] = psi[i] - grad[i].scale(step);
            }
            normalize(&mut trial);
            let ft = obj.value(&trial, &mut scratch);
            if ft <= fx - armijo * step * gnorm2 {
                accepted = Some(ft);
                break;
            }
            step *= T::of(0.5);
        }
        let Some(ft) = accepted else { break };
        std::mem::swap(&mut psi, &mut trial);
        fx = ft;
        step = (step * T::of(2.0)).min(T::of(1e8));
    }
    (psi, fx)
}

/// Minimum over pure state vectors, by sphere descent from the best of
/// `starts` Haar-random vectors. Returns the value and `(g_0, …, g_{K-1})`.
pub fn pure_state_minimum<T: Real>(
    gens: &GeneratorSet,
    k: usize,
    order: RenyiOrder,
    starts: usize,
    seed: u64,
    max_iter: usize,
) -> Result<(T, Vec<T>)> {
    check_k(gens, k)?;
    if starts == 0 {
        return domain("need at least one start");
    }
    if gens.n() > MAX_DENSE_QUBITS {
        return domain(format!(
            "pure-state route limited to {MAX_DENSE_QUBITS} qubits"
        ));
    }
    let obj = PureObjective {
        ops: (0..k)
            .map(|j| gens.extended(j).map(SparsePauli::new))
            .collect::<Result<_>>()?,
        order,
    };
    let d = gens.dim();
    let mut scratch = vec![C::new(T::zero(), T::zero()); d];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut best: Vec<(T, Vec<C<T>>)> = Vec::new();
    for _ in 0..starts {
        let psi: Vec<C<T>> = random_pure_vector::<T, _>(d, &mut rng).iter().copied().collect();
        let v = obj.value(&psi, &mut scratch);
        keep_best(&mut best, 4, v, psi);
    }
    let mut winner: Option<(T, Vec<C<T>>)> = None;
    for (_, psi) in best {
        let (psi, v) = descend_sphere(&obj, psi, max_iter);
        if winner.as_ref().is_none_or(|(w, _)| v < *w) {
            winner = Some((v, psi));
        }
    }
    let (v, psi) = winner.expect("at least one start");
    Ok((v, obj.expectations(&psi, &mut scratch)))
}

/// Minimises `(1/K) Σ_{j<K} H_α(Γ_j|ρ)` over states.
pub fn find_minimizer<T: Real>(
    gens: &GeneratorSet,
    k: usize,
    order: RenyiOrder,
    cfg: &MinimizerConfig,
) -> Result<EntropyReport<T>> {
    check_k(gens, k)?;
    if cfg.samples == 0 {
        return domain("sample budget must be positive");
    }
    let starts = sample_ball::<T>(k, order, cfg.samples, cfg.seed, cfg.refine_starts);
    let mut best: Option<(T, Vec<T>, usize)> = None;
    let mut iterations = 0;
    for (_, x0) in &starts {
        let (x, v, it) = descend_ball(x0, order, cfg.max_iter);
        iterations += it;
        if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
            best = Some((v, x, it));
        }
    }
    let (numeric_min, argmin, _) = best.expect("sample_ball returns at least one point");
    let closed = closed_form_min::<T>(k, order).ok();
    let cross_min = if cfg.pure_starts > 0 && gens.n() <= MAX_DENSE_QUBITS {
        Some(pure_state_minimum::<T>(gens, k, order, cfg.pure_starts, cfg.seed, cfg.max_iter)?.0)
    } else {
        None
    };
    Ok(EntropyReport {
        n: gens.n(),
        k,
        alpha: order,
        closed_form_bound: closed.map(|c| c.value),
        bound_kind: closed.map(|c| c.kind),
        numeric_min,
        argmin_g: GVector::from_prefix(gens.n(), &argmin)?,
        samples: cfg.samples,
        seed: cfg.seed,
        gap: closed.map(|c| numeric_min - c.value),
        cross_min,
        descent_iterations: iterations,
    })
}
