//! Signed Pauli strings in symplectic form.
//!
//! A string on `n` qubits stores two bit vectors `x`, `z` and a phase exponent
//! `k ∈ {0,1,2,3}` and denotes the operator
//!
//! ```text
//!     i^k · ⊗_q X^{x_q} Z^{z_q}
//! ```
//!
//! With this convention `Y = i·XZ` is stored as `x = z = 1, k = 1`, so the
//! phase of a product is always an exact integer and only [`PauliString::to_dense`]
//! touches floating point. Qubit 0 is the leftmost tensor factor and the most
//! significant bit of a computational basis index.

use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Largest qubit count for which dense rendering is allowed (matrix side 16384).
pub const MAX_DENSE_QUBITS: usize = 14;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

#[inline]
fn parity(words: impl Iterator<Item = u64>) -> u32 {
    words.fold(0u64, |acc, w| acc ^ w).count_ones() & 1
}

/// Multiplies `i^k` into a complex number.
#[inline]
pub(crate) fn i_pow<T: Real>(k: u8) -> C<T> {
    match k & 3 {
        0 => C::new(T::one(), T::zero()),
        1 => C::new(T::zero(), T::one()),
        2 => C::new(-T::one(), T::zero()),
        _ => C::new(T::zero(), -T::one()),
    }
}

impl PauliString {
    /// The identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        PauliString {
            n,
            x: vec![0; words],
            z: vec![0; words],
            phase: 0,
        }
    }

    /// Builds a string from explicit bit slices and phase exponent.
    pub fn from_bits(x: &[bool], z: &[bool], phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        let mut p = Self::identity(x.len());
        for (q, (&xb, &zb)) in x.iter().zip(z).enumerate() {
            p.set_bits(q, xb, zb);
        }
        p.phase = phase & 3;
        Ok(p)
    }

    /// A single-qubit Pauli (`'I'`, `'X'`, `'Y'` or `'Z'`) on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, symbol: char) -> Result<Self> {
        if q >= n {
            return Err(Error::Domain(format!("qubit {q} out of range for n = {n}")));
        }
        let mut p = Self::identity(n);
        let (xb, zb) = symbol_bits(symbol).ok_or_else(|| Error::Parse {
            label: symbol.to_string(),
            reason: "unknown symbol".into(),
        })?;
        p.set_bits(q, xb, zb);
        if xb && zb {
            p.phase = 1;
        }
        Ok(p)
    }

    /// Parses labels such as `"XI"`, `"-ZZ"`, `"+iXY"` or `"-iZ"`.
    ///
    /// The number of qubits is the number of symbols. The optional prefix is one
    /// of `+`, `-`, `i`, `+i`, `-i`.
    pub fn from_label(label: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            label: label.to_string(),
            reason: reason.to_string(),
        };
        let mut rest = label;
        let mut label_phase = 0u8;
        if let Some(r) = rest.strip_prefix('-') {
            label_phase = 2;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            label_phase += 1;
            rest = r;
        }
        if rest.is_empty() {
            return Err(parse_err("no qubit symbols"));
        }
        let n = rest.chars().count();
        let mut p = Self::identity(n);
        let mut ys = 0u8;
        for (q, ch) in rest.chars().enumerate() {
            let (xb, zb) = symbol_bits(ch)
                .ok_or_else(|| parse_err(&format!("unknown symbol {ch:?} at position {q}")))?;
            p.set_bits(q, xb, zb);
            if xb && zb {
                ys += 1;
            }
        }
        p.phase = (label_phase + ys) & 3;
        Ok(p)
    }

    /// Inverse of [`PauliString::from_label`].
    pub fn to_label(&self) -> String {
        let label_phase = (self.phase + 4 - (self.overlap() & 3) as u8) & 3;
        let mut s = String::with_capacity(self.n + 2);
        s.push_str(match label_phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        });
        for q in 0..self.n {
            s.push(match (self.x_bit(q), self.z_bit(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            });
        }
        s
    }

    /// Uniformly random bits and phase.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = Self::identity(n);
        for w in 0..p.x.len() {
            p.x[w] = rng.random();
            p.z[w] = rng.random();
        }
        p.mask_tail();
        p.phase = rng.random_range(0..4);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / WORD] >> (q % WORD) & 1 == 1
    }

    /// Number of qubits carrying a non-identity factor.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Number of positions with both bits set (the `Y` factors).
    pub fn overlap(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.weight() == 0
    }

    /// Hermitian iff `i^phase · (-i)^overlap` is real.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + self.overlap()) % 2 == 0
    }

    /// For Pauli strings, Hermitian and involutory are the same condition.
    pub fn is_involution(&self) -> bool {
        self.is_hermitian()
    }

    /// Same operator up to a power of `i`.
    pub fn eq_up_to_phase(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Returns the string multiplied by `i^k`.
    pub fn times_i_pow(&self, k: u8) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + k) & 3;
        p
    }

    pub fn neg(&self) -> Self {
        self.times_i_pow(2)
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> Self {
        // (i^k X^x Z^z)† = i^{-k} Z^z X^x = i^{-k} (-1)^{x·z} X^x Z^z
        let mut p = self.clone();
        let flip = 2 * (self.overlap() & 1) as u8;
        p.phase = (4 - self.phase + flip) & 3;
        p
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Exact product `self · rhs`.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::identity(self.n);
        self.product_into(rhs, &mut out)?;
        Ok(out)
    }

    /// Writes `self · rhs` into `out`, reusing its storage.
    pub fn product_into(&self, rhs: &Self, out: &mut Self) -> Result<()> {
        self.check_n(rhs)?;
        // Z^z1 X^x2 = (-1)^{z1·x2} X^x2 Z^z1, qubit by qubit.
        let swap = parity(self.z.iter().zip(&rhs.x).map(|(z, x)| z & x)) as u8;
        out.n = self.n;
        out.x.clear();
        out.x
            .extend(self.x.iter().zip(&rhs.x).map(|(a, b)| a ^ b));
        out.z.clear();
        out.z
            .extend(self.z.iter().zip(&rhs.z).map(|(a, b)| a ^ b));
        out.phase = (self.phase + rhs.phase + 2 * swap) & 3;
        Ok(())
    }

    /// Parity of the symplectic inner product `x1·z2 + z1·x2`.
    pub fn symplectic_parity(&self, other: &Self) -> Result<u32> {
        self.check_n(other)?;
        Ok(parity(
            self.x
                .iter()
                .zip(&other.z)
                .zip(self.z.iter().zip(&other.x))
                .map(|((x1, z2), (z1, x2))| (x1 & z2) ^ (z1 & x2)),
        ))
    }

    /// `true` iff `self · other = -other · self`.
    pub fn anticommutes(&self, other: &Self) -> Result<bool> {
        Ok(self.symplectic_parity(other)? == 1)
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        Ok(self.symplectic_parity(other)? == 0)
    }

    fn dense_guard(&self) -> Result<()> {
        if self.n > MAX_DENSE_QUBITS {
            Err(Error::Capacity {
                n: self.n,
                max: MAX_DENSE_QUBITS,
            })
        } else {
            Ok(())
        }
    }

    /// Bit masks over computational basis indices (qubit 0 is the top bit).
    fn index_masks(&self) -> (usize, usize) {
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..self.n {
            let bit = 1usize << (self.n - 1 - q);
            if self.x_bit(q) {
                xm |= bit;
            }
            if self.z_bit(q) {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    /// Iterates the single nonzero entry of every column: `(row, col, value)`.
    pub(crate) fn for_each_entry<T: Real>(&self, mut f: impl FnMut(usize, usize, C<T>)) {
        let (xm, zm) = self.index_masks();
        let base = i_pow::<T>(self.phase);
        for c in 0..1usize << self.n {
            let v = if (zm & c).count_ones() & 1 == 1 { -base } else { base };
            f(c ^ xm, c, v);
        }
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn to_dense<T: Real>(&self) -> Result<DMatrix<C<T>>> {
        self.dense_guard()?;
        let d = 1usize << self.n;
        let mut m = DMatrix::zeros(d, d);
        self.for_each_entry::<T>(|r, c, v| m[(r, c)] = v);
        Ok(m)
    }

    /// `Tr(mat · self)` in `O(d)` without rendering the string.
    pub fn trace_with<T: Real>(&self, mat: &DMatrix<C<T>>) -> Result<C<T>> {
        self.dense_guard()?;
        let d = 1usize << self.n;
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::Domain(format!(
                "matrix is {}x{}, expected {d}x{d}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let mut acc = C::new(T::zero(), T::zero());
        self.for_each_entry::<T>(|r, c, v| acc += mat[(c, r)] * v);
        Ok(acc)
    }

    /// Accumulates `coeff · self` into `mat`.
    pub(crate) fn add_scaled_into<T: Real>(&self, coeff: C<T>, mat: &mut DMatrix<C<T>>) {
        self.for_each_entry::<T>(|r, c, v| mat[(r, c)] += coeff * v);
    }

    fn set_bits(&mut self, q: usize, xb: bool, zb: bool) {
        let (w, b) = (q / WORD, q % WORD);
        let mask = 1u64 << b;
        if xb {
            self.x[w] |= mask;
        } else {
            self.x[w] &= !mask;
        }
        if zb {
            self.z[w] |= mask;
        } else {
            self.z[w] &= !mask;
        }
    }

    fn mask_tail(&mut self) {
        let rem = self.n % WORD;
        if rem != 0 {
            if let (Some(x), Some(z)) = (self.x.last_mut(), self.z.last_mut()) {
                let keep = (1u64 << rem) - 1;
                *x &= keep;
                *z &= keep;
            }
        }
    }
}

fn symbol_bits(ch: char) -> Option<(bool, bool)> {
    match ch {
        'I' => Some((false, false)),
        'X' => Some((true, false)),
        'Y' => Some((true, true)),
        'Z' => Some((false, true)),
        _ => None,
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label())
    }
}

impl std::str::FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_label(s)
    }
}

/// Panics on mismatched qubit counts; use [`PauliString::product`] for a checked version.
impl Mul<&PauliString> for &PauliString {
    type Output = PauliString;

    fn mul(self, rhs: &PauliString) -> PauliString {
        self.product(rhs).expect("Pauli strings on different qubit counts")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs_diff;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliString {
        PauliString::from_label(s).unwrap()
    }

    fn dense(s: &PauliString) -> DMatrix<C<f64>> {
        s.to_dense().unwrap()
    }

    #[test]
    fn label_encoding() {
        let xi = p("XI");
        assert!(xi.x_bit(0) && !xi.x_bit(1));
        assert!(!xi.z_bit(0) && !xi.z_bit(1));
        assert_eq!(xi.phase(), 0);

        let y = p("Y");
        assert!(y.x_bit(0) && y.z_bit(0));
        assert_eq!(y.phase(), 1);

        let mzz = p("-ZZ");
        assert!(mzz.z_bit(0) && mzz.z_bit(1) && !mzz.x_bit(0) && !mzz.x_bit(1));
        assert_eq!(mzz.phase(), 2);
    }

    #[test]
    fn y_convention_renders_standard_y() {
        let y = dense(&p("Y"));
        let i = C::new(0.0, 1.0);
        let expected = DMatrix::from_row_slice(2, 2, &[C::new(0.0, 0.0), -i, i, C::new(0.0, 0.0)]);
        assert_eq!(y, expected);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(PauliString::from_label("XQ"), Err(Error::Parse { .. })));
        assert!(matches!(PauliString::from_label("-"), Err(Error::Parse { .. })));
        assert!(matches!(PauliString::from_label("x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn label_round_trip_examples() {
        for s in ["I", "XI", "-ZZ", "Y", "-iXYZ", "iZ", "-YY"] {
            assert_eq!(p(s).to_label(), s);
        }
        assert_eq!(p("+XZ").to_label(), "XZ");
        assert_eq!(p("+iX").to_label(), "iX");
    }

    #[test]
    fn products() {
        assert_eq!(&p("X") * &p("Y"), p("iZ"));
        assert!((&p("X") * &p("X")).is_identity());
        // (X⊗1)(Z⊗X) = XZ ⊗ X = -iY ⊗ X
        let prod = &p("XI") * &p("ZX");
        assert_eq!(prod, p("-iYX"));
        let oracle = dense(&p("XI")) * dense(&p("ZX"));
        assert_eq!(dense(&prod), oracle);
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            p("X").product(&p("XX")),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
        assert!(p("X").anticommutes(&p("XX")).is_err());
    }

    #[test]
    fn anticommutation_basics() {
        assert!(p("X").anticommutes(&p("Y")).unwrap());
        assert!(!p("X").anticommutes(&p("I")).unwrap());
        assert!(!p("XX").anticommutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn dense_small_cases() {
        assert_eq!(dense(&PauliString::identity(1)), DMatrix::identity(2, 2));
        let z = dense(&p("Z"));
        assert_eq!(z, DMatrix::from_diagonal(&nalgebra::dvector![C::new(1.0, 0.0), C::new(-1.0, 0.0)]));
    }

    #[test]
    fn dense_guard() {
        let big = PauliString::identity(MAX_DENSE_QUBITS + 1);
        assert!(matches!(big.to_dense::<f64>(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn dense_product_agrees_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = PauliString::random(4, &mut rng);
            let b = PauliString::random(4, &mut rng);
            let sym = dense(&(&a * &b));
            let den = dense(&a) * dense(&b);
            assert_eq!(max_abs_diff(&sym, &den), 0.0);
        }
    }

    #[test]
    fn pauli_basis_orthogonality() {
        let labels = ["II", "XI", "YZ", "ZZ", "XY", "iIZ"];
        for a in labels {
            for b in labels {
                let (pa, pb) = (p(a), p(b));
                let tr = (dense(&pa) * dense(&pb)).trace();
                if pa.eq_up_to_phase(&pb) {
                    assert_eq!(tr.norm(), 4.0);
                } else {
                    assert_eq!(tr.norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn trace_with_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = PauliString::random(3, &mut rng);
        let b = PauliString::random(3, &mut rng);
        let m = dense(&b) + dense(&a) * C::new(0.3, -0.2);
        let fast = a.trace_with(&m).unwrap();
        let slow = (m * dense(&a)).trace();
        assert!((fast - slow).norm() < 1e-14);
    }

    #[test]
    fn large_strings_stay_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = PauliString::random(10_000, &mut rng);
        let b = PauliString::random(10_000, &mut rng);
        let ab = &a * &b;
        let ba = &b * &a;
        assert!(ab.eq_up_to_phase(&ba));
    }

    fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
        any::<u64>().prop_map(move |seed| {
            PauliString::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
        })
    }

    proptest! {
        #[test]
        fn prop_label_round_trip(a in arb_string(7)) {
            prop_assert_eq!(PauliString::from_label(&a.to_label()).unwrap(), a);
        }

        #[test]
        fn prop_swap_phase(a in arb_string(70), b in arb_string(70)) {
            let ab = &a * &b;
            let ba = &b * &a;
            let sign = 2 * a.symplectic_parity(&b).unwrap() as u8;
            prop_assert_eq!(ab, ba.times_i_pow(sign));
        }

        #[test]
        fn prop_associative(a in arb_string(65), b in arb_string(65), c in arb_string(65)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn prop_anticommutes_iff_dense(a in arb_string(4), b in arb_string(4)) {
            let (da, db) = (dense(&a), dense(&b));
            let anti = &da * &db + &db * &da;
            let is_zero = anti.iter().all(|z| *z == C::new(0.0, 0.0));
            prop_assert_eq!(a.anticommutes(&b).unwrap(), is_zero);
        }

        #[test]
        fn prop_hermitian_flag(a in arb_string(3)) {
            let d = dense(&a);
            prop_assert_eq!(a.is_hermitian(), d == d.adjoint());
            prop_assert_eq!(dense(&a.adjoint()), d.adjoint());
        }
    }
}
