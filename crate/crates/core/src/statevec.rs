//! Dense state vectors for numerical verification.
//!
//! Basis state `|x_0 x_1 ... x_{n-1}>` is stored at the integer index whose
//! bit `i` equals `x_i`, so qubit 0 is the least significant bit.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::codes::{complement, validate_index_set, LinearCode};
use crate::entanglement::j_of_code;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Largest qubit count for dense states.
pub const MAX_QUBITS: usize = 20;

/// Literal inner products in [`overlap_plus_zero`] are checked up to this size.
pub const OVERLAP_CHECK_LIMIT: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub type Qubit = [Complex64; 2];
pub type Gate = [[Complex64; 2]; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn guard_qubits(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::TooLarge {
            what: "qubit count",
            size: n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

fn index_of(word: &BitVec) -> usize {
    word.to_u64() as usize
}

impl StateVector {
    /// Wraps `amps` (length `2^n`), normalizing it.
    pub fn from_amplitudes(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        guard_qubits(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("zero vector is not a state".into()));
        }
        for a in amps.iter_mut() {
            *a /= norm;
        }
        Ok(Self { n, amps })
    }

    /// `|x_0 ... x_{n-1}>`.
    pub fn basis(word: &BitVec) -> Result<Self> {
        let n = word.len();
        guard_qubits(n)?;
        let mut amps = vec![ZERO; 1 << n];
        amps[index_of(word)] = ONE;
        Ok(Self { n, amps })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// True if the amplitudes are real and nonnegative up to `tol`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.amps.iter().all(|a| a.im.abs() <= tol && a.re >= -tol)
    }
}

/// `|C> = 2^{-k/2} sum_{y in C} |y>`.
pub fn build_state(c: &LinearCode) -> Result<StateVector> {
    build_coset_state(&BitVec::zeros(c.len()), c)
}

/// `|x + C> = 2^{-k/2} sum_{y in C} |x + y>`.
pub fn build_coset_state(x: &BitVec, c: &LinearCode) -> Result<StateVector> {
    let n = c.len();
    guard_qubits(n)?;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let weight = Complex64::new((-(c.dimension() as f64) / 2.0).exp2(), 0.0);
    let mut amps = vec![ZERO; 1 << n];
    for mut y in c.codewords() {
        y.xor_assign(x);
        amps[index_of(&y)] = weight;
    }
    Ok(StateVector { n, amps })
}

/// A product of single-qubit unit vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    pub factors: Vec<Qubit>,
}

impl ProductState {
    pub fn new(factors: Vec<Qubit>) -> Result<Self> {
        for (site, f) in factors.iter().enumerate() {
            let norm = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "factor {site} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { factors })
    }

    /// `|+>` on `plus`, `|0>` elsewhere.
    pub fn plus_zero(n: usize, plus: &[usize]) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut factors = vec![[ONE, ZERO]; n];
        for &i in plus {
            factors[i] = [Complex64::new(h, 0.0), Complex64::new(h, 0.0)];
        }
        Self { factors }
    }

    pub fn qubits(&self) -> usize {
        self.factors.len()
    }

    /// `<self|s>`.
    pub fn overlap(&self, s: &StateVector) -> Complex64 {
        assert_eq!(self.qubits(), s.n, "qubit count mismatch");
        s.amps
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let coeff: Complex64 = self
                    .factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f[(idx >> i) & 1].conj())
                    .product();
                coeff * a
            })
            .sum()
    }

    pub fn to_state(&self) -> StateVector {
        let n = self.qubits();
        let amps = (0..1usize << n)
            .map(|idx| {
                self.factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f[(idx >> i) & 1])
                    .product()
            })
            .collect();
        StateVector { n, amps }
    }
}

/// How restarts of the alternating optimizer are seeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Init {
    /// Independent standard complex Gaussian entries per site, normalized.
    ComplexGaussian,
    /// Absolute values of real Gaussian entries, normalized.
    NonnegativeReal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    /// Maximum number of sweeps over all sites per restart.
    pub max_iters: usize,
    /// A restart stops once a sweep improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
    pub init: Init,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 100,
            max_iters: 500,
            tol: 1e-12,
            seed: 0,
            init: Init::ComplexGaussian,
        }
    }
}

/// One restart of the alternating maximization.
#[derive(Clone, Debug)]
pub struct RestartTrace {
    /// Objective after initialization and after every single-site update.
    pub history: Vec<f64>,
    pub value: f64,
    pub argmax: ProductState,
    pub converged: bool,
}

/// Best value over all restarts. `value` is a lower bound on the injective
/// norm: it is attained by `argmax`.
#[derive(Clone, Debug)]
pub struct NumericEstimate {
    pub value: f64,
    pub argmax: ProductState,
    /// Whether the restart that produced `value` met the tolerance.
    pub converged: bool,
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for `(seed, label, index)`; fixed across platforms and releases.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    // FNV-1a over the label
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    mix(mix(seed ^ h).wrapping_add(index))
}

fn random_qubit<R: Rng>(rng: &mut R, init: Init) -> Qubit {
    loop {
        let mut q: Qubit = match init {
            Init::ComplexGaussian => [
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)),
            ],
            Init::NonnegativeReal => [
                Complex64::new(rng.sample::<f64, _>(StandardNormal).abs(), 0.0),
                Complex64::new(rng.sample::<f64, _>(StandardNormal).abs(), 0.0),
            ],
        };
        let norm = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
        if norm > 1e-12 {
            q[0] /= norm;
            q[1] /= norm;
            return q;
        }
    }
}

/// `w_b = sum_{x : x_site = b} prod_{l != site} conj(phi_l[x_l]) psi_x`.
///
/// Maximizing `|<phi|psi>|` over the factor at `site` gives `w / |w|`, with
/// objective `|w|`.
fn partial_contraction(
    amps: &[Complex64],
    factors: &[Qubit],
    site: usize,
    scratch: &mut Vec<Complex64>,
) -> Qubit {
    let n = factors.len();
    scratch.clear();
    scratch.extend_from_slice(amps);
    let mut len = amps.len();
    // Qubits above `site` sit at the top bit.
    for l in (site + 1..n).rev() {
        let half = len / 2;
        let (c0, c1) = (factors[l][0].conj(), factors[l][1].conj());
        for r in 0..half {
            scratch[r] = c0 * scratch[r] + c1 * scratch[r + half];
        }
        len = half;
    }
    // Qubits below `site` sit at the bottom bit.
    for f in factors.iter().take(site) {
        let half = len / 2;
        let (c0, c1) = (f[0].conj(), f[1].conj());
        for r in 0..half {
            scratch[r] = c0 * scratch[2 * r] + c1 * scratch[2 * r + 1];
        }
        len = half;
    }
    debug_assert_eq!(len, 2);
    [scratch[0], scratch[1]]
}

/// Runs one restart of alternating maximization from `start`.
pub fn alternating_maximization<R: Rng>(
    s: &StateVector,
    start: ProductState,
    max_iters: usize,
    tol: f64,
    init: Init,
    rng: &mut R,
) -> RestartTrace {
    let n = s.n;
    let mut factors = start.factors;
    assert_eq!(factors.len(), n, "product state has the wrong qubit count");
    let initial = ProductState {
        factors: factors.clone(),
    }
    .overlap(s)
    .norm();
    let mut history = vec![initial];
    if n == 0 {
        return RestartTrace {
            history,
            value: initial,
            argmax: ProductState { factors },
            converged: true,
        };
    }
    let mut scratch = Vec::with_capacity(s.amps.len());
    let mut value = initial;
    let mut converged = false;
    for _ in 0..max_iters {
        let before = value;
        for site in 0..n {
            let w = partial_contraction(&s.amps, &factors, site, &mut scratch);
            let norm = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
            if norm <= 1e-300 {
                // Degenerate stationary point; the objective is already zero.
                factors[site] = random_qubit(rng, init);
                value = 0.0;
            } else {
                factors[site] = [w[0] / norm, w[1] / norm];
                value = norm;
            }
            history.push(value);
        }
        if value - before < tol && value > 0.0 {
            converged = true;
            break;
        }
    }
    RestartTrace {
        history,
        value,
        argmax: ProductState { factors },
        converged,
    }
}

/// Multi-start alternating maximization of `|<phi_1 ... phi_n|s>|`.
pub fn injective_norm_numeric(
    s: &StateVector,
    config: &OptimizerConfig,
) -> Result<NumericEstimate> {
    if config.restarts == 0 {
        return Err(Error::InvalidParameter(
            "restarts must be at least 1".into(),
        ));
    }
    let traces: Vec<RestartTrace> = (0..config.restarts as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, "restart", r));
            let start = ProductState {
                factors: (0..s.n)
                    .map(|_| random_qubit(&mut rng, config.init))
                    .collect(),
            };
            alternating_maximization(
                s,
                start,
                config.max_iters,
                config.tol,
                config.init,
                &mut rng,
            )
        })
        .collect();
    // Ties keep the earliest restart, so the result is independent of scheduling.
    let best = traces
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one restart");
    Ok(NumericEstimate {
        value: best.value,
        argmax: best.argmax,
        converged: best.converged,
    })
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `M M^*` if `rows <= cols`, else `M^* M`.
    fn smaller_gram(&self) -> ComplexMatrix {
        if self.rows <= self.cols {
            let mut g = ComplexMatrix::zeros(self.rows, self.rows);
            for r in 0..self.rows {
                for s in r..self.rows {
                    let v: Complex64 = (0..self.cols)
                        .map(|c| self.get(r, c) * self.get(s, c).conj())
                        .sum();
                    g.set(r, s, v);
                    g.set(s, r, v.conj());
                }
            }
            g
        } else {
            let mut g = ComplexMatrix::zeros(self.cols, self.cols);
            for c in 0..self.cols {
                for d in c..self.cols {
                    let v: Complex64 = (0..self.rows)
                        .map(|r| self.get(r, c).conj() * self.get(r, d))
                        .sum();
                    g.set(c, d, v);
                    g.set(d, c, v.conj());
                }
            }
            g
        }
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }
}

/// Splits qubits into `a` (row index, bit `t` = qubit `a[t]`) and the rest
/// (column index, increasing qubit order). Pure reshaping.
pub fn flatten(s: &StateVector, a: &[usize]) -> Result<ComplexMatrix> {
    validate_index_set(a, s.n)?;
    let rest = complement(a, s.n);
    let mut m = ComplexMatrix::zeros(1 << a.len(), 1 << rest.len());
    for (idx, &amp) in s.amps.iter().enumerate() {
        let (r, c) = split_index(idx, a, &rest);
        m.set(r, c, amp);
    }
    Ok(m)
}

fn split_index(idx: usize, a: &[usize], rest: &[usize]) -> (usize, usize) {
    let gather = |qs: &[usize]| {
        qs.iter()
            .enumerate()
            .fold(0usize, |acc, (t, &q)| acc | (((idx >> q) & 1) << t))
    };
    (gather(a), gather(rest))
}

/// Inverse of [`flatten`].
pub fn unflatten(m: &ComplexMatrix, a: &[usize], n: usize) -> Result<StateVector> {
    guard_qubits(n)?;
    validate_index_set(a, n)?;
    let rest = complement(a, n);
    if m.rows != 1 << a.len() || m.cols != 1 << rest.len() {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: m.rows * m.cols,
        });
    }
    let amps = (0..1usize << n)
        .map(|idx| {
            let (r, c) = split_index(idx, a, &rest);
            m.get(r, c)
        })
        .collect();
    Ok(StateVector { n, amps })
}

/// Largest singular value of the flattening along `a`, by power iteration on
/// the Gram matrix of the smaller side. An upper bound on the injective norm.
pub fn flattening_op_norm(s: &StateVector, a: &[usize]) -> Result<f64> {
    let m = flatten(s, a)?;
    Ok(largest_eigenvalue(&m.smaller_gram(), 1e-10).sqrt())
}

/// Power iteration for a Hermitian positive semidefinite matrix. Stops when
/// the residual `|G v - lambda v|` drops below `rel_tol * lambda`.
fn largest_eigenvalue(g: &ComplexMatrix, rel_tol: f64) -> f64 {
    let d = g.rows;
    // Positive start vector: overlaps the Perron vector of nonnegative Gram
    // matrices; the perturbation breaks accidental orthogonality otherwise.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Complex64> = (0..d)
        .map(|_| {
            Complex64::new(
                1.0 + 0.25 * rng.sample::<f64, _>(StandardNormal),
                0.25 * rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    let normalize = |v: &mut Vec<Complex64>| {
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for x in v.iter_mut() {
                *x /= norm;
            }
        }
        norm
    };
    normalize(&mut v);
    let mut lambda = 0.0;
    for _ in 0..200_000 {
        let w = g.apply(&v);
        lambda = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (a.conj() * b).re)
            .sum::<f64>();
        let residual = w
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual <= rel_tol * lambda.abs() || lambda == 0.0 {
            break;
        }
        v = w;
        if normalize(&mut v) == 0.0 {
            return 0.0;
        }
    }
    lambda.max(0.0)
}

/// `<+_A 0_B|C>` for `B` the complement of `a`:
/// `2^{-(k - 2 dim shorten(C, a) + |a|)/2}`. For `n <= 16` the value is also
/// computed as a literal inner product on the dense state and compared.
pub fn overlap_plus_zero(c: &LinearCode, a: &[usize]) -> Result<f64> {
    let k0 = c.shorten(a)?.dimension();
    let exponent = c.dimension() as f64 - 2.0 * k0 as f64 + a.len() as f64;
    let value = (-exponent / 2.0).exp2();
    if c.len() <= OVERLAP_CHECK_LIMIT {
        let literal = ProductState::plus_zero(c.len(), a)
            .overlap(&build_state(c)?)
            .norm();
        if (literal - value).abs() > 1e-12 {
            return Err(Error::CrossCheck(format!(
                "<+_A 0_B|C> is {literal} numerically but {value} from dimensions"
            )));
        }
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixMultiplicity {
    /// `log2` of the number of prefixes per realized suffix (largest count if
    /// not uniform).
    pub j: usize,
    pub uniform: bool,
    /// Number of distinct suffixes that occur.
    pub suffixes: usize,
}

/// Brings the generator into standard form on the information set found by
/// [`j_of_code`], enumerates the codewords and counts prefixes per suffix.
pub fn suffix_multiplicity_check(c: &LinearCode) -> Result<SuffixMultiplicity> {
    guard_qubits(c.len())?;
    let k = c.dimension();
    let info = j_of_code(c)?.witness_partition;
    let order: Vec<usize> = info
        .iter()
        .copied()
        .chain(complement(&info, c.len()))
        .collect();
    let permuted = c.generator().column_submatrix(&order)?;
    let sf = permuted.standard_form()?;
    if sf.permutation[..k] != (0..k).collect::<Vec<_>>()[..] {
        return Err(Error::CrossCheck(
            "witness partition is not an information set".into(),
        ));
    }
    let mut counts: BTreeMap<BitVec, usize> = BTreeMap::new();
    let suffix_cols: Vec<usize> = (k..c.len()).collect();
    for m in 0..1u64 << k {
        let word = sf.result.left_mul_vec(&BitVec::from_u64(k, m));
        *counts.entry(word.select(&suffix_cols)).or_default() += 1;
    }
    let max = counts.values().copied().max().unwrap_or(0);
    let uniform = counts.values().all(|&v| v == max) && max.is_power_of_two();
    Ok(SuffixMultiplicity {
        j: max.trailing_zeros() as usize,
        uniform,
        suffixes: counts.len(),
    })
}

pub fn identity_gate() -> Gate {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn hadamard() -> Gate {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn pauli_x() -> Gate {
    [[ZERO, ONE], [ONE, ZERO]]
}

/// Haar-random 2x2 unitary (Gram-Schmidt on a complex Gaussian matrix).
pub fn random_unitary<R: Rng>(rng: &mut R) -> Gate {
    let mut gauss = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let (mut a0, mut a1) = (gauss(), gauss());
    let (mut b0, mut b1) = (gauss(), gauss());
    let n = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    a0 /= n;
    a1 /= n;
    let p = a0.conj() * b0 + a1.conj() * b1;
    b0 -= p * a0;
    b1 -= p * a1;
    let n = (b0.norm_sqr() + b1.norm_sqr()).sqrt();
    b0 /= n;
    b1 /= n;
    // columns (a0, a1) and (b0, b1)
    [[a0, b0], [a1, b1]]
}

fn is_unitary(u: &Gate, tol: f64) -> bool {
    (0..2).all(|i| {
        (0..2).all(|j| {
            let v: Complex64 = (0..2).map(|r| u[r][i].conj() * u[r][j]).sum();
            let target = if i == j { ONE } else { ZERO };
            (v - target).norm() <= tol
        })
    })
}

/// Applies `factors[i]` to qubit `i`.
pub fn apply_local_unitaries(s: &StateVector, factors: &[Gate]) -> Result<StateVector> {
    if factors.len() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            found: factors.len(),
        });
    }
    if let Some(site) = factors.iter().position(|u| !is_unitary(u, 1e-12)) {
        return Err(Error::NotUnitary { site });
    }
    let mut amps = s.amps.clone();
    for (q, u) in factors.iter().enumerate() {
        let bit = 1usize << q;
        for idx in 0..amps.len() {
            if idx & bit == 0 {
                let (x0, x1) = (amps[idx], amps[idx | bit]);
                amps[idx] = u[0][0] * x0 + u[0][1] * x1;
                amps[idx | bit] = u[1][0] * x0 + u[1][1] * x1;
            }
        }
    }
    Ok(StateVector { n: s.n, amps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{even_weight, full, hamming_7_4, random_code, repetition, zero};
    use crate::entanglement::injective_norm_formula;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn config(restarts: usize, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            restarts,
            seed,
            ..OptimizerConfig::default()
        }
    }

    #[test]
    fn build_state_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = build_state(&repetition(2).unwrap()).unwrap();
        let got: Vec<f64> = s.amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(got, vec![h, 0.0, 0.0, h]);

        let s = build_state(&zero(3).unwrap()).unwrap();
        assert_eq!(s.amplitudes()[0], ONE);
        assert!((s.norm() - 1.0).abs() < 1e-12);

        let s = build_coset_state(&bv("100"), &repetition(3).unwrap()).unwrap();
        // 100 -> index 1, 011 -> index 6
        let support: Vec<usize> = (0..8).filter(|&i| s.amplitudes()[i].norm() > 0.0).collect();
        assert_eq!(support, vec![1, 6]);

        assert!(matches!(
            build_state(&zero(21).unwrap()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn index_convention_round_trips() {
        let w = bv("1101");
        let s = StateVector::basis(&w).unwrap();
        let idx = s.amplitudes().iter().position(|a| *a == ONE).unwrap();
        assert_eq!(idx, 0b1011);
        let back = BitVec::from_u64(4, idx as u64);
        assert_eq!(back, w);
        // Flattening on qubit 0 reads off bit 0 of the index.
        let m = flatten(&s, &[0]).unwrap();
        assert_eq!(m.get(1, 0b101), ONE);
    }

    #[test]
    fn numeric_examples() {
        let s = build_state(&zero(4).unwrap()).unwrap();
        let est = injective_norm_numeric(&s, &config(3, 1)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);

        for c in [repetition(3).unwrap(), even_weight(3).unwrap()] {
            let s = build_state(&c).unwrap();
            let est = injective_norm_numeric(&s, &config(50, 2)).unwrap();
            assert!(
                (est.value - 0.5f64.sqrt()).abs() < 1e-6,
                "{c:?}: {}",
                est.value
            );
            // The argmax attains the reported value.
            assert!((est.argmax.overlap(&s).norm() - est.value).abs() < 1e-12);
        }
        assert!(injective_norm_numeric(&s_zero(), &config(0, 0)).is_err());
    }

    fn s_zero() -> StateVector {
        build_state(&zero(1).unwrap()).unwrap()
    }

    #[test]
    fn optimizer_is_monotone_and_deterministic() {
        let s = build_state(&hamming_7_4()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let start = ProductState {
            factors: (0..7)
                .map(|_| random_qubit(&mut rng, Init::ComplexGaussian))
                .collect(),
        };
        let trace =
            alternating_maximization(&s, start, 500, 1e-12, Init::ComplexGaussian, &mut rng);
        assert!(trace.history.windows(2).all(|w| w[1] >= w[0] - 1e-15));
        let a = injective_norm_numeric(&s, &config(10, 4)).unwrap();
        let b = injective_norm_numeric(&s, &config(10, 4)).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn flatten_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = build_state(&repetition(2).unwrap()).unwrap();
        let m = flatten(&s, &[0]).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.get(0, 0).re, h);
        assert_eq!(m.get(1, 1).re, h);
        assert_eq!(m.get(0, 1), ZERO);

        let s = build_state(&random_code(6, 3, 5).unwrap()).unwrap();
        for a in [vec![], vec![2], vec![5, 0, 3], (0..6).collect()] {
            let m = flatten(&s, &a).unwrap();
            assert!((m.frobenius_norm() - 1.0).abs() < 1e-12);
            assert_eq!(unflatten(&m, &a, 6).unwrap(), s);
        }
        assert!(flatten(&s, &[6]).is_err());
    }

    #[test]
    fn op_norm_examples() {
        let s = build_state(&zero(4).unwrap()).unwrap();
        assert!((flattening_op_norm(&s, &[1, 2]).unwrap() - 1.0).abs() < 1e-12);

        let s = build_state(&repetition(3).unwrap()).unwrap();
        assert!((flattening_op_norm(&s, &[0]).unwrap() - 0.5f64.sqrt()).abs() < 1e-10);

        let c = hamming_7_4();
        let info = j_of_code(&c).unwrap();
        let s = build_state(&c).unwrap();
        let expected = injective_norm_formula(c.dimension(), info.j);
        let got = flattening_op_norm(&s, &info.witness_partition).unwrap();
        assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");
    }

    #[test]
    fn op_norm_matches_singular_value_of_product_like_matrix() {
        // Flattening of a Schmidt-form state with coefficients sqrt(0.7), sqrt(0.3).
        let mut amps = vec![ZERO; 4];
        amps[0] = Complex64::new(0.7f64.sqrt(), 0.0);
        amps[3] = Complex64::new(0.0, 0.3f64.sqrt());
        let s = StateVector::from_amplitudes(2, amps).unwrap();
        assert!((flattening_op_norm(&s, &[0]).unwrap() - 0.7f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn overlap_examples() {
        let c = hamming_7_4();
        let v = overlap_plus_zero(&c, &[]).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
        assert!((overlap_plus_zero(&full(4).unwrap(), &[0, 1, 2, 3]).unwrap() - 1.0).abs() < 1e-15);
        let v = overlap_plus_zero(&even_weight(3).unwrap(), &[0, 1, 2]).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn suffix_examples() {
        let r = suffix_multiplicity_check(&even_weight(3).unwrap()).unwrap();
        assert_eq!((r.j, r.uniform, r.suffixes), (1, true, 2));
        let r = suffix_multiplicity_check(&full(4).unwrap()).unwrap();
        assert_eq!((r.j, r.uniform, r.suffixes), (4, true, 1));
        let r = suffix_multiplicity_check(&repetition(3).unwrap()).unwrap();
        assert_eq!((r.j, r.uniform), (0, true));
    }

    #[test]
    fn local_unitary_examples() {
        let c = random_code(5, 2, 3).unwrap();
        let s = build_state(&c).unwrap();
        let id = vec![identity_gate(); 5];
        assert_eq!(apply_local_unitaries(&s, &id).unwrap(), s);

        let had = vec![hadamard(); 5];
        let t = apply_local_unitaries(&s, &had).unwrap();
        let d = build_state(&c.dual()).unwrap();
        for (x, y) in t.amplitudes().iter().zip(d.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }

        let mut flips = id.clone();
        flips[1] = pauli_x();
        let t = apply_local_unitaries(&s, &flips).unwrap();
        let e = build_coset_state(&BitVec::unit(5, 1), &c).unwrap();
        assert_eq!(t, e);

        let mut bad = id.clone();
        bad[3] = [[ONE, ONE], [ZERO, ONE]];
        assert_eq!(
            apply_local_unitaries(&s, &bad),
            Err(Error::NotUnitary { site: 3 })
        );

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let us: Vec<Gate> = (0..5).map(|_| random_unitary(&mut rng)).collect();
        let t = apply_local_unitaries(&s, &us).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derived_seeds_are_fixed() {
        assert_eq!(derive_seed(1, "restart", 0), derive_seed(1, "restart", 0));
        assert_ne!(derive_seed(1, "restart", 0), derive_seed(1, "restart", 1));
        assert_ne!(derive_seed(1, "restart", 0), derive_seed(1, "codes", 0));
    }
}
