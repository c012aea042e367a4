//! Constructors for the state families used throughout the crate, plus
//! seeded random states.
//!
//! Random states draw from `ChaCha8Rng::seed_from_u64(seed)` (the
//! `rand_chacha` stream). Uniforms are `rand`'s standard `f64` samples
//! (53 high bits of a `u64`, scaled into `[0, 1)`); normal pairs come from
//! Box–Muller on two consecutive uniforms, and Dirichlet-uniform weights
//! from normalized `-ln(1 − u)` draws.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::DensityMatrix;

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("mixing parameter {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("local dimension {d} < 2")));
    }
    Ok(())
}

fn zeros(d: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, 0.0); d * d * d]
}

/// Index of `|iii⟩`.
fn diagonal_index(i: usize, d: usize) -> usize {
    i * (d * d + d + 1)
}

fn ghz_amplitudes(d: usize) -> Vec<Complex64> {
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = zeros(d);
    for i in 0..d {
        v[diagonal_index(i, d)] = amp;
    }
    v
}

fn w_amplitudes() -> Vec<Complex64> {
    let amp = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut v = zeros(2);
    // |100⟩, |010⟩, |001⟩
    for i in [4, 2, 1] {
        v[i] = amp;
    }
    v
}

/// `(1/√d) Σ_i |iii⟩`; for `d = 2` this is `(|000⟩ + |111⟩)/√2`.
pub fn ghz(d: usize) -> Result<DensityMatrix> {
    check_d(d)?;
    DensityMatrix::from_pure(&ghz_amplitudes(d))
}

/// `(|100⟩ + |010⟩ + |001⟩)/√3`
pub fn w_state() -> DensityMatrix {
    DensityMatrix::from_pure(&w_amplitudes()).expect("W state is normalized")
}

/// `√p |GHZ⟩ + √(1−p) |W⟩`. The two states are orthogonal, so the result is
/// normalized for every `p`.
pub fn ghz_w_superposition(p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    let amps: Vec<Complex64> = ghz_amplitudes(2)
        .iter()
        .zip(w_amplitudes())
        .map(|(g, w)| g * a + w * b)
        .collect();
    DensityMatrix::from_pure(&amps)
}

/// `(p/2)(|000⟩⟨000| + |111⟩⟨111|) + (1−p)|GHZ⟩⟨GHZ|`
pub fn ghz_colored_noise(p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    let mut m = ComplexMatrix::zeros(8);
    m[(0, 0)] = Complex64::new(0.5 * p, 0.0);
    m[(7, 7)] = Complex64::new(0.5 * p, 0.0);
    m.add_scaled(1.0 - p, ghz(2)?.matrix())?;
    DensityMatrix::new(m)
}

/// `(1−p) I/8 + p |GHZ⟩⟨GHZ|`
pub fn ghz_white_noise(p: f64) -> Result<DensityMatrix> {
    check_p(p)?;
    let mut m = ComplexMatrix::identity(8).scaled((1.0 - p) / 8.0);
    m.add_scaled(p, ghz(2)?.matrix())?;
    DensityMatrix::new(m)
}

/// `Σ_i |iii⟩⟨iii| / d`: separable, with maximally mixed marginals.
pub fn classical_ghz_diag(d: usize) -> Result<DensityMatrix> {
    check_d(d)?;
    let mut diag = vec![0.0; d * d * d];
    for i in 0..d {
        diag[diagonal_index(i, d)] = 1.0 / d as f64;
    }
    DensityMatrix::new(ComplexMatrix::from_real_diagonal(&diag))
}

/// Seeded source of uniforms, normals and simplex weights.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Two independent standard normals via Box–Muller.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        (r * c, r * s)
    }

    /// Standard complex Gaussian with independent N(0,1) real and imaginary parts.
    pub fn complex_normal(&mut self) -> Complex64 {
        let (re, im) = self.normal_pair();
        Complex64::new(re, im)
    }

    /// Unit vector of `n` complex Gaussian amplitudes.
    pub fn unit_vector(&mut self, n: usize) -> Vec<Complex64> {
        let v: Vec<Complex64> = (0..n).map(|_| self.complex_normal()).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|z| z / norm).collect()
    }

    /// Point drawn uniformly from the probability simplex with `k` vertices.
    pub fn simplex_weights(&mut self, k: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..k).map(|_| -(1.0 - self.uniform()).ln()).collect();
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / sum).collect()
    }
}

/// Random pure state with i.i.d. complex Gaussian amplitudes.
pub fn random_pure(d: usize, seed: u64) -> Result<DensityMatrix> {
    check_d(d)?;
    let mut sampler = StateSampler::new(seed);
    DensityMatrix::from_pure(&sampler.unit_vector(d * d * d))
}

fn mixture_of(d: usize, vectors: Vec<Vec<Complex64>>, weights: Vec<f64>) -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::zeros(d * d * d);
    for (v, w) in vectors.iter().zip(&weights) {
        m.add_scaled(*w, &ComplexMatrix::outer(v))?;
    }
    DensityMatrix::new(m)
}

/// Mixture of `rank` random pure states with simplex-uniform weights.
pub fn random_mixed(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    check_d(d)?;
    if rank == 0 {
        return Err(Error::OutOfRange("rank must be at least 1".into()));
    }
    let mut sampler = StateSampler::new(seed);
    let vectors: Vec<_> = (0..rank).map(|_| sampler.unit_vector(d * d * d)).collect();
    let weights = sampler.simplex_weights(rank);
    mixture_of(d, vectors, weights)
}

/// `|a⟩ ⊗ |b⟩ ⊗ |c⟩` as a flat amplitude vector.
pub fn product_amplitudes(a: &[Complex64], b: &[Complex64], c: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for x in a {
        for y in b {
            for z in c {
                out.push(x * y * z);
            }
        }
    }
    out
}

/// Mixture of `k` random pure product states; separable by construction.
pub fn product_mixture(d: usize, k: usize, seed: u64) -> Result<DensityMatrix> {
    check_d(d)?;
    if k == 0 {
        return Err(Error::OutOfRange("need at least one product component".into()));
    }
    let mut sampler = StateSampler::new(seed);
    let vectors: Vec<_> = (0..k)
        .map(|_| {
            let a = sampler.unit_vector(d);
            let b = sampler.unit_vector(d);
            let c = sampler.unit_vector(d);
            product_amplitudes(&a, &b, &c)
        })
        .collect();
    let weights = sampler.simplex_weights(k);
    mixture_of(d, vectors, weights)
}

/// Named state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Ghz,
    W,
    GhzWSuperposition,
    GhzColoredNoise,
    GhzWhiteNoise,
    ClassicalGhzDiag,
    RandomPure,
    RandomMixed,
    ProductMixture,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Ghz,
        Family::W,
        Family::GhzWSuperposition,
        Family::GhzColoredNoise,
        Family::GhzWhiteNoise,
        Family::ClassicalGhzDiag,
        Family::RandomPure,
        Family::RandomMixed,
        Family::ProductMixture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::GhzWSuperposition => "ghz-w-superposition",
            Family::GhzColoredNoise => "ghz-colored-noise",
            Family::GhzWhiteNoise => "ghz-white-noise",
            Family::ClassicalGhzDiag => "classical-ghz-diag",
            Family::RandomPure => "random-pure",
            Family::RandomMixed => "random-mixed",
            Family::ProductMixture => "product-mixture",
        }
    }

    /// Whether the family depends on the mixing parameter `p`.
    pub fn uses_p(self) -> bool {
        matches!(
            self,
            Family::GhzWSuperposition | Family::GhzColoredNoise | Family::GhzWhiteNoise
        )
    }

    /// Families that only exist for qubits.
    pub fn qubits_only(self) -> bool {
        self == Family::W || self.uses_p()
    }

    pub fn is_random(self) -> bool {
        matches!(self, Family::RandomPure | Family::RandomMixed | Family::ProductMixture)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::OutOfRange(format!("unknown state family '{s}'")))
    }
}

/// A fully parameterized member of a [`Family`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub d: usize,
    pub p: f64,
    pub seed: u64,
    /// Rank for `random-mixed`, component count for `product-mixture`.
    pub rank: usize,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            d: 2,
            p: 0.0,
            seed: 0,
            rank: 2,
        }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = rank;
        self
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        if self.family.qubits_only() && self.d != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                got: self.d,
            });
        }
        match self.family {
            Family::Ghz => ghz(self.d),
            Family::W => Ok(w_state()),
            Family::GhzWSuperposition => ghz_w_superposition(self.p),
            Family::GhzColoredNoise => ghz_colored_noise(self.p),
            Family::GhzWhiteNoise => ghz_white_noise(self.p),
            Family::ClassicalGhzDiag => classical_ghz_diag(self.d),
            Family::RandomPure => random_pure(self.d, self.seed),
            Family::RandomMixed => random_mixed(self.d, self.rank, self.seed),
            Family::ProductMixture => product_mixture(self.d, self.rank, self.seed),
        }
    }
}

/// `(|000⟩ + |111⟩)/√2` amplitudes, exposed for callers that need the vector.
pub fn ghz_qubit_amplitudes() -> [Complex64; 8] {
    let mut v = [Complex64::new(0.0, 0.0); 8];
    v[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v[7] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v
}
