//! Brute-force references for the analytic machinery.
//!
//! Because `H_ABC` is diagonal, the minimum of `Tr(UρU†H)` over unitaries is
//! reached by some `U` that maps the eigenvectors of `ρ` onto energy basis
//! states; the energy is then `Σ_k λ_{σ(k)} e_k` for a permutation `σ`, so
//! minimizing over all permutations is exact. This only scales to eight slots
//! (the three-qubit ladder), which is where the oracle is used.

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ladder::{level_of_index, LadderSpec};
use crate::linalg::TwoLevelRotation;
use crate::state::DensityMatrix;

/// Largest input accepted by [`brute_force_passive_energy`].
pub const MAX_BRUTE_FORCE_LEN: usize = 8;

/// `min_σ Σ_k populations[σ(k)] · energies[k]` over every permutation.
pub fn brute_force_passive_energy(populations: &[f64], energies: &[f64]) -> Result<f64> {
    let n = populations.len();
    if n != energies.len() {
        return Err(Error::LengthMismatch {
            expected: n,
            got: energies.len(),
        });
    }
    if n > MAX_BRUTE_FORCE_LEN {
        return Err(Error::TooLarge {
            len: n,
            max: MAX_BRUTE_FORCE_LEN,
        });
    }
    let best = (0..n)
        .permutations(n)
        .map(|perm| perm.iter().zip(energies).map(|(&i, e)| populations[i] * e).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    Ok(if n == 0 { 0.0 } else { best })
}

/// Triple loop over `(a, b, c) ∈ [0, d)³` counting `a + b + c = e`.
pub fn brute_force_degeneracy(e: usize, d: usize) -> Result<usize> {
    if d < 2 || e > 3 * (d - 1) {
        return Err(Error::OutOfRange(format!("level {e} is not on the d = {d} ladder")));
    }
    let mut count = 0;
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                if a + b + c == e {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Smallest `Tr(UρU†H_ABC)` seen over `trials` random unitaries, each a
/// product of `n(n−1)` random two-level rotations. This can only ever sit
/// above the true passive energy.
pub fn random_unitary_energy_probe(
    rho: &DensityMatrix,
    spec: &LadderSpec,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if rho.d() != spec.d() {
        return Err(Error::DimensionMismatch(format!(
            "state has local dimension {}, ladder has {}",
            rho.d(),
            spec.d()
        )));
    }
    if trials == 0 {
        return Err(Error::OutOfRange("probe needs at least one trial".into()));
    }
    let n = rho.matrix().n();
    let d = spec.d();
    let levels: Vec<f64> = (0..n)
        .map(|i| level_of_index(i, d) as f64 * spec.energy_quantum())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..trials {
        let mut m = rho.matrix().clone();
        for _ in 0..n * (n - 1) {
            let p = rng.gen_range(0..n);
            let mut q = rng.gen_range(0..n - 1);
            if q >= p {
                q += 1;
            }
            let rot = TwoLevelRotation {
                p,
                q,
                theta: rng.gen_range(0.0..std::f64::consts::TAU),
                phi: rng.gen_range(0.0..std::f64::consts::TAU),
                chi: rng.gen_range(0.0..std::f64::consts::TAU),
            };
            rot.conjugate(&mut m);
        }
        let energy: f64 = m.real_diagonal().iter().zip(&levels).map(|(p, e)| p * e).sum();
        best = best.min(energy);
    }
    Ok(best)
}
