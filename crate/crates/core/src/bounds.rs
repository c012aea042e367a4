//! Upper bounds on the ergotropic gap of separable tripartite states and the
//! entanglement witness they induce.
//!
//! For a separable `ρ` with global spectrum `x_0 ≥ x_1 ≥ …`:
//!
//! ```text
//! Δ_EG ≤ min{ (Y − Z)·E, M(d)·E }
//! Y = 3 Σ_{i<d} i·x_i + 3(d−1) Σ_{i≥d} x_i
//! Z = Σ_k x_k · slot_energy(k)
//! M(d) = 3(d−1)/2 − (sum of the d lowest slot energies)/d
//! ```
//!
//! A gap above the bound certifies entanglement; a gap below it says nothing.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ergotropy::ergotropic_gap;
use crate::error::{Error, Result};
use crate::ladder::{cumulative_d, decompose_level, total_slot_count, LadderSpec, SlotTable};
use crate::linalg::{tensor_product, ComplexMatrix, Subsystem};
use crate::state::{DensityMatrix, Spectrum};

/// Default slack on `gap − bound` before a state is called entangled.
pub const DEFAULT_DECISION_TOL: f64 = 1e-9;

/// Absolute slack for majorization partial sums.
pub const MAJORIZATION_SLACK: f64 = 1e-9;

/// Allowed disagreement between the two routes to `Z`.
pub const Z_ROUTE_TOL: f64 = 1e-9;

/// Threshold above which a fixed-operator combination counts as violated.
pub const FIXED_OPERATOR_SLACK: f64 = 1e-9;

fn check_global_len(spec: &Spectrum, d: usize) -> Result<()> {
    if spec.len() != d * d * d {
        return Err(Error::LengthMismatch {
            expected: d * d * d,
            got: spec.len(),
        });
    }
    Ok(())
}

/// `Y = 3 Σ_{i=0}^{d−1} i·x_i + 3(d−1) Σ_{i=d}^{d³−1} x_i`
pub fn bound_y(spec: &Spectrum, d: usize) -> Result<f64> {
    check_global_len(spec, d)?;
    let x = spec.values();
    let head: f64 = x[..d].iter().enumerate().map(|(i, xi)| i as f64 * xi).sum();
    let tail: f64 = x[d..].iter().sum();
    Ok(3.0 * head + 3.0 * (d - 1) as f64 * tail)
}

/// `Z` as the passive pairing `Σ_k x_k · slot_energy(k)`.
fn bound_z_pairing(spec: &Spectrum, table: &SlotTable) -> f64 {
    spec.values()
        .iter()
        .zip(&table.slot_energies)
        .map(|(x, &e)| x * e as f64)
        .sum()
}

/// `Z` assembled band by band from the closed-form slot indices:
///
/// ```text
///   Σ_{i=1}^{d−1} i        Σ_{j<(i+1)(i+2)/2}              x[D_i + j]
/// + Σ_{i=1}^{d−1} (d−1+i)  Σ_{k<(d+i)(d+i+1)/2 − 3i(i+1)/2} x[D_{d+i−1} − 3D_{i−1} + k]
/// + Σ_{i=1}^{d−1} (2d−2+i) Σ_{l<(d−i)(d−i+1)/2}            x[D − D_{d−i} + l]
/// ```
pub fn bound_z_triple_sum(spec: &Spectrum, d: usize) -> Result<f64> {
    check_global_len(spec, d)?;
    let x = spec.values();
    let band = |start: usize, count: usize| -> f64 { x[start..start + count].iter().sum() };
    let total = total_slot_count(d);
    let mut z = 0.0;
    for i in 1..d {
        z += i as f64 * band(cumulative_d(i), (i + 1) * (i + 2) / 2);
    }
    for i in 1..d {
        let start = cumulative_d(d + i - 1) - 3 * cumulative_d(i - 1);
        let count = (d + i) * (d + i + 1) / 2 - 3 * i * (i + 1) / 2;
        z += (d - 1 + i) as f64 * band(start, count);
    }
    for i in 1..d {
        let start = total - cumulative_d(d - i);
        let count = (d - i) * (d - i + 1) / 2;
        z += (2 * d - 2 + i) as f64 * band(start, count);
    }
    Ok(z)
}

/// `Z = Tr(ρ^p H_ABC)/E`. Computed by passive pairing and cross-checked
/// against [`bound_z_triple_sum`].
pub fn bound_z(spec: &Spectrum, d: usize) -> Result<f64> {
    check_global_len(spec, d)?;
    let table = SlotTable::new(d)?;
    let pairing = bound_z_pairing(spec, &table);
    let banded = bound_z_triple_sum(spec, d)?;
    if (pairing - banded).abs() > Z_ROUTE_TOL {
        return Err(Error::InternalInconsistency(format!(
            "Z by pairing is {pairing}, by bands {banded} (d = {d})"
        )));
    }
    Ok(pairing)
}

/// Integer `Σ_{i=1}^{l−1} i·(i+1)(i+2)/2 + l(m+1)` with `(l, m)` from
/// [`decompose_level`]`(d − 1)`: the energy of the `d` lowest slots.
pub fn lowest_slots_energy_by_levels(d: usize) -> usize {
    let dec = decompose_level(d - 1);
    let full: usize = (1..dec.l).map(|i| i * (i + 1) * (i + 2) / 2).sum();
    full + dec.l * (dec.m + 1)
}

/// `M(d) = 3(d−1)/2 − (energy of the d lowest slots)/d`.
///
/// The slot energy is computed from the `(l, m)` decomposition and from the
/// explicit slot table; the two must agree.
pub fn bound_m(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("local dimension {d} < 2")));
    }
    let by_levels = lowest_slots_energy_by_levels(d);
    let by_table: usize = SlotTable::new(d)?.slot_energies[..d].iter().sum();
    if by_levels != by_table {
        return Err(Error::InternalInconsistency(format!(
            "lowest {d} slots sum to {by_table}, level decomposition gives {by_levels}"
        )));
    }
    let m = 1.5 * (d - 1) as f64 - by_levels as f64 / d as f64;
    let poly = bound_m_polynomial(d);
    if (poly - m).abs() > 1e-12 {
        log::warn!(
            "M({d}) = {m} from the level sum; the polynomial form (l³+2l²−5l+2)/8 gives {poly}"
        );
    }
    Ok(m)
}

/// `3(d−1)/2 − (l/d)[(l³+2l²−5l+2)/8 + m + 1]`.
///
/// Kept for comparison only: it agrees with [`bound_m`] for `d ≤ 4` and
/// differs from `d = 5` on (`26/5` vs `5` at `d = 5`).
pub fn bound_m_polynomial(d: usize) -> f64 {
    let dec = decompose_level(d - 1);
    let l = dec.l as f64;
    let poly = (l.powi(3) + 2.0 * l * l - 5.0 * l + 2.0) / 8.0;
    1.5 * (d - 1) as f64 - l / d as f64 * (poly + dec.m as f64 + 1.0)
}

/// Bound ingredients for one state. `y`, `z` and `m_d` are coefficients of
/// `E`; `min_bound` is an energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableBound {
    pub y: f64,
    pub z: f64,
    pub y_minus_z: f64,
    pub m_d: f64,
    pub min_bound: f64,
}

pub fn separable_bound(rho: &DensityMatrix, spec: &LadderSpec) -> Result<SeparableBound> {
    let d = spec.d();
    if rho.d() != d {
        return Err(Error::DimensionMismatch(format!(
            "state has local dimension {}, ladder has {d}",
            rho.d()
        )));
    }
    let x = rho.global_spectrum();
    let y = bound_y(x, d)?;
    let z = bound_z(x, d)?;
    let m_d = bound_m(d)?;
    let y_minus_z = y - z;
    Ok(SeparableBound {
        y,
        z,
        y_minus_z,
        m_d,
        min_bound: y_minus_z.min(m_d) * spec.energy_quantum(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Entangled => "Entangled",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    pub gap: f64,
    pub y: f64,
    pub z: f64,
    pub y_minus_z: f64,
    pub m_d: f64,
    pub min_bound: f64,
    pub verdict: Verdict,
    /// `gap − min_bound`
    pub margin: f64,
    pub decision_tol: f64,
}

/// Flags `ρ` as entangled when its gap exceeds the separable bound by more
/// than `decision_tol`. Never certifies separability.
pub fn witness(rho: &DensityMatrix, spec: &LadderSpec, decision_tol: f64) -> Result<WitnessVerdict> {
    if decision_tol.is_nan() || decision_tol < 0.0 {
        return Err(Error::OutOfRange(format!("decision tolerance {decision_tol} < 0")));
    }
    let bound = separable_bound(rho, spec)?;
    let gap = ergotropic_gap(rho, spec)?.gap;
    let margin = gap - bound.min_bound;
    Ok(WitnessVerdict {
        gap,
        y: bound.y,
        z: bound.z,
        y_minus_z: bound.y_minus_z,
        m_d: bound.m_d,
        min_bound: bound.min_bound,
        verdict: if margin > decision_tol {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        },
        margin,
        decision_tol,
    })
}

/// `a ≻ b`: after sorting both nonincreasing and zero-padding to a common
/// length, every partial sum of `a` dominates that of `b` and the totals
/// agree (slack [`MAJORIZATION_SLACK`]).
pub fn majorizes(a: &[f64], b: &[f64]) -> bool {
    let n = a.len().max(b.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|x, y| y.total_cmp(x));
        s.resize(n, 0.0);
        s
    };
    let (a, b) = (sorted(a), sorted(b));
    let (mut sa, mut sb) = (0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        sa += x;
        sb += y;
        if sa < sb - MAJORIZATION_SLACK {
            return false;
        }
    }
    (sa - sb).abs() <= MAJORIZATION_SLACK
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NielsenKempe {
    pub passes: bool,
    pub failing_subsystems: Vec<Subsystem>,
}

/// Checks that every marginal spectrum majorizes the global one. A failure
/// certifies entanglement.
pub fn nielsen_kempe_check(rho: &DensityMatrix) -> Result<NielsenKempe> {
    let global = rho.global_spectrum().values();
    let mut failing = Vec::new();
    for s in Subsystem::ALL {
        if !majorizes(rho.marginal_spectrum(s)?.values(), global) {
            failing.push(s);
        }
    }
    Ok(NielsenKempe {
        passes: failing.is_empty(),
        failing_subsystems: failing,
    })
}

/// The two three-qubit operator sets whose combinations
/// `|⟨O₁⟩ ± ⟨O₂⟩ ± ⟨O₃⟩| ≤ 1` hold for every separable state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorFamily {
    /// `X⊗X⊗X`, `I⊗Z⊗Z`, `Y⊗Y⊗X`
    GhzType,
    /// `I⊗X⊗X`, `I⊗Y⊗Y`, `Z⊗Z⊗Z`
    WType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn matrix(self) -> ComplexMatrix {
        let c = Complex64::new;
        let rows = match self {
            Pauli::I => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
            Pauli::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            Pauli::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
            Pauli::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        };
        ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2")
    }
}

fn pauli_string(ops: [Pauli; 3]) -> ComplexMatrix {
    let ab = tensor_product(&ops[0].matrix(), &ops[1].matrix()).expect("4x4");
    tensor_product(&ab, &ops[2].matrix()).expect("8x8")
}

impl OperatorFamily {
    fn operators(self) -> [ComplexMatrix; 3] {
        use Pauli::*;
        match self {
            OperatorFamily::GhzType => [pauli_string([X, X, X]), pauli_string([I, Z, Z]), pauli_string([Y, Y, X])],
            OperatorFamily::WType => [pauli_string([I, X, X]), pauli_string([I, Y, Y]), pauli_string([Z, Z, Z])],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedOperatorResult {
    pub family: OperatorFamily,
    /// `⟨O₁⟩, ⟨O₂⟩, ⟨O₃⟩`
    pub expectations: [f64; 3],
    /// Largest `|⟨O₁⟩ ± ⟨O₂⟩ ± ⟨O₃⟩|` over the four sign choices.
    pub max_abs_value: f64,
    pub violated: bool,
}

/// Evaluates all four sign combinations of a fixed three-qubit operator set.
pub fn fixed_operator_witness(rho: &DensityMatrix, family: OperatorFamily) -> Result<FixedOperatorResult> {
    if rho.d() != 2 {
        return Err(Error::UnsupportedDimension {
            expected: 2,
            got: rho.d(),
        });
    }
    let ops = family.operators();
    let mut expectations = [0.0; 3];
    for (slot, op) in expectations.iter_mut().zip(&ops) {
        *slot = rho.matrix().trace_product(op)?.re;
    }
    let [o1, o2, o3] = expectations;
    let max_abs_value = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .map(|(s2, s3)| (o1 + s2 * o2 + s3 * o3).abs())
        .fold(0.0, f64::max);
    Ok(FixedOperatorResult {
        family,
        expectations,
        max_abs_value,
        violated: max_abs_value > 1.0 + FIXED_OPERATOR_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use approx::assert_abs_diff_eq;

    fn spectrum(v: Vec<f64>) -> Spectrum {
        Spectrum::from_probabilities(v).unwrap()
    }

    fn pure(n: usize) -> Spectrum {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        spectrum(v)
    }

    #[test]
    fn y_examples() {
        assert_eq!(bound_y(&pure(8), 2).unwrap(), 0.0);
        assert_abs_diff_eq!(bound_y(&spectrum(vec![0.125; 8]), 2).unwrap(), 21.0 / 8.0, epsilon = 1e-15);
        assert!(matches!(bound_y(&pure(8), 3), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn z_examples() {
        assert_abs_diff_eq!(bound_z(&spectrum(vec![0.125; 8]), 2).unwrap(), 1.5, epsilon = 1e-15);
        assert_eq!(bound_z(&pure(27), 3).unwrap(), 0.0);
        let uniform = spectrum(vec![0.125; 8]);
        let ymz = bound_y(&uniform, 2).unwrap() - bound_z(&uniform, 2).unwrap();
        assert_abs_diff_eq!(ymz, 9.0 / 8.0, epsilon = 1e-15);
    }

    #[test]
    fn z_routes_agree_on_uniform_spectra() {
        for d in 2..=6 {
            let n = d * d * d;
            let s = spectrum(vec![1.0 / n as f64; n]);
            // Uniform: Z is the mean level, 3(d−1)/2.
            assert_abs_diff_eq!(bound_z_triple_sum(&s, d).unwrap(), 1.5 * (d - 1) as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(bound_z(&s, d).unwrap(), 1.5 * (d - 1) as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn m_values() {
        assert_eq!(bound_m(2).unwrap(), 1.0);
        assert_abs_diff_eq!(bound_m(3).unwrap(), 7.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bound_m(5).unwrap(), 5.0, epsilon = 1e-15);
        assert!(bound_m(1).is_err());
    }

    #[test]
    fn polynomial_form_agrees_only_for_small_d() {
        for d in 2..=4 {
            assert_abs_diff_eq!(bound_m_polynomial(d), bound_m(d).unwrap(), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(bound_m_polynomial(5), 26.0 / 5.0, epsilon = 1e-12);
        assert!((bound_m_polynomial(5) - bound_m(5).unwrap()).abs() > 0.1);
    }

    #[test]
    fn bound_examples() {
        let spec = LadderSpec::unit(2).unwrap();
        let ex1 = separable_bound(&gallery::ghz_w_superposition(0.3).unwrap(), &spec).unwrap();
        assert_abs_diff_eq!(ex1.min_bound, 0.0, epsilon = 1e-12);
        let ex2 = separable_bound(&gallery::ghz_colored_noise(0.5).unwrap(), &spec).unwrap();
        assert_abs_diff_eq!(ex2.min_bound, 0.5, epsilon = 1e-12);
        let ex3 = separable_bound(&gallery::ghz_white_noise(0.0).unwrap(), &spec).unwrap();
        assert_abs_diff_eq!(ex3.y_minus_z, 9.0 / 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ex3.min_bound, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn witness_examples() {
        let spec = LadderSpec::unit(2).unwrap();
        let on = witness(&gallery::ghz_white_noise(0.5).unwrap(), &spec, DEFAULT_DECISION_TOL).unwrap();
        assert_eq!(on.verdict, Verdict::Entangled);
        let off = witness(&gallery::ghz_white_noise(0.4).unwrap(), &spec, DEFAULT_DECISION_TOL).unwrap();
        assert_eq!(off.verdict, Verdict::Inconclusive);
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[0] = Complex64::new(1.0, 0.0);
        let ground = witness(&DensityMatrix::from_pure(&v).unwrap(), &spec, DEFAULT_DECISION_TOL).unwrap();
        assert_eq!(ground.verdict, Verdict::Inconclusive);
        assert_abs_diff_eq!(ground.gap, 0.0, epsilon = 1e-12);
        assert!(witness(&gallery::w_state(), &spec, -1.0).is_err());
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5]));
        assert!(!majorizes(&[0.5, 0.5], &[1.0, 0.0]));
        let mut w_global = vec![0.0; 8];
        w_global[0] = 1.0;
        assert!(!majorizes(&[2.0 / 3.0, 1.0 / 3.0], &w_global));
        assert!(majorizes(&[0.5, 0.5], &[0.125; 8]));
        // Different totals never majorize.
        assert!(!majorizes(&[1.0], &[0.5]));
    }

    #[test]
    fn nielsen_kempe_examples() {
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[5] = Complex64::new(1.0, 0.0);
        assert!(nielsen_kempe_check(&DensityMatrix::from_pure(&v).unwrap()).unwrap().passes);
        let ghz = nielsen_kempe_check(&gallery::ghz(2).unwrap()).unwrap();
        assert!(!ghz.passes);
        assert_eq!(ghz.failing_subsystems, Subsystem::ALL.to_vec());
        assert!(nielsen_kempe_check(&gallery::ghz_white_noise(0.0).unwrap()).unwrap().passes);
    }

    #[test]
    fn fixed_operator_examples() {
        let psi = gallery::ghz_w_superposition(0.5).unwrap();
        assert!(fixed_operator_witness(&psi, OperatorFamily::GhzType).unwrap().violated);
        assert!(fixed_operator_witness(&psi, OperatorFamily::WType).unwrap().violated);
        let noise = gallery::ghz_white_noise(0.0).unwrap();
        for fam in [OperatorFamily::GhzType, OperatorFamily::WType] {
            let r = fixed_operator_witness(&noise, fam).unwrap();
            assert_abs_diff_eq!(r.max_abs_value, 0.0, epsilon = 1e-15);
            assert!(!r.violated);
        }
        assert!(matches!(
            fixed_operator_witness(&gallery::ghz(3).unwrap(), OperatorFamily::GhzType),
            Err(Error::UnsupportedDimension { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn ghz_expectations() {
        let r = fixed_operator_witness(&gallery::ghz(2).unwrap(), OperatorFamily::GhzType).unwrap();
        assert_abs_diff_eq!(r.expectations[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.expectations[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.expectations[2], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.max_abs_value, 3.0, epsilon = 1e-12);
    }
}
