//! Passive states, global and local ergotropy, and the ergotropic gap.
//!
//! Every quantity comes from the spectral characterization: the minimum of
//! `Tr(UρU†H)` over unitaries is attained by pairing the largest population
//! with the lowest energy. No unitary is ever built.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{slot_table, LadderSpec};
use crate::linalg::{ComplexMatrix, Subsystem};
use crate::state::{DensityMatrix, Spectrum};

/// Tolerance for the two routes to the gap and for sign checks.
pub const GAP_TOL: f64 = 1e-9;

/// Σ_k spec[k] · energies[k], where `spec` is nonincreasing and `energies`
/// nondecreasing.
pub fn passive_energy(spec: &Spectrum, energies: &[f64]) -> Result<f64> {
    if spec.len() != energies.len() {
        return Err(Error::LengthMismatch {
            expected: spec.len(),
            got: energies.len(),
        });
    }
    Ok(spec.values().iter().zip(energies).map(|(p, e)| p * e).sum())
}

/// Mean energy `Tr(ρ H_ABC)` read off the diagonal of ρ.
pub fn mean_energy(rho: &DensityMatrix, spec: &LadderSpec) -> Result<f64> {
    check_dims(rho, spec)?;
    let d = spec.d();
    let e = spec.energy_quantum();
    Ok(rho
        .matrix()
        .real_diagonal()
        .iter()
        .enumerate()
        .map(|(i, p)| p * crate::ladder::level_of_index(i, d) as f64 * e)
        .sum())
}

/// Diagonal state carrying the global spectrum on the slots in ascending
/// energy order (ties by basis index).
pub fn passive_state(rho: &DensityMatrix, spec: &LadderSpec) -> Result<DensityMatrix> {
    check_dims(rho, spec)?;
    let table = slot_table(spec);
    let mut diag = vec![0.0; table.len()];
    for (&idx, &pop) in table.basis_order.iter().zip(rho.global_spectrum().values()) {
        diag[idx] = pop;
    }
    DensityMatrix::new(ComplexMatrix::from_real_diagonal(&diag))
}

/// Energy of the global passive state, `Tr(ρ^p H_ABC)`.
pub fn global_passive_energy(rho: &DensityMatrix, spec: &LadderSpec) -> Result<f64> {
    check_dims(rho, spec)?;
    passive_energy(rho.global_spectrum(), &slot_table(spec).energies(spec))
}

/// `Tr(ρH) − Tr(ρ^p H)`
pub fn global_ergotropy(rho: &DensityMatrix, spec: &LadderSpec) -> Result<f64> {
    Ok(mean_energy(rho, spec)? - global_passive_energy(rho, spec)?)
}

/// Ergotropy of one party under local unitaries only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalErgotropy {
    pub subsystem: Subsystem,
    pub mean_energy: f64,
    pub passive_energy: f64,
    pub ergotropy: f64,
}

fn local_part(rho: &DensityMatrix, spec: &LadderSpec, which: Subsystem) -> Result<LocalErgotropy> {
    let reduced = rho.marginal(which)?;
    let energies = spec.local_energies();
    let mean: f64 = reduced
        .real_diagonal()
        .iter()
        .zip(&energies)
        .map(|(p, e)| p * e)
        .sum();
    let passive = passive_energy(&rho.marginal_spectrum(which)?, &energies)?;
    Ok(LocalErgotropy {
        subsystem: which,
        mean_energy: mean,
        passive_energy: passive,
        ergotropy: mean - passive,
    })
}

/// Local ergotropies of A, B and C and their total.
pub fn local_ergotropy(rho: &DensityMatrix, spec: &LadderSpec) -> Result<(f64, [LocalErgotropy; 3])> {
    check_dims(rho, spec)?;
    let parts = [
        local_part(rho, spec, Subsystem::A)?,
        local_part(rho, spec, Subsystem::B)?,
        local_part(rho, spec, Subsystem::C)?,
    ];
    Ok((parts.iter().map(|p| p.ergotropy).sum(), parts))
}

/// Everything that goes into the ergotropic gap. Energies are absolute,
/// i.e. already multiplied by `E`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub d: usize,
    pub energy_quantum: f64,
    pub mean_energy: f64,
    pub global_passive_energy: f64,
    pub local_passive_energies: [f64; 3],
    pub global_ergotropy: f64,
    pub local_ergotropy_a: f64,
    pub local_ergotropy_b: f64,
    pub local_ergotropy_c: f64,
    pub local_ergotropy_total: f64,
    /// `Σ_X Tr(ρ_X^p H_X) − Tr(ρ^p H_ABC)`
    pub gap: f64,
}

/// Builds the full [`GapReport`]. The gap is taken from the passive-energy
/// form and must agree with `W_global − W_local` within [`GAP_TOL`].
pub fn ergotropic_gap(rho: &DensityMatrix, spec: &LadderSpec) -> Result<GapReport> {
    let mean = mean_energy(rho, spec)?;
    let global_passive = global_passive_energy(rho, spec)?;
    let (local_total, parts) = local_ergotropy(rho, spec)?;
    let local_passive = [parts[0].passive_energy, parts[1].passive_energy, parts[2].passive_energy];
    let gap = local_passive.iter().sum::<f64>() - global_passive;
    let global = mean - global_passive;

    let other_route = global - local_total;
    if (gap - other_route).abs() > GAP_TOL {
        return Err(Error::InternalInconsistency(format!(
            "gap {gap} from passive energies differs from ergotropy difference {other_route}"
        )));
    }
    Ok(GapReport {
        d: spec.d(),
        energy_quantum: spec.energy_quantum(),
        mean_energy: mean,
        global_passive_energy: global_passive,
        local_passive_energies: local_passive,
        global_ergotropy: global,
        local_ergotropy_a: parts[0].ergotropy,
        local_ergotropy_b: parts[1].ergotropy,
        local_ergotropy_c: parts[2].ergotropy,
        local_ergotropy_total: local_total,
        gap,
    })
}

fn check_dims(rho: &DensityMatrix, spec: &LadderSpec) -> Result<()> {
    if rho.d() != spec.d() {
        return Err(Error::DimensionMismatch(format!(
            "state has local dimension {}, ladder has {}",
            rho.d(),
            spec.d()
        )));
    }
    Ok(())
}
