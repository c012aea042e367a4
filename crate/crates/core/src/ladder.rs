//! The non-interacting tripartite Hamiltonian `H_A + H_B + H_C` with equally
//! spaced local levels `0, E, …, (d−1)E`, and the combinatorics of its
//! spectrum.
//!
//! All level arithmetic is done in integers. A *slot* is one basis ket
//! `|abc⟩` placed at energy `a + b + c` (in units of `E`); sorting the slots
//! by energy gives the ladder that a passive state fills from the bottom.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix};

/// Local dimension and level spacing shared by the three parties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    d: usize,
    energy_quantum: f64,
}

impl LadderSpec {
    pub fn new(d: usize, energy_quantum: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::OutOfRange(format!("local dimension {d} < 2")));
        }
        if !(energy_quantum > 0.0 && energy_quantum.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "energy quantum {energy_quantum} must be positive"
            )));
        }
        Ok(Self { d, energy_quantum })
    }

    /// Ladder with `E = 1`, so every energy is reported in units of `E`.
    pub fn unit(d: usize) -> Result<Self> {
        Self::new(d, 1.0)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn energy_quantum(&self) -> f64 {
        self.energy_quantum
    }

    /// Highest level of the global ladder, `3(d−1)`.
    pub fn top_level(&self) -> usize {
        3 * (self.d - 1)
    }

    /// Local energies `0, E, …, (d−1)E`.
    pub fn local_energies(&self) -> Vec<f64> {
        (0..self.d).map(|j| j as f64 * self.energy_quantum).collect()
    }
}

/// `diag(0, E, …, (d−1)E)`
pub fn local_hamiltonian(spec: &LadderSpec) -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&spec.local_energies())
}

/// `H_A ⊗ I ⊗ I + I ⊗ H_B ⊗ I + I ⊗ I ⊗ H_C`
pub fn global_hamiltonian(spec: &LadderSpec) -> Result<ComplexMatrix> {
    let h = local_hamiltonian(spec);
    let id = ComplexMatrix::identity(spec.d);
    let mut total = tensor_product(&tensor_product(&h, &id)?, &id)?;
    total.add_scaled(1.0, &tensor_product(&tensor_product(&id, &h)?, &id)?)?;
    total.add_scaled(1.0, &tensor_product(&tensor_product(&id, &id)?, &h)?)?;
    Ok(total)
}

/// Level `a + b + c` of the basis index `a·d² + b·d + c`.
pub fn level_of_index(index: usize, d: usize) -> usize {
    index / (d * d) + (index / d) % d + index % d
}

/// Digits `(a, b, c)` of a basis index.
pub fn digits_of_index(index: usize, d: usize) -> [usize; 3] {
    [index / (d * d), (index / d) % d, index % d]
}

fn check_level(e: usize, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("local dimension {d} < 2")));
    }
    if e > 3 * (d - 1) {
        return Err(Error::OutOfRange(format!(
            "level {e} exceeds the top level {} for d = {d}",
            3 * (d - 1)
        )));
    }
    Ok(())
}

/// Number of kets `|abc⟩` with digits below `d` and `a + b + c = e`.
///
/// Enumerates the first digit and counts the admissible second digits.
pub fn degeneracy(e: usize, d: usize) -> Result<usize> {
    check_level(e, d)?;
    let top = d - 1;
    let mut count = 0;
    for a in 0..=top.min(e) {
        let rest = e - a;
        // b ∈ [rest − top, top] ∩ [0, rest]
        let lo = rest.saturating_sub(top);
        let hi = rest.min(top);
        if hi >= lo {
            count += hi - lo + 1;
        }
    }
    Ok(count)
}

/// Degeneracy from the three piecewise formulas for the bottom, middle and
/// top bands of the ladder:
///
/// * `e = i ≤ d−1`: `(i+1)(i+2)/2`
/// * `e = d−1+i`, `1 ≤ i ≤ d−1`: `(d+i)(d+i+1)/2 − 3i(i+1)/2`
/// * `e = 2d−2+i`, `1 ≤ i ≤ d−1`: `(d−i)(d−i+1)/2`
pub fn degeneracy_closed_form(e: usize, d: usize) -> Result<usize> {
    check_level(e, d)?;
    Ok(if e < d {
        let i = e;
        (i + 1) * (i + 2) / 2
    } else if e <= 2 * d - 2 {
        let i = e + 1 - d;
        (d + i) * (d + i + 1) / 2 - 3 * i * (i + 1) / 2
    } else {
        let i = e + 2 - 2 * d;
        (d - i) * (d - i + 1) / 2
    })
}

/// `D_i = i(i+1)(i+2)/6`, the number of slots on the levels `0..i` of an
/// unbounded ladder.
pub fn cumulative_d(i: usize) -> usize {
    i * (i + 1) * (i + 2) / 6
}

/// `D = (2d−1)2d(2d+1)/6 − (d−1)d(d+1)/3`, which equals `d³`.
pub fn total_slot_count(d: usize) -> usize {
    (2 * d - 1) * (2 * d) * (2 * d + 1) / 6 - (d - 1) * d * (d + 1) / 3
}

/// First slot index of level `e`, written with `D_i` and `D` band by band:
/// `D_i` for `e = i ≤ d−1`, `D_{d+i−1} − 3D_{i−1}` for `e = d−1+i`, and
/// `D − D_{d−i}` for `e = 2d−2+i`.
pub fn level_start_closed_form(e: usize, d: usize) -> Result<usize> {
    check_level(e, d)?;
    Ok(if e < d {
        cumulative_d(e)
    } else if e <= 2 * d - 2 {
        let i = e + 1 - d;
        cumulative_d(d + i - 1) - 3 * cumulative_d(i - 1)
    } else {
        let i = e + 2 - 2 * d;
        total_slot_count(d) - cumulative_d(d - i)
    })
}

/// One energy level of the global ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub energy_level: usize,
    pub degeneracy: usize,
    pub cumulative_start: usize,
}

/// The global ladder: levels with their degeneracies, the energy of every
/// slot in ascending order, and which basis index fills each slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotTable {
    pub d: usize,
    pub levels: Vec<Level>,
    /// Energy of each slot in units of `E`, nondecreasing, length `d³`.
    pub slot_energies: Vec<usize>,
    /// Basis indices ordered by `(level, index)`; `basis_order[k]` is the
    /// ket occupying slot `k`.
    pub basis_order: Vec<usize>,
}

impl SlotTable {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::OutOfRange(format!("local dimension {d} < 2")));
        }
        let top = 3 * (d - 1);
        let mut levels = Vec::with_capacity(top + 1);
        let mut slot_energies = Vec::with_capacity(d * d * d);
        let mut start = 0;
        for e in 0..=top {
            let g = degeneracy(e, d)?;
            levels.push(Level {
                energy_level: e,
                degeneracy: g,
                cumulative_start: start,
            });
            slot_energies.extend(std::iter::repeat_n(e, g));
            start += g;
        }
        let mut basis_order: Vec<usize> = (0..d * d * d).collect();
        basis_order.sort_by_key(|&i| (level_of_index(i, d), i));
        Ok(Self {
            d,
            levels,
            slot_energies,
            basis_order,
        })
    }

    pub fn len(&self) -> usize {
        self.slot_energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slot_energies.is_empty()
    }

    /// Slot energies scaled by `E`.
    pub fn energies(&self, spec: &LadderSpec) -> Vec<f64> {
        self.slot_energies
            .iter()
            .map(|&e| e as f64 * spec.energy_quantum())
            .collect()
    }

    pub fn degeneracies(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degeneracy).collect()
    }

    pub fn level_starts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.cumulative_start).collect()
    }
}

pub fn slot_table(spec: &LadderSpec) -> SlotTable {
    SlotTable::new(spec.d()).expect("LadderSpec guarantees d >= 2")
}

/// `n = D_l + m` with `l` maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDecomposition {
    pub l: usize,
    pub m: usize,
}

/// Splits `n` into `D_l + m` taking the largest `l` with `D_l ≤ n`, so that
/// `0 ≤ m < (l+1)(l+2)/2`. Slot `n` of an unbounded ladder is then the
/// `(m+1)`-th slot on level `l`.
pub fn decompose_level(n: usize) -> LevelDecomposition {
    let mut l = 0;
    while cumulative_d(l + 1) <= n {
        l += 1;
    }
    LevelDecomposition {
        l,
        m: n - cumulative_d(l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_hamiltonians() {
        let spec = LadderSpec::new(2, 1.5).unwrap();
        assert_eq!(local_hamiltonian(&spec), ComplexMatrix::from_real_diagonal(&[0.0, 1.5]));
        let spec3 = LadderSpec::unit(3).unwrap();
        assert_eq!(local_hamiltonian(&spec3), ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 2.0]));
        let spec4 = LadderSpec::unit(4).unwrap();
        assert_eq!(
            local_hamiltonian(&spec4),
            ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 2.0, 3.0])
        );
    }

    #[test]
    fn global_hamiltonian_qubits() {
        let h = global_hamiltonian(&LadderSpec::unit(2).unwrap()).unwrap();
        assert_eq!(
            h,
            ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 3.0])
        );
    }

    #[test]
    fn global_hamiltonian_matches_digit_sums() {
        for d in 2..=4 {
            let h = global_hamiltonian(&LadderSpec::unit(d).unwrap()).unwrap();
            for i in 0..d * d * d {
                assert_eq!(h[(i, i)].re, level_of_index(i, d) as f64);
            }
        }
        // Brute-force trace at d = 3.
        let mut trace = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    trace += a + b + c;
                }
            }
        }
        assert_eq!(trace, 81);
        let h3 = global_hamiltonian(&LadderSpec::unit(3).unwrap()).unwrap();
        assert_eq!(h3.trace().re, 81.0);
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy(2, 3).unwrap(), 6);
        assert_eq!(degeneracy(2, 5).unwrap(), 6);
        assert_eq!(degeneracy(3, 4).unwrap(), 10);
        assert_eq!(degeneracy(3, 2).unwrap(), 1);
        assert!(matches!(degeneracy(4, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(degeneracy_closed_form(7, 3), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn cumulative_counts() {
        assert_eq!(cumulative_d(1), 1);
        assert_eq!(cumulative_d(3), 10);
        assert_eq!(cumulative_d(2), 4);
        assert_eq!(total_slot_count(2), 8);
        for d in 2..=10 {
            assert_eq!(total_slot_count(d), d * d * d);
        }
    }

    #[test]
    fn slot_tables() {
        let t2 = SlotTable::new(2).unwrap();
        assert_eq!(t2.slot_energies, vec![0, 1, 1, 1, 2, 2, 2, 3]);
        let t3 = SlotTable::new(3).unwrap();
        assert_eq!(t3.len(), 27);
        assert_eq!(t3.degeneracies(), vec![1, 3, 6, 7, 6, 3, 1]);
        assert_eq!(t3.levels[4].cumulative_start, 17);
        assert_eq!(level_start_closed_form(4, 3).unwrap(), 17);
    }

    #[test]
    fn level_starts_match_closed_forms() {
        for d in 2..=8 {
            let t = SlotTable::new(d).unwrap();
            for lvl in &t.levels {
                assert_eq!(
                    level_start_closed_form(lvl.energy_level, d).unwrap(),
                    lvl.cumulative_start,
                    "d = {d}, level {}",
                    lvl.energy_level
                );
            }
        }
    }

    #[test]
    fn basis_order_fills_slots_by_energy() {
        let t = SlotTable::new(3).unwrap();
        for (k, &idx) in t.basis_order.iter().enumerate() {
            assert_eq!(level_of_index(idx, 3), t.slot_energies[k]);
        }
        assert_eq!(&t.basis_order[..4], &[0, 1, 3, 9]);
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose_level(0), LevelDecomposition { l: 0, m: 0 });
        assert_eq!(decompose_level(1), LevelDecomposition { l: 1, m: 0 });
        assert_eq!(decompose_level(2), LevelDecomposition { l: 1, m: 1 });
        assert_eq!(decompose_level(4), LevelDecomposition { l: 2, m: 0 });
        assert_eq!(decompose_level(9), LevelDecomposition { l: 2, m: 5 });
        assert_eq!(decompose_level(10), LevelDecomposition { l: 3, m: 0 });
    }

    #[test]
    fn spec_validation() {
        assert!(LadderSpec::new(1, 1.0).is_err());
        assert!(LadderSpec::new(2, 0.0).is_err());
        assert!(LadderSpec::new(2, f64::NAN).is_err());
        assert_eq!(LadderSpec::unit(3).unwrap().top_level(), 6);
    }
}
