//! State files, parameter sweeps and their serialized forms.
//!
//! State files are JSON:
//!
//! ```json
//! {"format": "dense", "d": 2, "matrix": [[[re, im], ...], ...]}
//! {"format": "pure",  "d": 2, "amplitudes": [[re, im], ...]}
//! ```
//!
//! Sweeps are CSV with a unit comment line, a fixed header, LF line endings
//! and numbers printed with at most 12 significant digits.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{witness, Verdict};
use crate::error::{Error, Result};
use crate::gallery::FamilySpec;
use crate::ladder::LadderSpec;
use crate::linalg::ComplexMatrix;
use crate::state::{validate_matrix, DensityMatrix, ValidationReport};

pub const UNIT_COMMENT: &str = "# energies in units of E";
pub const CSV_HEADER: &str = "p,gap,y_minus_z,m_d,min_bound,verdict,margin";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase")]
pub enum StateFile {
    Dense { d: usize, matrix: Vec<Vec<[f64; 2]>> },
    Pure { d: usize, amplitudes: Vec<[f64; 2]> },
}

fn to_complex(pair: &[f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn to_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        StateFile::Dense {
            d: rho.d(),
            matrix: rho
                .matrix()
                .rows()
                .map(|row| row.iter().map(to_pair).collect())
                .collect(),
        }
    }

    pub fn from_amplitudes(d: usize, amplitudes: &[Complex64]) -> Self {
        StateFile::Pure {
            d,
            amplitudes: amplitudes.iter().map(to_pair).collect(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            StateFile::Dense { d, .. } | StateFile::Pure { d, .. } => *d,
        }
    }

    /// The raw density matrix described by the file, before any validation
    /// beyond shape.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let d = self.d();
        if d < 2 {
            return Err(Error::Parse(format!("local dimension {d} < 2")));
        }
        let n = d * d * d;
        match self {
            StateFile::Dense { matrix, .. } => {
                if matrix.len() != n {
                    return Err(Error::Parse(format!(
                        "matrix has {} rows, expected {n} for d = {d}",
                        matrix.len()
                    )));
                }
                let rows: Vec<Vec<Complex64>> = matrix
                    .iter()
                    .map(|row| row.iter().map(to_complex).collect())
                    .collect();
                ComplexMatrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
            }
            StateFile::Pure { amplitudes, .. } => {
                if amplitudes.len() != n {
                    return Err(Error::Parse(format!(
                        "{} amplitudes, expected {n} for d = {d}",
                        amplitudes.len()
                    )));
                }
                let v: Vec<Complex64> = amplitudes.iter().map(to_complex).collect();
                Ok(ComplexMatrix::outer(&v))
            }
        }
    }

    pub fn to_density(&self, tol: f64) -> Result<DensityMatrix> {
        let rho = match self {
            StateFile::Pure { amplitudes, .. } => {
                self.to_matrix()?;
                let v: Vec<Complex64> = amplitudes.iter().map(to_complex).collect();
                DensityMatrix::from_pure(&v)?
            }
            StateFile::Dense { .. } => DensityMatrix::with_tol(self.to_matrix()?, tol)?,
        };
        if rho.d() != self.d() {
            return Err(Error::Parse(format!(
                "declared d = {} but the data has d = {}",
                self.d(),
                rho.d()
            )));
        }
        Ok(rho)
    }

    /// Shape checks plus the density-matrix validation report.
    pub fn validate(&self, tol: f64) -> Result<ValidationReport> {
        let mut report = validate_matrix(&self.to_matrix()?, tol);
        if let StateFile::Pure { amplitudes, .. } = self {
            let norm: f64 = amplitudes.iter().map(|p| p[0] * p[0] + p[1] * p[1]).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > crate::state::RENORMALIZE_TOL {
                report.problems.push(format!("amplitude norm {norm} is not 1"));
            }
        }
        Ok(report)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files always serialize")
    }
}

/// Evenly spaced values of `p`: `steps` intervals, `steps + 1` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl SweepGrid {
    pub fn new(start: f64, end: f64, steps: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) {
            return Err(Error::OutOfRange("sweep bounds must be finite".into()));
        }
        Ok(Self { start, end, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 0 {
            return vec![self.start];
        }
        (0..=self.steps)
            .map(|i| {
                if i == self.steps {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / self.steps as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub gap: f64,
    pub y_minus_z: f64,
    pub m_d: f64,
    pub min_bound: f64,
    pub verdict: Verdict,
    pub margin: f64,
}

/// Witness evaluation of `family` at one value of `p`, with `E = 1`.
pub fn sweep_row(family: &FamilySpec, p: f64, decision_tol: f64) -> Result<SweepRow> {
    let spec = family.with_p(p);
    let rho = spec.build()?;
    let v = witness(&rho, &LadderSpec::unit(spec.d)?, decision_tol)?;
    Ok(SweepRow {
        p,
        gap: v.gap,
        y_minus_z: v.y_minus_z,
        m_d: v.m_d,
        min_bound: v.min_bound,
        verdict: v.verdict,
        margin: v.margin,
    })
}

/// Evaluates every grid point in order.
pub fn sweep(family: &FamilySpec, grid: &SweepGrid, decision_tol: f64) -> Result<Vec<SweepRow>> {
    check_sweepable(family)?;
    grid.points()
        .into_iter()
        .map(|p| sweep_row(family, p, decision_tol))
        .collect()
}

pub fn check_sweepable(family: &FamilySpec) -> Result<()> {
    if !family.family.uses_p() {
        return Err(Error::OutOfRange(format!(
            "family '{}' has no parameter p to sweep",
            family.family
        )));
    }
    Ok(())
}

/// At most 12 significant digits, no exponent for ordinary magnitudes,
/// no negative zero.
pub fn format_sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    rounded.to_string()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{UNIT_COMMENT}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_sig12(r.p),
            format_sig12(r.gap),
            format_sig12(r.y_minus_z),
            format_sig12(r.m_d),
            format_sig12(r.min_bound),
            r.verdict.as_str(),
            format_sig12(r.margin)
        )?;
    }
    Ok(())
}

pub fn sweep_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_sweep_csv(rows, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}
