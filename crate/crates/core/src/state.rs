//! Validated tripartite density matrices and their spectra.
//!
//! Basis ordering is fixed: the ket `|a b c⟩` lives at index `a·d² + b·d + c`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_trace, ComplexMatrix, Subsystem, DEFAULT_TOL};

/// Allowed distance of the trace from 1.
pub const TRACE_TOL: f64 = 1e-9;

/// Eigenvalues down to `-NEGATIVE_EIGEN_SLACK` are treated as rounding and
/// clamped to zero; anything more negative rejects the state.
pub const NEGATIVE_EIGEN_SLACK: f64 = 1e-9;

/// Amplitude norms within this distance of 1 are silently renormalized.
pub const RENORMALIZE_TOL: f64 = 1e-6;

/// Returns `d` when `n = d³` with `d ≥ 2`.
pub fn local_dimension_of(n: usize) -> Option<usize> {
    let guess = (n as f64).cbrt().round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&d| d >= 2 && d * d * d == n)
}

/// Probability vector sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts arbitrary probabilities into a spectrum. Entries must be
    /// nonnegative and sum to 1 within [`TRACE_TOL`].
    pub fn from_probabilities(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::OutOfRange("empty spectrum".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::OutOfRange(format!("spectrum entry {bad} is not a probability")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::OutOfRange(format!("spectrum sums to {sum}")));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// Applies the clamping policy to raw eigenvalues: `[-slack, 0)` becomes
    /// 0, values above 1 become 1, and the result is renormalized.
    pub fn from_eigenvalues(mut values: Vec<f64>) -> Result<Self> {
        if let Some(&worst) = values.iter().min_by(|a, b| a.total_cmp(b)) {
            if worst < -NEGATIVE_EIGEN_SLACK {
                return Err(Error::InvalidState(format!("negative eigenvalue {worst:e}")));
            }
        }
        for v in values.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        let sum: f64 = values.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidState("spectrum has zero total weight".into()));
        }
        for v in values.iter_mut() {
            *v /= sum;
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// Outcome of checking a candidate matrix against the density-matrix rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub side: usize,
    pub local_dimension: Option<usize>,
    pub hermitian_deviation: f64,
    pub trace_re: f64,
    pub trace_im: f64,
    /// Absent when the matrix is too far from Hermitian to diagonalize.
    pub min_eigenvalue: Option<f64>,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Runs every density-matrix check on `mat` and collects the failures.
pub fn validate_matrix(mat: &ComplexMatrix, tol: f64) -> ValidationReport {
    let side = mat.n();
    let local_dimension = local_dimension_of(side);
    let hermitian_deviation = mat.hermitian_deviation();
    let trace = mat.trace();
    let mut problems = Vec::new();
    if local_dimension.is_none() {
        problems.push(format!("side {side} is not d³ for any d ≥ 2"));
    }
    if hermitian_deviation > tol {
        problems.push(format!("not Hermitian: max deviation {hermitian_deviation:e} > {tol:e}"));
    }
    if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
        problems.push(format!("trace is {} + {}i, expected 1", trace.re, trace.im));
    }
    let min_eigenvalue = if hermitian_deviation <= tol {
        match hermitian_eigenvalues(mat, tol) {
            Ok(eig) => eig.last().copied(),
            Err(e) => {
                problems.push(e.to_string());
                None
            }
        }
    } else {
        None
    };
    if let Some(min) = min_eigenvalue {
        if min < -NEGATIVE_EIGEN_SLACK {
            problems.push(format!("not positive semidefinite: eigenvalue {min:e}"));
        }
    }
    ValidationReport {
        side,
        local_dimension,
        hermitian_deviation,
        trace_re: trace.re,
        trace_im: trace.im,
        min_eigenvalue,
        problems,
    }
}

/// A validated `d×d×d` density matrix. The global spectrum is computed once
/// during validation and kept alongside the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    mat: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tol(mat, DEFAULT_TOL)
    }

    /// Validates `mat` with Hermiticity tolerance `tol`.
    pub fn with_tol(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        let side = mat.n();
        let d = local_dimension_of(side).ok_or(Error::BadLength { len: side })?;
        let eig = hermitian_eigenvalues(&mat, tol)?;
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {} + {}i, expected 1",
                trace.re, trace.im
            )));
        }
        let spectrum = Spectrum::from_eigenvalues(eig)?;
        Ok(Self { d, mat, spectrum })
    }

    /// `|ψ⟩⟨ψ|` from `d³` amplitudes.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        if local_dimension_of(amplitudes.len()).is_none() {
            return Err(Error::BadLength { len: amplitudes.len() });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::NotNormalized { norm });
        }
        let normalized: Vec<Complex64> = amplitudes.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&normalized))
    }

    /// Convex combination `Σ w_k ρ_k`.
    pub fn mix(components: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::WeightSum { sum: 0.0 });
        };
        let d = first.d;
        let sum: f64 = components.iter().map(|(w, _)| w).sum();
        if components.iter().any(|(w, _)| *w < 0.0 || !w.is_finite()) {
            return Err(Error::OutOfRange("mixture weights must be nonnegative".into()));
        }
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::WeightSum { sum });
        }
        let mut acc = ComplexMatrix::zeros(first.mat.n());
        for (w, rho) in components {
            if rho.d != d {
                return Err(Error::DimensionMismatch(format!(
                    "cannot mix local dimensions {} and {}",
                    d, rho.d
                )));
            }
            acc.add_scaled(*w, &rho.mat)?;
        }
        Self::new(acc)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// `λ(ρ)` in nonincreasing order, length `d³`.
    pub fn global_spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Reduced density matrix of one party.
    pub fn marginal(&self, which: Subsystem) -> Result<ComplexMatrix> {
        partial_trace(&self.mat, [self.d; 3], which)
    }

    /// Spectrum of the reduced state of `which`, length `d`.
    pub fn marginal_spectrum(&self, which: Subsystem) -> Result<Spectrum> {
        let reduced = self.marginal(which)?;
        Spectrum::from_eigenvalues(hermitian_eigenvalues(&reduced, DEFAULT_TOL)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn basis(d: usize, idx: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); d * d * d];
        v[idx] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn cube_roots() {
        assert_eq!(local_dimension_of(8), Some(2));
        assert_eq!(local_dimension_of(27), Some(3));
        assert_eq!(local_dimension_of(216), Some(6));
        assert_eq!(local_dimension_of(1), None);
        assert_eq!(local_dimension_of(9), None);
    }

    #[test]
    fn ground_state_from_pure() {
        let rho = DensityMatrix::from_pure(&basis(2, 0)).unwrap();
        let mut expected = vec![0.0; 8];
        expected[0] = 1.0;
        assert_eq!(rho.matrix(), &ComplexMatrix::from_real_diagonal(&expected));
        assert_eq!(rho.global_spectrum().values(), &expected[..]);
    }

    #[test]
    fn ghz_from_pure_has_four_corners() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[0] = Complex64::new(h, 0.0);
        v[7] = Complex64::new(h, 0.0);
        let rho = DensityMatrix::from_pure(&v).unwrap();
        for (i, j) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert_abs_diff_eq!(rho.matrix()[(i, j)].re, 0.5, epsilon = 1e-15);
        }
        let nonzero = rho.matrix().entries().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn w_from_pure_has_nine_thirds() {
        let w = 1.0 / 3f64.sqrt();
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        for i in [1, 2, 4] {
            v[i] = Complex64::new(w, 0.0);
        }
        let rho = DensityMatrix::from_pure(&v).unwrap();
        let thirds = rho
            .matrix()
            .entries()
            .iter()
            .filter(|z| (z.re - 1.0 / 3.0).abs() < 1e-15)
            .count();
        assert_eq!(thirds, 9);
    }

    #[test]
    fn pure_state_errors() {
        let mut v = basis(2, 0);
        v[0] = Complex64::new(1.1, 0.0);
        assert!(matches!(DensityMatrix::from_pure(&v), Err(Error::NotNormalized { .. })));
        assert_eq!(
            DensityMatrix::from_pure(&[Complex64::new(1.0, 0.0); 9]),
            Err(Error::BadLength { len: 9 })
        );
        // Within the renormalization window.
        v[0] = Complex64::new(1.0 + 5e-7, 0.0);
        let rho = DensityMatrix::from_pure(&v).unwrap();
        assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn mixtures() {
        let zero = DensityMatrix::from_pure(&basis(2, 0)).unwrap();
        let seven = DensityMatrix::from_pure(&basis(2, 7)).unwrap();
        assert_eq!(DensityMatrix::mix(&[(1.0, &zero)]).unwrap(), zero);
        let half = DensityMatrix::mix(&[(0.5, &zero), (0.5, &seven)]).unwrap();
        let mut diag = vec![0.0; 8];
        diag[0] = 0.5;
        diag[7] = 0.5;
        assert_eq!(half.matrix(), &ComplexMatrix::from_real_diagonal(&diag));

        assert!(matches!(
            DensityMatrix::mix(&[(0.6, &zero), (0.6, &seven)]),
            Err(Error::WeightSum { .. })
        ));
        let qutrit = DensityMatrix::from_pure(&basis(3, 0)).unwrap();
        assert!(matches!(
            DensityMatrix::mix(&[(0.5, &zero), (0.5, &qutrit)]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(DensityMatrix::mix(&[]), Err(Error::WeightSum { .. })));
    }

    #[test]
    fn white_noise_ghz_at_three_sevenths() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[0] = Complex64::new(h, 0.0);
        v[7] = Complex64::new(h, 0.0);
        let ghz = DensityMatrix::from_pure(&v).unwrap();
        let noise = DensityMatrix::new(ComplexMatrix::identity(8).scaled(0.125)).unwrap();
        let p = 3.0 / 7.0;
        let rho = DensityMatrix::mix(&[(1.0 - p, &noise), (p, &ghz)]).unwrap();
        let m = rho.matrix();
        for i in 0..8 {
            let corner = if i == 0 || i == 7 { p / 2.0 } else { 0.0 };
            assert_abs_diff_eq!(m[(i, i)].re, 1.0 / 14.0 + corner, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(m[(0, 7)].re, p / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_matrices() {
        let mut m = ComplexMatrix::identity(8).scaled(0.125);
        m[(0, 0)] = Complex64::new(0.125 - 0.1, 0.0);
        assert!(matches!(DensityMatrix::new(m.clone()), Err(Error::InvalidState(_))));

        let mut nh = ComplexMatrix::identity(8).scaled(0.125);
        nh[(0, 1)] = Complex64::new(0.01, 0.0);
        assert!(matches!(DensityMatrix::new(nh), Err(Error::NotHermitian { .. })));

        // Unit trace but an eigenvalue of -0.25.
        let mut diag = vec![0.0; 8];
        diag[0] = 1.25;
        diag[1] = -0.25;
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::from_real_diagonal(&diag)),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix::identity(4).scaled(0.25)),
            Err(Error::BadLength { len: 4 })
        ));
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clamped() {
        let mut diag = vec![0.0; 8];
        diag[0] = 1.0 + 5e-10;
        diag[1] = -5e-10;
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&diag)).unwrap();
        let spec = rho.global_spectrum().values();
        assert_eq!(spec[0], 1.0);
        assert!(spec.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn validation_report_lists_problems() {
        let report = validate_matrix(&ComplexMatrix::identity(8).scaled(0.9 / 8.0), DEFAULT_TOL);
        assert!(!report.is_valid());
        assert_abs_diff_eq!(report.trace_re, 0.9, epsilon = 1e-15);
        let ok = validate_matrix(&ComplexMatrix::identity(8).scaled(0.125), DEFAULT_TOL);
        assert!(ok.is_valid(), "{:?}", ok.problems);
        assert_eq!(ok.local_dimension, Some(2));
    }

    #[test]
    fn marginal_spectra() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[0] = Complex64::new(h, 0.0);
        v[7] = Complex64::new(h, 0.0);
        let ghz = DensityMatrix::from_pure(&v).unwrap();
        let zero = DensityMatrix::from_pure(&basis(2, 0)).unwrap();
        for s in Subsystem::ALL {
            let g = ghz.marginal_spectrum(s).unwrap();
            assert_abs_diff_eq!(g.values()[0], 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(g.values()[1], 0.5, epsilon = 1e-15);
            assert_eq!(zero.marginal_spectrum(s).unwrap().values(), &[1.0, 0.0]);
        }
    }

    #[test]
    fn spectrum_from_probabilities_sorts_and_checks() {
        let s = Spectrum::from_probabilities(vec![0.2, 0.5, 0.3]).unwrap();
        assert_eq!(s.values(), &[0.5, 0.3, 0.2]);
        assert!(Spectrum::from_probabilities(vec![0.5, 0.6]).is_err());
        assert!(Spectrum::from_probabilities(vec![1.5, -0.5]).is_err());
        assert!(Spectrum::from_probabilities(vec![]).is_err());
    }
}
