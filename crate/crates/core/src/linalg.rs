//! Dense complex linear algebra for the small Hermitian matrices used here.
//!
//! Everything is row-major `Vec<Complex64>`. The only decomposition offered
//! is a Hermitian eigenvalue solver based on cyclic complex Jacobi rotations;
//! matrices in this crate never exceed a few hundred rows.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used whenever a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest side length `tensor_product` will build.
pub const TENSOR_SIZE_CAP: usize = 4096;

/// Sweep cap for the Jacobi eigensolver.
pub const MAX_JACOBI_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One of the three parties of a tripartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::A, Subsystem::B, Subsystem::C];

    pub fn index(self) -> usize {
        match self {
            Subsystem::A => 0,
            Subsystem::B => 1,
            Subsystem::C => 2,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
            Subsystem::C => "C",
        };
        f.write_str(name)
    }
}

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Builds a matrix from `n * n` row-major entries.
    pub fn from_row_major(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from nested rows; every row must have the outer length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, entries })
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn real_diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)].re).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: f64, other: &ComplexMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} to {}x{}",
                other.n, other.n, self.n, self.n
            )));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * factor;
        }
        Ok(())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "trace of product of {}x{} and {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        let n = self.n;
        let mut acc = ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.entries[i * n + j] * other.entries[j * n + i];
            }
        }
        Ok(acc)
    }

    /// `max |M[i][j] - conj(M[j][i])|`
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n, "max_abs_diff needs equal sizes");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.n + j]
    }
}

/// Kronecker product `a ⊗ b`, refusing results larger than [`TENSOR_SIZE_CAP`].
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_product_with_cap(a, b, TENSOR_SIZE_CAP)
}

pub fn tensor_product_with_cap(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    cap: usize,
) -> Result<ComplexMatrix> {
    let side = a
        .n
        .checked_mul(b.n)
        .ok_or(Error::SizeOverflow { side: usize::MAX, cap })?;
    if side > cap {
        return Err(Error::SizeOverflow { side, cap });
    }
    let nb = b.n;
    let mut out = ComplexMatrix::zeros(side);
    for i in 0..a.n {
        for j in 0..a.n {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced matrix of one party of a tripartite operator with local
/// dimensions `dims`, basis index `i_A·d_B·d_C + i_B·d_C + i_C`.
pub fn partial_trace(m: &ComplexMatrix, dims: [usize; 3], keep: Subsystem) -> Result<ComplexMatrix> {
    let [da, db, dc] = dims;
    if da * db * dc != m.n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{}x{} does not factor a matrix of side {}",
            da, db, dc, m.n
        )));
    }
    let idx = |a: usize, b: usize, c: usize| a * db * dc + b * dc + c;
    let dk = dims[keep.index()];
    let mut out = ComplexMatrix::zeros(dk);
    for a in 0..da {
        for b in 0..db {
            for c in 0..dc {
                let row = idx(a, b, c);
                // Column differs from the row only in the kept digit.
                for k in 0..dk {
                    let (col, r_kept) = match keep {
                        Subsystem::A => (idx(k, b, c), a),
                        Subsystem::B => (idx(a, k, c), b),
                        Subsystem::C => (idx(a, b, k), c),
                    };
                    out[(r_kept, k)] += m[(row, col)];
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix in nonincreasing order.
///
/// Runs cyclic complex Jacobi sweeps until the off-diagonal Frobenius norm
/// drops to `tol · ‖M‖_F`, giving up after [`MAX_JACOBI_SWEEPS`] sweeps.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    let deviation = m.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.n;
    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        a[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let threshold = tol * a.frobenius_norm();

    let mut converged = a.off_diagonal_norm() <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_JACOBI_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
        converged = a.off_diagonal_norm() <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence { iterations: sweeps });
    }
    let mut eig = a.real_diagonal();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Annihilates `a[p][q]` with the unitary `U = diag(1, e^{-iφ}) · R(θ)` on the
/// `(p, q)` plane and applies `a ← U† a U`.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase_conj = (apq / mag).conj();

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase_conj * s;
    let u_qq = phase_conj * c;

    let n = a.n;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * u_pp + akq * u_qp;
        let new_kq = akp * u_pq + akq * u_qq;
        a[(k, p)] = new_kp;
        a[(k, q)] = new_kq;
        a[(p, k)] = new_kp.conj();
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
}

/// Unitary acting on the span of basis states `p` and `q`:
/// `|p⟩ → cos θ |p⟩ + e^{i(φ+χ)} sin θ |q⟩` and
/// `|q⟩ → -e^{-iφ} sin θ |p⟩ + e^{iχ} cos θ |q⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelRotation {
    pub p: usize,
    pub q: usize,
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
}

impl TwoLevelRotation {
    /// Entries `(u_pp, u_pq, u_qp, u_qq)` of the 2x2 block.
    fn block(&self) -> [Complex64; 4] {
        let (s, c) = self.theta.sin_cos();
        let e_phi = Complex64::from_polar(1.0, self.phi);
        let e_chi = Complex64::from_polar(1.0, self.chi);
        // Columns are the images of |p⟩ and |q⟩.
        let u_pp = Complex64::new(c, 0.0);
        let u_qp = e_chi * e_phi * s;
        let u_pq = -e_phi.conj() * s;
        let u_qq = e_chi * c;
        [u_pp, u_pq, u_qp, u_qq]
    }

    /// In-place `m ← U m U†`.
    pub fn conjugate(&self, m: &mut ComplexMatrix) {
        let (p, q) = (self.p, self.q);
        assert!(p != q && p < m.n && q < m.n, "rotation plane out of range");
        let [u_pp, u_pq, u_qp, u_qq] = self.block();
        let n = m.n;
        // Rows: m ← U m.
        for k in 0..n {
            let mp = m[(p, k)];
            let mq = m[(q, k)];
            m[(p, k)] = u_pp * mp + u_pq * mq;
            m[(q, k)] = u_qp * mp + u_qq * mq;
        }
        // Columns: m ← m U†.
        for k in 0..n {
            let mp = m[(k, p)];
            let mq = m[(k, q)];
            m[(k, p)] = mp * u_pp.conj() + mq * u_pq.conj();
            m[(k, q)] = mp * u_qp.conj() + mq * u_qq.conj();
        }
    }
}
