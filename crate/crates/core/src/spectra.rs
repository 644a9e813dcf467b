//! Complex adjacency and incidence matrices and their Hermitian spectra.
//!
//! The adjacency matrix of a gain graph has `phi(e_ij)` at `(i, j)` and
//! its conjugate at `(j, i)` (inverse and conjugate coincide on the unit
//! circle), so it is Hermitian by construction. The incidence matrix of
//! an oriented gain graph has `omega(v, e)` at `(v, e)`: two unit entries
//! per column.
//!
//! The central matrix fact tied to the line graph: with the involution
//! `s` read as +1 or -1,
//!
//! ```text
//! H* H = 2I + s * A(line graph)
//! ```
//!
//! where the line graph is taken with the orientation induced by `omega`.
//! Since `H* H` is positive semidefinite, line-graph eigenvalues are at
//! most 2 when `s = -1` and at least -2 when `s = +1`.
//!
//! Eigenvalues are computed without external numeric dependencies: an
//! n-by-n Hermitian matrix embeds into a real symmetric matrix of twice
//! the size (each eigenvalue doubled), which a cyclic Jacobi sweep
//! diagonalizes; sorted eigenvalue pairs are then averaged back down.

use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{GainGraph, GraphError, SwitchingFunction};
use crate::linegraph::{line_graph_class, line_graph_oriented};
use crate::orientation::OrientedGainGraph;

/// Tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
pub const JACOBI_OFF_TOL: f64 = 1e-12;
/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Maximum gap inside an eigenvalue pair of the doubled real embedding.
pub const PAIR_TOL: f64 = 1e-8;
/// Slack for eigenvalue comparisons (iterative error).
pub const EIGEN_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },
    #[error("Jacobi iteration did not reach off-norm {target:e} in {sweeps} sweeps (at {reached:e})")]
    NoConvergence {
        sweeps: usize,
        target: f64,
        reached: f64,
    },
    #[error("doubled eigenvalue pair differs by {gap:e} (index {index})")]
    PairMismatch { index: usize, gap: f64 },
    #[error("eigenvalue sum {sum} drifts from trace {trace} beyond {tol:e}")]
    TraceMismatch { sum: f64, trace: f64, tol: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
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

    pub fn set(&mut self, r: usize, c: usize, value: Complex64) {
        self.data[r * self.cols + c] = value;
    }

    /// Conjugate transpose.
    pub fn hermitian_transpose(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let v = out.get(r, c) + a * rhs.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scaled(&self, factor: f64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm_squared(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest deviation from Hermitian symmetry, `max |a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Plain-text form: a `rows cols` header line, then row-major entries
    /// as `re+imi` pairs with 17 significant digits, one row per line.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    out.push(' ');
                }
                let z = self.get(r, c);
                let _ = write!(out, "{:.16e}{:+.16e}i", z.re, z.im);
            }
            out.push('\n');
        }
        out
    }
}

/// Sorted (ascending) real eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Spectrum { eigenvalues }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Largest entrywise difference between two sorted spectra of equal length.
    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        assert_eq!(self.len(), other.len(), "spectra have different lengths");
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// The Hermitian adjacency matrix of a gain graph: `phi(e_ij)` above the
/// diagonal, conjugates below, zero diagonal.
pub fn adjacency_matrix(phi: &GainGraph) -> ComplexMatrix {
    let n = phi.graph().vertex_count();
    let mut a = ComplexMatrix::zeros(n, n);
    for (edge, &(lo, hi)) in phi.graph().edges().iter().enumerate() {
        let z = phi.stored_gain(edge).to_complex();
        a.set(lo, hi, z);
        a.set(hi, lo, z.conj());
    }
    a
}

/// The incidence matrix of an oriented gain graph: `omega(v, e)` at
/// `(v, e)`, zero elsewhere. Every column has exactly two unit entries.
pub fn incidence_matrix(og: &OrientedGainGraph) -> ComplexMatrix {
    let n = og.graph().vertex_count();
    let m = og.graph().edge_count();
    let mut h = ComplexMatrix::zeros(n, m);
    for (edge, &(lo, hi)) in og.graph().edges().iter().enumerate() {
        for v in [lo, hi] {
            let w = og.omega().get(v, edge).expect("orientation is total");
            h.set(v, edge, w.to_complex());
        }
    }
    h
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
///
/// The matrix `X + iY` embeds into the real symmetric `[[X, -Y], [Y, X]]`
/// whose spectrum is the wanted one with every eigenvalue doubled. Cyclic
/// Jacobi rotations drive the off-diagonal norm below
/// [`JACOBI_OFF_TOL`]; the sorted eigenvalues are then paired off and
/// averaged, with a pair gap above [`PAIR_TOL`] reported as an error
/// (that only happens when the input was not actually Hermitian).
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum, SpectraError> {
    if m.rows() != m.cols() {
        return Err(SpectraError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(SpectraError::NotHermitian {
            max_asymmetry: defect,
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }

    // real symmetric embedding
    let dim = 2 * n;
    let mut s = vec![0.0f64; dim * dim];
    for r in 0..n {
        for c in 0..n {
            let z = m.get(r, c);
            s[r * dim + c] = z.re;
            s[(r + n) * dim + (c + n)] = z.re;
            s[r * dim + (c + n)] = -z.im;
            s[(r + n) * dim + c] = z.im;
        }
    }

    let doubled = jacobi_symmetric_eigenvalues(&mut s, dim)?;

    let mut eigenvalues = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (doubled[2 * k], doubled[2 * k + 1]);
        let gap = (a - b).abs();
        if gap > PAIR_TOL {
            return Err(SpectraError::PairMismatch { index: k, gap });
        }
        eigenvalues.push(0.5 * (a + b));
    }

    let spectrum = Spectrum::new(eigenvalues);
    let trace = m.trace().re;
    let tol = 1e-8 * n.max(1) as f64;
    if (spectrum.sum() - trace).abs() > tol {
        return Err(SpectraError::TraceMismatch {
            sum: spectrum.sum(),
            trace,
            tol,
        });
    }
    Ok(spectrum)
}

fn off_diagonal_norm(s: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += s[p * n + q] * s[p * n + q];
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi for a dense real symmetric matrix stored row-major in
/// `s`; returns the eigenvalues sorted ascending. `s` is clobbered.
fn jacobi_symmetric_eigenvalues(s: &mut [f64], n: usize) -> Result<Vec<f64>, SpectraError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut reached = off_diagonal_norm(s, n);
    let mut converged = reached < JACOBI_OFF_TOL;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = s[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let skp = s[k * n + p];
                    let skq = s[k * n + q];
                    s[k * n + p] = c * skp - sn * skq;
                    s[k * n + q] = sn * skp + c * skq;
                }
                for k in 0..n {
                    let spk = s[p * n + k];
                    let sqk = s[q * n + k];
                    s[p * n + k] = c * spk - sn * sqk;
                    s[q * n + k] = sn * spk + c * sqk;
                }
            }
        }
        sweeps += 1;
        reached = off_diagonal_norm(s, n);
        converged = reached < JACOBI_OFF_TOL;
    }
    if !converged {
        return Err(SpectraError::NoConvergence {
            sweeps,
            target: JACOBI_OFF_TOL,
            reached,
        });
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| s[i * n + i]).collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("diagonal stays finite"));
    Ok(eigenvalues)
}

/// Entrywise max residual of `H* H - (2I + s A)` where `H` is the
/// incidence matrix of `og` and `A` the adjacency matrix of its line
/// graph. Exact arithmetic feeds both sides, so the residual reflects
/// one rounding per entry.
pub fn check_line_identity(og: &OrientedGainGraph) -> f64 {
    let h = incidence_matrix(og);
    let lhs = h.hermitian_transpose().mul(&h);
    let line = line_graph_oriented(og);
    let a = adjacency_matrix(line.phi());
    let s = og.spec().involution_sign();
    let m = og.graph().edge_count();
    let rhs = ComplexMatrix::identity(m).scaled(2.0).add(&a.scaled(s));
    lhs.sub(&rhs).max_abs()
}

/// The spectrum of the line graph of a gain graph. Any orientation gives
/// the same sorted eigenvalues, so the representative from the default
/// orientation is used.
pub fn line_spectrum(phi: &GainGraph) -> Result<Spectrum, SpectraError> {
    hermitian_eigenvalues(&adjacency_matrix(&line_graph_class(phi)))
}

/// Result of the line-graph eigenvalue bound check.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    /// Whether the bound holds (with [`EIGEN_TOL`] slack).
    pub holds: bool,
    /// The eigenvalue the bound constrains: the maximum when the
    /// involution is -1, the minimum when it is +1. None for an empty
    /// spectrum.
    pub extremal: Option<f64>,
}

/// Checks the one-sided eigenvalue bound on the line graph: eigenvalues
/// at most 2 when the involution is -1, at least -2 when it is +1.
pub fn check_bound(phi: &GainGraph) -> Result<BoundCheck, SpectraError> {
    let spectrum = line_spectrum(phi)?;
    let negative = phi.spec().involution_sign() < 0.0;
    let (holds, extremal) = if negative {
        match spectrum.max() {
            Some(max) => (max <= 2.0 + EIGEN_TOL, Some(max)),
            None => (true, None),
        }
    } else {
        match spectrum.min() {
            Some(min) => (min >= -2.0 - EIGEN_TOL, Some(min)),
            None => (true, None),
        }
    };
    Ok(BoundCheck { holds, extremal })
}

/// Largest entrywise difference between the sorted spectra of a gain
/// graph and its switched copy; switching conjugates the adjacency matrix
/// by a diagonal unitary, so this is numerical noise.
pub fn spectrum_switching_invariance(
    phi: &GainGraph,
    zeta: &SwitchingFunction,
) -> Result<f64, SpectraError> {
    let switched = phi.switch(zeta)?;
    let a = hermitian_eigenvalues(&adjacency_matrix(phi))?;
    let b = hermitian_eigenvalues(&adjacency_matrix(&switched))?;
    Ok(a.max_abs_diff(&b))
}
