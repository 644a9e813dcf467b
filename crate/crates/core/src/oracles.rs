//! Brute-force references for tests and acceptance runs.
//!
//! Nothing here shares a code path with what it validates:
//! [`brute_force_switching`] enumerates every switching function over a
//! finite subgroup instead of constructing one along a spanning forest,
//! and [`charpoly_eigenvalues`] expands the characteristic polynomial by
//! cofactors and isolates its (real) roots by bisection instead of
//! rotating a matrix. Both are exponential and deliberately so.

use num_complex::Complex64;
use thiserror::Error;

use crate::gains::UnitGain;
use crate::graph::{GainGraph, GraphError, SwitchingFunction};
use crate::spectra::{ComplexMatrix, Spectrum, HERMITIAN_TOL};

/// Cap on the number of switching functions an enumeration may visit.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;
/// Dimension cap for the cofactor-expansion eigenvalue oracle.
pub const CHARPOLY_MAX_DIM: usize = 6;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("enumeration would visit {required} switching functions (limit {limit})")]
    EnumerationTooLarge { required: u128, limit: u128 },
    #[error("subgroup order must be at least 1")]
    ZeroOrder,
    #[error("dimension {0} exceeds the cofactor oracle cap of {CHARPOLY_MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {0:e}")]
    NotHermitian(f64),
    #[error("isolated {found} roots of a degree {expected} polynomial")]
    RootIsolation { found: usize, expected: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Exhaustively searches for a switching function with values in the
/// n-th roots of unity mapping `phi1` onto `phi2`. Returns the first hit
/// in odometer order (vertex 0 cycling fastest), or None when the whole
/// space is exhausted. Ground truth for the constructive decision on
/// small instances.
pub fn brute_force_switching(
    phi1: &GainGraph,
    phi2: &GainGraph,
    subgroup_order: u32,
) -> Result<Option<SwitchingFunction>, OracleError> {
    if subgroup_order == 0 {
        return Err(OracleError::ZeroOrder);
    }
    if phi1.graph() != phi2.graph() {
        return Err(OracleError::Graph(GraphError::UnderlyingGraphMismatch));
    }
    let n = phi1.graph().vertex_count();
    let required = (subgroup_order as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if required > ENUMERATION_LIMIT {
        return Err(OracleError::EnumerationTooLarge {
            required,
            limit: ENUMERATION_LIMIT,
        });
    }
    let order = subgroup_order as i64;
    let mut digits = vec![0i64; n];
    loop {
        let values: Vec<UnitGain> = digits
            .iter()
            .map(|&p| UnitGain::new(p, order).expect("order is nonzero"))
            .collect();
        let zeta = SwitchingFunction::new(values);
        if &phi1.switch(&zeta)? == phi2 {
            return Ok(Some(zeta));
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == n {
                return Ok(None);
            }
            digits[k] += 1;
            if digits[k] < order {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

// ---------------------------------------------------------------------
// characteristic polynomial eigenvalues
// ---------------------------------------------------------------------

type Poly = Vec<Complex64>; // coefficients, ascending powers

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|&c| -c).collect()
}

/// Determinant of a square matrix of polynomials by first-row cofactor
/// expansion. Factorial cost; dimensions stay tiny.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![Complex64::new(1.0, 0.0)];
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det: Poly = Vec::new();
    for (col, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(entry, &poly_det(&minor));
        det = poly_add(&det, &if col % 2 == 0 { term } else { poly_neg(&term) });
    }
    det
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Magnitude scale of the polynomial near `x`, used to decide whether an
/// evaluation counts as zero.
fn eval_scale(coeffs: &[f64], x: f64) -> f64 {
    let ax = x.abs().max(1.0);
    let mut scale = 0.0;
    let mut power = 1.0;
    for &c in coeffs {
        scale += c.abs() * power;
        power *= ax;
    }
    scale.max(1.0)
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(coeffs, lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = eval(coeffs, mid);
        if fmid == 0.0 {
            return mid;
        }
        if (flo < 0.0) == (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots (with multiplicity, ascending) of a polynomial known to
/// have only real roots. Recursive: the roots of the derivative split the
/// line into intervals of strict monotonicity, so each interval holds at
/// most one simple root, detected by a sign change; roots shared with the
/// derivative are multiple roots.
fn real_rooted_roots(coeffs: &[f64]) -> Vec<f64> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    if degree == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let derivative: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect();
    let critical = real_rooted_roots(&derivative);

    // group numerically equal critical points
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for r in critical {
        match groups.last_mut() {
            Some((v, count)) if (r - *v).abs() <= 1e-9 * v.abs().max(1.0) => *count += 1,
            _ => groups.push((r, 1)),
        }
    }

    let lead = coeffs[degree].abs();
    let bound = 1.0
        + coeffs[..degree]
            .iter()
            .map(|c| c.abs())
            .fold(0.0, f64::max)
            / lead;

    let mut roots = Vec::new();
    let mut flagged = vec![false; groups.len()];
    for (k, &(r, count)) in groups.iter().enumerate() {
        if eval(coeffs, r).abs() <= 1e-9 * eval_scale(coeffs, r) {
            flagged[k] = true;
            // multiplicity in the derivative plus one
            for _ in 0..=count {
                roots.push(r);
            }
        }
    }
    let mut boundaries = vec![(-bound, true)];
    for (k, &(r, _)) in groups.iter().enumerate() {
        boundaries.push((r, !flagged[k]));
    }
    boundaries.push((bound, true));
    for window in boundaries.windows(2) {
        let (lo, lo_usable) = window[0];
        let (hi, hi_usable) = window[1];
        // a flagged endpoint is itself the only zero of this monotone piece
        if !lo_usable || !hi_usable {
            continue;
        }
        let flo = eval(coeffs, lo);
        let fhi = eval(coeffs, hi);
        if (flo < 0.0) != (fhi < 0.0) {
            roots.push(bisect(coeffs, lo, hi));
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
    roots
}

/// Eigenvalues via the characteristic polynomial: cofactor expansion of
/// `det(M - xI)` followed by real root isolation. Hermitian input only
/// (that is what makes every root real), dimension capped at
/// [`CHARPOLY_MAX_DIM`].
pub fn charpoly_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum, OracleError> {
    let n = m.rows();
    if n != m.cols() || n > CHARPOLY_MAX_DIM {
        return Err(OracleError::DimensionTooLarge(n.max(m.cols())));
    }
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(OracleError::NotHermitian(defect));
    }

    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let constant = m.get(r, c);
                    if r == c {
                        vec![constant, Complex64::new(-1.0, 0.0)]
                    } else {
                        vec![constant]
                    }
                })
                .collect()
        })
        .collect();
    let charpoly = poly_det(&entries);
    debug_assert_eq!(charpoly.len(), n + 1);

    // Hermitian matrices have real characteristic coefficients
    let coeffs: Vec<f64> = charpoly.iter().map(|c| c.re).collect();
    let scale = coeffs.iter().map(|c| c.abs()).fold(1.0, f64::max);
    for c in &charpoly {
        debug_assert!(c.im.abs() <= 1e-9 * scale, "complex charpoly coefficient");
    }

    let roots = real_rooted_roots(&coeffs);
    if roots.len() != n {
        return Err(OracleError::RootIsolation {
            found: roots.len(),
            expected: n,
        });
    }
    Ok(Spectrum::new(roots))
}

/// Numeric determinant by cofactor expansion, for residual checks such as
/// `|det(M - lambda I)|` at a reported eigenvalue.
pub fn determinant(m: &ComplexMatrix) -> Complex64 {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    fn det_rec(a: &[Vec<Complex64>]) -> Complex64 {
        let n = a.len();
        match n {
            0 => Complex64::new(1.0, 0.0),
            1 => a[0][0],
            _ => {
                let mut acc = Complex64::new(0.0, 0.0);
                for col in 0..n {
                    let minor: Vec<Vec<Complex64>> = a[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != col)
                                .map(|(_, &z)| z)
                                .collect()
                        })
                        .collect();
                    let term = a[0][col] * det_rec(&minor);
                    acc += if col % 2 == 0 { term } else { -term };
                }
                acc
            }
        }
    }
    let rows: Vec<Vec<Complex64>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect();
    det_rec(&rows)
}
