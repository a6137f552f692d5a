//! Dense symmetric eigendecomposition and the group inverse.
//!
//! Everything downstream (ratio bounds, theta certificates, the group-inverse
//! functional) hangs off eigenvalues of small symmetric matrices, so this
//! module is deliberately self-contained: a classic cyclic Jacobi iteration
//! with the usual threshold schedule. Jacobi is quadratically convergent,
//! unconditionally stable for symmetric input, and keeps the accumulated
//! eigenvector matrix orthonormal to machine precision — exactly the
//! properties the certificate code depends on. Orders here top out around
//! 500, far below where one would reach for LAPACK.
//!
//! Both routines verify their own postconditions (residuals, inverse
//! identities) before returning and fail loudly on violation rather than
//! handing back silently degraded numbers.

use crate::error::Error;
use crate::matrix::{max_abs_diff, SymMatrix};
use crate::Result;

/// Relative eigenvalue cutoff below which [`group_inverse`] treats an
/// eigenvalue as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Residual budget for [`sym_eigen`], relative to `max(1, ‖A‖∞)`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

/// Tolerance on the three defining group-inverse identities, relative to
/// `max(1, ‖M‖∞)`.
pub const GROUP_INVERSE_TOL: f64 = 1e-8;

/// Full eigendecomposition of a symmetric matrix.
///
/// Invariants (verified by [`sym_eigen`] before returning):
/// - `values` is sorted descending; `values[i]` pairs with `vectors[i]`,
/// - each vector has unit norm, pairwise dot products are `δ_ij` within 1e-10,
/// - `‖A v - λ v‖∞ <= 1e-10 * max(1, ‖A‖∞)` for every pair,
/// - each vector's sign is canonicalized (largest-magnitude entry positive),
///   so repeated calls return identical data.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.values[0]
    }

    /// Smallest eigenvalue.
    pub fn lambda_min(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

/// In-place Jacobi rotation of two entries.
#[inline]
fn rot(arr: &mut [f64], i: usize, j: usize, s: f64, tau: f64) {
    let g = arr[i];
    let h = arr[j];
    arr[i] = g - s * (h + g * tau);
    arr[j] = h + s * (g - h * tau);
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// Deterministic: identical input produces bit-identical output. Errors on
/// non-finite entries; an `Inconsistency` error (never observed on finite
/// symmetric input) would indicate failure to meet the residual contract.
pub fn sym_eigen(m: &SymMatrix) -> Result<Spectrum> {
    if !m.is_finite() {
        return Err(Error::Input(
            "matrix has non-finite entries; eigendecomposition needs finite input".into(),
        ));
    }
    let n = m.order();
    if n == 0 {
        return Ok(Spectrum {
            values: vec![],
            vectors: vec![],
        });
    }

    // Working copy; only the strict upper triangle of `a` is read/written
    // during sweeps, the evolving diagonal lives in `d`.
    let mut a: Vec<f64> = m.as_slice().to_vec();
    let mut v: Vec<f64> = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    let mut converged = false;
    for sweep in 1..=100 {
        let mut sm = 0.0;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                sm += a[p * n + q].abs();
            }
        }
        if sm == 0.0 {
            converged = true;
            break;
        }
        // First sweeps rotate only on large entries; afterwards on everything.
        let tresh = if sweep < 4 {
            0.2 * sm / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = 100.0 * apq.abs();
                // Once small enough to not perturb the diagonal, flush to zero.
                if sweep > 4 && d[p] + g == d[p] && d[q] + g == d[q] {
                    a[p * n + q] = 0.0;
                } else if apq.abs() > tresh {
                    let mut h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        apq / h
                    } else {
                        let theta = 0.5 * h / apq;
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    h = t * apq;
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[p * n + q] = 0.0;
                    for j in 0..p {
                        rot(&mut a, j * n + p, j * n + q, s, tau);
                    }
                    for j in (p + 1)..q {
                        rot(&mut a, p * n + j, j * n + q, s, tau);
                    }
                    for j in (q + 1)..n {
                        rot(&mut a, p * n + j, q * n + j, s, tau);
                    }
                    for j in 0..n {
                        rot(&mut v, j * n + p, j * n + q, s, tau);
                    }
                }
            }
        }
        for p in 0..n {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }
    if !converged {
        return Err(Error::Inconsistency(
            "Jacobi iteration did not converge in 100 sweeps".into(),
        ));
    }

    // Sort descending, ties broken by original position for determinism.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap().then(i.cmp(&j)));

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for &col in &order {
        values.push(d[col]);
        let mut vec_col: Vec<f64> = (0..n).map(|r| v[r * n + col]).collect();
        // Canonical sign: largest-magnitude entry positive.
        let imax = vec_col
            .iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| x.abs().partial_cmp(&y.abs()).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        if vec_col[imax] < 0.0 {
            for x in &mut vec_col {
                *x = -*x;
            }
        }
        vectors.push(vec_col);
    }
    let spectrum = Spectrum { values, vectors };
    verify_spectrum(m, &spectrum)?;
    Ok(spectrum)
}

/// Postcondition check: residuals and orthonormality within contract.
fn verify_spectrum(m: &SymMatrix, s: &Spectrum) -> Result<()> {
    let n = m.order();
    let scale = m.norm_inf().max(1.0);
    for (lambda, vec) in s.values.iter().zip(&s.vectors) {
        let av = m.matvec(vec);
        let worst = av
            .iter()
            .zip(vec)
            .map(|(a, x)| (a - lambda * x).abs())
            .fold(0.0, f64::max);
        if worst > EIGEN_RESIDUAL_TOL * scale {
            return Err(Error::Inconsistency(format!(
                "eigen residual {worst:.3e} exceeds {:.3e} for eigenvalue {lambda}",
                EIGEN_RESIDUAL_TOL * scale
            )));
        }
    }
    for i in 0..n {
        for j in i..n {
            let dot: f64 = s.vectors[i]
                .iter()
                .zip(&s.vectors[j])
                .map(|(a, b)| a * b)
                .sum();
            let target = if i == j { 1.0 } else { 0.0 };
            if (dot - target).abs() > 1e-10 {
                return Err(Error::Inconsistency(format!(
                    "eigenvectors {i},{j} not orthonormal: dot = {dot}"
                )));
            }
        }
    }
    Ok(())
}

/// Group inverse of a symmetric matrix.
///
/// For symmetric `M` the group inverse coincides with the spectral
/// pseudoinverse: invert each eigenvalue whose magnitude exceeds
/// `rank_tol * max|λ|`, zero the rest. The three defining identities
/// `M X M = M`, `X M X = X`, `M X = X M` are verified to
/// `1e-8 * max(1, ‖M‖∞)` before the result is returned.
///
/// `rank_tol` decides rank; use [`DEFAULT_RANK_TOL`] unless the caller has a
/// reason to move the cutoff.
pub fn group_inverse(m: &SymMatrix, rank_tol: f64) -> Result<SymMatrix> {
    let n = m.order();
    let spectrum = sym_eigen(m)?;
    let scale = spectrum.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let cutoff = rank_tol * scale;

    let mut x = SymMatrix::zeros(n);
    for (lambda, vec) in spectrum.values.iter().zip(&spectrum.vectors) {
        if lambda.abs() <= cutoff {
            continue;
        }
        let inv = 1.0 / lambda;
        for i in 0..n {
            for j in i..n {
                let add = inv * vec[i] * vec[j];
                x.set(i, j, x.get(i, j) + add);
            }
        }
    }

    // Verify M X M = M, X M X = X, M X = X M.
    let tol = GROUP_INVERSE_TOL * m.norm_inf().max(1.0);
    let mx = m.mul_dense(&x);
    let xm = x.mul_dense(m);
    let commute = max_abs_diff(&mx, &xm);
    let mxm = mul_raw(n, &mx, m.as_slice());
    let ident1 = max_abs_diff(&mxm, m.as_slice());
    let xmx = mul_raw(n, x.as_slice(), &mx);
    let ident2 = max_abs_diff(&xmx, x.as_slice());
    if commute > tol || ident1 > tol || ident2 > tol {
        return Err(Error::Inconsistency(format!(
            "group inverse identities violated: ‖MXM-M‖ = {ident1:.3e}, \
             ‖XMX-X‖ = {ident2:.3e}, ‖MX-XM‖ = {commute:.3e}, tolerance {tol:.3e}"
        )));
    }
    Ok(x)
}

/// Plain dense product of two row-major buffers.
fn mul_raw(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}
