//! Dense symmetric matrices.
//!
//! Order stays small here (a few hundred at most: adjacency and Laplacian
//! matrices of desk-scale graphs), so a flat row-major `Vec<f64>` with both
//! triangles stored is the simplest thing that works. Symmetry is enforced
//! structurally: `set` writes the mirrored entry too, so `get(i, j)` and
//! `get(j, i)` are bit-equal by construction.

use crate::error::Error;
use crate::Result;

/// Dense symmetric matrix of order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of order `n`.
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from a row-major dense buffer, rejecting non-square or
    /// asymmetric input. Asymmetry is checked exactly, not within tolerance:
    /// a caller holding "almost symmetric" data must decide how to symmetrize
    /// it rather than have this type guess.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Input(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j].to_bits() != data[j * n + i].to_bits() {
                    return Err(Error::Input(format!(
                        "asymmetric input: entry ({i},{j}) = {} but ({j},{i}) = {}",
                        data[i * n + j],
                        data[j * n + i]
                    )));
                }
            }
        }
        Ok(SymMatrix { n, data })
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets entries `(i, j)` and `(j, i)` to `v`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    /// Row `i` as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Raw row-major buffer.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// True if every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Induced infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `self * x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "dimension mismatch in matvec");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }

    /// `self + c * I`.
    pub fn add_scaled_identity(&self, c: f64) -> SymMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += c;
        }
        out
    }

    /// Dense product `self * other` (used for verifying inverse identities;
    /// the result of multiplying two symmetric matrices is generally not
    /// symmetric, so this returns a plain buffer).
    pub fn mul_dense(&self, other: &SymMatrix) -> Vec<f64> {
        assert_eq!(self.n, other.n, "dimension mismatch in mul_dense");
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let row_k = other.row(k);
                let out_row = &mut out[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += a * row_k[j];
                }
            }
        }
        out
    }
}

/// Max absolute difference between two equally sized buffers.
pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_mirrors_exactly() {
        let mut m = SymMatrix::zeros(3);
        m.set(0, 2, 0.1 + 0.2); // a value with representation noise
        assert_eq!(m.get(0, 2).to_bits(), m.get(2, 0).to_bits());
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let data = vec![0.0, 1.0, 2.0, 0.0]; // (0,1) != (1,0)
        assert!(SymMatrix::from_rows(2, data).is_err());
    }

    #[test]
    fn norm_inf_is_max_row_sum() {
        let mut m = SymMatrix::zeros(2);
        m.set(0, 0, 1.0);
        m.set(0, 1, -3.0);
        m.set(1, 1, 2.0);
        assert_eq!(m.norm_inf(), 5.0);
    }

    #[test]
    fn matvec_matches_hand_computation() {
        let mut m = SymMatrix::zeros(2);
        m.set(0, 1, 1.0);
        m.set(1, 1, 2.0);
        assert_eq!(m.matvec(&[3.0, 4.0]), vec![4.0, 11.0]);
    }
}
