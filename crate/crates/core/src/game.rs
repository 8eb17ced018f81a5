//! The bilinear game `F(x, y) = xᵀAy` and the simplex optimality test.

use crate::error::{Error, Result};
use crate::simplex::SimplexVector;

/// Square payoff matrix, stored row-major. Rows are the maximizer's pure
/// strategies, columns the minimizer's.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RewardMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("reward matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, matrix must be {n}x{n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Self::from_row_major(n, entries)
    }

    pub fn from_row_major(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries cannot form a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|a| !a.is_finite()) {
            return Err(Error::Numeric(format!(
                "entry ({}, {}) is not finite",
                pos / n,
                pos % n
            )));
        }
        Ok(RewardMatrix { n, entries })
    }

    /// Rock-paper-scissors with strategies ordered (rock, paper, scissors);
    /// `A[i][j] = +1` when row `i` beats column `j`.
    pub fn rps() -> Self {
        RewardMatrix {
            n: 3,
            entries: vec![
                0.0, -1.0, 1.0, //
                1.0, 0.0, -1.0, //
                -1.0, 1.0, 0.0,
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    /// `xᵀAy`.
    pub fn payoff(&self, x: &SimplexVector, y: &SimplexVector) -> Result<f64> {
        x.check_dim(self.n, "x")?;
        y.check_dim(self.n, "y")?;
        let y = y.as_slice();
        Ok(self
            .rows()
            .zip(x.as_slice())
            .map(|(row, &xi)| xi * dot(row, y))
            .sum())
    }

    /// Gradient of the payoff in `x`: `Ay`.
    pub fn grad_x(&self, y: &SimplexVector) -> Result<Vec<f64>> {
        y.check_dim(self.n, "y")?;
        Ok(self.mul_vec(y.as_slice()))
    }

    /// Gradient of the payoff in `y`: `Aᵀx`.
    pub fn grad_y(&self, x: &SimplexVector) -> Result<Vec<f64>> {
        x.check_dim(self.n, "x")?;
        Ok(self.mul_transpose_vec(x.as_slice()))
    }

    pub(crate) fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.rows().map(|row| dot(row, v)).collect()
    }

    pub(crate) fn mul_transpose_vec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (row, &vi) in self.rows().zip(v) {
            for (o, &a) in out.iter_mut().zip(row) {
                *o += vi * a;
            }
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// Simplex optimality for a minimization with gradient `grad`: every
/// coordinate of `v` above `tol` must have a partial within `tol` of the
/// smallest partial.
pub fn kkt_satisfied(grad: &[f64], v: &SimplexVector, tol: f64) -> Result<bool> {
    v.check_dim(grad.len(), "point")?;
    if grad.iter().any(|g| !g.is_finite()) {
        return Err(Error::Numeric("gradient has a non-finite entry".into()));
    }
    let min = grad.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(grad
        .iter()
        .zip(v.as_slice())
        .all(|(&g, &vi)| vi <= tol || g <= min + tol))
}
