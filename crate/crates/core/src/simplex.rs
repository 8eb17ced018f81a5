//! Points of the probability simplex Δⁿ.

use std::ops::Index;

use crate::error::{Error, Result};

/// Largest negative coordinate accepted (and clamped to zero) on construction.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// Allowed deviation of the coordinate sum from one.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A mixed strategy: nonnegative coordinates summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector(Vec<f64>);

impl SimplexVector {
    /// Validates `coords`. Coordinates in `[-1e-12, 0)` are clamped to zero;
    /// anything more negative, a non-finite entry, or a sum further than
    /// `1e-9` from one is rejected.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Dimension("simplex vector must have at least one coordinate".into()));
        }
        let mut coords = coords;
        for (i, c) in coords.iter_mut().enumerate() {
            if !c.is_finite() {
                return Err(Error::Numeric(format!("coordinate {i} is not finite ({c})")));
            }
            if *c < 0.0 {
                if *c < -NEGATIVE_CLAMP {
                    return Err(Error::InvalidInput(format!("coordinate {i} is negative ({c})")));
                }
                *c = 0.0;
            }
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidInput(format!("coordinates sum to {sum}, expected 1")));
        }
        Ok(SimplexVector(coords))
    }

    /// The barycenter `(1/n, …, 1/n)`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("simplex dimension must be at least 1".into()));
        }
        Ok(SimplexVector(vec![1.0 / n as f64; n]))
    }

    /// The pure strategy `e_j`.
    pub fn vertex(n: usize, j: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::Dimension(format!("vertex index {j} out of range for dimension {n}")));
        }
        let mut coords = vec![0.0; n];
        coords[j] = 1.0;
        Ok(SimplexVector(coords))
    }

    /// Skips validation. Callers guarantee feasibility by construction
    /// (convex combinations, explicit renormalization).
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        SimplexVector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Indices carrying positive mass.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn check_dim(&self, n: usize, what: &str) -> Result<()> {
        if self.dim() != n {
            return Err(Error::Dimension(format!(
                "{what} has dimension {}, expected {n}",
                self.dim()
            )));
        }
        Ok(())
    }
}

impl Index<usize> for SimplexVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for SimplexVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for SimplexVector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        SimplexVector::new(coords)
    }
}
