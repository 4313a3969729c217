//! Cα–Cα distance matrices and the square image type shared by every stage.

use crate::error::{Error, Result};
use crate::structure::CaTrace;

/// Square row-major matrix of reals.
///
/// Holds the raw distance matrix in ångströms as well as every rescaled and
/// transformed image derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceGrid {
    size: usize,
    values: Vec<f64>,
}

impl DistanceGrid {
    pub fn new(size: usize, values: Vec<f64>) -> Result<Self> {
        if size == 0 || values.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "grid of size {size} needs {} values, got {}",
                size * size,
                values.len()
            )));
        }
        Ok(Self { size, values })
    }

    pub fn zeros(size: usize) -> Self {
        Self { size, values: vec![0.0; size * size] }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                values.push(f(r, c));
            }
        }
        Self { size, values }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.size + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.values[row * self.size + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.size..(row + 1) * self.size]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |r, c| self.get(c, r))
    }

    /// Exact (bitwise) symmetry check.
    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|r| (r + 1..self.size).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Replaces each off-diagonal pair with its mean, making the grid exactly symmetric.
    pub fn symmetrize(&mut self) {
        for r in 0..self.size {
            for c in r + 1..self.size {
                let mean = 0.5 * (self.get(r, c) + self.get(c, r));
                self.set(r, c, mean);
                self.set(c, r, mean);
            }
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.size, other.size, "grid sizes differ");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Pairwise Euclidean distances between all α-carbons of `trace`.
///
/// Each pair is computed once and mirrored, so the result is exactly
/// symmetric with a zero diagonal.
pub fn compute_distance_matrix(trace: &CaTrace) -> DistanceGrid {
    let n = trace.len();
    let mut grid = DistanceGrid::zeros(n);
    for i in 0..n {
        let a = trace.residues[i];
        for j in i + 1..n {
            let b = trace.residues[j];
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
            grid.set(i, j, d);
            grid.set(j, i, d);
        }
    }
    grid
}
