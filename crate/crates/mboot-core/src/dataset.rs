//! Fixed-design datasets and parameter vectors.

use alloc::format;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// A sample of `n` responses with an `n x p` matrix of regressor rows.
///
/// The design is fixed: all bootstrap randomness is conditional on this data.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    y: DVector<f64>,
    psi: DMatrix<f64>,
}

impl Dataset {
    /// Builds a dataset, checking shapes and finiteness.
    pub fn new(y: DVector<f64>, psi: DMatrix<f64>) -> Result<Self> {
        if y.is_empty() || psi.ncols() == 0 {
            return Err(Error::InvalidModel(format!(
                "need n >= 1 and p >= 1, got n = {}, p = {}",
                y.len(),
                psi.ncols()
            )));
        }
        if psi.nrows() != y.len() {
            return Err(Error::InvalidModel(format!(
                "regressor matrix has {} rows but y has {} entries",
                psi.nrows(),
                y.len()
            )));
        }
        if y.iter().any(|v| !v.is_finite()) || psi.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("non-finite entry in dataset".into()));
        }
        Ok(Self { y, psi })
    }

    /// Convenience constructor from plain slices; `psi_rows` holds the rows.
    pub fn from_rows(y: &[f64], psi_rows: &[Vec<f64>]) -> Result<Self> {
        let p = psi_rows.first().map_or(0, Vec::len);
        if psi_rows.iter().any(|r| r.len() != p) {
            return Err(Error::InvalidModel("ragged regressor rows".into()));
        }
        let psi = DMatrix::from_fn(psi_rows.len(), p, |i, j| psi_rows[i][j]);
        Self::new(DVector::from_column_slice(y), psi)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn p(&self) -> usize {
        self.psi.ncols()
    }

    pub fn y(&self) -> &DVector<f64> {
        &self.y
    }

    pub fn psi(&self) -> &DMatrix<f64> {
        &self.psi
    }

    /// Linear predictors `psi * theta`.
    pub fn predictors(&self, theta: &Theta) -> DVector<f64> {
        &self.psi * theta.coords()
    }
}

/// A point in the parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct Theta(DVector<f64>);

impl Theta {
    /// Builds a parameter vector, rejecting non-finite entries.
    pub fn new(value: DVector<f64>) -> Result<Self> {
        if value.is_empty() {
            return Err(Error::InvalidModel("empty parameter vector".into()));
        }
        if value.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidModel("non-finite parameter entry".into()));
        }
        Ok(Self(value))
    }

    pub fn from_slice(value: &[f64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(value))
    }

    /// The origin of a `p`-dimensional parameter space.
    pub fn zeros(p: usize) -> Self {
        Self(DVector::zeros(p))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_coords(self) -> DVector<f64> {
        self.0
    }

    /// Max-norm, used for the compact-domain safeguard in the solver.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}
