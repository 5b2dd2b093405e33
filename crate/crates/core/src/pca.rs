//! Principal components of the state-share covariance.
//!
//! Shares are centered per state, the sample covariance `devsᵀ·devs / (n − 1)`
//! is decomposed, and the eigenpairs above a relative cutoff are kept in
//! descending order. With `n` elections at most `n − 1` survive.

use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::dataset::ElectionDataset;
use crate::error::ModelError;
use crate::linalg::{self, Matrix};
use crate::state::{StateId, STATE_COUNT};

/// Eigenvalues below `RANK_CUTOFF · λ_max` are treated as zero.
pub const RANK_CUTOFF: f64 = 1e-10;

/// Share deviations from per-state means (elections × states).
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationMatrix {
    pub devs: Matrix,
    pub mean: Vec<f64>,
}

impl DeviationMatrix {
    pub fn n(&self) -> usize {
        self.devs.rows()
    }
}

pub fn center(shares: &Matrix) -> DeviationMatrix {
    let n = shares.rows();
    let mut mean = alloc::vec![0.0; shares.cols()];
    for r in 0..n {
        for (m, x) in mean.iter_mut().zip(shares.row(r)) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut devs = shares.clone();
    for r in 0..n {
        for (d, m) in devs.row_mut(r).iter_mut().zip(&mean) {
            *d -= m;
        }
    }
    DeviationMatrix { devs, mean }
}

/// Sample covariance of the states.
pub fn covariance(devs: &DeviationMatrix) -> Result<Matrix, ModelError> {
    let n = devs.n();
    if n < 2 {
        return Err(ModelError::DegenerateSample(n));
    }
    let mut c = devs.devs.gram();
    c.scale(1.0 / (n - 1) as f64);
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    mean: Vec<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    n: usize,
}

impl PcaModel {
    pub fn fit(shares: &Matrix) -> Result<PcaModel, ModelError> {
        let devs = center(shares);
        let cov = covariance(&devs)?;
        let n = devs.n();
        PcaModel::from_covariance(devs.mean, &cov, n)
    }

    /// Like [`PcaModel::fit`] but insists on exactly `expected_rank` eigenpairs.
    pub fn fit_strict(shares: &Matrix, expected_rank: usize) -> Result<PcaModel, ModelError> {
        let model = PcaModel::fit(shares)?;
        if model.rank() != expected_rank {
            return Err(ModelError::RankDeficient {
                expected: expected_rank,
                found: model.rank(),
            });
        }
        Ok(model)
    }

    pub fn fit_dataset(dataset: &ElectionDataset) -> Result<PcaModel, ModelError> {
        PcaModel::fit(dataset.shares())
    }

    pub fn from_covariance(mean: Vec<f64>, cov: &Matrix, n: usize) -> Result<PcaModel, ModelError> {
        if cov.rows() != mean.len() || cov.cols() != mean.len() {
            return Err(ModelError::DimensionMismatch {
                expected: mean.len(),
                found: cov.rows(),
            });
        }
        let eig = linalg::symmetric_eigen(cov);
        let mut order: Vec<usize> = (0..eig.values.len()).collect();
        order.sort_by(|&a, &b| {
            eig.values[b]
                .partial_cmp(&eig.values[a])
                .unwrap_or(Ordering::Equal)
        });
        let lambda_max = order.first().map_or(0.0, |&i| eig.values[i]);
        let mut eigenvalues = Vec::new();
        let mut eigenvectors = Vec::new();
        for &i in &order {
            let value = eig.values[i];
            if lambda_max.is_nan() || lambda_max <= 0.0 || value < lambda_max * RANK_CUTOFF {
                break;
            }
            let mut v = eig.vectors.column(i);
            orient(&mut v);
            eigenvalues.push(value);
            eigenvectors.push(v);
        }
        Ok(PcaModel {
            mean,
            eigenvalues,
            eigenvectors,
            n,
        })
    }

    /// Assembles a model from known parts, e.g. for toy examples.
    pub fn new(
        mean: Vec<f64>,
        eigenvalues: Vec<f64>,
        eigenvectors: Vec<Vec<f64>>,
        n: usize,
    ) -> Result<PcaModel, ModelError> {
        if eigenvalues.len() != eigenvectors.len() {
            return Err(ModelError::DimensionMismatch {
                expected: eigenvalues.len(),
                found: eigenvectors.len(),
            });
        }
        if let Some(bad) = eigenvectors.iter().find(|v| v.len() != mean.len()) {
            return Err(ModelError::DimensionMismatch {
                expected: mean.len(),
                found: bad.len(),
            });
        }
        Ok(PcaModel {
            mean,
            eigenvalues,
            eigenvectors,
            n,
        })
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of retained eigenpairs.
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// Fraction of total variance carried by the first `k` components.
    pub fn variance_explained(&self, k: usize) -> Result<f64, ModelError> {
        self.check_index(k)?;
        let total: f64 = self.eigenvalues.iter().sum();
        let head: f64 = self.eigenvalues[..k].iter().sum();
        Ok(head / total)
    }

    /// Coefficients of component `j` (1-based) paired with their index, sorted ascending.
    pub fn loadings(&self, j: usize) -> Result<Vec<(usize, f64)>, ModelError> {
        self.check_index(j)?;
        let mut out: Vec<(usize, f64)> = self.eigenvectors[j - 1].iter().copied().enumerate().collect();
        out.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
        Ok(out)
    }

    /// `Σⱼ λⱼ EⱼEⱼᵀ`, the covariance the generator reproduces.
    pub fn reconstructed_covariance(&self) -> Matrix {
        let d = self.dim();
        let mut c = Matrix::zeros(d, d);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..d {
                let li = lambda * v[i];
                for j in 0..d {
                    c[(i, j)] += li * v[j];
                }
            }
        }
        c
    }

    fn check_index(&self, k: usize) -> Result<(), ModelError> {
        if k == 0 || k > self.rank() {
            return Err(ModelError::IndexOutOfRange {
                index: k,
                max: self.rank(),
            });
        }
        Ok(())
    }
}

/// Component `j` of a 51-state model as (state, coefficient), ascending.
pub fn loadings_report(model: &PcaModel, j: usize) -> Result<Vec<(StateId, f64)>, ModelError> {
    if model.dim() != STATE_COUNT {
        return Err(ModelError::DimensionMismatch {
            expected: STATE_COUNT,
            found: model.dim(),
        });
    }
    Ok(model
        .loadings(j)?
        .into_iter()
        .map(|(i, c)| (StateId::new(i).expect("dimension checked"), c))
        .collect())
}

/// Sign convention: component sum non-negative; for a zero sum, first nonzero entry positive.
fn orient(v: &mut [f64]) {
    let sum: f64 = v.iter().sum();
    let flip = if libm::fabs(sum) <= 1e-12 {
        v.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0)
    } else {
        sum < 0.0
    };
    if flip {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}
