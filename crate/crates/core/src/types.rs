//! Domain types: source component matrices, dataset/demixing ensembles, and
//! per-source statistical models.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{check_spd, condition_number, rel_frobenius};

/// One source's realization across `K` datasets: row `k` holds the source's
/// `V` samples in dataset `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceComponentMatrix {
    data: DMatrix<f64>,
}

impl SourceComponentMatrix {
    /// Wrap a `K x V` matrix. Rejects empty or non-finite data.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(Error::ShapeMismatch("SCM must be K x V with K, V >= 1".into()));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("SCM entries must be finite".into()));
        }
        Ok(Self { data })
    }

    pub fn k_datasets(&self) -> usize {
        self.data.nrows()
    }

    pub fn v_samples(&self) -> usize {
        self.data.ncols()
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// Row `k` as a plain vector (the source in dataset `k`).
    pub fn row(&self, k: usize) -> Vec<f64> {
        self.data.row(k).iter().cloned().collect()
    }

    /// Per-row sample means (zero-mean families drive these to 0 as V grows).
    pub fn row_means(&self) -> Vec<f64> {
        let v = self.v_samples() as f64;
        (0..self.k_datasets())
            .map(|k| self.data.row(k).sum() / v)
            .collect()
    }

    /// Sample second-moment matrix (1/V) S Sᵀ.
    pub fn sample_covariance(&self) -> DMatrix<f64> {
        let v = self.v_samples() as f64;
        &self.data * self.data.transpose() / v
    }
}

/// `K` observed datasets, optionally with the ground-truth mixing matrices
/// and sources that produced them.
#[derive(Debug, Clone)]
pub struct DatasetEnsemble {
    observations: Vec<DMatrix<f64>>,
    mixing: Option<Vec<DMatrix<f64>>>,
    sources: Option<Vec<SourceComponentMatrix>>,
}

/// Largest acceptable mixing-matrix condition number at construction.
const MIXING_CONDITION_LIMIT: f64 = 1e12;

impl DatasetEnsemble {
    /// Assemble and validate an ensemble.
    ///
    /// When both `mixing` and `sources` are given, the reconstruction
    /// `X^[k] = A^[k] S^[k]` must hold to 1e-10 relative Frobenius and every
    /// `A^[k]` must be numerically invertible.
    pub fn new(
        observations: Vec<DMatrix<f64>>,
        mixing: Option<Vec<DMatrix<f64>>>,
        sources: Option<Vec<SourceComponentMatrix>>,
    ) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::ShapeMismatch("ensemble needs at least one dataset".into()));
        }
        let n = observations[0].nrows();
        let v = observations[0].ncols();
        let k = observations.len();
        for (i, x) in observations.iter().enumerate() {
            if x.nrows() != n || x.ncols() != v {
                return Err(Error::ShapeMismatch(format!(
                    "dataset {i} is {}x{}, expected {n}x{v}",
                    x.nrows(),
                    x.ncols()
                )));
            }
        }
        if let Some(a) = &mixing {
            if a.len() != k {
                return Err(Error::ShapeMismatch("one mixing matrix per dataset required".into()));
            }
            for (i, m) in a.iter().enumerate() {
                if m.nrows() != n || m.ncols() != n {
                    return Err(Error::ShapeMismatch(format!("mixing matrix {i} must be {n}x{n}")));
                }
                if condition_number(m) > MIXING_CONDITION_LIMIT {
                    return Err(Error::Singular(format!("mixing matrix {i} numerically singular")));
                }
            }
        }
        if let Some(s) = &sources {
            if s.len() != n {
                return Err(Error::ShapeMismatch(format!("expected {n} sources, got {}", s.len())));
            }
            for (i, scm) in s.iter().enumerate() {
                if scm.k_datasets() != k || scm.v_samples() != v {
                    return Err(Error::ShapeMismatch(format!(
                        "source {i} is {}x{}, expected {k}x{v}",
                        scm.k_datasets(),
                        scm.v_samples()
                    )));
                }
            }
        }
        if let (Some(a), Some(s)) = (&mixing, &sources) {
            for ki in 0..k {
                let s_k = stack_sources(s, ki);
                let recon = &a[ki] * &s_k;
                let err = rel_frobenius(&recon, &observations[ki]);
                if err > 1e-10 {
                    return Err(Error::InvalidParameter(format!(
                        "reconstruction residual {err:.3e} in dataset {ki} exceeds 1e-10"
                    )));
                }
            }
        }
        Ok(Self { observations, mixing, sources })
    }

    pub fn n_sources(&self) -> usize {
        self.observations[0].nrows()
    }

    pub fn k_datasets(&self) -> usize {
        self.observations.len()
    }

    pub fn v_samples(&self) -> usize {
        self.observations[0].ncols()
    }

    pub fn observations(&self) -> &[DMatrix<f64>] {
        &self.observations
    }

    pub fn mixing(&self) -> Option<&[DMatrix<f64>]> {
        self.mixing.as_deref()
    }

    pub fn sources(&self) -> Option<&[SourceComponentMatrix]> {
        self.sources.as_deref()
    }

    /// Ground-truth source matrix `S^[k]` (N x V) for dataset `k`.
    pub fn source_matrix(&self, k: usize) -> Option<DMatrix<f64>> {
        self.sources.as_ref().map(|s| stack_sources(s, k))
    }
}

/// Stack row `k` of each SCM into the dataset-k source matrix `S^[k]`.
pub fn stack_sources(sources: &[SourceComponentMatrix], k: usize) -> DMatrix<f64> {
    let n = sources.len();
    let v = sources[0].v_samples();
    DMatrix::from_fn(n, v, |i, j| sources[i].data()[(k, j)])
}

/// `K` demixing matrices, one per dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DemixingEnsemble {
    matrices: Vec<DMatrix<f64>>,
}

impl DemixingEnsemble {
    pub fn new(matrices: Vec<DMatrix<f64>>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::ShapeMismatch("need at least one demixing matrix".into()));
        }
        let n = matrices[0].nrows();
        for (i, w) in matrices.iter().enumerate() {
            if w.nrows() != n || w.ncols() != n {
                return Err(Error::ShapeMismatch(format!("demixing matrix {i} must be {n}x{n}")));
            }
            if condition_number(w) > MIXING_CONDITION_LIMIT {
                return Err(Error::Singular(format!("demixing matrix {i} numerically singular")));
            }
        }
        Ok(Self { matrices })
    }

    pub fn identity(n: usize, k: usize) -> Self {
        Self { matrices: vec![DMatrix::identity(n, n); k] }
    }

    pub fn matrices(&self) -> &[DMatrix<f64>] {
        &self.matrices
    }

    pub fn matrices_mut(&mut self) -> &mut [DMatrix<f64>] {
        &mut self.matrices
    }

    pub fn k_datasets(&self) -> usize {
        self.matrices.len()
    }

    pub fn n_sources(&self) -> usize {
        self.matrices[0].nrows()
    }
}

/// Statistical description of one source component matrix.
///
/// Each variant carries exactly the parameters its family needs; all
/// constructors validate them.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceModel {
    /// i.i.d. columns from a zero-mean Gaussian with the given `K x K`
    /// covariance.
    GaussianScv { covariance: DMatrix<f64> },
    /// i.i.d. columns from the multivariate power-exponential family with
    /// density proportional to exp(-(xᵀ Σ⁻¹ x)^β / 2).
    MpeScv { shape_beta: f64, dispersion: DMatrix<f64> },
    /// Vector moving average of i.i.d. standard Gaussian innovations:
    /// s(v) = Σ_l B_l z(v-l).
    VectorMaGaussian { taps: Vec<DMatrix<f64>> },
}

impl SourceModel {
    pub fn gaussian(covariance: DMatrix<f64>) -> Result<Self> {
        check_spd(&covariance, "GaussianScv covariance")?;
        Ok(Self::GaussianScv { covariance })
    }

    pub fn mpe(shape_beta: f64, dispersion: DMatrix<f64>) -> Result<Self> {
        if !(shape_beta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "shape_beta must be positive, got {shape_beta}"
            )));
        }
        check_spd(&dispersion, "MpeScv dispersion")?;
        Ok(Self::MpeScv { shape_beta, dispersion })
    }

    pub fn vector_ma(taps: Vec<DMatrix<f64>>) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidParameter("vector MA needs at least one tap".into()));
        }
        let k = taps[0].nrows();
        for (l, b) in taps.iter().enumerate() {
            if b.nrows() != k || b.ncols() != k {
                return Err(Error::ShapeMismatch(format!("tap {l} must be {k}x{k}")));
            }
            if b.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter(format!("tap {l} has non-finite entries")));
            }
        }
        Ok(Self::VectorMaGaussian { taps })
    }

    pub fn k_datasets(&self) -> usize {
        match self {
            Self::GaussianScv { covariance } => covariance.nrows(),
            Self::MpeScv { dispersion, .. } => dispersion.nrows(),
            Self::VectorMaGaussian { taps } => taps[0].nrows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    #[test]
    fn scm_rejects_non_finite() {
        let m = dmatrix![1.0, f64::NAN];
        assert!(SourceComponentMatrix::new(m).is_err());
    }

    #[test]
    fn ensemble_reconstruction_invariant() {
        let s1 = SourceComponentMatrix::new(dmatrix![1.0, 2.0; 3.0, 4.0]).unwrap();
        let s2 = SourceComponentMatrix::new(dmatrix![0.5, -1.0; 2.0, 0.0]).unwrap();
        let a = vec![dmatrix![1.0, 1.0; 0.0, 1.0], dmatrix![2.0, 0.0; 1.0, 1.0]];
        let xs: Vec<DMatrix<f64>> = (0..2)
            .map(|k| &a[k] * stack_sources(&[s1.clone(), s2.clone()], k))
            .collect();
        assert!(DatasetEnsemble::new(xs.clone(), Some(a.clone()), Some(vec![s1.clone(), s2.clone()])).is_ok());

        // Corrupt one observation: the constructor must reject.
        let mut bad = xs;
        bad[0][(0, 0)] += 0.5;
        assert!(DatasetEnsemble::new(bad, Some(a), Some(vec![s1, s2])).is_err());
    }

    #[test]
    fn ensemble_rejects_singular_mixing() {
        let x = vec![DMatrix::<f64>::zeros(2, 4)];
        let a = vec![dmatrix![1.0, 2.0; 2.0, 4.0]];
        assert!(matches!(
            DatasetEnsemble::new(x, Some(a), None),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn model_constructors_validate() {
        assert!(SourceModel::mpe(0.0, DMatrix::identity(2, 2)).is_err());
        assert!(SourceModel::mpe(2.0, dmatrix![1.0, 2.0; 2.0, 1.0]).is_err());
        assert!(SourceModel::vector_ma(vec![]).is_err());
        assert!(SourceModel::gaussian(DMatrix::identity(3, 3)).is_ok());
    }
}
