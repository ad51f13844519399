//! Samplers for the three source families and ensemble assembly.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng as _;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{check_spd, condition_number};
use crate::rng::RngHandle;
use crate::types::{stack_sources, DatasetEnsemble, SourceComponentMatrix, SourceModel};

/// How mixing matrices are drawn in [`mix`].
#[derive(Debug, Clone, Copy)]
pub struct MixingSpec {
    pub n_sources: usize,
    pub k_datasets: usize,
    /// Resample any draw whose 2-norm condition number exceeds this.
    pub max_condition: f64,
    /// Test hook: skip the random draw and use identity mixing.
    pub identity: bool,
}

impl MixingSpec {
    /// Standard-normal entries with the default condition guard of 1e6.
    pub fn standard_normal(n_sources: usize, k_datasets: usize) -> Self {
        Self { n_sources, k_datasets, max_condition: 1e6, identity: false }
    }

    /// Identity mixing (X^[k] = S^[k] exactly).
    pub fn identity(n_sources: usize, k_datasets: usize) -> Self {
        Self { n_sources, k_datasets, max_condition: 1e6, identity: true }
    }
}

const MIXING_ATTEMPTS: usize = 100;

fn standard_normal_vector(k: usize, rng: &mut impl rand::Rng) -> DVector<f64> {
    DVector::from_fn(k, |_, _| StandardNormal.sample(rng))
}

/// Draw V i.i.d. columns from the K-variate power-exponential distribution
/// with dispersion `Σ` and shape `β`.
///
/// The radius is sampled exactly through the Gamma transform
/// `t = r^(2β)/2 ~ Gamma(K/(2β), 1)`, the direction uniformly on the unit
/// sphere, and the column is `Σ^(1/2) r u`. Columns are zero-mean by symmetry
/// and have covariance `ρΣ` with `ρ = E[r²]/K`.
pub fn sample_mpe_scv(
    model: &SourceModel,
    v_samples: usize,
    handle: RngHandle,
) -> Result<SourceComponentMatrix> {
    let (beta, sigma) = match model {
        SourceModel::MpeScv { shape_beta, dispersion } => (*shape_beta, dispersion),
        _ => return Err(Error::UnsupportedModel("sample_mpe_scv needs an MpeScv model".into())),
    };
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter("beta must be positive".into()));
    }
    if v_samples == 0 {
        return Err(Error::InvalidParameter("v_samples must be >= 1".into()));
    }
    check_spd(sigma, "MPE dispersion")?;
    let k = sigma.nrows();
    let chol = Cholesky::new(sigma.clone())
        .ok_or_else(|| Error::NotSpd("MPE dispersion Cholesky failed".into()))?;
    let factor = chol.l();

    let gamma = Gamma::new(k as f64 / (2.0 * beta), 1.0)
        .map_err(|e| Error::InvalidParameter(format!("gamma distribution: {e}")))?;
    let mut rng = handle.rng();
    let mut data = DMatrix::zeros(k, v_samples);
    for col in 0..v_samples {
        let t: f64 = gamma.sample(&mut rng);
        let r = (2.0 * t).powf(1.0 / (2.0 * beta));
        let mut u = standard_normal_vector(k, &mut rng);
        let mut norm = u.norm();
        while norm == 0.0 {
            u = standard_normal_vector(k, &mut rng);
            norm = u.norm();
        }
        let x = &factor * (u * (r / norm));
        data.set_column(col, &x);
    }
    SourceComponentMatrix::new(data)
}

/// Draw V i.i.d. zero-mean Gaussian columns with the given covariance.
pub fn sample_gaussian_scv(
    covariance: &DMatrix<f64>,
    v_samples: usize,
    handle: RngHandle,
) -> Result<SourceComponentMatrix> {
    check_spd(covariance, "Gaussian covariance")?;
    if v_samples == 0 {
        return Err(Error::InvalidParameter("v_samples must be >= 1".into()));
    }
    let k = covariance.nrows();
    let chol = Cholesky::new(covariance.clone())
        .ok_or_else(|| Error::NotSpd("Gaussian covariance Cholesky failed".into()))?;
    let factor = chol.l();
    let mut rng = handle.rng();
    let mut data = DMatrix::zeros(k, v_samples);
    for col in 0..v_samples {
        let z = standard_normal_vector(k, &mut rng);
        data.set_column(col, &(&factor * z));
    }
    SourceComponentMatrix::new(data)
}

/// Sample a vector moving-average of i.i.d. standard Gaussian innovations:
/// `s(v) = Σ_{l=0}^{L-1} B_l z(v-l)`.
///
/// `L-1` warm-up innovations are drawn so the process is stationary from the
/// first emitted sample.
pub fn sample_vector_ma(
    model: &SourceModel,
    v_samples: usize,
    handle: RngHandle,
) -> Result<SourceComponentMatrix> {
    let taps = match model {
        SourceModel::VectorMaGaussian { taps } => taps,
        _ => return Err(Error::UnsupportedModel("sample_vector_ma needs a VectorMaGaussian model".into())),
    };
    if taps.is_empty() {
        return Err(Error::InvalidParameter("vector MA needs at least one tap".into()));
    }
    if v_samples == 0 {
        return Err(Error::InvalidParameter("v_samples must be >= 1".into()));
    }
    let k = taps[0].nrows();
    let l_taps = taps.len();
    let mut rng = handle.rng();
    // Innovation z(v-(L-1)) .. z(v_samples-1), newest last.
    let innovations: Vec<DVector<f64>> = (0..v_samples + l_taps - 1)
        .map(|_| standard_normal_vector(k, &mut rng))
        .collect();
    let mut data = DMatrix::zeros(k, v_samples);
    for v in 0..v_samples {
        let mut s = DVector::zeros(k);
        for (l, tap) in taps.iter().enumerate() {
            // z(v - l) sits at buffer index v + (L-1) - l.
            s += tap * &innovations[v + l_taps - 1 - l];
        }
        data.set_column(v, &s);
    }
    SourceComponentMatrix::new(data)
}

/// Sample an SCM from any model family.
pub fn sample_model(
    model: &SourceModel,
    v_samples: usize,
    handle: RngHandle,
) -> Result<SourceComponentMatrix> {
    match model {
        SourceModel::GaussianScv { covariance } => sample_gaussian_scv(covariance, v_samples, handle),
        SourceModel::MpeScv { .. } => sample_mpe_scv(model, v_samples, handle),
        SourceModel::VectorMaGaussian { .. } => sample_vector_ma(model, v_samples, handle),
    }
}

/// Draw one mixing matrix honoring the condition guard.
pub fn sample_mixing_matrix(spec: &MixingSpec, rng: &mut impl rand::Rng) -> Result<DMatrix<f64>> {
    let n = spec.n_sources;
    if spec.identity {
        return Ok(DMatrix::identity(n, n));
    }
    for _ in 0..MIXING_ATTEMPTS {
        let a = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
        if condition_number(&a) <= spec.max_condition {
            return Ok(a);
        }
    }
    Err(Error::ConditionGuardExhausted(MIXING_ATTEMPTS))
}

/// Mix N sources into a K-dataset ensemble: per dataset k, stacks row k of
/// each SCM into S^[k] and applies a freshly drawn A^[k].
pub fn mix(
    sources: &[SourceComponentMatrix],
    spec: &MixingSpec,
    handle: RngHandle,
) -> Result<DatasetEnsemble> {
    if sources.is_empty() {
        return Err(Error::ShapeMismatch("mix needs at least one source".into()));
    }
    if sources.len() != spec.n_sources {
        return Err(Error::ShapeMismatch(format!(
            "spec expects {} sources, got {}",
            spec.n_sources,
            sources.len()
        )));
    }
    let k = sources[0].k_datasets();
    let v = sources[0].v_samples();
    if k != spec.k_datasets {
        return Err(Error::ShapeMismatch(format!(
            "spec expects K={} datasets, sources have K={k}",
            spec.k_datasets
        )));
    }
    for (i, s) in sources.iter().enumerate() {
        if s.k_datasets() != k || s.v_samples() != v {
            return Err(Error::ShapeMismatch(format!("source {i} has inconsistent shape")));
        }
    }
    let mut rng = handle.rng();
    let mut mixing = Vec::with_capacity(k);
    let mut observations = Vec::with_capacity(k);
    for ki in 0..k {
        let a = sample_mixing_matrix(spec, &mut rng)?;
        let s_k = stack_sources(sources, ki);
        observations.push(&a * &s_k);
        mixing.push(a);
    }
    DatasetEnsemble::new(observations, Some(mixing), Some(sources.to_vec()))
}

/// Per-sample second moments E[s_n^[k](v)²] implied by a model, as a length-K
/// vector (diagonal of the model covariance at lag 0).
pub fn model_second_moments(model: &SourceModel) -> Result<DVector<f64>> {
    let cov = crate::stats::model_covariance(model)?;
    Ok(cov.diagonal())
}
