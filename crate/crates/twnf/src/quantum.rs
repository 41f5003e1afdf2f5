//! Gaussian-state demonstration: a decohering two-mode squeezed vacuum,
//! encoded slice-wise as the Fourier domain of a 4 x 4 x p tensor, with
//! entropy and logarithmic-negativity profiles computed from symplectic
//! eigenvalues. Uses the ħ = 2 convention, under which the vacuum
//! covariance is the identity and the uncertainty bound is λ >= 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::tensor::{Domain, Tensor3};
use crate::williamson::{self, spectral_agreement};

/// Decoherence parameters and the sampling grid `t_i = tmax (i-1)/(p-1)`.
#[derive(Debug, Clone)]
pub struct QuantumParams {
    pub r: f64,
    pub nth: f64,
    pub kappa: f64,
    pub p: usize,
    pub tmax: f64,
}

impl QuantumParams {
    pub fn new(r: f64, nth: f64, kappa: f64, p: usize, tmax: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidParams("squeezing r must be finite".into()));
        }
        if nth.is_nan() || nth < 0.0 {
            return Err(Error::InvalidParams(
                "thermal occupation nth must be >= 0".into(),
            ));
        }
        if kappa.is_nan() || kappa < 0.0 {
            return Err(Error::InvalidParams("decay rate kappa must be >= 0".into()));
        }
        if p < 2 {
            return Err(Error::InvalidParams("sample count p must be >= 2".into()));
        }
        if tmax.is_nan() || tmax <= 0.0 {
            return Err(Error::InvalidParams("tmax must be positive".into()));
        }
        Ok(Self {
            r,
            nth,
            kappa,
            p,
            tmax,
        })
    }

    /// Defaults from the demonstration: r = 1, n̄_th = 0.5, κ = 0.3,
    /// p = 64 samples on [0, 12].
    pub fn demo() -> Self {
        Self::new(1.0, 0.5, 0.3, 64, 12.0).expect("valid demo parameters")
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.p)
            .map(|i| self.tmax * i as f64 / (self.p - 1) as f64)
            .collect()
    }
}

/// Covariance matrix of the two-mode squeezed vacuum in the phase-space
/// ordering [q1, q2, p1, p2]:
/// cosh(2r) on the diagonal, ±sinh(2r) coupling the two modes.
pub fn tmsv_covariance(r: f64) -> Matrix {
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    Matrix::from_real_rows(
        4,
        4,
        &[
            ch, sh, 0.0, 0.0, //
            sh, ch, 0.0, 0.0, //
            0.0, 0.0, ch, -sh, //
            0.0, 0.0, -sh, ch,
        ],
    )
}

/// Thermal decoherence: `M(t) = e^{-κt} M0 + (1 - e^{-κt})(2 n̄_th + 1) I`.
pub fn evolve_covariance(m0: &Matrix, t: f64, nth: f64, kappa: f64) -> Matrix {
    debug_assert!(t >= 0.0);
    let decay = (-kappa * t).exp();
    let thermal = (1.0 - decay) * (2.0 * nth + 1.0);
    let dim = m0.rows();
    m0.scale(Complex64::new(decay, 0.0))
        .add(&Matrix::identity(dim).scale(Complex64::new(thermal, 0.0)))
}

/// Encodes the sampled covariance family as the Fourier slices of a
/// 4 x 4 x p tensor: slice i is `M(t_i)`. Every slice is real SPD, but the
/// family is not conjugate-symmetric, so the spatial tensor is complex.
pub fn encode_fourier_family(params: &QuantumParams) -> Tensor3 {
    let m0 = tmsv_covariance(params.r);
    let slices: Vec<Matrix> = params
        .times()
        .iter()
        .map(|&t| evolve_covariance(&m0, t, params.nth, params.kappa))
        .collect();
    Tensor3::from_slices(&slices, Domain::Fourier).expect("uniform 4x4 slices")
}

/// Von Neumann entropy contribution of one symplectic eigenvalue:
/// `g(λ) = ((λ+1)/2) log2((λ+1)/2) - ((λ-1)/2) log2((λ-1)/2)`, with
/// `g(1) = 0` by continuity. Values in [1 - 1e-6, 1) are clamped to 1;
/// anything lower is a domain error.
pub fn g_entropy(lambda: f64) -> Result<f64> {
    if lambda < 1.0 - 1e-6 {
        return Err(Error::EntropyDomain { lambda });
    }
    let lambda = lambda.max(1.0);
    let x = (lambda + 1.0) / 2.0;
    let y = (lambda - 1.0) / 2.0;
    let y_term = if y > 0.0 { y * y.log2() } else { 0.0 };
    Ok(x * x.log2() - y_term)
}

/// Entropy per slice: `S_i = Σ_j g(λ_j^(i))`.
pub fn entropy_profile(lambdas: &[Vec<f64>]) -> Result<Vec<f64>> {
    lambdas
        .iter()
        .map(|slice| slice.iter().map(|&l| g_entropy(l)).sum())
        .collect()
}

/// Partial transpose of the second mode: `P M P` with P = diag(1, 1, 1, -1).
fn partial_transpose(m: &Matrix) -> Matrix {
    let mut out = m.clone();
    for i in 0..4 {
        out[(i, 3)] = -out[(i, 3)];
        out[(3, i)] = -out[(3, i)];
    }
    out
}

/// Negativity clamp: contributions of `-log2 λ̃` below this are exactly 0.
const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Logarithmic negativity per slice from the partial-transpose symplectic
/// eigenvalues: `E_N = Σ_j max(0, -log2 λ̃_j)`. Returns the per-slice λ̃
/// (descending) alongside the profile.
pub fn negativity_profile(params: &QuantumParams) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let m0 = tmsv_covariance(params.r);
    let mut tilde = Vec::with_capacity(params.p);
    let mut profile = Vec::with_capacity(params.p);
    for &t in &params.times() {
        let m = evolve_covariance(&m0, t, params.nth, params.kappa);
        let lam = williamson::symplectic_eigs_oracle(&partial_transpose(&m))?;
        let e_n: f64 = lam
            .iter()
            .map(|&l| {
                let term = -l.log2();
                if term < NEGATIVITY_CLAMP {
                    0.0
                } else {
                    term
                }
            })
            .sum();
        tilde.push(lam);
        profile.push(e_n);
    }
    Ok((tilde, profile))
}

/// Sampled entropy/entanglement time series together with the per-slice
/// symplectic and partial-transpose eigenvalues.
#[derive(Debug, Clone)]
pub struct ProfileSeries {
    pub times: Vec<f64>,
    pub entropy: Vec<f64>,
    pub negativity: Vec<f64>,
    pub lambdas: Vec<Vec<f64>>,
    pub lambdas_tilde: Vec<Vec<f64>>,
}

/// Full demonstration pipeline: encode the family, run the T-Williamson
/// decomposition, cross-check the eigenvalues against the independent
/// oracle, and assemble the entropy and negativity profiles.
pub fn quantum_profiles(params: &QuantumParams) -> Result<ProfileSeries> {
    let family = encode_fourier_family(params);
    let factors = williamson::t_williamson(&family)?;

    let oracle: Vec<Vec<f64>> = (0..params.p)
        .map(|k| williamson::symplectic_eigs_oracle(&family.slice(k)))
        .collect::<Result<_>>()?;
    let agreement = spectral_agreement(&factors.lambdas, &oracle);
    if agreement > 1e-8 {
        return Err(Error::InvalidParams(format!(
            "decomposition and oracle eigenvalues disagree (res = {agreement:.3e})"
        )));
    }

    let entropy = entropy_profile(&factors.lambdas)?;
    let (lambdas_tilde, negativity) = negativity_profile(params)?;
    Ok(ProfileSeries {
        times: params.times(),
        entropy,
        negativity,
        lambdas: factors.lambdas,
        lambdas_tilde,
    })
}
