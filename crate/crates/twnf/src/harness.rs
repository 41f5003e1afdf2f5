//! Validation and benchmarking: the four-residual consistency suite, the
//! spectral-symmetry dataset, and runtime scaling sweeps over the
//! T-Williamson decomposition.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::matrix::{self, Matrix};
use crate::structured::{self, reflection_match_distance};
use crate::tensor::{self, Domain, Tensor3};
use crate::williamson::{self, spectral_agreement};

/// splitmix64 round, used to derive independent sub-seeds so that every
/// row/run gets its own reproducible stream regardless of evaluation order.
fn mix_seed(parts: &[u64]) -> u64 {
    let mut state = 0x9e3779b97f4a7c15u64;
    for &part in parts {
        state ^= part.wrapping_mul(0xbf58476d1ce4e5b9);
        state = state.wrapping_mul(0x94d049bb133111eb).rotate_left(31);
    }
    state
}

/// Random tensor with real symmetric positive-definite Fourier slices:
/// each slice is `Q diag(d) Q^T` with `Q` a random real orthogonal matrix
/// (eigenvectors of a random symmetric matrix) and `d` log-uniform in
/// [0.1, 10]. Deterministic for a fixed seed.
pub fn random_spd_tensor(n: usize, p: usize, seed: u64) -> Tensor3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 2 * n;
    let slices: Vec<Matrix> = (0..p)
        .map(|_| {
            let g = Matrix::from_fn(dim, dim, |_, _| {
                Complex64::new(rng.sample(StandardNormal), 0.0)
            });
            let sym = g.add(&g.transpose()).scale(Complex64::new(0.5, 0.0));
            let eig = matrix::eig_hermitian(&sym).expect("symmetric by construction");
            let q = eig.vectors.real_part();
            let mut scaled = q.clone();
            for j in 0..dim {
                let log_d = rng.random_range(0.1f64.ln()..10f64.ln());
                let d = log_d.exp();
                for i in 0..dim {
                    scaled[(i, j)] = Complex64::new(scaled[(i, j)].re * d, 0.0);
                }
            }
            let spd = scaled.matmul_conj_transpose(&q);
            // exact symmetry for the Williamson precondition
            spd.add(&spd.transpose())
                .scale(Complex64::new(0.5, 0.0))
                .real_part()
        })
        .collect();
    Tensor3::from_slices(&slices, Domain::Fourier).expect("uniform slices")
}

/// One row of the consistency table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualRow {
    pub n: usize,
    pub p: usize,
    /// `‖S_exp^H * J * S_exp - J‖ / ‖J‖` for `S_exp = exp(H)`.
    pub res_symp: f64,
    /// `‖M - S^H * D * S‖ / ‖M‖` for the computed decomposition.
    pub res_wnf: f64,
    /// `‖S^H * J * S - J‖ / ‖J‖` for the Williamson factor.
    pub res_wsp: f64,
    /// Combined relative l2 error of the eigenvalues against the oracle.
    pub res_spec: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualTable {
    pub seed: u64,
    pub rows: Vec<ResidualRow>,
}

/// Runs the consistency checks at each size: a random T-Hamiltonian tensor
/// exercises the exponential map, and a random SPD-slice tensor exercises
/// the T-Williamson decomposition. Rows are ordered by (n, p).
pub fn residual_suite(sizes: &[(usize, usize)], seed: u64) -> Result<ResidualTable> {
    let mut sizes = sizes.to_vec();
    sizes.sort();
    let mut rows = Vec::with_capacity(sizes.len());
    for (n, p) in sizes {
        let h = structured::random_t_hamiltonian(n, p, mix_seed(&[seed, n as u64, p as u64, 0]));
        let s_exp = structured::t_expm(&h)?;
        let res_symp = structured::symplectic_residual(&s_exp)?;

        let m = random_spd_tensor(n, p, mix_seed(&[seed, n as u64, p as u64, 1]));
        let factors = williamson::t_williamson(&m)?;

        let m_spatial = tensor::idft3(&m)?;
        let recon = tensor::tprod(
            &tensor::tprod(&tensor::t_conj_transpose(&factors.s), &factors.d)?,
            &factors.s,
        )?;
        let res_wnf =
            tensor::frobenius(&m_spatial.sub(&recon)?) / tensor::frobenius(&m_spatial);
        let res_wsp = structured::symplectic_residual(&factors.s)?;

        let oracle: Vec<Vec<f64>> = (0..p)
            .map(|k| williamson::symplectic_eigs_oracle(&m.slice(k)))
            .collect::<Result<_>>()?;
        let res_spec = spectral_agreement(&factors.lambdas, &oracle);

        rows.push(ResidualRow {
            n,
            p,
            res_symp,
            res_wnf,
            res_wsp,
            res_spec,
        });
    }
    Ok(ResidualTable { seed, rows })
}

/// One plotted point of the spectral-symmetry dataset.
#[derive(Debug, Clone)]
pub struct SpectrumRow {
    /// 1-based Fourier slice index.
    pub slice: usize,
    pub re: f64,
    pub im: f64,
    pub re_reflected: f64,
    pub im_reflected: f64,
    /// Distance from the reflected value to its greedy match in the same
    /// slice's spectrum.
    pub match_distance: f64,
}

/// T-spectrum of a T-Hamiltonian tensor as plot-ready rows with
/// reflections `-conj(λ)` and per-slice greedy match distances.
pub fn spectrum_rows(h: &Tensor3) -> Result<Vec<SpectrumRow>> {
    let residual = structured::hamiltonian_residual(h)?;
    if residual > structured::STRUCTURE_TOL {
        return Err(crate::error::Error::NotHamiltonian { residual });
    }
    let hf = structured::as_fourier(h)?;
    let mut rows = Vec::with_capacity(hf.rows() * hf.slices());
    for k in 0..hf.slices() {
        let values = matrix::eig_general(&hf.slice(k))?;
        let distance = reflection_match_distance(&values);
        for v in values {
            rows.push(SpectrumRow {
                slice: k + 1,
                re: v.re,
                im: v.im,
                re_reflected: -v.re,
                im_reflected: v.im,
                match_distance: distance,
            });
        }
    }
    Ok(rows)
}

/// `spectrum_rows` of a freshly generated random T-Hamiltonian tensor.
pub fn spectrum_dataset(n: usize, p: usize, seed: u64) -> Result<Vec<SpectrumRow>> {
    spectrum_rows(&structured::random_t_hamiltonian(n, p, seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAxis {
    /// Sweep the half block size n with p fixed.
    N,
    /// Sweep the slice count p with n fixed.
    P,
}

impl std::fmt::Display for BenchAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchAxis::N => write!(f, "n"),
            BenchAxis::P => write!(f, "p"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchPoint {
    pub value: usize,
    pub mean_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub axis: BenchAxis,
    pub fixed: usize,
    pub runs: usize,
    pub seed: u64,
    pub threads: usize,
    pub points: Vec<BenchPoint>,
    /// Least-squares slope of log(time) vs log(axis) over the upper half
    /// of the points; absent when fewer than two points are available.
    pub slope: Option<f64>,
}

fn log_log_slope(points: &[BenchPoint]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    // Fit on the upper half, where asymptotics dominate overhead.
    let start = points.len() / 2;
    let window = &points[start.min(points.len() - 2)..];
    let xs: Vec<f64> = window.iter().map(|p| (p.value as f64).ln()).collect();
    let ys: Vec<f64> = window.iter().map(|p| p.mean_seconds.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    Some(sxy / sxx)
}

/// Times the full T-Williamson decomposition (transforms included) on
/// random SPD-slice tensors. Input generation is excluded from the timer;
/// each run draws a fresh tensor from its own derived seed. BLAS is pinned
/// to one thread for stable numbers; `threads` controls slice parallelism.
pub fn bench_sweep(
    axis: BenchAxis,
    points: &[usize],
    fixed: usize,
    runs: usize,
    seed: u64,
) -> Result<BenchRecord> {
    if points.is_empty() || runs == 0 {
        return Err(crate::error::Error::InvalidParams(
            "bench needs at least one point and one run".into(),
        ));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(crate::error::Error::InvalidParams(
            "bench points must be strictly ascending".into(),
        ));
    }
    matrix::set_blas_threads(1);
    let threads = rayon::current_num_threads();
    let mut bench_points = Vec::with_capacity(points.len());
    for &value in points {
        let (n, p) = match axis {
            BenchAxis::N => (value, fixed),
            BenchAxis::P => (fixed, value),
        };
        let mut total = 0.0;
        for run in 0..runs {
            let m = random_spd_tensor(n, p, mix_seed(&[seed, value as u64, run as u64]));
            let start = Instant::now();
            let factors = williamson::t_williamson(&m)?;
            total += start.elapsed().as_secs_f64();
            std::hint::black_box(&factors);
        }
        bench_points.push(BenchPoint {
            value,
            mean_seconds: total / runs as f64,
        });
    }
    let slope = log_log_slope(&bench_points);
    Ok(BenchRecord {
        axis,
        fixed,
        runs,
        seed,
        threads,
        points: bench_points,
        slope,
    })
}
