//! Hamiltonian and symplectic structure on T-product tensors: the
//! T-symplectic unit tensor, block constructors and residual checks, the
//! tensor exponential, T-eigenvalues, and the spectral-symmetry report.
//!
//! A tensor H is T-Hamiltonian when (J*H)^H = J*H, equivalently when every
//! Fourier slice is a Hamiltonian matrix; S is T-symplectic when
//! S^H * J * S = J, equivalently when every Fourier slice is symplectic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::tensor::{self, Domain, Tensor3};

/// Residual threshold for treating a tensor as structurally valid.
pub const STRUCTURE_TOL: f64 = 1e-8;

/// The standard symplectic unit matrix J = [[0, I_n], [-I_n, 0]].
pub fn symplectic_unit(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = Complex64::new(1.0, 0.0);
        j[(n + i, i)] = Complex64::new(-1.0, 0.0);
    }
    j
}

/// `J * m`, using the block structure of J instead of a general product.
pub fn j_mul_left(m: &Matrix) -> Matrix {
    let dim = m.rows();
    let n = dim / 2;
    Matrix::from_fn(dim, m.cols(), |i, j| {
        if i < n {
            m[(n + i, j)]
        } else {
            -m[(i - n, j)]
        }
    })
}

/// `m * J`, using the block structure of J.
pub fn j_mul_right(m: &Matrix) -> Matrix {
    let dim = m.cols();
    let n = dim / 2;
    Matrix::from_fn(m.rows(), dim, |i, j| {
        if j < n {
            -m[(i, n + j)]
        } else {
            m[(i, j - n)]
        }
    })
}

/// T-symplectic unit tensor: every Fourier slice equals J, so in the
/// spatial domain only the first slice is nonzero and equals J.
pub fn make_t_j(n: usize, p: usize) -> Tensor3 {
    let mut t = Tensor3::zeros(2 * n, 2 * n, p, Domain::Spatial);
    t.set_slice(0, &symplectic_unit(n));
    t
}

fn require_even_square(t: &Tensor3) -> Result<usize> {
    if t.rows() != t.cols() {
        return Err(Error::NonSquare {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    if !t.rows().is_multiple_of(2) {
        return Err(Error::OddLeadingDim { dim: t.rows() });
    }
    Ok(t.rows() / 2)
}

/// Clone-or-transform to the Fourier domain.
pub(crate) fn as_fourier(t: &Tensor3) -> Result<Tensor3> {
    match t.domain() {
        Domain::Fourier => Ok(t.clone()),
        Domain::Spatial => tensor::dft3(t),
    }
}

/// Clone-or-transform to the spatial domain.
pub(crate) fn as_spatial(t: &Tensor3) -> Result<Tensor3> {
    match t.domain() {
        Domain::Spatial => Ok(t.clone()),
        Domain::Fourier => tensor::idft3(t),
    }
}

/// Per-slice block data (A_i, B_i, C_i) generating a T-Hamiltonian tensor
/// with Fourier slices [[A_i, B_i], [C_i, -A_i^H]]. B and C are Hermitian-
/// symmetrized at construction.
#[derive(Debug, Clone)]
pub struct HamiltonianBlocks {
    n: usize,
    a: Vec<Matrix>,
    b: Vec<Matrix>,
    c: Vec<Matrix>,
}

impl HamiltonianBlocks {
    pub fn new(a: Vec<Matrix>, b: Vec<Matrix>, c: Vec<Matrix>) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() || a.len() != c.len() {
            return Err(Error::Shape(
                "block lists must be nonempty and of equal length".into(),
            ));
        }
        let n = a[0].rows();
        for (name, list) in [("A", &a), ("B", &b), ("C", &c)] {
            for (i, m) in list.iter().enumerate() {
                if m.rows() != n || m.cols() != n {
                    return Err(Error::Shape(format!(
                        "{name} block {} is {}x{}, expected {n}x{n}",
                        i + 1,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        let hermitize = |m: &Matrix| m.add(&m.conj_transpose()).scale(Complex64::new(0.5, 0.0));
        Ok(Self {
            n,
            a,
            b: b.iter().map(hermitize).collect(),
            c: c.iter().map(hermitize).collect(),
        })
    }

    pub fn block_size(&self) -> usize {
        self.n
    }

    pub fn slice_count(&self) -> usize {
        self.a.len()
    }
}

/// Assembles the Fourier-domain T-Hamiltonian tensor from its blocks.
pub fn assemble_hamiltonian(blocks: &HamiltonianBlocks) -> Tensor3 {
    let n = blocks.n;
    let slices: Vec<Matrix> = (0..blocks.slice_count())
        .map(|k| {
            let (a, b, c) = (&blocks.a[k], &blocks.b[k], &blocks.c[k]);
            let neg_ah = a.conj_transpose().scale(Complex64::new(-1.0, 0.0));
            Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
                (true, true) => a[(i, j)],
                (true, false) => b[(i, j - n)],
                (false, true) => c[(i - n, j)],
                (false, false) => neg_ah[(i - n, j - n)],
            })
        })
        .collect();
    Tensor3::from_slices(&slices, Domain::Fourier).expect("uniform block dimensions")
}

fn random_complex_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random T-Hamiltonian tensor (2n x 2n x p, Fourier domain): blocks drawn
/// i.i.d. standard complex Gaussian from a seeded ChaCha8 stream, B and C
/// Hermitian-symmetrized. Deterministic for a fixed seed.
pub fn random_t_hamiltonian(n: usize, p: usize, seed: u64) -> Tensor3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Vec::with_capacity(p);
    let mut b = Vec::with_capacity(p);
    let mut c = Vec::with_capacity(p);
    for _ in 0..p {
        a.push(random_complex_matrix(&mut rng, n));
        b.push(random_complex_matrix(&mut rng, n));
        c.push(random_complex_matrix(&mut rng, n));
    }
    let blocks = HamiltonianBlocks::new(a, b, c).expect("matching block sizes");
    assemble_hamiltonian(&blocks)
}

/// Max over Fourier slices of `‖(J Ĥ)^H - J Ĥ‖_F / max(1, ‖Ĥ‖_F)`.
pub fn hamiltonian_residual(h: &Tensor3) -> Result<f64> {
    require_even_square(h)?;
    let hf = as_fourier(h)?;
    let mut worst: f64 = 0.0;
    for k in 0..hf.slices() {
        let slice = hf.slice(k);
        let jh = j_mul_left(&slice);
        let dev = jh.hermitian_deviation() / slice.frobenius().max(1.0);
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// `‖S^H * J * S - J‖ / ‖J‖` in the tensor Frobenius norm, computed in the
/// spatial domain.
pub fn symplectic_residual(s: &Tensor3) -> Result<f64> {
    let n = require_even_square(s)?;
    let sp = as_spatial(s)?;
    let j = make_t_j(n, sp.slices());
    let lhs = tensor::tprod(
        &tensor::tprod(&tensor::t_conj_transpose(&sp), &j)?,
        &sp,
    )?;
    Ok(tensor::frobenius(&lhs.sub(&j)?) / tensor::frobenius(&j))
}

/// Inverse of a T-symplectic tensor: `-J * S^H * J`. The symplectic
/// residual of the input must not exceed `STRUCTURE_TOL`.
pub fn t_symplectic_inverse(s: &Tensor3) -> Result<Tensor3> {
    let residual = symplectic_residual(s)?;
    if residual > STRUCTURE_TOL {
        return Err(Error::NotSymplectic { residual });
    }
    let sf = as_fourier(s)?;
    let slices: Vec<Matrix> = (0..sf.slices())
        .map(|k| {
            j_mul_right(&j_mul_left(&sf.slice(k).conj_transpose()))
                .scale(Complex64::new(-1.0, 0.0))
        })
        .collect();
    let inv = Tensor3::from_slices(&slices, Domain::Fourier)?;
    match s.domain() {
        Domain::Fourier => Ok(inv),
        Domain::Spatial => tensor::idft3(&inv),
    }
}

/// Tensor exponential: the matrix exponential applied to every Fourier
/// slice. Spatial input is transformed, exponentiated, and transformed back.
pub fn t_expm(h: &Tensor3) -> Result<Tensor3> {
    if h.rows() != h.cols() {
        return Err(Error::NonSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let hf = as_fourier(h)?;
    let slices: Vec<Matrix> = (0..hf.slices())
        .into_par_iter()
        .map(|k| matrix::expm(&hf.slice(k)))
        .collect::<Result<_>>()?;
    let out = Tensor3::from_slices(&slices, Domain::Fourier)?;
    match h.domain() {
        Domain::Fourier => Ok(out),
        Domain::Spatial => tensor::idft3(&out),
    }
}

/// The T-spectrum: every eigenvalue of every Fourier slice, tagged with its
/// 1-based slice index.
pub fn t_spectrum(a: &Tensor3) -> Result<Vec<(usize, Complex64)>> {
    if a.rows() != a.cols() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let af = as_fourier(a)?;
    let mut out = Vec::with_capacity(af.rows() * af.slices());
    for k in 0..af.slices() {
        for value in matrix::eig_general(&af.slice(k))? {
            out.push((k + 1, value));
        }
    }
    Ok(out)
}

/// T-spectrum plus the spectral-symmetry diagnostics for a T-Hamiltonian
/// tensor: each eigenvalue is reflected to `-conj(λ)` and greedily matched
/// against the spectrum of the same slice.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// (1-based slice index, eigenvalue) pairs.
    pub eigenvalues: Vec<(usize, Complex64)>,
    /// Maximum distance between a reflected eigenvalue and its match.
    pub reflection_match_distance: f64,
    pub symmetric: bool,
}

fn lex_key(z: &Complex64) -> (f64, f64) {
    (z.re, z.im)
}

/// Greedy nearest-neighbor matching of a multiset against its reflection,
/// ties broken by (re, im) lexicographic order. Returns the largest
/// matched distance.
pub(crate) fn reflection_match_distance(values: &[Complex64]) -> f64 {
    let mut source = values.to_vec();
    source.sort_by(|a, b| lex_key(a).partial_cmp(&lex_key(b)).unwrap());
    let reflected: Vec<Complex64> = source.iter().map(|z| -z.conj()).collect();
    let mut used = vec![false; reflected.len()];
    let mut worst: f64 = 0.0;
    for value in &source {
        let mut best: Option<(usize, f64)> = None;
        for (idx, candidate) in reflected.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let dist = (value - candidate).norm();
            let better = match best {
                None => true,
                Some((bidx, bdist)) => {
                    dist < bdist
                        || (dist == bdist
                            && lex_key(candidate) < lex_key(&reflected[bidx]))
                }
            };
            if better {
                best = Some((idx, dist));
            }
        }
        let (idx, dist) = best.expect("nonempty candidate set");
        used[idx] = true;
        worst = worst.max(dist);
    }
    worst
}

/// Computes the T-spectrum of a T-Hamiltonian tensor and verifies the
/// λ -> -conj(λ) symmetry slice by slice.
pub fn spectral_symmetry_report(h: &Tensor3) -> Result<SpectrumReport> {
    let residual = hamiltonian_residual(h)?;
    if residual > STRUCTURE_TOL {
        return Err(Error::NotHamiltonian { residual });
    }
    let hf = as_fourier(h)?;
    let mut eigenvalues = Vec::with_capacity(hf.rows() * hf.slices());
    let mut worst: f64 = 0.0;
    for k in 0..hf.slices() {
        let values = matrix::eig_general(&hf.slice(k))?;
        worst = worst.max(reflection_match_distance(&values));
        eigenvalues.extend(values.into_iter().map(|v| (k + 1, v)));
    }
    Ok(SpectrumReport {
        eigenvalues,
        reflection_match_distance: worst,
        symmetric: worst <= STRUCTURE_TOL,
    })
}

/// T-positive-definiteness: true when every Fourier slice is Hermitian
/// positive-definite. Reports the smallest Hermitian-part eigenvalue per
/// slice.
#[derive(Debug, Clone)]
pub struct PdReport {
    pub positive_definite: bool,
    pub min_eigenvalues: Vec<f64>,
}

pub fn t_pd_check(m: &Tensor3) -> Result<PdReport> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mf = as_fourier(m)?;
    let mut min_eigenvalues = Vec::with_capacity(mf.slices());
    let mut all = true;
    for k in 0..mf.slices() {
        let report = matrix::is_hpd(&mf.slice(k))?;
        all &= report.hpd;
        min_eigenvalues.push(report.min_eigenvalue);
    }
    Ok(PdReport {
        positive_definite: all,
        min_eigenvalues,
    })
}
