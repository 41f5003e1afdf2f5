//! The Williamson normal form, slice-wise on tensors: the classical
//! decomposition of a real symmetric positive-definite 2n x 2n matrix by a
//! real symplectic congruence, its lift to tensors with real SPD Fourier
//! slices, real-valued factor recovery under conjugate symmetry, the
//! independent symplectic-eigenvalue oracle, and the Hermitian
//! feasibility check.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::structured::{as_fourier, j_mul_left, j_mul_right, symplectic_unit};
use crate::tensor::{self, Domain, Tensor3};

/// Tolerance on imaginary parts before the real-only classical Williamson
/// path; larger imaginary parts are an error, never silently dropped.
const REAL_INPUT_TOL: f64 = 1e-12;
/// Tolerance for symmetry of the input slices.
const SYMMETRY_TOL: f64 = 1e-10;
/// Relative tolerance for the imaginary-axis test in the eigenvalue oracle
/// and the feasibility check.
const AXIS_TOL: f64 = 1e-8;

/// Result of the T-Williamson decomposition `M = S^H * D * S`.
///
/// `s` and `d` are spatial-domain tensors; the Fourier slices of `d` are
/// `blkdiag(diag(λ^(i)), diag(λ^(i)))` by construction, with `lambdas[i]`
/// holding the symplectic eigenvalues of the i-th Fourier slice of `M`,
/// sorted descending.
#[derive(Debug, Clone)]
pub struct WilliamsonFactors {
    pub s: Tensor3,
    pub d: Tensor3,
    pub lambdas: Vec<Vec<f64>>,
}

/// Validates that `m` is real (to `REAL_INPUT_TOL`), symmetric (to
/// `SYMMETRY_TOL`), square with even dimension, and returns the exactly
/// real symmetrized matrix.
fn validate_real_symmetric(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.rows().is_multiple_of(2) {
        return Err(Error::OddLeadingDim { dim: m.rows() });
    }
    let norm = m.frobenius();
    let max_imag = m.max_abs_imag();
    if max_imag > REAL_INPUT_TOL * norm.max(1.0) {
        return Err(Error::NotReal { max_imag });
    }
    let dev = m.symmetric_deviation();
    if dev > SYMMETRY_TOL * norm.max(1.0) {
        return Err(Error::NotSymmetric { deviation: dev });
    }
    let real = m.real_part();
    Ok(real.add(&real.transpose()).scale(Complex64::new(0.5, 0.0)))
}

/// Classical Williamson decomposition of a real SPD 2n x 2n matrix:
/// returns a real symplectic `R` (`R^T J R = J`) and the symplectic
/// eigenvalues `λ` sorted descending, with
/// `R^T m R = blkdiag(diag(λ), diag(λ))`.
///
/// Construction: `X = m^{-1/2}`; `K = X J X` is real skew with canonical
/// planes at `σ = 1/λ`; the plane pairs are reordered into (q-block,
/// p-block) layout with λ descending, and `R = X O blkdiag(√λ, √λ)`.
pub fn williamson_matrix(m: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    let sym = validate_real_symmetric(m)?;
    let x = matrix::invsqrtm_spd(&sym)?;
    // invsqrtm of a real symmetric matrix is real; make that exact.
    let x = {
        let r = x.real_part();
        r.add(&r.transpose()).scale(Complex64::new(0.5, 0.0))
    };
    let k = {
        let raw = j_mul_right(&x).matmul(&x); // X J X via (X J) X
        let raw = raw.real_part();
        raw.sub(&raw.transpose()).scale(Complex64::new(0.5, 0.0))
    };
    let form = matrix::skew_canonical(&k)?;

    let dim = sym.rows();
    let n = dim / 2;
    // skew_canonical yields interleaved (q_j, p_j) planes with σ descending.
    // Reorder planes by σ ascending so that λ = 1/σ is descending, and
    // split the columns into the q-block and the p-block.
    let mut o = Matrix::zeros(dim, dim);
    let mut lambdas = Vec::with_capacity(n);
    for t in 0..n {
        let src = n - 1 - t;
        lambdas.push(1.0 / form.sigma[src]);
        for i in 0..dim {
            o[(i, t)] = form.o[(i, 2 * src)];
            o[(i, n + t)] = form.o[(i, 2 * src + 1)];
        }
    }

    // R = X · O · blkdiag(√λ, √λ): scale the q/p column pairs by √λ.
    let mut r = x.matmul(&o);
    for t in 0..n {
        let factor = lambdas[t].sqrt();
        for i in 0..dim {
            r[(i, t)] = Complex64::new(r[(i, t)].re * factor, 0.0);
            r[(i, n + t)] = Complex64::new(r[(i, n + t)].re * factor, 0.0);
        }
    }
    Ok((r, lambdas))
}

/// Symplectic inverse `R^{-1} = -J R^T J` of a real symplectic matrix.
fn symplectic_inverse_matrix(r: &Matrix) -> Matrix {
    j_mul_right(&j_mul_left(&r.conj_transpose())).scale(Complex64::new(-1.0, 0.0))
}

fn williamson_slice(slice: &Matrix) -> Result<(Matrix, Matrix, Vec<f64>)> {
    let (r, lambdas) = williamson_matrix(slice)?;
    let s = symplectic_inverse_matrix(&r);
    let dim = slice.rows();
    let n = dim / 2;
    let mut d = Matrix::zeros(dim, dim);
    for t in 0..n {
        d[(t, t)] = Complex64::new(lambdas[t], 0.0);
        d[(n + t, n + t)] = Complex64::new(lambdas[t], 0.0);
    }
    Ok((s, d, lambdas))
}

/// T-Williamson normal form of a tensor whose Fourier slices are real
/// symmetric positive-definite: `M = S^H * D * S` with `S` T-symplectic and
/// `D` T-diagonal. Spatial input is transformed first; the factors are
/// returned in the spatial domain.
pub fn t_williamson(m: &Tensor3) -> Result<WilliamsonFactors> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.rows().is_multiple_of(2) {
        return Err(Error::OddLeadingDim { dim: m.rows() });
    }
    let mf = as_fourier(m)?;
    let per_slice: Vec<(Matrix, Matrix, Vec<f64>)> = (0..mf.slices())
        .into_par_iter()
        .map(|k| {
            williamson_slice(&mf.slice(k)).map_err(|e| Error::Slice {
                slice: k + 1,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let s_slices: Vec<Matrix> = per_slice.iter().map(|(s, _, _)| s.clone()).collect();
    let d_slices: Vec<Matrix> = per_slice.iter().map(|(_, d, _)| d.clone()).collect();
    let lambdas: Vec<Vec<f64>> = per_slice.into_iter().map(|(_, _, l)| l).collect();

    let s = tensor::idft3(&Tensor3::from_slices(&s_slices, Domain::Fourier)?)?;
    let d = tensor::idft3(&Tensor3::from_slices(&d_slices, Domain::Fourier)?)?;
    Ok(WilliamsonFactors { s, d, lambdas })
}

/// Independent symplectic-eigenvalue oracle for a real SPD matrix: the
/// paired moduli of the purely imaginary eigenvalues of `J m`, sorted
/// descending.
pub fn symplectic_eigs_oracle(m: &Matrix) -> Result<Vec<f64>> {
    let sym = validate_real_symmetric(m)?;
    let report = matrix::is_hpd(&sym)?;
    if !report.hpd {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    let jm = j_mul_left(&sym);
    let values = matrix::eig_general(&jm)?;
    let tolerance = AXIS_TOL * sym.frobenius();
    let deviation = values.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
    if deviation > tolerance {
        return Err(Error::ImaginaryAxis {
            deviation,
            tolerance,
        });
    }
    let mut moduli: Vec<f64> = values.iter().map(|v| v.im.abs()).collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // ± pairs: keep one representative of each.
    Ok(moduli.into_iter().step_by(2).collect())
}

fn conjugate_partner(i: usize, p: usize) -> usize {
    (p - i) % p
}

/// T-Williamson decomposition with real spatial factors, for tensors whose
/// real SPD Fourier slices are also conjugate-symmetric as a family
/// (`M̂^(p-i+2) = conj(M̂^(i))`). The decomposition is computed once per
/// conjugate pair and mirrored, which makes the factor tensors satisfy the
/// same symmetry and therefore be real after the inverse transform.
pub fn real_symmetrize_factors(m: &Tensor3) -> Result<WilliamsonFactors> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.rows().is_multiple_of(2) {
        return Err(Error::OddLeadingDim { dim: m.rows() });
    }
    let mf = as_fourier(m)?;
    let p = mf.slices();
    for i in 0..p {
        let partner = conjugate_partner(i, p);
        let residual = mf.slice(partner).sub(&mf.slice(i).conj()).frobenius();
        if residual > SYMMETRY_TOL * mf.slice(i).frobenius().max(1.0) {
            return Err(Error::ConjugateSymmetry {
                slice: i + 1,
                residual,
            });
        }
    }

    let mut s_slices: Vec<Option<Matrix>> = vec![None; p];
    let mut d_slices: Vec<Option<Matrix>> = vec![None; p];
    let mut lambdas: Vec<Vec<f64>> = vec![Vec::new(); p];
    for i in 0..p {
        let partner = conjugate_partner(i, p);
        if i > partner {
            continue; // mirrored from the representative below
        }
        let (s, d, l) = williamson_slice(&mf.slice(i)).map_err(|e| Error::Slice {
            slice: i + 1,
            source: Box::new(e),
        })?;
        if partner != i {
            s_slices[partner] = Some(s.conj());
            d_slices[partner] = Some(d.clone());
            lambdas[partner] = l.clone();
        }
        s_slices[i] = Some(s);
        d_slices[i] = Some(d);
        lambdas[i] = l;
    }
    let s_slices: Vec<Matrix> = s_slices.into_iter().map(|s| s.unwrap()).collect();
    let d_slices: Vec<Matrix> = d_slices.into_iter().map(|d| d.unwrap()).collect();

    let s = tensor::idft3(&Tensor3::from_slices(&s_slices, Domain::Fourier)?)?;
    let d = tensor::idft3(&Tensor3::from_slices(&d_slices, Domain::Fourier)?)?;
    Ok(WilliamsonFactors { s, d, lambdas })
}

/// Feasibility of a Williamson-type factorization `M = S^H blkdiag(Λ, Λ) S`
/// under the Hermitian symplectic convention, for a complex HPD matrix.
/// Feasible exactly when the spectrum of `M^{-1} J` has the paired form
/// `{± i/λ_j}` with positive `λ_j`.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Eigenvalues of `M^{-1} J`.
    pub spectrum: Vec<Complex64>,
    /// The candidate symplectic eigenvalues when feasible, descending.
    pub symplectic_eigenvalues: Option<Vec<f64>>,
}

pub fn hermitian_feasibility_check(m: &Matrix) -> Result<FeasibilityReport> {
    let report = matrix::is_hpd(m)?;
    if !report.hpd {
        if !report.hermitian {
            return Err(Error::NotHermitian {
                deviation: report.hermitian_deviation,
            });
        }
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: report.min_eigenvalue,
        });
    }
    if !m.rows().is_multiple_of(2) {
        return Err(Error::OddLeadingDim { dim: m.rows() });
    }
    let w = matrix::solve(m, &symplectic_unit(m.rows() / 2))?;
    let mut spectrum = matrix::eig_general(&w)?;
    spectrum.sort_by(|a, b| {
        a.im.partial_cmp(&b.im)
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
    });

    let dim = spectrum.len();
    let n = dim / 2;
    let scale = spectrum.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = AXIS_TOL * scale;
    let mut feasible = true;
    for z in &spectrum {
        if z.re.abs() > tol {
            feasible = false;
        }
    }
    // Closed under negation with paired moduli: sorted by imaginary part,
    // entry k must cancel entry dim-1-k, and the upper half must be positive.
    for k in 0..n {
        if (spectrum[k] + spectrum[dim - 1 - k]).norm() > tol {
            feasible = false;
        }
        if spectrum[n + k].im <= tol {
            feasible = false;
        }
    }
    let symplectic_eigenvalues = if feasible {
        // ν ascending over the positive half; λ = 1/ν is then descending.
        Some((0..n).map(|k| 1.0 / spectrum[n + k].im).collect())
    } else {
        None
    };
    Ok(FeasibilityReport {
        feasible,
        spectrum,
        symplectic_eigenvalues,
    })
}

/// Combined relative l2 error between per-slice eigenvalue lists, both
/// sides sorted descending: the square root of the summed squared slice
/// errors over the square root of the summed squared reference norms.
pub fn spectral_agreement(lambdas: &[Vec<f64>], oracle: &[Vec<f64>]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (l, o) in lambdas.iter().zip(oracle) {
        for (a, b) in l.iter().zip(o) {
            num += (a - b) * (a - b);
            den += b * b;
        }
    }
    num.sqrt() / den.sqrt()
}
