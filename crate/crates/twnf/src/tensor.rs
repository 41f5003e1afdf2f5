//! Third-order complex tensors and the T-product algebra: the mode-3 DFT,
//! slice-wise products, the T-conjugate transpose, norms, traces, and the
//! conjugate-symmetry test for real recovery.
//!
//! A tensor carries a domain tag: `Spatial` for frontal slices A^(k),
//! `Fourier` for the transformed slices Â^(i). The tag is metadata only;
//! numeric content is never silently re-transformed.
//!
//! The forward transform follows the T-product convention
//! `Â^(i) = Σ_j ω^((i-1)(j-1)) A^(j)` with `ω = exp(2πi/p)`, whose sign is
//! opposite to the usual library FFT forward. It is realized here as the
//! unscaled inverse FFT; the inverse transform is the forward FFT scaled
//! by 1/p. Tests check both against direct O(p²) sum evaluation.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Spatial,
    Fourier,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Spatial => write!(f, "spatial"),
            Domain::Fourier => write!(f, "fourier"),
        }
    }
}

/// Dense complex m x n x p tensor, slice-major storage (row-major within
/// each frontal slice).
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    m: usize,
    n: usize,
    p: usize,
    domain: Domain,
    data: Vec<Complex64>,
}

impl Tensor3 {
    pub fn zeros(m: usize, n: usize, p: usize, domain: Domain) -> Self {
        assert!(m >= 1 && n >= 1 && p >= 1, "tensor dimensions must be >= 1");
        Self {
            m,
            n,
            p,
            domain,
            data: vec![Complex64::new(0.0, 0.0); m * n * p],
        }
    }

    /// Identity tensor: first spatial slice is I_n, all others zero.
    pub fn identity(n: usize, p: usize) -> Self {
        let mut t = Self::zeros(n, n, p, Domain::Spatial);
        for i in 0..n {
            t[(i, i, 0)] = Complex64::new(1.0, 0.0);
        }
        t
    }

    pub fn from_slices(slices: &[Matrix], domain: Domain) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::Shape("a tensor needs at least one slice".into()));
        }
        let (m, n) = (slices[0].rows(), slices[0].cols());
        for (k, s) in slices.iter().enumerate() {
            if s.rows() != m || s.cols() != n {
                return Err(Error::Shape(format!(
                    "slice {} is {}x{}, expected {}x{}",
                    k + 1,
                    s.rows(),
                    s.cols(),
                    m,
                    n
                )));
            }
        }
        let mut t = Self::zeros(m, n, slices.len(), domain);
        for (k, s) in slices.iter().enumerate() {
            t.data[k * m * n..(k + 1) * m * n].copy_from_slice(s.data());
        }
        Ok(t)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn slices(&self) -> usize {
        self.p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Copy of frontal slice `k` (0-based).
    pub fn slice(&self, k: usize) -> Matrix {
        let mn = self.m * self.n;
        Matrix::from_data(self.m, self.n, self.data[k * mn..(k + 1) * mn].to_vec())
    }

    pub fn set_slice(&mut self, k: usize, s: &Matrix) {
        assert_eq!((s.rows(), s.cols()), (self.m, self.n));
        let mn = self.m * self.n;
        self.data[k * mn..(k + 1) * mn].copy_from_slice(s.data());
    }

    fn require_domain(&self, expected: Domain) -> Result<()> {
        if self.domain == expected {
            Ok(())
        } else {
            Err(Error::Domain {
                expected,
                got: self.domain,
            })
        }
    }

    fn same_shape(&self, other: &Tensor3) -> Result<()> {
        if (self.m, self.n, self.p) != (other.m, other.n, other.p) {
            return Err(Error::Shape(format!(
                "{}x{}x{} vs {}x{}x{}",
                self.m, self.n, self.p, other.m, other.n, other.p
            )));
        }
        if self.domain != other.domain {
            return Err(Error::Domain {
                expected: self.domain,
                got: other.domain,
            });
        }
        Ok(())
    }

    pub fn sub(&self, other: &Tensor3) -> Result<Tensor3> {
        self.same_shape(other)?;
        Ok(Tensor3 {
            m: self.m,
            n: self.n,
            p: self.p,
            domain: self.domain,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Tensor3 {
        Tensor3 {
            m: self.m,
            n: self.n,
            p: self.p,
            domain: self.domain,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize, usize)> for Tensor3 {
    type Output = Complex64;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Complex64 {
        &self.data[k * self.m * self.n + i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Complex64 {
        &mut self.data[k * self.m * self.n + i * self.n + j]
    }
}

fn transform_tubes(t: &Tensor3, forward: bool) -> Tensor3 {
    let (m, n, p) = (t.m, t.n, t.p);
    let mut planner = FftPlanner::<f64>::new();
    // Paper-forward uses ω^+ exponents: that is the unscaled inverse FFT.
    let fft = if forward {
        planner.plan_fft_inverse(p)
    } else {
        planner.plan_fft_forward(p)
    };
    let mut out = t.data.clone();
    let mut buf = vec![Complex64::new(0.0, 0.0); p];
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mn = m * n;
    for tube in 0..mn {
        for k in 0..p {
            buf[k] = out[k * mn + tube];
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for k in 0..p {
            out[k * mn + tube] = buf[k];
        }
    }
    if !forward {
        let inv_p = 1.0 / p as f64;
        for z in &mut out {
            *z *= inv_p;
        }
    }
    Tensor3 {
        m,
        n,
        p,
        domain: if forward { Domain::Fourier } else { Domain::Spatial },
        data: out,
    }
}

/// Mode-3 DFT: slice i of the result is `Σ_j ω^((i-1)(j-1)) A^(j)`.
pub fn dft3(t: &Tensor3) -> Result<Tensor3> {
    t.require_domain(Domain::Spatial)?;
    Ok(transform_tubes(t, true))
}

/// Inverse mode-3 DFT: slice j of the result is
/// `(1/p) Σ_i ω^(-(i-1)(j-1)) Â^(i)`.
pub fn idft3(t: &Tensor3) -> Result<Tensor3> {
    t.require_domain(Domain::Fourier)?;
    Ok(transform_tubes(t, false))
}

/// T-product. Fourier inputs multiply slice-wise; spatial inputs are
/// transformed, multiplied, and transformed back. The output domain tag
/// matches the inputs.
pub fn tprod(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    if a.n != b.m {
        return Err(Error::Shape(format!(
            "tprod inner dimensions: {} vs {}",
            a.n, b.m
        )));
    }
    if a.p != b.p {
        return Err(Error::Shape(format!(
            "tprod slice counts: {} vs {}",
            a.p, b.p
        )));
    }
    if a.domain != b.domain {
        return Err(Error::Domain {
            expected: a.domain,
            got: b.domain,
        });
    }
    match a.domain {
        Domain::Fourier => {
            let slices: Vec<Matrix> = (0..a.p)
                .into_par_iter()
                .map(|k| a.slice(k).matmul(&b.slice(k)))
                .collect();
            Tensor3::from_slices(&slices, Domain::Fourier)
        }
        Domain::Spatial => {
            let fa = dft3(a)?;
            let fb = dft3(b)?;
            idft3(&tprod(&fa, &fb)?)
        }
    }
}

/// T-conjugate transpose. In the spatial domain, slice 1 maps to its
/// conjugate transpose and slice k >= 2 to the conjugate transpose of slice
/// p-k+2; in the Fourier domain the operation is slice-wise. The two agree
/// through the DFT (`bcirc(A^H) = bcirc(A)^H`).
pub fn t_conj_transpose(a: &Tensor3) -> Tensor3 {
    let p = a.p;
    let slices: Vec<Matrix> = match a.domain {
        Domain::Spatial => (0..p)
            .map(|k| {
                let src = if k == 0 { 0 } else { p - k };
                a.slice(src).conj_transpose()
            })
            .collect(),
        Domain::Fourier => (0..p).map(|k| a.slice(k).conj_transpose()).collect(),
    };
    Tensor3::from_slices(&slices, a.domain).expect("slices share dimensions")
}

/// Inner product `Σ conj(a_ijk) b_ijk`, accumulated in storage order.
pub fn inner(a: &Tensor3, b: &Tensor3) -> Result<Complex64> {
    a.same_shape(b)?;
    Ok(a.data
        .iter()
        .zip(&b.data)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y))
}

/// Frobenius norm, accumulated in storage order.
pub fn frobenius(a: &Tensor3) -> f64 {
    a.data
        .iter()
        .fold(0.0, |acc, z| acc + z.norm_sqr())
        .sqrt()
}

/// Block-circulant matricization (mp x np). Brute-force oracle; block (r, c)
/// of the p x p block grid is the spatial slice with index (r - c) mod p.
pub fn bcirc(a: &Tensor3) -> Result<Matrix> {
    a.require_domain(Domain::Spatial)?;
    let (m, n, p) = (a.m, a.n, a.p);
    let mut out = Matrix::zeros(m * p, n * p);
    for br in 0..p {
        for bc in 0..p {
            let k = (br + p - bc) % p;
            for i in 0..m {
                for j in 0..n {
                    out[(br * m + i, bc * n + j)] = a[(i, j, k)];
                }
            }
        }
    }
    Ok(out)
}

/// Tensor trace `tr(bcirc(A))`: p times the trace of the first spatial
/// slice, or equivalently the sum of Fourier slice traces.
pub fn t_trace(a: &Tensor3) -> Result<Complex64> {
    if a.m != a.n {
        return Err(Error::NonSquare {
            rows: a.m,
            cols: a.n,
        });
    }
    let slice_trace = |k: usize| {
        (0..a.n).fold(Complex64::new(0.0, 0.0), |acc, i| acc + a[(i, i, k)])
    };
    Ok(match a.domain {
        Domain::Spatial => slice_trace(0) * a.p as f64,
        Domain::Fourier => (0..a.p).fold(Complex64::new(0.0, 0.0), |acc, k| acc + slice_trace(k)),
    })
}

/// Real-recovery residual of a Fourier tensor: the maximum over i of
/// `‖F̂^(p-i+2) - conj(F̂^(i))‖_F` (index read cyclically, so i = 1 pairs
/// with itself). Zero exactly when the inverse DFT is real.
pub fn conjugate_symmetry_residual(f: &Tensor3) -> Result<f64> {
    f.require_domain(Domain::Fourier)?;
    let p = f.p;
    let mut worst: f64 = 0.0;
    for i in 0..p {
        let partner = (p - i) % p;
        let diff = f.slice(partner).sub(&f.slice(i).conj()).frobenius();
        worst = worst.max(diff);
    }
    Ok(worst)
}
