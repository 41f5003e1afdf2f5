//! Shared helpers for the integration suites: random tensor generators and
//! independent brute-force oracles (direct DFT sums, block-circulant
//! multiplication). The oracles never call the implementation paths they
//! are used to check.

// Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use twnf::matrix::Matrix;
use twnf::tensor::{bcirc, Domain, Tensor3};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_tensor(rng: &mut impl Rng, m: usize, n: usize, p: usize) -> Tensor3 {
    let mut t = Tensor3::zeros(m, n, p, Domain::Spatial);
    for k in 0..p {
        for i in 0..m {
            for j in 0..n {
                t[(i, j, k)] = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
            }
        }
    }
    t
}

pub fn random_real_tensor(rng: &mut impl Rng, m: usize, n: usize, p: usize) -> Tensor3 {
    let mut t = Tensor3::zeros(m, n, p, Domain::Spatial);
    for k in 0..p {
        for i in 0..m {
            for j in 0..n {
                t[(i, j, k)] = c(rng.sample(StandardNormal), 0.0);
            }
        }
    }
    t
}

pub fn random_real_spd(rng: &mut impl Rng, dim: usize) -> Matrix {
    let g = Matrix::from_fn(dim, dim, |_, _| c(rng.sample(StandardNormal), 0.0));
    g.matmul_conj_transpose(&g)
        .add(&Matrix::identity(dim).scale(c(0.2, 0.0)))
        .real_part()
}

/// Direct O(p²) evaluation of the forward transform sums.
pub fn dft3_direct(t: &Tensor3) -> Tensor3 {
    let (m, n, p) = (t.rows(), t.cols(), t.slices());
    let mut out = Tensor3::zeros(m, n, p, Domain::Fourier);
    let omega = 2.0 * std::f64::consts::PI / p as f64;
    for i in 0..p {
        for j in 0..p {
            let w = Complex64::from_polar(1.0, omega * (i as f64) * (j as f64));
            for r in 0..m {
                for s in 0..n {
                    let add = w * t[(r, s, j)];
                    out[(r, s, i)] += add;
                }
            }
        }
    }
    out
}

/// Direct O(p²) evaluation of the inverse transform sums.
pub fn idft3_direct(t: &Tensor3) -> Tensor3 {
    let (m, n, p) = (t.rows(), t.cols(), t.slices());
    let mut out = Tensor3::zeros(m, n, p, Domain::Spatial);
    let omega = 2.0 * std::f64::consts::PI / p as f64;
    for j in 0..p {
        for i in 0..p {
            let w = Complex64::from_polar(1.0, -omega * (i as f64) * (j as f64));
            for r in 0..m {
                for s in 0..n {
                    let add = w * t[(r, s, i)] / p as f64;
                    out[(r, s, j)] += add;
                }
            }
        }
    }
    out
}

/// T-product oracle: multiply the block circulants and refold the first
/// block column.
pub fn tprod_bcirc_oracle(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    let big = bcirc(a).unwrap().matmul(&bcirc(b).unwrap());
    let (m, n, p) = (a.rows(), b.cols(), a.slices());
    let mut out = Tensor3::zeros(m, n, p, Domain::Spatial);
    for k in 0..p {
        for i in 0..m {
            for j in 0..n {
                out[(i, j, k)] = big[(k * m + i, j)];
            }
        }
    }
    out
}

pub fn max_elementwise(a: &Tensor3, b: &Tensor3) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
