//! Dense complex matrix kernels backing the slice-wise tensor algorithms:
//! eigenvalues, Hermitian eigendecomposition, SPD square roots, the matrix
//! exponential, the skew-symmetric canonical form, and definiteness tests.
//!
//! Eigen-decompositions and linear solves call LAPACK (zheev/zgeev/zgesv)
//! through LAPACKE; products go through CBLAS zgemm. Everything else is
//! built on top of those primitives.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for structural checks (Hermitian/symmetric/skew deviations).
pub const STRUCTURE_TOL: f64 = 1e-10;
/// Relative floor for positive-definiteness and singularity tests.
pub const PD_TOL: f64 = 1e-12;
/// Tolerance on imaginary parts when a real matrix is required.
pub const REAL_TOL: f64 = 1e-12;

mod lapack {
    use super::*;

    const LAPACK_ROW_MAJOR: i32 = 101;
    const CBLAS_ROW_MAJOR: i32 = 101;
    const CBLAS_NO_TRANS: i32 = 111;
    const CBLAS_CONJ_TRANS: i32 = 113;

    #[link(name = "lapacke")]
    #[link(name = "openblas")]
    extern "C" {
        fn LAPACKE_zheev(
            layout: i32,
            jobz: u8,
            uplo: u8,
            n: i32,
            a: *mut Complex64,
            lda: i32,
            w: *mut f64,
        ) -> i32;
        fn LAPACKE_zgeev(
            layout: i32,
            jobvl: u8,
            jobvr: u8,
            n: i32,
            a: *mut Complex64,
            lda: i32,
            w: *mut Complex64,
            vl: *mut Complex64,
            ldvl: i32,
            vr: *mut Complex64,
            ldvr: i32,
        ) -> i32;
        fn LAPACKE_zgesv(
            layout: i32,
            n: i32,
            nrhs: i32,
            a: *mut Complex64,
            lda: i32,
            ipiv: *mut i32,
            b: *mut Complex64,
            ldb: i32,
        ) -> i32;
        fn cblas_zgemm(
            layout: i32,
            transa: i32,
            transb: i32,
            m: i32,
            n: i32,
            k: i32,
            alpha: *const Complex64,
            a: *const Complex64,
            lda: i32,
            b: *const Complex64,
            ldb: i32,
            beta: *const Complex64,
            c: *mut Complex64,
            ldc: i32,
        );
        fn openblas_set_num_threads(n: i32);
    }

    pub fn set_num_threads(n: usize) {
        unsafe { openblas_set_num_threads(n.max(1) as i32) };
    }

    /// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
    /// On return `a` holds the eigenvectors as columns (row-major layout).
    pub fn zheev(a: &mut [Complex64], n: usize, w: &mut [f64]) -> Result<()> {
        let info = unsafe {
            LAPACKE_zheev(
                LAPACK_ROW_MAJOR,
                b'V',
                b'L',
                n as i32,
                a.as_mut_ptr(),
                n as i32,
                w.as_mut_ptr(),
            )
        };
        if info != 0 {
            return Err(Error::Lapack {
                routine: "zheev",
                info,
            });
        }
        Ok(())
    }

    /// Eigenvalues of a general complex matrix. Destroys `a`.
    pub fn zgeev_values(a: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        // This LAPACKE build insists on ldvl/ldvr >= n even with jobvl = 'N'.
        let mut dummy = vec![Complex64::new(0.0, 0.0); n * n];
        let info = unsafe {
            LAPACKE_zgeev(
                LAPACK_ROW_MAJOR,
                b'N',
                b'N',
                n as i32,
                a.as_mut_ptr(),
                n as i32,
                w.as_mut_ptr(),
                dummy.as_mut_ptr(),
                n as i32,
                dummy.as_mut_ptr(),
                n as i32,
            )
        };
        if info != 0 {
            return Err(Error::Lapack {
                routine: "zgeev",
                info,
            });
        }
        Ok(w)
    }

    /// Solves `a x = b` in place; `b` is overwritten with the solution.
    pub fn zgesv(a: &mut [Complex64], b: &mut [Complex64], n: usize, nrhs: usize) -> Result<()> {
        let mut ipiv = vec![0i32; n];
        let info = unsafe {
            LAPACKE_zgesv(
                LAPACK_ROW_MAJOR,
                n as i32,
                nrhs as i32,
                a.as_mut_ptr(),
                n as i32,
                ipiv.as_mut_ptr(),
                b.as_mut_ptr(),
                nrhs as i32,
            )
        };
        if info != 0 {
            return Err(Error::Lapack {
                routine: "zgesv",
                info,
            });
        }
        Ok(())
    }

    /// `c = a * op(b)` with `op` either identity or conjugate transpose.
    pub fn zgemm(
        a: &[Complex64],
        b: &[Complex64],
        c: &mut [Complex64],
        m: usize,
        k: usize,
        n: usize,
        conj_transpose_b: bool,
    ) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (transb, ldb) = if conj_transpose_b {
            (CBLAS_CONJ_TRANS, k as i32)
        } else {
            (CBLAS_NO_TRANS, n as i32)
        };
        unsafe {
            cblas_zgemm(
                CBLAS_ROW_MAJOR,
                CBLAS_NO_TRANS,
                transb,
                m as i32,
                n as i32,
                k as i32,
                &one,
                a.as_ptr(),
                k as i32,
                b.as_ptr(),
                ldb,
                &zero,
                c.as_mut_ptr(),
                n as i32,
            );
        }
    }
}

/// Caps the number of threads BLAS may use internally. Slice-level
/// parallelism is handled by the caller; one BLAS thread keeps timings
/// stable and results reproducible.
pub fn set_blas_threads(n: usize) {
    lapack::set_num_threads(n);
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from real entries laid out in row-major order.
    pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        lapack::zgemm(
            &self.data,
            &rhs.data,
            &mut out.data,
            self.rows,
            self.cols,
            rhs.cols,
            false,
        );
        out
    }

    /// `self * rhs^H` without materializing the conjugate transpose.
    pub fn matmul_conj_transpose(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "matmul_conj_transpose dimensions");
        let mut out = Matrix::zeros(self.rows, rhs.rows);
        lapack::zgemm(
            &self.data,
            &rhs.data,
            &mut out.data,
            self.rows,
            self.cols,
            rhs.rows,
            true,
        );
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum column sum of absolute values.
    pub fn one_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.sub(&self.conj_transpose()).frobenius()
    }

    pub fn symmetric_deviation(&self) -> f64 {
        self.sub(&self.transpose()).frobenius()
    }

    pub fn skew_deviation(&self) -> f64 {
        self.add(&self.transpose()).frobenius()
    }

    /// The exactly-real part, `Im` discarded.
    pub fn real_part(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Hermitian eigendecomposition `a = U diag(values) U^H`.
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: Matrix,
}

/// Eigenvalues (with multiplicity, unordered) of a general square matrix.
pub fn eig_general(a: &Matrix) -> Result<Vec<Complex64>> {
    let n = a.require_square()?;
    let mut work = a.data.clone();
    lapack::zgeev_values(&mut work, n)
}

/// Eigendecomposition of a Hermitian matrix. The input is required to be
/// Hermitian to within `STRUCTURE_TOL` relative and is symmetrized as
/// `(a + a^H)/2` before factoring.
pub fn eig_hermitian(a: &Matrix) -> Result<HermitianEigen> {
    let n = a.require_square()?;
    let dev = a.hermitian_deviation();
    if dev > STRUCTURE_TOL * a.frobenius() {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let sym = a.add(&a.conj_transpose()).scale(Complex64::new(0.5, 0.0));
    let mut work = sym.data;
    let mut values = vec![0.0; n];
    lapack::zheev(&mut work, n, &mut values)?;
    Ok(HermitianEigen {
        values,
        vectors: Matrix::from_data(n, n, work),
    })
}

fn hpd_eigen(a: &Matrix) -> Result<HermitianEigen> {
    let eig = eig_hermitian(a)?;
    let floor = PD_TOL * a.frobenius();
    let min = eig.values[0];
    if min <= floor {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    Ok(eig)
}

/// `U diag(f(values)) U^H` for a Hermitian eigendecomposition.
fn hermitian_function(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> Matrix {
    let n = eig.values.len();
    let mut scaled = eig.vectors.clone();
    for j in 0..n {
        let factor = f(eig.values[j]);
        for i in 0..n {
            scaled[(i, j)] *= factor;
        }
    }
    scaled.matmul_conj_transpose(&eig.vectors)
}

/// Principal square root of a Hermitian positive-definite matrix.
pub fn sqrtm_spd(a: &Matrix) -> Result<Matrix> {
    Ok(hermitian_function(&hpd_eigen(a)?, f64::sqrt))
}

/// Inverse principal square root of a Hermitian positive-definite matrix.
pub fn invsqrtm_spd(a: &Matrix) -> Result<Matrix> {
    Ok(hermitian_function(&hpd_eigen(a)?, |x| 1.0 / x.sqrt()))
}

/// Solves `a x = b` for square `a`.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.require_square()?;
    if b.rows() != n {
        return Err(Error::Shape(format!(
            "solve: a is {n}x{n} but b has {} rows",
            b.rows()
        )));
    }
    let mut lu = a.data.clone();
    let mut x = b.data.clone();
    lapack::zgesv(&mut lu, &mut x, n, b.cols())?;
    Ok(Matrix::from_data(n, b.cols(), x))
}

// Padé(13) numerator/denominator coefficients for the matrix exponential
// (Higham, "The Scaling and Squaring Method Revisited", 2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const PADE13_THETA: f64 = 5.371920351148152;

/// Matrix exponential via scaling-and-squaring with a Padé(13) approximant.
pub fn expm(a: &Matrix) -> Result<Matrix> {
    let n = a.require_square()?;
    let norm = a.one_norm();
    let s = if norm > PADE13_THETA {
        (norm / PADE13_THETA).log2().ceil() as u32
    } else {
        0
    };
    let x = a.scale(Complex64::new(1.0 / 2f64.powi(s as i32), 0.0));

    let eye = Matrix::identity(n);
    let x2 = x.matmul(&x);
    let x4 = x2.matmul(&x2);
    let x6 = x2.matmul(&x4);

    let c = |k: usize| Complex64::new(PADE13[k], 0.0);
    let u_inner = x6
        .matmul(&x6.scale(c(13)).add(&x4.scale(c(11))).add(&x2.scale(c(9))))
        .add(&x6.scale(c(7)))
        .add(&x4.scale(c(5)))
        .add(&x2.scale(c(3)))
        .add(&eye.scale(c(1)));
    let u = x.matmul(&u_inner);
    let v = x6
        .matmul(&x6.scale(c(12)).add(&x4.scale(c(10))).add(&x2.scale(c(8))))
        .add(&x6.scale(c(6)))
        .add(&x4.scale(c(4)))
        .add(&x2.scale(c(2)))
        .add(&eye.scale(c(0)));

    // (V - U) F = (V + U)
    let mut f = solve(&v.sub(&u), &v.add(&u))?;
    for _ in 0..s {
        f = f.matmul(&f);
    }
    Ok(f)
}

/// Real orthogonal reduction of a nonsingular real skew-symmetric matrix:
/// `k = O Σ O^T` with `Σ` block-diagonal in 2x2 blocks `[[0, σ_j], [-σ_j, 0]]`
/// and `σ` positive, sorted descending. Columns of `O` come in (q_j, p_j)
/// plane pairs matching the block order.
pub struct SkewCanonicalForm {
    pub o: Matrix,
    pub sigma: Vec<f64>,
}

/// Canonical form of a real skew-symmetric nonsingular matrix, computed from
/// the Hermitian eigendecomposition of `i*k` by pairing conjugate
/// eigenvectors into real planes.
pub fn skew_canonical(k: &Matrix) -> Result<SkewCanonicalForm> {
    let dim = k.require_square()?;
    if !dim.is_multiple_of(2) {
        return Err(Error::OddLeadingDim { dim });
    }
    let norm = k.frobenius();
    let max_imag = k.max_abs_imag();
    if max_imag > REAL_TOL * norm.max(1.0) {
        return Err(Error::NotReal { max_imag });
    }
    let dev = k.skew_deviation();
    if dev > STRUCTURE_TOL * norm {
        return Err(Error::NotSkewSymmetric { deviation: dev });
    }

    // Exact skew projection of the real part, then A = i*K is Hermitian.
    let ks = k
        .real_part()
        .sub(&k.real_part().transpose())
        .scale(Complex64::new(0.5, 0.0));
    let a = ks.scale(Complex64::new(0.0, 1.0));
    let eig = eig_hermitian(&a)?;

    let min_magnitude = eig.values.iter().map(|v| v.abs()).fold(f64::MAX, f64::min);
    if min_magnitude <= PD_TOL * norm {
        return Err(Error::Singular { min_magnitude });
    }
    let n = dim / 2;
    let positive = eig.values.iter().filter(|&&v| v > 0.0).count();
    if positive != n {
        return Err(Error::Singular { min_magnitude });
    }

    // Eigenvalues ascend; positives occupy indices n..2n. For eigenvalue
    // +σ with unit eigenvector u = x + iy of i*K, the real pair
    // (q, p) = (√2 y, √2 x) satisfies K q = -σ p and K p = σ q.
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut o = Matrix::zeros(dim, dim);
    let mut sigma = Vec::with_capacity(n);
    for plane in 0..n {
        let idx = dim - 1 - plane; // descending σ
        sigma.push(eig.values[idx]);
        let u = eig.vectors.column(idx);
        for i in 0..dim {
            o[(i, 2 * plane)] = Complex64::new(sqrt2 * u[i].im, 0.0);
            o[(i, 2 * plane + 1)] = Complex64::new(sqrt2 * u[i].re, 0.0);
        }
    }
    Ok(SkewCanonicalForm { o, sigma })
}

/// Definiteness report: Hermitian deviation and the smallest eigenvalue of
/// the Hermitian part `(a + a^H)/2`.
#[derive(Debug, Clone)]
pub struct HpdReport {
    pub hermitian: bool,
    pub hermitian_deviation: f64,
    pub min_eigenvalue: f64,
    pub hpd: bool,
}

impl HpdReport {
    pub fn reason(&self) -> Option<String> {
        if self.hpd {
            None
        } else if !self.hermitian {
            Some(format!(
                "not Hermitian (deviation {:.3e})",
                self.hermitian_deviation
            ))
        } else {
            Some(format!(
                "not positive definite (smallest eigenvalue {:.3e})",
                self.min_eigenvalue
            ))
        }
    }
}

/// Tests whether `a` is Hermitian positive-definite; never fails on
/// indefinite input, only on a non-square matrix.
pub fn is_hpd(a: &Matrix) -> Result<HpdReport> {
    let n = a.require_square()?;
    let norm = a.frobenius();
    let dev = a.hermitian_deviation();
    let hermitian = dev <= STRUCTURE_TOL * norm.max(f64::MIN_POSITIVE);
    let sym = a.add(&a.conj_transpose()).scale(Complex64::new(0.5, 0.0));
    let mut work = sym.data;
    let mut values = vec![0.0; n];
    lapack::zheev(&mut work, n, &mut values)?;
    let min_eigenvalue = values[0];
    Ok(HpdReport {
        hermitian,
        hermitian_deviation: dev,
        min_eigenvalue,
        hpd: hermitian && min_eigenvalue > PD_TOL * norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_complex(rng: &mut impl rand::Rng, rows: usize, cols: usize) -> Matrix {
        use rand_distr::StandardNormal;
        Matrix::from_fn(rows, cols, |_, _| {
            c(rng.sample(StandardNormal), rng.sample(StandardNormal))
        })
    }

    fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    fn assert_close(actual: &Matrix, expected: &Matrix, tol: f64) {
        let scale = expected.frobenius().max(1.0);
        let diff = actual.sub(expected).frobenius();
        assert!(
            diff <= tol * scale,
            "matrices differ: {diff:.3e} > {tol:.3e} * {scale:.3e}"
        );
    }

    #[test]
    fn eig_general_rotation_like() {
        let a = Matrix::from_real_rows(2, 2, &[0.0, 1.0, -4.0, 0.0]);
        let mut vals = eig_general(&a).unwrap();
        vals.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert!((vals[0] - c(0.0, -2.0)).norm() < 1e-12);
        assert!((vals[1] - c(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn eig_general_identity() {
        let vals = eig_general(&Matrix::identity(4)).unwrap();
        for v in vals {
            assert!((v - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn eig_general_obstruction_counterexample() {
        // eigenvalues of M0^{-1} J for M0 = [[2, i], [-i, 2]]
        let m0 = Matrix::from_data(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let j = Matrix::from_real_rows(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let w = solve(&m0, &j).unwrap();
        let mut vals = eig_general(&w).unwrap();
        vals.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert!((vals[0] - c(0.0, -1.0 / 3.0)).norm() < 1e-12);
        assert!((vals[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn eig_general_rejects_non_square() {
        assert!(matches!(
            eig_general(&Matrix::zeros(2, 3)),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn eig_hermitian_diagonal() {
        let a = Matrix::from_real_rows(2, 2, &[3.0, 0.0, 0.0, 1.0]);
        let eig = eig_hermitian(&a).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eig_hermitian_pauli_x() {
        let a = Matrix::from_real_rows(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let eig = eig_hermitian(&a).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_hermitian_reconstructs() {
        let mut rng = seeded(7);
        let g = random_complex(&mut rng, 6, 6);
        let a = g.add(&g.conj_transpose()).scale(c(0.5, 0.0));
        let eig = eig_hermitian(&a).unwrap();
        let recon = hermitian_function(&eig, |x| x);
        assert_close(&recon, &a, 1e-10);
        // U unitary
        let uu = eig.vectors.conj_transpose().matmul(&eig.vectors);
        assert_close(&uu, &Matrix::identity(6), 1e-12);
    }

    #[test]
    fn eig_hermitian_rejects_non_hermitian() {
        let a = Matrix::from_real_rows(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(matches!(
            eig_hermitian(&a),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn sqrtm_identity_and_diagonal() {
        assert_close(
            &sqrtm_spd(&Matrix::identity(3)).unwrap(),
            &Matrix::identity(3),
            1e-14,
        );
        let a = Matrix::from_real_rows(2, 2, &[4.0, 0.0, 0.0, 9.0]);
        let expected = Matrix::from_real_rows(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert_close(&sqrtm_spd(&a).unwrap(), &expected, 1e-14);
    }

    #[test]
    fn sqrtm_random_spd_squares_back() {
        let mut rng = seeded(11);
        let g = random_complex(&mut rng, 5, 5);
        let a = g
            .matmul_conj_transpose(&g)
            .add(&Matrix::identity(5).scale(c(0.5, 0.0)));
        let x = sqrtm_spd(&a).unwrap();
        assert_close(&x.matmul(&x), &a, 1e-10);
        let y = invsqrtm_spd(&a).unwrap();
        assert_close(&y.matmul(&x), &Matrix::identity(5), 1e-10);
    }

    #[test]
    fn sqrtm_rejects_indefinite() {
        let a = Matrix::from_real_rows(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        match sqrtm_spd(&a) {
            Err(Error::NotPositiveDefinite { min_eigenvalue }) => {
                assert!((min_eigenvalue + 1.0).abs() < 1e-12)
            }
            other => panic!("expected definiteness error, got {other:?}"),
        }
    }

    #[test]
    fn expm_zero_is_identity() {
        let z = Matrix::zeros(3, 3);
        assert_close(&expm(&z).unwrap(), &Matrix::identity(3), 1e-14);
    }

    #[test]
    fn expm_rotation_generator() {
        let theta = 0.7;
        let a = Matrix::from_real_rows(2, 2, &[0.0, theta, -theta, 0.0]);
        let expected = Matrix::from_real_rows(
            2,
            2,
            &[theta.cos(), theta.sin(), -theta.sin(), theta.cos()],
        );
        assert_close(&expm(&a).unwrap(), &expected, 1e-14);
    }

    /// Scaled Taylor-series oracle, independent of the Padé path.
    fn expm_taylor_oracle(a: &Matrix, terms: usize) -> Matrix {
        let n = a.rows();
        let norm = a.one_norm();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let x = a.scale(c(1.0 / 2f64.powi(s as i32), 0.0));
        let mut sum = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..=terms {
            term = term.matmul(&x).scale(c(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }
        for _ in 0..s {
            sum = sum.matmul(&sum);
        }
        sum
    }

    #[test]
    fn expm_matches_taylor_oracle() {
        let mut rng = seeded(23);
        for _ in 0..10 {
            let g = random_complex(&mut rng, 4, 4);
            let a = g.scale(c(2.0 / g.one_norm().max(1.0), 0.0));
            let fast = expm(&a).unwrap();
            let oracle = expm_taylor_oracle(&a, 60);
            let rel = fast.sub(&oracle).frobenius() / oracle.frobenius();
            assert!(rel <= 1e-10, "expm relative error {rel:.3e}");
        }
    }

    fn assert_skew_reconstruction(k: &Matrix, form: &SkewCanonicalForm, tol: f64) {
        let dim = k.rows();
        let n = dim / 2;
        let mut sig = Matrix::zeros(dim, dim);
        for j in 0..n {
            sig[(2 * j, 2 * j + 1)] = c(form.sigma[j], 0.0);
            sig[(2 * j + 1, 2 * j)] = c(-form.sigma[j], 0.0);
        }
        let recon = form.o.matmul(&sig).matmul(&form.o.transpose());
        let scale = k.frobenius();
        assert!(recon.sub(k).frobenius() <= tol * scale);
        let ortho = form.o.transpose().matmul(&form.o);
        assert_close(&ortho, &Matrix::identity(dim), 1e-10);
    }

    #[test]
    fn skew_canonical_simple_plane() {
        let k = Matrix::from_real_rows(2, 2, &[0.0, 2.0, -2.0, 0.0]);
        let form = skew_canonical(&k).unwrap();
        assert_eq!(form.sigma.len(), 1);
        assert!((form.sigma[0] - 2.0).abs() < 1e-12);
        assert_skew_reconstruction(&k, &form, 1e-12);
    }

    #[test]
    fn skew_canonical_block_diag_sorted() {
        let k = Matrix::from_real_rows(
            4,
            4,
            &[
                0.0, 1.0, 0.0, 0.0, //
                -1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 3.0, //
                0.0, 0.0, -3.0, 0.0,
            ],
        );
        let form = skew_canonical(&k).unwrap();
        assert!((form.sigma[0] - 3.0).abs() < 1e-12);
        assert!((form.sigma[1] - 1.0).abs() < 1e-12);
        assert_skew_reconstruction(&k, &form, 1e-12);
    }

    #[test]
    fn skew_canonical_random_matches_eigenvalue_oracle() {
        let mut rng = seeded(31);
        let g = random_complex(&mut rng, 4, 4).real_part();
        let k = g.sub(&g.transpose());
        let form = skew_canonical(&k).unwrap();
        assert_skew_reconstruction(&k, &form, 1e-10);
        // σ must equal the moduli of the (imaginary) eigenvalues of K, paired.
        let mut imags: Vec<f64> = eig_general(&k)
            .unwrap()
            .iter()
            .map(|v| v.im.abs())
            .collect();
        imags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (j, sigma) in form.sigma.iter().enumerate() {
            assert!((sigma - imags[2 * j]).abs() < 1e-10);
        }
    }

    #[test]
    fn skew_canonical_rejects_bad_inputs() {
        let not_skew = Matrix::from_real_rows(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(matches!(
            skew_canonical(&not_skew),
            Err(Error::NotSkewSymmetric { .. })
        ));
        let singular = Matrix::zeros(2, 2);
        assert!(skew_canonical(&singular).is_err());
    }

    #[test]
    fn is_hpd_cases() {
        assert!(is_hpd(&Matrix::identity(3)).unwrap().hpd);
        let m0 = Matrix::from_data(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let report = is_hpd(&m0).unwrap();
        assert!(report.hpd);
        assert!((report.min_eigenvalue - 1.0).abs() < 1e-12);
        let indef = Matrix::from_real_rows(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let report = is_hpd(&indef).unwrap();
        assert!(!report.hpd);
        assert!(report.reason().is_some());
    }

    #[test]
    fn kernel_reconstruction_sweep() {
        // Reconstruction residuals across sizes, many random instances each.
        let mut rng = seeded(101);
        for &size in &[2usize, 4, 6, 8] {
            for _ in 0..50 {
                let g = random_complex(&mut rng, size, size);
                let herm = g.add(&g.conj_transpose()).scale(c(0.5, 0.0));
                let eig = eig_hermitian(&herm).unwrap();
                assert_close(&hermitian_function(&eig, |x| x), &herm, 1e-10);

                let spd = g
                    .matmul_conj_transpose(&g)
                    .add(&Matrix::identity(size).scale(c(0.1, 0.0)));
                let x = sqrtm_spd(&spd).unwrap();
                assert_close(&x.matmul(&x), &spd, 1e-10);

                let scaled = g.scale(c(1.5 / g.one_norm().max(1.0), 0.0));
                let f = expm(&scaled).unwrap();
                let oracle = expm_taylor_oracle(&scaled, 60);
                assert!(f.sub(&oracle).frobenius() / oracle.frobenius() <= 1e-10);

                let real = random_complex(&mut rng, size, size).real_part();
                let k = real.sub(&real.transpose());
                if let Ok(form) = skew_canonical(&k) {
                    assert_skew_reconstruction(&k, &form, 1e-10);
                }
            }
        }
    }
}
