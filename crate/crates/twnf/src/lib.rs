//! T-product tensor algebra for Hamiltonian and symplectic structured
//! third-order tensors.
//!
//! The T-product multiplies m x n x p tensors so that
//! `bcirc(A * B) = bcirc(A) bcirc(B)`; after a DFT along the third mode it
//! reduces to independent matrix products on the frontal slices. On top of
//! that algebra this crate provides:
//!
//! - T-Hamiltonian tensors ((J*H)^H = J*H) with their block form and the
//!   λ -> -conj(λ) spectral symmetry,
//! - T-symplectic tensors (S^H*J*S = J) with the closed-form inverse and
//!   the exponential map from T-Hamiltonian generators,
//! - a constructive T-Williamson normal form `M = S^H * D * S` for tensors
//!   whose Fourier slices are real symmetric positive-definite, with
//!   real-valued factor recovery under Fourier conjugate symmetry and a
//!   feasibility check showing why complex Hermitian slices are excluded,
//! - a Gaussian-state demonstration (decohering two-mode squeezed vacuum)
//!   driven by slice-wise symplectic eigenvalues,
//! - a validation harness (consistency residuals, spectral-symmetry
//!   datasets, runtime sweeps) and a CLI with a JSON tensor codec.

pub mod cli;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod quantum;
pub mod structured;
pub mod tensor;
pub mod williamson;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use tensor::{Domain, Tensor3};
