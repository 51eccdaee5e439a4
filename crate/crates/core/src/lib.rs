//! Exact algebra for finite-dimensional quantum groups.
//!
//! Everything is computed over the rationals with no rounding: structure
//! tensors, integrals, modular pairs, Yetter-Drinfeld module checks, and the
//! equivariant differential forms together with their duality maps.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod corpus;
pub mod dsl;
pub mod duality;
pub mod forms;
pub mod halg;
pub mod hopf;
pub mod linalg;
pub mod modular;
pub mod scalar;
pub mod tensor;
pub mod xcomplex;
pub mod yd;

pub use hopf::{FiniteQuantumGroup, HopfError, ValidationReport, Vector};
pub use halg::ModuleAlgebra;
pub use linalg::{solve_linear, LinAlgError, Matrix, SparseMatrix, SparseVec};
pub use scalar::Scalar;
pub use tensor::{SparseTensor, TensorError};

impl core::error::Error for dsl::DslError {}
impl core::error::Error for halg::HAlgebraError {}
impl core::error::Error for HopfError {}
impl core::error::Error for LinAlgError {}
impl core::error::Error for modular::PairError {}
impl core::error::Error for scalar::ParseScalarError {}
impl core::error::Error for TensorError {}
