//! White noise operator calculus at finite mode count.
//!
//! Two representations of the same operator algebra live side by side:
//!
//! * [`wick`]: exact normal-ordered symbolic operators `Ξ_{l,m}(κ)` with
//!   block-symmetrized kernels, closed under Wick products and brackets.
//! * [`fock`]: dense matrices on the occupation-number truncated bosonic
//!   Fock space, used as a brute-force oracle for every symbolic claim.
//!
//! [`qwn`] adds creation/annihilation derivatives, [`liealg`] computes
//! bracket closures and their structure, and [`rotgrp`] handles
//! second-quantized rotation flows.

pub mod error;
pub mod fock;
pub mod liealg;
pub mod linalg;
pub mod modespace;
pub mod qwn;
pub mod rotgrp;
pub mod tensor;
pub mod wick;

pub use error::{Error, Result};
pub use fock::{CoeffSequence, FockConfig, FockMatrix, FockSpace, FockVector};
pub use modespace::{KernelMatrix, ModeConfig, ModeVector};
pub use tensor::KernelTensor;
pub use wick::{Signature, SymbolicOperator};

pub use num_complex::Complex64 as C64;
