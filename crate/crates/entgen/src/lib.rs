//! Entanglement generation for two qubits in a common Gaussian
//! environment.
//!
//! The core question: given the environment's coefficient data, can *any*
//! initial product state of two qubits become entangled at short times?
//! The answer is decided by a witness criterion — minimize a quadratic
//! form over witness vectors built from product bases; a negative minimum
//! means some product state entangles — and independently certified by a
//! brute-force oracle that evolves sampled product states exactly and
//! partial-transposes the result.
//!
//! Two regimes with different time scales:
//! - **memoryless** (semigroup) evolution: state change linear in `t`,
//!   driven by coefficient blocks `K` plus Hamiltonian couplings `h`;
//! - **finite-memory Gaussian** evolution: change quadratic in `t − t₀`,
//!   driven by the equal-time correlation matrix `D` alone.
//!
//! Module map:
//! - [`qlin`]: complex matrices, Paulis, Hermitian eigensolver, partial
//!   transpose, two-qubit states;
//! - [`coeffs`]: block coefficient matrices, equal-time correlation data,
//!   and the partial-transpose conjugation of the coefficient matrix whose
//!   positivity certifies no generation;
//! - [`baths`]: concrete environments — thermal modes, Ornstein–Uhlenbeck
//!   dephasing, Wiener fields, delta-approximant families;
//! - [`criterion`]: witness vectors and the minimized decision criterion;
//! - [`dynamics`]: generators, short-time and exact propagators, the
//!   dephasing model three ways, negativity;
//! - [`oracle`]: sampled brute-force certification and the
//!   criterion-vs-oracle agreement suite;
//! - [`cli`]: config schema and the five analysis commands.
//!
//! Determinism is a contract everywhere: all parallel paths reduce with
//! order-independent rules, and every random draw flows from an explicit
//! seed.

pub mod baths;
pub mod cli;
pub mod coeffs;
pub mod criterion;
pub mod dynamics;
pub mod error;
pub mod optimize;
pub mod oracle;
pub mod qlin;
pub mod tol;

pub use coeffs::{BlockCoeffMatrix, EqualTimeCorr};
pub use criterion::{decide, decide_equal_time, CriterionReport, Regime, Verdict};
pub use error::{EntgenError, Result};
pub use oracle::{certify, OracleReport};
pub use qlin::{CMat, TwoQubitState};
