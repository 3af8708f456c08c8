//! Block coefficient matrices of the two-qubit master equation and their
//! partial-transpose transform.
//!
//! The dissipative part of the master equation is fixed by a 6×6 Hermitian
//! coefficient matrix stored as 3×3 blocks indexed by which qubit each
//! Pauli operator acts on:
//!
//! ```text
//! K = [ K¹¹  K¹² ]        K¹¹, K²² Hermitian,  K²¹ = (K¹²)†
//!     [ K²¹  K²² ]
//! ```
//!
//! The Hamiltonian part is described by blocks `h¹¹`, `h²²` (Hermitian,
//! single-qubit) and a **real** cross block `h¹²`; the induced two-qubit
//! Hamiltonian is
//!
//! ```text
//! H = Σ_jk h¹¹_jk σ¹_j σ¹_k + Σ_jk h²²_jk σ²_j σ²_k + Σ_jk h¹²_jk σ¹_j σ²_k
//! ```
//!
//! where `h¹²` is the *total* coefficient of `σ¹_j σ²_k` (no symmetrized
//! double-counting). The imaginary part of a cross coupling cancels
//! identically in the Hamiltonian, which is why `h¹²` is constrained to be
//! real — that is also exactly the condition under which the
//! partial-transpose transform below stays Hermitian.
//!
//! Conjugating the evolution by partial transposition on qubit 2 maps the
//! dissipative coefficients to
//!
//! ```text
//! K̃ = S · [ K¹¹              Re(K¹²) + i·h¹² ] · S ,      S = diag(I₃, ℰ),
//!         [ (Re(K¹²) − i·h¹²)ᵀ   (K²²)ᵀ      ]
//! ```
//!
//! with the sign matrix `ℰ = diag(−1, 1, −1)` (σ_y flips sign under
//! transposition while σ_x, σ_z do not; the conjugation signs are the
//! negatives of the transpose signs). The leftover terms are commutators
//! (generated by `h¹¹`, `h²²`, and `Im K¹²`) which never contribute at
//! first order on the product-state kernel the entanglement criteria probe.

use num_complex::Complex64;

use crate::error::{EntgenError, Result};
use crate::qlin::{is_psd, CMat};
use crate::tol;

/// Diagonal sign matrix `ℰ = diag(−1, 1, −1)` describing how Pauli
/// components respond to conjugation by partial transposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonSign;

impl EpsilonSign {
    /// The sign pattern for components (x, y, z).
    pub const DIAG: [f64; 3] = [-1.0, 1.0, -1.0];

    /// `ℰ` as a 3×3 matrix.
    pub fn diag3() -> CMat {
        CMat::from_fn(3, 3, |r, c| {
            if r == c {
                Complex64::new(Self::DIAG[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The block conjugation `S = diag(I₃, ℰ)` as a 6×6 matrix.
    pub fn conjugation6() -> CMat {
        let mut s = CMat::identity(6);
        for j in 0..3 {
            s[(3 + j, 3 + j)] = Complex64::new(Self::DIAG[j], 0.0);
        }
        s
    }
}

/// Coefficient matrix of the two-qubit master equation in block form.
///
/// `k11`, `k22` are 3×3 Hermitian; `k12` is an arbitrary 3×3 complex block
/// (its conjugate transpose is the implicit `K²¹`); `h11`, `h22` are 3×3
/// Hermitian Hamiltonian blocks and `h12` is a 3×3 **real** cross block.
#[derive(Debug, Clone)]
pub struct BlockCoeffMatrix {
    k11: CMat,
    k12: CMat,
    k22: CMat,
    h11: CMat,
    h12: CMat,
    h22: CMat,
}

fn require_3x3(name: &str, m: &CMat) -> Result<()> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(EntgenError::Dimension(format!(
            "block {name} must be 3×3, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn require_real(name: &str, m: &CMat) -> Result<()> {
    let worst = m
        .as_slice()
        .iter()
        .map(|z| z.im.abs())
        .fold(0.0_f64, f64::max);
    if worst > tol::HERMITICITY_REL * m.frob_norm().max(1.0) {
        return Err(EntgenError::InvalidModel(format!(
            "block {name} must be real (the imaginary part of a cross coupling is \
             gauge and must be dropped); max |Im| = {worst:.3e}"
        )));
    }
    Ok(())
}

impl BlockCoeffMatrix {
    /// Build from dissipative blocks only (zero Hamiltonian).
    pub fn dissipative(k11: CMat, k12: CMat, k22: CMat) -> Result<Self> {
        Self::new(k11, k12, k22, CMat::zeros(3, 3), CMat::zeros(3, 3), CMat::zeros(3, 3))
    }

    /// Build from all blocks, validating shapes and symmetry constraints.
    pub fn new(
        k11: CMat,
        k12: CMat,
        k22: CMat,
        h11: CMat,
        h12: CMat,
        h22: CMat,
    ) -> Result<Self> {
        for (name, m) in [
            ("k11", &k11),
            ("k12", &k12),
            ("k22", &k22),
            ("h11", &h11),
            ("h12", &h12),
            ("h22", &h22),
        ] {
            require_3x3(name, m)?;
        }
        k11.require_hermitian()?;
        k22.require_hermitian()?;
        h11.require_hermitian()?;
        h22.require_hermitian()?;
        require_real("h12", &h12)?;
        Ok(BlockCoeffMatrix {
            k11,
            k12,
            k22,
            h11,
            // store the exactly-real projection so downstream algebra sees
            // no sub-tolerance imaginary dust
            h12: h12.re(),
            h22,
        })
    }

    /// Zero coefficient matrix (trivial generator).
    pub fn zero() -> Self {
        BlockCoeffMatrix {
            k11: CMat::zeros(3, 3),
            k12: CMat::zeros(3, 3),
            k22: CMat::zeros(3, 3),
            h11: CMat::zeros(3, 3),
            h12: CMat::zeros(3, 3),
            h22: CMat::zeros(3, 3),
        }
    }

    /// Build from an assembled 6×6 Hermitian dissipative matrix (zero
    /// Hamiltonian), splitting it into blocks.
    pub fn from_assembled(k: &CMat) -> Result<Self> {
        if k.rows() != 6 || k.cols() != 6 {
            return Err(EntgenError::Dimension(format!(
                "assembled coefficient matrix must be 6×6, got {}×{}",
                k.rows(),
                k.cols()
            )));
        }
        k.require_hermitian()?;
        Self::dissipative(k.block(0, 0, 3, 3), k.block(0, 3, 3, 3), k.block(3, 3, 3, 3))
    }

    /// Dissipative block `K¹¹`.
    pub fn k11(&self) -> &CMat {
        &self.k11
    }

    /// Dissipative cross block `K¹²` (`K²¹` is its conjugate transpose).
    pub fn k12(&self) -> &CMat {
        &self.k12
    }

    /// Dissipative block `K²²`.
    pub fn k22(&self) -> &CMat {
        &self.k22
    }

    /// Hamiltonian block `h¹¹`.
    pub fn h11(&self) -> &CMat {
        &self.h11
    }

    /// Real Hamiltonian cross block `h¹²`.
    pub fn h12(&self) -> &CMat {
        &self.h12
    }

    /// Hamiltonian block `h²²`.
    pub fn h22(&self) -> &CMat {
        &self.h22
    }

    /// Whether all Hamiltonian blocks vanish.
    pub fn is_purely_dissipative(&self) -> bool {
        self.h11.frob_norm() == 0.0 && self.h12.frob_norm() == 0.0 && self.h22.frob_norm() == 0.0
    }

    /// Assemble the dissipative blocks into the 6×6 Hermitian matrix
    /// `[[K¹¹, K¹²], [(K¹²)†, K²²]]`.
    pub fn assemble(&self) -> CMat {
        let mut k = CMat::zeros(6, 6);
        k.set_block(0, 0, &self.k11);
        k.set_block(0, 3, &self.k12);
        k.set_block(3, 0, &self.k12.dagger());
        k.set_block(3, 3, &self.k22);
        k
    }

    /// Whether the assembled dissipative matrix is positive semidefinite —
    /// the complete-positivity condition for a memoryless semigroup
    /// generator with these coefficients.
    pub fn cp_valid(&self) -> Result<bool> {
        is_psd(&self.assemble())
    }

    /// Frobenius norm of the assembled dissipative matrix.
    pub fn dissipative_norm(&self) -> f64 {
        self.assemble().frob_norm()
    }

    /// Frobenius norm of the Hamiltonian data (all three blocks).
    pub fn hamiltonian_norm(&self) -> f64 {
        (self.h11.frob_norm().powi(2)
            + self.h12.frob_norm().powi(2)
            + self.h22.frob_norm().powi(2))
        .sqrt()
    }

    /// The partial-transpose-transformed coefficient matrix
    ///
    /// ```text
    /// K̃ = S · [[K¹¹, Re(K¹²)+i·h¹²], [(Re(K¹²)−i·h¹²)ᵀ, (K²²)ᵀ]] · S
    /// ```
    ///
    /// with `S = diag(I₃, ℰ)`. Always Hermitian (h¹² is real by
    /// construction). Its positive semidefiniteness certifies that the
    /// partial-transposed evolution is completely positive at short times,
    /// i.e. that no entanglement is generated from any product state.
    pub fn pt_transform(&self) -> CMat {
        let i = Complex64::new(0.0, 1.0);
        let cross = &self.k12.re() + &self.h12.scale(i);
        let mut mid = CMat::zeros(6, 6);
        mid.set_block(0, 0, &self.k11);
        mid.set_block(0, 3, &cross);
        mid.set_block(3, 0, &cross.dagger());
        mid.set_block(3, 3, &self.k22.t());
        let s = EpsilonSign::conjugation6();
        &(&s * &mid) * &s
    }
}

/// Equal-time correlation data for the short-time (quadratic-in-time)
/// regime: a 6×6 positive-semidefinite matrix `D` with the same block
/// layout as the dissipative coefficients.
///
/// Construction validates Hermiticity and positive semidefiniteness —
/// every genuine equal-time correlation matrix of Gaussian environment
/// operators is a Gram matrix and therefore PSD; failing the check means
/// the input is not a correlation matrix.
#[derive(Debug, Clone)]
pub struct EqualTimeCorr {
    d: CMat,
}

impl EqualTimeCorr {
    /// Validate and wrap an equal-time correlation matrix.
    pub fn new(d: CMat) -> Result<Self> {
        if d.rows() != 6 || d.cols() != 6 {
            return Err(EntgenError::Dimension(format!(
                "equal-time correlation matrix must be 6×6, got {}×{}",
                d.rows(),
                d.cols()
            )));
        }
        d.require_hermitian()?;
        if !is_psd(&d)? {
            return Err(EntgenError::InvalidModel(
                "equal-time correlation matrix is not positive semidefinite, so it \
                 cannot arise from any Gaussian environment"
                    .into(),
            ));
        }
        Ok(EqualTimeCorr { d })
    }

    /// Build from 3×3 blocks `[[D¹¹, D¹²], [(D¹²)†, D²²]]`.
    pub fn from_blocks(d11: CMat, d12: CMat, d22: CMat) -> Result<Self> {
        for (name, m) in [("d11", &d11), ("d12", &d12), ("d22", &d22)] {
            require_3x3(name, m)?;
        }
        let mut d = CMat::zeros(6, 6);
        d.set_block(0, 0, &d11);
        d.set_block(0, 3, &d12);
        d.set_block(3, 0, &d12.dagger());
        d.set_block(3, 3, &d22);
        Self::new(d)
    }

    /// Common-bath layout `[[Δ, Δ], [Δ, Δ]]` from a single 3×3 Hermitian Δ.
    pub fn common_bath(delta: &CMat) -> Result<Self> {
        require_3x3("delta", delta)?;
        Self::from_blocks(delta.clone(), delta.clone(), delta.clone())
    }

    /// The full 6×6 matrix.
    pub fn matrix(&self) -> &CMat {
        &self.d
    }

    /// Block `D¹¹`.
    pub fn d11(&self) -> CMat {
        self.d.block(0, 0, 3, 3)
    }

    /// Cross block `D¹²`.
    pub fn d12(&self) -> CMat {
        self.d.block(0, 3, 3, 3)
    }

    /// Block `D²²`.
    pub fn d22(&self) -> CMat {
        self.d.block(3, 3, 3, 3)
    }

    /// View the correlation data as a coefficient matrix whose dissipative
    /// part is `D` (zero Hamiltonian) — the generator shape of the
    /// quadratic-in-time regime, where only `Re D¹²` enters the cross block
    /// of the partial-transpose transform.
    pub fn as_coeffs(&self) -> BlockCoeffMatrix {
        BlockCoeffMatrix::dissipative(self.d11(), self.d12(), self.d22())
            .expect("validated correlation blocks assemble cleanly")
    }

    /// Frobenius norm of the correlation matrix.
    pub fn norm(&self) -> f64 {
        self.d.frob_norm()
    }
}
