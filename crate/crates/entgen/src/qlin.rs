//! Small dense complex matrices and the spectral routines the rest of the
//! crate is built on.
//!
//! Everything here targets the tiny dimensions of the problem domain (2×2
//! single-qubit operators, 4×4 two-qubit density matrices, 6×6 block
//! coefficient matrices), so the implementations favor clarity and
//! verifiable numerics over asymptotic speed: matrix products are naive
//! triple loops and the Hermitian eigensolver is a cyclic complex Jacobi
//! iteration with an explicit rotation per step. The eigensolver is
//! validated in the test suite against an independent
//! characteristic-polynomial bisection oracle.
//!
//! Conventions:
//! - matrices are row-major;
//! - Pauli component indices run `0..3` and map to (x, y, z);
//! - `partial_transpose` transposes the **second** qubit factor of a 4×4
//!   matrix in the computational basis;
//! - kets are plain `[Complex64; N]` arrays, and inner products conjugate
//!   the left argument.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{EntgenError, Result};
use crate::tol;

/// Shorthand for a real scalar promoted to a complex one.
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense complex matrix, row-major, sized at runtime (dimensions here are
/// always ≤ 6 in practice).
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    /// Zero matrix of shape `rows × cols`.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a closure over `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Build from nested slices of complex entries; rows must be equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let nr = rows.len();
        if nr == 0 {
            return Err(EntgenError::Dimension("matrix needs at least one row".into()));
        }
        let nc = rows[0].len();
        if rows.iter().any(|r| r.len() != nc) {
            return Err(EntgenError::Dimension("ragged rows in matrix literal".into()));
        }
        let mut m = CMat::zeros(nr, nc);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        Ok(m)
    }

    /// Build a real matrix from nested slices.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        CMat::from_rows(&complex)
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Flat row-major view of the entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Transpose (no conjugation).
    pub fn t(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| self[(r, c)].conj())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Entry-wise real part (imaginary parts dropped).
    pub fn re(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| Complex64::new(self[(r, c)].re, 0.0))
    }

    /// Entry-wise imaginary part (as a real matrix).
    pub fn im(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| Complex64::new(self[(r, c)].im, 0.0))
    }

    /// Scale by a complex factor.
    pub fn scale(&self, factor: Complex64) -> CMat {
        CMat::from_fn(self.rows, self.cols, |r, c| self[(r, c)] * factor)
    }

    /// Trace (sum of diagonal entries); square matrices only.
    pub fn trace(&self) -> Complex64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij - conj(a_ji)|` over all entries; zero for exactly
    /// Hermitian matrices.
    pub fn max_asymmetry(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Whether the matrix is Hermitian within `rel_tol * max(1, ‖self‖_F)`.
    pub fn is_hermitian_within(&self, rel_tol: f64) -> bool {
        self.rows == self.cols
            && self.max_asymmetry() <= rel_tol * self.frob_norm().max(1.0)
    }

    /// Error unless the matrix is square and Hermitian within the crate-wide
    /// relative tolerance; the error names the observed asymmetry.
    pub fn require_hermitian(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(EntgenError::Dimension(format!(
                "expected square matrix, got {}×{}",
                self.rows, self.cols
            )));
        }
        let tol = tol::HERMITICITY_REL * self.frob_norm().max(1.0);
        let asym = self.max_asymmetry();
        if asym > tol {
            return Err(EntgenError::NotHermitian { max_asymmetry: asym, tol });
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMat) -> CMat {
        let (ar, ac, br, bc) = (self.rows, self.cols, other.rows, other.cols);
        CMat::from_fn(ar * br, ac * bc, |r, c| {
            self[(r / br, c / bc)] * other[(r % br, c % bc)]
        })
    }

    /// Copy of the `nr × nc` sub-block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> CMat {
        debug_assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        CMat::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)])
    }

    /// Overwrite the sub-block with top-left corner `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CMat) {
        debug_assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)];
            }
        }
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }

    /// Sesquilinear form `⟨x| self |y⟩ = Σ conj(x_r) · a_rc · y_c`.
    pub fn sesquilinear(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        debug_assert_eq!(self.rows, x.len());
        debug_assert_eq!(self.cols, y.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += x[r].conj() * self[(r, c)] * y[c];
            }
        }
        acc
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat::from_fn(self.rows, self.cols, |r, c| self[(r, c)] + rhs[(r, c)])
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat::from_fn(self.rows, self.cols, |r, c| self[(r, c)] - rhs[(r, c)])
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}×{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4e}{:+.4e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrix for component `j ∈ 0..3`, mapping to (x, y, z).
pub fn pauli(j: usize) -> CMat {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let rows = match j {
        0 => vec![vec![o, one], vec![one, o]],
        1 => vec![vec![o, -i], vec![i, o]],
        2 => vec![vec![one, o], vec![o, -one]],
        _ => panic!("pauli component index must be 0, 1, or 2 (x, y, z)"),
    };
    CMat::from_rows(&rows).expect("static pauli data is rectangular")
}

/// All three Pauli matrices `[σ_x, σ_y, σ_z]`.
pub fn paulis() -> [CMat; 3] {
    [pauli(0), pauli(1), pauli(2)]
}

/// Embed a single-qubit operator on qubit 1 of a two-qubit system: `m ⊗ I`.
pub fn on_qubit1(m: &CMat) -> CMat {
    m.kron(&CMat::identity(2))
}

/// Embed a single-qubit operator on qubit 2 of a two-qubit system: `I ⊗ m`.
pub fn on_qubit2(m: &CMat) -> CMat {
    CMat::identity(2).kron(m)
}

/// Inner product `⟨x|y⟩` with conjugation on the left argument.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Ket on the Bloch sphere: `(cos(θ/2), e^{iφ} sin(θ/2))`.
pub fn bloch_ket(theta: f64, phi: f64) -> [Complex64; 2] {
    let (h, p) = (theta / 2.0, phi);
    [
        Complex64::new(h.cos(), 0.0),
        Complex64::from_polar(1.0, p) * h.sin(),
    ]
}

/// Ket orthogonal to [`bloch_ket`] at the same angles:
/// `(-e^{-iφ} sin(θ/2), cos(θ/2))`.
pub fn bloch_ket_orth(theta: f64, phi: f64) -> [Complex64; 2] {
    let (h, p) = (theta / 2.0, phi);
    [
        -Complex64::from_polar(1.0, -p) * h.sin(),
        Complex64::new(h.cos(), 0.0),
    ]
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Returns eigenvalues sorted ascending and the unitary of eigenvectors as
/// columns (`m ≈ V · diag(λ) · V†`). Errors if `m` is not Hermitian within
/// the crate-wide relative tolerance; the input is symmetrized before
/// iterating so representation noise below the tolerance does not bias the
/// spectrum.
pub fn hermitian_eig(m: &CMat) -> Result<(Vec<f64>, CMat)> {
    m.require_hermitian()?;
    let n = m.rows();
    // Exact symmetrization kills sub-tolerance asymmetry.
    let mut a = (&m.clone() + &m.dagger()).scale(Complex64::new(0.5, 0.0));
    let mut v = CMat::identity(n);
    let scale = a.frob_norm().max(1.0);

    for sweep in 0..tol::JACOBI_MAX_SWEEPS {
        let mut off2 = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    off2 += a[(r, c)].norm_sqr();
                }
            }
        }
        if off2.sqrt() <= tol::JACOBI_OFF_REL * scale {
            break;
        }
        if sweep + 1 == tol::JACOBI_MAX_SWEEPS {
            return Err(EntgenError::Contract(
                "jacobi eigensolver failed to converge (internal fault)".into(),
            ));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                // Absorb the phase of a_pq, then apply the classic real
                // Jacobi rotation that zeroes the (p, q) entry.
                let phase = apq / r; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let mut u = CMat::identity(n);
                u[(p, p)] = Complex64::new(c, 0.0);
                u[(p, q)] = Complex64::new(s, 0.0);
                u[(q, p)] = -phase.conj() * s;
                u[(q, q)] = phase.conj() * c;

                a = &(&u.dagger() * &a) * &u;
                v = &v * &u;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let vals_raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| vals_raw[i].partial_cmp(&vals_raw[j]).expect("finite eigenvalues"));
    let vals: Vec<f64> = order.iter().map(|&i| vals_raw[i]).collect();
    let vecs = CMat::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((vals, vecs))
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn hermitian_eigvals(m: &CMat) -> Result<Vec<f64>> {
    hermitian_eig(m).map(|(vals, _)| vals)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_min_eigval(m: &CMat) -> Result<f64> {
    Ok(hermitian_eigvals(m)?[0])
}

/// Whether a Hermitian matrix is positive semidefinite, tolerating
/// eigenvalues down to `-PSD_REL * max(1, ‖m‖_F)` as rounded zeros.
pub fn is_psd(m: &CMat) -> Result<bool> {
    let floor = -tol::PSD_REL * m.frob_norm().max(1.0);
    Ok(hermitian_min_eigval(m)? >= floor)
}

/// Partial transpose of a 4×4 two-qubit matrix on the **second** factor:
/// entry `((i,a),(j,b)) ↦ ((i,b),(j,a))` in the computational basis.
/// Pure entry relabeling — no arithmetic, so applying it twice is an exact
/// involution.
pub fn partial_transpose(m: &CMat) -> Result<CMat> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(EntgenError::Dimension(format!(
            "partial transpose needs a 4×4 two-qubit matrix, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(CMat::from_fn(4, 4, |r, c| {
        let (i, a) = (r / 2, r % 2);
        let (j, b) = (c / 2, c % 2);
        m[(2 * i + b, 2 * j + a)]
    }))
}

/// Validated two-qubit density matrix.
///
/// Construction enforces: 4×4 shape, unit trace within `STATE_TOL`,
/// Hermiticity within `STATE_TOL` (absolute, entry-wise), and eigenvalues
/// no lower than `STATE_EIG_FLOOR`.
#[derive(Clone, Debug)]
pub struct TwoQubitState {
    m: CMat,
}

impl TwoQubitState {
    /// Validate and wrap a density matrix.
    pub fn new(m: CMat) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(EntgenError::Dimension(format!(
                "two-qubit state must be 4×4, got {}×{}",
                m.rows(),
                m.cols()
            )));
        }
        let tr = m.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol::STATE_TOL {
            return Err(EntgenError::InvalidModel(format!(
                "density matrix trace {:+.3e}{:+.3e}i differs from 1 beyond {:.1e}",
                tr.re,
                tr.im,
                tol::STATE_TOL
            )));
        }
        let asym = m.max_asymmetry();
        if asym > tol::STATE_TOL {
            return Err(EntgenError::NotHermitian { max_asymmetry: asym, tol: tol::STATE_TOL });
        }
        let min = hermitian_min_eigval(&m)?;
        if min < tol::STATE_EIG_FLOOR {
            return Err(EntgenError::InvalidModel(format!(
                "density matrix has eigenvalue {min:.3e} below the positivity floor"
            )));
        }
        Ok(TwoQubitState { m })
    }

    /// Product state `|ψ⟩⟨ψ| ⊗ |φ⟩⟨φ|` from two normalized single-qubit kets.
    pub fn product_pure(psi: &[Complex64; 2], phi: &[Complex64; 2]) -> Result<Self> {
        for (name, k) in [("psi", psi), ("phi", phi)] {
            let n = inner(k, k).re;
            if (n - 1.0).abs() > tol::STATE_TOL {
                return Err(EntgenError::InvalidModel(format!(
                    "ket {name} has squared norm {n:.12}, expected 1"
                )));
            }
        }
        let joint: Vec<Complex64> =
            psi.iter().flat_map(|&a| phi.iter().map(move |&b| a * b)).collect();
        let m = CMat::from_fn(4, 4, |r, c| joint[r] * joint[c].conj());
        TwoQubitState::new(m)
    }

    /// Maximally entangled state `(|00⟩ + |11⟩)/√2` as a density matrix
    /// (handy fixture: its partial transpose has eigenvalue −1/2).
    pub fn bell_phi_plus() -> Self {
        let h = Complex64::new(0.5, 0.0);
        let mut m = CMat::zeros(4, 4);
        for &r in &[0usize, 3] {
            for &c in &[0usize, 3] {
                m[(r, c)] = h;
            }
        }
        TwoQubitState { m }
    }

    /// Borrow the underlying matrix.
    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    /// Consume into the underlying matrix.
    pub fn into_matrix(self) -> CMat {
        self.m
    }
}
