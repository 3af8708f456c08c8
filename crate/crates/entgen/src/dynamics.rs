//! Evolution maps: the two-qubit generator, short-time propagators for
//! both regimes, exact exponential maps (used by the brute-force oracle),
//! the single-qubit dephasing model in closed form / RK4 / Monte-Carlo,
//! and negativity.
//!
//! Time-scale structure, which everything downstream leans on:
//! - memoryless regime: state change **linear** in elapsed time
//!   (`ρ + t·L[ρ]` at first order);
//! - Gaussian finite-memory regime: change **quadratic** in elapsed time
//!   (`ρ + (t−t₀)²·D[ρ]`, no linear term), where `D` is the dissipator
//!   built from the equal-time correlation matrix.
//!
//! The dephasing model admits a closed form because its Hamiltonian
//! commutes with the coupling: the coherence is damped by
//! `exp(−4Γ(t))` with `Γ(t) = t/2 + (ε/2)(e^{−t/ε} − 1)`, which behaves
//! as `t²/(4ε)` at short times and as `t/2` in the Markov limit ε → 0 —
//! the two limits do not commute, and the test suite measures both.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::baths::{sample_ou_path, OUNoise};
use crate::coeffs::BlockCoeffMatrix;
use crate::error::{EntgenError, Result};
use crate::qlin::{cx, hermitian_eigvals, on_qubit1, on_qubit2, paulis, CMat, TwoQubitState};

/// The dephasing model is the Ornstein–Uhlenbeck noise model: correlation
/// time ε plus the free qubit frequency ω_z.
pub type DephasingModel = OUNoise;

/// The six coupling operators `F_m`: `σ¹_x, σ¹_y, σ¹_z, σ²_x, σ²_y, σ²_z`
/// (first qubit then second, components in x, y, z order).
pub fn coupling_ops() -> [CMat; 6] {
    let p = paulis();
    [
        on_qubit1(&p[0]),
        on_qubit1(&p[1]),
        on_qubit1(&p[2]),
        on_qubit2(&p[0]),
        on_qubit2(&p[1]),
        on_qubit2(&p[2]),
    ]
}

/// Two-qubit Hamiltonian from the `h` blocks:
/// `Σ h¹¹_jk σ¹_j σ¹_k + Σ h²²_jk σ²_j σ²_k + Σ h¹²_jk σ¹_j σ²_k`
/// (the cross block enters once — it is the total coefficient).
pub fn hamiltonian_from_blocks(k: &BlockCoeffMatrix) -> CMat {
    let f = coupling_ops();
    let mut h = CMat::zeros(4, 4);
    for j in 0..3 {
        for l in 0..3 {
            let h11 = k.h11()[(j, l)];
            if h11 != cx(0.0, 0.0) {
                h = &h + &(&f[j] * &f[l]).scale(h11);
            }
            let h22 = k.h22()[(j, l)];
            if h22 != cx(0.0, 0.0) {
                h = &h + &(&f[3 + j] * &f[3 + l]).scale(h22);
            }
            let h12 = k.h12()[(j, l)];
            if h12 != cx(0.0, 0.0) {
                h = &h + &(&f[j] * &f[3 + l]).scale(h12);
            }
        }
    }
    h
}

/// Dissipator with coefficient matrix `K` (6×6 block data):
/// `Σ_mn K_mn (F_m ρ F_n − ½{F_n F_m, ρ})`. Trace-free and
/// Hermiticity-preserving for Hermitian `K`.
pub fn dissipator_apply(k: &BlockCoeffMatrix, m: &CMat) -> CMat {
    let f = coupling_ops();
    let kfull = k.assemble();
    let mut out = CMat::zeros(4, 4);
    for r in 0..6 {
        for c in 0..6 {
            let coeff = kfull[(r, c)];
            if coeff == cx(0.0, 0.0) {
                continue;
            }
            let sandwich = &(&f[r] * m) * &f[c];
            let nm = &f[c] * &f[r];
            let anti = &(&nm * m) + &(m * &nm);
            out = &out + &(&sandwich - &anti.scale(cx(0.5, 0.0))).scale(coeff);
        }
    }
    out
}

/// Full memoryless generator applied to a raw matrix:
/// dissipator plus `−i[H, ρ]`.
pub fn generator_apply(k: &BlockCoeffMatrix, m: &CMat) -> CMat {
    let mut out = dissipator_apply(k, m);
    if !k.is_purely_dissipative() {
        let h = hamiltonian_from_blocks(k);
        let comm = &(&h * m) - &(m * &h);
        out = &out + &comm.scale(cx(0.0, -1.0));
    }
    out
}

/// Generator output on a validated state (traceless Hermitian matrix).
pub fn lindblad_apply(k: &BlockCoeffMatrix, rho: &TwoQubitState) -> CMat {
    generator_apply(k, rho.matrix())
}

/// First-order short-time propagation in the memoryless regime:
/// `ρ + t·(dissipator + Hamiltonian terms)[ρ]`. Hermitian with unit trace;
/// deliberately *not* guaranteed PSD — the witness needs the raw
/// expansion. Expansion validity (`t·‖K‖ ≲ 0.1`) is the caller's business.
pub fn short_time_markov(k: &BlockCoeffMatrix, rho: &TwoQubitState, t: f64) -> CMat {
    let update = lindblad_apply(k, rho);
    rho.matrix() + &update.scale(cx(t, 0.0))
}

/// Second-order short-time propagation in the finite-memory regime:
/// `ρ + (t−t₀)²·dissipator(D)[ρ]` — no linear term. The equal-time data
/// must be purely dissipative (Hamiltonian blocks cannot contribute at
/// this order); nonzero `h` is a contract violation.
///
/// Normalization note: with the common dephasing structure `D = 1/(2ε)`
/// on σ_z ⊗ σ_z blocks, a single-qubit coherence shrinks by
/// `(1 − t²/ε)`, matching the closed-form damping exponent `t²/(4ε)`
/// times the double-commutator factor 4.
pub fn short_time_nonmarkov(
    d: &BlockCoeffMatrix,
    rho: &TwoQubitState,
    t_minus_t0: f64,
) -> Result<CMat> {
    if !d.is_purely_dissipative() {
        return Err(EntgenError::Contract(
            "finite-memory short-time propagation takes equal-time correlation data \
             only; Hamiltonian blocks must be zero"
                .into(),
        ));
    }
    let update = dissipator_apply(d, rho.matrix());
    Ok(rho.matrix() + &update.scale(cx(t_minus_t0 * t_minus_t0, 0.0)))
}

// ---------------------------------------------------------------------------
// Exact exponential maps (matrix representation of the generator)
// ---------------------------------------------------------------------------

/// Row-major vectorization `vec(ρ)_{4i+j} = ρ_ij`.
fn vec4(m: &CMat) -> Vec<Complex64> {
    m.as_slice().to_vec()
}

/// Inverse of [`vec4`].
fn unvec4(v: &[Complex64]) -> CMat {
    CMat::from_fn(4, 4, |r, c| v[4 * r + c])
}

/// 16×16 matrix of the full memoryless generator in row-major
/// vectorization: `vec(AXB) = (A ⊗ Bᵀ)·vec(X)`.
pub fn generator_matrix(k: &BlockCoeffMatrix) -> CMat {
    let f = coupling_ops();
    let id = CMat::identity(4);
    let kfull = k.assemble();
    let mut l = CMat::zeros(16, 16);
    for r in 0..6 {
        for c in 0..6 {
            let coeff = kfull[(r, c)];
            if coeff == cx(0.0, 0.0) {
                continue;
            }
            let nm = &f[c] * &f[r];
            let term = &f[r].kron(&f[c].t())
                - &(&nm.kron(&id) + &id.kron(&nm.t())).scale(cx(0.5, 0.0));
            l = &l + &term.scale(coeff);
        }
    }
    if !k.is_purely_dissipative() {
        let h = hamiltonian_from_blocks(k);
        let comm = &h.kron(&id) - &id.kron(&h.t());
        l = &l + &comm.scale(cx(0.0, -1.0));
    }
    l
}

/// Matrix exponential by scaling-and-squaring with a fixed-order Taylor
/// series; ample for the tiny norms and dimensions used here.
pub fn expm(a: &CMat) -> CMat {
    let n = a.rows();
    let norm = a.frob_norm();
    let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale(cx(0.5_f64.powi(squarings as i32), 0.0));

    let mut result = CMat::identity(n);
    let mut term = CMat::identity(n);
    for k in 1..=24 {
        term = (&term * &scaled).scale(cx(1.0 / k as f64, 0.0));
        result = &result + &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Exact semigroup map of the memoryless generator over time `t`, as a
/// 16×16 matrix acting on vectorized states. Exact propagation keeps
/// completely positive dynamics exactly positive, so oracle floors are
/// set by rounding, not by truncation artifacts.
pub fn semigroup_matrix(k: &BlockCoeffMatrix, t: f64) -> CMat {
    expm(&generator_matrix(k).scale(cx(t, 0.0)))
}

/// Exact map of the finite-memory quadratic regime over elapsed time
/// `t − t₀`: the dissipator of `D` exponentiated in the parameter
/// `τ = (t−t₀)²` (the quadratic regime is a semigroup in τ).
pub fn quadratic_map_matrix(d: &BlockCoeffMatrix, t_minus_t0: f64) -> Result<CMat> {
    if !d.is_purely_dissipative() {
        return Err(EntgenError::Contract(
            "quadratic-regime map takes equal-time correlation data only".into(),
        ));
    }
    Ok(expm(&generator_matrix(d).scale(cx(t_minus_t0 * t_minus_t0, 0.0))))
}

/// Apply a 16×16 vectorized-state map to a 4×4 matrix.
pub fn apply_map(map16: &CMat, m: &CMat) -> CMat {
    unvec4(&map16.matvec(&vec4(m)))
}

// ---------------------------------------------------------------------------
// Negativity
// ---------------------------------------------------------------------------

/// Negativity: the sum of `|λ|` over negative eigenvalues of the partial
/// transpose. Zero iff the partial transpose is PSD; for two qubits that
/// is exactly separability.
pub fn negativity(m: &CMat) -> Result<f64> {
    let pt = crate::qlin::partial_transpose(m)?;
    let eigs = hermitian_eigvals(&pt)?;
    Ok(eigs.iter().filter(|&&e| e < 0.0).map(|e| -e).sum())
}

// ---------------------------------------------------------------------------
// Dephasing model: closed form, RK4, Monte-Carlo
// ---------------------------------------------------------------------------

/// `x + e^{−x} − 1`, stable for small x (direct cancellation-free series
/// below 1/4, `expm1` otherwise). This is the exact shape of the damping
/// exponent: `Γ(t) = (ε/2)·g(t/ε)`.
fn exp_linear_remainder(x: f64) -> f64 {
    if x.abs() <= 0.25 {
        // Σ_{k≥2} (−x)^k / k!  evaluated by Horner from k = 13 down.
        let mut acc = 0.0_f64;
        for k in (2..=13).rev() {
            acc = (acc + 1.0 / factorial(k)) * (-x);
        }
        acc * (-x) // one more factor: loop produced Σ (−x)^{k−1}/k!
    } else {
        x + (-x).exp_m1()
    }
}

fn factorial(k: usize) -> f64 {
    (2..=k).map(|i| i as f64).product()
}

/// Damping exponent `Γ(t) = t/2 + (ε/2)(e^{−t/ε} − 1)`, evaluated
/// cancellation-free: behaves as `t²/(4ε)` for t ≪ ε and as `t/2` for
/// t ≫ ε.
pub fn dephasing_exponent(epsilon: f64, t: f64) -> f64 {
    (epsilon / 2.0) * exp_linear_remainder(t / epsilon)
}

/// Coherence damping factor `exp(−4Γ(t))` of the dephasing model.
pub fn dephasing_damping(epsilon: f64, t: f64) -> f64 {
    (-4.0 * dephasing_exponent(epsilon, t)).exp()
}

fn require_single_qubit_state(rho0: &CMat) -> Result<()> {
    if rho0.rows() != 2 || rho0.cols() != 2 {
        return Err(EntgenError::Dimension(format!(
            "dephasing acts on a single-qubit 2×2 state, got {}×{}",
            rho0.rows(),
            rho0.cols()
        )));
    }
    rho0.require_hermitian()?;
    let tr = rho0.trace();
    if (tr - cx(1.0, 0.0)).norm() > 1e-10 {
        return Err(EntgenError::InvalidModel(format!(
            "single-qubit state trace must be 1, got {:+.3e}{:+.3e}i",
            tr.re, tr.im
        )));
    }
    Ok(())
}

/// Exact dephasing evolution: diagonal untouched, coherence damped by
/// `exp(−4Γ(t))` and rotated by the free phase `e^{−2iω_z t}`. Closed
/// form is exact because the free Hamiltonian commutes with the coupling.
pub fn dephasing_exact(model: &DephasingModel, rho0: &CMat, t: f64) -> Result<CMat> {
    require_single_qubit_state(rho0)?;
    if t < 0.0 {
        return Err(EntgenError::Contract(format!("dephasing time must be ≥ 0, got {t}")));
    }
    let damping = dephasing_damping(model.epsilon(), t);
    let phase = Complex64::from_polar(1.0, -2.0 * model.omega_z() * t);
    let factor = phase * damping;
    let mut out = rho0.clone();
    out[(0, 1)] = rho0[(0, 1)] * factor;
    out[(1, 0)] = rho0[(1, 0)] * factor.conj();
    Ok(out)
}

/// RK4 integration of the time-local dephasing master equation
/// `ρ̇ = −iω_z[σ_z, ρ] − Γ'(t)·[σ_z, [σ_z, ρ]]` with
/// `Γ'(t) = (1 − e^{−t/ε})/2`, fixed step `t/2048`. Regression partner
/// for the closed form (agreement ≤ 1e-8 is an acceptance gate).
pub fn dephasing_rk4(model: &DephasingModel, rho0: &CMat, t: f64) -> Result<CMat> {
    require_single_qubit_state(rho0)?;
    if t < 0.0 {
        return Err(EntgenError::Contract(format!("dephasing time must be ≥ 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let sz = paulis()[2].clone();
    let eps = model.epsilon();
    let omega_z = model.omega_z();
    let deriv = |time: f64, rho: &CMat| -> CMat {
        let gamma_prime = 0.5 * (1.0 - (-time / eps).exp());
        let comm = &(&sz * rho) - &(rho * &sz);
        let double = &(&sz * &comm) - &(&comm * &sz);
        &comm.scale(cx(0.0, -omega_z)) - &double.scale(cx(gamma_prime, 0.0))
    };

    let n_steps = 2048usize;
    let h = t / n_steps as f64;
    let mut rho = rho0.clone();
    for step in 0..n_steps {
        let t0 = step as f64 * h;
        let k1 = deriv(t0, &rho);
        let k2 = deriv(t0 + h / 2.0, &(&rho + &k1.scale(cx(h / 2.0, 0.0))));
        let k3 = deriv(t0 + h / 2.0, &(&rho + &k2.scale(cx(h / 2.0, 0.0))));
        let k4 = deriv(t0 + h, &(&rho + &k3.scale(cx(h, 0.0))));
        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale(cx(2.0, 0.0));
        rho = &rho + &incr.scale(cx(h / 6.0, 0.0));
    }
    Ok(rho)
}

/// Monte-Carlo dephasing result.
#[derive(Debug, Clone)]
pub struct McDephasing {
    /// Ensemble-averaged state.
    pub state: CMat,
    /// Sample mean of the per-trajectory damping factor `e^{−2i∫φ}`
    /// (theoretically real-positive; the imaginary part is sampling noise).
    pub damping: Complex64,
    /// Standard error of the real part of the damping estimate.
    pub stderr_re: f64,
    /// Standard error of the imaginary part.
    pub stderr_im: f64,
    /// Trajectories averaged.
    pub n_traj: usize,
}

/// Number of Ornstein–Uhlenbeck steps per Monte-Carlo trajectory; the
/// trapezoid quadrature bias at this resolution is far below the
/// statistical error of any reasonable ensemble.
const MC_PATH_STEPS: usize = 512;

/// SplitMix64 bit mixer for per-trajectory seed derivation.
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Monte-Carlo dephasing: average `e^{−2i∫₀ᵗ φ}` over exactly-discretized
/// Ornstein–Uhlenbeck paths (trapezoid quadrature for the phase integral).
/// Seed space is partitioned per trajectory index, so the result is
/// bit-identical for any thread count. Requires `n_traj ≥ 100` (below
/// that the standard error is not meaningful for comparisons).
pub fn dephasing_mc(
    model: &DephasingModel,
    rho0: &CMat,
    t: f64,
    n_traj: usize,
    seed: u64,
) -> Result<McDephasing> {
    require_single_qubit_state(rho0)?;
    if t < 0.0 {
        return Err(EntgenError::Contract(format!("dephasing time must be ≥ 0, got {t}")));
    }
    if n_traj < 100 {
        return Err(EntgenError::Contract(format!(
            "monte-carlo needs at least 100 trajectories for a meaningful standard \
             error, got {n_traj}"
        )));
    }
    let eps = model.epsilon();

    let factors: Vec<Complex64> = if t == 0.0 {
        vec![cx(1.0, 0.0); n_traj]
    } else {
        let dt = t / MC_PATH_STEPS as f64;
        (0..n_traj)
            .into_par_iter()
            .map(|i| {
                let path = sample_ou_path(eps, dt, MC_PATH_STEPS, mix_seed(seed, i as u64))
                    .expect("validated parameters");
                let mut integral = 0.5 * (path[0] + path[MC_PATH_STEPS]);
                for x in &path[1..MC_PATH_STEPS] {
                    integral += x;
                }
                integral *= dt;
                Complex64::from_polar(1.0, -2.0 * integral)
            })
            .collect()
    };

    // Serial reduction for bitwise determinism.
    let n = n_traj as f64;
    let mean: Complex64 = factors.iter().sum::<Complex64>() / n;
    let (mut var_re, mut var_im) = (0.0, 0.0);
    for f in &factors {
        var_re += (f.re - mean.re).powi(2);
        var_im += (f.im - mean.im).powi(2);
    }
    let stderr_re = (var_re / (n - 1.0)).sqrt() / n.sqrt();
    let stderr_im = (var_im / (n - 1.0)).sqrt() / n.sqrt();

    let phase = Complex64::from_polar(1.0, -2.0 * model.omega_z() * t);
    let factor = phase * mean;
    let mut state = rho0.clone();
    state[(0, 1)] = rho0[(0, 1)] * factor;
    state[(1, 0)] = rho0[(1, 0)] * factor.conj();

    Ok(McDephasing { state, damping: mean, stderr_re, stderr_im, n_traj })
}
