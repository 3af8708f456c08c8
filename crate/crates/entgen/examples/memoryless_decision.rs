//! Deciding entanglement generation for memoryless (semigroup) evolution.
//!
//! A memoryless model is given by coefficient blocks: dissipative 3×3
//! blocks `K¹¹, K¹², K²²` plus Hamiltonian couplings `h¹¹, h¹², h²²`. The
//! criterion minimizes
//!
//! ```text
//! ⟨u|K¹¹|u⟩ · ⟨v|(K²²)ᵀ|v⟩ − |⟨u|Re K¹² + i·h¹²|v⟩|²
//! ```
//!
//! over witness pairs `(u, v)`. A negative minimum means some initial
//! product state becomes entangled at first order in time; a positive
//! semidefinite sign-conjugated coefficient matrix certifies that none
//! does.
//!
//! Run with `cargo run --example memoryless_decision`.

use entgen::coeffs::BlockCoeffMatrix;
use entgen::criterion::{decide, DecideOptions, Regime};
use entgen::qlin::{cx, CMat};
use entgen::Result;

fn report(label: &str, k: &BlockCoeffMatrix) -> Result<()> {
    let report = decide(k, Regime::Markovian, &DecideOptions::default())?;
    println!(
        "{label:<28} value = {:+.6e}   verdict = {:<17} certificate = {}",
        report.value,
        report.verdict.as_str(),
        report.psd_certificate
    );
    Ok(())
}

fn main() -> Result<()> {
    println!("memoryless-regime decisions\n");
    let zero = CMat::zeros(3, 3);
    let ident = CMat::from_fn(3, 3, |r, c| if r == c { cx(1.0, 0.0) } else { cx(0.0, 0.0) });

    // Decoupled qubits: no cross blocks at all. Nothing to entangle with.
    let decoupled = BlockCoeffMatrix::new(
        ident.clone(),
        zero.clone(),
        ident.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
    )?;
    report("decoupled qubits", &decoupled)?;

    // A pure Hamiltonian cross coupling h¹² = diag(1, 0, 0) — the σx⊗σx
    // interaction. The criterion minimum is exactly −1, attained at the
    // computational-basis witness on both sides.
    let mut h12 = CMat::zeros(3, 3);
    h12[(0, 0)] = cx(1.0, 0.0);
    let hamiltonian = BlockCoeffMatrix::new(
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
        h12.clone(),
        zero.clone(),
    )?;
    report("pure σx⊗σx coupling", &hamiltonian)?;

    // The same coupling with local dissipation on top: the dissipative
    // blocks fight the coupling but, at this strength, do not win.
    let damped = BlockCoeffMatrix::new(
        ident.scale(cx(0.2, 0.0)),
        zero.clone(),
        ident.scale(cx(0.2, 0.0)),
        zero.clone(),
        h12,
        zero.clone(),
    )?;
    report("coupling + weak damping", &damped)?;

    println!(
        "\nThe verdict is read from the minimum against a fixed decision band,\n\
         and `certificate = true` means the no-generation answer is not just\n\
         the best minimum found but a positivity proof over all states."
    );
    Ok(())
}
