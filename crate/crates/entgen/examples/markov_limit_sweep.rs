//! The memory-to-memoryless limit, and why its two limits do not commute.
//!
//! A delta-approximant kernel family `d_ε(t) = ε·a(t/ε) + b(t/ε) + c(t/ε)/ε`
//! concentrates into white noise as ε → 0: the `c` term becomes a Dirac
//! delta while the `a` term vanishes. But at any *fixed* ε > 0 the
//! equal-time value `d_ε(0)` diverges like `c(0)/ε` — so the short-time
//! quadratic-regime coefficient blows up as `1/ε²` even though the white-
//! noise limit itself is perfectly tame. Sending t → 0 before ε → 0 and
//! after give different answers.
//!
//! Run with `cargo run --example markov_limit_sweep`.

use entgen::baths::{DeltaFamily, DeltaProfile};
use entgen::criterion::{decide_equal_time, DecideOptions};
use entgen::Result;

fn main() -> Result<()> {
    let base = DeltaFamily::bundled(DeltaProfile::Exponential, 1.0)?;
    let (a0, b0, c0) = base.origin_components();
    println!(
        "delta-approximant family, exponential profiles: a(0) = {a0}, b(0) = {b0}, c(0) = {c0}\n"
    );

    println!("{:>8}  {:>12}  {:>16}", "ε", "d_ε(0)", "criterion value");
    let opts = DecideOptions::default();
    let mut values = Vec::new();
    for eps in [2.0, 1.0, 0.5, 0.25, 0.125, 0.0625] {
        let family = base.with_epsilon(eps)?;
        let d0 = family.value(0.0);
        // Promote the scalar family to the reference equal-time matrix and
        // decide: the minimum scales as −d_ε(0)².
        let report = decide_equal_time(&family.reference_equal_time()?, &opts)?;
        println!("{eps:>8.4}  {d0:>12.6}  {:>16.6e}", report.value);
        values.push((eps, report.value));
    }

    // Each halving of ε should roughly quadruple |value| once the 1/ε term
    // dominates: check the last ratio.
    let (_, v_prev) = values[values.len() - 2];
    let (_, v_last) = values[values.len() - 1];
    let ratio = v_last / v_prev;
    println!("\n|value| growth per ε halving at the small-ε end: ×{ratio:.2} (→ 4 as ε → 0)");

    // The three-component structure is recoverable from the sweep itself:
    // d_ε(0) at three scales pins (a(0), b(0), c(0)) exactly.
    let eps3 = [1.0, 0.5, 0.25];
    let d: Vec<f64> = eps3
        .iter()
        .map(|&e| base.with_epsilon(e).map(|f| f.value(0.0)))
        .collect::<Result<_>>()?;
    // Solve [ε, 1, 1/ε]·(a₀, b₀, c₀)ᵀ = d_ε(0) for the three scales.
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let m = [[1.0, 1.0, 1.0], [0.5, 1.0, 2.0], [0.25, 1.0, 4.0]];
    let d0 = det(m);
    let mut fit = [0.0; 3];
    for col in 0..3 {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = d[row];
        }
        fit[col] = det(mc) / d0;
    }
    println!(
        "three-scale fit recovers (a(0), b(0), c(0)) = ({:.6}, {:.6}, {:.6})",
        fit[0], fit[1], fit[2]
    );
    Ok(())
}
