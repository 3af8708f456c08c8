//! The brute-force oracle: certifying verdicts without the criterion.
//!
//! The oracle answers the generation question by direct computation:
//! sample initial product states, evolve each one exactly, and eigensolve
//! the partial transpose of the result. It runs in two modes —
//!
//! - `FiniteStep`: evolve over a small explicit time step; truthful about
//!   everything that happens by that time, including higher-order effects;
//! - `LeadingOrderRate`: the exact rate at which the smallest partial-
//!   transpose eigenvalue departs from zero, the right question when
//!   checking a leading-order criterion.
//!
//! Run with `cargo run --example oracle_certification`.

use entgen::coeffs::EqualTimeCorr;
use entgen::criterion::{decide_equal_time, DecideOptions};
use entgen::oracle::{certify_equal_time, OracleMode, OracleOptions, Sampling};
use entgen::qlin::{cx, CMat};
use entgen::Result;

fn certify_both_ways(label: &str, d: &EqualTimeCorr) -> Result<()> {
    println!("{label}");
    let finite = certify_equal_time(
        d,
        &OracleOptions { sampling: Sampling::Hybrid, dt: None, mode: OracleMode::FiniteStep },
    )?;
    println!(
        "    finite step (dt = {:.3e}): min PT eigenvalue = {:+.6e}  → {}",
        finite.dt_used,
        finite.min_pt_eig,
        finite.verdict.as_str()
    );
    let rate = certify_equal_time(
        d,
        &OracleOptions {
            sampling: Sampling::Hybrid,
            dt: None,
            mode: OracleMode::LeadingOrderRate,
        },
    )?;
    println!(
        "    leading-order rate:       min departure rate = {:+.6e}  → {}",
        rate.min_pt_eig,
        rate.verdict.as_str()
    );

    // The independent criterion decision, for comparison.
    let report = decide_equal_time(d, &DecideOptions::default())?;
    println!(
        "    criterion:                value = {:+.6e}           → {}\n",
        report.value,
        report.verdict.as_str()
    );
    Ok(())
}

fn main() -> Result<()> {
    println!("brute-force certification, two modes\n");

    // A generating model: the reference common bath with maximal imaginary
    // part. All three numbers agree on the sign.
    let i = cx(0.0, 1.0);
    let delta = CMat::from_rows(&[
        vec![cx(1.0, 0.0), i, cx(0.0, 0.0)],
        vec![-i, cx(1.0, 0.0), cx(0.0, 0.0)],
        vec![cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)],
    ])?;
    certify_both_ways("entangling common bath:", &EqualTimeCorr::common_bath(&delta)?)?;

    // A clean model: the same bath stripped to its real part. Both oracle
    // modes and the criterion report no generation.
    let real_delta = CMat::from_fn(3, 3, |r, c| cx(delta[(r, c)].re, 0.0));
    certify_both_ways("its real part only:", &EqualTimeCorr::common_bath(&real_delta)?)?;

    println!(
        "The two oracle modes ask slightly different questions — \"entangled\n\
         by time dt?\" versus \"entangling at leading order?\" — and the\n\
         criterion must be judged against the second. Here both agree with\n\
         the criterion on both models."
    );
    Ok(())
}
