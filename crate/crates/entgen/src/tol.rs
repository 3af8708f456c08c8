//! Centralized numerical tolerances.
//!
//! Every tolerance that shapes an observable decision (Hermiticity checks,
//! positive-semidefiniteness margins, verdict thresholds, oracle floors)
//! lives here with a one-line justification, so the knobs are auditable in
//! one place instead of scattered through call sites.

/// Relative Hermiticity tolerance: a matrix is accepted as Hermitian when
/// the largest `|a_ij - conj(a_ji)|` is at most this times `max(1, ‖a‖_F)`.
pub const HERMITICITY_REL: f64 = 1e-10;

/// Relative floor for positive-semidefiniteness: eigenvalues down to
/// `-PSD_REL * max(1, ‖m‖_F)` are treated as zero (rounding of true zeros).
pub const PSD_REL: f64 = 1e-10;

/// Off-diagonal Frobenius target for the Jacobi eigensolver, relative to
/// `max(1, ‖m‖_F)`; quadratic convergence reaches this in a few sweeps.
pub const JACOBI_OFF_REL: f64 = 1e-15;

/// Hard cap on Jacobi sweeps; hitting it signals an internal fault, not a
/// tolerance issue (6×6 Hermitian matrices converge in well under ten).
pub const JACOBI_MAX_SWEEPS: usize = 40;

/// Default half-width of the boundary band for criterion verdicts: values
/// within this of zero are only classified as definite when a
/// positive-semidefiniteness certificate settles the direction.
pub const DECISION_TOL: f64 = 1e-9;

/// Validation tolerance for density matrices: trace distance from 1 and
/// entry-wise Hermiticity violations up to this are accepted.
pub const STATE_TOL: f64 = 1e-12;

/// Eigenvalue floor for density-matrix positivity checks (absolute).
pub const STATE_EIG_FLOOR: f64 = -1e-10;

/// Relative factor for the oracle's negativity floor: an evolved separable
/// state counts as witnessing generation only when some partial-transpose
/// eigenvalue drops below `-(ORACLE_REL * scale)`, with `scale` the size of
/// the first nontrivial update (see `oracle::certify`).
pub const ORACLE_REL: f64 = 1e-12;

/// Absolute floor under the oracle threshold so that models with tiny or
/// purely Hamiltonian generators keep a meaningful rounding margin.
pub const ORACLE_ABS_FLOOR: f64 = 4e-15;

/// Convergence tolerance on the Nelder–Mead simplex (function-value spread
/// and simplex diameter).
pub const SIMPLEX_TOL: f64 = 1e-12;
