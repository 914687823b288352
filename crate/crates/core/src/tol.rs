//! Numeric tolerances used across the crate.
//!
//! Coefficients are `f64`. Operations that are closed over the integers
//! (ring arithmetic, truncated substitution of integer polynomials) are
//! compared exactly; everything else uses the tolerances below.

/// Absolute tolerance for coefficient comparisons in float mode.
pub const COEFF_ABS: f64 = 1e-9;

/// Tolerance for chart-transition consistency checks (cocycle, double
/// trivialization with generic floating charts).
pub const TRANSITION_ABS: f64 = 1e-6;

/// Round-trip tolerance for numeric diffeomorphism inverses.
pub const DIFFEO_ROUNDTRIP: f64 = 1e-6;

/// Convergence tolerance of the damped Newton inversion.
pub const NEWTON_TOL: f64 = 1e-10;

/// Iteration cap of the damped Newton inversion.
pub const NEWTON_MAX_ITER: usize = 50;

/// Step for central finite differences when cross-checking Taylor data.
pub const FD_STEP: f64 = 1e-4;

/// Relative error allowed between Taylor coefficients of order <= 2 and
/// their central finite-difference estimates.
pub const FD_REL: f64 = 1e-6;

/// Pivot threshold below which a matrix is treated as singular.
pub const SINGULAR_PIVOT: f64 = 1e-9;
