//! Numerical tolerances shared across the crate.
//!
//! Matrix-level tolerances are scaled by the dimension `d` where they are
//! applied, so `UNITARITY` means `|G^dag G - I|_F <= UNITARITY * d`.

/// Default unitarity tolerance for gates.
pub const UNITARITY: f64 = 1e-9;

/// Default hermiticity tolerance for Hamiltonian segments.
pub const HERMITICITY: f64 = 1e-9;

/// Gates that fail unitarity by at most this factor times the tolerance may be
/// polar-projected on explicit request.
pub const PROJECTION_FACTOR: f64 = 10.0;

/// Jacobi stops once the off-diagonal Frobenius mass falls below this
/// fraction of `|H|_F`.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Relative threshold (times `|A|`) below which eigenvalues of the Hermitian
/// part of a unitary are treated as one degenerate cluster.
pub const DEGENERACY: f64 = 1e-8;

/// Phases within this distance of `-pi` are reported as `+pi`.
pub const BRANCH_CUT: f64 = 1e-12;

/// Phases closer than this are treated as coincident on the unit circle.
pub const PHASE_COINCIDENCE: f64 = 1e-12;

/// Allowed deviation of `|psi|` from one.
pub const STATE_NORM: f64 = 1e-10;

/// Shape functions must have mean one within this tolerance.
pub const SHAPE_MEAN: f64 = 1e-12;

/// Phase-free fidelity above `1 - ALLOWED_PROTOCOL` classifies a schedule as
/// implementing the target gate.
pub const ALLOWED_PROTOCOL: f64 = 1e-8;

/// Relative slack tolerance for bound reports: a bound is satisfied when
/// `slack >= -BOUND_SLACK * max(1, |rhs|)`.
pub const BOUND_SLACK: f64 = 1e-8;
