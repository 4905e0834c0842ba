//! Minimum energetic cost of unitary gates and the speed limits around it.
//!
//! A gate `G` can be reached by many Hamiltonian protocols `H(t)`. The cost
//! `C = int |H(t)| dt` (operator norm) is bounded below by `hbar L[G] / 2`,
//! where `L[G]` is the length of the shortest arc of the unit circle that
//! contains every eigenvalue of `G`. A constant Hamiltonian built from a
//! phase-centered matrix logarithm of `G` attains the bound, and so does any
//! nonnegative time reparameterization of it.
//!
//! ```
//! use qslforge::{named_gate, min_cost, optimal_protocol, propagator, fidelity_up_to_phase};
//!
//! let h = named_gate("H", &[]).unwrap();
//! let protocol = optimal_protocol(&h, 1.0, 1.0, None, false).unwrap();
//! let u = propagator(&protocol.schedule).unwrap();
//! assert!(fidelity_up_to_phase(&u, &h).unwrap() > 1.0 - 1e-12);
//! assert!((min_cost(&h, 1.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
//! ```
//!
//! The crate is organized as
//!
//! * [`gate`] and [`io`]: gates, schedules, named gates, JSON formats
//! * [`spectral`]: Hermitian and unitary eigendecompositions, `exp`, `ln`, norms
//! * [`arc`]: shortest covering arcs and phase centering
//! * [`evolution`]: propagation, fidelity, cost functionals, phase volume
//! * [`qubit`]: Bloch-sphere picture for single-qubit gates
//! * [`synthesis`]: optimal protocols in any dimension
//! * [`bounds`]: state and gate speed limits as checked reports
//! * [`random`] and [`sweep`]: seeded randomized audits

pub mod arc;
pub mod bounds;
pub mod error;
pub mod evolution;
pub mod gate;
pub mod io;
pub mod qubit;
pub mod random;
pub mod spectral;
pub mod sweep;
pub mod synthesis;
pub mod tolerance;

pub use arc::{arc_length, phase_center, shortest_covering_arc, EigenphaseArc};
pub use bounds::{
    bures_angle, check_area_bound, check_cost_bound, check_gate_bounds, check_gate_bounds_with,
    energy_stats, tau_qsl_schatten, tau_qsl_state, tau_qsl_state_independent, BoundReport,
    EnergyStats, SpreadSpeedLimit, StateSpeedLimit,
};
pub use error::{Error, Result};
pub use evolution::{
    aligning_phase, cost, cost_report, eigenvalue_trajectories, exact_fidelity, fidelity_up_to_phase,
    phase_volume, propagate, propagator, shift_ground, CostReport, MatrixNorm, TimeNorm, Trajectory,
};
pub use gate::{
    named_gate, pauli, su2_normalize, wrap_phase, CMatrix, CVector, HamiltonianSchedule, RotationParams,
    Segment, ShapeFunction, ShapeKind, UnitaryGate,
};
pub use qubit::{
    min_cost_single, omega_cost, optimal_qubit_protocol, pauli_decompose, rotation_params,
    strip_identity_component, worst_case_angle, PauliDecomposition,
};
pub use spectral::{
    evolve_exp, hermitian_spectrum, op_norm, schatten_norm, unitary_log, unitary_spectrum,
    HermitianSpectrum, PhaseBranch, UnitarySpectrum,
};
pub use sweep::{run_sweep, SweepConfig, SweepReport};
pub use synthesis::{min_cost, optimal_protocol, shaped_family_cost_check, SynthesisResult};
