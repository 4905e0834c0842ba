//! Minimum-cost synthesis for gates of any dimension.
//!
//! The cheapest protocol for `G` is the constant Hamiltonian `H = i hbar ln(G) / tau`
//! taken on the branch where the eigenphases fill the shortest covering arc
//! symmetrically, `theta_0 = -theta_{d-1}`. Its cost is `hbar L[G] / 2`.
//! Rescaling it in time by any nonnegative `f(t)` with unit mean keeps both the
//! gate and the cost.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arc::{shortest_covering_arc, EigenphaseArc};
use crate::error::{Error, Result};
use crate::evolution::{cost, fidelity_up_to_phase, propagator, MatrixNorm, TimeNorm};
use crate::gate::{HamiltonianSchedule, Segment, ShapeFunction, UnitaryGate};
use crate::spectral::{log_from_phases, unitary_spectrum};

/// A synthesized protocol and the data it was built from.
#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub schedule: HamiltonianSchedule,
    /// `hbar L[G] / 2`, the phase-free minimum.
    pub min_cost: f64,
    pub arc: EigenphaseArc,
    /// Global phase applied to `G` before taking the logarithm (zero in
    /// exact-phase mode).
    pub centering_phase: f64,
    pub exact_phase: bool,
}

/// Metadata emitted next to a synthesized schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisMetadata {
    pub min_cost: f64,
    pub arc_length: f64,
    pub centering_phase: f64,
    pub exact_phase: bool,
}

impl SynthesisResult {
    pub fn metadata(&self) -> SynthesisMetadata {
        SynthesisMetadata {
            min_cost: self.min_cost,
            arc_length: self.arc.length,
            centering_phase: self.centering_phase,
            exact_phase: self.exact_phase,
        }
    }
}

/// `hbar L[G] / 2`.
pub fn min_cost(g: &UnitaryGate, hbar: f64) -> Result<f64> {
    let arc = shortest_covering_arc(&unitary_spectrum(g)?.eigenphases)?;
    Ok(hbar * arc.length / 2.0)
}

/// Builds the constant (or shaped) optimal protocol for `g`.
///
/// With `exact_phase` the principal-branch logarithm of `g` itself is used, so
/// the schedule reproduces `g` including its global phase; its cost can then
/// exceed `min_cost`.
pub fn optimal_protocol(
    g: &UnitaryGate,
    tau: f64,
    hbar: f64,
    shape: Option<&ShapeFunction>,
    exact_phase: bool,
) -> Result<SynthesisResult> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidSchedule(format!("duration must be positive, got {tau}")));
    }
    let spectrum = unitary_spectrum(g)?;
    let arc = shortest_covering_arc(&spectrum.eigenphases)?;
    let (phases, centering_phase) = if exact_phase {
        (spectrum.eigenphases.clone(), 0.0)
    } else {
        (arc.centered_phases(&spectrum.eigenphases), arc.centering_phase)
    };
    let h = log_from_phases(&spectrum.eigenvectors, &phases, tau, hbar);
    let segments = match shape {
        None => vec![Segment::new(tau, h)],
        Some(shape) => {
            let dt = tau / shape.len() as f64;
            shape
                .samples()
                .iter()
                .map(|&f| Segment::new(dt, &h * Complex64::new(f, 0.0)))
                .collect()
        }
    };
    Ok(SynthesisResult {
        schedule: HamiltonianSchedule::new(segments, hbar)?,
        min_cost: hbar * arc.length / 2.0,
        arc,
        centering_phase,
        exact_phase,
    })
}

/// Outcome of one shaped protocol in [`shaped_family_cost_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeCheck {
    pub segments: usize,
    pub fidelity: f64,
    pub cost: f64,
    pub reference_cost: f64,
    pub passed: bool,
}

/// Verifies that every shape yields the gate at the constant protocol's cost.
pub fn shaped_family_cost_check(
    g: &UnitaryGate,
    tau: f64,
    hbar: f64,
    shapes: &[ShapeFunction],
) -> Result<Vec<ShapeCheck>> {
    const FIDELITY_TOL: f64 = 1e-8;
    const COST_TOL: f64 = 1e-9;
    let reference = optimal_protocol(g, tau, hbar, None, false)?;
    let reference_cost = cost(&reference.schedule, MatrixNorm::Operator, TimeNorm::L1)?;
    shapes
        .iter()
        .map(|shape| {
            let shaped = optimal_protocol(g, tau, hbar, Some(shape), false)?;
            let fidelity = fidelity_up_to_phase(&propagator(&shaped.schedule)?, g)?;
            let c = cost(&shaped.schedule, MatrixNorm::Operator, TimeNorm::L1)?;
            Ok(ShapeCheck {
                segments: shape.len(),
                fidelity,
                cost: c,
                reference_cost,
                passed: fidelity >= 1.0 - FIDELITY_TOL && (c - reference_cost).abs() <= COST_TOL,
            })
        })
        .collect()
}
