//! Shortest covering arcs of eigenphases on the unit circle.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gate::{wrap_phase, UnitaryGate};
use crate::spectral::unitary_spectrum;
use crate::tolerance;

const TWO_PI: f64 = 2.0 * PI;

/// The shortest arc `[start, start + length]` (counterclockwise, modulo
/// `2 pi`) containing every phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenphaseArc {
    /// Arc length `L` in `[0, 2 pi)`.
    pub length: f64,
    /// Phase at which the arc begins.
    pub start: f64,
    /// `phi` such that the arc of `e^{i phi} G` is symmetric about zero.
    pub centering_phase: f64,
}

impl EigenphaseArc {
    pub fn midpoint(&self) -> f64 {
        self.start + self.length / 2.0
    }

    /// Phases shifted by the centering phase, reported in `[-L/2, L/2]`.
    pub fn centered_phases(&self, phases: &[f64]) -> Vec<f64> {
        let half = self.length / 2.0;
        phases
            .iter()
            .map(|&theta| {
                let mut offset = (theta - self.start).rem_euclid(TWO_PI);
                // phases sitting on `start` may land just below 2 pi
                if offset > (self.length + TWO_PI) / 2.0 {
                    offset -= TWO_PI;
                }
                (offset - half).clamp(-half, half)
            })
            .collect()
    }
}

/// Shortest covering arc of `phases` (radians, any branch).
///
/// The arc is the complement of the largest circular gap between adjacent
/// sorted phases. Among gaps equal to the maximum (within `1e-12`) the one
/// after which the arc starts at the smallest phase is chosen.
pub fn shortest_covering_arc(phases: &[f64]) -> Result<EigenphaseArc> {
    if phases.is_empty() {
        return Err(Error::EmptyInput);
    }
    if phases.iter().any(|p| !p.is_finite()) {
        return Err(Error::Parse("non-finite phase".into()));
    }
    let mut sorted: Vec<f64> = phases.iter().map(|&p| wrap_phase(p)).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let lowest = sorted[0];
    let highest = sorted[n - 1];

    if highest - lowest <= tolerance::PHASE_COINCIDENCE {
        return Ok(EigenphaseArc {
            length: 0.0,
            start: lowest,
            centering_phase: wrap_phase(-lowest),
        });
    }

    // gap k runs from sorted[k] to sorted[k + 1]; the last one wraps around
    let gap = |k: usize| {
        if k + 1 < n {
            sorted[k + 1] - sorted[k]
        } else {
            sorted[0] + TWO_PI - sorted[n - 1]
        }
    };
    let widest = (0..n).map(gap).fold(f64::NEG_INFINITY, f64::max);
    let is_widest = |k: usize| gap(k) >= widest - tolerance::PHASE_COINCIDENCE;
    // the wrap gap makes the arc start at the smallest phase, so it wins ties
    let chosen = if is_widest(n - 1) {
        n - 1
    } else {
        (0..n - 1).find(|&k| is_widest(k)).expect("some gap is the widest")
    };
    let end = sorted[chosen];
    let start = sorted[(chosen + 1) % n];
    let length = (end - start).rem_euclid(TWO_PI);
    Ok(EigenphaseArc {
        length,
        start,
        centering_phase: wrap_phase(-(start + length / 2.0)),
    })
}

/// `L[G]`.
pub fn arc_length(g: &UnitaryGate) -> Result<f64> {
    Ok(shortest_covering_arc(&unitary_spectrum(g)?.eigenphases)?.length)
}

/// Multiplies `g` by the global phase that centers its covering arc on zero.
pub fn phase_center(g: &UnitaryGate) -> Result<(UnitaryGate, f64)> {
    let spectrum = unitary_spectrum(g)?;
    let arc = shortest_covering_arc(&spectrum.eigenphases)?;
    Ok((g.with_global_phase(arc.centering_phase), arc.centering_phase))
}
