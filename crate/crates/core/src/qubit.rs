//! Single-qubit gates as Bloch-sphere rotations.
//!
//! A qubit Hamiltonian `u0 I + u.sigma` rotates the Bloch sphere with angular
//! velocity `omega = 2u / hbar`; its operator norm is `|u0| + |u|`. The
//! cheapest way to realize a rotation `R(n, alpha)` is to spin about the fixed
//! axis `n`, at total cost `hbar alpha / 2`.

use num_complex::Complex64;

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::evolution::{cost, MatrixNorm, TimeNorm};
use crate::gate::{pauli, su2_normalize, CMatrix, HamiltonianSchedule, RotationParams, Segment, ShapeFunction, UnitaryGate};

/// Per-segment Pauli coefficients of a qubit schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliDecomposition {
    /// `u0 = tr(h) / 2`.
    pub identity: Vec<f64>,
    /// `u_k = tr(sigma_k h) / 2`.
    pub vector: Vec<[f64; 3]>,
    pub durations: Vec<f64>,
    pub hbar: f64,
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl PauliDecomposition {
    /// `omega = 2 u / hbar` for each segment.
    pub fn angular_velocity(&self) -> Vec<[f64; 3]> {
        let k = 2.0 / self.hbar;
        self.vector.iter().map(|u| [k * u[0], k * u[1], k * u[2]]).collect()
    }

    /// `u0 I + u.sigma` for segment `j`.
    pub fn segment_matrix(&self, j: usize) -> CMatrix {
        let [sx, sy, sz] = pauli();
        let u = self.vector[j];
        CMatrix::identity(2, 2) * Complex64::new(self.identity[j], 0.0)
            + sx * Complex64::new(u[0], 0.0)
            + sy * Complex64::new(u[1], 0.0)
            + sz * Complex64::new(u[2], 0.0)
    }

    /// Largest angle between the rotation axes of any two segments with a
    /// nonzero vector part.
    pub fn axis_dispersion(&self) -> f64 {
        let axes: Vec<[f64; 3]> = self
            .vector
            .iter()
            .filter_map(|u| {
                let n = norm3(u);
                (n > 0.0).then(|| [u[0] / n, u[1] / n, u[2] / n])
            })
            .collect();
        let mut widest = 0.0_f64;
        for (i, a) in axes.iter().enumerate() {
            for b in &axes[i + 1..] {
                let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
                widest = widest.max(dot.acos());
            }
        }
        widest
    }
}

fn require_qubit(dim: usize) -> Result<()> {
    if dim == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 2,
            found: dim,
        })
    }
}

fn require_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSchedule(format!("duration must be positive, got {tau}")))
    }
}

pub fn pauli_decompose(schedule: &HamiltonianSchedule) -> Result<PauliDecomposition> {
    require_qubit(schedule.dim())?;
    let sigma = pauli();
    let mut identity = Vec::with_capacity(schedule.segments().len());
    let mut vector = Vec::with_capacity(schedule.segments().len());
    for seg in schedule.segments() {
        identity.push(seg.h.trace().re / 2.0);
        let coeff = |k: usize| (&sigma[k] * &seg.h).trace().re / 2.0;
        vector.push([coeff(0), coeff(1), coeff(2)]);
    }
    Ok(PauliDecomposition {
        identity,
        vector,
        durations: schedule.segments().iter().map(|s| s.duration).collect(),
        hbar: schedule.hbar(),
    })
}

/// Axis and angle of the rotation realized by `g`, with `alpha` in `[0, pi]`.
///
/// For `alpha = 0` the axis is conventionally `z`.
pub fn rotation_params(g: &UnitaryGate) -> Result<RotationParams> {
    let (normalized, _) = su2_normalize(g)?;
    let a = normalized.matrix()[(0, 0)];
    let b = normalized.matrix()[(0, 1)];
    let v = [b.im, b.re, a.im];
    // |v| = sin(alpha / 2) and Re(a) = cos(alpha / 2)
    let s = norm3(&v);
    let angle = 2.0 * s.atan2(a.re.max(0.0));
    if s == 0.0 || angle == 0.0 {
        return Ok(RotationParams {
            axis: [0.0, 0.0, 1.0],
            angle: 0.0,
        });
    }
    Ok(RotationParams {
        axis: [-v[0] / s, -v[1] / s, -v[2] / s],
        angle,
    })
}

/// `hbar alpha / 2`.
pub fn min_cost_single(g: &UnitaryGate, hbar: f64) -> Result<f64> {
    Ok(hbar * rotation_params(g)?.angle / 2.0)
}

/// `alpha / 2`, the largest Bures angle any pure state is moved through.
pub fn worst_case_angle(g: &UnitaryGate) -> Result<f64> {
    Ok(rotation_params(g)?.angle / 2.0)
}

/// Constant-axis protocol `h = f_j (hbar alpha / 2 tau) n.sigma`.
///
/// Without a shape this is a single segment of length `tau`; with a shape of
/// `M` samples it is `M` equal segments. The gate is reproduced up to global
/// phase.
pub fn optimal_qubit_protocol(
    g: &UnitaryGate,
    tau: f64,
    hbar: f64,
    shape: Option<&ShapeFunction>,
) -> Result<HamiltonianSchedule> {
    require_qubit(g.dim())?;
    require_tau(tau)?;
    let rot = rotation_params(g)?;
    let [sx, sy, sz] = pauli();
    let [n1, n2, n3] = rot.axis;
    let h = (sx * Complex64::new(n1, 0.0) + sy * Complex64::new(n2, 0.0) + sz * Complex64::new(n3, 0.0))
        * Complex64::new(hbar * rot.angle / (2.0 * tau), 0.0);
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
    HamiltonianSchedule::new(segments, hbar)
}

/// `(hbar / 2) int |omega| dt = sum_j dt_j |u_j|`; the identity part is ignored.
pub fn omega_cost(schedule: &HamiltonianSchedule) -> Result<f64> {
    let dec = pauli_decompose(schedule)?;
    Ok(dec.durations.iter().zip(&dec.vector).map(|(dt, u)| dt * norm3(u)).sum())
}

/// `int |omega| dt` in radians: the total angle swept by the rotation.
pub fn rotation_path_length(schedule: &HamiltonianSchedule) -> Result<f64> {
    Ok(2.0 * omega_cost(schedule)? / schedule.hbar())
}

/// Drops the `u0 I` part of every segment.
///
/// Returns the stripped schedule and the global phase `-(1/hbar) int u0 dt`
/// that separates the two evolutions.
pub fn strip_identity_component(schedule: &HamiltonianSchedule) -> Result<(HamiltonianSchedule, f64)> {
    let dec = pauli_decompose(schedule)?;
    let phase = -dec
        .durations
        .iter()
        .zip(&dec.identity)
        .map(|(dt, u0)| dt * u0)
        .sum::<f64>()
        / dec.hbar;
    let mut offsets = dec.identity.iter();
    let stripped = schedule.map_matrices(|h| {
        let u0 = *offsets.next().expect("one coefficient per segment");
        h - CMatrix::identity(2, 2) * Complex64::new(u0, 0.0)
    })?;
    Ok((stripped, phase))
}

/// Gate speed limit `tau >= hbar alpha / (2 <|H|>_t)` for a schedule that
/// implements `g`.
pub fn gate_speed_limit(g: &UnitaryGate, schedule: &HamiltonianSchedule) -> Result<BoundReport> {
    require_qubit(g.dim())?;
    let tau = schedule.total_duration();
    let mean_norm = cost(schedule, MatrixNorm::Operator, TimeNorm::L1)? / tau;
    let needed = schedule.hbar() * rotation_params(g)?.angle / 2.0;
    let rhs = if needed == 0.0 { 0.0 } else { needed / mean_norm };
    Ok(BoundReport::new("gate_qsl_time", tau, rhs))
}
