//! Speed-limit inequalities for states, Hamiltonians and propagated schedules.
//!
//! Every check produces a [`BoundReport`] with `lhs >= rhs` expected. Bounds
//! on time report the actual duration as `lhs` and the limit as `rhs`.

use serde::{Deserialize, Serialize};

use crate::arc::shortest_covering_arc;
use crate::error::{Error, Result};
use crate::evolution::{
    check_state, cost_from_spectra, exact_fidelity, fidelity_up_to_phase, format_p,
    phase_volume_from_spectra, propagator_from_spectra, segment_spectra, shift_ground, MatrixNorm,
    TimeNorm,
};
use crate::gate::{CMatrix, CVector, HamiltonianSchedule, UnitaryGate};
use crate::spectral::{hermitian_spectrum, schatten_of_values, unitary_spectrum};
use crate::tolerance;

/// One evaluated inequality `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: String,
    #[serde(with = "extended_f64")]
    pub lhs: f64,
    #[serde(with = "extended_f64")]
    pub rhs: f64,
    #[serde(with = "extended_f64")]
    pub slack: f64,
    pub satisfied: bool,
    /// Set when the limit itself is infinite (a stationary state, a zero
    /// spread or a zero norm).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unbounded: bool,
}

impl BoundReport {
    /// Satisfied when `lhs - rhs >= -1e-8 max(1, |rhs|)`.
    pub fn new(bound: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let slack = lhs - rhs;
        let unbounded = rhs.is_infinite() && rhs > 0.0;
        let satisfied = if unbounded {
            lhs == f64::INFINITY
        } else {
            slack >= -tolerance::BOUND_SLACK * rhs.abs().max(1.0)
        };
        BoundReport {
            bound: bound.into(),
            lhs,
            rhs,
            slack,
            satisfied,
            unbounded,
        }
    }

    /// Satisfied only when `lhs > rhs`.
    pub fn strict(bound: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let mut report = BoundReport::new(bound, lhs, rhs);
        report.satisfied = lhs > rhs;
        report
    }
}

/// Serializes non-finite values as `"inf"`, `"-inf"` or `"nan"`.
pub(crate) mod extended_f64 {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("expected a number or \"inf\", got {other:?}"))),
            },
        }
    }
}

/// Energy moments of a state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyStats {
    /// `<E> = <psi|H|psi>`.
    pub mean: f64,
    /// `Delta E`.
    pub stddev: f64,
    /// `<E> - E_0`.
    pub ground_gap: f64,
    /// `E_{d-1} - E_0`.
    pub spread: f64,
}

/// Bures angle `arccos |<psi1|psi2>|` in `[0, pi/2]`.
pub fn bures_angle(psi1: &CVector, psi2: &CVector) -> Result<f64> {
    check_state(psi1, psi1.len())?;
    check_state(psi2, psi1.len())?;
    Ok(psi1.dotc(psi2).norm().min(1.0).acos())
}

pub fn energy_stats(h: &CMatrix, psi: &CVector) -> Result<EnergyStats> {
    check_state(psi, h.nrows())?;
    let spectrum = hermitian_spectrum(h)?;
    let h_psi = h * psi;
    let mean = psi.dotc(&h_psi).re;
    // |(H - <E>) psi| avoids the cancellation in <H^2> - <E>^2
    let stddev = (h_psi - psi * num_complex::Complex64::new(mean, 0.0)).norm();
    Ok(EnergyStats {
        mean,
        stddev,
        ground_gap: (mean - spectrum.ground()).max(0.0),
        spread: spectrum.spread(),
    })
}

/// Denominators below this fraction of the energy scale count as zero.
const DEGENERATE: f64 = 1e-12;

fn time_limit(numerator: f64, denominator: f64, scale: f64) -> f64 {
    if numerator == 0.0 {
        0.0
    } else if denominator <= DEGENERATE * scale.max(1.0) {
        f64::INFINITY
    } else {
        numerator / denominator
    }
}

/// Minimum times for a state to turn through a Bures angle `theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateSpeedLimit {
    /// `hbar theta / Delta E`.
    pub mandelstam_tamm: f64,
    /// `hbar theta / (<E> - E_0)`.
    pub margolus_levitin: f64,
    /// The larger of the two.
    pub unified: f64,
}

impl StateSpeedLimit {
    /// Compares an actual evolution time against each limit.
    pub fn check(&self, tau: f64) -> [BoundReport; 3] {
        [
            BoundReport::new("mandelstam_tamm", tau, self.mandelstam_tamm),
            BoundReport::new("margolus_levitin", tau, self.margolus_levitin),
            BoundReport::new("unified", tau, self.unified),
        ]
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(Error::BadParams(format!("theta must lie in [0, pi/2], got {theta}")));
    }
    Ok(())
}

/// State-dependent limits. A stationary state gives infinite limits.
pub fn tau_qsl_state(h: &CMatrix, psi: &CVector, theta: f64, hbar: f64) -> Result<StateSpeedLimit> {
    check_theta(theta)?;
    let stats = energy_stats(h, psi)?;
    let scale = stats.spread.max(stats.mean.abs());
    let mandelstam_tamm = time_limit(hbar * theta, stats.stddev, scale);
    let margolus_levitin = time_limit(hbar * theta, stats.ground_gap, scale);
    Ok(StateSpeedLimit {
        mandelstam_tamm,
        margolus_levitin,
        unified: mandelstam_tamm.max(margolus_levitin),
    })
}

/// State-independent limits from the spectral spread.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpreadSpeedLimit {
    /// `2 hbar theta / (E_{d-1} - E_0)`.
    pub mandelstam_tamm: f64,
    /// `hbar theta / (E_{d-1} - E_0)`, never tighter than the MT form.
    pub margolus_levitin: f64,
}

impl SpreadSpeedLimit {
    pub fn check(&self, tau: f64) -> [BoundReport; 2] {
        [
            BoundReport::new("mandelstam_tamm_spread", tau, self.mandelstam_tamm),
            BoundReport::new("margolus_levitin_spread", tau, self.margolus_levitin),
        ]
    }
}

pub fn tau_qsl_state_independent(h: &CMatrix, theta: f64, hbar: f64) -> Result<SpreadSpeedLimit> {
    check_theta(theta)?;
    let spectrum = hermitian_spectrum(h)?;
    let spread = spectrum.spread();
    let scale = spectrum.op_norm();
    Ok(SpreadSpeedLimit {
        mandelstam_tamm: time_limit(2.0 * hbar * theta, spread, scale),
        margolus_levitin: time_limit(hbar * theta, spread, scale),
    })
}

/// `hbar theta / |H|_p`.
pub fn tau_qsl_schatten(h: &CMatrix, theta: f64, p: f64, hbar: f64) -> Result<f64> {
    check_theta(theta)?;
    let spectrum = hermitian_spectrum(h)?;
    let norm = spectrum.schatten_norm(p)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(if norm == 0.0 { f64::INFINITY } else { hbar * theta / norm })
}

fn final_state(
    schedule: &HamiltonianSchedule,
    spectra: &[crate::spectral::HermitianSpectrum],
    psi0: &CVector,
) -> Result<CVector> {
    check_state(psi0, schedule.dim())?;
    Ok(propagator_from_spectra(schedule, spectra) * psi0)
}

/// Phase volume against twice the Bures angle travelled: `A >= 2 hbar theta`.
pub fn check_area_bound(schedule: &HamiltonianSchedule, psi0: &CVector) -> Result<BoundReport> {
    let spectra = segment_spectra(schedule)?;
    let psi = final_state(schedule, &spectra, psi0)?;
    let theta = bures_angle(psi0, &psi)?;
    Ok(BoundReport::new(
        "area",
        phase_volume_from_spectra(schedule, &spectra),
        2.0 * schedule.hbar() * theta,
    ))
}

/// Schatten-p cost against the Bures angle travelled: `int |H|_p dt >= hbar theta`.
pub fn check_cost_bound(schedule: &HamiltonianSchedule, psi0: &CVector, p: f64) -> Result<BoundReport> {
    let spectra = segment_spectra(schedule)?;
    let psi = final_state(schedule, &spectra, psi0)?;
    let theta = bures_angle(psi0, &psi)?;
    Ok(BoundReport::new(
        format!("cost[p={}]", format_p(p)),
        cost_from_spectra(schedule, &spectra, MatrixNorm::Schatten(p), TimeNorm::L1)?,
        schedule.hbar() * theta,
    ))
}

/// Gate bounds for a schedule implementing `g`, using the default
/// allowed-protocol threshold.
pub fn check_gate_bounds(
    schedule: &HamiltonianSchedule,
    g: &UnitaryGate,
    ps: &[f64],
    exact_phase: bool,
) -> Result<Vec<BoundReport>> {
    check_gate_bounds_with(schedule, g, ps, exact_phase, tolerance::ALLOWED_PROTOCOL)
}

/// Evaluates, for a schedule whose propagator matches `g`:
///
/// * `phase_volume_arc`: `A >= hbar L[G]`
/// * `cost_arc`: `C >= hbar L[G] / 2`
/// * `sandwich_lower`: `C >= A / 2`
/// * `sandwich_upper`: `A >= C` after shifting every ground energy to zero
/// * `lebesgue[p=..]`: `C_p >= (hbar L / 2) tau^{(1-p)/p}`
/// * `schatten[p=..]`: `int |H|_p dt >= hbar |theta|_p`, only with `exact_phase`
///
/// `threshold` is the allowed infidelity.
pub fn check_gate_bounds_with(
    schedule: &HamiltonianSchedule,
    g: &UnitaryGate,
    ps: &[f64],
    exact_phase: bool,
    threshold: f64,
) -> Result<Vec<BoundReport>> {
    if g.dim() != schedule.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: schedule.dim(),
        });
    }
    let spectra = segment_spectra(schedule)?;
    let u = propagator_from_spectra(schedule, &spectra);
    let fidelity = fidelity_up_to_phase(&u, g)?;
    if fidelity < 1.0 - threshold {
        return Err(Error::NotAllowedProtocol {
            fidelity,
            reason: "schedule does not implement the gate up to global phase".into(),
        });
    }
    if exact_phase {
        let exact = exact_fidelity(&u, g)?;
        if exact < 1.0 - threshold {
            return Err(Error::NotAllowedProtocol {
                fidelity: exact,
                reason: "the Schatten bound requires the gate to be implemented exactly, \
                         including its global phase"
                    .into(),
            });
        }
    }

    let hbar = schedule.hbar();
    let tau = schedule.total_duration();
    let gate_spectrum = unitary_spectrum(g)?;
    let arc = shortest_covering_arc(&gate_spectrum.eigenphases)?.length;
    let a = phase_volume_from_spectra(schedule, &spectra);
    let c = cost_from_spectra(schedule, &spectra, MatrixNorm::Operator, TimeNorm::L1)?;
    let shifted = shift_ground(schedule)?;
    let c_shifted = cost_from_spectra(
        &shifted,
        &segment_spectra(&shifted)?,
        MatrixNorm::Operator,
        TimeNorm::L1,
    )?;

    let mut reports = vec![
        BoundReport::new("phase_volume_arc", a, hbar * arc),
        BoundReport::new("cost_arc", c, hbar * arc / 2.0),
        BoundReport::new("sandwich_lower", c, a / 2.0),
        BoundReport::new("sandwich_upper", a, c_shifted),
    ];
    for &p in ps {
        let c_p = cost_from_spectra(schedule, &spectra, MatrixNorm::Operator, TimeNorm::Lebesgue(p))?;
        let exponent = if p.is_infinite() { -1.0 } else { (1.0 - p) / p };
        reports.push(BoundReport::new(
            format!("lebesgue[p={}]", format_p(p)),
            c_p,
            hbar * arc / 2.0 * tau.powf(exponent),
        ));
    }
    if exact_phase {
        for &p in ps {
            reports.push(BoundReport::new(
                format!("schatten[p={}]", format_p(p)),
                cost_from_spectra(schedule, &spectra, MatrixNorm::Schatten(p), TimeNorm::L1)?,
                hbar * schatten_of_values(&gate_spectrum.eigenphases, p)?,
            ));
        }
    }
    Ok(reports)
}
