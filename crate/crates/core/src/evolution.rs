//! Exact propagation of piecewise-constant schedules, gate fidelity, and the
//! cost functionals evaluated on a schedule.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{CMatrix, CVector, HamiltonianSchedule, UnitaryGate};
use crate::spectral::{evolve_from_spectrum, hermitian_spectrum, HermitianSpectrum};
use crate::tolerance;

/// Matrix norm applied to `H(t)` at each instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MatrixNorm {
    Operator,
    Schatten(f64),
}

/// Norm applied over time to `|H(t)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeNorm {
    /// `int |H| dt`.
    L1,
    /// `(int |H|^p dt)^(1/p)`; `p = inf` is the supremum.
    Lebesgue(f64),
}

/// Eigendecompositions of every segment, in schedule order.
pub fn segment_spectra(schedule: &HamiltonianSchedule) -> Result<Vec<HermitianSpectrum>> {
    schedule
        .segments()
        .iter()
        .map(|s| hermitian_spectrum(&s.h))
        .collect()
}

/// Total evolution operator; later segments multiply on the left.
pub fn propagator(schedule: &HamiltonianSchedule) -> Result<CMatrix> {
    let spectra = segment_spectra(schedule)?;
    Ok(propagator_from_spectra(schedule, &spectra))
}

pub(crate) fn propagator_from_spectra(
    schedule: &HamiltonianSchedule,
    spectra: &[HermitianSpectrum],
) -> CMatrix {
    let d = schedule.dim();
    let hbar = schedule.hbar();
    schedule
        .segments()
        .iter()
        .zip(spectra)
        .fold(CMatrix::identity(d, d), |u, (seg, spec)| {
            evolve_from_spectrum(spec, seg.duration, hbar) * u
        })
}

pub(crate) fn check_state(psi: &CVector, dim: usize) -> Result<()> {
    if psi.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: psi.len(),
        });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > tolerance::STATE_NORM {
        return Err(Error::NormError(norm));
    }
    Ok(())
}

/// Final propagator and, if given, the evolved state `U psi0`.
pub fn propagate(
    schedule: &HamiltonianSchedule,
    psi0: Option<&CVector>,
) -> Result<(CMatrix, Option<CVector>)> {
    if let Some(psi) = psi0 {
        check_state(psi, schedule.dim())?;
    }
    let u = propagator(schedule)?;
    let psi = psi0.map(|p| &u * p);
    Ok((u, psi))
}

fn trace_overlap(u: &CMatrix, g: &UnitaryGate) -> Result<Complex64> {
    if u.shape() != g.matrix().shape() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: u.nrows(),
        });
    }
    Ok((g.matrix().adjoint() * u).trace())
}

/// `|tr(G^dag U)| / d`, which is one exactly when `U = e^{i phi} G`.
pub fn fidelity_up_to_phase(u: &CMatrix, g: &UnitaryGate) -> Result<f64> {
    Ok((trace_overlap(u, g)?.norm() / g.dim() as f64).min(1.0))
}

/// `Re tr(G^dag U) / d`, which is one only when `U = G` including phase.
pub fn exact_fidelity(u: &CMatrix, g: &UnitaryGate) -> Result<f64> {
    Ok((trace_overlap(u, g)?.re / g.dim() as f64).min(1.0))
}

/// `arg tr(G^dag U)`: the global phase best aligning `G` with `U`.
pub fn aligning_phase(u: &CMatrix, g: &UnitaryGate) -> Result<f64> {
    Ok(trace_overlap(u, g)?.arg())
}

/// Energy-time phase volume `A = sum_j dt_j (E_max - E_min)`.
pub fn phase_volume(schedule: &HamiltonianSchedule) -> Result<f64> {
    let spectra = segment_spectra(schedule)?;
    Ok(phase_volume_from_spectra(schedule, &spectra))
}

pub(crate) fn phase_volume_from_spectra(
    schedule: &HamiltonianSchedule,
    spectra: &[HermitianSpectrum],
) -> f64 {
    schedule
        .segments()
        .iter()
        .zip(spectra)
        .map(|(seg, spec)| seg.duration * spec.spread())
        .sum()
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        Err(Error::BadP(p))
    } else {
        Ok(())
    }
}

fn matrix_norm_of(spec: &HermitianSpectrum, norm: MatrixNorm) -> Result<f64> {
    match norm {
        MatrixNorm::Operator => Ok(spec.op_norm()),
        MatrixNorm::Schatten(p) => spec.schatten_norm(p),
    }
}

/// Cost functional of a schedule for the chosen matrix and time norms.
pub fn cost(schedule: &HamiltonianSchedule, matrix_norm: MatrixNorm, time_norm: TimeNorm) -> Result<f64> {
    let spectra = segment_spectra(schedule)?;
    cost_from_spectra(schedule, &spectra, matrix_norm, time_norm)
}

pub(crate) fn cost_from_spectra(
    schedule: &HamiltonianSchedule,
    spectra: &[HermitianSpectrum],
    matrix_norm: MatrixNorm,
    time_norm: TimeNorm,
) -> Result<f64> {
    if let MatrixNorm::Schatten(p) = matrix_norm {
        check_p(p)?;
    }
    let norms = spectra
        .iter()
        .map(|s| matrix_norm_of(s, matrix_norm))
        .collect::<Result<Vec<f64>>>()?;
    let durations = schedule.segments().iter().map(|s| s.duration);
    match time_norm {
        TimeNorm::L1 => Ok(durations.zip(&norms).map(|(dt, n)| dt * n).sum()),
        TimeNorm::Lebesgue(p) => {
            check_p(p)?;
            if p.is_infinite() {
                return Ok(norms.iter().cloned().fold(0.0, f64::max));
            }
            let sum: f64 = durations.zip(&norms).map(|(dt, n)| dt * n.powf(p)).sum();
            Ok(sum.powf(1.0 / p))
        }
    }
}

/// Shifts each segment by `-E_0 I` so every ground energy is zero.
///
/// Only the global phase of the evolution changes.
pub fn shift_ground(schedule: &HamiltonianSchedule) -> Result<HamiltonianSchedule> {
    let spectra = segment_spectra(schedule)?;
    let mut shifts = spectra.iter().map(|s| s.ground());
    schedule.map_matrices(|h| {
        let e0 = shifts.next().expect("one spectrum per segment");
        let d = h.nrows();
        h - CMatrix::identity(d, d) * Complex64::new(e0, 0.0)
    })
}

/// Label used for a norm order in reports: `1`, `2.5`, `inf`.
pub fn format_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".to_string()
    } else {
        format!("{p}")
    }
}

/// Every cost functional of one schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub tau: f64,
    #[serde(rename = "C_opnorm")]
    pub c_opnorm: f64,
    #[serde(rename = "A")]
    pub phase_volume: f64,
    #[serde(rename = "C_schatten")]
    pub c_schatten: BTreeMap<String, f64>,
    #[serde(rename = "C_lebesgue")]
    pub c_lebesgue: BTreeMap<String, f64>,
}

/// Evaluates `C`, `A`, and the Schatten and Lebesgue costs for each `p`.
pub fn cost_report(schedule: &HamiltonianSchedule, ps: &[f64]) -> Result<CostReport> {
    let spectra = segment_spectra(schedule)?;
    let mut c_schatten = BTreeMap::new();
    let mut c_lebesgue = BTreeMap::new();
    for &p in ps {
        c_schatten.insert(
            format_p(p),
            cost_from_spectra(schedule, &spectra, MatrixNorm::Schatten(p), TimeNorm::L1)?,
        );
        c_lebesgue.insert(
            format_p(p),
            cost_from_spectra(schedule, &spectra, MatrixNorm::Operator, TimeNorm::Lebesgue(p))?,
        );
    }
    Ok(CostReport {
        tau: schedule.total_duration(),
        c_opnorm: cost_from_spectra(schedule, &spectra, MatrixNorm::Operator, TimeNorm::L1)?,
        phase_volume: phase_volume_from_spectra(schedule, &spectra),
        c_schatten,
        c_lebesgue,
    })
}

/// Instantaneous spectra sampled on a grid.
///
/// Each segment contributes `samples + 1` rows from its start to its end
/// time inclusive, so boundaries appear twice and steps are vertical.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub energies: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.energies.first().map_or(0, Vec::len)
    }

    /// Trapezoid integral of `E_max - E_min` over the rows.
    pub fn integrated_spread(&self) -> f64 {
        let spread = |row: &Vec<f64>| row[row.len() - 1] - row[0];
        self.times
            .windows(2)
            .zip(self.energies.windows(2))
            .map(|(t, e)| 0.5 * (t[1] - t[0]) * (spread(&e[0]) + spread(&e[1])))
            .sum()
    }

    /// CSV with header `t,E_0,...,E_{d-1}`.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(sink);
        let mut header = vec!["t".to_string()];
        header.extend((0..self.dim()).map(|n| format!("E_{n}")));
        writer.write_record(&header)?;
        for (t, row) in self.times.iter().zip(&self.energies) {
            let mut record = vec![t.to_string()];
            record.extend(row.iter().map(|e| e.to_string()));
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }
}

pub fn eigenvalue_trajectories(schedule: &HamiltonianSchedule, samples_per_segment: usize) -> Result<Trajectory> {
    if samples_per_segment == 0 {
        return Err(Error::Config("samples per segment must be positive".into()));
    }
    let spectra = segment_spectra(schedule)?;
    let mut times = Vec::new();
    let mut energies = Vec::new();
    let mut t0 = 0.0;
    for (seg, spec) in schedule.segments().iter().zip(&spectra) {
        for k in 0..=samples_per_segment {
            times.push(t0 + seg.duration * k as f64 / samples_per_segment as f64);
            energies.push(spec.eigenvalues.clone());
        }
        t0 += seg.duration;
    }
    Ok(Trajectory { times, energies })
}
