//! JSON wire formats for gates and schedules.
//!
//! Gate: `{"dim": d, "matrix": [[[re, im], ...], ...]}` (row-major).
//! Schedule: `{"hbar": h, "segments": [{"duration": t, "h": <matrix>}, ...]}`.
//! `hbar` defaults to 1 when absent.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{CMatrix, HamiltonianSchedule, Segment, UnitaryGate};
use crate::tolerance;

/// Row-major list of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateJson {
    pub dim: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentJson {
    pub duration: f64,
    pub h: MatrixJson,
}

fn default_hbar() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleJson {
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    pub segments: Vec<SegmentJson>,
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Parses a square matrix, checking every row has `dim` entries.
pub fn matrix_from_json(rows: &MatrixJson, dim: usize) -> Result<CMatrix> {
    if rows.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rows.len(),
        });
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: row.len(),
            });
        }
        for (j, [re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse(format!("non-finite entry at ({i}, {j})")));
            }
            m[(i, j)] = Complex64::new(*re, *im);
        }
    }
    Ok(m)
}

impl From<&UnitaryGate> for GateJson {
    fn from(g: &UnitaryGate) -> Self {
        GateJson {
            dim: g.dim(),
            matrix: matrix_to_json(g.matrix()),
        }
    }
}

impl From<&HamiltonianSchedule> for ScheduleJson {
    fn from(s: &HamiltonianSchedule) -> Self {
        ScheduleJson {
            hbar: s.hbar(),
            segments: s
                .segments()
                .iter()
                .map(|seg| SegmentJson {
                    duration: seg.duration,
                    h: matrix_to_json(&seg.h),
                })
                .collect(),
        }
    }
}

impl GateJson {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        matrix_from_json(&self.matrix, self.dim)
    }
}

impl ScheduleJson {
    pub fn to_schedule(&self, hermiticity_tol: f64) -> Result<HamiltonianSchedule> {
        let dim = self.segments.first().map(|s| s.h.len()).unwrap_or(0);
        let segments = self
            .segments
            .iter()
            .map(|s| Ok(Segment::new(s.duration, matrix_from_json(&s.h, dim)?)))
            .collect::<Result<Vec<_>>>()?;
        HamiltonianSchedule::with_tolerance(segments, self.hbar, hermiticity_tol)
    }
}

/// Reads and validates a gate.
pub fn load_gate<R: Read>(source: R) -> Result<UnitaryGate> {
    load_gate_with(source, tolerance::UNITARITY, false)
}

/// Reads a gate with an explicit unitarity tolerance, optionally projecting a
/// nearly unitary matrix onto the closest unitary.
pub fn load_gate_with<R: Read>(source: R, tol: f64, project: bool) -> Result<UnitaryGate> {
    let parsed: GateJson = serde_json::from_reader(source)?;
    let m = parsed.to_matrix()?;
    if project {
        UnitaryGate::project(m, tol)
    } else {
        UnitaryGate::with_tolerance(m, tol)
    }
}

pub fn save_gate<W: Write>(gate: &UnitaryGate, sink: W) -> Result<()> {
    serde_json::to_writer(sink, &GateJson::from(gate))?;
    Ok(())
}

pub fn load_schedule<R: Read>(source: R) -> Result<HamiltonianSchedule> {
    let parsed: ScheduleJson = serde_json::from_reader(source)?;
    parsed.to_schedule(tolerance::HERMITICITY)
}

pub fn save_schedule<W: Write>(schedule: &HamiltonianSchedule, sink: W) -> Result<()> {
    serde_json::to_writer(sink, &ScheduleJson::from(schedule))?;
    Ok(())
}
