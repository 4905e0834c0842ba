//! Target gates, piecewise-constant Hamiltonian schedules and shape functions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// Dense complex state vector.
pub type CVector = DVector<Complex64>;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|G^dag G - I|_F`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}

/// `|H - H^dag|_F`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

/// Checks squareness and hermiticity of `h` against `tol * d`.
pub fn check_hermitian(h: &CMatrix, tol: f64) -> Result<()> {
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            found: h.ncols(),
        });
    }
    let limit = tol * h.nrows() as f64;
    let deviation = hermiticity_defect(h);
    if deviation > limit || !deviation.is_finite() {
        return Err(Error::NotHermitian { deviation, limit });
    }
    Ok(())
}

/// A validated `d x d` unitary matrix, `d >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryGate {
    matrix: CMatrix,
}

impl UnitaryGate {
    /// Validates `matrix` with the default unitarity tolerance.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, tolerance::UNITARITY)
    }

    pub fn with_tolerance(matrix: CMatrix, tol: f64) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: cols,
            });
        }
        if rows < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rows,
            });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("matrix contains non-finite entries".into()));
        }
        let limit = tol * rows as f64;
        let deviation = unitarity_defect(&matrix);
        if deviation > limit {
            return Err(Error::NotUnitary { deviation, limit });
        }
        Ok(Self { matrix })
    }

    /// Replaces a nearly unitary matrix by its polar factor `W V^dag`.
    ///
    /// Only matrices within `PROJECTION_FACTOR * tol` of unitarity are
    /// accepted; anything further off is reported as `NotUnitary`.
    pub fn project(matrix: CMatrix, tol: f64) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                expected: rows,
                found: cols,
            });
        }
        let limit = tolerance::PROJECTION_FACTOR * tol * rows as f64;
        let deviation = unitarity_defect(&matrix);
        if deviation > limit || !deviation.is_finite() {
            return Err(Error::NotUnitary { deviation, limit });
        }
        let svd = matrix.svd(true, true);
        let (u, v_t) = match (svd.u, svd.v_t) {
            (Some(u), Some(v_t)) => (u, v_t),
            _ => return Err(Error::ConvergenceFailure { sweeps: 0 }),
        };
        Self::with_tolerance(u * v_t, tol)
    }

    pub(crate) fn from_unchecked(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `e^{i phi} G`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        Self {
            matrix: &self.matrix * Complex64::from_polar(1.0, phi),
        }
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }
}

/// One constant piece of a schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub duration: f64,
    pub h: CMatrix,
}

impl Segment {
    pub fn new(duration: f64, h: CMatrix) -> Self {
        Self { duration, h }
    }
}

/// A piecewise-constant Hamiltonian protocol `H(t)`.
///
/// Segments are applied in order: the first segment acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSchedule {
    hbar: f64,
    segments: Vec<Segment>,
}

impl HamiltonianSchedule {
    pub fn new(segments: Vec<Segment>, hbar: f64) -> Result<Self> {
        Self::with_tolerance(segments, hbar, tolerance::HERMITICITY)
    }

    pub fn with_tolerance(segments: Vec<Segment>, hbar: f64, tol: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidSchedule(format!("hbar must be positive, got {hbar}")));
        }
        let first = segments
            .first()
            .ok_or_else(|| Error::InvalidSchedule("schedule has no segments".into()))?;
        let dim = first.h.nrows();
        if dim < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: dim,
            });
        }
        for (j, seg) in segments.iter().enumerate() {
            if !(seg.duration.is_finite() && seg.duration > 0.0) {
                return Err(Error::InvalidSchedule(format!(
                    "segment {j} has non-positive duration {}",
                    seg.duration
                )));
            }
            if seg.h.nrows() != dim || seg.h.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if seg.h.nrows() != dim { seg.h.nrows() } else { seg.h.ncols() },
                });
            }
            if seg.h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidSchedule(format!("segment {j} has non-finite entries")));
            }
            check_hermitian(&seg.h, tol)?;
        }
        Ok(Self { hbar, segments })
    }

    /// A single segment of duration `tau`.
    pub fn constant(h: CMatrix, tau: f64, hbar: f64) -> Result<Self> {
        Self::new(vec![Segment::new(tau, h)], hbar)
    }

    /// `d x d` zero Hamiltonian for `tau`.
    pub fn zero(dim: usize, tau: f64, hbar: f64) -> Result<Self> {
        Self::constant(CMatrix::zeros(dim, dim), tau, hbar)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn dim(&self) -> usize {
        self.segments[0].h.nrows()
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Applies `f` to every segment matrix, keeping durations.
    pub fn map_matrices<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&CMatrix) -> CMatrix,
    {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment::new(s.duration, f(&s.h)))
            .collect();
        Self::new(segments, self.hbar)
    }
}

/// Bloch-sphere rotation `R(n, alpha)` with `alpha` in `[0, pi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationParams {
    pub axis: [f64; 3],
    pub angle: f64,
}

impl RotationParams {
    /// True when the angle vanishes and `axis` is the conventional `z`.
    pub fn axis_is_conventional(&self) -> bool {
        self.angle == 0.0
    }

    /// `cos(a/2) I - i sin(a/2) n.sigma`.
    pub fn matrix(&self) -> CMatrix {
        let (s, co) = (self.angle / 2.0).sin_cos();
        let [n1, n2, n3] = self.axis;
        CMatrix::from_row_slice(
            2,
            2,
            &[
                c(co, -n3 * s),
                c(-n2 * s, -n1 * s),
                c(n2 * s, -n1 * s),
                c(co, n3 * s),
            ],
        )
    }
}

/// Segment count used when a shape is named without one.
pub const DEFAULT_SHAPE_SEGMENTS: usize = 64;

/// Named reparameterizations of time used to build shaped protocols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    Constant,
    /// Linear ramp up to `2` at the midpoint and back down.
    Triangular,
    /// `2 sin^2(pi t / tau)`.
    Sin2,
    /// `2` for the first half, `0` after.
    Bang,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Constant => "constant",
            ShapeKind::Triangular => "triangular",
            ShapeKind::Sin2 => "sin2",
            ShapeKind::Bang => "bang",
        }
    }

    // antiderivative on u = t / tau in [0, 1], normalized so that F(1) = 1
    fn antiderivative(self, u: f64) -> f64 {
        match self {
            ShapeKind::Constant => u,
            ShapeKind::Triangular => {
                if u <= 0.5 {
                    2.0 * u * u
                } else {
                    0.5 + 4.0 * (u - 0.5) - 2.0 * (u * u - 0.25)
                }
            }
            ShapeKind::Sin2 => u - (2.0 * PI * u).sin() / (2.0 * PI),
            ShapeKind::Bang => 2.0 * u.min(0.5),
        }
    }

    /// Exact per-segment averages on a uniform grid of `m` segments.
    pub fn samples(self, m: usize) -> Result<ShapeFunction> {
        if m == 0 {
            return Err(Error::BadShape("shape needs at least one segment".into()));
        }
        let mut samples: Vec<f64> = (0..m)
            .map(|j| {
                let a = j as f64 / m as f64;
                let b = (j + 1) as f64 / m as f64;
                ((self.antiderivative(b) - self.antiderivative(a)) * m as f64).max(0.0)
            })
            .collect();
        let mean = samples.iter().sum::<f64>() / m as f64;
        samples.iter_mut().for_each(|s| *s /= mean);
        ShapeFunction::new(samples)
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "constant" => Ok(ShapeKind::Constant),
            "triangular" => Ok(ShapeKind::Triangular),
            "sin2" => Ok(ShapeKind::Sin2),
            "bang" => Ok(ShapeKind::Bang),
            other => Err(Error::BadShape(format!("unknown shape `{other}`"))),
        }
    }
}

/// Per-segment averages of a nonnegative `f(t)` with unit mean.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeFunction {
    samples: Vec<f64>,
}

impl ShapeFunction {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::BadShape("no samples".into()));
        }
        if let Some(bad) = samples.iter().find(|s| !s.is_finite() || **s < 0.0) {
            return Err(Error::BadShape(format!("sample {bad} is negative or non-finite")));
        }
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        if (mean - 1.0).abs() > tolerance::SHAPE_MEAN {
            return Err(Error::BadShape(format!("mean is {mean}, expected 1")));
        }
        Ok(Self { samples })
    }

    /// Parses `name` or `name:M`, e.g. `triangular:64`. A bare name uses
    /// [`DEFAULT_SHAPE_SEGMENTS`] segments, or one for `constant`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, m) = match spec.split_once(':') {
            Some((name, m)) => {
                let m = m
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadShape(format!("bad segment count in `{spec}`")))?;
                (name.trim(), m)
            }
            None => {
                let kind = spec.trim().parse::<ShapeKind>()?;
                let m = if kind == ShapeKind::Constant { 1 } else { DEFAULT_SHAPE_SEGMENTS };
                return kind.samples(m);
            }
        };
        name.parse::<ShapeKind>()?.samples(m)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.samples.iter().all(|s| (s - 1.0).abs() <= tolerance::SHAPE_MEAN)
    }
}

impl fmt::Display for UnitaryGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Pauli matrices `(sigma_x, sigma_y, sigma_z)`.
pub fn pauli() -> [CMatrix; 3] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    [
        CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        CMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

fn permutation(dim: usize, map: impl Fn(usize) -> usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        m[(map(col), col)] = c(1.0, 0.0);
    }
    m
}

fn rotation(axis: usize, theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    let sigma = &pauli()[axis];
    CMatrix::identity(2, 2) * c(co, 0.0) - sigma * (I * s)
}

/// Standard gate matrices by name.
///
/// Names are case-insensitive: `I X Y Z H S T RX RY RZ CNOT CZ SWAP TOFFOLI`
/// (aliases `CX`, `CCX`). Rotations take exactly one angle,
/// `R_k(theta) = exp(-i theta sigma_k / 2)`. Multi-qubit gates use the
/// big-endian basis order `|q0 q1 ...>` with `q0` the control.
pub fn named_gate(name: &str, params: &[f64]) -> Result<UnitaryGate> {
    let upper = name.to_ascii_uppercase();
    let want_params = matches!(upper.as_str(), "RX" | "RY" | "RZ");
    if want_params && params.len() != 1 {
        return Err(Error::BadParams(format!(
            "{upper} takes exactly one angle, got {}",
            params.len()
        )));
    }
    if !want_params && !params.is_empty() {
        return Err(Error::BadParams(format!("{upper} takes no parameters")));
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::BadParams("non-finite angle".into()));
    }
    let [sx, sy, sz] = pauli();
    let zero = c(0.0, 0.0);
    let m = match upper.as_str() {
        "I" | "ID" => CMatrix::identity(2, 2),
        "X" => sx,
        "Y" => sy,
        "Z" => sz,
        "H" => {
            let r = c(FRAC_1_SQRT_2, 0.0);
            CMatrix::from_row_slice(2, 2, &[r, r, r, -r])
        }
        "S" => CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), zero, zero, I]),
        "T" => CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), zero, zero, Complex64::from_polar(1.0, PI / 4.0)],
        ),
        "RX" => rotation(0, params[0]),
        "RY" => rotation(1, params[0]),
        "RZ" => rotation(2, params[0]),
        "CNOT" | "CX" => permutation(4, |i| if i >= 2 { i ^ 1 } else { i }),
        "CZ" => {
            let mut m = CMatrix::identity(4, 4);
            m[(3, 3)] = c(-1.0, 0.0);
            m
        }
        "SWAP" => permutation(4, |i| ((i & 1) << 1) | (i >> 1)),
        "TOFFOLI" | "CCX" => permutation(8, |i| if i >= 6 { i ^ 1 } else { i }),
        _ => return Err(Error::UnknownGate(name.to_string())),
    };
    Ok(UnitaryGate::from_unchecked(m))
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phase(theta: f64) -> f64 {
    let mut t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t <= -PI + tolerance::BRANCH_CUT {
        t = PI;
    }
    if t == 0.0 {
        0.0
    } else {
        t
    }
}

// tie-break sign for a determinant-one representative: +1 keeps it, -1 flips
fn representative_sign(a: Complex64, b: Complex64) -> f64 {
    const TIE: f64 = 1e-12;
    for (value, keep_if_positive) in [(a.re, true), (a.im, false), (b.re, true), (b.im, true)] {
        if value.abs() > TIE {
            let positive = value > 0.0;
            return if positive == keep_if_positive { 1.0 } else { -1.0 };
        }
    }
    1.0
}

/// Splits a qubit gate into `e^{i phi}` times a determinant-one matrix
/// `[[a, b], [-b*, a*]]` with `Re(a) >= 0`.
///
/// When `Re(a) = 0` the representative with `Im(a) <= 0` is chosen, then
/// `Re(b) >= 0`, then `Im(b) >= 0`. The returned phase lies in `(-pi, pi]`.
pub fn su2_normalize(gate: &UnitaryGate) -> Result<(UnitaryGate, f64)> {
    if gate.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: gate.dim(),
        });
    }
    let det = gate.determinant();
    let mut phase = det.arg() / 2.0;
    let mut normalized = gate.matrix() * Complex64::from_polar(1.0, -phase);
    let sign = representative_sign(normalized[(0, 0)], normalized[(0, 1)]);
    if sign < 0.0 {
        normalized = -normalized;
        phase += PI;
    }
    Ok((UnitaryGate::from_unchecked(normalized), wrap_phase(phase)))
}
