//! Spectral linear algebra for Hermitian and unitary matrices.
//!
//! The Hermitian eigensolver is a cyclic complex Jacobi iteration. Unitary
//! matrices are diagonalized through their commuting Hermitian parts
//! `A = (G + G^dag)/2` and `B = (G - G^dag)/2i`: `A` is diagonalized first and
//! `B` is then diagonalized inside every degenerate eigenspace of `A`, which
//! keeps eigenvectors orthonormal for any normal matrix.

use num_complex::Complex64;

use crate::arc;
use crate::error::{Error, Result};
use crate::gate::{check_hermitian, wrap_phase, CMatrix, UnitaryGate, I};
use crate::tolerance;

/// Ascending eigenvalues `E_0 <= ... <= E_{d-1}` with orthonormal eigenvectors
/// as columns.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermitianSpectrum {
    pub fn ground(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn top(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }

    /// `E_{d-1} - E_0`.
    pub fn spread(&self) -> f64 {
        self.top() - self.ground()
    }

    pub fn op_norm(&self) -> f64 {
        self.ground().abs().max(self.top().abs())
    }

    pub fn schatten_norm(&self, p: f64) -> Result<f64> {
        schatten_of_values(&self.eigenvalues, p)
    }

    /// `V diag(f(E_n)) V^dag`.
    pub fn apply<F>(&self, f: F) -> CMatrix
    where
        F: Fn(f64) -> Complex64,
    {
        with_diagonal(&self.eigenvectors, self.eigenvalues.iter().map(|&e| f(e)))
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|e| Complex64::new(e, 0.0))
    }
}

/// Eigenphases in `(-pi, pi]`, ascending, with orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct UnitarySpectrum {
    pub eigenphases: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl UnitarySpectrum {
    pub fn reconstruct(&self) -> CMatrix {
        with_diagonal(
            &self.eigenvectors,
            self.eigenphases.iter().map(|&t| Complex64::from_polar(1.0, t)),
        )
    }
}

/// Which branch of the logarithm [`unitary_log`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseBranch {
    /// Shift all phases so the shortest covering arc is symmetric about zero.
    /// The resulting Hamiltonian generates `e^{i phi} G` for the centering
    /// phase `phi`.
    Centered,
    /// Use the eigenphases of `G` as they are, in `(-pi, pi]`.
    Principal,
}

fn with_diagonal<I2>(vectors: &CMatrix, diag: I2) -> CMatrix
where
    I2: Iterator<Item = Complex64>,
{
    let mut scaled = vectors.clone();
    for (mut col, d) in scaled.column_iter_mut().zip(diag) {
        col *= d;
    }
    scaled * vectors.adjoint()
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi on an (exactly) Hermitian matrix.
fn jacobi(mut a: CMatrix) -> Result<HermitianSpectrum> {
    let n = a.nrows();
    let mut v = CMatrix::identity(n, n);
    let scale = a.norm();
    if scale > 0.0 {
        let target = tolerance::JACOBI_OFF_DIAGONAL * scale;
        let max_sweeps = 100 * n * n;
        let mut sweep = 0;
        while off_diagonal_norm(&a) >= target {
            if sweep == max_sweeps {
                return Err(Error::ConvergenceFailure { sweeps: max_sweeps });
            }
            sweep += 1;
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, col| v[(r, order[col])]);
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

// Annihilates a[p][q] with R = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 || !r.is_normal() {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let cos = 1.0 / t.hypot(1.0);
    let sin = t * cos;

    let r_pp = Complex64::new(cos, 0.0);
    let r_pq = Complex64::new(sin, 0.0);
    let r_qp = -phase.conj() * sin;
    let r_qq = phase.conj() * cos;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * r_pp + akq * r_qp;
        a[(k, q)] = akp * r_pq + akq * r_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = r_pp.conj() * apk + r_qp.conj() * aqk;
        a[(q, k)] = r_pq.conj() * apk + r_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * r_pp + vkq * r_qp;
        v[(k, q)] = vkp * r_pq + vkq * r_qq;
    }
}

/// Sorted eigen-decomposition of a Hermitian matrix.
pub fn hermitian_spectrum(h: &CMatrix) -> Result<HermitianSpectrum> {
    check_hermitian(h, tolerance::HERMITICITY)?;
    jacobi(hermitian_part(h))
}

/// Eigen-decomposition of a unitary gate.
pub fn unitary_spectrum(g: &UnitaryGate) -> Result<UnitarySpectrum> {
    unitary_spectrum_of(g.matrix())
}

pub(crate) fn unitary_spectrum_of(m: &CMatrix) -> Result<UnitarySpectrum> {
    let n = m.nrows();
    let real_part = hermitian_part(m);
    let imag_part = hermitian_part(&((m - m.adjoint()) * (-I * 0.5)));

    let outer = jacobi(real_part)?;
    let threshold = tolerance::DEGENERACY * outer.op_norm();
    let mut vectors = outer.eigenvectors;

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && outer.eigenvalues[end] - outer.eigenvalues[end - 1] <= threshold {
            end += 1;
        }
        if end - start > 1 {
            let block = vectors.columns(start, end - start).into_owned();
            let restricted = hermitian_part(&(block.adjoint() * &imag_part * &block));
            let inner = jacobi(restricted)?;
            let rotated = block * inner.eigenvectors;
            vectors.columns_mut(start, end - start).copy_from(&rotated);
        }
        start = end;
    }

    let mut pairs: Vec<(f64, usize)> = (0..n)
        .map(|k| {
            let col = vectors.column(k);
            let lambda = (col.adjoint() * m * col)[(0, 0)];
            (wrap_phase(lambda.arg()), k)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let eigenphases = pairs.iter().map(|p| p.0).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, col| vectors[(r, pairs[col].1)]);
    Ok(UnitarySpectrum {
        eigenphases,
        eigenvectors,
    })
}

/// `exp(-i h dt / hbar)`.
pub fn evolve_exp(h: &CMatrix, dt: f64, hbar: f64) -> Result<CMatrix> {
    let spectrum = hermitian_spectrum(h)?;
    Ok(evolve_from_spectrum(&spectrum, dt, hbar))
}

pub(crate) fn evolve_from_spectrum(spectrum: &HermitianSpectrum, dt: f64, hbar: f64) -> CMatrix {
    spectrum.apply(|e| Complex64::from_polar(1.0, -e * dt / hbar))
}

/// Hermitian `H` with `exp(-i H tau / hbar)` equal to `g` (principal branch)
/// or to the phase-centered `e^{i phi} g` (centered branch).
///
/// On the eigenbasis of `g` this is `H = i hbar ln(g) / tau`, i.e. eigenvalues
/// `E_n = -hbar theta_n / tau`.
pub fn unitary_log(g: &UnitaryGate, tau: f64, hbar: f64, branch: PhaseBranch) -> Result<CMatrix> {
    let spectrum = unitary_spectrum(g)?;
    let phases = match branch {
        PhaseBranch::Principal => spectrum.eigenphases.clone(),
        PhaseBranch::Centered => {
            let arc = arc::shortest_covering_arc(&spectrum.eigenphases)?;
            arc.centered_phases(&spectrum.eigenphases)
        }
    };
    Ok(log_from_phases(&spectrum.eigenvectors, &phases, tau, hbar))
}

pub(crate) fn log_from_phases(vectors: &CMatrix, phases: &[f64], tau: f64, hbar: f64) -> CMatrix {
    let h = with_diagonal(
        vectors,
        phases.iter().map(|&t| Complex64::new(-hbar * t / tau, 0.0)),
    );
    hermitian_part(&h)
}

/// `(sum |E_n|^p)^(1/p)`; `p = f64::INFINITY` gives `max |E_n|`.
pub fn schatten_of_values(values: &[f64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadP(p));
    }
    let largest = values.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
    if p.is_infinite() || largest == 0.0 {
        return Ok(largest);
    }
    if p == 1.0 {
        return Ok(values.iter().map(|e| e.abs()).sum());
    }
    let sum: f64 = values.iter().map(|e| (e.abs() / largest).powf(p)).sum();
    Ok(largest * sum.powf(1.0 / p))
}

/// Largest absolute eigenvalue.
pub fn op_norm(h: &CMatrix) -> Result<f64> {
    Ok(hermitian_spectrum(h)?.op_norm())
}

pub fn schatten_norm(h: &CMatrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadP(p));
    }
    hermitian_spectrum(h)?.schatten_norm(p)
}
