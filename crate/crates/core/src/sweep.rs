//! Randomized audit of every bound over seeded random schedules.
//!
//! Trials run in parallel; each draws from its own generator and the results
//! are merged in trial order, so a report depends only on its configuration.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{check_area_bound, check_cost_bound, check_gate_bounds, BoundReport};
use crate::error::{Error, Result};
use crate::evolution::{cost, propagate, propagator, MatrixNorm, TimeNorm};
use crate::gate::{pauli, CVector, HamiltonianSchedule, Segment, UnitaryGate};
use crate::io::{GateJson, ScheduleJson};
use crate::qubit::{rotation_params, rotation_path_length, strip_identity_component};
use crate::random::{random_axis, random_schedule, random_state, trial_rng};

/// Dimensions a sweep may draw from.
pub const ALLOWED_DIMS: [usize; 4] = [2, 4, 8, 16];

/// Bound families a sweep can audit.
pub const BOUND_NAMES: [&str; 10] = [
    "area",
    "cost",
    "phase_volume_arc",
    "cost_arc",
    "sandwich_lower",
    "sandwich_upper",
    "lebesgue",
    "schatten",
    "identity_strip",
    "variable_axis",
];

/// Initial states drawn per schedule for the state bounds.
pub const STATES_PER_TRIAL: usize = 10;

const NORM_ORDERS: [f64; 4] = [1.0, 2.0, 4.0, f64::INFINITY];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub max_segments: usize,
    pub bound_set: Vec<String>,
}

impl SweepConfig {
    /// All bounds, qubits and ququarts, up to 32 segments.
    pub fn new(trials: usize, seed: u64) -> Self {
        SweepConfig {
            trials,
            dims: vec![2, 4],
            seed,
            max_segments: 32,
            bound_set: BOUND_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::Config("dims must not be empty".into()));
        }
        if let Some(d) = self.dims.iter().find(|d| !ALLOWED_DIMS.contains(d)) {
            return Err(Error::Config(format!("dimension {d} is not one of 2, 4, 8, 16")));
        }
        if self.max_segments == 0 {
            return Err(Error::Config("max_segments must be at least 1".into()));
        }
        if let Some(b) = self.bound_set.iter().find(|b| !BOUND_NAMES.contains(&b.as_str())) {
            return Err(Error::Config(format!("unknown bound `{b}`")));
        }
        Ok(())
    }

    fn wants(&self, family: &str) -> bool {
        self.bound_set.iter().any(|b| b == family)
    }

    fn includes(&self, report_name: &str) -> bool {
        self.bound_set.iter().any(|b| {
            report_name == b
                || report_name
                    .strip_prefix(b.as_str())
                    .is_some_and(|rest| rest.starts_with('['))
        })
    }
}

/// Aggregate over all trials for one bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub checked: usize,
    pub violations: usize,
    #[serde(with = "crate::bounds::extended_f64")]
    pub min_slack: f64,
}

/// Everything needed to replay one violated bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reproducer {
    pub trial: usize,
    pub seed: u64,
    pub report: BoundReport,
    pub gate: GateJson,
    pub schedule: ScheduleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub bounds: BTreeMap<String, BoundSummary>,
    pub total_violations: usize,
    pub violations: Vec<Reproducer>,
}

struct Check {
    report: BoundReport,
    schedule: HamiltonianSchedule,
    state: Option<CVector>,
}

fn state_json(psi: &CVector) -> Vec<[f64; 2]> {
    psi.iter().map(|z| [z.re, z.im]).collect()
}

/// Two constant-axis segments about non-parallel axes.
fn two_axis_protocol<R: Rng + ?Sized>(hbar: f64, rng: &mut R) -> HamiltonianSchedule {
    let [sx, sy, sz] = pauli();
    let n1 = random_axis(rng);
    let n2 = loop {
        let n = random_axis(rng);
        let dot: f64 = n.iter().zip(&n1).map(|(a, b)| a * b).sum();
        if dot.abs() < 0.95 {
            break n;
        }
    };
    let segments = [n1, n2]
        .iter()
        .map(|n| {
            let angle = rng.random_range(0.2..2.5);
            let dt = rng.random_range(0.1..1.0);
            let h = (&sx * Complex64::new(n[0], 0.0) + &sy * Complex64::new(n[1], 0.0) + &sz * Complex64::new(n[2], 0.0))
                * Complex64::new(hbar * angle / (2.0 * dt), 0.0);
            Segment::new(dt, h)
        })
        .collect();
    HamiltonianSchedule::new(segments, hbar).expect("Pauli combinations are Hermitian")
}

fn run_trial(config: &SweepConfig, trial: usize) -> Result<Vec<Check>> {
    let mut rng = trial_rng(config.seed, trial as u64);
    let d = config.dims[rng.random_range(0..config.dims.len())];
    let hbar = 1.0;
    let schedule = random_schedule(d, config.max_segments, hbar, &mut rng);
    let mut checks = Vec::new();
    let mut push = |report: BoundReport, schedule: &HamiltonianSchedule, state: Option<&CVector>| {
        if config.includes(&report.bound) {
            checks.push(Check {
                report,
                schedule: schedule.clone(),
                state: state.cloned(),
            });
        }
    };

    for _ in 0..STATES_PER_TRIAL {
        let psi = random_state(d, &mut rng);
        if config.wants("area") {
            push(check_area_bound(&schedule, &psi)?, &schedule, Some(&psi));
        }
        if config.wants("cost") {
            for p in NORM_ORDERS {
                push(check_cost_bound(&schedule, &psi, p)?, &schedule, Some(&psi));
            }
        }
    }

    let u = UnitaryGate::from_unchecked(propagator(&schedule)?);
    for report in check_gate_bounds(&schedule, &u, &NORM_ORDERS, true)? {
        push(report, &schedule, None);
    }

    if d == 2 && config.wants("identity_strip") {
        let psi = random_state(2, &mut rng);
        let (stripped, phase) = strip_identity_component(&schedule)?;
        let (_, original) = propagate(&schedule, Some(&psi))?;
        let (_, reduced) = propagate(&stripped, Some(&psi))?;
        let (original, reduced) = (original.expect("state given"), reduced.expect("state given"));
        let overlap = reduced.dotc(&original);
        push(BoundReport::new("identity_strip[state]", overlap.norm(), 1.0 - 1e-9), &schedule, Some(&psi));
        let deviation = (&original - &reduced * Complex64::from_polar(1.0, phase)).norm();
        push(BoundReport::new("identity_strip[phase]", 1e-9, deviation), &schedule, Some(&psi));
        push(
            BoundReport::new(
                "identity_strip[cost]",
                cost(&schedule, MatrixNorm::Operator, TimeNorm::L1)?,
                cost(&stripped, MatrixNorm::Operator, TimeNorm::L1)?,
            ),
            &schedule,
            None,
        );
    }
    if d == 2 && config.wants("variable_axis") {
        let protocol = two_axis_protocol(hbar, &mut rng);
        let alpha = rotation_params(&UnitaryGate::from_unchecked(propagator(&protocol)?))?.angle;
        push(
            BoundReport::strict("variable_axis", rotation_path_length(&protocol)? - alpha, 1e-6),
            &protocol,
            None,
        );
    }
    Ok(checks)
}

/// Runs every trial and merges the outcomes in trial order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<Vec<_>>>()?;

    let mut bounds: BTreeMap<String, BoundSummary> = BTreeMap::new();
    let mut violations = Vec::new();
    for (trial, checks) in outcomes.into_iter().enumerate() {
        for check in checks {
            let summary = bounds.entry(check.report.bound.clone()).or_insert(BoundSummary {
                checked: 0,
                violations: 0,
                min_slack: f64::INFINITY,
            });
            summary.checked += 1;
            summary.min_slack = summary.min_slack.min(check.report.slack);
            if !check.report.satisfied {
                summary.violations += 1;
                let gate = UnitaryGate::from_unchecked(propagator(&check.schedule)?);
                violations.push(Reproducer {
                    trial,
                    seed: config.seed,
                    gate: GateJson::from(&gate),
                    schedule: ScheduleJson::from(&check.schedule),
                    state: check.state.as_ref().map(state_json),
                    report: check.report,
                });
            }
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        total_violations: violations.len(),
        bounds,
        violations,
    })
}
