use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use serde::Serialize;

use qslforge::bounds::{check_gate_bounds_with, BoundReport};
use qslforge::evolution::{cost_report, eigenvalue_trajectories, exact_fidelity, fidelity_up_to_phase};
use qslforge::io::{load_gate_with, ScheduleJson};
use qslforge::qubit::gate_speed_limit;
use qslforge::synthesis::{optimal_protocol, SynthesisMetadata};
use qslforge::sweep::{run_sweep, SweepConfig, BOUND_NAMES};
use qslforge::{
    named_gate, propagator, rotation_params, shift_ground, shortest_covering_arc, su2_normalize,
    unitary_spectrum, worst_case_angle, CostReport, Error, HamiltonianSchedule, ShapeFunction,
    UnitaryGate,
};

use crate::output::{print, to_json, write_atomic, CmdResult, Failure};
use crate::{AnalyzeArgs, GateSource, SweepArgs, SynthesizeArgs, TrajectoriesArgs, VerifyArgs};

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_gate(source: &GateSource) -> Result<UnitaryGate, Failure> {
    if let Some(name) = &source.named {
        return Ok(named_gate(name, &source.params)?);
    }
    let path = source.gate.as_ref().expect("clap requires --named or --gate");
    Ok(load_gate_with(open(path)?, source.unitarity_tol, source.project)?)
}

fn load_schedule(path: &Path, hermiticity_tol: f64) -> Result<HamiltonianSchedule, Failure> {
    let parsed: ScheduleJson = serde_json::from_reader(open(path)?).map_err(Error::from)?;
    Ok(parsed.to_schedule(hermiticity_tol)?)
}

fn check_positive(name: &str, value: f64) -> CmdResult {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Failure::usage(format!("--{name} must be positive, got {value}")))
    }
}

/// Prints `text` and, when requested, also writes it to `out`.
fn emit(text: &str, out: Option<&Path>) -> CmdResult {
    if let Some(path) = out {
        write_atomic(path, text.as_bytes())?;
    }
    print(text);
    Ok(())
}

#[derive(Serialize)]
struct RotationReport {
    angle: f64,
    axis: [f64; 3],
    axis_is_conventional: bool,
    worst_case_angle: f64,
    extracted_phase: f64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    dim: usize,
    hbar: f64,
    eigenphases: Vec<f64>,
    arc_length: f64,
    arc_start: f64,
    centering_phase: f64,
    min_cost: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<RotationReport>,
}

pub fn analyze(args: AnalyzeArgs) -> CmdResult {
    check_positive("hbar", args.hbar)?;
    let g = load_gate(&args.source)?;
    let phases = unitary_spectrum(&g)?.eigenphases;
    let arc = shortest_covering_arc(&phases)?;
    let rotation = if g.dim() == 2 {
        let params = rotation_params(&g)?;
        Some(RotationReport {
            angle: params.angle,
            axis: params.axis,
            axis_is_conventional: params.axis_is_conventional(),
            worst_case_angle: worst_case_angle(&g)?,
            extracted_phase: su2_normalize(&g)?.1,
        })
    } else {
        None
    };
    let report = AnalyzeReport {
        dim: g.dim(),
        hbar: args.hbar,
        eigenphases: phases,
        arc_length: arc.length,
        arc_start: arc.start,
        centering_phase: arc.centering_phase,
        min_cost: args.hbar * arc.length / 2.0,
        rotation,
    };
    emit(&to_json(&report)?, args.out.as_deref())
}

#[derive(Serialize)]
struct SynthesisOutput<'a> {
    metadata: &'a SynthesisMetadata,
    schedule: &'a ScheduleJson,
}

pub fn synthesize(args: SynthesizeArgs) -> CmdResult {
    check_positive("tau", args.tau)?;
    check_positive("hbar", args.hbar)?;
    let g = load_gate(&args.source)?;
    let shape = args.shape.as_deref().map(ShapeFunction::parse).transpose()?;
    let result = optimal_protocol(&g, args.tau, args.hbar, shape.as_ref(), args.exact_phase)?;
    let metadata = result.metadata();
    let schedule = ScheduleJson::from(&result.schedule);
    let metadata_text = to_json(&metadata)?;
    if let Some(path) = &args.meta_out {
        write_atomic(path, metadata_text.as_bytes())?;
    }
    match &args.out {
        Some(path) => {
            write_atomic(path, to_json(&schedule)?.as_bytes())?;
            print(&metadata_text);
        }
        None => print(&to_json(&SynthesisOutput {
            metadata: &metadata,
            schedule: &schedule,
        })?),
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    fidelity: f64,
    exact_fidelity: f64,
    allowed: bool,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    bounds: Vec<BoundReport>,
    ground_shifted: bool,
    costs: CostReport,
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let schedule = load_schedule(&args.schedule, args.hermiticity_tol)?;
    let g = load_gate(&args.source)?;
    if g.dim() != schedule.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: schedule.dim(),
        }
        .into());
    }
    let u = propagator(&schedule)?;
    let fidelity = fidelity_up_to_phase(&u, &g)?;
    let exact = exact_fidelity(&u, &g)?;
    let costed = if args.shift_ground {
        shift_ground(&schedule)?
    } else {
        schedule.clone()
    };
    let costs = cost_report(&costed, &args.p)?;

    let (bounds, error) =
        match check_gate_bounds_with(&schedule, &g, &args.p, args.exact_phase, args.fidelity_threshold) {
            Ok(mut bounds) => {
                if g.dim() == 2 {
                    bounds.push(gate_speed_limit(&g, &schedule)?);
                }
                (bounds, None)
            }
            Err(err @ Error::NotAllowedProtocol { .. }) => (Vec::new(), Some(err.to_string())),
            Err(err) => return Err(err.into()),
        };
    let allowed = error.is_none();
    let passed = allowed && bounds.iter().all(|b| b.satisfied);
    let report = VerifyReport {
        fidelity,
        exact_fidelity: exact,
        allowed,
        passed,
        error: error.clone(),
        bounds,
        ground_shifted: args.shift_ground,
        costs,
    };
    emit(&to_json(&report)?, args.out.as_deref())?;
    match (passed, error) {
        (true, _) => Ok(()),
        (false, Some(message)) => Err(Failure::verification(message)),
        (false, None) => Err(Failure::verification("one or more bounds are violated")),
    }
}

pub fn sweep(args: SweepArgs) -> CmdResult {
    let bound_set = if args.bounds.is_empty() {
        BOUND_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        args.bounds
    };
    let config = SweepConfig {
        trials: args.trials,
        dims: args.dims,
        seed: args.seed,
        max_segments: args.max_segments,
        bound_set,
    };
    let report = run_sweep(&config)?;
    emit(&to_json(&report)?, args.out.as_deref())?;
    if report.total_violations > 0 {
        return Err(Failure::verification(format!(
            "{} bound violations; reproducers are in the report",
            report.total_violations
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct TrajectorySummary {
    rows: usize,
    phase_volume: f64,
    integrated_spread: f64,
}

pub fn trajectories(args: TrajectoriesArgs) -> CmdResult {
    if args.samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let schedule = load_schedule(&args.schedule, args.hermiticity_tol)?;
    let trajectory = eigenvalue_trajectories(&schedule, args.samples)?;
    let mut csv = Vec::new();
    trajectory.write_csv(&mut csv)?;
    let summary = to_json(&TrajectorySummary {
        rows: trajectory.times.len(),
        phase_volume: qslforge::phase_volume(&schedule)?,
        integrated_spread: trajectory.integrated_spread(),
    })?;
    match &args.out {
        Some(path) => {
            write_atomic(path, &csv)?;
            print(&summary);
        }
        None => {
            print(&String::from_utf8_lossy(&csv));
            eprint!("{summary}");
        }
    }
    Ok(())
}
