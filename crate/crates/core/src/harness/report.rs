//! Command execution and the report documents it produces.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::config::{Command, ExperimentConfig, ValidationIssue};
use crate::error::Error;
use crate::linalg::{Operator, StateVector};
use crate::process::{distill_orthogonal_with, overlap, vectorize, ProcessVector};
use crate::relabel::{consistency_report, relabel_circuit, OrderedDescription};
use crate::switch::{
    conditional_operator, measure_control_with, run_switch, switch_unitary, ControlBasis, SwitchCircuit,
};

pub const TOOL_NAME: &str = "qswitch";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CONVENTIONS_VERSION: &str = "1";

pub type Complex = [f64; 2];
pub type Matrix = Vec<Vec<Complex>>;

fn cx(z: &C64) -> Complex {
    [z.re, z.im]
}

fn state_doc(s: &StateVector) -> Vec<Complex> {
    s.amplitudes().iter().map(cx).collect()
}

fn matrix_doc(op: &Operator) -> Matrix {
    op.rows().map(|row| row.iter().map(cx).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub conventions_version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: TOOL_NAME, version: TOOL_VERSION, conventions_version: CONVENTIONS_VERSION }
    }
}

/// The frame in which every number of a report is expressed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conventions {
    pub tensor_order: &'static str,
    pub matrix_layout: &'static str,
    pub control_order: &'static str,
    pub vectorization: &'static str,
    pub relabeled_scale: &'static str,
    pub second_process: &'static str,
    pub phase_rule: &'static str,
    pub complex_encoding: &'static str,
    pub angles: &'static str,
}

impl Conventions {
    pub fn current() -> Self {
        Conventions {
            tensor_order: "control ⊗ target; joint index = control*d + target",
            matrix_layout: "row-major; row index is the output index",
            control_order: "|a⟩=|0⟩: A then B (target sees B·A); |b⟩=|1⟩: B then A (target sees A·B)",
            vectorization: "coefficient[i*d + j] = U[j][i]; no 1/√d factor, so ⟨U|V⟩ = Tr(U†V)",
            relabeled_scale: "relabeled process vectors have norm √d; distilled pairs have norm 1",
            second_process: "second = conj(β)|Â⟩ − conj(α)|B̂⟩ for control α|a⟩ + β|b⟩",
            phase_rule: "first nonzero amplitude (over (Â, B̂) for relabeled processes, over coefficients for distilled vectors, over |a⟩,|b⟩ for the completed control basis) is real and positive",
            complex_encoding: "[re, im]",
            angles: "radians",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub conventions: Conventions,
    pub config: ExperimentConfig,
    pub result: CommandResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum CommandResult {
    Run(RunResult),
    Relabel(RelabelResult),
    Report(ReportResult),
    Distill(DistillResult),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeDoc {
    pub outcome: usize,
    pub probability: f64,
    pub defined: bool,
    pub conditional_target: Option<Vec<Complex>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunResult {
    pub switch_unitarity_defect: f64,
    pub joint_state: Vec<Complex>,
    pub measurement_basis: [Vec<Complex>; 2],
    pub outcomes: Vec<OutcomeDoc>,
    pub probability_sum: f64,
    pub conditional_operators: [Matrix; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProcessDoc {
    pub label: String,
    pub norm: f64,
    pub coefficients: Vec<Complex>,
    pub operator: Matrix,
    pub unitarity_defect: f64,
}

impl ProcessDoc {
    fn new(v: &ProcessVector) -> Self {
        let op = v.to_operator();
        ProcessDoc {
            label: v.label().to_string(),
            norm: v.norm(),
            coefficients: v.coeffs().iter().map(cx).collect(),
            unitarity_defect: op.unitarity_defect(),
            operator: matrix_doc(&op),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelabelResult {
    pub control_state: Vec<Complex>,
    pub ab_overlap: f64,
    pub distilled: bool,
    pub first_amplitudes: [Complex; 2],
    pub second_amplitudes: [Complex; 2],
    pub first: ProcessDoc,
    pub second: ProcessDoc,
    pub first_second_overlap: f64,
    pub narrative: Vec<String>,
}

impl RelabelResult {
    fn new(d: &OrderedDescription) -> Self {
        RelabelResult {
            control_state: state_doc(&d.control_state),
            ab_overlap: d.ab_overlap,
            distilled: d.distilled,
            first_amplitudes: d.first_amplitudes.each_ref().map(cx),
            second_amplitudes: d.second_amplitudes.each_ref().map(cx),
            first: ProcessDoc::new(&d.first),
            second: ProcessDoc::new(&d.second),
            first_second_overlap: overlap(&d.first, &d.second).map(|z| z.norm()).unwrap_or(f64::NAN),
            narrative: d.narrative.lines().map(str::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapTable {
    pub rows: [&'static str; 2],
    pub columns: [&'static str; 2],
    pub values: [[f64; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportResult {
    pub relabel: RelabelResult,
    pub first_unitarity_defect: f64,
    pub second_unitarity_defect: f64,
    pub sequential_operator: Matrix,
    pub measurement_basis: [Vec<Complex>; 2],
    pub switch_conditionals: [Matrix; 2],
    pub overlap_table: OverlapTable,
    pub first_is_unitary: bool,
    pub sequential_match: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistillResult {
    pub input_overlap: f64,
    pub first: ProcessDoc,
    pub second: ProcessDoc,
    pub pair_overlap: f64,
}

/// A failure after the config was read, serialized in place of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorDocument {
    pub tool: ToolInfo,
    pub error: ErrorBody,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ExperimentConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub issues: Vec<ValidationIssue>,
}

impl ErrorDocument {
    pub fn new(
        kind: &'static str,
        message: String,
        issues: Vec<ValidationIssue>,
        config: Option<ExperimentConfig>,
    ) -> Self {
        ErrorDocument { tool: ToolInfo::current(), error: ErrorBody { kind, message, issues }, config }
    }
}

/// Name used in error documents for a library error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OrderUndefined { .. } => "OrderUndefined",
        Error::NotUnitary { .. } => "NotUnitary",
        Error::NotNormalized { .. } => "NotNormalized",
        Error::NotOrthogonal { .. } => "NotOrthogonal",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::ZeroNorm { .. } => "ZeroNorm",
        Error::NonFinite(_) | Error::Empty(_) | Error::NotSquare { .. } => "InvalidInput",
    }
}

fn basis_doc(b: &ControlBasis) -> [Vec<Complex>; 2] {
    b.states().map(state_doc)
}

pub fn run_command(cfg: &ExperimentConfig) -> Result<ReportDocument, Error> {
    let r = cfg.resolved();
    let result = if cfg.command == Command::Distill {
        let va = vectorize(&r.a_gate, "A");
        let vb = vectorize(&r.b_gate, "B");
        let input_overlap = match va.norm() * vb.norm() {
            n if n > 0.0 => overlap(&va, &vb)?.norm() / n,
            _ => 0.0,
        };
        let pair = distill_orthogonal_with(&va, &vb, r.tolerances.parallel)?;
        CommandResult::Distill(DistillResult {
            input_overlap,
            pair_overlap: overlap(&pair.first, &pair.second)?.norm(),
            first: ProcessDoc::new(&pair.first),
            second: ProcessDoc::new(&pair.second),
        })
    } else {
        let circuit =
            SwitchCircuit::with_options(r.a_gate.clone(), r.b_gate.clone(), Default::default(), r.tolerances)?;
        match cfg.command {
            Command::Run => CommandResult::Run(run(&circuit, cfg)?),
            Command::Relabel => CommandResult::Relabel(RelabelResult::new(&relabel_circuit(&circuit, &r.control)?)),
            Command::Report => {
                let rep = consistency_report(&circuit, &r.control)?;
                CommandResult::Report(ReportResult {
                    relabel: RelabelResult::new(&rep.description),
                    first_unitarity_defect: rep.first_unitarity_defect,
                    second_unitarity_defect: rep.second_unitarity_defect,
                    sequential_operator: matrix_doc(&rep.sequential_operator),
                    measurement_basis: basis_doc(&rep.measurement_basis),
                    switch_conditionals: rep.switch_conditionals.each_ref().map(matrix_doc),
                    overlap_table: OverlapTable {
                        rows: ["first", "second_after_first"],
                        columns: ["conditional_0", "conditional_1"],
                        values: rep.overlap_table,
                    },
                    first_is_unitary: rep.first_is_unitary,
                    sequential_match: rep.sequential_match,
                    notes: rep.notes,
                })
            }
            Command::Distill => unreachable!(),
        }
    };
    Ok(ReportDocument { tool: ToolInfo::current(), conventions: Conventions::current(), config: cfg.clone(), result })
}

fn run(circuit: &SwitchCircuit, cfg: &ExperimentConfig) -> Result<RunResult, Error> {
    let r = cfg.resolved();
    let target = r.target.as_ref().expect("run configs carry a target");
    let joint = run_switch(circuit, &r.control, target)?;
    let outcomes = measure_control_with(&joint, &r.basis, r.tolerances.normalization)?;
    let [chi0, chi1] = r.basis.states();
    Ok(RunResult {
        switch_unitarity_defect: switch_unitary(circuit).unitarity_defect(),
        joint_state: state_doc(&joint),
        measurement_basis: basis_doc(&r.basis),
        probability_sum: outcomes.iter().map(|o| o.probability).sum(),
        outcomes: outcomes
            .iter()
            .map(|o| OutcomeDoc {
                outcome: o.outcome_index,
                probability: o.probability,
                defined: o.is_defined(),
                conditional_target: o.conditional_target.as_ref().map(state_doc),
            })
            .collect(),
        conditional_operators: [
            matrix_doc(&conditional_operator(circuit, &r.control, chi0)?),
            matrix_doc(&conditional_operator(circuit, &r.control, chi1)?),
        ],
    })
}
