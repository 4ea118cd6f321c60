//! Experiment configuration files.
//!
//! A config is a single JSON object:
//!
//! ```json
//! {
//!   "command": "run",
//!   "gate_a": "X",
//!   "gate_b": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
//!   "control": "+",
//!   "target": "0",
//!   "measurement_basis": ["+", "-"],
//!   "tolerances": { "unitarity": 1e-10 }
//! }
//! ```
//!
//! Gates are either a name (`I X Y Z H S T`, `RX(θ)`, `RY(θ)`, `RZ(θ)`, θ in
//! radians) or a square matrix given as rows of `[re, im]` pairs. States are
//! either a name (`0`, `1`, ..., `a`, `b`, and for qubits `+ - +i -i`) or a
//! list of `[re, im]` amplitudes, normalized to within the normalization
//! tolerance. Unknown keys are rejected. Validation reports every problem it
//! finds, not just the first.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::gates;
use crate::linalg::{Operator, StateVector, Tolerances};
use crate::switch::ControlBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Run,
    Relabel,
    Report,
    Distill,
}

impl Command {
    pub const ALL: [Command; 4] = [Command::Run, Command::Relabel, Command::Report, Command::Distill];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::Relabel => "relabel",
            Command::Report => "report",
            Command::Distill => "distill",
        }
    }
}

impl FromStr for Command {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Command::ALL.into_iter().find(|c| c.as_str() == s).ok_or(())
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum GateSpec {
    Name(String),
    Matrix(Vec<Vec<[f64; 2]>>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum StateSpec {
    Name(String),
    Amplitudes(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unitarity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel: Option<f64>,
}

impl ToleranceOverrides {
    pub fn is_empty(&self) -> bool {
        *self == ToleranceOverrides::default()
    }

    pub fn apply(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            unitarity: self.unitarity.unwrap_or(d.unitarity),
            normalization: self.normalization.unwrap_or(d.normalization),
            parallel: self.parallel.unwrap_or(d.parallel),
        }
    }
}

/// A validated experiment. The spec fields echo what was written in the
/// file; the resolved operators and states are derived from them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub gate_a: GateSpec,
    pub gate_b: GateSpec,
    pub control: StateSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<StateSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measurement_basis: Option<[StateSpec; 2]>,
    #[serde(skip_serializing_if = "ToleranceOverrides::is_empty")]
    pub tolerances: ToleranceOverrides,
    #[serde(skip)]
    resolved: Resolved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub a_gate: Operator,
    pub b_gate: Operator,
    pub control: StateVector,
    pub target: Option<StateVector>,
    pub basis: ControlBasis,
    pub tolerances: Tolerances,
}

impl ExperimentConfig {
    pub fn resolved(&self) -> &Resolved {
        &self.resolved
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub field: String,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigError {
    /// Not well-formed JSON.
    Parse(String),
    /// Well-formed but invalid; every issue found.
    Invalid(Vec<ValidationIssue>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse(msg) => write!(f, "parse error: {msg}"),
            ConfigError::Invalid(issues) => {
                write!(f, "invalid config:")?;
                for issue in issues {
                    write!(f, "\n  {issue}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

const KNOWN_KEYS: [&str; 7] = ["command", "gate_a", "gate_b", "control", "target", "measurement_basis", "tolerances"];
const TOLERANCE_KEYS: [&str; 3] = ["unitarity", "normalization", "parallel"];

/// Parse and validate a config that must name its own command.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    parse_config_for(text, None)
}

/// Parse and validate a config for a command given on the command line.
/// A `command` key in the file is then optional but must agree.
pub fn parse_config_for(text: &str, command: Option<Command>) -> Result<ExperimentConfig, ConfigError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    Validator::default().config(&value, command)
}

#[derive(Default)]
struct Validator {
    issues: Vec<ValidationIssue>,
}

impl Validator {
    fn issue(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.issues.push(ValidationIssue { field: field.into(), message: message.into() });
    }

    fn config(mut self, value: &Value, cli_command: Option<Command>) -> Result<ExperimentConfig, ConfigError> {
        let Some(obj) = value.as_object() else {
            self.issue("$", "config must be a JSON object");
            return Err(ConfigError::Invalid(self.issues));
        };
        for key in obj.keys() {
            if !KNOWN_KEYS.contains(&key.as_str()) {
                self.issue(key.clone(), "unknown field");
            }
        }

        let command = self.command(obj.get("command"), cli_command);
        let tolerances = self.tolerances(obj.get("tolerances"));
        let tol = tolerances.as_ref().map(ToleranceOverrides::apply).unwrap_or_default();

        let gate_a = self.required(obj, "gate_a").and_then(|v| self.gate("gate_a", v));
        let gate_b = self.required(obj, "gate_b").and_then(|v| self.gate("gate_b", v));
        let d = match (&gate_a, &gate_b) {
            (Some((_, a)), Some((_, b))) if a.dim() != b.dim() => {
                self.issue("gate_b", format!("dimension {} does not match gate_a dimension {}", b.dim(), a.dim()));
                None
            }
            (Some((_, a)), _) => Some(a.dim()),
            (_, Some((_, b))) => Some(b.dim()),
            _ => None,
        };

        let control = self.required(obj, "control").and_then(|v| self.state("control", v, Some(2), tol.normalization));

        let target = match obj.get("target") {
            None => {
                if command == Some(Command::Run) {
                    self.issue("target", "required for the run command");
                }
                None
            }
            Some(v) => Some(self.state("target", v, d, tol.normalization)),
        };

        let basis = obj.get("measurement_basis").map(|v| self.basis(v, tol.normalization));

        if !self.issues.is_empty() {
            return Err(ConfigError::Invalid(self.issues));
        }
        // all Options below are Some when no issue was recorded
        let (gate_a, a_gate) = gate_a.unwrap();
        let (gate_b, b_gate) = gate_b.unwrap();
        let (control, control_state) = control.unwrap();
        let (target, target_state) = match target {
            Some(t) => {
                let (spec, state) = t.unwrap();
                (Some(spec), Some(state))
            }
            None => (None, None),
        };
        let (measurement_basis, basis) = match basis {
            Some(b) => {
                let (specs, basis) = b.unwrap();
                (Some(specs), basis)
            }
            None => (None, ControlBasis::computational()),
        };
        Ok(ExperimentConfig {
            command: command.unwrap(),
            gate_a,
            gate_b,
            control,
            target,
            measurement_basis,
            tolerances: tolerances.unwrap(),
            resolved: Resolved { a_gate, b_gate, control: control_state, target: target_state, basis, tolerances: tol },
        })
    }

    fn required<'v>(&mut self, obj: &'v Map<String, Value>, key: &str) -> Option<&'v Value> {
        let v = obj.get(key);
        if v.is_none() {
            self.issue(key, "missing required field");
        }
        v
    }

    fn command(&mut self, value: Option<&Value>, cli: Option<Command>) -> Option<Command> {
        let from_file = match value {
            None => None,
            Some(Value::String(s)) => match s.parse::<Command>() {
                Ok(c) => Some(c),
                Err(()) => {
                    self.issue("command", format!("unknown command {s:?} (expected run, relabel, report or distill)"));
                    return None;
                }
            },
            Some(_) => {
                self.issue("command", "must be a string");
                return None;
            }
        };
        match (from_file, cli) {
            (Some(f), Some(c)) if f != c => {
                self.issue(
                    "command",
                    format!("config says {f:?} but the command line says {c:?}", f = f.as_str(), c = c.as_str()),
                );
                None
            }
            (Some(c), _) | (None, Some(c)) => Some(c),
            (None, None) => {
                self.issue("command", "missing required field");
                None
            }
        }
    }

    fn tolerances(&mut self, value: Option<&Value>) -> Option<ToleranceOverrides> {
        let Some(value) = value else {
            return Some(ToleranceOverrides::default());
        };
        let Some(obj) = value.as_object() else {
            self.issue("tolerances", "must be an object");
            return None;
        };
        let mut out = ToleranceOverrides::default();
        let mut ok = true;
        for (key, v) in obj {
            let field = format!("tolerances.{key}");
            if !TOLERANCE_KEYS.contains(&key.as_str()) {
                self.issue(field, "unknown tolerance");
                ok = false;
                continue;
            }
            match v.as_f64() {
                Some(t) if t > 0.0 && t < 1.0 => match key.as_str() {
                    "unitarity" => out.unitarity = Some(t),
                    "normalization" => out.normalization = Some(t),
                    _ => out.parallel = Some(t),
                },
                _ => {
                    self.issue(field, "must be a number in (0, 1)");
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn complex(&mut self, field: &str, v: &Value) -> Option<[f64; 2]> {
        match v.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) if re.is_finite() && im.is_finite() => Some([re, im]),
                _ => {
                    self.issue(field, "complex number parts must be finite numbers");
                    None
                }
            },
            _ => {
                self.issue(field, "complex number must be a [re, im] pair");
                None
            }
        }
    }

    fn gate(&mut self, field: &str, v: &Value) -> Option<(GateSpec, Operator)> {
        match v {
            Value::String(name) => match gates::by_name(name) {
                Some(op) => Some((GateSpec::Name(name.clone()), op)),
                None => {
                    self.issue(field, format!("unknown gate {name:?}"));
                    None
                }
            },
            Value::Array(rows) => {
                let n = rows.len();
                if n == 0 {
                    self.issue(field, "matrix must have at least one row");
                    return None;
                }
                let before = self.issues.len();
                let mut grid = Vec::with_capacity(n);
                for (i, row) in rows.iter().enumerate() {
                    let Some(cells) = row.as_array() else {
                        self.issue(format!("{field}[{i}]"), "matrix row must be an array");
                        continue;
                    };
                    if cells.len() != n {
                        self.issue(
                            format!("{field}[{i}]"),
                            format!("row has {} entries, matrix must be {n}x{n}", cells.len()),
                        );
                        continue;
                    }
                    let parsed: Vec<_> =
                        cells.iter().enumerate().map(|(j, c)| self.complex(&format!("{field}[{i}][{j}]"), c)).collect();
                    grid.push(parsed.into_iter().map(|c| c.unwrap_or([0.0, 0.0])).collect::<Vec<_>>());
                }
                if self.issues.len() > before {
                    return None;
                }
                let entries = grid.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
                match Operator::new(n, entries) {
                    Ok(op) => Some((GateSpec::Matrix(grid), op)),
                    Err(e) => {
                        self.issue(field, e.to_string());
                        None
                    }
                }
            }
            _ => {
                self.issue(field, "gate must be a name or a matrix of [re, im] pairs");
                None
            }
        }
    }

    fn state(&mut self, field: &str, v: &Value, dim: Option<usize>, norm_tol: f64) -> Option<(StateSpec, StateVector)> {
        let (spec, state) = match v {
            Value::String(name) => {
                // without a known dimension only the name itself can be checked
                let Some(dim) = dim else {
                    if gates::state_by_name(name, 2).is_none() && name.parse::<usize>().is_err() {
                        self.issue(field, format!("unknown state {name:?}"));
                    }
                    return None;
                };
                match gates::state_by_name(name, dim) {
                    Some(s) => (StateSpec::Name(name.clone()), s),
                    None => {
                        self.issue(field, format!("unknown state {name:?} for dimension {dim}"));
                        return None;
                    }
                }
            }
            Value::Array(items) => {
                let before = self.issues.len();
                let amps: Vec<_> =
                    items.iter().enumerate().map(|(k, c)| self.complex(&format!("{field}[{k}]"), c)).collect();
                if self.issues.len() > before {
                    return None;
                }
                let amps: Vec<[f64; 2]> = amps.into_iter().map(Option::unwrap).collect();
                match StateVector::new(amps.iter().map(|&[re, im]| C64::new(re, im)).collect()) {
                    Ok(s) => (StateSpec::Amplitudes(amps), s),
                    Err(e) => {
                        self.issue(field, e.to_string());
                        return None;
                    }
                }
            }
            _ => {
                self.issue(field, "state must be a name or a list of [re, im] amplitudes");
                return None;
            }
        };
        if let Some(dim) = dim {
            if state.dim() != dim {
                self.issue(field, format!("state has dimension {}, expected {dim}", state.dim()));
                return None;
            }
        }
        if !state.is_normalized(norm_tol) {
            self.issue(field, format!("state is not normalized (norm {})", state.norm()));
            return None;
        }
        Some((spec, state))
    }

    fn basis(&mut self, v: &Value, norm_tol: f64) -> Option<([StateSpec; 2], ControlBasis)> {
        let Some([v0, v1]) = v.as_array().map(Vec::as_slice) else {
            self.issue("measurement_basis", "must be a list of exactly two states");
            return None;
        };
        let s0 = self.state("measurement_basis[0]", v0, Some(2), norm_tol);
        let s1 = self.state("measurement_basis[1]", v1, Some(2), norm_tol);
        let ((spec0, chi0), (spec1, chi1)) = (s0?, s1?);
        match ControlBasis::with_tolerance(chi0, chi1, norm_tol) {
            Ok(b) => Some(([spec0, spec1], b)),
            Err(e) => {
                self.issue("measurement_basis", e.to_string());
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields(err: ConfigError) -> Vec<String> {
        match err {
            ConfigError::Invalid(issues) => issues.into_iter().map(|i| i.field).collect(),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config() {
        let cfg = parse_config(r#"{"gate_a":"X","gate_b":"Z","control":"+","target":"0","command":"run"}"#).unwrap();
        assert_eq!(cfg.command, Command::Run);
        assert_eq!(cfg.resolved().a_gate, gates::x());
        assert_eq!(cfg.resolved().basis, ControlBasis::computational());
    }

    #[test]
    fn unknown_gate_names_field() {
        let err =
            parse_config(r#"{"gate_a":"Q","gate_b":"Z","control":"+","target":"0","command":"run"}"#).unwrap_err();
        assert_eq!(fields(err), ["gate_a"]);
    }

    #[test]
    fn matrix_gate_resolves_to_x() {
        let cfg =
            parse_config(r#"{"gate_a":[[[0,0],[1,0]],[[1,0],[0,0]]],"gate_b":"Z","control":"a","command":"relabel"}"#)
                .unwrap();
        assert_eq!(cfg.resolved().a_gate, gates::x());
        assert!(cfg.target.is_none());
    }

    #[test]
    fn reports_all_issues() {
        let err = parse_config(
            r#"{"gate_a":"Q","gate_b":[[1]],"control":[[1,0],[1,0]],"command":"run","extra":1,"tolerances":{"speed":1}}"#,
        )
        .unwrap_err();
        let f = fields(err);
        for want in ["extra", "tolerances.speed", "gate_a", "gate_b[0][0]", "control", "target"] {
            assert!(f.iter().any(|x| x == want), "missing {want} in {f:?}");
        }
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_config("{"), Err(ConfigError::Parse(_))));
        assert!(matches!(parse_config("[]"), Err(ConfigError::Invalid(_))));
        assert!(matches!(parse_config(r#"{"a":NaN}"#), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn command_line_command() {
        let text = r#"{"gate_a":"X","gate_b":"Z","control":"+"}"#;
        assert_eq!(fields(parse_config(text).unwrap_err()), ["command"]);
        assert_eq!(parse_config_for(text, Some(Command::Relabel)).unwrap().command, Command::Relabel);
        let text = r#"{"gate_a":"X","gate_b":"Z","control":"+","command":"report"}"#;
        assert_eq!(fields(parse_config_for(text, Some(Command::Relabel)).unwrap_err()), ["command"]);
    }

    #[test]
    fn dimension_and_basis_checks() {
        let err = parse_config(r#"{"gate_a":"X","gate_b":[[[1,0]]],"control":"+","command":"relabel"}"#).unwrap_err();
        assert_eq!(fields(err), ["gate_b"]);
        let err =
            parse_config(r#"{"gate_a":"X","gate_b":"Z","control":"+","target":"2","command":"run"}"#).unwrap_err();
        assert_eq!(fields(err), ["target"]);
        let err = parse_config(
            r#"{"gate_a":"X","gate_b":"Z","control":"+","target":"0","command":"run","measurement_basis":["+","0"]}"#,
        )
        .unwrap_err();
        assert_eq!(fields(err), ["measurement_basis"]);
    }

    #[test]
    fn tolerance_overrides_loosen_normalization() {
        let text = r#"{"gate_a":"X","gate_b":"Z","control":[[0.70710678,0],[0.70710678,0]],"command":"relabel"}"#;
        assert!(parse_config(text).is_err());
        let loose = text.replace("}", r#","tolerances":{"normalization":1e-6}}"#);
        let cfg = parse_config(&loose).unwrap();
        assert_eq!(cfg.resolved().tolerances.normalization, 1e-6);
        assert_eq!(cfg.tolerances.unitarity, None);
    }

    #[test]
    fn echo_round_trips() {
        let text = r#"{"command":"run","gate_a":"RX(0.25)","gate_b":[[[1,0],[0,0]],[[0,0],[-1,0]]],
            "control":[[0.6,0],[0,0.8]],"target":"1","measurement_basis":["+i","-i"],"tolerances":{"parallel":1e-9}}"#;
        let cfg = parse_config(text).unwrap();
        let echoed = serde_json::to_string(&cfg).unwrap();
        assert_eq!(parse_config(&echoed).unwrap(), cfg);
    }
}
