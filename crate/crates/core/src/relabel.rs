//! Definite-order descriptions of the switch.
//!
//! A control state `α|a⟩ + β|b⟩` is mapped to the process that happens
//! first, `α|Â⟩ + β|B̂⟩`, where `|Â⟩, |B̂⟩` are the orthonormalized process
//! vectors of the branch gates. The second process is the vector of the
//! same two-dimensional span orthogonal to the first,
//! `conj(β)|Â⟩ − conj(α)|B̂⟩`, with its global phase fixed so that its
//! first nonzero amplitude over `(Â, B̂)` is real and positive.
//!
//! Process vectors produced here are scaled to norm `√d`, the norm of a
//! vectorized unitary, so that devectorizing `|Â⟩` gives back `A` itself.
//! Orthogonality and normalization are otherwise the usual ones.
//!
//! Nothing here changes the dynamics: [`crate::switch`] results are
//! computed from the circuit alone.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{hs_inner, Operator, StateVector, DEFAULT_TOL};
use crate::process::{
    compose_label, distill_orthogonal_with, fix_phase, overlap, vectorize, ProcessPair, ProcessVector, MIN_NORM,
};
use crate::switch::{conditional_operator, ControlBasis, SwitchCircuit};

pub const LABEL_A: &str = "A";
pub const LABEL_B: &str = "B";

#[derive(Clone, Debug, PartialEq)]
pub struct OrderedDescription {
    /// The control state, normalized.
    pub control_state: StateVector,
    pub first: ProcessVector,
    pub second: ProcessVector,
    /// Amplitudes of `first` over `(Â, B̂)`; equal to the control amplitudes.
    pub first_amplitudes: [C64; 2],
    /// Amplitudes of `second` over `(Â, B̂)`.
    pub second_amplitudes: [C64; 2],
    /// `(Â, B̂)` at norm `√d`.
    pub basis: ProcessPair,
    /// Whether `|B⟩` had to be orthogonalized against `|A⟩`.
    pub distilled: bool,
    /// `|⟨A|B⟩| / (‖A‖·‖B‖)` before distillation.
    pub ab_overlap: f64,
    pub narrative: String,
}

/// Relabel the switch on gates `a_gate`, `b_gate` for the given control
/// state, with default tolerances and convention.
pub fn relabel(a_gate: &Operator, b_gate: &Operator, control: &StateVector) -> Result<OrderedDescription> {
    let circuit = SwitchCircuit::new(a_gate.clone(), b_gate.clone())?;
    relabel_circuit(&circuit, control)
}

pub fn relabel_circuit(c: &SwitchCircuit, control: &StateVector) -> Result<OrderedDescription> {
    let tol = c.tolerances();
    if control.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: control.dim() });
    }
    control.require_normalized(tol.normalization)?;
    let control = control.normalized()?;

    let va = vectorize(c.a_gate(), LABEL_A);
    let vb = vectorize(c.b_gate(), LABEL_B);
    let ab_overlap = overlap(&va, &vb)?.norm() / (va.norm() * vb.norm());
    if ab_overlap > 1.0 - tol.parallel {
        return Err(Error::OrderUndefined { overlap: ab_overlap });
    }
    let distilled = ab_overlap > DEFAULT_TOL;
    let unit = if distilled {
        distill_orthogonal_with(&va, &vb, tol.parallel)?
    } else {
        ProcessPair { first: va.normalized()?, second: vb.normalized()? }
    };

    let scale = C64::new((c.d() as f64).sqrt(), 0.0);
    let basis = ProcessPair { first: unit.first.scale(scale), second: unit.second.scale(scale) };

    let [alpha, beta] = [control.amplitudes()[0], control.amplitudes()[1]];
    let first_amplitudes = [alpha, beta];
    let mut second_amplitudes = [beta.conj(), -alpha.conj()];
    fix_phase(&mut second_amplitudes);

    let first = combine(&basis, first_amplitudes)?;
    let second = combine(&basis, second_amplitudes)?;
    let mut desc = OrderedDescription {
        control_state: control,
        first,
        second,
        first_amplitudes,
        second_amplitudes,
        basis,
        distilled,
        ab_overlap,
        narrative: String::new(),
    };
    desc.narrative = narrative(&desc);
    Ok(desc)
}

fn combine(basis: &ProcessPair, amps: [C64; 2]) -> Result<ProcessVector> {
    let (a, b) = (&basis.first, &basis.second);
    let coeffs = a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| amps[0] * x + amps[1] * y).collect();
    let label = compose_label(&[(amps[0], a.label()), (amps[1], b.label())]);
    ProcessVector::new(a.d(), coeffs, label)
}

/// Two lines: the quantum-language sentence and the ordinary-language
/// order, e.g. `first A then B`.
pub fn narrative(desc: &OrderedDescription) -> String {
    let (l1, l2) = (desc.first.label(), desc.second.label());
    format!(
        "{l1} happens first, not its orthogonal {l2}, then {l2} happens, not its orthogonal {l1}.\n\
         first {l1} then {l2}"
    )
}

/// How the relabeled processes relate to what the switch actually does to
/// the target when the control is measured in `{control, control⊥}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub description: OrderedDescription,
    pub first_operator: Operator,
    pub second_operator: Operator,
    /// `second_operator · first_operator`: the relabeled processes applied
    /// in their stated temporal order.
    pub sequential_operator: Operator,
    pub first_unitarity_defect: f64,
    pub second_unitarity_defect: f64,
    pub measurement_basis: ControlBasis,
    pub switch_conditionals: [Operator; 2],
    /// Rows: `first_operator`, `sequential_operator`; columns: the two
    /// conditionals. Entries are `|Tr(X†Y)| / (‖X‖·‖Y‖)`, or 0 when either
    /// operator vanishes.
    pub overlap_table: [[f64; 2]; 2],
    pub first_is_unitary: bool,
    /// Index of the conditional equal to `sequential_operator` up to a
    /// global phase, if any.
    pub sequential_match: Option<usize>,
    pub notes: Vec<String>,
}

pub fn normalized_hs_overlap(x: &Operator, y: &Operator) -> Result<f64> {
    let (nx, ny) = (x.frobenius_norm(), y.frobenius_norm());
    if nx < MIN_NORM || ny < MIN_NORM {
        return Ok(0.0);
    }
    Ok(hs_inner(x, y)?.norm() / (nx * ny))
}

pub fn consistency_report(c: &SwitchCircuit, control: &StateVector) -> Result<ConsistencyReport> {
    let description = relabel_circuit(c, control)?;
    let first_operator = description.first.to_operator();
    let second_operator = description.second.to_operator();
    let sequential_operator = &second_operator * &first_operator;
    let first_unitarity_defect = first_operator.unitarity_defect();
    let second_unitarity_defect = second_operator.unitarity_defect();

    let measurement_basis = ControlBasis::completing(&description.control_state)?;
    let [chi0, chi1] = measurement_basis.states();
    let switch_conditionals = [
        conditional_operator(c, &description.control_state, chi0)?,
        conditional_operator(c, &description.control_state, chi1)?,
    ];

    let mut overlap_table = [[0.0; 2]; 2];
    for (row, x) in [&first_operator, &sequential_operator].into_iter().enumerate() {
        for (col, k) in switch_conditionals.iter().enumerate() {
            overlap_table[row][col] = normalized_hs_overlap(x, k)?;
        }
    }

    let unitarity_tol = c.tolerances().unitarity;
    let first_is_unitary = first_unitarity_defect < unitarity_tol;
    let mut sequential_match = None;
    for (k, cond) in switch_conditionals.iter().enumerate() {
        if cond.approx_eq_up_to_phase(&sequential_operator, DEFAULT_TOL)? {
            sequential_match = Some(k);
            break;
        }
    }

    let mut notes = Vec::new();
    if description.distilled {
        notes.push(format!(
            "A and B are not orthogonal (normalized overlap {:.6e}); B was distilled against A before relabeling",
            description.ab_overlap
        ));
    }
    notes.push(if first_is_unitary {
        format!("first process is unitary (defect {first_unitarity_defect:.3e})")
    } else {
        format!("first process is not unitary (defect {first_unitarity_defect:.3e})")
    });
    notes.push(if second_unitarity_defect < unitarity_tol {
        format!("second process is unitary (defect {second_unitarity_defect:.3e})")
    } else {
        format!("second process is not unitary (defect {second_unitarity_defect:.3e})")
    });
    notes.push(match sequential_match {
        Some(k) => format!("second·first equals switch conditional {k} up to a global phase"),
        None => "second·first equals neither switch conditional up to a global phase".to_string(),
    });

    Ok(ConsistencyReport {
        description,
        first_operator,
        second_operator,
        sequential_operator,
        first_unitarity_defect,
        second_unitarity_defect,
        measurement_basis,
        switch_conditionals,
        overlap_table,
        first_is_unitary,
        sequential_match,
        notes,
    })
}
