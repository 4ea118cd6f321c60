//! The two-process quantum switch.
//!
//! Joint states are ordered control first: index `c*d + t` for control
//! basis state `c` and target basis state `t`. With the default convention,
//! control `|a⟩ = |0⟩` routes the target through A and then B:
//!
//! ```text
//! S = |a⟩⟨a| ⊗ B·A + |b⟩⟨b| ⊗ A·B
//! ```

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{Operator, StateVector, Tolerances, ZERO};

/// Outcomes with probability below this have no conditional state.
pub const MIN_PROBABILITY: f64 = 1e-14;

/// Which order the control state `|a⟩` selects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ControlConvention {
    /// `|a⟩`: A first, then B.
    #[default]
    AFirstOnA,
    /// `|a⟩`: B first, then A.
    BFirstOnA,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchCircuit {
    a_gate: Operator,
    b_gate: Operator,
    convention: ControlConvention,
    tol: Tolerances,
}

impl SwitchCircuit {
    pub fn new(a_gate: Operator, b_gate: Operator) -> Result<Self> {
        Self::with_options(a_gate, b_gate, ControlConvention::default(), Tolerances::default())
    }

    pub fn with_options(
        a_gate: Operator,
        b_gate: Operator,
        convention: ControlConvention,
        tol: Tolerances,
    ) -> Result<Self> {
        if a_gate.dim() != b_gate.dim() {
            return Err(Error::DimensionMismatch { expected: a_gate.dim(), found: b_gate.dim() });
        }
        for (gate, op) in [("A", &a_gate), ("B", &b_gate)] {
            let defect = op.unitarity_defect();
            if defect.is_nan() || defect >= tol.unitarity {
                return Err(Error::NotUnitary { gate, defect });
            }
        }
        Ok(SwitchCircuit { a_gate, b_gate, convention, tol })
    }

    pub fn a_gate(&self) -> &Operator {
        &self.a_gate
    }

    pub fn b_gate(&self) -> &Operator {
        &self.b_gate
    }

    /// Target dimension.
    pub fn d(&self) -> usize {
        self.a_gate.dim()
    }

    pub fn convention(&self) -> ControlConvention {
        self.convention
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// The target operators selected by control `|a⟩` and `|b⟩`.
    pub fn branch_products(&self) -> (Operator, Operator) {
        let ab = &self.b_gate * &self.a_gate; // A applied first
        let ba = &self.a_gate * &self.b_gate;
        match self.convention {
            ControlConvention::AFirstOnA => (ab, ba),
            ControlConvention::BFirstOnA => (ba, ab),
        }
    }

    fn require_control(&self, control: &StateVector) -> Result<()> {
        if control.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: control.dim() });
        }
        control.require_normalized(self.tol.normalization)
    }
}

/// Block-diagonal switch unitary on the `2d`-dimensional control⊗target space.
pub fn switch_unitary(c: &SwitchCircuit) -> Operator {
    let d = c.d();
    let n = 2 * d;
    let (p0, p1) = c.branch_products();
    let mut entries = vec![ZERO; n * n];
    for (block, p) in [(0, &p0), (1, &p1)] {
        for i in 0..d {
            for j in 0..d {
                entries[(block * d + i) * n + block * d + j] = p[(i, j)];
            }
        }
    }
    Operator::from_vec_unchecked(n, entries)
}

pub fn run_switch(c: &SwitchCircuit, control: &StateVector, target: &StateVector) -> Result<StateVector> {
    c.require_control(control)?;
    if target.dim() != c.d() {
        return Err(Error::DimensionMismatch { expected: c.d(), found: target.dim() });
    }
    target.require_normalized(c.tol.normalization)?;
    switch_unitary(c).apply(&control.tensor(target))
}

/// An orthonormal measurement basis of the control qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlBasis {
    chi0: StateVector,
    chi1: StateVector,
}

impl ControlBasis {
    pub fn new(chi0: StateVector, chi1: StateVector) -> Result<Self> {
        Self::with_tolerance(chi0, chi1, crate::DEFAULT_TOL)
    }

    pub fn with_tolerance(chi0: StateVector, chi1: StateVector, tol: f64) -> Result<Self> {
        for chi in [&chi0, &chi1] {
            if chi.dim() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: chi.dim() });
            }
            chi.require_normalized(tol)?;
        }
        let overlap = chi0.inner(&chi1)?.norm();
        if overlap > tol {
            return Err(Error::NotOrthogonal { overlap });
        }
        Ok(ControlBasis { chi0, chi1 })
    }

    /// `{|a⟩, |b⟩}`
    pub fn computational() -> Self {
        ControlBasis { chi0: StateVector::basis(2, 0), chi1: StateVector::basis(2, 1) }
    }

    /// `{|+⟩, |−⟩}`
    pub fn plus_minus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ControlBasis { chi0: StateVector::from_real(&[s, s]).unwrap(), chi1: StateVector::from_real(&[s, -s]).unwrap() }
    }

    /// The basis `{χ, χ⊥}` for `χ = (α, β)`, with `χ⊥ ∝ (conj(β), −conj(α))`
    /// phased so its first nonzero amplitude is real and positive.
    pub fn completing(chi0: &StateVector) -> Result<Self> {
        if chi0.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: chi0.dim() });
        }
        let chi0 = chi0.normalized()?;
        let [alpha, beta] = [chi0.amplitudes()[0], chi0.amplitudes()[1]];
        let mut perp = [beta.conj(), -alpha.conj()];
        crate::process::fix_phase(&mut perp);
        let chi1 = StateVector::from_vec_unchecked(perp.to_vec());
        Ok(ControlBasis { chi0, chi1 })
    }

    pub fn states(&self) -> [&StateVector; 2] {
        [&self.chi0, &self.chi1]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchOutcome {
    pub outcome_index: usize,
    pub probability: f64,
    /// Normalized post-measurement target state; `None` when the outcome has
    /// probability below [`MIN_PROBABILITY`].
    pub conditional_target: Option<StateVector>,
}

impl SwitchOutcome {
    pub fn is_defined(&self) -> bool {
        self.conditional_target.is_some()
    }
}

/// Measure the control factor of a joint state in `basis`.
pub fn measure_control(joint: &StateVector, basis: &ControlBasis) -> Result<[SwitchOutcome; 2]> {
    measure_control_with(joint, basis, crate::DEFAULT_TOL)
}

pub fn measure_control_with(joint: &StateVector, basis: &ControlBasis, tol: f64) -> Result<[SwitchOutcome; 2]> {
    let n = joint.dim();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: 2 * (n / 2).max(1), found: n });
    }
    joint.require_normalized(tol)?;
    let d = n / 2;
    let amps = joint.amplitudes();
    let outcome = |k: usize| {
        let chi = basis.states()[k].amplitudes();
        let partial: Vec<C64> = (0..d).map(|t| chi[0].conj() * amps[t] + chi[1].conj() * amps[d + t]).collect();
        let probability: f64 = partial.iter().map(|z| z.norm_sqr()).sum();
        let conditional_target = (probability >= MIN_PROBABILITY).then(|| {
            let s = 1.0 / probability.sqrt();
            StateVector::from_vec_unchecked(partial.iter().map(|z| z * s).collect())
        });
        SwitchOutcome { outcome_index: k, probability, conditional_target }
    };
    Ok([outcome(0), outcome(1)])
}

/// The (unnormalized) target operator for preparing the control in
/// `control_in` and then finding it in `chi_out`:
/// `⟨χ|a⟩⟨a|c⟩·P_a + ⟨χ|b⟩⟨b|c⟩·P_b`.
pub fn conditional_operator(c: &SwitchCircuit, control_in: &StateVector, chi_out: &StateVector) -> Result<Operator> {
    c.require_control(control_in)?;
    if chi_out.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: chi_out.dim() });
    }
    let (p0, p1) = c.branch_products();
    let (cin, chi) = (control_in.amplitudes(), chi_out.amplitudes());
    let w0 = chi[0].conj() * cin[0];
    let w1 = chi[1].conj() * cin[1];
    Ok(&p0.scale(w0) + &p1.scale(w1))
}
