//! Processes as vectors.
//!
//! An operator `U` on a `d`-dimensional system is mapped to a vector in
//! `H_in ⊗ H_out` by sending each input basis state `|i⟩` to the block
//! `|i⟩_in ⊗ U|i⟩_out`:
//!
//! ```text
//! coeffs[i*d + j] = U[j, i]
//! ```
//!
//! No `1/√d` factor is applied, so the coefficient inner product of two
//! vectorized operators is exactly `Tr(A† B)` and a unitary has norm `√d`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{Operator, DEFAULT_TOL, ZERO};

/// Vectors with a norm below this are treated as zero.
pub const MIN_NORM: f64 = 1e-12;

/// Coefficients with a modulus at or below this are skipped when choosing
/// the phase reference.
pub const PHASE_EPS: f64 = 1e-12;

/// A process in vector form with a human-readable name.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessVector {
    d: usize,
    coeffs: Vec<C64>,
    label: String,
}

impl ProcessVector {
    pub fn new(d: usize, coeffs: Vec<C64>, label: impl Into<String>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty("process vector"));
        }
        if coeffs.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, found: coeffs.len() });
        }
        if !coeffs.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("process vector"));
        }
        Ok(ProcessVector { d, coeffs, label: label.into() })
    }

    /// System dimension; the vector itself has `d²` coefficients.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: C64) -> ProcessVector {
        ProcessVector { d: self.d, coeffs: self.coeffs.iter().map(|z| z * c).collect(), label: self.label.clone() }
    }

    /// Rescale to unit norm, keeping the label.
    pub fn normalized(&self) -> Result<ProcessVector> {
        let n = self.norm();
        if n < MIN_NORM {
            return Err(Error::ZeroNorm { norm: n });
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn to_operator(&self) -> Operator {
        devectorize(self)
    }
}

pub fn vectorize(u: &Operator, label: impl Into<String>) -> ProcessVector {
    let d = u.dim();
    let mut coeffs = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            coeffs.push(u[(j, i)]);
        }
    }
    ProcessVector { d, coeffs, label: label.into() }
}

pub fn devectorize(v: &ProcessVector) -> Operator {
    let d = v.d;
    let mut entries = vec![ZERO; d * d];
    for i in 0..d {
        for j in 0..d {
            entries[j * d + i] = v.coeffs[i * d + j];
        }
    }
    Operator::from_vec_unchecked(d, entries)
}

fn same_d(v: &ProcessVector, w: &ProcessVector) -> Result<()> {
    if v.d == w.d {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: v.d, found: w.d })
    }
}

fn dot(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

/// `⟨v|w⟩`; equals `Tr(devectorize(v)† devectorize(w))`.
pub fn overlap(v: &ProcessVector, w: &ProcessVector) -> Result<C64> {
    same_d(v, w)?;
    Ok(dot(&v.coeffs, &w.coeffs))
}

/// `α·v + β·w`, labelled `(α·L_v + β·L_w)`.
pub fn superpose(alpha: C64, v: &ProcessVector, beta: C64, w: &ProcessVector) -> Result<ProcessVector> {
    same_d(v, w)?;
    let coeffs = v.coeffs.iter().zip(&w.coeffs).map(|(a, b)| alpha * a + beta * b).collect();
    let label = compose_label(&[(alpha, v.label()), (beta, w.label())]);
    ProcessVector::new(v.d, coeffs, label)
}

/// Rotate `coeffs` by a global phase so that the first coefficient with
/// modulus above [`PHASE_EPS`] is real and positive.
pub fn fix_phase(coeffs: &mut [C64]) {
    if let Some(k) = coeffs.iter().position(|z| z.norm() > PHASE_EPS) {
        let c = coeffs[k];
        let rot = c.conj() / c.norm();
        for z in coeffs.iter_mut() {
            *z *= rot;
        }
        coeffs[k] = C64::new(c.norm(), 0.0);
    }
}

/// An orthonormal pair of process vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessPair {
    pub first: ProcessVector,
    pub second: ProcessVector,
}

/// Orthonormalize `(v, w)`: `v` is normalized, and the projection of `w`
/// onto `v` is subtracted before normalizing `w`. The second vector gets the
/// phase convention of [`fix_phase`].
///
/// Fails with [`Error::OrderUndefined`] when `v` and `w` are parallel up to
/// a phase.
pub fn distill_orthogonal(v: &ProcessVector, w: &ProcessVector) -> Result<ProcessPair> {
    distill_orthogonal_with(v, w, DEFAULT_TOL)
}

pub fn distill_orthogonal_with(v: &ProcessVector, w: &ProcessVector, parallel_tol: f64) -> Result<ProcessPair> {
    same_d(v, w)?;
    let v_hat = v.normalized()?;
    let w_norm = w.norm();
    if w_norm < MIN_NORM {
        return Err(Error::ZeroNorm { norm: w_norm });
    }

    let proj = dot(&v_hat.coeffs, &w.coeffs);
    let normalized_overlap = proj.norm() / w_norm;
    if normalized_overlap > 1.0 - parallel_tol {
        return Err(Error::OrderUndefined { overlap: normalized_overlap });
    }

    let mut rest: Vec<C64> = w.coeffs.iter().zip(&v_hat.coeffs).map(|(b, a)| b - proj * a).collect();
    // second Gram-Schmidt pass for nearly parallel inputs
    let again = dot(&v_hat.coeffs, &rest);
    for (r, a) in rest.iter_mut().zip(&v_hat.coeffs) {
        *r -= again * a;
    }

    let n = rest.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n < MIN_NORM {
        return Err(Error::OrderUndefined { overlap: normalized_overlap });
    }
    for z in rest.iter_mut() {
        *z /= n;
    }
    fix_phase(&mut rest);

    let label = if normalized_overlap <= DEFAULT_TOL { w.label.clone() } else { format!("{}⊥", w.label) };
    Ok(ProcessPair { first: v_hat, second: ProcessVector { d: v.d, coeffs: rest, label } })
}

const MINUS: &str = "\u{2212}";

fn fmt_decimal(x: f64) -> String {
    let s = format!("{:.4}", x.abs());
    if s == "0.0000" {
        s
    } else if x < 0.0 {
        format!("{MINUS}{s}")
    } else {
        s
    }
}

/// Render an amplitude to four decimals (ties to even), e.g. `0.7071`,
/// `−0.5000i`, `(0.5000−0.5000i)`.
pub fn format_amplitude(c: C64) -> String {
    let re = fmt_decimal(c.re);
    let im = fmt_decimal(c.im);
    let zero = "0.0000";
    match (re == zero, im == zero) {
        (_, true) => re,
        (true, false) => format!("{im}i"),
        (false, false) => {
            if let Some(abs_im) = im.strip_prefix(MINUS) {
                format!("({re}{MINUS}{abs_im}i)")
            } else {
                format!("({re}+{im}i)")
            }
        }
    }
}

/// Compose a linear-combination label such as `(0.7071·A − 0.7071·B)`.
///
/// Terms whose amplitude renders as zero are dropped; a single remaining
/// term with amplitude `1.0000` renders as the bare label.
pub fn compose_label(terms: &[(C64, &str)]) -> String {
    let kept: Vec<(String, &str)> =
        terms.iter().map(|&(c, l)| (format_amplitude(c), l)).filter(|(c, _)| c != "0.0000").collect();
    match kept.as_slice() {
        [] => "0".to_string(),
        [(c, l)] if c == "1.0000" => l.to_string(),
        _ => {
            let mut out = String::from("(");
            for (k, (c, l)) in kept.iter().enumerate() {
                match (k, c.strip_prefix(MINUS)) {
                    (0, _) => out.push_str(c),
                    (_, Some(abs)) => {
                        out.push_str(" \u{2212} ");
                        out.push_str(abs);
                    }
                    (_, None) => {
                        out.push_str(" + ");
                        out.push_str(c);
                    }
                }
                out.push('·');
                out.push_str(l);
            }
            out.push(')');
            out
        }
    }
}
