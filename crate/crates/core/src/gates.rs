//! Named single-qubit gates and states.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64 as C64;

use crate::linalg::{Operator, StateVector, I, ONE, ZERO};

fn op2(a: C64, b: C64, c: C64, d: C64) -> Operator {
    Operator::from_vec_unchecked(2, vec![a, b, c, d])
}

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn id() -> Operator {
    Operator::identity(2)
}

pub fn x() -> Operator {
    op2(ZERO, ONE, ONE, ZERO)
}

pub fn y() -> Operator {
    op2(ZERO, -I, I, ZERO)
}

pub fn z() -> Operator {
    op2(ONE, ZERO, ZERO, -ONE)
}

pub fn h() -> Operator {
    let s = r(FRAC_1_SQRT_2);
    op2(s, s, s, -s)
}

pub fn s() -> Operator {
    op2(ONE, ZERO, ZERO, I)
}

pub fn t() -> Operator {
    op2(ONE, ZERO, ZERO, C64::from_polar(1.0, FRAC_PI_4))
}

/// `exp(-i θ X / 2)`
pub fn rx(theta: f64) -> Operator {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    op2(r(c), C64::new(0.0, -s), C64::new(0.0, -s), r(c))
}

/// `exp(-i θ Y / 2)`
pub fn ry(theta: f64) -> Operator {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    op2(r(c), r(-s), r(s), r(c))
}

/// `exp(-i θ Z / 2)`
pub fn rz(theta: f64) -> Operator {
    op2(C64::from_polar(1.0, -theta / 2.0), ZERO, ZERO, C64::from_polar(1.0, theta / 2.0))
}

/// Parse a gate name: `I X Y Z H S T` or `RX(θ)`, `RY(θ)`, `RZ(θ)` with θ
/// in radians. Returns `None` for anything else.
pub fn by_name(name: &str) -> Option<Operator> {
    let name = name.trim();
    match name {
        "I" => return Some(id()),
        "X" => return Some(x()),
        "Y" => return Some(y()),
        "Z" => return Some(z()),
        "H" => return Some(h()),
        "S" => return Some(s()),
        "T" => return Some(t()),
        _ => {}
    }
    let (head, rest) = name.split_at_checked(2)?;
    let arg = rest.trim_start().strip_prefix('(')?.strip_suffix(')')?;
    let theta: f64 = arg.trim().parse().ok()?;
    if !theta.is_finite() {
        return None;
    }
    match head {
        "RX" => Some(rx(theta)),
        "RY" => Some(ry(theta)),
        "RZ" => Some(rz(theta)),
        _ => None,
    }
}

/// Named states: `0`..`d-1` (computational basis), `a`/`b` (aliases of `0`
/// and `1`), and for `d == 2` also `+`, `-`, `+i`, `-i`.
pub fn state_by_name(name: &str, dim: usize) -> Option<StateVector> {
    let s = r(FRAC_1_SQRT_2);
    let qubit = |a: C64, b: C64| (dim == 2).then(|| StateVector::from_vec_unchecked(vec![a, b]));
    match name.trim() {
        "a" if dim >= 1 => Some(StateVector::basis(dim, 0)),
        "b" if dim >= 2 => Some(StateVector::basis(dim, 1)),
        "+" => qubit(s, s),
        "-" => qubit(s, -s),
        "+i" => qubit(s, s * I),
        "-i" => qubit(s, -s * I),
        other => {
            let k: usize = other.parse().ok()?;
            (k < dim).then(|| StateVector::basis(dim, k))
        }
    }
}

/// Names accepted by [`by_name`] without a parameter.
pub const FIXED_NAMES: [&str; 7] = ["I", "X", "Y", "Z", "H", "S", "T"];
