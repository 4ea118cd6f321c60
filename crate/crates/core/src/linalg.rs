//! Dense complex linear algebra for small systems.
//!
//! Matrices are stored row-major: entry `(i, j)` is row `i`, column `j`, and
//! operators act on column vectors, so row indices are output indices.
//! Every constructor rejects NaN and infinities; after construction values
//! are immutable.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Default absolute tolerance for entrywise comparisons and invariant checks.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Tolerances used by the validity checks of the switch and relabeler.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Maximum unitarity defect accepted for a branch gate.
    pub unitarity: f64,
    /// Maximum deviation of a state's norm from 1.
    pub normalization: f64,
    /// Two process vectors count as parallel when their normalized overlap
    /// modulus exceeds `1 - parallel`.
    pub parallel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { unitarity: DEFAULT_TOL, normalization: DEFAULT_TOL, parallel: DEFAULT_TOL }
    }
}

fn check_finite(values: &[C64], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

fn max_abs_diff(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Index of the largest-magnitude entry; the first one wins ties.
fn argmax_norm(values: &[C64]) -> usize {
    let mut best = 0;
    for (k, z) in values.iter().enumerate() {
        if z.norm() > values[best].norm() {
            best = k;
        }
    }
    best
}

/// Max-entry distance after rotating `y` onto the phase of `x` at the
/// largest-magnitude entry of `x`.
fn phase_aligned_diff(x: &[C64], y: &[C64]) -> f64 {
    let k = argmax_norm(x);
    let (xk, yk) = (x[k], y[k]);
    if xk.norm() == 0.0 || yk.norm() == 0.0 {
        return max_abs_diff(x, y);
    }
    let rot = (xk / xk.norm()) / (yk / yk.norm());
    x.iter().zip(y).map(|(a, b)| (a - b * rot).norm()).fold(0.0, f64::max)
}

/// A pure state (or, where an operation allows it, an unnormalized vector).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Empty("state vector"));
        }
        check_finite(&amps, "state vector")?;
        Ok(StateVector { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(amps: Vec<C64>) -> Self {
        debug_assert!(!amps.is_empty());
        StateVector { amps }
    }

    /// Computational basis state `|k⟩` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn require_normalized(&self, tol: f64) -> Result<()> {
        if self.is_normalized(tol) {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm: self.norm() })
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::ZeroNorm { norm: n });
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        StateVector { amps: self.amps.iter().map(|z| z * c).collect() }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Kronecker product; `self` is the slow (major) index.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        StateVector { amps }
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> Result<bool> {
        same_dim(self.dim(), other.dim())?;
        Ok(max_abs_diff(&self.amps, &other.amps) <= tol)
    }

    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        same_dim(self.dim(), other.dim())?;
        Ok(phase_aligned_diff(&self.amps, &other.amps) <= tol)
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<C64>,
}

impl Operator {
    /// Build from `dim * dim` row-major entries.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty("operator"));
        }
        same_dim(dim * dim, entries.len())?;
        check_finite(&entries, "operator")?;
        Ok(Operator { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty("operator"));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), expected: dim });
            }
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect())
    }

    pub(crate) fn from_vec_unchecked(dim: usize, entries: Vec<C64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Operator { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for k in 0..dim {
            op.entries[k * dim + k] = ONE;
        }
        op
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Operator { dim, entries: vec![ZERO; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.entries.chunks(self.dim)
    }

    pub fn matmul(&self, other: &Operator) -> Result<Operator> {
        same_dim(self.dim, other.dim)?;
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        Ok(Operator { dim: d, entries: out })
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        same_dim(self.dim, v.dim())?;
        let amps = self.rows().map(|row| row.iter().zip(v.amplitudes()).map(|(a, b)| a * b).sum()).collect();
        Ok(StateVector { amps })
    }

    pub fn scale(&self, c: C64) -> Operator {
        Operator { dim: self.dim, entries: self.entries.iter().map(|z| z * c).collect() }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Operator {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                out[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Operator { dim: d, entries: out }
    }

    /// Kronecker product: entry `(i*dy + k, j*dy + l)` is `self[i,j] * other[k,l]`.
    pub fn tensor(&self, other: &Operator) -> Operator {
        let (dx, dy) = (self.dim, other.dim);
        let n = dx * dy;
        let mut out = vec![ZERO; n * n];
        for i in 0..dx {
            for j in 0..dx {
                let x = self.entries[i * dx + j];
                for k in 0..dy {
                    for l in 0..dy {
                        out[(i * dy + k) * n + (j * dy + l)] = x * other.entries[k * dy + l];
                    }
                }
            }
        }
        Operator { dim: n, entries: out }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self.entries[k * self.dim + k]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖M†M − I‖_F`; zero exactly for unitary `M`.
    pub fn unitarity_defect(&self) -> f64 {
        let mut gram = &self.dagger() * self;
        for k in 0..self.dim {
            gram.entries[k * self.dim + k] -= ONE;
        }
        gram.frobenius_norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        same_dim(self.dim, other.dim)?;
        Ok(max_abs_diff(&self.entries, &other.entries))
    }

    pub fn approx_eq(&self, other: &Operator, tol: f64) -> Result<bool> {
        Ok(self.max_abs_diff(other)? <= tol)
    }

    /// Like [`approx_eq`](Self::approx_eq) but ignoring a global phase,
    /// fixed at the largest-magnitude entry of `self`.
    pub fn approx_eq_up_to_phase(&self, other: &Operator, tol: f64) -> Result<bool> {
        same_dim(self.dim, other.dim)?;
        Ok(phase_aligned_diff(&self.entries, &other.entries) <= tol)
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of range");
        &self.entries[i * self.dim + j]
    }
}

/// Panics on dimension mismatch; use [`Operator::matmul`] for a checked product.
impl Mul<&Operator> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.matmul(rhs).expect("operator product dimension mismatch")
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator sum dimension mismatch");
        Operator { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator difference dimension mismatch");
        Operator { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|z| format!("{z:.4}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn tensor_product(x: &Operator, y: &Operator) -> Operator {
    x.tensor(y)
}

pub fn dagger(x: &Operator) -> Operator {
    x.dagger()
}

/// Hilbert-Schmidt inner product `Tr(x† y)`.
pub fn hs_inner(x: &Operator, y: &Operator) -> Result<C64> {
    same_dim(x.dim, y.dim)?;
    Ok(x.entries.iter().zip(&y.entries).map(|(a, b)| a.conj() * b).sum())
}

pub fn unitarity_defect(x: &Operator) -> f64 {
    x.unitarity_defect()
}
