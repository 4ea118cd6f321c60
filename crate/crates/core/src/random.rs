//! Random states, matrices and Haar-distributed unitaries for sweeps and
//! tests.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::linalg::{Operator, StateVector};

/// Standard complex Gaussian sample (Box-Muller), variance 1/2 per part.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let u1 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2 = rng.gen::<f64>();
    let r = (-u1.ln()).sqrt();
    C64::from_polar(r, std::f64::consts::TAU * u2)
}

/// Matrix with i.i.d. complex Gaussian entries.
pub fn matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    Operator::from_vec_unchecked(dim, (0..dim * dim).map(|_| gaussian(rng)).collect())
}

/// Haar-random pure state.
pub fn state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector {
    StateVector::from_vec_unchecked((0..dim).map(|_| gaussian(rng)).collect())
        .normalized()
        .expect("gaussian vector has nonzero norm")
}

/// Haar-random unitary: Gram-Schmidt on the columns of a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Operator {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let p: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= p * y;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            entries[i * dim + j] = *z;
        }
    }
    Operator::from_vec_unchecked(dim, entries)
}
