//! Brute-force oracles shared by the integration tests. These work on plain
//! nested vectors and never call the library's arithmetic.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use qswitch::{Operator, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Grid = Vec<Vec<C64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn grid(op: &Operator) -> Grid {
    let d = op.dim();
    (0..d).map(|i| (0..d).map(|j| op.entries()[i * d + j]).collect()).collect()
}

pub fn to_op(g: &Grid) -> Operator {
    Operator::from_rows(g.clone()).unwrap()
}

pub fn zeros(n: usize) -> Grid {
    vec![vec![C64::new(0.0, 0.0); n]; n]
}

pub fn mul(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Grid, b: &Grid) -> Grid {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &Grid, c: C64) -> Grid {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn adjoint(a: &Grid) -> Grid {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn kron(a: &Grid, b: &Grid) -> Grid {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn trace(a: &Grid) -> C64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// `Tr(x† y)` by explicit product and trace.
pub fn hs_trace(x: &Grid, y: &Grid) -> C64 {
    trace(&mul(&adjoint(x), y))
}

pub fn apply(a: &Grid, v: &[C64]) -> Vec<C64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn ket_bra(u: &[C64], v: &[C64]) -> Grid {
    u.iter().map(|a| v.iter().map(|b| a * b.conj()).collect()).collect()
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `|0⟩⟨0| ⊗ B·A + |1⟩⟨1| ⊗ A·B`.
pub fn brute_switch(a: &Grid, b: &Grid) -> Grid {
    let e0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let e1 = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    add(&kron(&ket_bra(&e0, &e0), &mul(b, a)), &kron(&ket_bra(&e1, &e1), &mul(a, b)))
}

/// `Σ_j |⟨χ ⊗ e_j | ψ⟩|²` by expanding every product basis vector.
pub fn brute_probability(joint: &[C64], chi: &[C64], d: usize) -> f64 {
    (0..d)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); d];
            e[j] = C64::new(1.0, 0.0);
            let bra = kron_vec(chi, &e);
            let amp: C64 = bra.iter().zip(joint).map(|(x, y)| x.conj() * y).sum();
            amp.norm_sqr()
        })
        .sum()
}

pub fn max_diff(a: &Grid, b: &Grid) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn vec_max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn state(amps: &[C64]) -> StateVector {
    StateVector::new(amps.to_vec()).unwrap()
}

pub const VALID_CONFIGS: [&str; 3] = [
    r#"{"command":"run","gate_a":"X","gate_b":"Z","control":"+","target":"0","measurement_basis":["+","-"]}"#,
    r#"{"command":"run","gate_a":[[[0,0],[1,0]],[[1,0],[0,0]]],"gate_b":"RY(0.3)","control":[[0.6,0],[0,0.8]],"target":"1"}"#,
    r#"{"command":"run","gate_a":"H","gate_b":"S","control":"a","target":"+i","tolerances":{"unitarity":1e-9}}"#,
];

const STRUCTURAL: [char; 7] = ['{', '}', '[', ']', '"', ',', ':'];

/// Configs that are malformed by construction: each must be rejected with
/// a parse (2) or validation (3) error.
pub fn malformed_configs(seed: u64, n: usize) -> Vec<String> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    use serde_json::{json, Value};

    let mut rng = rng(seed);
    let bad_values = [
        json!(null),
        json!(true),
        json!(42),
        json!({"name": "X"}),
        json!("?"),
        json!([]),
        json!([[[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]]]),
        json!([[2, 0], [0, 0]]),
        json!([[1, 0], "0"]),
        json!("RX(abc)"),
    ];
    let required = ["gate_a", "gate_b", "control", "target"];
    (0..n)
        .map(|k| {
            let base = VALID_CONFIGS[k % VALID_CONFIGS.len()];
            match rng.gen_range(0..5) {
                0 => base[..rng.gen_range(0..base.len())].to_string(),
                1 => {
                    let mut s = base.to_string();
                    let mut pos = rng.gen_range(0..=s.len());
                    while !s.is_char_boundary(pos) {
                        pos -= 1;
                    }
                    s.insert(pos, *STRUCTURAL.choose(&mut rng).unwrap());
                    s
                }
                2 => {
                    let mut v: Value = serde_json::from_str(base).unwrap();
                    let key = format!("unknown_{}", rng.gen_range(0..1000));
                    v[key] = bad_values.choose(&mut rng).unwrap().clone();
                    v.to_string()
                }
                3 => {
                    let mut v: Value = serde_json::from_str(base).unwrap();
                    let field = ["gate_a", "gate_b", "control", "target", "command", "measurement_basis", "tolerances"]
                        .choose(&mut rng)
                        .unwrap();
                    v[*field] = bad_values.choose(&mut rng).unwrap().clone();
                    v.to_string()
                }
                _ => {
                    let mut v: Value = serde_json::from_str(base).unwrap();
                    v.as_object_mut().unwrap().remove(*required.choose(&mut rng).unwrap());
                    v.to_string()
                }
            }
        })
        .collect()
}
