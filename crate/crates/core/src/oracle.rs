//! Classical reference implementations for tests and acceptance checks.
//!
//! Nothing here calls the state-vector gate kernels: gates are expanded into
//! explicit dense matrices straight from their definitions, Fourier states
//! are summed term by term, and array updates are plain modular arithmetic.
//! Clarity over speed; everything is capped at [`MAX_ORACLE_QUBITS`].

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::statevector::StateVector;

pub const MAX_ORACLE_QUBITS: usize = 12;

/// Dense matrices are limited further: `4^n` entries each.
pub const MAX_DENSE_QUBITS: usize = 10;

pub type DenseMatrix = Vec<Vec<Complex64>>;

fn check(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::WidthOutOfRange { width: n, max });
    }
    Ok(())
}

/// Number of ones.
pub fn ref_popcount(bits: &[u8]) -> usize {
    bits.iter().filter(|&&b| b == 1).count()
}

/// Amplitudes `2^{-n/2} e^{i2π kd/2^n}` by direct summation.
pub fn ref_dft_state(d: u64, n: usize) -> Result<StateVector> {
    check(n, MAX_ORACLE_QUBITS)?;
    let dim = 1u64 << n;
    if d >= dim {
        return Err(Error::ValueOutOfRange {
            value: d,
            bound: dim,
        });
    }
    let scale = 1.0 / (dim as f64).sqrt();
    let amplitudes = (0..dim)
        .map(|k| {
            let phase = ((k * d) % dim) as f64 / dim as f64;
            Complex64::from_polar(scale, TAU * phase)
        })
        .collect();
    StateVector::from_amplitudes(amplitudes)
}

/// Binary-fraction form of the phase qubit `l` carries when `d` is held in
/// Fourier space: `Σ_{k=0}^{n-l-1} d_k 2^{k-n+l}`.
pub fn ref_fourier_phase(d: u64, l: usize, n: usize) -> f64 {
    (0..n - l)
        .map(|k| ((d >> k) & 1) as f64 * 2f64.powi(k as i32 - n as i32 + l as i32))
        .sum()
}

/// `|2^{-m} Σ_{k=0}^{2^m-1} e^{i2πk(φ - j/2^m)}|²`, summed term by term.
pub fn ref_pea_probability(phi: f64, m: usize, j: u64) -> f64 {
    let terms = 1u64 << m;
    let delta = phi - j as f64 / terms as f64;
    let sum: Complex64 = (0..terms)
        .map(|k| Complex64::cis(TAU * ((k as f64 * delta).rem_euclid(1.0))))
        .sum();
    (sum / terms as f64).norm_sqr()
}

/// `values[j] += addend (mod 2^p)` wherever `j & mask == value`.
pub fn ref_array_update(
    values: &[u64],
    addend: u64,
    mask: usize,
    value: usize,
    p: usize,
) -> Vec<u64> {
    let modulus = 1u64 << p;
    values
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            if j & mask == value {
                (v + addend) % modulus
            } else {
                v
            }
        })
        .collect()
}

/// `(first + step·j) mod 2^p` for `j < 2^m`.
pub fn ref_arithmetic_series(first: u64, step: u64, m: usize, p: usize) -> Vec<u64> {
    let modulus = 1u64 << p;
    (0..1u64 << m)
        .map(|j| (first + step * j) % modulus)
        .collect()
}

fn bit(i: usize, q: usize) -> usize {
    (i >> q) & 1
}

/// Matrix element `⟨row| G |col⟩` of a gate on `n` qubits, from its definition.
fn gate_element(gate: &Gate, row: usize, col: usize) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match gate {
        Gate::H(q) => {
            if row & !(1 << q) != col & !(1 << q) {
                return zero;
            }
            let sign = if bit(row, *q) == 1 && bit(col, *q) == 1 {
                -1.0
            } else {
                1.0
            };
            Complex64::new(sign * std::f64::consts::FRAC_1_SQRT_2, 0.0)
        }
        Gate::X(q) => {
            if row == col ^ (1 << q) {
                one
            } else {
                zero
            }
        }
        Gate::Swap(a, b) => {
            let swapped = {
                let (ba, bb) = (bit(col, *a), bit(col, *b));
                (col & !(1 << a) & !(1 << b)) | (bb << a) | (ba << b)
            };
            if row == swapped {
                one
            } else {
                zero
            }
        }
        Gate::Phase {
            turn,
            controls,
            target,
        } => {
            if row != col {
                return zero;
            }
            let fires = bit(col, *target) == 1
                && controls
                    .iter()
                    .all(|c| bit(col, c.qubit) == c.polarity.required_bit());
            if fires {
                Complex64::cis(TAU * turn.to_f64())
            } else {
                one
            }
        }
    }
}

/// Explicit `2^n × 2^n` matrix of one gate.
pub fn dense_gate_matrix(gate: &Gate, n: usize) -> Result<DenseMatrix> {
    check(n, MAX_DENSE_QUBITS)?;
    gate.validate(n)?;
    let dim = 1usize << n;
    Ok((0..dim)
        .map(|r| (0..dim).map(|c| gate_element(gate, r, c)).collect())
        .collect())
}

pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let dim = a.len();
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| (0..dim).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &DenseMatrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Product of all gate matrices, last gate leftmost.
pub fn dense_circuit_unitary(circuit: &Circuit) -> Result<DenseMatrix> {
    let n = circuit.num_qubits();
    check(n, MAX_DENSE_QUBITS)?;
    let dim = 1usize << n;
    let mut u: DenseMatrix = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    for g in circuit.gates() {
        u = mat_mul(&dense_gate_matrix(g, n)?, &u);
    }
    Ok(u)
}

/// Applies the circuit gate by gate as dense matrix-vector products.
pub fn dense_apply(circuit: &Circuit, amplitudes: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = circuit.num_qubits();
    check(n, MAX_DENSE_QUBITS)?;
    if amplitudes.len() != 1 << n {
        return Err(Error::WidthMismatch {
            circuit: n,
            state: amplitudes.len().trailing_zeros() as usize,
        });
    }
    let mut v = amplitudes.to_vec();
    for g in circuit.gates() {
        v = mat_vec(&dense_gate_matrix(g, n)?, &v);
    }
    Ok(v)
}
