//! Phase-shift integer encoding.
//!
//! An integer `d < 2^n` is written into an `n`-qubit register as one
//! uncontrolled phase per qubit after a layer of Hadamards, producing the
//! Fourier image of `|d⟩`. Every amplitude keeps modulus `2^{-n/2}`; the data
//! lives entirely in the phases. An inverse QFT with swaps reads it back.

use crate::circuit::{Circuit, DyadicTurn, Gate};
use crate::error::{Error, Result};
use crate::qft::build_inverse_qft;
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

pub const ENCODE_LABEL: &str = "U^c";

fn check_args(d: u64, n: usize) -> Result<()> {
    if n == 0 || n > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    if d >> n != 0 {
        return Err(Error::ValueOutOfRange {
            value: d,
            bound: 1u64 << n,
        });
    }
    Ok(())
}

/// `φ_d(l) = (d mod 2^{n-l}) / 2^{n-l}`, the phase qubit `l` carries.
pub fn phase_phi_d(d: u64, l: usize, n: usize) -> Result<DyadicTurn> {
    if n == 0 || n > 62 {
        return Err(Error::WidthOutOfRange { width: n, max: 62 });
    }
    if d >> n != 0 {
        return Err(Error::ValueOutOfRange {
            value: d,
            bound: 1u64 << n,
        });
    }
    if l >= n {
        return Err(Error::InvalidArgument(format!(
            "qubit level {l} out of range for {n} qubits"
        )));
    }
    let e = (n - l) as u32;
    DyadicTurn::new(d & ((1u64 << e) - 1), e)
}

/// All `n` phases, most significant qubit first (`l = n-1, …, 0`).
pub fn phase_turns(d: u64, n: usize) -> Result<Vec<DyadicTurn>> {
    check_args(d, n)?;
    (0..n).rev().map(|l| phase_phi_d(d, l, n)).collect()
}

/// The uncontrolled rotation layer alone (no Hadamards), emitted from the
/// most significant qubit down.
pub fn encoder_phase_layer(d: u64, n: usize) -> Result<Circuit> {
    check_args(d, n)?;
    let mut c = Circuit::new(n)?;
    c.block(ENCODE_LABEL, |c| {
        for l in (0..n).rev() {
            c.push(Gate::phase(phase_phi_d(d, l, n)?, l))?;
        }
        Ok(())
    })?;
    Ok(c)
}

/// `n` Hadamards followed by `n` phases; on `|0…0⟩` yields the Fourier image of `|d⟩`.
pub fn build_encoder(d: u64, n: usize) -> Result<Circuit> {
    check_args(d, n)?;
    let mut c = Circuit::new(n)?;
    c.block("H", |c| {
        for l in (0..n).rev() {
            c.push(Gate::H(l))?;
        }
        Ok(())
    })?;
    c.append(&encoder_phase_layer(d, n)?)?;
    Ok(c)
}

/// Runs [`build_encoder`] on `|0…0⟩`.
pub fn encode(d: u64, n: usize) -> Result<StateVector> {
    StateVector::new_basis_state(n, 0)?.run(&build_encoder(d, n)?)
}

/// Applies the inverse QFT with swaps and reads the register deterministically.
pub fn decode_register(state: &StateVector, n: usize, tolerance: f64) -> Result<u64> {
    if state.num_qubits() != n {
        return Err(Error::WidthMismatch {
            circuit: n,
            state: state.num_qubits(),
        });
    }
    let decoded = state.clone().run(&build_inverse_qft(n, true)?)?;
    Ok(decoded.deterministic_outcome(tolerance)?.0 as u64)
}

/// Two's-complement convenience: encodes `value mod 2^n`.
pub fn encode_signed(value: i64, n: usize) -> Result<StateVector> {
    if n == 0 || n > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    let half = 1i64 << (n - 1);
    if value < -half || value >= half {
        return Err(Error::InvalidArgument(format!(
            "{value} does not fit in {n}-bit two's complement"
        )));
    }
    encode(value.rem_euclid(1i64 << n) as u64, n)
}

/// Inverse of [`encode_signed`].
pub fn decode_signed(state: &StateVector, n: usize, tolerance: f64) -> Result<i64> {
    let raw = decode_register(state, n, tolerance)? as i64;
    let half = 1i64 << (n - 1);
    Ok(if raw >= half { raw - (1i64 << n) } else { raw })
}
