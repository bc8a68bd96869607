//! Quantum Fourier transform builders.
//!
//! The forward transform maps `|d⟩` to `2^{-n/2} Σ_k e^{+i2π dk/2^n} |k⟩`.
//! With swaps enabled the output is in natural qubit order; without them the
//! register comes out bit-reversed.

use num_complex::Complex64;

use crate::circuit::{Circuit, DyadicTurn, Gate};
use crate::encoder::phase_phi_d;
use crate::error::{Error, Result};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

pub const QFT_LABEL: &str = "F";
pub const INVERSE_QFT_LABEL: &str = "F†";
pub const SWAP_LABEL: &str = "Sw";

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    Ok(())
}

/// Forward QFT on qubits `0..n`.
///
/// `n` Hadamards, `n(n-1)/2` singly-controlled `1/2^k` phases and, when
/// `with_swaps`, `⌊n/2⌋` trailing swaps.
pub fn build_qft(n: usize, with_swaps: bool) -> Result<Circuit> {
    check_width(n)?;
    let mut c = Circuit::new(n)?;
    c.block(QFT_LABEL, |c| {
        for target in (0..n).rev() {
            c.push(Gate::H(target))?;
            for control in (0..target).rev() {
                let k = (target - control + 1) as u32;
                c.push(Gate::rk(k, control, target)?)?;
            }
        }
        Ok(())
    })?;
    if with_swaps && n > 1 {
        c.block(SWAP_LABEL, |c| {
            for i in 0..n / 2 {
                c.push(Gate::Swap(i, n - 1 - i))?;
            }
            Ok(())
        })?;
    }
    Ok(c)
}

/// Inverse QFT on qubits `0..n`: the swaps come first (undoing the forward
/// transform's trailing swaps), then the rotations in reverse.
pub fn build_inverse_qft(n: usize, with_swaps: bool) -> Result<Circuit> {
    Ok(build_qft(n, with_swaps)?
        .invert()
        .relabeled(|name| match name {
            QFT_LABEL => INVERSE_QFT_LABEL.to_string(),
            other => other.to_string(),
        }))
}

/// `QFT|d⟩` built directly as the product `⊗_l (|0⟩ + e^{i2π φ_d(l)}|1⟩)/√2`,
/// qubit `l` carrying `φ_d(l) = (d mod 2^{n-l}) / 2^{n-l}`.
pub fn analytic_fourier_state(d: u64, n: usize) -> Result<StateVector> {
    check_width(n)?;
    if d >> n != 0 {
        return Err(Error::ValueOutOfRange {
            value: d,
            bound: 1u64 << n,
        });
    }
    let phases: Vec<Complex64> = (0..n)
        .map(|l| phase_phi_d(d, l, n).map(DyadicTurn::phase_factor))
        .collect::<Result<_>>()?;
    let scale = 0.5f64.powf(n as f64 / 2.0);
    let amplitudes = (0..1usize << n)
        .map(|k| {
            phases
                .iter()
                .enumerate()
                .filter(|(l, _)| (k >> l) & 1 == 1)
                .fold(Complex64::new(scale, 0.0), |acc, (_, f)| acc * f)
        })
        .collect();
    StateVector::from_amplitudes(amplitudes)
}
