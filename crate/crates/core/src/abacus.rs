//! Deterministic qubit counting.
//!
//! The counter is a phase-estimation circuit whose eigenphase for input
//! `|q⟩` is `N/2^m`, `N` being the number of ones (or zeros) in `q`. Every
//! input qubit deposits a fixed phase increment on each ancilla, so the
//! controlled powers of `U` collapse into `n·m` singly-controlled rotations
//! applied directly to the ancillas, and the inverse QFT reads `N` out exactly.
//!
//! Layout matches [`crate::pea`]: input qubits `0..n`, ancillas `n..n+m`.

use crate::circuit::{Circuit, Control, DyadicTurn, Gate};
use crate::error::{Error, Result};
use crate::pea::{power_label, PhaseTable, PREPARE_LABEL};
use crate::qft::build_inverse_qft;
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

/// Longest bit sequence accepted by [`run_count`].
pub const MAX_RUN_COUNT_BITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountTarget {
    Ones,
    Zeros,
}

/// How many ancillas to allocate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AncillaSizing {
    /// `⌈log2(n+1)⌉`: enough bits for every count `0..=n`.
    #[default]
    Exact,
    /// `⌈log2 n⌉` (at least 1). Counts are then reported mod `2^m`, so the
    /// all-ones input wraps to 0 whenever `n` is a power of two.
    Compat,
}

/// `⌈log2(n+1)⌉`.
pub fn ancilla_width(n: usize) -> usize {
    ancilla_width_with(n, AncillaSizing::Exact)
}

pub fn ancilla_width_with(n: usize, sizing: AncillaSizing) -> usize {
    let ceil_log2 = |x: usize| (usize::BITS - (x - 1).leading_zeros()) as usize;
    match sizing {
        AncillaSizing::Exact => ceil_log2(n + 1),
        AncillaSizing::Compat => ceil_log2(n.max(1)).max(1),
    }
}

/// Entry `q` is `N(q) / 2^m`, `N` counting ones or zeros among the `n` bits of `q`.
pub fn count_phase_table(n: usize, target: CountTarget) -> Result<PhaseTable> {
    if n == 0 || n > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    let m = ancilla_width(n) as u32;
    PhaseTable::from_dyadic((0..1usize << n).map(|q| {
        let ones = q.count_ones() as u64;
        let count = match target {
            CountTarget::Ones => ones,
            CountTarget::Zeros => n as u64 - ones,
        };
        DyadicTurn::new(count, m).expect("exponent within range")
    }))
}

/// Counting circuit with [`AncillaSizing::Exact`].
pub fn build_counter(n: usize, target: CountTarget) -> Result<Circuit> {
    build_counter_with(n, target, AncillaSizing::Exact)
}

/// Hadamards on the ancillas; for each ancilla `l` a block `U^{2^l}` of `n`
/// rotations by `1/2^{m-l}` controlled by the input qubits (negative controls
/// when counting zeros) and targeting ancilla `l`; inverse QFT with swaps.
pub fn build_counter_with(n: usize, target: CountTarget, sizing: AncillaSizing) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::WidthOutOfRange {
            width: 0,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    let m = ancilla_width_with(n, sizing);
    if n + m > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n + m,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    let mut c = Circuit::new(n + m)?;
    c.block(PREPARE_LABEL, |c| {
        for q in (n..n + m).rev() {
            c.push(Gate::H(q))?;
        }
        Ok(())
    })?;
    // highest power first
    for l in (0..m).rev() {
        let turn = DyadicTurn::inverse_pow2((m - l) as u32)?;
        c.block(power_label(l), |c| {
            for k in (0..n).rev() {
                let control = match target {
                    CountTarget::Ones => Control::positive(k),
                    CountTarget::Zeros => Control::negative(k),
                };
                c.push(Gate::controlled_phase(turn, vec![control], n + l))?;
            }
            Ok(())
        })?;
    }
    let ancillas: Vec<usize> = (n..n + m).collect();
    c.append_mapped(&build_inverse_qft(m, true)?, &ancillas)?;
    Ok(c)
}

/// Simulates the ones-counter on the basis input `bits` (`bits[k]` is qubit `k`).
pub fn run_count(bits: &[u8]) -> Result<usize> {
    run_count_with(bits, CountTarget::Ones, 1e-9)
}

pub fn run_count_with(bits: &[u8], target: CountTarget, tolerance: f64) -> Result<usize> {
    Ok(simulate_count(bits, target, tolerance)?.0)
}

/// Returns `(count, probability of that count)`.
pub fn simulate_count(bits: &[u8], target: CountTarget, tolerance: f64) -> Result<(usize, f64)> {
    let n = bits.len();
    if n == 0 || n > MAX_RUN_COUNT_BITS {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: MAX_RUN_COUNT_BITS,
        });
    }
    let mut input = 0usize;
    for (k, &b) in bits.iter().enumerate() {
        match b {
            0 => {}
            1 => input |= 1 << k,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "bit value {other} is not 0 or 1"
                )))
            }
        }
    }
    let circuit = build_counter(n, target)?;
    let m = circuit.num_qubits() - n;
    let state = StateVector::new_basis_state(n + m, input)?.run(&circuit)?;
    let ancillas: Vec<usize> = (n..n + m).collect();
    let count = state.deterministic_register_outcome(&ancillas, tolerance)?;
    let probability = state.marginal_distribution(&ancillas)?[count];
    Ok((count, probability))
}

/// Parses a bit string written most significant qubit first (`"101"` is
/// `|q2 q1 q0⟩ = |101⟩`) into per-qubit bits, `result[k]` = qubit `k`.
pub fn bits_from_str(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .rev()
        .map(|ch| match ch {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::InvalidArgument(format!(
                "bit string contains {other:?}; only 0 and 1 are allowed"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(n: u64, e: u32) -> DyadicTurn {
        DyadicTurn::new(n, e).unwrap()
    }

    #[test]
    fn widths() {
        assert_eq!(ancilla_width(1), 1);
        assert_eq!(ancilla_width(3), 2);
        assert_eq!(ancilla_width(4), 3);
        assert_eq!(ancilla_width(7), 3);
        assert_eq!(ancilla_width(8), 4);
        assert_eq!(ancilla_width_with(4, AncillaSizing::Compat), 2);
        assert_eq!(ancilla_width_with(1, AncillaSizing::Compat), 1);
        assert_eq!(ancilla_width_with(5, AncillaSizing::Compat), 3);
    }

    #[test]
    fn phase_tables() {
        let ones = count_phase_table(3, CountTarget::Ones).unwrap();
        let expected: Vec<_> = [0, 1, 1, 2, 1, 2, 2, 3].iter().map(|&c| dy(c, 2)).collect();
        assert_eq!(ones, PhaseTable::from_dyadic(expected).unwrap());
        let zeros = count_phase_table(3, CountTarget::Zeros).unwrap();
        assert_eq!(zeros.phase(0).as_dyadic(), Some(dy(3, 2)));
        assert_eq!(
            count_phase_table(1, CountTarget::Ones).unwrap(),
            PhaseTable::from_dyadic([DyadicTurn::ZERO, DyadicTurn::HALF]).unwrap()
        );
    }

    #[test]
    fn counter_structure() {
        let c = build_counter(4, CountTarget::Ones).unwrap();
        assert_eq!(c.num_qubits(), 7);
        let blocks = c.block_gate_counts(|name| name.starts_with("U^"));
        assert_eq!(blocks.cphase, 12);
        assert_eq!(blocks.total(), 12);
        let zeros = build_counter(4, CountTarget::Zeros).unwrap();
        assert_eq!(
            zeros
                .block_gate_counts(|name| name.starts_with("U^"))
                .cphase,
            12
        );
    }

    #[test]
    fn table_rows() {
        assert_eq!(run_count(&bits_from_str("101").unwrap()).unwrap(), 2);
        assert_eq!(run_count(&[1, 1, 1]).unwrap(), 3);
        assert_eq!(run_count(&[0]).unwrap(), 0);
        assert_eq!(
            run_count_with(&[0, 0, 0], CountTarget::Ones, 1e-9).unwrap(),
            0
        );
        assert_eq!(
            run_count_with(&[0, 0, 0], CountTarget::Zeros, 1e-9).unwrap(),
            3
        );
        assert_eq!(run_count(&bits_from_str("11011").unwrap()).unwrap(), 4);
    }

    #[test]
    fn compat_sizing_wraps() {
        let c = build_counter_with(4, CountTarget::Ones, AncillaSizing::Compat).unwrap();
        let s = StateVector::new_basis_state(6, 0b1111)
            .unwrap()
            .run(&c)
            .unwrap();
        assert_eq!(s.deterministic_register_outcome(&[4, 5], 1e-9).unwrap(), 0);
    }

    #[test]
    fn input_validation() {
        assert!(run_count(&[]).is_err());
        assert!(run_count(&[0; 17]).is_err());
        assert!(run_count(&[2]).is_err());
        assert!(bits_from_str("10a").is_err());
        assert!(build_counter(0, CountTarget::Ones).is_err());
        assert!(build_counter(19, CountTarget::Ones).is_ok());
        assert!(build_counter(20, CountTarget::Ones).is_err());
    }

    #[test]
    fn bits_are_msb_first() {
        assert_eq!(bits_from_str("110").unwrap(), vec![0, 1, 1]);
    }
}
