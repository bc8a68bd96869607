//! QFT-based phase estimation over diagonal unitaries.
//!
//! A diagonal unitary is described by a [`PhaseTable`]: entry `j` is the
//! eigenphase `φ_j` of basis state `|j⟩`, so `U|j⟩ = e^{i2πφ_j}|j⟩`.
//!
//! Register layout for every estimation circuit built here: the `n` input
//! qubits occupy `0..n` and the `m` ancillas occupy `n..n+m`, ancilla `l`
//! controlling `U^{2^l}`. After the inverse QFT the ancilla register, read
//! with qubit `n` as its least significant bit, holds the estimate of
//! `2^m·φ_j`.

use num_complex::Complex64;

use crate::circuit::{Circuit, Control, DyadicTurn, Gate, Polarity, Turn};
use crate::error::{Error, Result};
use crate::qft::build_inverse_qft;
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

/// Label of the block realizing the controlled `U^{2^l}`.
pub fn power_label(l: usize) -> String {
    format!("U^{{2^{l}}}")
}

pub const PREPARE_LABEL: &str = "H^m";

/// The diagonal of a diagonal unitary, one turn per basis state.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseTable {
    num_input_qubits: usize,
    phases: Vec<Turn>,
}

impl PhaseTable {
    /// `phases.len()` must be `2^n` for some `n ≥ 0`.
    pub fn new(phases: Vec<Turn>) -> Result<Self> {
        let len = phases.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "phase table length {len} is not a power of two"
            )));
        }
        let num_input_qubits = len.trailing_zeros() as usize;
        if num_input_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::WidthOutOfRange {
                width: num_input_qubits,
                max: DEFAULT_MAX_QUBITS,
            });
        }
        Ok(Self {
            num_input_qubits,
            phases,
        })
    }

    pub fn from_dyadic(phases: impl IntoIterator<Item = DyadicTurn>) -> Result<Self> {
        Self::new(phases.into_iter().map(Turn::Dyadic).collect())
    }

    pub fn num_input_qubits(&self) -> usize {
        self.num_input_qubits
    }

    pub fn phases(&self) -> &[Turn] {
        &self.phases
    }

    pub fn phase(&self, j: usize) -> Turn {
        self.phases[j]
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// `λ_j = e^{i2πφ_j}`.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.phases.iter().map(|t| t.phase_factor()).collect()
    }
}

/// Entry `j` becomes `(2^l·φ_j) mod 1`.
pub fn diagonal_power(table: &PhaseTable, l: u32) -> PhaseTable {
    PhaseTable {
        num_input_qubits: table.num_input_qubits,
        phases: table.phases.iter().map(|t| t.double_times(l)).collect(),
    }
}

/// True iff every eigenphase is dyadic with denominator exponent at most `m`,
/// which makes the estimation readout certain.
pub fn is_zero_failure(table: &PhaseTable, m: usize) -> bool {
    table
        .phases
        .iter()
        .all(|t| t.as_dyadic().is_some_and(|d| d.exponent() as usize <= m))
}

/// The table `φ_j = j / 2^n` whose estimation reproduces the input.
pub fn identity_phase_table(n: usize) -> Result<PhaseTable> {
    if n > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    PhaseTable::from_dyadic((0..1u64 << n).map(|j| DyadicTurn::new(j, n as u32).unwrap()))
}

fn check_pea_width(n: usize, m: usize) -> Result<()> {
    if m == 0 || n + m > DEFAULT_MAX_QUBITS {
        return Err(Error::WidthOutOfRange {
            width: n + m,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    Ok(())
}

fn push_prepare(c: &mut Circuit, n: usize, m: usize) -> Result<()> {
    c.block(PREPARE_LABEL, |c| {
        for q in (n..n + m).rev() {
            c.push(Gate::H(q))?;
        }
        Ok(())
    })?;
    Ok(())
}

fn push_readout(c: &mut Circuit, n: usize, m: usize) -> Result<()> {
    let ancillas: Vec<usize> = (n..n + m).collect();
    c.append_mapped(&build_inverse_qft(m, true)?, &ancillas)?;
    Ok(())
}

/// Estimation circuit for an arbitrary diagonal unitary.
///
/// Each controlled `U^{2^l}` is lowered to one multi-controlled phase per
/// basis state with a nonzero principal value, the input bit pattern encoded
/// in the control polarities and the target on ancilla `l`.
pub fn build_pea(table: &PhaseTable, m: usize) -> Result<Circuit> {
    let n = table.num_input_qubits;
    check_pea_width(n, m)?;
    let mut c = Circuit::new(n + m)?;
    push_prepare(&mut c, n, m)?;
    for l in 0..m {
        let powered = diagonal_power(table, l as u32);
        c.block(power_label(l), |c| {
            for (j, turn) in powered.phases.iter().enumerate() {
                if turn.is_zero() {
                    continue;
                }
                let controls = (0..n)
                    .map(|q| Control {
                        qubit: q,
                        polarity: Polarity::from_bit((j >> q) & 1 == 1),
                    })
                    .collect();
                c.push(Gate::controlled_phase(*turn, controls, n + l))?;
            }
            Ok(())
        })?;
    }
    push_readout(&mut c, n, m)?;
    Ok(c)
}

/// The `m = n` instance with `φ_j = j/2^n`, each `U^{2^l}` realized as a
/// ladder of singly-controlled `R_k` rotations. Every input `|j⟩` reads out `j`.
pub fn build_qft_pea(n: usize) -> Result<Circuit> {
    if n == 0 || n > 12 {
        return Err(Error::WidthOutOfRange { width: n, max: 12 });
    }
    let mut c = Circuit::new(2 * n)?;
    push_prepare(&mut c, n, n)?;
    for l in 0..n {
        c.block(power_label(l), |c| {
            // 2^l·j/2^n mod 1 keeps only input bits k < n - l
            for k in (0..n - l).rev() {
                c.push(Gate::rk((n - l - k) as u32, k, n + l)?)?;
            }
            Ok(())
        })?;
    }
    push_readout(&mut c, n, n)?;
    Ok(c)
}

/// `P_j = |2^{-m} Σ_{k=0}^{2^m-1} e^{i2πk(φ - j/2^m)}|²`, via the closed-form
/// Dirichlet kernel `sin²(π2^mδ) / (2^{2m} sin²(πδ))`; exactly 1 when `δ = 0`.
pub fn analytic_outcome_probability(phi: Turn, m: usize, j: u64) -> Result<f64> {
    if m == 0 || m > 52 {
        return Err(Error::InvalidArgument(format!(
            "ancilla width {m} out of range 1..=52"
        )));
    }
    if j >> m != 0 {
        return Err(Error::ValueOutOfRange {
            value: j,
            bound: 1u64 << m,
        });
    }
    let delta = match phi {
        Turn::Dyadic(d) => {
            let diff = d - DyadicTurn::new(j, m as u32)?;
            if diff.is_zero() {
                return Ok(1.0);
            }
            diff.to_f64()
        }
        Turn::Real(v) => (v - j as f64 / (1u64 << m) as f64).rem_euclid(1.0),
    };
    let denom = sin_pi(delta);
    if denom == 0.0 {
        return Ok(1.0);
    }
    let scale = (1u64 << m) as f64;
    let ratio = sin_pi(scale * delta) / (scale * denom);
    Ok(ratio * ratio)
}

/// `sin(πx)`, exactly zero at integers.
fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r.fract() == 0.0 {
        0.0
    } else {
        (std::f64::consts::PI * r).sin()
    }
}

/// Full distribution over `j ∈ [0, 2^m)` from [`analytic_outcome_probability`].
pub fn analytic_distribution(phi: Turn, m: usize) -> Result<Vec<f64>> {
    (0..1u64 << m)
        .map(|j| analytic_outcome_probability(phi, m, j))
        .collect()
}

/// Simulates [`build_pea`] on `|0^m⟩ ⊗ |input⟩` and returns the ancilla
/// register's outcome probabilities.
pub fn simulate_pea(table: &PhaseTable, m: usize, input: usize) -> Result<Vec<f64>> {
    let n = table.num_input_qubits;
    let circuit = build_pea(table, m)?;
    if input >> n != 0 {
        return Err(Error::BasisOutOfRange {
            index: input,
            num_qubits: n,
        });
    }
    let state = StateVector::new_basis_state(n + m, input)?.run(&circuit)?;
    let ancillas: Vec<usize> = (n..n + m).collect();
    state.marginal_distribution(&ancillas)
}
