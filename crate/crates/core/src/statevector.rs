//! Dense state-vector simulation.
//!
//! Amplitudes are stored as `2^N` [`Complex64`] values indexed by basis state,
//! where bit `b` of the index is the state of qubit `b`. Gate kernels work
//! in place on strided amplitude pairs; states above [`PARALLEL_THRESHOLD`]
//! amplitudes are processed with rayon.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, Turn};
use crate::error::{Error, Result};

/// Default upper bound on register width (2^24 amplitudes, 256 MiB).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Amplitude count above which kernels run in parallel.
pub const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Norm tolerance maintained by every gate application.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A computational basis label; bit `b` is the state of qubit `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(pub usize);

impl BasisIndex {
    pub fn value(self) -> usize {
        self.0
    }

    pub fn bit(self, qubit: usize) -> bool {
        (self.0 >> qubit) & 1 == 1
    }

    /// `width` bits, most significant first.
    pub fn to_bitstring(self, width: usize) -> String {
        (0..width)
            .rev()
            .map(|q| if self.bit(q) { '1' } else { '0' })
            .collect()
    }
}

impl From<usize> for BasisIndex {
    fn from(v: usize) -> Self {
        BasisIndex(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|basis⟩` on `num_qubits` qubits, capped at [`DEFAULT_MAX_QUBITS`].
    pub fn new_basis_state(num_qubits: usize, basis: impl Into<BasisIndex>) -> Result<Self> {
        Self::new_basis_state_capped(num_qubits, basis, DEFAULT_MAX_QUBITS)
    }

    pub fn new_basis_state_capped(
        num_qubits: usize,
        basis: impl Into<BasisIndex>,
        max_qubits: usize,
    ) -> Result<Self> {
        check_width(num_qubits, max_qubits)?;
        let basis = basis.into().0;
        let dim = 1usize << num_qubits;
        if basis >= dim {
            return Err(Error::BasisOutOfRange {
                index: basis,
                num_qubits,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[basis] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps explicit amplitudes. The length must be a power of two; the norm
    /// must be 1 within `1e-10`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_width(num_qubits, DEFAULT_MAX_QUBITS)?;
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Tensor product `high ⊗ low`: `low` occupies the least significant qubits.
    pub fn tensor(high: &StateVector, low: &StateVector) -> Result<Self> {
        let num_qubits = high.num_qubits + low.num_qubits;
        check_width(num_qubits, DEFAULT_MAX_QUBITS)?;
        let amplitudes = high
            .amplitudes
            .iter()
            .flat_map(|h| low.amplitudes.iter().map(move |l| h * l))
            .collect();
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, basis: impl Into<BasisIndex>) -> Complex64 {
        self.amplitudes[basis.into().0]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let amps = &mut self.amplitudes;
        match gate {
            Gate::H(q) => hadamard(amps, *q),
            Gate::X(q) => pauli_x(amps, *q),
            Gate::Swap(a, b) => swap(amps, *a, *b),
            Gate::Phase {
                turn,
                controls,
                target,
            } => {
                let mut mask = 1usize << target;
                let mut value = mask;
                for c in controls {
                    mask |= 1 << c.qubit;
                    value |= c.polarity.required_bit() << c.qubit;
                }
                phase(amps, mask, value, *turn);
            }
        }
        Ok(())
    }

    /// Left fold of [`apply_gate`](Self::apply_gate) over the circuit.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::WidthMismatch {
                circuit: circuit.num_qubits(),
                state: self.num_qubits,
            });
        }
        for g in circuit.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Consuming variant of [`apply_circuit`](Self::apply_circuit).
    pub fn run(mut self, circuit: &Circuit) -> Result<Self> {
        self.apply_circuit(circuit)?;
        Ok(self)
    }

    /// Probability of every basis state with nonzero amplitude.
    pub fn outcome_distribution(&self) -> BTreeMap<BasisIndex, f64> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let p = a.norm_sqr();
                (p > 0.0).then_some((BasisIndex(i), p))
            })
            .collect()
    }

    /// Probabilities of the register formed by `qubits` (first entry = least
    /// significant bit of the result), marginalized over all other qubits.
    pub fn marginal_distribution(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let key = qubits
                .iter()
                .enumerate()
                .fold(0usize, |acc, (pos, &q)| acc | (((i >> q) & 1) << pos));
            probs[key] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// The unique basis index carrying probability at least `1 - tolerance`.
    pub fn deterministic_outcome(&self, tolerance: f64) -> Result<BasisIndex> {
        check_tolerance(tolerance)?;
        let (best, p) = argmax(self.amplitudes.iter().map(Complex64::norm_sqr));
        if p >= 1.0 - tolerance {
            Ok(BasisIndex(best))
        } else {
            Err(Error::NotDeterministic {
                threshold: 1.0 - tolerance,
                best,
                best_probability: p,
            })
        }
    }

    /// Deterministic readout of the sub-register `qubits` (first entry = LSB).
    pub fn deterministic_register_outcome(
        &self,
        qubits: &[usize],
        tolerance: f64,
    ) -> Result<usize> {
        check_tolerance(tolerance)?;
        let probs = self.marginal_distribution(qubits)?;
        let (best, p) = argmax(probs.into_iter());
        if p >= 1.0 - tolerance {
            Ok(best)
        } else {
            Err(Error::NotDeterministic {
                threshold: 1.0 - tolerance,
                best,
                best_probability: p,
            })
        }
    }

    /// Draws `shots` computational-basis samples without collapsing the state.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, shots: usize) -> Vec<BasisIndex> {
        let mut cumulative = Vec::with_capacity(self.amplitudes.len());
        let mut acc = 0.0;
        for a in &self.amplitudes {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        (0..shots)
            .map(|_| {
                let r: f64 = rng.random::<f64>() * acc;
                let i = cumulative.partition_point(|&c| c <= r);
                BasisIndex(i.min(self.amplitudes.len() - 1))
            })
            .collect()
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_distance(&self, other: &StateVector) -> f64 {
        assert_eq!(self.num_qubits, other.num_qubits, "width mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_width(num_qubits: usize, max_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > max_qubits {
        return Err(Error::WidthOutOfRange {
            width: num_qubits,
            max: max_qubits,
        });
    }
    Ok(())
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tolerance} must lie strictly between 0 and 1"
        )));
    }
    Ok(())
}

fn argmax(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, p)| {
            if p > best.1 {
                (i, p)
            } else {
                best
            }
        })
}

/// Calls `f(lo, hi)` on every amplitude pair differing only in bit `qubit`.
fn for_each_pair<F>(amps: &mut [Complex64], qubit: usize, f: F)
where
    F: Fn(&mut Complex64, &mut Complex64) + Sync + Send,
{
    let stride = 1usize << qubit;
    let pairs = |chunk: &mut [Complex64]| {
        let (lo, hi) = chunk.split_at_mut(stride);
        lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| f(a, b));
    };
    if amps.len() >= PARALLEL_THRESHOLD {
        if stride >= PARALLEL_THRESHOLD / 2 {
            amps.chunks_mut(2 * stride).for_each(|chunk| {
                let (lo, hi) = chunk.split_at_mut(stride);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .for_each(|(a, b)| f(a, b));
            });
        } else {
            amps.par_chunks_mut(2 * stride).for_each(pairs);
        }
    } else {
        amps.chunks_mut(2 * stride).for_each(pairs);
    }
}

fn hadamard(amps: &mut [Complex64], qubit: usize) {
    for_each_pair(amps, qubit, |a, b| {
        let (x, y) = (*a, *b);
        *a = (x + y) * FRAC_1_SQRT_2;
        *b = (x - y) * FRAC_1_SQRT_2;
    });
}

fn pauli_x(amps: &mut [Complex64], qubit: usize) {
    for_each_pair(amps, qubit, std::mem::swap);
}

fn swap(amps: &mut [Complex64], a: usize, b: usize) {
    let (ma, mb) = (1usize << a, 1usize << b);
    // visit each index with bit a = 1 and bit b = 0 once
    for i in 0..amps.len() {
        if i & ma != 0 && i & mb == 0 {
            amps.swap(i, (i & !ma) | mb);
        }
    }
}

/// Multiplies every amplitude with `index & mask == value` by `e^{i2π·turn}`.
fn phase(amps: &mut [Complex64], mask: usize, value: usize, turn: Turn) {
    if turn.is_zero() {
        return;
    }
    let factor = turn.phase_factor();
    if amps.len() >= PARALLEL_THRESHOLD {
        amps.par_iter_mut()
            .enumerate()
            .filter(|(i, _)| i & mask == value)
            .for_each(|(_, a)| *a *= factor);
        return;
    }
    // enumerate the free bits as submasks of !mask
    let free = (amps.len() - 1) & !mask;
    let mut sub = 0usize;
    loop {
        amps[sub | value] *= factor;
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
}
