//! Quantum arrays: `2^{-m/2} Σ_j |j, d^j⟩` over an index part and a data part.
//!
//! The register is `|j_{m-1} … j_0, d_{p-1} … d_0⟩`: data qubits occupy
//! `0..p`, index qubits `p..p+m`, so basis index = `j·2^p + d`.
//!
//! Creation writes each `d^j` as Fourier-space phases on the data qubits
//! (index-dependent phases through multi-controlled gates, a shared part
//! through plain rotations) and finishes with an inverse QFT. Updates move the
//! data back into Fourier space, add a constant under an index predicate and
//! transform back, touching every selected entry in a single pass. Data
//! arithmetic is modular: values wrap mod `2^p`.

use std::collections::HashMap;

use crate::circuit::{Circuit, Control, DyadicTurn, Gate, Polarity};
use crate::error::{Error, Result};
use crate::qft::{build_inverse_qft, build_qft};
use crate::statevector::{StateVector, DEFAULT_MAX_QUBITS};

pub const DEFAULT_READ_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrayLayout {
    index_qubits: usize,
    data_qubits: usize,
}

impl ArrayLayout {
    pub fn new(index_qubits: usize, data_qubits: usize) -> Result<Self> {
        if index_qubits == 0 || data_qubits == 0 {
            return Err(Error::LayoutMismatch(format!(
                "index and data parts need at least one qubit (got m={index_qubits}, p={data_qubits})"
            )));
        }
        if index_qubits + data_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::WidthOutOfRange {
                width: index_qubits + data_qubits,
                max: DEFAULT_MAX_QUBITS,
            });
        }
        Ok(Self {
            index_qubits,
            data_qubits,
        })
    }

    /// Smallest index width holding `len` entries; `len` must be a power of two.
    pub fn for_len(len: usize, data_qubits: usize) -> Result<Self> {
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LayoutMismatch(format!(
                "array length {len} is not a power of two >= 2; pad with zeros"
            )));
        }
        Self::new(len.trailing_zeros() as usize, data_qubits)
    }

    pub fn index_qubits(&self) -> usize {
        self.index_qubits
    }

    pub fn data_qubits(&self) -> usize {
        self.data_qubits
    }

    pub fn num_qubits(&self) -> usize {
        self.index_qubits + self.data_qubits
    }

    pub fn len(&self) -> usize {
        1 << self.index_qubits
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn data_modulus(&self) -> u64 {
        1u64 << self.data_qubits
    }

    /// Qubit holding index bit `b`.
    pub fn index_qubit(&self, b: usize) -> usize {
        self.data_qubits + b
    }

    pub fn data_register(&self) -> Vec<usize> {
        (0..self.data_qubits).collect()
    }
}

/// Selects indices with `j & mask == value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexPredicate {
    mask: usize,
    value: usize,
}

impl IndexPredicate {
    pub fn new(mask: usize, value: usize) -> Result<Self> {
        if value & !mask != 0 {
            return Err(Error::InvalidArgument(format!(
                "predicate match {value:#b} sets bits outside mask {mask:#b}"
            )));
        }
        Ok(Self { mask, value })
    }

    pub fn all() -> Self {
        Self { mask: 0, value: 0 }
    }

    pub fn even() -> Self {
        Self { mask: 1, value: 0 }
    }

    pub fn odd() -> Self {
        Self { mask: 1, value: 1 }
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn matches(&self, j: usize) -> bool {
        j & self.mask == self.value
    }

    fn check(&self, layout: &ArrayLayout) -> Result<()> {
        if self.mask >> layout.index_qubits != 0 {
            return Err(Error::InvalidArgument(format!(
                "predicate mask {:#b} exceeds {} index bits",
                self.mask, layout.index_qubits
            )));
        }
        Ok(())
    }

    fn controls(&self, layout: &ArrayLayout) -> Vec<Control> {
        (0..layout.index_qubits)
            .rev()
            .filter(|b| (self.mask >> b) & 1 == 1)
            .map(|b| Control {
                qubit: layout.index_qubit(b),
                polarity: Polarity::from_bit((self.value >> b) & 1 == 1),
            })
            .collect()
    }
}

/// `2^m` stored values, each in `[0, 2^p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayContents {
    values: Vec<u64>,
}

impl ArrayContents {
    /// Values must already lie in `[0, 2^p)` for the layout they are used with.
    pub fn new(values: Vec<u64>) -> Self {
        Self { values }
    }

    /// Reduces every value mod `2^p`.
    pub fn reduced(values: Vec<u64>, layout: &ArrayLayout) -> Self {
        let mask = layout.data_modulus() - 1;
        Self {
            values: values.into_iter().map(|v| v & mask).collect(),
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check(&self, layout: &ArrayLayout) -> Result<()> {
        if self.values.len() != layout.len() {
            return Err(Error::LayoutMismatch(format!(
                "{} values for an array of length {}",
                self.values.len(),
                layout.len()
            )));
        }
        if let Some(&v) = self.values.iter().find(|&&v| v >= layout.data_modulus()) {
            return Err(Error::ValueOutOfRange {
                value: v,
                bound: layout.data_modulus(),
            });
        }
        Ok(())
    }
}

impl From<Vec<u64>> for ArrayContents {
    fn from(values: Vec<u64>) -> Self {
        Self::new(values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CreateOptions {
    /// Move a shared per-level turn into an uncontrolled rotation so only
    /// indices that differ from it need a multi-controlled gate.
    pub factor_common: bool,
}

impl Default for CreateOptions {
    fn default() -> Self {
        Self {
            factor_common: true,
        }
    }
}

/// Fourier-space turn of data qubit `l` for value `d`: `d·2^l / 2^p mod 1`.
fn data_turn(d: u64, l: usize, p: usize) -> DyadicTurn {
    DyadicTurn::new(d, (p - l) as u32).expect("data width within dyadic range")
}

fn push_hadamards(c: &mut Circuit, layout: &ArrayLayout) -> Result<()> {
    c.block("H", |c| {
        for q in (0..layout.num_qubits()).rev() {
            c.push(Gate::H(q))?;
        }
        Ok(())
    })?;
    Ok(())
}

fn push_inverse_qft(c: &mut Circuit, layout: &ArrayLayout) -> Result<()> {
    c.append_mapped(
        &build_inverse_qft(layout.data_qubits, true)?,
        &layout.data_register(),
    )?;
    Ok(())
}

fn index_controls(j: usize, layout: &ArrayLayout) -> Vec<Control> {
    (0..layout.index_qubits)
        .rev()
        .map(|b| Control {
            qubit: layout.index_qubit(b),
            polarity: Polarity::from_bit((j >> b) & 1 == 1),
        })
        .collect()
}

/// Generic creation with default [`CreateOptions`].
pub fn build_create(contents: &ArrayContents, layout: ArrayLayout) -> Result<Circuit> {
    build_create_with(contents, layout, CreateOptions::default())
}

/// Hadamards on every qubit; per data level `l`, a shared rotation plus one
/// multi-controlled phase per index whose turn differs from it; inverse QFT
/// with swaps on the data part.
pub fn build_create_with(
    contents: &ArrayContents,
    layout: ArrayLayout,
    options: CreateOptions,
) -> Result<Circuit> {
    contents.check(&layout)?;
    let p = layout.data_qubits;
    let mut c = Circuit::new(layout.num_qubits())?;
    push_hadamards(&mut c, &layout)?;
    c.block("U^c", |c| {
        for l in (0..p).rev() {
            let turns: Vec<DyadicTurn> = contents
                .values
                .iter()
                .map(|&d| data_turn(d, l, p))
                .collect();
            let shared = if options.factor_common {
                shared_turn(&turns)
            } else {
                DyadicTurn::ZERO
            };
            if !shared.is_zero() {
                c.push(Gate::phase(shared, l))?;
            }
            for (j, &t) in turns.iter().enumerate() {
                let delta = t - shared;
                if !delta.is_zero() {
                    c.push(Gate::controlled_phase(delta, index_controls(j, &layout), l))?;
                }
            }
        }
        Ok(())
    })?;
    push_inverse_qft(&mut c, &layout)?;
    Ok(c)
}

/// The shared turn that minimizes the gate count of one level: one plain
/// rotation (unless zero) plus one controlled gate per differing index.
/// Ties prefer zero, then the turn seen first.
fn shared_turn(turns: &[DyadicTurn]) -> DyadicTurn {
    let mut tally: HashMap<DyadicTurn, (usize, usize)> = HashMap::new();
    for (i, &t) in turns.iter().enumerate() {
        tally.entry(t).or_insert((0, i)).0 += 1;
    }
    let cost = |t: DyadicTurn| {
        let same = tally.get(&t).map_or(0, |e| e.0);
        usize::from(!t.is_zero()) + turns.len() - same
    };
    tally
        .iter()
        .map(|(&t, &(_, first))| (cost(t), first, t))
        .chain(std::iter::once((
            cost(DyadicTurn::ZERO),
            0,
            DyadicTurn::ZERO,
        )))
        .min_by_key(|&(c, first, t)| (c, !t.is_zero(), first))
        .map_or(DyadicTurn::ZERO, |(_, _, t)| t)
}

/// Stores `d^j = (first + step·j) mod 2^p` with rotations only: plain phases
/// for `first` and one singly-controlled phase per (index bit, data level)
/// carrying `step·2^b`. No multi-controlled gates.
pub fn build_create_arithmetic(first: u64, step: u64, layout: ArrayLayout) -> Result<Circuit> {
    let p = layout.data_qubits;
    let modulus = layout.data_modulus();
    let (first, step) = (first % modulus, step % modulus);
    let mut c = Circuit::new(layout.num_qubits())?;
    push_hadamards(&mut c, &layout)?;
    c.block("U^c", |c| {
        for l in (0..p).rev() {
            let base = data_turn(first, l, p);
            if !base.is_zero() {
                c.push(Gate::phase(base, l))?;
            }
            for b in (0..layout.index_qubits).rev() {
                let weight = data_turn(step, l, p).mul_int(1u64 << b);
                if !weight.is_zero() {
                    c.push(Gate::cphase(weight, layout.index_qubit(b), l))?;
                }
            }
        }
        Ok(())
    })?;
    push_inverse_qft(&mut c, &layout)?;
    Ok(c)
}

/// `d^j ← (d^j + addend) mod 2^p` for every index the predicate selects.
///
/// QFT with swaps on the data part, one predicate-controlled phase
/// `addend·2^{l-p}` per data level `l`, inverse QFT with swaps.
pub fn build_update_add(
    addend: u64,
    predicate: IndexPredicate,
    layout: ArrayLayout,
) -> Result<Circuit> {
    predicate.check(&layout)?;
    let p = layout.data_qubits;
    let addend = addend % layout.data_modulus();
    let data = layout.data_register();
    let mut c = Circuit::new(layout.num_qubits())?;
    c.append_mapped(&build_qft(p, true)?, &data)?;
    let controls = predicate.controls(&layout);
    c.block("C_add", |c| {
        for l in (0..p).rev() {
            let turn = data_turn(addend, l, p);
            if !turn.is_zero() {
                c.push(Gate::controlled_phase(turn, controls.clone(), l))?;
            }
        }
        Ok(())
    })?;
    push_inverse_qft(&mut c, &layout)?;
    Ok(c)
}

/// Reads `j → d^j` from an array-form state.
///
/// Every index must carry mass `2^{-m}` (within `tolerance`) concentrated on
/// a single data value with conditional probability at least `1 - tolerance`.
pub fn read_all(state: &StateVector, layout: ArrayLayout, tolerance: f64) -> Result<ArrayContents> {
    if state.num_qubits() != layout.num_qubits() {
        return Err(Error::LayoutMismatch(format!(
            "state has {} qubits, layout needs {}",
            state.num_qubits(),
            layout.num_qubits()
        )));
    }
    let dim_data = 1usize << layout.data_qubits;
    let expected_mass = 1.0 / layout.len() as f64;
    let amps = state.amplitudes();
    let mut values = Vec::with_capacity(layout.len());
    for j in 0..layout.len() {
        let row = &amps[j * dim_data..(j + 1) * dim_data];
        let mass: f64 = row.iter().map(|a| a.norm_sqr()).sum();
        if (mass - expected_mass).abs() > tolerance {
            return Err(Error::MalformedArray {
                index: j,
                reason: format!("index mass {mass} differs from {expected_mass}"),
            });
        }
        let (d, best) = row
            .iter()
            .map(|a| a.norm_sqr())
            .enumerate()
            .fold((0, 0.0), |acc, (d, p)| if p > acc.1 { (d, p) } else { acc });
        let conditional = best / mass;
        if conditional < 1.0 - tolerance {
            return Err(Error::MalformedArray {
                index: j,
                reason: format!("data value {d} has conditional probability {conditional}"),
            });
        }
        values.push(d as u64);
    }
    Ok(ArrayContents::new(values))
}

/// Builds and simulates a generic create from `|0…0⟩`.
pub fn create(contents: &ArrayContents, layout: ArrayLayout) -> Result<StateVector> {
    StateVector::new_basis_state(layout.num_qubits(), 0)?.run(&build_create(contents, layout)?)
}
