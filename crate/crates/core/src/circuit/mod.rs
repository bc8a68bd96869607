//! Gate and circuit data model.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over a fixed number of qubits,
//! plus optional non-semantic [`Label`]s that mark named blocks (for example
//! `U^{2^0}` or `F†`) so dumps can be compared block by block.
//!
//! Qubit 0 is the least significant bit of a basis index throughout the crate.

mod text;
mod turn;

use std::fmt;

pub use text::{parse, serialize};
pub use turn::{DyadicTurn, Turn, MAX_DYADIC_EXPONENT, REAL_TURN_EPSILON};

use crate::error::{Error, Result};

/// Which computational state of a control qubit enables a gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Enabled when the control is `|1⟩` (filled dot).
    Positive,
    /// Enabled when the control is `|0⟩` (open dot).
    Negative,
}

impl Polarity {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    /// The bit value the control qubit must hold.
    pub fn required_bit(self) -> usize {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn positive(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Negative,
        }
    }
}

/// A primitive gate.
///
/// `Phase` multiplies every basis state whose controls all match their polarity
/// and whose target bit is 1 by `e^{i2π·turn}`. With no controls it is a plain
/// z-rotation; with one positive control and `turn = 1/2^k` it is `R_k`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Phase {
        turn: Turn,
        controls: Vec<Control>,
        target: usize,
    },
    Swap(usize, usize),
}

impl Gate {
    pub fn phase(turn: impl Into<Turn>, target: usize) -> Self {
        Gate::Phase {
            turn: turn.into(),
            controls: Vec::new(),
            target,
        }
    }

    /// Singly, positively controlled phase.
    pub fn cphase(turn: impl Into<Turn>, control: usize, target: usize) -> Self {
        Gate::Phase {
            turn: turn.into(),
            controls: vec![Control::positive(control)],
            target,
        }
    }

    pub fn controlled_phase(turn: impl Into<Turn>, controls: Vec<Control>, target: usize) -> Self {
        Gate::Phase {
            turn: turn.into(),
            controls,
            target,
        }
    }

    /// `R_k`: a `1/2^k` turn with one positive control.
    pub fn rk(k: u32, control: usize, target: usize) -> Result<Self> {
        Ok(Gate::cphase(DyadicTurn::inverse_pow2(k)?, control, target))
    }

    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) => vec![*q],
            Gate::Phase {
                controls, target, ..
            } => controls
                .iter()
                .map(|c| c.qubit)
                .chain(std::iter::once(*target))
                .collect(),
            Gate::Swap(a, b) => vec![*a, *b],
        }
    }

    /// Checks range and distinctness of the gate's qubits.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for (i, &q) in qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    num_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Phase {
                turn,
                controls,
                target,
            } => Gate::Phase {
                turn: -*turn,
                controls: controls.clone(),
                target: *target,
            },
            other => other.clone(),
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::Hadamard,
            Gate::X(_) => GateKind::X,
            Gate::Phase { controls, .. } => match controls.len() {
                0 => GateKind::Phase,
                1 => GateKind::ControlledPhase,
                _ => GateKind::MultiControlledPhase,
            },
            Gate::Swap(..) => GateKind::Swap,
        }
    }

    fn remap(&self, map: &[usize]) -> Gate {
        match self {
            Gate::H(q) => Gate::H(map[*q]),
            Gate::X(q) => Gate::X(map[*q]),
            Gate::Phase {
                turn,
                controls,
                target,
            } => Gate::Phase {
                turn: *turn,
                controls: controls
                    .iter()
                    .map(|c| Control {
                        qubit: map[c.qubit],
                        polarity: c.polarity,
                    })
                    .collect(),
                target: map[*target],
            },
            Gate::Swap(a, b) => Gate::Swap(map[*a], map[*b]),
        }
    }
}

/// Gate categories used by [`GateCounts`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    Hadamard,
    X,
    /// Uncontrolled phase.
    Phase,
    /// Phase with exactly one control.
    ControlledPhase,
    /// Phase with two or more controls.
    MultiControlledPhase,
    Swap,
}

/// Exact gate tallies by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub cphase: usize,
    pub h: usize,
    pub mcphase: usize,
    pub phase: usize,
    pub swap: usize,
    pub x: usize,
}

impl GateCounts {
    pub fn from_gates<'a>(gates: impl IntoIterator<Item = &'a Gate>) -> Self {
        let mut counts = Self::default();
        for g in gates {
            counts.record(g.kind());
        }
        counts
    }

    fn record(&mut self, kind: GateKind) {
        match kind {
            GateKind::Hadamard => self.h += 1,
            GateKind::X => self.x += 1,
            GateKind::Phase => self.phase += 1,
            GateKind::ControlledPhase => self.cphase += 1,
            GateKind::MultiControlledPhase => self.mcphase += 1,
            GateKind::Swap => self.swap += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.cphase + self.h + self.mcphase + self.phase + self.swap + self.x
    }

    /// Controlled phases of any arity.
    pub fn controlled(&self) -> usize {
        self.cphase + self.mcphase
    }

    /// `(name, count)` pairs in a fixed alphabetical order.
    pub fn entries(&self) -> [(&'static str, usize); 6] {
        [
            ("cphase", self.cphase),
            ("h", self.h),
            ("mcphase", self.mcphase),
            ("phase", self.phase),
            ("swap", self.swap),
            ("x", self.x),
        ]
    }
}

impl std::ops::Add for GateCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            cphase: self.cphase + o.cphase,
            h: self.h + o.h,
            mcphase: self.mcphase + o.mcphase,
            phase: self.phase + o.phase,
            swap: self.swap + o.swap,
            x: self.x + o.x,
        }
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (name, n)) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{name}={n}")?;
        }
        write!(f, "}}")
    }
}

/// A named, half-open range `[start, end)` of gate positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

/// An ordered gate sequence over a fixed qubit count.
///
/// Labels never overlap and are kept sorted by position.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    labels: Vec<Label>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::WidthOutOfRange {
                width: 0,
                max: usize::MAX,
            });
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
            labels: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Runs `build` and labels every gate it pushes with `name`.
    pub fn block<F>(&mut self, name: impl Into<String>, build: F) -> Result<&mut Self>
    where
        F: FnOnce(&mut Circuit) -> Result<()>,
    {
        let start = self.gates.len();
        let labels_before = self.labels.len();
        build(self)?;
        // nested labels are flattened into the outer block
        self.labels.truncate(labels_before);
        self.labels.push(Label {
            name: name.into(),
            start,
            end: self.gates.len(),
        });
        Ok(self)
    }

    /// Appends `other`, mapping its qubit `i` onto `qubits[i]`. Labels are carried over.
    pub fn append_mapped(&mut self, other: &Circuit, qubits: &[usize]) -> Result<&mut Self> {
        if qubits.len() != other.num_qubits {
            return Err(Error::WidthMismatch {
                circuit: other.num_qubits,
                state: qubits.len(),
            });
        }
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
        let offset = self.gates.len();
        self.gates
            .extend(other.gates.iter().map(|g| g.remap(qubits)));
        self.labels.extend(other.labels.iter().map(|l| Label {
            name: l.name.clone(),
            start: l.start + offset,
            end: l.end + offset,
        }));
        Ok(self)
    }

    /// Appends `other` on the same qubits.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        let identity: Vec<usize> = (0..other.num_qubits).collect();
        self.append_mapped(other, &identity)
    }

    /// Reversed gate order with every phase negated; labels follow their gates.
    pub fn invert(&self) -> Circuit {
        let len = self.gates.len();
        let gates = self.gates.iter().rev().map(Gate::inverse).collect();
        let labels = self
            .labels
            .iter()
            .rev()
            .map(|l| Label {
                name: l.name.clone(),
                start: len - l.end,
                end: len - l.start,
            })
            .collect();
        Circuit {
            num_qubits: self.num_qubits,
            gates,
            labels,
        }
    }

    /// Same circuit with every label renamed through `rename`.
    pub fn relabeled(mut self, rename: impl Fn(&str) -> String) -> Circuit {
        for l in &mut self.labels {
            l.name = rename(&l.name);
        }
        self
    }

    pub fn gate_counts(&self) -> GateCounts {
        GateCounts::from_gates(&self.gates)
    }

    /// Counts over every labeled block whose name satisfies `select`.
    pub fn block_gate_counts(&self, select: impl Fn(&str) -> bool) -> GateCounts {
        self.labels
            .iter()
            .filter(|l| select(&l.name))
            .map(|l| GateCounts::from_gates(&self.gates[l.start..l.end]))
            .fold(GateCounts::default(), |a, b| a + b)
    }

    /// The gates of the first block called `name`, as a standalone circuit.
    pub fn block_circuit(&self, name: &str) -> Option<Circuit> {
        let label = self.labels.iter().find(|l| l.name == name)?;
        Some(Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates[label.start..label.end].to_vec(),
            labels: Vec::new(),
        })
    }

    /// Replaces each negative control by X-conjugation of a positive one.
    pub fn lower_negative_controls(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        let mut position = Vec::with_capacity(self.gates.len() + 1);
        for g in &self.gates {
            position.push(gates.len());
            match g {
                Gate::Phase {
                    turn,
                    controls,
                    target,
                } if controls.iter().any(|c| c.polarity == Polarity::Negative) => {
                    let flipped: Vec<usize> = controls
                        .iter()
                        .filter(|c| c.polarity == Polarity::Negative)
                        .map(|c| c.qubit)
                        .collect();
                    gates.extend(flipped.iter().map(|&q| Gate::X(q)));
                    gates.push(Gate::Phase {
                        turn: *turn,
                        controls: controls
                            .iter()
                            .map(|c| Control::positive(c.qubit))
                            .collect(),
                        target: *target,
                    });
                    gates.extend(flipped.iter().map(|&q| Gate::X(q)));
                }
                other => gates.push(other.clone()),
            }
        }
        position.push(gates.len());
        let labels = self
            .labels
            .iter()
            .map(|l| Label {
                name: l.name.clone(),
                start: position[l.start],
                end: position[l.end],
            })
            .collect();
        Circuit {
            num_qubits: self.num_qubits,
            gates,
            labels,
        }
    }

    /// Builds a circuit from parts, validating every gate and label.
    pub fn from_parts(num_qubits: usize, gates: Vec<Gate>, labels: Vec<Label>) -> Result<Self> {
        let mut c = Circuit::new(num_qubits)?;
        c.extend(gates)?;
        let mut last_end = 0;
        for l in &labels {
            if l.start < last_end || l.end < l.start || l.end > c.gates.len() {
                return Err(Error::InvalidArgument(format!(
                    "label {:?} range {}..{} is out of order or out of bounds",
                    l.name, l.start, l.end
                )));
            }
            last_end = l.end;
        }
        c.labels = labels;
        Ok(c)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
