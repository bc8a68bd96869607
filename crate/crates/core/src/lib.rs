//! Phase-encoded counting, integer storage and quantum arrays, built from
//! controlled phase rotations and simulated on a dense state vector.
//!
//! Circuits are plain gate lists ([`circuit::Circuit`]) with exact dyadic
//! rotation angles measured in turns. Builders in [`qft`], [`pea`],
//! [`abacus`], [`encoder`] and [`qarray`] produce them; [`statevector`]
//! runs them.
//!
//! ```
//! use qabacus::abacus::{bits_from_str, run_count};
//!
//! assert_eq!(run_count(&bits_from_str("1011").unwrap()).unwrap(), 3);
//! ```
//!
//! Qubit 0 is the least significant bit of a basis index.

pub mod abacus;
pub mod circuit;
pub mod cli;
pub mod encoder;
pub mod error;
pub mod oracle;
pub mod pea;
pub mod qarray;
pub mod qft;
pub mod statevector;

pub use circuit::{Circuit, Control, DyadicTurn, Gate, Polarity, Turn};
pub use error::{Error, ParseError, Result};
pub use statevector::{BasisIndex, StateVector};
