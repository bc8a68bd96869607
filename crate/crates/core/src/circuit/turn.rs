//! Phases measured in fractions of a full revolution.
//!
//! A [`Turn`] `t` stands for the angle `2π·t`, always normalized into `[0, 1)`.
//! Dyadic turns (`k / 2^e`) are stored exactly so that the integer encodings
//! and counting circuits never accumulate rounding error in their angles.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported denominator exponent for [`DyadicTurn`].
pub const MAX_DYADIC_EXPONENT: u32 = 62;

/// Tolerance used when comparing non-dyadic turns.
pub const REAL_TURN_EPSILON: f64 = 1e-15;

/// An exact dyadic fraction of a turn, `numerator / 2^exponent`, reduced.
///
/// The numerator is odd unless the value is zero, in which case the exponent is 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct DyadicTurn {
    numerator: u64,
    exponent: u32,
}

impl DyadicTurn {
    pub const ZERO: Self = Self {
        numerator: 0,
        exponent: 0,
    };
    pub const HALF: Self = Self {
        numerator: 1,
        exponent: 1,
    };

    /// `numerator / 2^exponent`, reduced mod 1.
    pub fn new(numerator: u64, exponent: u32) -> Result<Self> {
        if exponent > MAX_DYADIC_EXPONENT {
            return Err(Error::InvalidArgument(format!(
                "dyadic exponent {exponent} exceeds {MAX_DYADIC_EXPONENT}"
            )));
        }
        Ok(Self::reduced(numerator & mask(exponent), exponent))
    }

    /// Signed numerator, reduced mod 1 (so `-1/4` becomes `3/4`).
    pub fn from_signed(numerator: i64, exponent: u32) -> Result<Self> {
        if exponent > MAX_DYADIC_EXPONENT {
            return Err(Error::InvalidArgument(format!(
                "dyadic exponent {exponent} exceeds {MAX_DYADIC_EXPONENT}"
            )));
        }
        let modulus = 1i128 << exponent;
        let n = (numerator as i128).rem_euclid(modulus) as u64;
        Ok(Self::reduced(n, exponent))
    }

    /// `1 / 2^k`, the turn of the textbook `R_k` rotation.
    pub fn inverse_pow2(k: u32) -> Result<Self> {
        Self::new(1, k)
    }

    fn reduced(numerator: u64, exponent: u32) -> Self {
        if numerator == 0 {
            return Self::ZERO;
        }
        let shift = numerator.trailing_zeros().min(exponent);
        Self {
            numerator: numerator >> shift,
            exponent: exponent - shift,
        }
    }

    pub fn numerator(self) -> u64 {
        self.numerator
    }

    /// Exponent of the reduced denominator.
    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn denominator(self) -> u64 {
        1u64 << self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator() as f64
    }

    /// `(factor · self) mod 1`.
    pub fn mul_int(self, factor: u64) -> Self {
        let n = (self.numerator as u128 * factor as u128) & mask(self.exponent) as u128;
        Self::reduced(n as u64, self.exponent)
    }

    /// `(2^power · self) mod 1`, the principal value after `power` doublings.
    pub fn double_times(self, power: u32) -> Self {
        if power >= self.exponent {
            return Self::ZERO;
        }
        let e = self.exponent - power;
        Self::reduced(self.numerator & mask(e), e)
    }

    /// `self / 2^power`, fails if the exponent would exceed the supported range.
    pub fn halve_times(self, power: u32) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::ZERO);
        }
        Self::new(self.numerator, self.exponent + power)
    }

    /// The unit complex number `e^{i2π·self}`; exact for multiples of a quarter turn.
    pub fn phase_factor(self) -> Complex64 {
        match (self.numerator, self.exponent) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(-1.0, 0.0),
            (1, 2) => Complex64::new(0.0, 1.0),
            (3, 2) => Complex64::new(0.0, -1.0),
            _ => Complex64::cis(std::f64::consts::TAU * self.to_f64()),
        }
    }
}

fn mask(exponent: u32) -> u64 {
    if exponent >= 64 {
        u64::MAX
    } else {
        (1u64 << exponent) - 1
    }
}

impl Add for DyadicTurn {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let e = self.exponent.max(rhs.exponent);
        let a = self.numerator << (e - self.exponent);
        let b = rhs.numerator << (e - rhs.exponent);
        // both operands are below 2^62, so the sum cannot overflow
        Self::reduced((a + b) & mask(e), e)
    }
}

impl Neg for DyadicTurn {
    type Output = Self;

    fn neg(self) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::reduced(self.denominator() - self.numerator, self.exponent)
    }
}

impl Sub for DyadicTurn {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for DyadicTurn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

/// A phase in turns, normalized into `[0, 1)`.
#[derive(Clone, Copy, Debug)]
pub enum Turn {
    Dyadic(DyadicTurn),
    /// An arbitrary real turn, compared with [`REAL_TURN_EPSILON`] tolerance.
    Real(f64),
}

impl Turn {
    pub const ZERO: Self = Turn::Dyadic(DyadicTurn::ZERO);

    /// Exact dyadic turn `numerator / 2^exponent`.
    pub fn dyadic(numerator: u64, exponent: u32) -> Result<Self> {
        DyadicTurn::new(numerator, exponent).map(Turn::Dyadic)
    }

    /// A real-valued turn, reduced mod 1. Always treated as non-dyadic.
    pub fn real(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite turn {value}")));
        }
        let mut v = value.rem_euclid(1.0);
        if v >= 1.0 {
            v = 0.0;
        }
        Ok(Turn::Real(v))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Turn::Dyadic(d) => d.to_f64(),
            Turn::Real(v) => v,
        }
    }

    pub fn as_dyadic(self) -> Option<DyadicTurn> {
        match self {
            Turn::Dyadic(d) => Some(d),
            Turn::Real(_) => None,
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Turn::Dyadic(d) => d.is_zero(),
            Turn::Real(v) => v == 0.0,
        }
    }

    /// `(2^power · self) mod 1`.
    pub fn double_times(self, power: u32) -> Self {
        match self {
            Turn::Dyadic(d) => Turn::Dyadic(d.double_times(power)),
            Turn::Real(v) => {
                let mut x = v;
                for _ in 0..power {
                    x = (2.0 * x).fract();
                }
                Turn::Real(x)
            }
        }
    }

    pub fn phase_factor(self) -> Complex64 {
        match self {
            Turn::Dyadic(d) => d.phase_factor(),
            Turn::Real(v) => Complex64::cis(std::f64::consts::TAU * v),
        }
    }
}

impl Default for Turn {
    fn default() -> Self {
        Turn::ZERO
    }
}

impl From<DyadicTurn> for Turn {
    fn from(d: DyadicTurn) -> Self {
        Turn::Dyadic(d)
    }
}

impl PartialEq for Turn {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Turn::Dyadic(a), Turn::Dyadic(b)) => a == b,
            _ => {
                let diff = (self.to_f64() - other.to_f64()).abs();
                diff.min(1.0 - diff) <= REAL_TURN_EPSILON
            }
        }
    }
}

impl Add for Turn {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Turn::Dyadic(a), Turn::Dyadic(b)) => Turn::Dyadic(a + b),
            _ => Turn::real(self.to_f64() + rhs.to_f64()).unwrap_or(Turn::ZERO),
        }
    }
}

impl Neg for Turn {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            Turn::Dyadic(d) => Turn::Dyadic(-d),
            Turn::Real(v) => Turn::real(-v).unwrap_or(Turn::ZERO),
        }
    }
}

impl Sub for Turn {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Turn::Dyadic(d) => d.fmt(f),
            // `{:?}` on f64 is the shortest representation that round-trips
            Turn::Real(v) => write!(f, "{v:?}"),
        }
    }
}
