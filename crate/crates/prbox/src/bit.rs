//! Binary values, the two parties, and the PR input-output predicate.

use std::fmt;
use std::ops::{BitAnd, BitXor, Not};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Error for integers outside {0, 1} offered as bits.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("bit value must be 0 or 1, got {0}")]
pub struct InvalidBit(pub u8);

/// A classical bit.
///
/// Stored as an integer in {0, 1} so the mod-2 arithmetic of the box
/// condition stays literal: XOR is addition, AND is multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Bit(u8);

impl Bit {
    pub const ZERO: Bit = Bit(0);
    pub const ONE: Bit = Bit(1);

    /// Validates that `value` is 0 or 1.
    pub fn new(value: u8) -> Result<Self, InvalidBit> {
        match value {
            0 | 1 => Ok(Bit(value)),
            other => Err(InvalidBit(other)),
        }
    }

    /// The underlying 0 or 1.
    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl TryFrom<u8> for Bit {
    type Error = InvalidBit;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Bit::new(value)
    }
}

impl From<Bit> for u8 {
    fn from(bit: Bit) -> u8 {
        bit.0
    }
}

impl From<bool> for Bit {
    fn from(value: bool) -> Bit {
        Bit(value as u8)
    }
}

impl BitXor for Bit {
    type Output = Bit;

    fn bitxor(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl BitAnd for Bit {
    type Output = Bit;

    fn bitand(self, rhs: Bit) -> Bit {
        Bit(self.0 & rhs.0)
    }
}

impl Not for Bit {
    type Output = Bit;

    fn not(self) -> Bit {
        Bit(self.0 ^ 1)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The two parties operating the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Alice,
    Bob,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Alice => Side::Bob,
            Side::Bob => Side::Alice,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Alice => write!(f, "alice"),
            Side::Bob => write!(f, "bob"),
        }
    }
}

/// One joint input to the box: Alice's `x` and Bob's `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InputPair {
    pub x: Bit,
    pub y: Bit,
}

impl InputPair {
    pub fn new(x: Bit, y: Bit) -> Self {
        InputPair { x, y }
    }

    /// The input belonging to `side`.
    pub fn input_for(self, side: Side) -> Bit {
        match side {
            Side::Alice => self.x,
            Side::Bob => self.y,
        }
    }

    /// The same pair with the sides exchanged.
    pub fn swapped(self) -> Self {
        InputPair { x: self.y, y: self.x }
    }

    /// All four joint inputs in lexicographic order (x, y).
    pub fn all() -> [InputPair; 4] {
        [
            InputPair::new(Bit::ZERO, Bit::ZERO),
            InputPair::new(Bit::ZERO, Bit::ONE),
            InputPair::new(Bit::ONE, Bit::ZERO),
            InputPair::new(Bit::ONE, Bit::ONE),
        ]
    }
}

impl fmt::Display for InputPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, y={})", self.x, self.y)
    }
}

/// The PR condition: outputs satisfy `a XOR b = x AND y`.
pub fn pr_satisfied(inputs: InputPair, a: Bit, b: Bit) -> bool {
    (a ^ b) == (inputs.x & inputs.y)
}
