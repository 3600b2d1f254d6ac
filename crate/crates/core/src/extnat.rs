//! Extended natural numbers: a finite nonnegative count or infinity.
//!
//! Minimum coincidence numbers and Reidemeister cardinalities take the value
//! infinity; orbit counts of the reduced kind replace infinity by zero.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// A nonnegative integer of unbounded size, or infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtNat {
    Finite(BigInt),
    Infinity,
}

impl ExtNat {
    pub fn zero() -> Self {
        ExtNat::Finite(BigInt::zero())
    }

    pub fn finite(value: impl Into<BigInt>) -> Self {
        let value = value.into();
        debug_assert!(!value.is_negative());
        ExtNat::Finite(value)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNat::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNat::Finite(v) if v.is_zero())
    }

    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }

    /// Reduction "mod infinity": infinity becomes zero, finite values persist.
    pub fn reduced(&self) -> BigInt {
        match self {
            ExtNat::Finite(v) => v.clone(),
            ExtNat::Infinity => BigInt::zero(),
        }
    }

    /// Addition; infinity absorbs.
    pub fn add(&self, other: &ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Infinity,
        }
    }

    /// Render as a decimal string, with infinity spelled `inf`.
    pub fn render(&self) -> String {
        use alloc::string::ToString;
        match self {
            ExtNat::Finite(v) => v.to_string(),
            ExtNat::Infinity => String::from("inf"),
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinity) => Ordering::Less,
            (ExtNat::Infinity, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinity, ExtNat::Infinity) => Ordering::Equal,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(value: u64) -> Self {
        ExtNat::Finite(BigInt::from(value))
    }
}

impl From<BigInt> for ExtNat {
    fn from(value: BigInt) -> Self {
        ExtNat::finite(value)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => write!(f, "inf"),
        }
    }
}
