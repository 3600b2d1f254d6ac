//! Exact computation of Nielsen, Reidemeister and minimum coincidence numbers
//! for pairs of fiberwise maps between linear torus bundles.
//!
//! A linear torus bundle over a base `B` has fiber `T^k = (S^1)^k` and structure
//! group `GL(k, Z)`; over the circle it is the mapping torus of a torus
//! automorphism given by an integer gluing matrix. A pair of fiberwise maps
//! `(f_1, f_2)` reduces to the single map `f = f_1 - f_2` paired against the
//! zero map, and the fiberwise homotopy class of `f` is classified by an
//! integer matrix `L` (the vertical part on fiber fundamental groups) together
//! with a shift vector `v` taken modulo `(A_N - id)(Z^n)` (the horizontal part).
//!
//! On the quotient group `G = Z^n / L(Z^m)` the loop of the base circle acts by
//! the affine map `u -> A_N(u - v)`; its orbits are the Reidemeister classes,
//! and counting orbits by cardinality (odd, even, infinite) determines the
//! Nielsen number, the minimum number of coincidence components `MCC`, the
//! minimum number of coincidence points `MC`, and the Reidemeister cardinality.
//!
//! The crate is organized bottom-up:
//!
//! * [`intlat`] — exact integer linear algebra: Hermite and Smith normal
//!   forms, lattice images, saturation, integral solving, determinants.
//! * [`bundle`] — bundles, classified map pairs, shift normalization and the
//!   corank-one structure data (saturation complement, sign `a`, splitting of
//!   the shift vector).
//! * [`orbits`] — cokernel presentations in Smith coordinates, the affine
//!   Reidemeister action, and orbit enumeration.
//! * [`nielsen`] — the case dispatch producing full reports, plus the fixed
//!   point specialization for selfmaps of 2-torus bundles over the circle.
//! * [`oracle`] — an independent brute force pipeline (parallelepiped coset
//!   representatives, minor-gcd Smith check, closed-form table comparison)
//!   used to cross-validate the main pipeline.
//!
//! All arithmetic is exact over arbitrary precision integers; there is no
//! floating point anywhere.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bundle;
pub mod extnat;
pub mod intlat;
pub mod nielsen;
pub mod oracle;
pub mod orbits;

use alloc::string::String;
use core::fmt;
use num_bigint::BigInt;

pub use extnat::ExtNat;

/// Default bound on the torsion order accepted by orbit enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector dimensions do not fit the operation.
    DimMismatch(String),
    /// Determinant requested for a non-square matrix.
    NonSquare { rows: usize, cols: usize },
    /// A gluing matrix is not in `GL(k, Z)`.
    BadGluing { det: BigInt },
    /// The intertwining relation `A_N * L = L * A_M` fails.
    IntertwineViolated,
    /// The linear part does not preserve the relation lattice.
    NotInvariant,
    /// A finite enumeration would exceed the configured cap.
    TooLarge { order: BigInt, cap: u64 },
    /// The cokernel is infinite where a finite one is required.
    InfiniteGroup,
    /// No integral solution / representative exists.
    NotFound,
    /// Orbit statistics are incomplete where complete ones are required.
    IncompleteStats,
    /// The operation is not defined for this input.
    Unsupported(&'static str),
    /// An invariant that should hold for every valid input failed; a bug.
    InternalInconsistency(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch(what) => write!(f, "dimension mismatch: {what}"),
            Error::NonSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::BadGluing { det } => {
                write!(f, "gluing matrix has determinant {det}, expected +1 or -1")
            }
            Error::IntertwineViolated => {
                write!(f, "intertwining relation A_N * L = L * A_M violated")
            }
            Error::NotInvariant => {
                write!(f, "linear part does not preserve the relation lattice")
            }
            Error::TooLarge { order, cap } => {
                write!(f, "size {order} exceeds the configured cap {cap}")
            }
            Error::InfiniteGroup => write!(f, "cokernel is infinite"),
            Error::NotFound => write!(f, "no integral solution exists"),
            Error::IncompleteStats => write!(f, "orbit statistics are incomplete"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::InternalInconsistency(what) => write!(f, "internal inconsistency: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
