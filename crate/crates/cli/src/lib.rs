//! File format, report rendering and command implementations behind the
//! `torus-nielsen` binary.

pub mod commands;
pub mod instance;
pub mod report;

/// Exit codes of the binary.
pub mod exit_code {
    /// Parse or usage error (also what clap uses for bad arguments).
    pub const PARSE: u8 = 2;
    /// A validated invariant failed (bad gluing, intertwining, dimensions).
    pub const INVARIANT: u8 = 3;
    /// An enumeration exceeded the configured cap.
    pub const TOO_LARGE: u8 = 4;
    /// The brute force oracle disagreed with the main pipeline.
    pub const MISMATCH: u8 = 5;
}
