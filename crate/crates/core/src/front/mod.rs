//! Plat-position front diagrams and the combinatorial Chekanov-Eliashberg
//! construction.
//!
//! The pipeline is: parse a plat DSL string into a [`PlatFront`], resolve it
//! into the Lagrangian projection (a 4-valent planar map whose crossings are
//! the Reeb chords, each right cusp contributing one extra loop crossing),
//! then enumerate embedded admissible disks to assemble the differential.

mod diagram;
mod disks;
mod plat;

pub use diagram::{quadrant_name, resolve, CrossingKind, ResolvedDiagram};
pub use disks::{admissible_disks, build_dga, Disk};
pub use plat::{classical_invariants, parse_plat, PlatEvent, PlatFront};

/// Parses a plat string and builds its Dga in one step.
pub fn dga_from_plat(text: &str) -> Result<crate::dga::Dga, FrontError> {
    build_dga(&resolve(&parse_plat(text)?)?)
}

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrontError {
    #[error("parse error at byte {offset} (token {token:?}): {message}")]
    Parse {
        offset: usize,
        token: String,
        message: String,
    },
    #[error("event {index} ({event}): {message}")]
    BadEvent {
        index: usize,
        event: String,
        message: String,
    },
    #[error("front has {0} components; per-component classical invariants are not implemented")]
    MultiComponent(usize),
    #[error("inconsistent Maslov potential: the front has nonzero rotation class, \
             so the grading is not integral")]
    InconsistentPotential,
    #[error("diagram too large: {faces} bounded faces exceeds the disk-search limit {limit}")]
    TooLarge { faces: usize, limit: usize },
    #[error("unsupported diagram: the embedded-disk differential fails {check}: {detail}. \
             The diagram likely requires immersed disks, which are not supported")]
    UnsupportedDiagram { check: String, detail: String },
    #[error("internal resolution error: {0}")]
    Internal(String),
}
