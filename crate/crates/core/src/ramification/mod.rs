//! Level partitions of a root set, their breaks, and the dilatation chains
//! that realize them. Levels are always given on the `φ` scale; conversion
//! to root-difference radii happens internally through `ψ`.

mod dilatation;
mod matrix;
mod partition;

use core::fmt;

pub use dilatation::{affine_dilatation, dilatation_chain, DilatationChain, DilatationStep};
pub use matrix::RootDiffMatrix;
pub use partition::{
    balls, break_structure, classify, level_order, level_surjection, partition_at, BlockMap, BreakStructure, Class,
    LevelPartition, Mode,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamificationError {
    EmptyMatrix,
    NotSquare,
    NotSymmetric(usize, usize),
    DiagonalNotInfinite(usize),
    /// Two distinct roots at infinite distance.
    InfiniteEntry(usize, usize),
    NegativeEntry(usize, usize),
    /// `M[i][j] < min(M[i][k], M[k][j])`.
    NotUltrametric(usize, usize, usize),
    MissingEntry(usize, usize),
    ConflictingEntry(usize, usize),
    IndexOutOfRange(usize),
    /// Herbrand function built for a different number of roots.
    SizeMismatch,
    /// Negative level, or a nonpositive level where a positive one is needed.
    Domain,
    /// The requested map does not go from a finer to a coarser level.
    OrderViolation,
    /// Generator `i` has valuation below the divisor.
    NotDominated(usize),
}

impl fmt::Display for RamificationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RamificationError::EmptyMatrix => f.write_str("matrix has no rows"),
            RamificationError::NotSquare => f.write_str("matrix is not square"),
            RamificationError::NotSymmetric(i, j) => write!(f, "entries ({i}, {j}) and ({j}, {i}) differ"),
            RamificationError::DiagonalNotInfinite(i) => write!(f, "diagonal entry {i} is not inf"),
            RamificationError::InfiniteEntry(i, j) => write!(f, "off-diagonal entry ({i}, {j}) is inf"),
            RamificationError::NegativeEntry(i, j) => write!(f, "entry ({i}, {j}) is negative"),
            RamificationError::NotUltrametric(i, j, k) => {
                write!(f, "ultrametric inequality fails for ({i}, {j}) through {k}")
            }
            RamificationError::MissingEntry(i, j) => write!(f, "entry ({i}, {j}) is missing"),
            RamificationError::ConflictingEntry(i, j) => {
                write!(f, "entry ({i}, {j}) given twice with different values")
            }
            RamificationError::IndexOutOfRange(i) => write!(f, "index {i} out of range"),
            RamificationError::SizeMismatch => f.write_str("Herbrand function does not match the matrix size"),
            RamificationError::Domain => f.write_str("level outside the allowed range"),
            RamificationError::OrderViolation => f.write_str("levels are not in coarsening order"),
            RamificationError::NotDominated(i) => {
                write!(f, "generator {i} has valuation below the divisor")
            }
        }
    }
}

impl core::error::Error for RamificationError {}
