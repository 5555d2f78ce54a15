//! Finite extensions of `Q_p` presented as towers of unramified and
//! Eisenstein steps.
//!
//! Elements carry an exact representative in the tower's integral basis
//! together with an error radius: the true value lies within valuation
//! distance `radius` of the representative. Exact data has an infinite
//! radius. Valuations are reported only when they sit strictly below the
//! radius; otherwise the caller gets [`LocalFieldError::PrecisionLimited`].

mod poly;
mod roots;
mod tower;

use alloc::string::String;
use core::fmt;

use crate::numeric::ExtRat;

pub use poly::ValPoly;
pub use roots::{find_roots, root_diff_matrix, RootConfig};
pub use tower::{Closeness, FieldElement, FieldTower, StepKind, TowerBuilder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalFieldError {
    /// The quantity is indistinguishable from zero below `horizon`; raise the precision cap.
    PrecisionLimited {
        horizon: ExtRat,
    },
    /// Only `found` of `degree` roots lie in the supplied tower.
    NotSplit {
        found: usize,
        degree: usize,
    },
    /// The supplied element does not annihilate the polynomial to its certified precision.
    NotARoot,
    /// Two supplied roots coincide.
    RepeatedRoot,
    /// An element or coefficient of negative valuation where an integral one is required.
    NonIntegral,
    NotMonic,
    InvalidTower(String),
    /// Residue field enumeration would exceed the configured bound.
    ResidueFieldTooLarge {
        size: u128,
        limit: u128,
    },
    DimensionMismatch,
    DivisionByZero,
}

impl fmt::Display for LocalFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalFieldError::PrecisionLimited { horizon } => {
                write!(f, "precision limited: value not certified below valuation {horizon}")
            }
            LocalFieldError::NotSplit { found, degree } => {
                write!(f, "polynomial does not split in the tower: {found} of {degree} roots found")
            }
            LocalFieldError::NotARoot => f.write_str("element is not a root of the polynomial"),
            LocalFieldError::RepeatedRoot => f.write_str("root list contains a repeated root"),
            LocalFieldError::NonIntegral => f.write_str("element is not integral"),
            LocalFieldError::NotMonic => f.write_str("polynomial is not monic"),
            LocalFieldError::InvalidTower(why) => write!(f, "invalid tower: {why}"),
            LocalFieldError::ResidueFieldTooLarge { size, limit } => {
                write!(f, "residue field of size {size} exceeds enumeration limit {limit}")
            }
            LocalFieldError::DimensionMismatch => f.write_str("element belongs to a different tower"),
            LocalFieldError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

impl core::error::Error for LocalFieldError {}
