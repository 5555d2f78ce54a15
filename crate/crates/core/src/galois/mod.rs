//! Finite groups, finite `G`-sets, recovery of a subgroup from a quotient of
//! the fiber functor, and the ramification filtration of a Galois root set.

mod filtration;
mod group;
mod gset;
mod recover;

use alloc::string::String;
use core::fmt;

use crate::ramification::RamificationError;

pub use filtration::{ramification_filtration, BreakGroups, FiltrationPiece, RamificationFiltration, Torsor};
pub use group::{catalog, FiniteGroup, Subgroup};
pub use gset::{Coproduct, Family, FiberQuotient, GSet, Morphism};
pub use recover::{normalizer_check, quotient_compatibility, recover_subgroup, QuotientImage};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaloisError {
    InvalidGroup(String),
    InvalidGSet(&'static str),
    InvalidFamily(&'static str),
    NotSubgroup,
    NotNormal,
    /// The family has no regular object.
    MissingRegular,
    /// Morphism `i` does not commute with the action.
    NotEquivariant(usize),
    /// The quotient is not compatible with morphism `i`.
    NotNatural(usize),
    /// The square over surjection `i` is not a pushout.
    NotCocartesian(usize),
    /// Coproduct `i` is not sent to a disjoint union.
    NotCoproductPreserving(usize),
    /// On object `i` the quotient is not the orbit map of the recovered subgroup.
    NotInduced(usize),
    /// The root labelling is not a bijection onto the group.
    NotTorsor,
    /// The root-difference matrix is not preserved by the action.
    NotInvariant,
    /// The Herbrand function does not come from the matrix.
    HerbrandMismatch,
    /// Two independent computations of the same subgroup disagree.
    Inconsistent,
    Ramification(RamificationError),
}

impl From<RamificationError> for GaloisError {
    fn from(e: RamificationError) -> Self {
        GaloisError::Ramification(e)
    }
}

impl fmt::Display for GaloisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisError::InvalidGroup(why) => write!(f, "invalid group: {why}"),
            GaloisError::InvalidGSet(why) => write!(f, "invalid G-set: {why}"),
            GaloisError::InvalidFamily(why) => write!(f, "invalid family: {why}"),
            GaloisError::NotSubgroup => f.write_str("set is not a subgroup"),
            GaloisError::NotNormal => f.write_str("subgroup is not normal"),
            GaloisError::MissingRegular => f.write_str("family lacks the regular G-set"),
            GaloisError::NotEquivariant(i) => write!(f, "morphism {i} is not equivariant"),
            GaloisError::NotNatural(i) => write!(f, "quotient is not natural along morphism {i}"),
            GaloisError::NotCocartesian(i) => write!(f, "square over surjection {i} is not cocartesian"),
            GaloisError::NotCoproductPreserving(i) => write!(f, "coproduct {i} is not preserved"),
            GaloisError::NotInduced(i) => write!(f, "quotient on object {i} is not induced by a subgroup"),
            GaloisError::NotTorsor => f.write_str("roots do not form a torsor under the group"),
            GaloisError::NotInvariant => f.write_str("root-difference matrix is not invariant under the group"),
            GaloisError::HerbrandMismatch => f.write_str("Herbrand function does not match the matrix"),
            GaloisError::Inconsistent => f.write_str("internal consistency check failed"),
            GaloisError::Ramification(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GaloisError {}
