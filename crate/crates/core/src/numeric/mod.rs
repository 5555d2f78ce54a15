//! Exact extended rationals and piecewise-linear functions on `[0, ∞)`.

mod ext_rat;
mod piecewise;

pub use ext_rat::{format_rat, parse_rat, rat, rat_int, ExtRat, ParseExtRatError, Rat};
pub use piecewise::{PiecewiseError, PiecewiseLinear};
