use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::ext_rat::{ExtRat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiecewiseError {
    /// Evaluation point outside `[0, ∞]`.
    Domain,
    /// Breakpoints must start at 0 and strictly increase, one slope per segment.
    Malformed,
    /// `inverse` needs strictly positive slopes and `f(0) = 0`.
    NotInvertible,
    /// `f(∞)` is `-∞` when the last slope is negative.
    Unbounded,
}

impl fmt::Display for PiecewiseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiecewiseError::Domain => f.write_str("argument outside the domain [0, inf]"),
            PiecewiseError::Malformed => f.write_str("malformed piecewise-linear data"),
            PiecewiseError::NotInvertible => f.write_str("function is not strictly increasing from the origin"),
            PiecewiseError::Unbounded => f.write_str("value at infinity is unbounded below"),
        }
    }
}

impl core::error::Error for PiecewiseError {}

/// A continuous piecewise-linear function on `[0, ∞)` with rational data.
///
/// Segment `i` covers `[breakpoints[i], breakpoints[i + 1])`; the last one is
/// unbounded. Values are accumulated from `value_at_zero`, so continuity holds
/// by construction. Adjacent segments of equal slope are always merged, which
/// makes `==` coincide with equality of functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    value_at_zero: Rat,
    breakpoints: Vec<Rat>,
    slopes: Vec<Rat>,
}

impl PiecewiseLinear {
    pub fn new(value_at_zero: Rat, breakpoints: Vec<Rat>, slopes: Vec<Rat>) -> Result<Self, PiecewiseError> {
        if breakpoints.is_empty()
            || slopes.len() != breakpoints.len()
            || !breakpoints[0].is_zero()
            || breakpoints.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(PiecewiseError::Malformed);
        }
        let mut f = PiecewiseLinear { value_at_zero, breakpoints, slopes };
        f.merge_equal_slopes();
        Ok(f)
    }

    pub fn linear(value_at_zero: Rat, slope: Rat) -> Self {
        PiecewiseLinear { value_at_zero, breakpoints: alloc::vec![Rat::zero()], slopes: alloc::vec![slope] }
    }

    pub fn identity() -> Self {
        Self::linear(Rat::zero(), Rat::one())
    }

    fn merge_equal_slopes(&mut self) {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut slopes: Vec<Rat> = Vec::with_capacity(self.slopes.len());
        for (b, m) in self.breakpoints.drain(..).zip(self.slopes.drain(..)) {
            if slopes.last() == Some(&m) {
                continue;
            }
            bps.push(b);
            slopes.push(m);
        }
        self.breakpoints = bps;
        self.slopes = slopes;
    }

    pub fn value_at_zero(&self) -> &Rat {
        &self.value_at_zero
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    pub fn final_slope(&self) -> &Rat {
        self.slopes.last().expect("at least one segment")
    }

    /// Values at each breakpoint, in order.
    pub fn breakpoint_values(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.breakpoints.len());
        let mut acc = self.value_at_zero.clone();
        out.push(acc.clone());
        for i in 1..self.breakpoints.len() {
            acc += &self.slopes[i - 1] * (&self.breakpoints[i] - &self.breakpoints[i - 1]);
            out.push(acc.clone());
        }
        out
    }

    /// Index of the segment containing `x >= 0`.
    fn segment_of(&self, x: &Rat) -> usize {
        // last breakpoint <= x
        self.breakpoints.partition_point(|b| b <= x) - 1
    }

    /// Slope of the segment that starts at or before `x` (the right derivative).
    pub fn slope_at(&self, x: &Rat) -> Result<&Rat, PiecewiseError> {
        if x.is_negative() {
            return Err(PiecewiseError::Domain);
        }
        Ok(&self.slopes[self.segment_of(x)])
    }

    pub fn eval_rat(&self, x: &Rat) -> Result<Rat, PiecewiseError> {
        if x.is_negative() {
            return Err(PiecewiseError::Domain);
        }
        let mut acc = self.value_at_zero.clone();
        for i in 0..self.breakpoints.len() {
            let start = &self.breakpoints[i];
            match self.breakpoints.get(i + 1) {
                Some(end) if end <= x => acc += &self.slopes[i] * (end - start),
                _ => {
                    acc += &self.slopes[i] * (x - start);
                    break;
                }
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &ExtRat) -> Result<ExtRat, PiecewiseError> {
        match x {
            ExtRat::Finite(r) => self.eval_rat(r).map(ExtRat::Finite),
            ExtRat::Infinity => {
                let last = self.final_slope();
                if last.is_positive() {
                    Ok(ExtRat::Infinity)
                } else if last.is_zero() {
                    let values = self.breakpoint_values();
                    Ok(ExtRat::Finite(values.last().cloned().expect("nonempty")))
                } else {
                    Err(PiecewiseError::Unbounded)
                }
            }
        }
    }

    /// Concave iff the slope sequence is non-increasing.
    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.slopes.iter().all(|m| m.is_positive())
    }

    pub fn neg(&self) -> Self {
        PiecewiseLinear {
            value_at_zero: -self.value_at_zero.clone(),
            breakpoints: self.breakpoints.clone(),
            slopes: self.slopes.iter().map(|m| -m.clone()).collect(),
        }
    }

    /// Compositional inverse of a strictly increasing `f` with `f(0) = 0`.
    pub fn inverse(&self) -> Result<Self, PiecewiseError> {
        if !self.value_at_zero.is_zero() || !self.is_strictly_increasing() {
            return Err(PiecewiseError::NotInvertible);
        }
        let breakpoints = self.breakpoint_values();
        let slopes = self.slopes.iter().map(|m| m.recip()).collect();
        Ok(PiecewiseLinear { value_at_zero: Rat::zero(), breakpoints, slopes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ext_rat::{rat, rat_int};
    use alloc::vec;

    // φ(s) = Σ min(s_i, s) + s, built segment by segment.
    fn herbrand_like(slopes: &[Rat]) -> PiecewiseLinear {
        let mut bps = vec![Rat::zero()];
        let mut distinct: Vec<Rat> = slopes.iter().filter(|s| s.is_positive()).cloned().collect();
        distinct.sort();
        distinct.dedup();
        bps.extend(distinct);
        let ms = bps.iter().map(|b| rat_int(1 + slopes.iter().filter(|s| *s > b).count() as i64)).collect();
        PiecewiseLinear::new(Rat::zero(), bps, ms).unwrap()
    }

    fn brute_phi(slopes: &[Rat], s: &Rat) -> Rat {
        slopes.iter().map(|si| core::cmp::min(si.clone(), s.clone())).sum::<Rat>() + s
    }

    #[test]
    fn identity_evaluates_to_argument() {
        let f = PiecewiseLinear::identity();
        assert_eq!(f.eval(&ExtRat::new(7, 3)).unwrap(), ExtRat::new(7, 3));
        assert_eq!(f.eval(&ExtRat::Infinity).unwrap(), ExtRat::Infinity);
        assert_eq!(f.inverse().unwrap(), f);
    }

    #[test]
    fn evaluation_matches_summation_oracle() {
        let f = herbrand_like(&[rat_int(1)]);
        assert_eq!(f.eval_rat(&rat_int(1)).unwrap(), brute_phi(&[rat_int(1)], &rat_int(1)));
        assert_eq!(f.eval_rat(&rat_int(1)).unwrap(), rat_int(2));
        let ss = [rat_int(1), rat_int(1), rat_int(2)];
        let g = herbrand_like(&ss);
        assert_eq!(g.eval_rat(&rat_int(3)).unwrap(), rat_int(7));
        for k in 0..40 {
            let s = rat(k, 7);
            assert_eq!(g.eval_rat(&s).unwrap(), brute_phi(&ss, &s));
        }
    }

    #[test]
    fn inverse_solves_phi() {
        let f = herbrand_like(&[rat_int(1)]);
        let g = f.inverse().unwrap();
        assert_eq!(g.eval_rat(&rat_int(2)).unwrap(), rat_int(1));
        let h = herbrand_like(&[rat(1, 2)]).inverse().unwrap();
        assert_eq!(h.eval_rat(&rat_int(1)).unwrap(), rat(1, 2));
    }

    #[test]
    fn negative_argument_is_a_domain_error() {
        let f = PiecewiseLinear::identity();
        assert_eq!(f.eval(&ExtRat::new(-1, 2)), Err(PiecewiseError::Domain));
    }

    #[test]
    fn concavity() {
        assert!(herbrand_like(&[rat_int(1), rat(1, 3), rat_int(5)]).is_concave());
        let up = PiecewiseLinear::new(Rat::zero(), vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(2)]).unwrap();
        assert!(!up.is_concave());
        assert!(up.neg().is_concave());
    }

    #[test]
    fn non_monotone_has_no_inverse() {
        let f = PiecewiseLinear::new(Rat::zero(), vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(f.inverse(), Err(PiecewiseError::NotInvertible));
        assert_eq!(f.eval(&ExtRat::Infinity).unwrap(), ExtRat::from_int(1));
        let g = PiecewiseLinear::linear(rat_int(1), rat_int(1));
        assert_eq!(g.inverse(), Err(PiecewiseError::NotInvertible));
    }

    #[test]
    fn equal_slopes_are_merged() {
        let f = PiecewiseLinear::new(
            Rat::zero(),
            vec![rat_int(0), rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(2), rat_int(1)],
        )
        .unwrap();
        assert_eq!(f.breakpoints(), &[rat_int(0), rat_int(2)]);
        assert!(PiecewiseLinear::new(Rat::zero(), vec![rat_int(1)], vec![rat_int(1)]).is_err());
    }
}
