//! Newton polygons of shifted polynomials and the Herbrand function
//! `φ(s) = Σ min(s_i, s) + s` built from root-difference valuations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::local_field::{FieldElement, FieldTower, LocalFieldError, ValPoly};
use crate::numeric::{ExtRat, PiecewiseError, PiecewiseLinear, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HerbrandError {
    EmptyPoints,
    /// Newton polygon input must contain the point `(0, 0)`.
    MissingOrigin,
    /// A point with negative valuation, or a negative slope.
    Negative,
    /// Slopes must be finite.
    InfiniteSlope,
    /// Root bookkeeping does not match the slope count.
    Malformed,
}

impl fmt::Display for HerbrandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HerbrandError::EmptyPoints => f.write_str("no points given"),
            HerbrandError::MissingOrigin => f.write_str("points must include (0, 0)"),
            HerbrandError::Negative => f.write_str("negative valuation or slope"),
            HerbrandError::InfiniteSlope => f.write_str("slopes must be finite"),
            HerbrandError::Malformed => f.write_str("root indices do not match slopes"),
        }
    }
}

impl core::error::Error for HerbrandError {}

/// Sorted valuations `s_1 <= ... <= s_{n-1}` of `a_i - a_n` for a chosen
/// base root `a_n`, with the root index behind each slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeData {
    slopes: Vec<Rat>,
    roots: Vec<usize>,
    base: usize,
}

impl SlopeData {
    /// Bare slopes; roots are numbered by sorted position with the base last.
    pub fn new(mut slopes: Vec<Rat>) -> Result<Self, HerbrandError> {
        if slopes.iter().any(Signed::is_negative) {
            return Err(HerbrandError::Negative);
        }
        slopes.sort();
        let n = slopes.len();
        Ok(SlopeData { slopes, roots: (0..n).collect(), base: n })
    }

    /// From `(root index, v(a_root - a_base))` pairs for every non-base root.
    pub fn with_roots(base: usize, mut pairs: Vec<(usize, ExtRat)>) -> Result<Self, HerbrandError> {
        if pairs.iter().any(|(i, _)| *i == base) {
            return Err(HerbrandError::Malformed);
        }
        let mut seen: Vec<usize> = pairs.iter().map(|(i, _)| *i).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != pairs.len() {
            return Err(HerbrandError::Malformed);
        }
        pairs.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut slopes = Vec::with_capacity(pairs.len());
        let mut roots = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            let v = v.into_finite().ok_or(HerbrandError::InfiniteSlope)?;
            if v.is_negative() {
                return Err(HerbrandError::Negative);
            }
            slopes.push(v);
            roots.push(i);
        }
        Ok(SlopeData { slopes, roots, base })
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    /// Root index for each slope, in slope order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn base_root_index(&self) -> usize {
        self.base
    }

    /// The extension degree `n`.
    pub fn degree(&self) -> usize {
        self.slopes.len() + 1
    }

    /// `s_k` with the sentinels `s_0 = 0` and `s_n = ∞`.
    pub fn s(&self, k: usize) -> ExtRat {
        if k == 0 {
            ExtRat::zero()
        } else if k >= self.degree() {
            ExtRat::Infinity
        } else {
            ExtRat::Finite(self.slopes[k - 1].clone())
        }
    }

    /// Same multiset of slopes, ignoring root bookkeeping.
    pub fn same_slopes(&self, other: &SlopeData) -> bool {
        self.slopes == other.slopes
    }
}

/// Lower convex hull of points `(k, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<(usize, Rat)>,
}

/// Lower convex hull through `(0, 0)`; points with infinite value are skipped.
pub fn newton_polygon(points: &[(usize, ExtRat)]) -> Result<NewtonPolygon, HerbrandError> {
    if points.is_empty() {
        return Err(HerbrandError::EmptyPoints);
    }
    let mut finite: Vec<(usize, Rat)> =
        points.iter().filter_map(|(k, v)| v.finite().map(|r| (*k, r.clone()))).collect();
    if finite.iter().any(|(_, v)| v.is_negative()) {
        return Err(HerbrandError::Negative);
    }
    finite.sort();
    // keep the lowest value per abscissa
    finite.dedup_by(|later, earlier| later.0 == earlier.0);
    if finite.first().map(|(k, v)| *k != 0 || !v.is_zero()).unwrap_or(true) {
        return Err(HerbrandError::MissingOrigin);
    }
    let mut hull: Vec<(usize, Rat)> = Vec::new();
    for pt in finite {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let lhs = (y2 - y1) * Rat::from_integer(BigInt::from(pt.0 - x1));
            let rhs = (&pt.1 - y1) * Rat::from_integer(BigInt::from(x2 - x1));
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon { vertices: hull })
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(usize, Rat)] {
        &self.vertices
    }

    /// Segment slopes, each repeated by its horizontal length, ascending.
    pub fn slopes(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for w in self.vertices.windows(2) {
            let len = w[1].0 - w[0].0;
            let m = (&w[1].1 - &w[0].1) / Rat::from_integer(BigInt::from(len));
            out.extend(core::iter::repeat(m).take(len));
        }
        out
    }

    /// The hull as a function on `[0, ∞)`, its last segment extended.
    pub fn as_piecewise(&self) -> PiecewiseLinear {
        if self.vertices.len() < 2 {
            return PiecewiseLinear::linear(Rat::zero(), Rat::zero());
        }
        let mut bps = Vec::new();
        let mut ms = Vec::new();
        for w in self.vertices.windows(2) {
            bps.push(Rat::from_integer(BigInt::from(w[0].0)));
            ms.push((&w[1].1 - &w[0].1) / Rat::from_integer(BigInt::from(w[1].0 - w[0].0)));
        }
        PiecewiseLinear::new(Rat::zero(), bps, ms).expect("hull vertices increase")
    }

    pub fn slope_data(&self) -> Result<SlopeData, HerbrandError> {
        SlopeData::new(self.slopes())
    }
}

/// Valuations `(k, v(c_k))` for `k = 1..n-1`, where
/// `P(T + a) = T^n + c_1 T^{n-1} + ... + c_{n-1} T`.
pub fn shifted_coefficient_valuations(
    tower: &FieldTower,
    poly: &ValPoly,
    root: &FieldElement,
) -> Result<Vec<(usize, ExtRat)>, LocalFieldError> {
    let shifted = poly.taylor_shift(tower, root);
    let c = shifted.coeffs();
    let n = poly.degree();
    match tower.valuation(&c[0]) {
        Ok(v) if !v.is_infinite() => return Err(LocalFieldError::NotARoot),
        _ => {}
    }
    (1..n).map(|k| Ok((k, tower.valuation(&c[n - k])?))).collect()
}

/// Prepends the leading coefficient's point `(0, 0)`.
pub fn with_origin(points: &[(usize, ExtRat)]) -> Vec<(usize, ExtRat)> {
    let mut out = vec![(0, ExtRat::zero())];
    out.extend(points.iter().cloned());
    out
}

/// `φ` together with its inverse `ψ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HerbrandFunction {
    slopes: SlopeData,
    phi: PiecewiseLinear,
    psi: PiecewiseLinear,
}

pub fn herbrand_phi(slopes: &SlopeData) -> HerbrandFunction {
    let mut bps = vec![Rat::zero()];
    let mut distinct: Vec<Rat> = slopes.slopes.iter().filter(|s| s.is_positive()).cloned().collect();
    distinct.dedup();
    bps.extend(distinct);
    let ms = bps
        .iter()
        .map(|b| Rat::from_integer(BigInt::from(1 + slopes.slopes.iter().filter(|s| *s > b).count())))
        .collect();
    let phi = PiecewiseLinear::new(Rat::zero(), bps, ms).expect("sorted distinct breakpoints");
    let psi = phi.inverse().expect("slopes are at least one");
    HerbrandFunction { slopes: slopes.clone(), phi, psi }
}

impl HerbrandFunction {
    pub fn slope_data(&self) -> &SlopeData {
        &self.slopes
    }

    pub fn phi(&self) -> &PiecewiseLinear {
        &self.phi
    }

    pub fn psi(&self) -> &PiecewiseLinear {
        &self.psi
    }

    pub fn eval_phi(&self, s: &ExtRat) -> Result<ExtRat, PiecewiseError> {
        self.phi.eval(s)
    }

    pub fn eval_psi(&self, gamma: &ExtRat) -> Result<ExtRat, PiecewiseError> {
        self.psi.eval(gamma)
    }
}

pub fn different_valuation(slopes: &SlopeData) -> Rat {
    slopes.slopes.iter().sum()
}

/// `φ(s_{n-1})`, zero for the trivial extension.
pub fn break_conductor(slopes: &SlopeData) -> Rat {
    match slopes.slopes.last() {
        Some(top) => different_valuation(slopes) + top,
        None => Rat::zero(),
    }
}

/// Slope of `φ` on `[s_{k-1}, s_k)`, i.e. `n - k + 1`.
pub fn segment_slope(slopes: &SlopeData, k: usize) -> Rat {
    Rat::from_integer(BigInt::from(slopes.degree() + 1 - k))
}

impl Default for SlopeData {
    fn default() -> Self {
        SlopeData { slopes: Vec::new(), roots: Vec::new(), base: 0 }
    }
}
