use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use super::{RamificationError, RootDiffMatrix};
use crate::herbrand::{break_conductor, HerbrandFunction, SlopeData};
use crate::numeric::{ExtRat, Rat};

/// `Closed` groups roots with `v(a_i - a_j) >= s`, `Open` with `> s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Closed,
    Open,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Closed => "closed",
            Mode::Open => "open",
        })
    }
}

impl Mode {
    fn relates(self, value: &ExtRat, radius: &ExtRat) -> bool {
        match self {
            Mode::Closed => value >= radius,
            Mode::Open => value > radius,
        }
    }
}

/// The root set split into balls at level `γ` (radius `s = ψ(γ)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPartition {
    level: ExtRat,
    mode: Mode,
    radius: ExtRat,
    /// Sorted blocks, ordered by least element.
    blocks: Vec<Vec<usize>>,
}

impl LevelPartition {
    pub fn level(&self) -> &ExtRat {
        &self.level
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn radius(&self) -> &ExtRat {
        &self.radius
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&i)).expect("every root lies in a block")
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &LevelPartition) -> bool {
        self.blocks.iter().all(|b| {
            let target = coarser.block_of(b[0]);
            b.iter().all(|&i| coarser.block_of(i) == target)
        })
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

/// Balls of `M` at radius `s` under `mode`, with transitivity checked.
pub fn balls(m: &RootDiffMatrix, radius: &ExtRat, mode: Mode) -> Result<Vec<Vec<usize>>, RamificationError> {
    let n = m.size();
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let block: Vec<usize> = (i..n).filter(|&j| !assigned[j] && mode.relates(m.get(i, j), radius)).collect();
        for &a in &block {
            for &b in &block {
                if !mode.relates(m.get(a, b), radius) {
                    return Err(RamificationError::NotUltrametric(a, b, i));
                }
            }
            assigned[a] = true;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

pub fn partition_at(
    m: &RootDiffMatrix,
    gamma: &ExtRat,
    mode: Mode,
    phi: &HerbrandFunction,
) -> Result<LevelPartition, RamificationError> {
    if gamma.is_negative() {
        return Err(RamificationError::Domain);
    }
    if phi.slope_data().degree() != m.size() {
        return Err(RamificationError::SizeMismatch);
    }
    let radius = phi.eval_psi(gamma).map_err(|_| RamificationError::Domain)?;
    let blocks = balls(m, &radius, mode)?;
    Ok(LevelPartition { level: gamma.clone(), mode, radius, blocks })
}

/// Breaks of the level partition and the partition on each open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakStructure {
    breaks: Vec<Rat>,
    /// `intervals[i]` holds on `(points[i], points[i + 1])` where
    /// `points = [0, positive breaks..., ∞]`.
    intervals: Vec<Vec<Vec<usize>>>,
}

impl BreakStructure {
    /// `φ` of each distinct off-diagonal entry, ascending. Contains 0 exactly
    /// when some pair of roots is already apart at the residue level.
    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    /// Endpoints `0 = t_0 < t_1 < ... < t_m` of the open intervals; the last
    /// interval is unbounded.
    pub fn interval_starts(&self) -> Vec<Rat> {
        let mut pts = vec![Rat::zero()];
        pts.extend(self.breaks.iter().filter(|b| !b.is_zero()).cloned());
        pts
    }

    pub fn interval_partitions(&self) -> &[Vec<Vec<usize>>] {
        &self.intervals
    }

    /// Index of the open interval containing `gamma`, or `None` at a break or 0.
    pub fn interval_of(&self, gamma: &Rat) -> Option<usize> {
        let starts = self.interval_starts();
        if starts.contains(gamma) {
            return None;
        }
        Some(starts.partition_point(|t| t < gamma) - 1)
    }

    pub fn max_break(&self) -> Rat {
        self.breaks.last().cloned().unwrap_or_else(Rat::zero)
    }
}

pub fn break_structure(m: &RootDiffMatrix) -> Result<BreakStructure, RamificationError> {
    let phi = m.herbrand();
    let breaks: Vec<Rat> = m.distinct_values().iter().map(|s| phi.phi().eval_rat(s).expect("nonnegative")).collect();
    let mut pts: Vec<Rat> = vec![Rat::zero()];
    pts.extend(breaks.iter().filter(|b| !b.is_zero()).cloned());
    let mut intervals = Vec::with_capacity(pts.len());
    for (i, lo) in pts.iter().enumerate() {
        let mid = match pts.get(i + 1) {
            Some(hi) => (lo + hi) / Rat::from_integer(2.into()),
            None => lo + Rat::one(),
        };
        let p = partition_at(m, &ExtRat::Finite(mid), Mode::Closed, &phi)?;
        intervals.push(p.blocks);
    }
    Ok(BreakStructure { breaks, intervals })
}

/// Canonical quotient map from a finer level partition to a coarser one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    pub finer: LevelPartition,
    pub coarser: LevelPartition,
    /// `map[b]` is the coarser block containing finer block `b`.
    pub map: Vec<usize>,
}

/// Position of `(γ, mode)` in the order `F^γ ≤ F^{γ+} ≤ F^{γ'}` for `γ < γ'`.
pub fn level_order(a: (&ExtRat, Mode), b: (&ExtRat, Mode)) -> Ordering {
    a.0.cmp(b.0).then(a.1.cmp(&b.1))
}

pub fn level_surjection(
    m: &RootDiffMatrix,
    phi: &HerbrandFunction,
    low: (&ExtRat, Mode),
    high: (&ExtRat, Mode),
) -> Result<BlockMap, RamificationError> {
    if level_order(low, high) == Ordering::Greater {
        return Err(RamificationError::OrderViolation);
    }
    let coarser = partition_at(m, low.0, low.1, phi)?;
    let finer = partition_at(m, high.0, high.1, phi)?;
    let mut map = Vec::with_capacity(finer.blocks.len());
    for b in &finer.blocks {
        let target = coarser.block_of(b[0]);
        if b.iter().any(|&i| coarser.block_of(i) != target) {
            return Err(RamificationError::OrderViolation);
        }
        map.push(target);
    }
    Ok(BlockMap { finer, coarser, map })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Unramified,
    Tame,
    Wild,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Unramified => "unramified",
            Class::Tame => "tame",
            Class::Wild => "wild",
        })
    }
}

/// Unramified when the conductor is below 1, tame when at most 1, wild otherwise.
pub fn classify(slopes: &SlopeData) -> Class {
    let r = break_conductor(slopes);
    let one = Rat::one();
    if r < one {
        Class::Unramified
    } else if r <= one {
        Class::Tame
    } else {
        Class::Wild
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn gaussian() -> RootDiffMatrix {
        RootDiffMatrix::from_pairs(2, &[(0, 1, ExtRat::from_int(1))]).unwrap()
    }

    fn zeta8() -> RootDiffMatrix {
        let h = ExtRat::new(1, 2);
        let one = ExtRat::from_int(1);
        RootDiffMatrix::from_pairs(
            4,
            &[(0, 1, one.clone()), (2, 3, one), (0, 2, h.clone()), (0, 3, h.clone()), (1, 2, h.clone()), (1, 3, h)],
        )
        .unwrap()
    }

    #[test]
    fn ties_at_the_break() {
        let m = gaussian();
        let phi = m.herbrand();
        let two = ExtRat::from_int(2);
        assert_eq!(partition_at(&m, &two, Mode::Closed, &phi).unwrap().blocks(), &[vec![0, 1]]);
        assert_eq!(partition_at(&m, &two, Mode::Open, &phi).unwrap().blocks(), &[vec![0], vec![1]]);
        assert_eq!(partition_at(&m, &ExtRat::zero(), Mode::Closed, &phi).unwrap().blocks().len(), 1);
        assert_eq!(partition_at(&m, &ExtRat::new(-1, 2), Mode::Closed, &phi), Err(RamificationError::Domain));
    }

    #[test]
    fn breaks_are_phi_images() {
        assert_eq!(break_structure(&gaussian()).unwrap().breaks(), &[rat_int(2)]);
        let trivial = RootDiffMatrix::new(vec![vec![ExtRat::Infinity]]).unwrap();
        assert!(break_structure(&trivial).unwrap().breaks().is_empty());
        let bs = break_structure(&zeta8()).unwrap();
        assert_eq!(bs.breaks(), &[rat_int(2), rat_int(3)]);
        assert_eq!(bs.interval_partitions().len(), 3);
        assert_eq!(bs.interval_of(&rat(5, 2)), Some(1));
        assert_eq!(bs.interval_of(&rat_int(3)), None);
    }

    #[test]
    fn surjections_follow_canonical_order() {
        let m = gaussian();
        let phi = m.herbrand();
        let two = ExtRat::from_int(2);
        let map = level_surjection(&m, &phi, (&two, Mode::Closed), (&two, Mode::Open)).unwrap();
        assert_eq!(map.map, vec![0, 0]);
        assert_eq!(
            level_surjection(&m, &phi, (&two, Mode::Open), (&two, Mode::Closed)).unwrap_err(),
            RamificationError::OrderViolation
        );
        let z = zeta8();
        let phi = z.herbrand();
        let map = level_surjection(&z, &phi, (&two, Mode::Open), (&ExtRat::from_int(3), Mode::Closed)).unwrap();
        assert_eq!(map.map, vec![0, 1]);
    }

    #[test]
    fn classification_thresholds() {
        assert_eq!(classify(&SlopeData::default()), Class::Unramified);
        assert_eq!(classify(&SlopeData::new(vec![rat_int(0)]).unwrap()), Class::Unramified);
        assert_eq!(classify(&SlopeData::new(vec![rat(1, 2)]).unwrap()), Class::Tame);
        assert_eq!(classify(&SlopeData::new(vec![rat_int(1)]).unwrap()), Class::Wild);
    }
}
