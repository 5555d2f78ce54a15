use alloc::vec;
use alloc::vec::Vec;

use super::RamificationError;
use crate::herbrand::{herbrand_phi, HerbrandFunction, SlopeData};
use crate::numeric::{ExtRat, Rat};

/// Symmetric matrix of root-difference valuations `v(a_i - a_j)`.
///
/// Construction checks symmetry, an infinite diagonal, finite nonnegative
/// off-diagonal entries and the ultrametric inequality on every triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootDiffMatrix {
    entries: Vec<Vec<ExtRat>>,
}

impl RootDiffMatrix {
    pub fn new(entries: Vec<Vec<ExtRat>>) -> Result<Self, RamificationError> {
        let n = entries.len();
        if n == 0 {
            return Err(RamificationError::EmptyMatrix);
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(RamificationError::NotSquare);
        }
        for i in 0..n {
            if !entries[i][i].is_infinite() {
                return Err(RamificationError::DiagonalNotInfinite(i));
            }
            for j in 0..n {
                if entries[i][j] != entries[j][i] {
                    return Err(RamificationError::NotSymmetric(i, j));
                }
                if i != j {
                    match &entries[i][j] {
                        ExtRat::Infinity => return Err(RamificationError::InfiniteEntry(i, j)),
                        v if v.is_negative() => return Err(RamificationError::NegativeEntry(i, j)),
                        _ => {}
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let bound = core::cmp::min(&entries[i][k], &entries[k][j]);
                    if entries[i][j] < *bound {
                        return Err(RamificationError::NotUltrametric(i, j, k));
                    }
                }
            }
        }
        Ok(RootDiffMatrix { entries })
    }

    /// Builds from `(i, j, value)` triples (0-based) covering each unordered
    /// pair `i != j` at least once; the mirror entry is filled in.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize, ExtRat)]) -> Result<Self, RamificationError> {
        if n == 0 {
            return Err(RamificationError::EmptyMatrix);
        }
        let mut cells: Vec<Vec<Option<ExtRat>>> = vec![vec![None; n]; n];
        for i in 0..n {
            cells[i][i] = Some(ExtRat::Infinity);
        }
        for (i, j, v) in pairs {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(RamificationError::IndexOutOfRange(i.max(j)));
            }
            for (a, b) in [(i, j), (j, i)] {
                match &cells[a][b] {
                    Some(old) if old != v => return Err(RamificationError::ConflictingEntry(i, j)),
                    _ => cells[a][b] = Some(v.clone()),
                }
            }
        }
        let mut entries = Vec::with_capacity(n);
        for (i, row) in cells.into_iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (j, c) in row.into_iter().enumerate() {
                out.push(c.ok_or(RamificationError::MissingEntry(i, j))?);
            }
            entries.push(out);
        }
        Self::new(entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtRat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<ExtRat>] {
        &self.entries
    }

    /// Distinct off-diagonal values, ascending.
    pub fn distinct_values(&self) -> Vec<Rat> {
        let n = self.size();
        let mut out: Vec<Rat> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.entries[i][j].finite().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Slopes `v(a_i - a_base)` over `i != base`.
    pub fn slope_data(&self, base: usize) -> SlopeData {
        let pairs = (0..self.size()).filter(|&i| i != base).map(|i| (i, self.entries[i][base].clone())).collect();
        SlopeData::with_roots(base, pairs).expect("validated matrix has finite nonnegative entries")
    }

    /// Slope data for the last root, the default base.
    pub fn default_slope_data(&self) -> SlopeData {
        self.slope_data(self.size() - 1)
    }

    pub fn herbrand(&self) -> HerbrandFunction {
        herbrand_phi(&self.default_slope_data())
    }

    /// Whether every base root yields the same slope multiset.
    pub fn is_base_independent(&self) -> bool {
        let first = self.slope_data(0);
        (1..self.size()).all(|b| self.slope_data(b).same_slopes(&first))
    }

    /// `M[perm[i]][perm[j]] == M[i][j]` for all `i, j`.
    pub fn is_invariant_under(&self, perm: &[usize]) -> bool {
        let n = self.size();
        perm.len() == n && (0..n).all(|i| (0..n).all(|j| self.entries[perm[i]][perm[j]] == self.entries[i][j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64) -> ExtRat {
        ExtRat::new(a, b)
    }

    #[test]
    fn completes_symmetry() {
        let m = RootDiffMatrix::from_pairs(2, &[(0, 1, v(1, 1))]).unwrap();
        assert_eq!(m.get(1, 0), &v(1, 1));
        assert_eq!(m.get(0, 0), &ExtRat::Infinity);
        assert_eq!(
            RootDiffMatrix::from_pairs(2, &[(0, 1, v(1, 1)), (1, 0, v(2, 1))]),
            Err(RamificationError::ConflictingEntry(1, 0))
        );
        assert_eq!(RootDiffMatrix::from_pairs(3, &[(0, 1, v(1, 1))]), Err(RamificationError::MissingEntry(0, 2)));
    }

    #[test]
    fn rejects_non_ultrametric() {
        let bad = RootDiffMatrix::from_pairs(3, &[(0, 1, v(2, 1)), (1, 2, v(2, 1)), (0, 2, v(1, 1))]);
        assert!(matches!(bad, Err(RamificationError::NotUltrametric(..))));
        let neg = RootDiffMatrix::from_pairs(2, &[(0, 1, v(-1, 1))]);
        assert_eq!(neg, Err(RamificationError::NegativeEntry(0, 1)));
    }

    #[test]
    fn slopes_relative_to_base() {
        let m = RootDiffMatrix::from_pairs(
            4,
            &[(0, 1, v(1, 2)), (0, 2, v(1, 2)), (0, 3, v(1, 2)), (1, 2, v(1, 2)), (1, 3, v(1, 2)), (2, 3, v(1, 1))],
        )
        .unwrap();
        assert!(!m.is_base_independent());
        let s = m.default_slope_data();
        assert_eq!(s.roots(), &[0, 1, 2]);
        assert_eq!(m.distinct_values().len(), 2);
    }
}
