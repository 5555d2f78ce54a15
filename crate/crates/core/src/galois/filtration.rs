use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gset::{Family, FiberQuotient};
use super::recover::recover_subgroup;
use super::{FiniteGroup, GaloisError, Subgroup};
use crate::herbrand::HerbrandFunction;
use crate::numeric::{ExtRat, Rat};
use crate::ramification::{break_structure, partition_at, Mode, RootDiffMatrix};

/// Root `i` corresponds to the group element `root_to_group[i]`; the root
/// labelled by the identity is the base, and `g` sends root `h` to root `gh`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torsor {
    root_to_group: Vec<usize>,
    group_to_root: Vec<usize>,
}

impl Torsor {
    pub fn new(group: &FiniteGroup, root_to_group: Vec<usize>) -> Result<Self, GaloisError> {
        let n = group.order();
        if root_to_group.len() != n {
            return Err(GaloisError::NotTorsor);
        }
        let mut group_to_root = vec![usize::MAX; n];
        for (root, &g) in root_to_group.iter().enumerate() {
            if g >= n || group_to_root[g] != usize::MAX {
                return Err(GaloisError::NotTorsor);
            }
            group_to_root[g] = root;
        }
        Ok(Torsor { root_to_group, group_to_root })
    }

    pub fn base_root(&self, group: &FiniteGroup) -> usize {
        self.group_to_root[group.identity()]
    }

    pub fn element_of(&self, root: usize) -> usize {
        self.root_to_group[root]
    }

    pub fn root_of(&self, g: usize) -> usize {
        self.group_to_root[g]
    }

    /// The permutation of roots induced by `g`.
    pub fn permutation(&self, group: &FiniteGroup, g: usize) -> Vec<usize> {
        self.root_to_group.iter().map(|&h| self.group_to_root[group.mul(g, h)]).collect()
    }

    pub fn root_to_group(&self) -> &[usize] {
        &self.root_to_group
    }
}

/// `G^γ` on `(lower, upper]`, or on `(lower, ∞)` when `upper` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationPiece {
    pub lower: Rat,
    pub upper: Option<Rat>,
    pub subgroup: Subgroup,
}

/// Both sides of the filtration at a break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakGroups {
    pub level: Rat,
    /// `G^α`
    pub closed: Subgroup,
    /// `G^{α+}`
    pub open: Subgroup,
}

/// The upper ramification filtration `G^γ ⊇ G^{γ+}` of a Galois root set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationFiltration {
    group: FiniteGroup,
    torsor: Torsor,
    matrix: RootDiffMatrix,
    phi: HerbrandFunction,
    breaks: Vec<Rat>,
    at_breaks: Vec<BreakGroups>,
    pieces: Vec<FiltrationPiece>,
    inertia: Subgroup,
}

/// Builds the filtration and cross-checks every level against subgroup
/// recovery on the regular object.
pub fn ramification_filtration(
    group: &FiniteGroup,
    torsor: &Torsor,
    matrix: &RootDiffMatrix,
    phi: &HerbrandFunction,
) -> Result<RamificationFiltration, GaloisError> {
    if matrix.size() != group.order() {
        return Err(GaloisError::NotTorsor);
    }
    for g in 0..group.order() {
        if !matrix.is_invariant_under(&torsor.permutation(group, g)) {
            return Err(GaloisError::NotInvariant);
        }
    }
    let base = torsor.base_root(group);
    if !phi.slope_data().same_slopes(&matrix.slope_data(base)) {
        return Err(GaloisError::HerbrandMismatch);
    }
    let mut filt = RamificationFiltration {
        group: group.clone(),
        torsor: torsor.clone(),
        matrix: matrix.clone(),
        phi: phi.clone(),
        breaks: break_structure(matrix)?.breaks().to_vec(),
        at_breaks: Vec::new(),
        pieces: Vec::new(),
        inertia: Vec::new(),
    };

    let mut starts = vec![Rat::zero()];
    starts.extend(filt.breaks.iter().filter(|b| !b.is_zero()).cloned());
    let mut samples: Vec<Rat> = Vec::new();
    for (i, lo) in starts.iter().enumerate() {
        samples.push(lo.clone());
        samples.push(match starts.get(i + 1) {
            Some(hi) => (lo + hi) / Rat::from_integer(BigInt::from(2)),
            None => lo + Rat::one(),
        });
    }
    for gamma in &samples {
        for mode in [Mode::Closed, Mode::Open] {
            filt.verified_subgroup(&ExtRat::Finite(gamma.clone()), mode)?;
        }
    }

    filt.inertia = filt.subgroup_at(&ExtRat::zero(), Mode::Open)?;
    filt.at_breaks = filt
        .breaks
        .iter()
        .map(|b| {
            let level = ExtRat::Finite(b.clone());
            Ok(BreakGroups {
                level: b.clone(),
                closed: filt.subgroup_at(&level, Mode::Closed)?,
                open: filt.subgroup_at(&level, Mode::Open)?,
            })
        })
        .collect::<Result<_, GaloisError>>()?;
    for (i, lo) in starts.iter().enumerate() {
        let upper = starts.get(i + 1).cloned();
        let probe = match &upper {
            Some(hi) => hi.clone(),
            None => lo + Rat::one(),
        };
        let subgroup = filt.subgroup_at(&ExtRat::Finite(probe), Mode::Closed)?;
        filt.pieces.push(FiltrationPiece { lower: lo.clone(), upper, subgroup });
    }
    Ok(filt)
}

impl RamificationFiltration {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn at_breaks(&self) -> &[BreakGroups] {
        &self.at_breaks
    }

    pub fn pieces(&self) -> &[FiltrationPiece] {
        &self.pieces
    }

    /// `G^{0+}`.
    pub fn inertia(&self) -> &Subgroup {
        &self.inertia
    }

    pub fn matrix(&self) -> &RootDiffMatrix {
        &self.matrix
    }

    pub fn herbrand(&self) -> &HerbrandFunction {
        &self.phi
    }

    pub fn torsor(&self) -> &Torsor {
        &self.torsor
    }

    /// `{g : v(g·a - a) >= ψ(γ)}` (closed) or `> ψ(γ)` (open) for the base root `a`.
    pub fn subgroup_at(&self, gamma: &ExtRat, mode: Mode) -> Result<Subgroup, GaloisError> {
        if gamma.is_negative() {
            return Err(GaloisError::Ramification(crate::ramification::RamificationError::Domain));
        }
        let s = self
            .phi
            .eval_psi(gamma)
            .map_err(|_| GaloisError::Ramification(crate::ramification::RamificationError::Domain))?;
        let base = self.torsor.base_root(&self.group);
        let members: Subgroup = (0..self.group.order())
            .filter(|&g| {
                let v = self.matrix.get(self.torsor.root_of(g), base);
                match mode {
                    Mode::Closed => *v >= s,
                    Mode::Open => *v > s,
                }
            })
            .collect();
        self.group.subgroup(&members)
    }

    /// The level subgroup, checked to be the subgroup recovered from the
    /// level partition viewed as a quotient of the regular object.
    fn verified_subgroup(&self, gamma: &ExtRat, mode: Mode) -> Result<Subgroup, GaloisError> {
        let direct = self.subgroup_at(gamma, mode)?;
        let partition = partition_at(&self.matrix, gamma, mode, &self.phi)?;
        let q: Vec<usize> = (0..self.group.order()).map(|g| partition.block_of(self.torsor.root_of(g))).collect();
        let family = Family::regular(&self.group);
        let recovered = match recover_subgroup(&self.group, &family, &FiberQuotient { maps: vec![q] }) {
            Ok(h) => h,
            Err(
                GaloisError::NotNatural(_)
                | GaloisError::NotCocartesian(_)
                | GaloisError::NotInduced(_)
                | GaloisError::NotSubgroup,
            ) => return Err(GaloisError::NotNormal),
            Err(e) => return Err(e),
        };
        if recovered != direct {
            return Err(GaloisError::Inconsistent);
        }
        Ok(direct)
    }

    /// Whether every filtration subgroup is normalized by `d`.
    pub fn normalized_by(&self, d: &[usize]) -> bool {
        let groups =
            self.at_breaks.iter().flat_map(|b| [&b.closed, &b.open]).chain(self.pieces.iter().map(|p| &p.subgroup));
        groups.into_iter().all(|h| d.iter().all(|&g| h.iter().all(|&x| h.contains(&self.group.conjugate(g, x)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat_int;

    fn klein_zeta8() -> (FiniteGroup, RootDiffMatrix) {
        // roots 0..4 labelled by C2 x C2 = {0, 1, 2, 3}; roots {0,1} and {2,3} are closer
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let h = ExtRat::new(1, 2);
        let one = ExtRat::from_int(1);
        let m = RootDiffMatrix::from_pairs(
            4,
            &[(0, 1, one.clone()), (2, 3, one), (0, 2, h.clone()), (0, 3, h.clone()), (1, 2, h.clone()), (1, 3, h)],
        )
        .unwrap();
        (g, m)
    }

    #[test]
    fn quadratic_filtration() {
        let g = FiniteGroup::cyclic(2);
        let m = RootDiffMatrix::from_pairs(2, &[(0, 1, ExtRat::from_int(1))]).unwrap();
        let t = Torsor::new(&g, vec![1, 0]).unwrap();
        let f = ramification_filtration(&g, &t, &m, &m.herbrand()).unwrap();
        assert_eq!(f.breaks(), &[rat_int(2)]);
        assert_eq!(f.pieces()[0].subgroup, vec![0, 1]);
        assert_eq!(f.pieces()[1].subgroup, vec![0]);
        assert_eq!(f.at_breaks()[0].open, vec![0]);
    }

    #[test]
    fn degree_four_filtration() {
        let (g, m) = klein_zeta8();
        let t = Torsor::new(&g, vec![0, 1, 2, 3]).unwrap();
        let f = ramification_filtration(&g, &t, &m, &m.herbrand()).unwrap();
        assert_eq!(f.breaks(), &[rat_int(2), rat_int(3)]);
        let orders: Vec<usize> = f.pieces().iter().map(|p| p.subgroup.len()).collect();
        assert_eq!(orders, vec![4, 2, 1]);
        assert!(f.normalized_by(&g.whole()));
        assert_eq!(f.inertia().len(), 4);
    }

    #[test]
    fn rejects_bad_torsors() {
        let (g, m) = klein_zeta8();
        assert_eq!(Torsor::new(&g, vec![0, 0, 1, 2]), Err(GaloisError::NotTorsor));
        // translation by a generator of C4 moves the close pair {0, 1} to {1, 2}
        let c4 = FiniteGroup::cyclic(4);
        let t = Torsor::new(&c4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(ramification_filtration(&c4, &t, &m, &m.herbrand()).unwrap_err(), GaloisError::NotInvariant);
    }
}
