use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteGroup, GaloisError};

/// A finite set with a left action, `action[g][x] = g · x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    action: Vec<Vec<usize>>,
}

impl GSet {
    /// Checks that the identity acts trivially, each element acts by a
    /// permutation, and `(gh)·x = g·(h·x)`.
    pub fn new(group: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self, GaloisError> {
        if action.len() != group.order() {
            return Err(GaloisError::InvalidGSet("one action row per group element required"));
        }
        let size = action[0].len();
        for row in &action {
            let mut seen = vec![false; size];
            if row.len() != size || row.iter().any(|&x| x >= size || core::mem::replace(&mut seen[x], true)) {
                return Err(GaloisError::InvalidGSet("action rows must be permutations of the points"));
            }
        }
        if (0..size).any(|x| action[group.identity()][x] != x) {
            return Err(GaloisError::InvalidGSet("identity acts nontrivially"));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..size).any(|x| action[gh][x] != action[g][action[h][x]]) {
                    return Err(GaloisError::InvalidGSet("action is not compatible with the group law"));
                }
            }
        }
        Ok(GSet { action })
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: &FiniteGroup) -> Self {
        let action = (0..group.order()).map(|g| (0..group.order()).map(|x| group.mul(g, x)).collect()).collect();
        GSet { action }
    }

    /// `G/K`: left cosets ordered by least element, `g · xK = gxK`.
    pub fn cosets(group: &FiniteGroup, k: &[usize]) -> Result<Self, GaloisError> {
        if !group.is_subgroup(k) {
            return Err(GaloisError::NotSubgroup);
        }
        let cosets = group.left_cosets(k);
        let mut which = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        let action = (0..group.order()).map(|g| cosets.iter().map(|c| which[group.mul(g, c[0])]).collect()).collect();
        Ok(GSet { action })
    }

    /// `a ⊔ b`, points of `a` first.
    pub fn coproduct(a: &GSet, b: &GSet) -> Self {
        let off = a.size();
        let action = a
            .action
            .iter()
            .zip(&b.action)
            .map(|(ra, rb)| ra.iter().copied().chain(rb.iter().map(|&y| y + off)).collect())
            .collect();
        GSet { action }
    }

    pub fn size(&self) -> usize {
        self.action.first().map(Vec::len).unwrap_or(0)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn is_regular_for(&self, group: &FiniteGroup) -> bool {
        self.size() == group.order()
            && (0..group.order()).all(|g| (0..group.order()).all(|x| self.action[g][x] == group.mul(g, x)))
    }

    /// Orbits of the subgroup `h`, ordered by least element.
    pub fn orbits(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = h.iter().map(|&g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// A `G`-equivariant map between two objects of a [`Family`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub map: Vec<usize>,
}

/// Records that object `sum` is `left ⊔ right` in the layout of [`GSet::coproduct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coproduct {
    pub left: usize,
    pub right: usize,
    pub sum: usize,
}

/// A finite collection of `G`-sets with some morphisms and coproducts between them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Family {
    pub objects: Vec<GSet>,
    pub morphisms: Vec<Morphism>,
    pub coproducts: Vec<Coproduct>,
}

impl Family {
    /// The regular object alone, with every right multiplication `x ↦ xg`
    /// as an automorphism.
    pub fn regular(group: &FiniteGroup) -> Self {
        let mut fam = Family { objects: vec![GSet::regular(group)], ..Family::default() };
        fam.add_right_multiplications(group, 0);
        fam
    }

    /// Adds the automorphisms `x ↦ xg` of a regular object.
    pub fn add_right_multiplications(&mut self, group: &FiniteGroup, object: usize) {
        for g in 0..group.order() {
            let map = (0..group.order()).map(|x| group.mul(x, g)).collect();
            self.morphisms.push(Morphism { source: object, target: object, map });
        }
    }

    pub fn add_object(&mut self, x: GSet) -> usize {
        self.objects.push(x);
        self.objects.len() - 1
    }

    /// Adds `left ⊔ right` as a new object together with its coproduct record.
    pub fn add_coproduct(&mut self, left: usize, right: usize) -> usize {
        let sum = self.add_object(GSet::coproduct(&self.objects[left], &self.objects[right]));
        self.coproducts.push(Coproduct { left, right, sum });
        sum
    }

    /// The regular object, every `G/K` for the given subgroups, the
    /// projections `G → G/K`, and `x ↦ xg` on `G`.
    pub fn standard(group: &FiniteGroup, subgroups: &[Vec<usize>]) -> Result<Self, GaloisError> {
        let mut fam = Family::regular(group);
        for k in subgroups {
            let quotient = GSet::cosets(group, k)?;
            let cosets = group.left_cosets(k);
            let mut proj = vec![0; group.order()];
            for (i, c) in cosets.iter().enumerate() {
                for &x in c {
                    proj[x] = i;
                }
            }
            let idx = fam.add_object(quotient);
            fam.morphisms.push(Morphism { source: 0, target: idx, map: proj });
        }
        Ok(fam)
    }
}

/// Quotient maps `q_X : X → F'(X)`, one per family object. Labels are
/// arbitrary integers; `F'(X)` is the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberQuotient {
    pub maps: Vec<Vec<usize>>,
}

impl FiberQuotient {
    /// `X → H\X` for every object.
    pub fn induced(family: &Family, h: &[usize]) -> Self {
        let maps = family
            .objects
            .iter()
            .map(|x| {
                let mut q = vec![0; x.size()];
                for (i, orbit) in x.orbits(h).iter().enumerate() {
                    for &p in orbit {
                        q[p] = i;
                    }
                }
                q
            })
            .collect();
        FiberQuotient { maps }
    }

    /// Relabels every map by order of first appearance.
    pub fn canonical(&self) -> Self {
        let maps = self
            .maps
            .iter()
            .map(|q| {
                let mut names = BTreeMap::new();
                q.iter()
                    .map(|&l| {
                        let next = names.len();
                        *names.entry(l).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        FiberQuotient { maps }
    }
}
