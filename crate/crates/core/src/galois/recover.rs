use alloc::vec;
use alloc::vec::Vec;

use super::gset::{Family, FiberQuotient, GSet};
use super::{FiniteGroup, GaloisError, Subgroup};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Same partition of `0..n`, regardless of labels.
fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

/// Recovers the subgroup `H` with `F' ≅ F_H` from a quotient of the fiber
/// functor on a family containing the regular object.
///
/// Before reading off `H` as the class of the identity in the regular
/// object, the quotient is checked to be natural, to turn every supplied
/// surjection into a pushout square, and to respect supplied coproducts.
/// Afterwards `H\X → F'(X)` is checked to be bijective on every object.
pub fn recover_subgroup(
    group: &FiniteGroup,
    family: &Family,
    quotient: &FiberQuotient,
) -> Result<Subgroup, GaloisError> {
    let objects = &family.objects;
    if quotient.maps.len() != objects.len() {
        return Err(GaloisError::InvalidFamily("one quotient map per object required"));
    }
    for (x, q) in objects.iter().zip(&quotient.maps) {
        if x.action().len() != group.order() || q.len() != x.size() {
            return Err(GaloisError::InvalidFamily("object or quotient map has the wrong size"));
        }
    }
    let regular = objects.iter().position(|x| x.is_regular_for(group)).ok_or(GaloisError::MissingRegular)?;
    let q = quotient.canonical().maps;

    for (i, f) in family.morphisms.iter().enumerate() {
        let (src, dst) = match (objects.get(f.source), objects.get(f.target)) {
            (Some(s), Some(d)) => (s, d),
            _ => return Err(GaloisError::InvalidFamily("morphism refers to a missing object")),
        };
        if f.map.len() != src.size() || f.map.iter().any(|&y| y >= dst.size()) {
            return Err(GaloisError::InvalidFamily("morphism map has the wrong shape"));
        }
        let equivariant =
            (0..group.order()).all(|g| (0..src.size()).all(|x| f.map[src.act(g, x)] == dst.act(g, f.map[x])));
        if !equivariant {
            return Err(GaloisError::NotEquivariant(i));
        }
        let (qs, qt) = (&q[f.source], &q[f.target]);
        // F'(f) must be well defined
        let mut induced: Vec<Option<usize>> = vec![None; src.size()];
        for x in 0..src.size() {
            let image = qt[f.map[x]];
            match induced[qs[x]] {
                Some(prev) if prev != image => return Err(GaloisError::NotNatural(i)),
                _ => induced[qs[x]] = Some(image),
            }
        }
        let mut hit = vec![false; dst.size()];
        for &y in &f.map {
            hit[y] = true;
        }
        if hit.iter().all(|&h| h) {
            // pushout of q_source along f: identify f(x), f(x') when q(x) = q(x')
            let mut uf = UnionFind::new(dst.size());
            let mut first: Vec<Option<usize>> = vec![None; src.size()];
            for x in 0..src.size() {
                match first[qs[x]] {
                    Some(y) => uf.union(y, f.map[x]),
                    None => first[qs[x]] = Some(f.map[x]),
                }
            }
            let pushout: Vec<usize> = (0..dst.size()).map(|y| uf.find(y)).collect();
            if !same_partition(&pushout, qt) {
                return Err(GaloisError::NotCocartesian(i));
            }
        }
    }

    for (i, c) in family.coproducts.iter().enumerate() {
        let (l, r, s) = match (objects.get(c.left), objects.get(c.right), objects.get(c.sum)) {
            (Some(l), Some(r), Some(s)) => (l, r, s),
            _ => return Err(GaloisError::InvalidFamily("coproduct refers to a missing object")),
        };
        if *s != GSet::coproduct(l, r) {
            return Err(GaloisError::InvalidFamily("coproduct object is not the disjoint union"));
        }
        let qs = &q[c.sum];
        let (left, right) = qs.split_at(l.size());
        if !same_partition(left, &q[c.left])
            || !same_partition(right, &q[c.right])
            || left.iter().any(|a| right.contains(a))
        {
            return Err(GaloisError::NotCoproductPreserving(i));
        }
    }

    let qg = &q[regular];
    let e = group.identity();
    let h: Subgroup = (0..group.order()).filter(|&g| qg[g] == qg[e]).collect();
    if !group.is_subgroup(&h) {
        return Err(GaloisError::NotSubgroup);
    }
    for (i, x) in objects.iter().enumerate() {
        let orbits = x.orbits(&h);
        let mut labels: Vec<usize> = Vec::with_capacity(orbits.len());
        for orbit in &orbits {
            let l = q[i][orbit[0]];
            if orbit.iter().any(|&p| q[i][p] != l) || labels.contains(&l) {
                return Err(GaloisError::NotInduced(i));
            }
            labels.push(l);
        }
    }
    Ok(h)
}

/// `G/N`, the projection, and the image of `H` in `G/N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientImage {
    pub quotient: FiniteGroup,
    pub projection: Vec<usize>,
    pub image: Subgroup,
}

/// Image of `H` in `G/N`, cross-checked against the subgroup recovered from
/// the fiber quotient `X → H\X` restricted to `G/N`-sets.
pub fn quotient_compatibility(group: &FiniteGroup, n: &[usize], h: &[usize]) -> Result<QuotientImage, GaloisError> {
    let h = group.subgroup(h)?;
    let (quotient, projection) = group.quotient(n)?;
    let mut image: Subgroup = h.iter().map(|&x| projection[x]).collect();
    image.sort_unstable();
    image.dedup();

    // H acting on the regular G/N-set through the projection
    let family = Family::regular(&quotient);
    let regular = &family.objects[0];
    let mut q = vec![usize::MAX; quotient.order()];
    for x in 0..quotient.order() {
        if q[x] == usize::MAX {
            for &g in &h {
                q[regular.act(projection[g], x)] = x;
            }
        }
    }
    let fq = FiberQuotient { maps: vec![q] };
    let recovered = recover_subgroup(&quotient, &family, &fq)?;
    if recovered != image {
        return Err(GaloisError::Inconsistent);
    }
    Ok(QuotientImage { quotient, projection, image })
}

/// Whether `g1` lies in the normalizer of `h`.
pub fn normalizer_check(group: &FiniteGroup, h: &[usize], g1: &[usize]) -> Result<bool, GaloisError> {
    let h = group.subgroup(h)?;
    let g1 = group.subgroup(g1)?;
    let norm = group.normalizer(&h);
    Ok(g1.iter().all(|x| norm.binary_search(x).is_ok()))
}
