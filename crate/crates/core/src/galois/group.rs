use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::GaloisError;

/// A finite group given by its full multiplication table.
///
/// `table[a][b]` is the index of `a * b`. Associativity, the identity and
/// inverses are verified on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

/// A subgroup as a sorted list of element indices.
pub type Subgroup = Vec<usize>;

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, GaloisError> {
        let n = table.len();
        if n == 0 {
            return Err(GaloisError::InvalidGroup("empty table".to_string()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GaloisError::InvalidGroup("table is not an n x n table of indices below n".to_string()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GaloisError::InvalidGroup("no identity element".to_string()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GaloisError::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GaloisError::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(GaloisError::InvalidGroup("label count differs from order".to_string()));
                }
                let distinct: BTreeSet<&String> = l.iter().collect();
                if distinct.len() != n {
                    return Err(GaloisError::InvalidGroup("labels are not distinct".to_string()));
                }
                l
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { table, identity, inverses, labels })
    }

    /// The group generated by permutations of `0..degree`. Elements are
    /// ordered by first discovery in a breadth-first closure, identity first.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>), GaloisError> {
        let degree = generators.first().map(Vec::len).unwrap_or(0);
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || core::mem::replace(&mut seen[x], true)) {
                return Err(GaloisError::InvalidGroup("generators are not permutations of one set".to_string()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(id, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in generators {
                // (g ∘ x)(k) = g[x[k]]
                let prod: Vec<usize> = elems[i].iter().map(|&k| g[k]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&b.iter().map(|&k| a[k]).collect::<Vec<_>>()]).collect())
            .collect();
        Ok((Self::new(table, None)?, elems))
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table, None).expect("cyclic table")
    }

    /// Dihedral group of order `2m`: `r^i` is `i`, `s r^i` is `m + i`.
    pub fn dihedral(m: usize) -> Self {
        let n = 2 * m;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (fa, ia) = (a / m, a % m);
                        let (fb, ib) = (b / m, b % m);
                        // s^fa r^ia s^fb r^ib = s^(fa+fb) r^(±ia + ib)
                        let i = if fb == 0 { (ia + ib) % m } else { (m - ia + ib) % m };
                        ((fa + fb) % 2) * m + i
                    })
                    .collect()
            })
            .collect();
        Self::new(table, None).expect("dihedral table")
    }

    /// Dicyclic group of order `4m` (`m = 2` gives the quaternion group):
    /// `a^i` is `i`, `x a^i` is `2m + i`, with `x^2 = a^m` and `x a x^-1 = a^-1`.
    pub fn dicyclic(m: usize) -> Self {
        let k = 2 * m;
        let n = 2 * k;
        let table = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| {
                        let (fp, ip) = (p / k, p % k);
                        let (fq, iq) = (q / k, q % k);
                        match (fp, fq) {
                            (0, 0) => (ip + iq) % k,
                            (0, 1) => k + (k - ip + iq) % k,
                            (1, 0) => k + (ip + iq) % k,
                            _ => (m + k - ip + iq) % k,
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(table, None).expect("dicyclic table")
    }

    pub fn alternating4() -> Self {
        let (g, _) = Self::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("permutations");
        g
    }

    /// `a × b` with `(i, j)` stored at `i * |b| + j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        Self::new(table, None).expect("product table")
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self, GaloisError> {
        Self::new(self.table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closed under products and inverses, containing the identity.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        if members.iter().any(|&x| x >= self.order()) || !members.contains(&self.identity) {
            return false;
        }
        members
            .iter()
            .all(|&a| members.contains(&self.inv(a)) && members.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    /// Validates and sorts a subgroup given as element indices.
    pub fn subgroup(&self, set: &[usize]) -> Result<Subgroup, GaloisError> {
        if !self.is_subgroup(set) {
            return Err(GaloisError::NotSubgroup);
        }
        let mut s: Vec<usize> = set.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        vec![self.identity]
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    /// Every subgroup, sorted by order then lexicographically.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Subgroup> = (0..self.order()).map(|a| self.closure(&[a])).collect();
        let mut all = cyclic.clone();
        let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let gens: Vec<usize> = h.iter().chain(c.iter()).copied().collect();
                let joined = self.closure(&gens);
                if all.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut out: Vec<Subgroup> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        (0..self.order()).all(|g| h.iter().all(|&x| h.contains(&self.conjugate(g, x))))
    }

    pub fn normalizer(&self, h: &[usize]) -> Subgroup {
        (0..self.order()).filter(|&g| h.iter().all(|&x| h.contains(&self.conjugate(g, x)))).collect()
    }

    /// Left cosets `gH`, each sorted, ordered by least element.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        self.cosets(h, |g, x| self.mul(g, x))
    }

    /// Right cosets `Hg`, each sorted, ordered by least element.
    pub fn right_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        self.cosets(h, |g, x| self.mul(x, g))
    }

    fn cosets(&self, h: &[usize], act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| act(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    /// `G/N` with cosets ordered by least element, plus the projection.
    pub fn quotient(&self, n: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GaloisError> {
        if !self.is_subgroup(n) {
            return Err(GaloisError::NotSubgroup);
        }
        if !self.is_normal(n) {
            return Err(GaloisError::NotNormal);
        }
        let cosets = self.left_cosets(n);
        let mut proj = vec![0; self.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                proj[x] = i;
            }
        }
        let table = cosets.iter().map(|a| cosets.iter().map(|b| proj[self.mul(a[0], b[0])]).collect()).collect();
        let labels = cosets.iter().map(|c| self.labels[c[0]].clone()).collect();
        Ok((FiniteGroup::new(table, Some(labels))?, proj))
    }
}

/// Groups of order at most 16, each with a short name.
pub fn catalog() -> Vec<(String, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    let x = FiniteGroup::direct_product;
    let mut out: Vec<(String, FiniteGroup)> = (1..=16).map(|n| (format!("C{n}"), c(n))).collect();
    for m in 3..=8 {
        out.push((format!("D{m}"), FiniteGroup::dihedral(m)));
    }
    out.push(("C2xC2".to_string(), x(&c(2), &c(2))));
    out.push(("C2xC2xC2".to_string(), x(&x(&c(2), &c(2)), &c(2))));
    out.push(("C2^4".to_string(), x(&x(&c(2), &c(2)), &x(&c(2), &c(2)))));
    out.push(("C4xC2".to_string(), x(&c(4), &c(2))));
    out.push(("C4xC4".to_string(), x(&c(4), &c(4))));
    out.push(("C8xC2".to_string(), x(&c(8), &c(2))));
    out.push(("C4xC2xC2".to_string(), x(&x(&c(4), &c(2)), &c(2))));
    out.push(("C6xC2".to_string(), x(&c(6), &c(2))));
    out.push(("C3xC3".to_string(), x(&c(3), &c(3))));
    out.push(("Q8".to_string(), FiniteGroup::dicyclic(2)));
    out.push(("Dic3".to_string(), FiniteGroup::dicyclic(3)));
    out.push(("Q16".to_string(), FiniteGroup::dicyclic(4)));
    out.push(("A4".to_string(), FiniteGroup::alternating4()));
    out.push(("D4xC2".to_string(), x(&FiniteGroup::dihedral(4), &c(2))));
    out.push(("Q8xC2".to_string(), x(&FiniteGroup::dicyclic(2), &c(2))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // number of subgroups, from the usual subgroup lattices
    #[test]
    fn subgroup_counts() {
        let cases = [
            (FiniteGroup::cyclic(12), 6),
            (FiniteGroup::dihedral(3), 6),
            (FiniteGroup::dihedral(4), 10),
            (FiniteGroup::dicyclic(2), 6),
            (FiniteGroup::alternating4(), 10),
            (FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)), 5),
        ];
        for (g, expected) in cases {
            let subs = g.subgroups();
            assert_eq!(subs.len(), expected);
            assert!(subs.iter().all(|h| g.is_subgroup(h) && g.order() % h.len() == 0));
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = FiniteGroup::dicyclic(2);
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        assert_eq!((0..8).filter(|&a| q.element_order(a) == 2).count(), 1);
        let dic3 = FiniteGroup::dicyclic(3);
        assert_eq!((0..12).filter(|&a| dic3.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn normalizer_in_s3() {
        let s3 = FiniteGroup::dihedral(3);
        let reflection = s3.closure(&[3]);
        let rotations = s3.closure(&[1]);
        assert!(s3.is_normal(&rotations));
        assert!(!s3.is_normal(&reflection));
        assert_eq!(s3.normalizer(&reflection), reflection);
        let (q, proj) = s3.quotient(&rotations).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[3], 1);
        assert_eq!(s3.quotient(&reflection).unwrap_err(), GaloisError::NotNormal);
    }

    #[test]
    fn catalog_orders() {
        for (name, g) in catalog() {
            assert!(g.order() <= 16, "{name}");
        }
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![0, 1]], None).is_err());
    }
}
