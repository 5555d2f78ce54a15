use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{min, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LocalFieldError;
use crate::numeric::{ExtRat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Unramified,
    Eisenstein,
}

#[derive(Debug, Clone)]
struct Step {
    kind: StepKind,
    /// Monic defining polynomial, ascending; each coefficient is an element of
    /// the previous level given by its coordinates there.
    poly: Vec<Vec<Rat>>,
}

impl Step {
    fn degree(&self) -> usize {
        self.poly.len() - 1
    }
}

/// An element of a [`FieldTower`]: an exact representative in the integral
/// basis plus a certified error radius (`Infinity` for exact data).
#[derive(Debug, Clone)]
pub struct FieldElement {
    coords: Vec<Rat>,
    radius: ExtRat,
}

impl FieldElement {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn radius(&self) -> &ExtRat {
        &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_infinite()
    }

    fn rep_is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// How two elements relate at the available precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closeness {
    /// Both exact and identical.
    Equal,
    /// Certified valuation of the difference.
    Apart(ExtRat),
    /// The difference is zero below `horizon`; no decision is possible.
    Indistinguishable { horizon: ExtRat },
}

/// `Q_p` followed by a chain of unramified and Eisenstein steps.
///
/// Elements live at the top level. Each level's basis is the power basis of
/// its generator over the previous level, which is an integral basis under
/// the step conditions checked at construction; the flat coordinate layout
/// nests level `k - 1` coordinates inside each power of the level-`k`
/// generator.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: BigInt,
    precision: u32,
    steps: Vec<Step>,
    /// `dims[k]` is the degree of level `k` over `Q_p`.
    dims: Vec<usize>,
    /// Valuation of a uniformizer of level `k`, i.e. `1 / e_k`.
    unif_vals: Vec<Rat>,
}

/// Residue fields larger than this are never enumerated during validation.
const VALIDATION_RESIDUE_LIMIT: u128 = 1 << 16;

impl FieldTower {
    /// The bare field `Q_p` with absolute precision cap `precision`.
    pub fn base(p: u64, precision: u32) -> Result<Self, LocalFieldError> {
        if p < 2 || !is_prime(p) {
            return Err(LocalFieldError::InvalidTower(format!("{p} is not prime")));
        }
        if precision == 0 {
            return Err(LocalFieldError::InvalidTower("precision must be positive".to_string()));
        }
        Ok(FieldTower { p: BigInt::from(p), precision, steps: Vec::new(), dims: vec![1], unif_vals: vec![Rat::one()] })
    }

    /// Builds a tower whose step polynomials have rational coefficients
    /// (ascending degree, monic).
    pub fn from_rational_steps(
        p: u64,
        precision: u32,
        steps: &[(StepKind, Vec<Rat>)],
    ) -> Result<Self, LocalFieldError> {
        let mut builder = TowerBuilder::new(p, precision)?;
        for (kind, poly) in steps {
            let coeffs = poly.iter().map(|c| builder.current().from_rat(c)).collect::<Result<Vec<_>, _>>()?;
            builder = builder.step(*kind, coeffs)?;
        }
        Ok(builder.build())
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn prime_u64(&self) -> u64 {
        self.p.to_u64().expect("prime fits in u64")
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Same tower with a different precision cap.
    pub fn with_precision(&self, precision: u32) -> Self {
        FieldTower { precision: precision.max(1), ..self.clone() }
    }

    pub fn degree(&self) -> usize {
        *self.dims.last().expect("base level")
    }

    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn step_kind(&self, step: usize) -> StepKind {
        self.steps[step].kind
    }

    pub fn ramification_index(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Eisenstein).map(Step::degree).product()
    }

    pub fn residue_degree(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::Unramified).map(Step::degree).product()
    }

    /// Valuation of a uniformizer of the whole tower.
    pub fn uniformizer_valuation(&self) -> &Rat {
        self.unif_vals.last().expect("base level")
    }

    fn top(&self) -> usize {
        self.steps.len()
    }

    // ---- constructors -------------------------------------------------

    fn exact(&self, coords: Vec<Rat>) -> FieldElement {
        FieldElement { coords, radius: ExtRat::Infinity }
    }

    pub fn zero(&self) -> FieldElement {
        self.exact(vec![Rat::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat_unchecked(&Rat::one())
    }

    fn from_rat_unchecked(&self, r: &Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = r.clone();
        self.exact(coords)
    }

    /// Embeds a `p`-integral rational.
    pub fn from_rat(&self, r: &Rat) -> Result<FieldElement, LocalFieldError> {
        if vp_rat(&self.p, r).is_some_and(|v| v < 0) {
            return Err(LocalFieldError::NonIntegral);
        }
        Ok(self.from_rat_unchecked(r))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rat_unchecked(&Rat::from_integer(BigInt::from(n)))
    }

    /// An element from raw top-level coordinates and an error radius.
    pub fn element(&self, coords: Vec<Rat>, radius: ExtRat) -> Result<FieldElement, LocalFieldError> {
        if coords.len() != self.degree() {
            return Err(LocalFieldError::DimensionMismatch);
        }
        Ok(FieldElement { coords, radius })
    }

    /// Generator of step `step` (0-based), embedded at the top level.
    pub fn generator(&self, step: usize) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[self.dims[step]] = Rat::one();
        self.exact(coords)
    }

    /// A uniformizer: the generator of the last Eisenstein step, or `p`.
    pub fn uniformizer(&self) -> FieldElement {
        match self.steps.iter().rposition(|s| s.kind == StepKind::Eisenstein) {
            Some(i) => self.generator(i),
            None => self.from_int(self.prime_u64() as i64),
        }
    }

    // ---- ring operations ---------------------------------------------

    fn check(&self, x: &FieldElement) {
        debug_assert_eq!(x.coords.len(), self.degree(), "element from another tower");
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        FieldElement { coords, radius: min(a.radius.clone(), b.radius.clone()) }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        FieldElement { coords, radius: min(a.radius.clone(), b.radius.clone()) }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().map(|x| -x).collect(), radius: a.radius.clone() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coords = self.mul_level(self.top(), &a.coords, &b.coords);
        let radius = if a.is_exact() && b.is_exact() {
            ExtRat::Infinity
        } else {
            min(&a.radius + &self.valuation_lower_bound(b), &b.radius + &self.valuation_lower_bound(a))
        };
        FieldElement { coords, radius }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn mul_level(&self, level: usize, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if level == 0 {
            return vec![&a[0] * &b[0]];
        }
        let step = &self.steps[level - 1];
        let d = step.degree();
        let sub = self.dims[level - 1];
        let chunk = |v: &'_ [Rat], i: usize| -> Vec<Rat> { v[i * sub..(i + 1) * sub].to_vec() };
        let is_zero = |v: &[Rat]| v.iter().all(Zero::is_zero);
        let mut prod: Vec<Vec<Rat>> = vec![vec![Rat::zero(); sub]; 2 * d - 1];
        for i in 0..d {
            let ai = chunk(a, i);
            if is_zero(&ai) {
                continue;
            }
            for j in 0..d {
                let bj = chunk(b, j);
                if is_zero(&bj) {
                    continue;
                }
                let t = self.mul_level(level - 1, &ai, &bj);
                for (acc, x) in prod[i + j].iter_mut().zip(t) {
                    *acc += x;
                }
            }
        }
        // x^t = x^(t-d) * x^d and x^d = -Σ c_j x^j
        for t in (d..2 * d - 1).rev() {
            let lead = core::mem::replace(&mut prod[t], vec![Rat::zero(); sub]);
            if is_zero(&lead) {
                continue;
            }
            for (j, c) in step.poly[..d].iter().enumerate() {
                if is_zero(c) {
                    continue;
                }
                let t2 = self.mul_level(level - 1, &lead, c);
                for (acc, x) in prod[t - d + j].iter_mut().zip(t2) {
                    *acc -= x;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    /// Matrix of multiplication by `y` in the flat basis; column `i` is `y * e_i`.
    pub fn multiplication_matrix(&self, y: &FieldElement) -> Vec<Vec<Rat>> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::one();
            cols.push(self.mul_level(self.top(), &y.coords, &e));
        }
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// Exact quotient of representatives in the number field spanned by the
    /// tower's defining data.
    fn div_rep(&self, x: &[Rat], y: &FieldElement) -> Result<Vec<Rat>, LocalFieldError> {
        let m = self.multiplication_matrix(y);
        solve(m, x.to_vec()).ok_or(LocalFieldError::DivisionByZero)
    }

    /// `x / y`. The result is integral only when `v(x) >= v(y)`; radii follow
    /// first-order error propagation, so an approximate `y` must have a
    /// certified valuation.
    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement, LocalFieldError> {
        let coords = self.div_rep(&x.coords, y)?;
        let radius = if x.is_exact() && y.is_exact() {
            ExtRat::Infinity
        } else {
            let vy = self.valuation(y)?.into_finite().ok_or(LocalFieldError::DivisionByZero)?;
            let vx = self.valuation_lower_bound(x);
            min(x.radius.sub_finite(&vy), (&y.radius + &vx).sub_finite(&(&vy + &vy)))
        };
        Ok(FieldElement { coords, radius })
    }

    pub fn inverse(&self, y: &FieldElement) -> Result<FieldElement, LocalFieldError> {
        self.div(&self.one(), y)
    }

    /// Replaces each coordinate by its residue modulo `p^n`, capping the radius at `n`.
    pub fn truncate(&self, x: &FieldElement, n: u32) -> Result<FieldElement, LocalFieldError> {
        let modulus = self.p.pow(n);
        let coords = x
            .coords
            .iter()
            .map(|c| reduce_mod(c, &modulus).map(Rat::from_integer).ok_or(LocalFieldError::NonIntegral))
            .collect::<Result<Vec<_>, _>>()?;
        let cap = ExtRat::from_int(i64::from(n));
        Ok(FieldElement { coords, radius: min(x.radius.clone(), cap) })
    }

    /// Truncates an approximate element to the tower's precision cap; exact
    /// elements are returned unchanged.
    pub fn normalize(&self, x: &FieldElement) -> Result<FieldElement, LocalFieldError> {
        if x.is_exact() {
            Ok(x.clone())
        } else {
            self.truncate(x, self.precision)
        }
    }

    // ---- valuations ---------------------------------------------------

    /// Valuation of the representative itself, ignoring the radius.
    fn rep_valuation(&self, coords: &[Rat]) -> ExtRat {
        self.val_level(self.top(), coords)
    }

    fn val_level(&self, level: usize, a: &[Rat]) -> ExtRat {
        if level == 0 {
            return match vp_rat(&self.p, &a[0]) {
                Some(v) => ExtRat::from_int(v),
                None => ExtRat::Infinity,
            };
        }
        let step = &self.steps[level - 1];
        let sub = self.dims[level - 1];
        let mut best = ExtRat::Infinity;
        for j in 0..step.degree() {
            let v = self.val_level(level - 1, &a[j * sub..(j + 1) * sub]);
            let v = match step.kind {
                StepKind::Unramified => v,
                StepKind::Eisenstein => v + ExtRat::Finite(&self.unif_vals[level] * Rat::from_integer(BigInt::from(j))),
            };
            if v < best {
                best = v;
            }
        }
        best
    }

    /// Certified valuation, normalized so that `v(p) = 1`.
    pub fn valuation(&self, x: &FieldElement) -> Result<ExtRat, LocalFieldError> {
        let v = self.rep_valuation(&x.coords);
        if v < x.radius {
            Ok(v)
        } else if x.is_exact() {
            // exact zero
            Ok(ExtRat::Infinity)
        } else {
            Err(LocalFieldError::PrecisionLimited { horizon: x.radius.clone() })
        }
    }

    /// `min(v(representative), radius)`, a lower bound for the true valuation.
    pub fn valuation_lower_bound(&self, x: &FieldElement) -> ExtRat {
        min(self.rep_valuation(&x.coords), x.radius.clone())
    }

    pub fn compare(&self, a: &FieldElement, b: &FieldElement) -> Closeness {
        let d = self.sub(a, b);
        if d.is_exact() && d.rep_is_zero() {
            return Closeness::Equal;
        }
        match self.valuation(&d) {
            Ok(v) => Closeness::Apart(v),
            Err(_) => Closeness::Indistinguishable { horizon: d.radius },
        }
    }

    // ---- residue field -------------------------------------------------

    /// Flat positions spanned by the residue field (all Eisenstein exponents zero).
    fn residue_positions(&self, level: usize) -> Vec<usize> {
        if level == 0 {
            return vec![0];
        }
        let step = &self.steps[level - 1];
        let lower = self.residue_positions(level - 1);
        let reps = match step.kind {
            StepKind::Unramified => step.degree(),
            StepKind::Eisenstein => 1,
        };
        (0..reps).flat_map(|j| lower.iter().map(move |&q| j * self.dims[level - 1] + q)).collect()
    }

    pub fn residue_field_size(&self) -> u128 {
        (self.prime_u64() as u128).saturating_pow(self.residue_degree() as u32)
    }

    /// One representative per residue class, with coordinates in `0..p` on
    /// the residue positions; the zero class comes first.
    pub fn residue_representatives(&self, limit: u128) -> Result<Vec<FieldElement>, LocalFieldError> {
        let size = self.residue_field_size();
        if size > limit {
            return Err(LocalFieldError::ResidueFieldTooLarge { size, limit });
        }
        let p = self.prime_u64();
        let positions = self.residue_positions(self.top());
        let mut out = Vec::with_capacity(size as usize);
        let mut digits = vec![0u64; positions.len()];
        loop {
            let mut coords = vec![Rat::zero(); self.degree()];
            for (&pos, &d) in positions.iter().zip(&digits) {
                coords[pos] = Rat::from_integer(BigInt::from(d));
            }
            out.push(self.exact(coords));
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// Orders elements by the `p`-adic digit planes of their coordinates:
    /// plane 0 (coordinates mod `p`) first, then plane 1, and so on up to the
    /// precision cap. The result does not depend on the cap once the elements
    /// are separated below it.
    pub fn digit_order(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        let modulus = self.p.pow(self.precision);
        let to_ints = |x: &FieldElement| -> Vec<BigInt> {
            x.coords.iter().map(|c| reduce_mod(c, &modulus).unwrap_or_default()).collect()
        };
        let (mut xa, mut xb) = (to_ints(a), to_ints(b));
        for _ in 0..self.precision {
            for (ca, cb) in xa.iter_mut().zip(xb.iter_mut()) {
                let (qa, da) = ca.div_mod_floor(&self.p);
                let (qb, db) = cb.div_mod_floor(&self.p);
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                *ca = qa;
                *cb = qb;
            }
        }
        Ordering::Equal
    }

    fn check_residue_extension_is_field(&self) -> Result<(), LocalFieldError> {
        let reps = self.residue_representatives(VALIDATION_RESIDUE_LIMIT)?;
        let q = reps.len() as u64;
        let one = self.one();
        for r in reps.iter().skip(1) {
            // r^(q-1) computed mod p; p lies in the maximal ideal so residues survive
            let mut acc = one.clone();
            let mut base = r.clone();
            let mut e = q - 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.truncate(&self.mul(&acc, &base), 1)?;
                }
                e >>= 1;
                if e > 0 {
                    base = self.truncate(&self.mul(&base, &base), 1)?;
                }
            }
            let diff = self.sub(&acc, &one);
            let v = self.rep_valuation(&diff.coords);
            if !(v > Rat::zero()) {
                return Err(LocalFieldError::InvalidTower(
                    "unramified step does not reduce to an irreducible polynomial".to_string(),
                ));
            }
        }
        Ok(())
    }
}

/// Incremental construction of a [`FieldTower`], one validated step at a time.
#[derive(Debug, Clone)]
pub struct TowerBuilder {
    tower: FieldTower,
}

impl TowerBuilder {
    pub fn new(p: u64, precision: u32) -> Result<Self, LocalFieldError> {
        Ok(TowerBuilder { tower: FieldTower::base(p, precision)? })
    }

    /// The tower built so far; step coefficients are elements of it.
    pub fn current(&self) -> &FieldTower {
        &self.tower
    }

    pub fn unramified(self, poly: Vec<FieldElement>) -> Result<Self, LocalFieldError> {
        self.step(StepKind::Unramified, poly)
    }

    pub fn eisenstein(self, poly: Vec<FieldElement>) -> Result<Self, LocalFieldError> {
        self.step(StepKind::Eisenstein, poly)
    }

    pub fn step(mut self, kind: StepKind, poly: Vec<FieldElement>) -> Result<Self, LocalFieldError> {
        let t = &self.tower;
        if poly.len() < 2 {
            return Err(LocalFieldError::InvalidTower("step polynomial must have degree >= 1".to_string()));
        }
        if poly.iter().any(|c| !c.is_exact() || c.coords.len() != t.degree()) {
            return Err(LocalFieldError::InvalidTower("step coefficients must be exact elements".to_string()));
        }
        let lead = poly.last().expect("nonempty");
        if !matches!(t.compare(lead, &t.one()), Closeness::Equal) {
            return Err(LocalFieldError::NotMonic);
        }
        let vals: Vec<ExtRat> = poly.iter().map(|c| t.rep_valuation(&c.coords)).collect();
        if vals.iter().any(ExtRat::is_negative) {
            return Err(LocalFieldError::NonIntegral);
        }
        let d = poly.len() - 1;
        let prev_unif = t.uniformizer_valuation().clone();
        let new_unif = match kind {
            StepKind::Unramified => prev_unif.clone(),
            StepKind::Eisenstein => {
                if vals[0] != prev_unif || vals[1..d].iter().any(|v| *v < prev_unif) {
                    return Err(LocalFieldError::InvalidTower("step polynomial is not Eisenstein".to_string()));
                }
                &prev_unif / Rat::from_integer(BigInt::from(d))
            }
        };
        let step = Step { kind, poly: poly.into_iter().map(|c| c.coords).collect() };
        let prev_dim = t.degree();
        self.tower.steps.push(step);
        self.tower.dims.push(prev_dim * d);
        self.tower.unif_vals.push(new_unif);
        if kind == StepKind::Unramified {
            self.tower.check_residue_extension_is_field()?;
        }
        Ok(self)
    }

    pub fn build(self) -> FieldTower {
        self.tower
    }
}

// ---- integer helpers ----------------------------------------------------

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn vp_int(p: &BigInt, n: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a rational; `None` for zero.
pub(crate) fn vp_rat(p: &BigInt, r: &Rat) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(vp_int(p, r.numer()) - vp_int(p, r.denom()))
    }
}

/// Residue of `a/b` modulo `m` in `[0, m)`, if `b` is invertible mod `m`.
fn reduce_mod(r: &Rat, m: &BigInt) -> Option<BigInt> {
    let den = r.denom().mod_floor(m);
    let eg = den.extended_gcd(m);
    if !eg.gcd.is_one() {
        return if m.is_one() { Some(BigInt::zero()) } else { None };
    }
    Some((r.numer() * eg.x).mod_floor(m))
}

/// Solves `m z = rhs` over the rationals; `None` when singular.
fn solve(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn gaussian_2adic(precision: u32) -> FieldTower {
        // i = π + 1 with π² + 2π + 2 = 0
        FieldTower::from_rational_steps(
            2,
            precision,
            &[(StepKind::Eisenstein, vec![rat_int(2), rat_int(2), rat_int(1)])],
        )
        .unwrap()
    }

    #[test]
    fn normalized_valuations() {
        let q2 = FieldTower::base(2, 20).unwrap();
        assert_eq!(q2.valuation(&q2.from_int(2)).unwrap(), ExtRat::from_int(1));
        assert_eq!(q2.valuation(&q2.from_int(12)).unwrap(), ExtRat::from_int(2));
        assert_eq!(q2.valuation(&q2.zero()).unwrap(), ExtRat::Infinity);

        let sqrt2 = FieldTower::from_rational_steps(
            2,
            20,
            &[(StepKind::Eisenstein, vec![rat_int(-2), rat_int(0), rat_int(1)])],
        )
        .unwrap();
        assert_eq!(sqrt2.valuation(&sqrt2.generator(0)).unwrap(), ExtRat::new(1, 2));

        let t = gaussian_2adic(20);
        let i = t.add(&t.generator(0), &t.one());
        assert_eq!(t.valuation(&t.add(&t.mul(&i, &i), &t.one())).unwrap(), ExtRat::Infinity);
        let two_i = t.mul(&t.from_int(2), &i);
        assert_eq!(t.valuation(&two_i).unwrap(), ExtRat::from_int(1));
    }

    #[test]
    fn rejects_bad_steps() {
        let not_eis =
            FieldTower::from_rational_steps(2, 10, &[(StepKind::Eisenstein, vec![rat_int(4), rat_int(0), rat_int(1)])]);
        assert!(matches!(not_eis, Err(LocalFieldError::InvalidTower(_))));
        // T² + 1 ≡ (T + 1)² mod 2 is not irreducible
        let reducible =
            FieldTower::from_rational_steps(2, 10, &[(StepKind::Unramified, vec![rat_int(1), rat_int(0), rat_int(1)])]);
        assert!(matches!(reducible, Err(LocalFieldError::InvalidTower(_))));
        let non_monic =
            FieldTower::from_rational_steps(2, 10, &[(StepKind::Unramified, vec![rat_int(1), rat_int(1), rat_int(3)])]);
        assert_eq!(non_monic.unwrap_err(), LocalFieldError::NotMonic);
        assert!(FieldTower::base(4, 10).is_err());
        let q3 = FieldTower::base(3, 5).unwrap();
        assert_eq!(q3.from_rat(&rat(1, 3)).unwrap_err(), LocalFieldError::NonIntegral);
        assert!(q3.from_rat(&rat(1, 2)).is_ok());
    }

    #[test]
    fn unramified_quadratic_over_q2() {
        let t =
            FieldTower::from_rational_steps(2, 10, &[(StepKind::Unramified, vec![rat_int(1), rat_int(1), rat_int(1)])])
                .unwrap();
        assert_eq!(t.residue_field_size(), 4);
        assert_eq!(t.ramification_index(), 1);
        let w = t.generator(0);
        let w3 = t.pow(&w, 3);
        assert!(matches!(t.compare(&w3, &t.one()), Closeness::Equal));
        assert_eq!(t.residue_representatives(16).unwrap().len(), 4);
    }

    #[test]
    fn division_and_truncation() {
        let t = gaussian_2adic(12);
        let pi = t.uniformizer();
        let x = t.mul(&t.from_int(6), &pi);
        let q = t.div(&x, &pi).unwrap();
        assert!(matches!(t.compare(&q, &t.from_int(6)), Closeness::Equal));
        let third = t.from_rat(&rat(1, 3)).unwrap();
        let tr = t.truncate(&third, 12).unwrap();
        assert_eq!(tr.radius(), &ExtRat::from_int(12));
        let back = t.mul(&tr, &t.from_int(3));
        assert_eq!(t.compare(&back, &t.one()), Closeness::Indistinguishable { horizon: ExtRat::from_int(12) });
        assert!(matches!(t.valuation(&t.sub(&back, &t.one())), Err(LocalFieldError::PrecisionLimited { .. })));
    }

    #[test]
    fn mixed_towers_nest() {
        // unramified quadratic, then √(2ω) style Eisenstein step over it
        let b = TowerBuilder::new(2, 10).unwrap();
        let c = b.current().clone();
        let b = b.unramified(vec![c.one(), c.one(), c.one()]).unwrap();
        let c = b.current().clone();
        let two_omega = c.mul(&c.from_int(2), &c.generator(0));
        let b = b.eisenstein(vec![c.neg(&two_omega), c.zero(), c.one()]).unwrap();
        let t = b.build();
        assert_eq!(t.degree(), 4);
        assert_eq!(t.ramification_index(), 2);
        assert_eq!(t.residue_degree(), 2);
        let pi = t.generator(1);
        let sq = t.mul(&pi, &pi);
        let expected = t.mul(&t.from_int(2), &t.generator(0));
        assert!(matches!(t.compare(&sq, &expected), Closeness::Equal));
        assert_eq!(t.valuation(&pi).unwrap(), ExtRat::new(1, 2));
        assert_eq!(t.residue_representatives(100).unwrap().len(), 4);
    }
}
