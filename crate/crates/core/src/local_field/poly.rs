use alloc::vec::Vec;

use super::tower::{Closeness, FieldElement, FieldTower};
use super::LocalFieldError;
use crate::numeric::Rat;

/// A monic polynomial over a [`FieldTower`], coefficients in ascending degree.
#[derive(Debug, Clone)]
pub struct ValPoly {
    coeffs: Vec<FieldElement>,
}

impl ValPoly {
    pub fn new(tower: &FieldTower, coeffs: Vec<FieldElement>) -> Result<Self, LocalFieldError> {
        if coeffs.len() < 2 {
            return Err(LocalFieldError::InvalidTower("polynomial must have degree >= 1".into()));
        }
        if coeffs.iter().any(|c| c.coords().len() != tower.degree()) {
            return Err(LocalFieldError::DimensionMismatch);
        }
        let lead = coeffs.last().expect("nonempty");
        if tower.compare(lead, &tower.one()) != Closeness::Equal {
            return Err(LocalFieldError::NotMonic);
        }
        Ok(ValPoly { coeffs })
    }

    /// Monic polynomial with `p`-integral rational coefficients.
    pub fn from_rationals(tower: &FieldTower, coeffs: &[Rat]) -> Result<Self, LocalFieldError> {
        let cs = coeffs.iter().map(|c| tower.from_rat(c)).collect::<Result<Vec<_>, _>>()?;
        Self::new(tower, cs)
    }

    /// `Π (T - a)` over the given roots.
    pub fn from_roots(tower: &FieldTower, roots: &[FieldElement]) -> Result<Self, LocalFieldError> {
        let mut coeffs = alloc::vec![tower.one()];
        for a in roots {
            // multiply by (T - a)
            let mut next = alloc::vec![tower.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = tower.add(&next[i + 1], c);
                next[i] = tower.sub(&next[i], &tower.mul(c, a));
            }
            coeffs = next;
        }
        Self::new(tower, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_exact)
    }

    pub fn eval(&self, tower: &FieldTower, x: &FieldElement) -> FieldElement {
        eval(tower, &self.coeffs, x)
    }

    /// Coefficients of the derivative (not monic in general).
    pub fn derivative(&self, tower: &FieldTower) -> Vec<FieldElement> {
        derivative(tower, &self.coeffs)
    }

    /// `P(T + a)`.
    pub fn taylor_shift(&self, tower: &FieldTower, a: &FieldElement) -> ValPoly {
        ValPoly { coeffs: taylor_shift(tower, &self.coeffs, a) }
    }
}

pub(crate) fn eval(tower: &FieldTower, coeffs: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = tower.zero();
    for c in coeffs.iter().rev() {
        acc = tower.add(&tower.mul(&acc, x), c);
    }
    acc
}

pub(crate) fn derivative(tower: &FieldTower, coeffs: &[FieldElement]) -> Vec<FieldElement> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| tower.mul(&tower.from_int(i as i64), c)).collect()
}

/// Coefficients of `Q(T + a)` by repeated synthetic division.
pub(crate) fn taylor_shift(tower: &FieldTower, coeffs: &[FieldElement], a: &FieldElement) -> Vec<FieldElement> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = tower.mul(&c[j + 1], a);
            c[j] = tower.add(&c[j], &t);
        }
    }
    c
}

/// Coefficients of `Q(c U)`.
pub(crate) fn scale_variable(tower: &FieldTower, coeffs: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    let mut pow = tower.one();
    let mut out = Vec::with_capacity(coeffs.len());
    for q in coeffs {
        out.push(tower.mul(q, &pow));
        pow = tower.mul(&pow, c);
    }
    out
}
