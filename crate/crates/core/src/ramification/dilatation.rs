use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::RamificationError;
use crate::herbrand::{herbrand_phi, segment_slope, SlopeData};
use crate::numeric::{ExtRat, Rat};

/// One blow-up step: divide by `t_i` with `v(t_i) = center`, multiplicity `exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilatationStep {
    /// 1-based index `i` of the slope reached by this step; the final step
    /// carries the index `k` of the first slope at or above the radius.
    pub index: usize,
    pub center: Rat,
    pub exponent: Rat,
}

/// The iterated dilatation reaching level `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilatationChain {
    pub level: Rat,
    /// `s = ψ(r)`, the valuation of the final coordinate scaling `T' = T_1 / t`.
    pub radius: Rat,
    /// Steps with nonzero exponent, in order.
    pub steps: Vec<DilatationStep>,
    /// Smallest `k` with `s <= s_k`.
    pub first_survivor: usize,
    /// Root indices surviving the last step, ascending.
    pub survivors: Vec<usize>,
    /// Valuations of the residual roots `b_i / t`, in slope order; the base root gives ∞.
    pub residual_root_valuations: Vec<ExtRat>,
    /// Newton polygon values of the residual polynomial at `j = 0..=m`:
    /// a lower bound for `v` of its `T'^{m-j}` coefficient, exact at vertices.
    pub residual_newton_values: Vec<ExtRat>,
}

impl DilatationChain {
    pub fn total_exponent(&self) -> Rat {
        self.steps.iter().map(|s| &s.exponent).sum()
    }
}

pub fn dilatation_chain(slopes: &SlopeData, r: &Rat) -> Result<DilatationChain, RamificationError> {
    if !r.is_positive() {
        return Err(RamificationError::Domain);
    }
    let phi = herbrand_phi(slopes);
    let s = phi.psi().eval_rat(r).map_err(|_| RamificationError::Domain)?;
    let n = slopes.degree();
    let k = (1..=n).find(|&k| slopes.s(k) >= s).expect("s_n is infinite");
    let sk = |i: usize| slopes.s(i).into_finite().expect("index below n");
    let mut steps = Vec::new();
    for i in 1..k {
        let exponent = segment_slope(slopes, i) * (sk(i) - sk(i - 1));
        if !exponent.is_zero() {
            steps.push(DilatationStep { index: i, center: sk(i), exponent });
        }
    }
    let last = segment_slope(slopes, k) * (&s - sk(k - 1));
    // a single root is its own section; nothing to blow up
    if n > 1 && !last.is_zero() {
        steps.push(DilatationStep { index: k, center: s.clone(), exponent: last });
    }

    let mut survivors: Vec<usize> = slopes.roots()[k - 1..].to_vec();
    survivors.push(slopes.base_root_index());
    survivors.sort_unstable();

    let mut residual_root_valuations: Vec<ExtRat> =
        slopes.slopes()[k - 1..].iter().map(|si| ExtRat::Finite(si - &s)).collect();
    residual_root_valuations.push(ExtRat::Infinity);
    // sum of the j smallest root valuations
    let mut residual_newton_values = Vec::with_capacity(residual_root_valuations.len() + 1);
    let mut acc = ExtRat::zero();
    residual_newton_values.push(acc.clone());
    for v in &residual_root_valuations {
        acc = &acc + v;
        residual_newton_values.push(acc.clone());
    }

    Ok(DilatationChain {
        level: r.clone(),
        radius: s,
        steps,
        first_survivor: k,
        survivors,
        residual_root_valuations,
        residual_newton_values,
    })
}

/// Valuations of `a_i / a` after the substitution `T' = T / a` with `v(a) = divisor`.
pub fn affine_dilatation(generators: &[ExtRat], divisor: &ExtRat) -> Result<Vec<ExtRat>, RamificationError> {
    let d = divisor.finite().ok_or(RamificationError::Domain)?;
    generators
        .iter()
        .enumerate()
        .map(|(i, g)| if g < divisor { Err(RamificationError::NotDominated(i)) } else { Ok(g.sub_finite(d)) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use alloc::vec;
    use num_bigint::BigInt;

    // (n - i + 1)(s_i - s_{i-1}) for every segment of φ below s
    fn segment_exponents(slopes: &SlopeData, s: &Rat) -> Vec<(usize, Rat)> {
        let mut out = Vec::new();
        let mut prev = Rat::zero();
        for k in 1..=slopes.degree() {
            let top = match slopes.s(k) {
                ExtRat::Finite(v) if v < *s => v,
                _ => s.clone(),
            };
            out.push((k, Rat::from_integer(BigInt::from(slopes.degree() + 1 - k)) * (&top - &prev)));
            if top == *s {
                break;
            }
            prev = top;
        }
        out
    }

    #[test]
    fn quadratic_single_step() {
        let s = SlopeData::new(vec![rat_int(1)]).unwrap();
        let c = dilatation_chain(&s, &rat_int(2)).unwrap();
        assert_eq!(c.radius, rat_int(1));
        assert_eq!(c.steps, vec![DilatationStep { index: 1, center: rat_int(1), exponent: rat_int(2) }]);
        assert_eq!(c.survivors, vec![0, 1]);
        assert_eq!(c.residual_root_valuations, vec![ExtRat::zero(), ExtRat::Infinity]);
    }

    #[test]
    fn trivial_extension_has_empty_chain() {
        let c = dilatation_chain(&SlopeData::default(), &rat_int(5)).unwrap();
        assert!(c.steps.is_empty());
        assert_eq!(c.first_survivor, 1);
        assert_eq!(c.survivors, vec![0]);
        assert_eq!(dilatation_chain(&SlopeData::default(), &rat_int(0)), Err(RamificationError::Domain));
    }

    #[test]
    fn degree_four_chain_telescopes() {
        let s = SlopeData::new(vec![rat(1, 2), rat(1, 2), rat_int(1)]).unwrap();
        let c = dilatation_chain(&s, &rat_int(3)).unwrap();
        let exps: Vec<Rat> = c.steps.iter().map(|s| s.exponent.clone()).collect();
        assert_eq!(exps, vec![rat_int(2), rat_int(1)]);
        assert_eq!(c.total_exponent(), rat_int(3));
        assert_eq!(c.survivors.len(), 2);
        let reference: Vec<Rat> =
            segment_exponents(&s, &c.radius).into_iter().map(|x| x.1).filter(|e| !e.is_zero()).collect();
        assert_eq!(reference, exps);
    }

    #[test]
    fn affine_subtracts_divisor() {
        let g = [ExtRat::new(3, 2), ExtRat::from_int(2)];
        assert_eq!(affine_dilatation(&g, &ExtRat::from_int(1)).unwrap(), vec![ExtRat::new(1, 2), ExtRat::from_int(1)]);
        assert_eq!(
            affine_dilatation(&[ExtRat::from_int(1), ExtRat::from_int(1)], &ExtRat::from_int(1)).unwrap(),
            vec![ExtRat::zero(), ExtRat::zero()]
        );
        assert_eq!(affine_dilatation(&[ExtRat::from_int(1)], &ExtRat::new(1, 2)).unwrap(), vec![ExtRat::new(1, 2)]);
        assert_eq!(
            affine_dilatation(&[ExtRat::new(1, 3)], &ExtRat::new(1, 2)),
            Err(RamificationError::NotDominated(0))
        );
    }
}
