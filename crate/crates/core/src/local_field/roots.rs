use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::{derivative, eval, scale_variable, taylor_shift, ValPoly};
use super::tower::{Closeness, FieldElement, FieldTower};
use super::LocalFieldError;
use crate::numeric::{ExtRat, Rat};
use crate::ramification::RootDiffMatrix;

/// Bounds on the residue-class search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootConfig {
    /// Largest residue field that will be enumerated.
    pub residue_limit: u128,
    /// Maximum number of uniformizer digits fixed before Newton takes over.
    pub max_depth: u32,
    pub max_newton_steps: u32,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { residue_limit: 1 << 12, max_depth: 64, max_newton_steps: 64 }
    }
}

struct Branch {
    center: FieldElement,
    depth: u32,
    /// `P(center + π^depth U) / π^m`, primitive.
    poly: Vec<FieldElement>,
}

/// All roots of `poly` in `tower`, each certified to the tower's precision
/// cap (or exact when the iteration lands on a root exactly).
///
/// Residue classes are refined digit by digit until a class carries a simple
/// root of the reduced polynomial, after which Newton iteration finishes the
/// lift. Roots are returned in [`FieldTower::digit_order`].
pub fn find_roots(
    tower: &FieldTower,
    poly: &ValPoly,
    config: &RootConfig,
) -> Result<Vec<FieldElement>, LocalFieldError> {
    if poly.coeffs().iter().any(|c| tower.valuation_lower_bound(c).is_negative()) {
        return Err(LocalFieldError::NonIntegral);
    }
    let reps = tower.residue_representatives(config.residue_limit)?;
    let pi = tower.uniformizer();
    let e = tower.ramification_index() as i64;
    let cap = ExtRat::from_int(i64::from(tower.precision()));

    let mut roots = Vec::new();
    let mut stack = vec![Branch { center: tower.zero(), depth: 0, poly: poly.coeffs().to_vec() }];
    while let Some(branch) = stack.pop() {
        for r in &reps {
            let shifted = taylor_shift(tower, &branch.poly, r);
            let Some(mu) = shifted.iter().position(|d| is_unit(tower, d)) else {
                continue;
            };
            match mu {
                0 => {}
                1 => roots.push(newton_lift(tower, &branch, r, &pi, e, &cap, config)?),
                _ => {
                    let depth = branch.depth + 1;
                    if depth > config.max_depth || ExtRat::new(i64::from(depth), e) >= cap {
                        return Err(LocalFieldError::PrecisionLimited { horizon: cap });
                    }
                    let scaled = scale_variable(tower, &shifted, &pi);
                    let content = scaled
                        .iter()
                        .map(|c| tower.valuation_lower_bound(c))
                        .min()
                        .expect("nonempty")
                        .into_finite()
                        .ok_or(LocalFieldError::PrecisionLimited { horizon: cap.clone() })?;
                    let m = (content * Rat::from_integer(BigInt::from(e))).to_integer().to_u32().unwrap_or(0);
                    let pim = tower.pow(&pi, u64::from(m));
                    let child = scaled.iter().map(|c| tower.div(c, &pim)).collect::<Result<Vec<_>, _>>()?;
                    let step = tower.mul(&tower.pow(&pi, u64::from(branch.depth)), r);
                    stack.push(Branch { center: tower.add(&branch.center, &step), depth, poly: child });
                }
            }
        }
    }
    if roots.len() < poly.degree() {
        return Err(LocalFieldError::NotSplit { found: roots.len(), degree: poly.degree() });
    }
    roots.sort_by(|a, b| tower.digit_order(a, b));
    Ok(roots)
}

fn is_unit(tower: &FieldTower, x: &FieldElement) -> bool {
    tower.valuation_lower_bound(x) == ExtRat::zero()
}

fn newton_lift(
    tower: &FieldTower,
    branch: &Branch,
    start: &FieldElement,
    pi: &FieldElement,
    e: i64,
    cap: &ExtRat,
    config: &RootConfig,
) -> Result<FieldElement, LocalFieldError> {
    let offset = ExtRat::new(i64::from(branch.depth), e);
    let scale = tower.pow(pi, u64::from(branch.depth));
    let dpoly = derivative(tower, &branch.poly);
    let mut u = start.clone();
    for _ in 0..config.max_newton_steps {
        let value = eval(tower, &branch.poly, &u);
        let reach = &offset + &tower.valuation_lower_bound(&value);
        if reach >= *cap {
            let root = tower.add(&branch.center, &tower.mul(&scale, &u));
            let exact_zero = value.is_exact() && value.coords().iter().all(Zero::is_zero);
            return if exact_zero && root.is_exact() { Ok(root) } else { tower.truncate(&root, tower.precision()) };
        }
        let slope = eval(tower, &dpoly, &u);
        if !is_unit(tower, &slope) {
            return Err(LocalFieldError::PrecisionLimited { horizon: cap.clone() });
        }
        let next = tower.sub(&u, &tower.div(&value, &slope)?);
        let next = tower.truncate(&next, tower.precision())?;
        // keep iterating on the representative itself
        u = tower.element(next.coords().to_vec(), ExtRat::Infinity)?;
    }
    Err(LocalFieldError::PrecisionLimited { horizon: cap.clone() })
}

/// The matrix of certified valuations `v(a_i - a_j)`.
pub fn root_diff_matrix(tower: &FieldTower, roots: &[FieldElement]) -> Result<RootDiffMatrix, LocalFieldError> {
    if roots.iter().any(|a| tower.valuation_lower_bound(a).is_negative()) {
        return Err(LocalFieldError::NonIntegral);
    }
    let n = roots.len();
    let mut entries = vec![vec![ExtRat::Infinity; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = match tower.compare(&roots[i], &roots[j]) {
                Closeness::Equal => return Err(LocalFieldError::RepeatedRoot),
                Closeness::Apart(v) => v,
                Closeness::Indistinguishable { horizon } => return Err(LocalFieldError::PrecisionLimited { horizon }),
            };
            entries[i][j] = v.clone();
            entries[j][i] = v;
        }
    }
    RootDiffMatrix::new(entries).map_err(|err| LocalFieldError::InvalidTower(alloc::format!("{err}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_field::StepKind;
    use crate::numeric::rat_int;

    fn tower(p: u64, n: u32, steps: &[(StepKind, &[i64])]) -> FieldTower {
        let steps: Vec<_> = steps.iter().map(|(k, c)| (*k, c.iter().map(|&x| rat_int(x)).collect())).collect();
        FieldTower::from_rational_steps(p, n, &steps).unwrap()
    }

    fn assert_roots(t: &FieldTower, p: &ValPoly, roots: &[FieldElement]) {
        for a in roots {
            let v = p.eval(t, a);
            assert!(t.valuation_lower_bound(&v) >= ExtRat::from_int(i64::from(t.precision())));
        }
    }

    #[test]
    fn linear_root() {
        let t = FieldTower::base(5, 8).unwrap();
        let p = ValPoly::from_rationals(&t, &[rat_int(-3), rat_int(1)]).unwrap();
        let roots = find_roots(&t, &p, &RootConfig::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(t.compare(&roots[0], &t.from_int(3)), Closeness::Equal);
        let m = root_diff_matrix(&t, &roots).unwrap();
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn gaussian_roots_over_q2() {
        let t = tower(2, 16, &[(StepKind::Eisenstein, &[2, 2, 1])]);
        let p = ValPoly::from_rationals(&t, &[rat_int(1), rat_int(0), rat_int(1)]).unwrap();
        let roots = find_roots(&t, &p, &RootConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert_roots(&t, &p, &roots);
        // independent check: 2i = (a - b) up to sign, valuation 1
        let m = root_diff_matrix(&t, &roots).unwrap();
        assert_eq!(m.get(0, 1), &ExtRat::from_int(1));
    }

    #[test]
    fn cube_roots_of_unity_in_unramified_quadratic() {
        let t = tower(2, 10, &[(StepKind::Unramified, &[1, 1, 1])]);
        let p = ValPoly::from_rationals(&t, &[rat_int(1), rat_int(1), rat_int(1)]).unwrap();
        let roots = find_roots(&t, &p, &RootConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert_roots(&t, &p, &roots);
        for a in &roots {
            assert_eq!(t.valuation(a).unwrap(), ExtRat::zero());
        }
        let m = root_diff_matrix(&t, &roots).unwrap();
        assert_eq!(m.get(0, 1), &ExtRat::zero());
    }

    #[test]
    fn not_split_in_base_field() {
        let t = FieldTower::base(2, 10).unwrap();
        let p = ValPoly::from_rationals(&t, &[rat_int(1), rat_int(0), rat_int(1)]).unwrap();
        assert_eq!(
            find_roots(&t, &p, &RootConfig::default()).unwrap_err(),
            LocalFieldError::NotSplit { found: 0, degree: 2 }
        );
    }

    #[test]
    fn eisenstein_cyclotomic_roots() {
        // ζ_3 - 1 satisfies T² + 3T + 3
        let t = tower(3, 12, &[(StepKind::Eisenstein, &[3, 3, 1])]);
        let p = ValPoly::from_rationals(&t, &[rat_int(3), rat_int(3), rat_int(1)]).unwrap();
        let roots = find_roots(&t, &p, &RootConfig::default()).unwrap();
        assert_roots(&t, &p, &roots);
        let m = root_diff_matrix(&t, &roots).unwrap();
        assert_eq!(m.get(0, 1), &ExtRat::new(1, 2));
    }

    #[test]
    fn order_is_stable_under_precision_change() {
        let lo = tower(2, 12, &[(StepKind::Eisenstein, &[2, 4, 6, 4, 1])]);
        let hi = lo.with_precision(24);
        let coeffs = [2, 4, 6, 4, 1].map(rat_int);
        let r_lo = find_roots(&lo, &ValPoly::from_rationals(&lo, &coeffs).unwrap(), &RootConfig::default()).unwrap();
        let r_hi = find_roots(&hi, &ValPoly::from_rationals(&hi, &coeffs).unwrap(), &RootConfig::default()).unwrap();
        let m_lo = root_diff_matrix(&lo, &r_lo).unwrap();
        let m_hi = root_diff_matrix(&hi, &r_hi).unwrap();
        assert_eq!(m_lo, m_hi);
        for (a, b) in r_lo.iter().zip(&r_hi) {
            let d = lo.sub(a, &lo.element(b.coords().to_vec(), b.radius().clone()).unwrap());
            assert!(lo.valuation_lower_bound(&d) >= ExtRat::from_int(12));
        }
    }
}
