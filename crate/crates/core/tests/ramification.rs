use proptest::prelude::*;
use ramify_core::herbrand::{break_conductor, herbrand_phi};
use ramify_core::numeric::{rat, rat_int, ExtRat, Rat};
use ramify_core::ramification::{
    break_structure, classify, dilatation_chain, level_order, level_surjection, partition_at, Class, Mode,
    RootDiffMatrix,
};

// roots as distinct digit strings; v(a_i - a_j) is the level of the first differing digit
fn matrix() -> impl Strategy<Value = RootDiffMatrix> {
    (2usize..4, prop::collection::vec((0i64..6, 1i64..4), 4)).prop_flat_map(|(width, steps)| {
        prop::collection::vec(prop::collection::vec(0..width, 4), 2..9).prop_map(move |mut digits| {
            digits.sort();
            digits.dedup();
            let mut levels = Vec::new();
            let mut acc = rat_int(0);
            for &(n, d) in &steps {
                levels.push(acc.clone());
                acc += rat(n + 1, d);
            }
            let n = digits.len();
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let k = (0..4).find(|&k| digits[i][k] != digits[j][k]).unwrap();
                    pairs.push((i, j, ExtRat::Finite(levels[k].clone())));
                }
            }
            RootDiffMatrix::from_pairs(n, &pairs).unwrap()
        })
    })
}

fn levels() -> impl Strategy<Value = Vec<(Rat, Mode)>> {
    prop::collection::vec(((0i64..120, 1i64..6), any::<bool>()), 1..8).prop_map(|v| {
        v.into_iter().map(|((n, d), open)| (rat(n, d), if open { Mode::Open } else { Mode::Closed })).collect()
    })
}

proptest! {
    #[test]
    fn higher_levels_refine_lower_ones(m in matrix(), mut ls in levels()) {
        prop_assume!(m.size() > 1);
        let phi = m.herbrand();
        ls.sort_by(|a, b| level_order((&ExtRat::Finite(a.0.clone()), a.1), (&ExtRat::Finite(b.0.clone()), b.1)));
        let parts: Vec<_> = ls
            .iter()
            .map(|(g, mode)| partition_at(&m, &ExtRat::Finite(g.clone()), *mode, &phi).unwrap())
            .collect();
        for w in parts.windows(2) {
            prop_assert!(w[1].refines(&w[0]));
        }
        for w in ls.windows(2) {
            let low = ExtRat::Finite(w[0].0.clone());
            let high = ExtRat::Finite(w[1].0.clone());
            let map = level_surjection(&m, &phi, (&low, w[0].1), (&high, w[1].1)).unwrap();
            // surjective onto the coarser blocks
            let mut hit = map.map.clone();
            hit.sort_unstable();
            hit.dedup();
            prop_assert_eq!(hit.len(), map.coarser.blocks().len());
        }
        let top = partition_at(&m, &ExtRat::Infinity, Mode::Closed, &phi).unwrap();
        prop_assert!(top.is_discrete());
        let bottom = partition_at(&m, &ExtRat::zero(), Mode::Closed, &phi).unwrap();
        prop_assert_eq!(bottom.blocks().len(), 1);
    }

    #[test]
    fn partitions_are_constant_between_breaks(m in matrix(), ls in levels()) {
        let phi = m.herbrand();
        let bs = break_structure(&m).unwrap();
        for (g, _) in &ls {
            let closed = partition_at(&m, &ExtRat::Finite(g.clone()), Mode::Closed, &phi).unwrap();
            let open = partition_at(&m, &ExtRat::Finite(g.clone()), Mode::Open, &phi).unwrap();
            match bs.interval_of(g) {
                Some(i) => {
                    prop_assert_eq!(closed.blocks(), &bs.interval_partitions()[i][..]);
                    prop_assert_eq!(open.blocks(), closed.blocks());
                }
                None => {
                    // at a break the open side is the following interval
                    let next = bs.interval_starts().iter().position(|t| t == g).unwrap_or(0);
                    prop_assert_eq!(open.blocks(), &bs.interval_partitions()[next][..]);
                }
            }
        }
    }

    #[test]
    fn survivors_are_the_closed_ball_of_the_base(m in matrix(), base in 0usize..8, (n, d) in (1i64..120, 1i64..6)) {
        let base = base % m.size();
        prop_assume!(m.size() > 1);
        let data = m.slope_data(base);
        let phi = herbrand_phi(&data);
        let r = rat(n, d);
        let chain = dilatation_chain(&data, &r).unwrap();
        let part = partition_at(&m, &ExtRat::Finite(r.clone()), Mode::Closed, &phi).unwrap();
        prop_assert_eq!(&chain.survivors, &part.blocks()[part.block_of(base)]);
        prop_assert_eq!(ExtRat::Finite(chain.radius.clone()), phi.eval_psi(&ExtRat::Finite(r)).unwrap());
    }

    #[test]
    fn conductor_is_the_top_break(m in matrix()) {
        let bs = break_structure(&m).unwrap();
        let data = m.default_slope_data();
        // a Galois root set looks the same from every root
        if m.is_base_independent() {
            prop_assert_eq!(bs.max_break(), break_conductor(&data));
        }
        prop_assert!(bs.max_break() >= break_conductor(&data));
        let class = classify(&data);
        let all_zero = m.distinct_values().iter().all(|v| *v == rat_int(0));
        prop_assert_eq!(class == Class::Unramified, all_zero || break_conductor(&data) < rat_int(1));
        if all_zero {
            prop_assert_eq!(class, Class::Unramified);
        }
    }
}

#[test]
fn non_ultrametric_matrices_are_rejected() {
    let one = ExtRat::from_int(1);
    let two = ExtRat::from_int(2);
    let r = RootDiffMatrix::from_pairs(3, &[(0, 1, one.clone()), (1, 2, two.clone()), (0, 2, two)]);
    assert!(r.is_err());
    let ok = RootDiffMatrix::from_pairs(3, &[(0, 1, one.clone()), (1, 2, ExtRat::from_int(2)), (0, 2, one)]);
    assert!(ok.is_ok());
}

#[test]
fn levels_out_of_order_are_refused() {
    let m = RootDiffMatrix::from_pairs(2, &[(0, 1, ExtRat::from_int(1))]).unwrap();
    let phi = m.herbrand();
    let a = ExtRat::from_int(1);
    assert!(level_surjection(&m, &phi, (&a, Mode::Open), (&a, Mode::Closed)).is_err());
    assert!(level_surjection(&m, &phi, (&a, Mode::Closed), (&a, Mode::Open)).is_ok());
}
