use glr_core::generalized::f_sun_partitions;
use glr_core::hive::{
    build_linear_system, count_sun_hives, enumerate_sun_hives, lp_feasible_with, positivity, validate_sun_hive, Backend,
};
use glr_core::horn::{in_cone, RationalTuple, Variant};
use glr_core::partitions::{partitions_in_box, IntSequence, Partition};
use glr_core::quiver::{dim_si_sun, weight_sigma1, SunQuiver};
use num_rational::BigRational;
use proptest::prelude::*;

fn seqs(ps: &[Partition]) -> Vec<IntSequence> {
    ps.iter().map(IntSequence::from).collect()
}

fn arb_balanced(n: usize, m: usize, entries: u32) -> impl Strategy<Value = Vec<Partition>> {
    let shapes = partitions_in_box(n, entries);
    proptest::collection::vec(proptest::sample::select(shapes), m).prop_filter("balanced", |ps| {
        let odd: u64 = ps.iter().step_by(2).map(Partition::size).sum();
        let even: u64 = ps.iter().skip(1).step_by(2).map(Partition::size).sum();
        odd == even
    })
}

fn all_oracles(n: usize, ps: &[Partition]) {
    let m = ps.len();
    let ls = seqs(ps);
    let f = f_sun_partitions(ps);
    assert_eq!(count_sun_hives(&ls, n, m).unwrap(), f, "{ps:?}");
    let q = SunQuiver::new(n, m / 2).unwrap();
    assert_eq!(dim_si_sun(&q, &weight_sigma1(&ls, n).unwrap()).unwrap(), f, "{ps:?}");
    assert_eq!(positivity(&ls, n, m).unwrap(), f > 0, "{ps:?}");
    let t = RationalTuple::from_sequences(n, &ls).unwrap();
    assert_eq!(in_cone(&t, Variant::EqualOne).unwrap(), f > 0, "{ps:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracles_agree_n2_m6(ps in arb_balanced(2, 6, 2)) {
        all_oracles(2, &ps);
    }

    #[test]
    fn oracles_agree_n3_m4(ps in arb_balanced(3, 4, 2)) {
        all_oracles(3, &ps);
    }

    #[test]
    fn positivity_is_stretch_invariant(ps in arb_balanced(2, 6, 2), big_n in 2u32..=3) {
        let ls = seqs(&ps);
        let stretched: Vec<Partition> = ps.iter().map(|p| p.scaled(big_n)).collect();
        prop_assert_eq!(positivity(&ls, 2, 6).unwrap(), positivity(&seqs(&stretched), 2, 6).unwrap());
    }

    #[test]
    fn system_is_homogeneous(ps in arb_balanced(2, 4, 3)) {
        let s1 = build_linear_system(&seqs(&ps), 2, 4).unwrap();
        let doubled: Vec<Partition> = ps.iter().map(|p| p.scaled(2)).collect();
        let s2 = build_linear_system(&seqs(&doubled), 2, 4).unwrap();
        prop_assert_eq!(&s1.a, &s2.a);
        let two = BigRational::from_integer(2.into());
        prop_assert!(s1.b.iter().zip(&s2.b).all(|(x, y)| x * &two == *y));
    }

    #[test]
    fn variants_agree(ps in arb_balanced(2, 6, 3)) {
        let t = RationalTuple::from_sequences(2, &seqs(&ps)).unwrap();
        prop_assert_eq!(in_cone(&t, Variant::EqualOne).unwrap(), in_cone(&t, Variant::Nonzero).unwrap());
    }

    #[test]
    fn enumerated_hives_validate(ps in arb_balanced(2, 6, 2)) {
        let ls = seqs(&ps);
        let hives = enumerate_sun_hives(&ls, 2, 6).unwrap();
        prop_assert_eq!(hives.len() as u64, f_sun_partitions(&ps));
        for h in &hives {
            prop_assert!(validate_sun_hive(h, &ls).unwrap());
        }
    }
}

#[test]
fn backends_agree_on_sun_systems() {
    for n in 1..=2 {
        let shapes = partitions_in_box(n, 1);
        for a in &shapes {
            for b in &shapes {
                for c in &shapes {
                    for d in &shapes {
                        let ps = [a.clone(), b.clone(), c.clone(), d.clone()];
                        let s = build_linear_system(&seqs(&ps), n, 4).unwrap();
                        let fm = lp_feasible_with(&s, Backend::FourierMotzkin);
                        assert_eq!(fm, lp_feasible_with(&s, Backend::Simplex), "{ps:?}");
                        assert_eq!(fm, f_sun_partitions(&ps) > 0, "{ps:?}");
                    }
                }
            }
        }
    }
}
