use crossint_core::cross::*;
use crossint_core::generators::*;
use crossint_core::{is_cross_t_intersecting, Rational, SetFamily};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Every assignment of a subset of 1..k to every member, checked directly
/// against the definition of cross-t-intersection.
fn oracle(f: &SetFamily, t: usize, k: usize) -> (usize, BigUint) {
    let n = f.len();
    let per = 1usize << k;
    let m = f.members();
    let mut best = (0usize, BigUint::from(0u32));
    let mut labels = vec![0usize; n];
    for code in 0..per.pow(n as u32) {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = c % per;
            c /= per;
        }
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                // A in A_i, B in A_j with i != j must t-intersect
                let cross = (0..k).any(|i| (0..k).any(|j| i != j && labels[a] >> i & 1 == 1 && labels[b] >> j & 1 == 1));
                !cross || m[a].intersection_len(&m[b]) >= t
            })
        });
        if ok {
            let sizes: Vec<usize> = (0..k).map(|i| labels.iter().filter(|&&l| l >> i & 1 == 1).count()).collect();
            best.0 = best.0.max(sizes.iter().sum());
            let p: BigUint = sizes.iter().map(|&s| BigUint::from(s)).product();
            if p > best.1 {
                best.1 = p;
            }
        }
    }
    best
}

fn g() -> SearchGuards {
    SearchGuards::default()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn sum_examples() {
    let p3 = gen_powerset(3).unwrap();
    assert_eq!(max_sum_exact(&p3, 1, 2).unwrap().value, big(8));
    assert_eq!(max_sum_exact(&p3, 1, 3).unwrap().value, big(12));
    let e = gen_example2(4, 2, 1).unwrap();
    let r = max_sum_exact(&e, 1, 3).unwrap();
    assert_eq!(r.value, big(7));
    assert!(is_cross_t_intersecting(&r.families, 1));
}

#[test]
fn product_examples() {
    assert_eq!(max_product_exact(&gen_uniform(4, 2).unwrap(), 1, 2).unwrap().value, big(9));
    let lines = gen_lines(3, 1, None, None).unwrap();
    let r = max_product_exact(&lines, 1, 2).unwrap();
    assert_eq!(r.value, big(18));
    let mut sizes = r.sizes();
    sizes.sort();
    assert_eq!(sizes, vec![3, 6]);
    assert_eq!(max_product_exact(&gen_powerset(3).unwrap(), 1, 2).unwrap().value, big(16));
}

#[test]
fn lines_product_matches_oracle() {
    // 4^9 labelings
    let lines = gen_lines(3, 1, None, None).unwrap();
    assert_eq!(oracle(&lines, 1, 2), (9, big(18)));
}

#[test]
fn labeling_round_trip() {
    let f = SetFamily::from_lists(3, &[&[0], &[1], &[0, 1], &[0, 1, 2]]).unwrap();
    let tuple = vec![
        SetFamily::from_lists(3, &[&[0], &[0, 1]]).unwrap(),
        SetFamily::from_lists(3, &[&[0, 1], &[0, 1, 2]]).unwrap(),
    ];
    let lab = Labeling::encode(&f, &tuple).unwrap();
    assert!(lab.is_valid(&f, 1));
    assert_eq!(lab.decode(&f), tuple);
    assert_eq!(lab.to_lists(), vec![vec![1], vec![], vec![1, 2], vec![2]]);
    let bad = Labeling::new(2, vec![1, 2, 0, 0]).unwrap();
    assert!(!bad.is_valid(&f, 1));
}

#[test]
fn main_theorem_examples() {
    let r = verify_main_theorem(&gen_powerset(3).unwrap(), 1, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_product"), Some(&big(64).into()));
    let r = verify_main_theorem(&gen_lines(3, 1, None, None).unwrap(), 1, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_sum"), Some(&big(9).into()));
    assert_eq!(r.get("max_product"), Some(&big(27).into()));
    let r = verify_main_theorem(&gen_example1(3, 1).unwrap(), 1, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_sum"), Some(&big(6).into()));
    let err = verify_main_theorem(&gen_powerset(3).unwrap(), 1, 1).unwrap_err();
    assert_eq!(err.code(), "E_THEOREM_INAPPLICABLE");
}

#[test]
fn summax2_examples() {
    let r = verify_summax2(&gen_uniform(6, 2).unwrap(), 1, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_sum"), Some(&big(15).into()));
    assert!(verify_summax2(&gen_powerset(3).unwrap(), 1, 2).unwrap().passed);
    let r = verify_summax2(&gen_example2(4, 2, 1).unwrap(), 1, 3).unwrap();
    assert!(r.passed);
    assert_eq!(r.get("max_sum"), Some(&big(7).into()));
}

#[test]
fn summax3_examples() {
    let r = verify_summax3(&gen_powerset(4).unwrap(), 1, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("trivial_optimal"), Some(&true.into()));
    let r = verify_summax3(&gen_uniform(6, 2).unwrap(), 1, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("partition_form"), Some(&true.into()));
    let r = verify_summax3(&gen_powerset(3).unwrap(), 1, 4).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    let err = verify_summax3(&gen_example1(3, 1).unwrap(), 1, 2).unwrap_err();
    assert_eq!(err.code(), "E_THEOREM_INAPPLICABLE");
}

#[test]
fn summax4_examples() {
    let f = gen_example1(4, 1).unwrap();
    let r = verify_summax4(&f, 1, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("witness_sum"), Some(&6usize.into()));
    let r = verify_summax4(&f, 1, 3).unwrap();
    assert!(r.passed);
    let err = verify_summax4(&gen_example2(4, 2, 1).unwrap(), 1, 2).unwrap_err();
    assert!(err.to_string().contains("F^{t,+} is empty"));
}

#[test]
fn modstar_and_cover() {
    assert_eq!(modstar(6, 3), 3);
    assert_eq!(modstar(5, 3), 2);
    assert_eq!(modstar(3, 3), 3);
    for k in 1..=8 {
        for p in 1..=k {
            assert!(cyclic_cover_holds(k, p), "k={k} p={p}");
        }
    }
}

fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

#[test]
fn product_extension_examples() {
    assert!(product_extension_check(&rats(&[1, 1, 1]), &rats(&[2, 2, 2]), 2).unwrap().passed);
    let r = product_extension_check(&rats(&[3, 1, 1]), &rats(&[2, 2, 2]), 2).unwrap();
    assert!(r.passed);
    assert_eq!(r.get("prod_x"), Some(&"3".into()));
    let err = product_extension_check(&rats(&[3, 3, 1]), &rats(&[2, 2, 2]), 2).unwrap_err();
    assert_eq!(err.code(), "E_HYPOTHESIS");
}

#[test]
fn prodext_examples() {
    let r = verify_prodext(&gen_uniform(4, 2).unwrap(), 1, 2, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_product_k"), Some(&big(27).into()));
    let r = verify_prodext(&gen_powerset(3).unwrap(), 1, 2, 4).unwrap();
    assert!(r.passed);
    // 2^{k(n-1)} with n = 3, k = 4
    assert_eq!(r.get("max_product_k"), Some(&big(256).into()));
    let err = verify_prodext(&gen_lines(3, 1, None, None).unwrap(), 1, 2, 3).unwrap_err();
    assert_eq!(err.code(), "E_LEMMA_INAPPLICABLE");
}

#[test]
fn geomthm_examples() {
    let r = verify_geomthm(3, 1, 2).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_product"), Some(&big(18).into()));
    let r = verify_geomthm(3, 2, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("max_product"), Some(&big(27).into()));
    let r = verify_geomthm(4, 1, 3).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.get("witness_value"), Some(&big(128).into()));
}

#[test]
fn example_configurations() {
    let r = verify_example_sum(4, 2, 1, 3, &g()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    let r = verify_example_trivial(4, 2, 1, 2, &g()).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn guard_is_enforced() {
    let tight = SearchGuards {
        labeling_log2: 4,
        ..g()
    };
    let err = max_product_exact_with(&gen_powerset(3).unwrap(), 1, 2, &tight).unwrap_err();
    assert_eq!(err.code(), "E_GUARD");
}

#[test]
fn small_sets_are_not_repeated() {
    // {∅} alone: the empty set cannot be in two families for t = 1
    let f = SetFamily::from_lists(1, &[&[]]).unwrap();
    let r = max_sum_exact(&f, 1, 3).unwrap();
    assert_eq!(r.value, big(1));
    assert_eq!(max_product_exact(&f, 1, 2).unwrap().value, big(0));
}

fn family_strategy() -> impl Strategy<Value = (SetFamily, usize)> {
    (1usize..=4, 1usize..=2).prop_flat_map(|(ground, t)| {
        proptest::collection::btree_set(0u128..(1 << ground), 1..=6).prop_map(move |s| {
            let members = s.into_iter().map(crossint_core::MemberSet::from_bits).collect();
            (SetFamily::new(ground, members).unwrap(), t)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn searches_match_oracle((f, t) in family_strategy(), k in 1usize..=3) {
        prop_assume!(k * f.len() <= 15);
        let (osum, oprod) = oracle(&f, t, k);
        let s = max_sum_exact(&f, t, k).unwrap();
        let ls = labeling_search(&f, t, k, Objective::Sum, &g()).unwrap();
        let p = max_product_exact(&f, t, k).unwrap();
        prop_assert_eq!(s.value.clone(), big(osum as u64));
        prop_assert_eq!(ls.value.clone(), big(osum as u64));
        prop_assert_eq!(p.value.clone(), oprod);
        for r in [&s, &ls, &p] {
            prop_assert!(r.check(t).is_ok());
            prop_assert!(r.labeling.is_valid(&f, t));
        }
    }

    #[test]
    fn labeling_validity_is_cross_intersection((f, t) in family_strategy(), k in 1usize..=3, seed in any::<u64>()) {
        let labels: Vec<u64> = (0..f.len()).map(|i| (seed >> (3 * i)) & ((1 << k) - 1)).collect();
        let lab = Labeling::new(k, labels).unwrap();
        let tuple = lab.decode(&f);
        prop_assert_eq!(lab.is_valid(&f, t), is_cross_t_intersecting(&tuple, t));
        prop_assert_eq!(Labeling::encode(&f, &tuple).unwrap(), lab);
    }

    #[test]
    fn product_at_least_constant((f, t) in family_strategy(), k in 1usize..=3) {
        let p = max_product_exact(&f, t, k).unwrap();
        if let Some(l) = crossint_core::extremal::repeatable_largest(&f, t).unwrap() {
            prop_assert!(p.value >= BigUint::from(l.len()).pow(k as u32));
        }
    }

    #[test]
    fn all_optima_reach_the_optimum((f, t) in family_strategy(), k in 2usize..=3) {
        for obj in [Objective::Sum, Objective::Product] {
            let (v, optima) = optimal_labelings(&f, t, k, obj, &g()).unwrap();
            prop_assert!(!optima.is_empty() || v == big(0));
            for o in &optima {
                prop_assert!(o.is_valid(&f, t));
                prop_assert_eq!(obj.evaluate(&o.sizes()), v.clone());
            }
        }
    }
}

mod common;

fn family_strategy10() -> impl Strategy<Value = (SetFamily, usize)> {
    (1usize..=5, 1usize..=2).prop_flat_map(|(ground, t)| {
        proptest::collection::btree_set(0u128..(1 << ground), 1..=10).prop_map(move |s| {
            let members = s.into_iter().map(crossint_core::MemberSet::from_bits).collect();
            (SetFamily::new(ground, members).unwrap(), t)
        })
    })
}

#[test]
fn config_oracle_agrees_with_label_oracle() {
    for (f, t) in [
        (gen_powerset(3).unwrap(), 1),
        (gen_example1(3, 1).unwrap(), 1),
        (gen_uniform(4, 2).unwrap(), 1),
        (gen_powerset(2).unwrap(), 2),
    ] {
        for k in 1..=2 {
            let (s, p) = oracle(&f, t, k);
            let c = common::config_oracle(&f, t, k);
            assert_eq!((c.max_sum, c.max_product), (s, p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn config_oracle_matches_label_oracle((f, t) in family_strategy(), k in 1usize..=3) {
        prop_assume!(k * f.len() <= 15);
        let (s, p) = oracle(&f, t, k);
        let c = common::config_oracle(&f, t, k);
        prop_assert_eq!(c.max_sum, s);
        prop_assert_eq!(c.max_product, p);
    }

    #[test]
    fn searches_match_oracle_up_to_ten_members((f, t) in family_strategy10(), k in 1usize..=3) {
        let c = common::config_oracle(&f, t, k);
        let route = max_sum_exact(&f, t, k).unwrap();
        let search = labeling_search(&f, t, k, Objective::Sum, &g()).unwrap();
        let prod = max_product_exact(&f, t, k).unwrap();
        prop_assert_eq!(route.value.clone(), big(c.max_sum as u64));
        prop_assert_eq!(search.value.clone(), big(c.max_sum as u64));
        prop_assert_eq!(prod.value.clone(), c.max_product);
        for r in [&route, &search, &prod] {
            prop_assert!(r.check(t).is_ok());
        }
        let rep = verify_sum_route(&f, t, k, &g()).unwrap();
        prop_assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn labeling_round_trip_up_to_ten_members((f, t) in family_strategy10(), k in 1usize..=3, seed in any::<u64>()) {
        let labels: Vec<u64> = (0..f.len()).map(|i| (seed >> (3 * i)) & ((1 << k) - 1)).collect();
        let lab = Labeling::new(k, labels).unwrap();
        let tuple = lab.decode(&f);
        prop_assert_eq!(lab.is_valid(&f, t), is_cross_t_intersecting(&tuple, t));
        prop_assert_eq!(Labeling::encode(&f, &tuple).unwrap(), lab);
    }

    #[test]
    fn sum_and_product_thresholds((f, t) in family_strategy10(), extra in 0usize..=1) {
        prop_assume!(crossint_core::alpha(&f).unwrap() >= t);
        let kappa = common::beta_oracle(&f, t).recip();
        let l = common::ell_oracle(&f, t);
        let ck = kappa.ceil() as usize;
        let k = ck + extra;
        let c = common::config_oracle(&f, t, k);
        prop_assert_eq!(c.max_sum, k * l);
        prop_assert_eq!(c.max_product.clone(), BigUint::from(l).pow(k as u32));
        let rep = verify_main_theorem(&f, t, k).unwrap();
        prop_assert!(rep.passed, "{:?}", rep.failures);
        if ck >= 2 {
            let below = common::config_oracle(&f, t, ck - 1);
            prop_assert!(below.max_sum > (ck - 1) * l);
            let rep = verify_summax2(&f, t, ck - 1).unwrap();
            prop_assert!(rep.passed, "{:?}", rep.failures);
        }
    }
}
