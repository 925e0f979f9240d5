use crossint_core::conflict_graph;
use crossint_core::generators::*;
use crossint_core::{decompose, ell, is_t_intersecting, Rational, SetFamily};
use proptest::prelude::*;

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: usize, r: usize) -> usize {
    (0..r).map(|i| n - i).product()
}

#[test]
fn cardinalities() {
    for n in 0..=10 {
        assert_eq!(gen_powerset(n).unwrap().len(), 1 << n);
        for r in 0..=n {
            assert_eq!(gen_uniform(n, r).unwrap().len(), binom(n, r));
            if r == 0 {
                assert!(gen_permutations(r, n).is_err() && gen_partial_permutations(n, r).is_err());
            } else if falling(n, r) <= MEMBER_GUARD {
                assert_eq!(gen_permutations(r, n).unwrap().len(), falling(n, r), "r={r}, n={n}");
            } else {
                assert_eq!(gen_permutations(r, n).unwrap_err().code(), "E_GUARD");
            }
            if n <= 5 && r >= 1 {
                assert_eq!(gen_partial_permutations(n, r).unwrap().len(), binom(n, r) * falling(n, r));
            }
        }
    }
    for n in 1..=4 {
        for r in 1..=n {
            for m in 2..=3 {
                assert_eq!(gen_signed(n, r, m).unwrap().len(), binom(n, r) * m.pow(r as u32));
            }
        }
    }
    for p in 3..=4 {
        for t in 1..=2 {
            assert_eq!(gen_lines(p, t, None, None).unwrap().len(), p * p);
        }
    }
}

#[test]
fn katona_is_t_intersecting_and_largest() {
    for n in 1..=8 {
        for t in 1..=n {
            let k = gen_katona(n, t).unwrap();
            assert!(is_t_intersecting(&k, t), "n={n}, t={t}");
            if n <= 7 {
                assert_eq!(ell(&gen_powerset(n).unwrap(), t).unwrap().value, k.len(), "n={n}, t={t}");
            }
        }
    }
}

/// |a^{t,+}| + c|a^{t,-}| <= |b^{t,+}| + c|b^{t,-}| <= |K_{n,t}| with
/// b the embedded image of a and c = |K_{n,t}|/2^n, over every a ⊆ 2^[n].
#[test]
fn embedding_inequality_chain_is_exhaustive_for_small_n() {
    for n in 1..=4 {
        let ps = gen_powerset(n).unwrap();
        let signed = gen_signed(n, n, 2).unwrap();
        for t in 1..=n {
            let kat = gen_katona(n, t).unwrap().len();
            assert_eq!(ell(&signed, t).unwrap().value, kat, "l(S_n,n,2) differs from |K| at n={n}, t={t}");
            let c = Rational::ratio(kat, 1 << n);
            let score = |f: &SetFamily| {
                let d = decompose(f, t);
                Rational::ratio(d.plus.len(), 1) + c * Rational::ratio(d.minus.len(), 1)
            };
            for mask in 0u64..1 << ps.len() {
                let a = ps.subfamily_mask(mask);
                let b = embed_powerset_in_signed(&a).unwrap();
                assert_eq!(b.len(), a.len());
                assert!(b.is_subfamily_of(&signed));
                let (sa, sb) = (score(&a), score(&b));
                assert!(decompose(&a, t).plus.len() <= decompose(&b, t).plus.len());
                assert!(sa <= sb && sb <= Rational::ratio(kat, 1), "n={n}, t={t}, mask={mask:#x}");
            }
        }
    }
}

fn check_line_structure(lf: &LineFamily, p: usize, t: usize) -> Result<(), TestCaseError> {
    let f = &lf.family;
    prop_assert_eq!(f.len(), p * p);
    let g = conflict_graph(f, t);
    for i in 0..p {
        for j in 0..p {
            let a = lf.member[i][j];
            for i2 in 0..p {
                for j2 in 0..p {
                    let b = lf.member[i2][j2];
                    if a == b {
                        continue;
                    }
                    let common = f.get(a).intersection_len(&f.get(b));
                    if i == i2 {
                        prop_assert_eq!(common, 0);
                    } else {
                        prop_assert!(common >= t);
                    }
                    // p disjoint p-cliques: conflict exactly within a slope class.
                    prop_assert_eq!(g.adjacent(a, b), i == i2);
                }
            }
        }
    }
    Ok(())
}

fn distinct_rationals(p: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::btree_set((-6i64..=6, 1i64..=3), p).prop_filter_map("distinct values", move |s| {
        let mut v: Vec<Rational> = s.into_iter().map(|(a, b)| Rational::new(a, b)).collect();
        let before = v.len();
        v.sort();
        v.dedup();
        (v.len() == before).then_some(v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn line_structure_is_independent_of_parameters(
        slopes in distinct_rationals(3),
        intercepts in distinct_rationals(3),
        t in 1usize..=3,
    ) {
        let lf = gen_lines_detailed(3, t, Some(&slopes), Some(&intercepts)).unwrap();
        check_line_structure(&lf, 3, t)?;
        prop_assert_eq!(ell(&lf.family, t).unwrap().value, 3);
    }

    #[test]
    fn line_structure_p4(slopes in distinct_rationals(4), intercepts in distinct_rationals(4)) {
        let lf = gen_lines_detailed(4, 1, Some(&slopes), Some(&intercepts)).unwrap();
        check_line_structure(&lf, 4, 1)?;
    }
}

#[test]
fn default_lines_structure() {
    for p in 3..=4 {
        for t in 1..=2 {
            check_line_structure(&gen_lines_detailed(p, t, None, None).unwrap(), p, t).unwrap();
        }
    }
}
