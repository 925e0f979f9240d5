use std::collections::BTreeSet;

use crossint_core::symmetry::{
    brute_force_t_symmetric, is_t_symmetric_via_generators, verify_wz, GroundPermutation, SymmetryBasis,
};
use crossint_core::{beta, MemberSet, Rational, SetFamily};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = GroundPermutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| GroundPermutation::new(v).unwrap())
}

/// The union of the orbits of `seeds` under the group generated by `gens`.
fn closure(n: usize, seeds: &[u128], gens: &[GroundPermutation]) -> SetFamily {
    let mut seen: BTreeSet<u128> = seeds.iter().copied().collect();
    let mut queue: Vec<u128> = seen.iter().copied().collect();
    while let Some(b) = queue.pop() {
        for g in gens {
            let img = g.apply(&MemberSet::from_bits(b)).bits();
            if seen.insert(img) {
                queue.push(img);
            }
        }
    }
    SetFamily::new(n, seen.into_iter().map(MemberSet::from_bits).collect()).unwrap()
}

fn is_partition(orbits: &[Vec<usize>], n: usize) -> bool {
    let mut all: Vec<usize> = orbits.iter().flatten().copied().collect();
    all.sort();
    all == (0..n).collect::<Vec<_>>() && orbits.iter().all(|o| !o.is_empty())
}

fn instance() -> impl Strategy<Value = (SetFamily, Vec<GroundPermutation>, usize)> {
    (2usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(perm(n), 1..=2),
            proptest::collection::vec(0u128..(1 << n), 1..=2),
            1usize..=2,
        )
            .prop_map(move |(gens, seeds, t)| (closure(n, &seeds, &gens), gens, t))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn generator_method_is_sound((f, gens, t) in instance()) {
        prop_assume!(f.len() <= 10);
        let cert = is_t_symmetric_via_generators(&f, t, &gens).unwrap();
        let brute = brute_force_t_symmetric(&f, t).unwrap();
        prop_assert!(is_partition(&cert.orbits, f.len()));
        prop_assert!(is_partition(&brute.orbits, f.len()));
        prop_assert_eq!(cert.orbit_count, cert.orbits.len());
        // Generator orbits refine the full automorphism orbits.
        for o in &cert.orbits {
            prop_assert!(brute.orbits.iter().any(|b| o.iter().all(|x| b.contains(x))));
        }
        if cert.is_t_symmetric {
            prop_assert!(brute.is_t_symmetric);
        }
        if brute.is_t_symmetric {
            let rep = verify_wz(&f, t, SymmetryBasis::Certified(&brute)).unwrap();
            prop_assert!(rep.passed, "{:?}", rep.failures);
            let b = beta(&f, t).unwrap();
            prop_assert_eq!(b.beta, Rational::ratio(b.ell, f.len()));
        }
    }
}

#[test]
fn non_closed_generators_are_rejected() {
    let f = SetFamily::from_lists(3, &[&[0], &[0, 1]]).unwrap();
    let g = GroundPermutation::cycle(3, &[0, 1, 2]).unwrap();
    assert_eq!(is_t_symmetric_via_generators(&f, 1, &[g]).unwrap_err().code(), "E_NOT_CLOSED");
}
