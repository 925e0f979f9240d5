//! Independent oracles shared by integration tests. They work from the
//! definitions and share no search code with the library.
#![allow(dead_code)]

use crossint_core::{MemberSet, Rational, SetFamily};
use num_bigint::BigUint;

fn meets(a: &MemberSet, b: &MemberSet, t: usize) -> bool {
    a.intersection_len(b) >= t
}

/// l(F,t) by checking every subfamily (distinct members must t-intersect).
pub fn ell_oracle(f: &SetFamily, t: usize) -> usize {
    let m = f.members();
    let n = m.len();
    assert!(n <= 22);
    let ok: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| j == i || meets(&m[i], &m[j], t)).fold(0, |b, j| b | 1 << j))
        .collect();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || s & !ok[i] == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// β(F,t) as the minimum of β(F,t,A) over every A ⊆ F, where
/// β(F,t,A) = (l - |A^{t,+}|)/|A^{t,-}|, or l/|F| when A^{t,-} is empty.
pub fn beta_oracle(f: &SetFamily, t: usize) -> Rational {
    let m = f.members();
    let n = m.len();
    let l = ell_oracle(f, t);
    let ok: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| j == i || meets(&m[i], &m[j], t)).fold(0, |b, j| b | 1 << j))
        .collect();
    let mut best = Rational::ratio(l, n);
    for s in 1u64..1 << n {
        let plus = (0..n).filter(|&i| s >> i & 1 == 1 && s & !ok[i] == 0).count();
        let minus = s.count_ones() as usize - plus;
        if minus > 0 {
            let v = Rational::ratio(l - plus, minus);
            if v < best {
                best = v;
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigOracle {
    pub max_sum: usize,
    pub max_product: BigUint,
    /// Best values over configurations that are not k copies of one family.
    pub non_constant_sum: Option<usize>,
    pub non_constant_product: Option<BigUint>,
}

/// Maximum sum and product of sizes of k cross-t-intersecting subfamilies.
///
/// A member lying in two or more of the families must t-intersect every
/// placed member, itself included; moving it into all k families keeps the
/// tuple valid and does not lower either objective, so such members form a
/// set M placed everywhere. Every other placed member lies in one family;
/// members in different families must t-intersect, so conflicting members
/// share a family and whole conflict components are assigned to families.
/// Members compatible with all of M can always be added, so they all are.
pub fn config_oracle(f: &SetFamily, t: usize, k: usize) -> ConfigOracle {
    let m = f.members();
    let n = m.len();
    assert!(n <= 20 && k >= 1);
    if k == 1 {
        return ConfigOracle {
            max_sum: n,
            max_product: BigUint::from(n),
            non_constant_sum: None,
            non_constant_product: None,
        };
    }
    let ok: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| meets(&m[i], &m[j], t)).fold(0, |b, j| b | 1 << j))
        .collect();
    let mut res = ConfigOracle {
        max_sum: 0,
        max_product: BigUint::from(0u32),
        non_constant_sum: None,
        non_constant_product: None,
    };
    for shared in 0u64..1 << n {
        // Each shared member t-intersects itself and every other shared member.
        if (0..n).any(|i| shared >> i & 1 == 1 && shared & !ok[i] != 0) {
            continue;
        }
        let rest: Vec<usize> = (0..n)
            .filter(|&i| shared >> i & 1 == 0 && shared & !ok[i] == 0)
            .collect();
        let s = shared.count_ones() as usize;
        let comps = components(&rest, &ok);
        let sum = k * s + rest.len();
        let prod = best_split(&comps, k, s);
        if sum > res.max_sum {
            res.max_sum = sum;
        }
        if prod > res.max_product {
            res.max_product = prod.clone();
        }
        if !rest.is_empty() {
            if res.non_constant_sum.is_none_or(|v| sum > v) {
                res.non_constant_sum = Some(sum);
            }
            if res.non_constant_product.as_ref().is_none_or(|v| &prod > v) {
                res.non_constant_product = Some(prod);
            }
        }
    }
    res
}

/// Sizes of the connected components of the conflict graph on `vs`.
fn components(vs: &[usize], ok: &[u64]) -> Vec<usize> {
    let mut seen = vec![false; vs.len()];
    let mut sizes = Vec::new();
    for s in 0..vs.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(a) = stack.pop() {
            size += 1;
            for b in 0..vs.len() {
                if !seen[b] && ok[vs[a]] >> vs[b] & 1 == 0 {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// max over assignments of components to k families of Π (base + load_i).
fn best_split(comps: &[usize], k: usize, base: usize) -> BigUint {
    fn rec(i: usize, comps: &[usize], loads: &mut Vec<usize>, k: usize, base: usize, best: &mut BigUint) {
        if i == comps.len() {
            let mut all = loads.clone();
            all.resize(k, 0);
            let p: BigUint = all.iter().map(|&x| BigUint::from(base + x)).product();
            if p > *best {
                *best = p;
            }
            return;
        }
        // Families are interchangeable: a component opens at most one new family.
        for j in 0..loads.len() {
            loads[j] += comps[i];
            rec(i + 1, comps, loads, k, base, best);
            loads[j] -= comps[i];
        }
        if loads.len() < k {
            loads.push(comps[i]);
            rec(i + 1, comps, loads, k, base, best);
            loads.pop();
        }
    }
    let mut best = BigUint::from(0u32);
    rec(0, comps, &mut Vec::new(), k, base, &mut best);
    best
}

/// Σ_{i ≥ (n+t)/2} C(n,i) for n+t even, 2·Σ_{i ≥ (n+t-1)/2} C(n-1,i) for n+t odd.
pub fn katona_size(n: usize, t: usize) -> usize {
    let binom = |n: usize, r: usize| (0..r).fold(1usize, |a, i| a * (n - i) / (i + 1));
    if (n + t) % 2 == 0 {
        ((n + t) / 2..=n).map(|i| binom(n, i)).sum()
    } else {
        2 * ((n + t - 1) / 2..n).map(|i| binom(n - 1, i)).sum::<usize>()
    }
}
