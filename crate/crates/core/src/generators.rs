//! Concrete families. Labelled universes (pairs) are flattened to integers by
//! fixed formulas, recorded as element labels in the family metadata.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{FamilyMeta, MemberSet, SetFamily, MAX_GROUND};
use crate::rational::Rational;

/// Maximum number of members any generator will emit.
pub const MEMBER_GUARD: usize = 1 << 16;

fn meta(generator: &str, params: &[(&str, Value)]) -> FamilyMeta {
    FamilyMeta {
        generator: Some(generator.to_string()),
        params: params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect::<BTreeMap<_, _>>(),
        labels: None,
        groups: None,
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::GroundTooLarge(n));
    }
    Ok(())
}

fn check_count(count: u128) -> Result<()> {
    if count > MEMBER_GUARD as u128 {
        return Err(Error::guard("generated family size", count, MEMBER_GUARD));
    }
    Ok(())
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn falling(n: usize, r: usize) -> u128 {
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128)
}

/// All r-subsets of `0..n` as bitmasks.
fn combinations(n: usize, r: usize) -> Vec<u128> {
    fn rec(start: usize, n: usize, left: usize, cur: u128, out: &mut Vec<u128>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, 0, &mut out);
    }
    out
}

/// Sequences of `r` distinct values from `0..n`.
fn arrangements(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, r: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                cur.push(y);
                rec(n, r, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, r, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

fn pair_labels(rows: usize, cols: usize) -> Vec<String> {
    (0..rows * cols)
        .map(|e| format!("({},{})", e / cols + 1, e % cols + 1))
        .collect()
}

/// 2^[n].
pub fn gen_powerset(n: usize) -> Result<SetFamily> {
    check_ground(n)?;
    if n > 16 {
        return Err(Error::guard("power set ground size", n, 16));
    }
    let members = (0u128..1 << n).map(MemberSet::from_bits).collect();
    Ok(SetFamily::new(n, members)?.with_meta(meta("gen_powerset", &[("n", json!(n))])))
}

/// All r-subsets of [n].
pub fn gen_uniform(n: usize, r: usize) -> Result<SetFamily> {
    check_ground(n)?;
    if r > n {
        return Err(Error::InvalidParameter(format!("r = {r} exceeds n = {n}")));
    }
    check_count(binomial(n, r))?;
    let members = combinations(n, r).into_iter().map(MemberSet::from_bits).collect();
    Ok(SetFamily::new(n, members)?
        .with_meta(meta("gen_uniform", &[("n", json!(n)), ("r", json!(r))])))
}

/// The largest t-intersecting subfamily of 2^[n]: sets of size at least
/// (n+t)/2 when n+t is even, otherwise sets meeting the first n-1 elements
/// in at least (n+t-1)/2 places.
pub fn gen_katona(n: usize, t: usize) -> Result<SetFamily> {
    if t == 0 || t > n {
        return Err(Error::InvalidParameter(format!("need 1 <= t <= n, got t={t}, n={n}")));
    }
    let all = gen_powerset(n)?;
    let head = (1u128 << (n - 1)) - 1;
    let keep = |m: &MemberSet| {
        if (n + t) % 2 == 0 {
            m.len() >= (n + t) / 2
        } else {
            (m.bits() & head).count_ones() as usize >= (n + t - 1) / 2
        }
    };
    let members = all.members().iter().copied().filter(keep).collect();
    Ok(SetFamily::new(n, members)?.with_meta(meta("gen_katona", &[("n", json!(n)), ("t", json!(t))])))
}

/// m-signed r-subsets of [n]: `{(x_1,y_1),...,(x_r,y_r)}` with distinct
/// x's in [n] and y's in [m]. The pair (x,y) is element `(x-1)*m + (y-1)`.
pub fn gen_signed(n: usize, r: usize, m: usize) -> Result<SetFamily> {
    if r == 0 || r > n || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= r <= n and m >= 2, got n={n}, r={r}, m={m}"
        )));
    }
    check_ground(n * m)?;
    check_count(binomial(n, r) * (m as u128).pow(r as u32))?;
    let mut members = Vec::new();
    for xs in combinations(n, r) {
        let xs: Vec<usize> = (0..n).filter(|&x| xs >> x & 1 == 1).collect();
        let total = m.pow(r as u32);
        for code in 0..total {
            let mut c = code;
            let mut bits = 0u128;
            for &x in &xs {
                bits |= 1 << (x * m + c % m);
                c /= m;
            }
            members.push(MemberSet::from_bits(bits));
        }
    }
    let mut mt = meta("gen_signed", &[("n", json!(n)), ("r", json!(r)), ("m", json!(m))]);
    mt.labels = Some(pair_labels(n, m));
    Ok(SetFamily::new(n * m, members)?.with_meta(mt))
}

/// `{(1,y_1),...,(r,y_r)}` with distinct y's in [n]. The pair (i,y) is
/// element `(i-1)*n + (y-1)`.
pub fn gen_permutations(r: usize, n: usize) -> Result<SetFamily> {
    if r == 0 || r > n {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    check_ground(r * n)?;
    check_count(falling(n, r))?;
    let members = arrangements(n, r)
        .into_iter()
        .map(|ys| {
            MemberSet::from_bits(
                ys.iter()
                    .enumerate()
                    .fold(0u128, |b, (i, &y)| b | 1 << (i * n + y)),
            )
        })
        .collect();
    let mut mt = meta("gen_permutations", &[("r", json!(r)), ("n", json!(n))]);
    mt.labels = Some(pair_labels(r, n));
    Ok(SetFamily::new(r * n, members)?.with_meta(mt))
}

/// r-partial permutations of [n]: `{(x_1,y_1),...,(x_r,y_r)}` with distinct
/// x's and distinct y's. The pair (x,y) is element `(x-1)*n + (y-1)`.
pub fn gen_partial_permutations(n: usize, r: usize) -> Result<SetFamily> {
    if r == 0 || r > n {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    check_ground(n * n)?;
    check_count(binomial(n, r) * falling(n, r))?;
    let ys_all = arrangements(n, r);
    let mut members = Vec::new();
    for xs in combinations(n, r) {
        let xs: Vec<usize> = (0..n).filter(|&x| xs >> x & 1 == 1).collect();
        for ys in &ys_all {
            let bits = xs.iter().zip(ys).fold(0u128, |b, (&x, &y)| b | 1 << (x * n + y));
            members.push(MemberSet::from_bits(bits));
        }
    }
    let mut mt = meta("gen_partial_permutations", &[("n", json!(n)), ("r", json!(r))]);
    mt.labels = Some(pair_labels(n, n));
    Ok(SetFamily::new(n * n, members)?.with_meta(mt))
}

/// Disjoint t-sets `F_1..F_n` and their union `F_{n+1}`. The metadata groups
/// list the member index of each named set in order `F_1..F_{n+1}`.
pub fn gen_example1(n: usize, t: usize) -> Result<SetFamily> {
    if n < 2 || t == 0 {
        return Err(Error::InvalidParameter(format!("need n >= 2, t >= 1, got n={n}, t={t}")));
    }
    named_disjoint(n, 0, t, "gen_example1", &[("n", json!(n)), ("t", json!(t))])
}

/// The sets of [`gen_example1`] plus `F_{n+2}..F_{n+m}`, pairwise disjoint
/// t-sets also disjoint from `F_{n+1}`; `n+m` members in all.
pub fn gen_example2(n: usize, m: usize, t: usize) -> Result<SetFamily> {
    if !(2 <= m && m < n) || t == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= m < n and t >= 1, got n={n}, m={m}, t={t}"
        )));
    }
    named_disjoint(n, m - 1, t, "gen_example2", &[("n", json!(n)), ("m", json!(m)), ("t", json!(t))])
}

fn named_disjoint(
    n: usize,
    extra: usize,
    t: usize,
    name: &str,
    params: &[(&str, Value)],
) -> Result<SetFamily> {
    let ground = (n + extra) * t;
    check_ground(ground)?;
    let block = |i: usize| MemberSet::from_bits(((1u128 << t) - 1) << (i * t));
    let mut named: Vec<MemberSet> = (0..n).map(block).collect();
    named.push(MemberSet::from_bits(named.iter().fold(0, |b, m| b | m.bits())));
    named.extend((n..n + extra).map(block));
    let f = SetFamily::new(ground, named.clone())?;
    let mut mt = meta(name, params);
    mt.groups = Some(
        named
            .iter()
            .map(|m| vec![f.index_of(m).expect("member present")])
            .collect(),
    );
    Ok(f.with_meta(mt))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineSpec {
    pub slope: Rational,
    pub intercept: Rational,
}

/// Each pairwise intersection point of the constructed lines owns a block of
/// `t` consecutive ground elements, allocated in lexicographic coordinate
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRegistry {
    pub t: usize,
    pub points: Vec<(Rational, Rational)>,
}

impl PointRegistry {
    pub fn block(&self, point: usize) -> MemberSet {
        MemberSet::from_bits(((1u128 << self.t) - 1) << (point * self.t))
    }
}

#[derive(Clone, Debug)]
pub struct LineFamily {
    pub family: SetFamily,
    pub lines: Vec<Vec<LineSpec>>,
    pub registry: PointRegistry,
    /// `member[i][j]` is the index of B_{i,j} in the family.
    pub member: Vec<Vec<usize>>,
}

fn distinct(v: &[Rational]) -> bool {
    let mut s = v.to_vec();
    s.sort();
    s.windows(2).all(|w| w[0] != w[1])
}

/// The line family with p slopes and p intercepts: B_{i,j} is the union of
/// the t-blocks of all points where the line y = m_i x + c_j meets another
/// line. Defaults m_i = i, c_j = j.
pub fn gen_lines(
    p: usize,
    t: usize,
    slopes: Option<&[Rational]>,
    intercepts: Option<&[Rational]>,
) -> Result<SetFamily> {
    Ok(gen_lines_detailed(p, t, slopes, intercepts)?.family)
}

pub fn gen_lines_detailed(
    p: usize,
    t: usize,
    slopes: Option<&[Rational]>,
    intercepts: Option<&[Rational]>,
) -> Result<LineFamily> {
    if p < 3 || t == 0 {
        return Err(Error::InvalidParameter(format!("need p >= 3, t >= 1, got p={p}, t={t}")));
    }
    let defaults: Vec<Rational> = (1..=p as i64).map(Rational::from_int).collect();
    let slopes = slopes.map_or_else(|| defaults.clone(), <[_]>::to_vec);
    let intercepts = intercepts.map_or_else(|| defaults.clone(), <[_]>::to_vec);
    if slopes.len() != p || intercepts.len() != p {
        return Err(Error::InvalidParameter(format!("need exactly {p} slopes and intercepts")));
    }
    if !distinct(&slopes) {
        return Err(Error::InvalidParameter("slopes must be pairwise distinct".into()));
    }
    if !distinct(&intercepts) {
        return Err(Error::InvalidParameter("intercepts must be pairwise distinct".into()));
    }
    let lines: Vec<Vec<LineSpec>> = slopes
        .iter()
        .map(|&slope| {
            intercepts
                .iter()
                .map(|&intercept| LineSpec { slope, intercept })
                .collect()
        })
        .collect();

    // point -> lines through it
    let mut on: BTreeMap<(Rational, Rational), Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..p {
        for i2 in i + 1..p {
            for j in 0..p {
                for j2 in 0..p {
                    let (a, b) = (lines[i][j], lines[i2][j2]);
                    let x = (b.intercept - a.intercept) / (a.slope - b.slope);
                    let y = a.slope * x + a.intercept;
                    let e = on.entry((x, y)).or_default();
                    e.push((i, j));
                    e.push((i2, j2));
                }
            }
        }
    }
    let ground = on.len() * t;
    check_ground(ground)?;
    let registry = PointRegistry {
        t,
        points: on.keys().copied().collect(),
    };
    let mut bits = vec![vec![0u128; p]; p];
    for (k, through) in on.values().enumerate() {
        let blk = registry.block(k).bits();
        for &(i, j) in through {
            bits[i][j] |= blk;
        }
    }
    let members: Vec<MemberSet> = bits.iter().flatten().map(|&b| MemberSet::from_bits(b)).collect();
    let f = SetFamily::new(ground, members)?;
    let member: Vec<Vec<usize>> = bits
        .iter()
        .map(|row| {
            row.iter()
                .map(|&b| f.index_of(&MemberSet::from_bits(b)).expect("member present"))
                .collect()
        })
        .collect();
    let mut mt = meta("gen_lines", &[("p", json!(p)), ("t", json!(t))]);
    mt.params.insert(
        "slopes".into(),
        json!(slopes.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    mt.params.insert(
        "intercepts".into(),
        json!(intercepts.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    mt.groups = Some(member.clone());
    mt.labels = Some(
        registry
            .points
            .iter()
            .flat_map(|(x, y)| (1..=t).map(move |u| format!("({x},{y})#{u}")))
            .collect(),
    );
    Ok(LineFamily {
        family: f.with_meta(mt),
        lines,
        registry,
        member,
    })
}

/// Maps A ⊆ [n] to `{(a,1) : a ∈ A} ∪ {(b,2) : b ∉ A}` in the 2-signed
/// n-subsets of [n] (same flattening as [`gen_signed`] with m = 2).
pub fn embed_powerset_in_signed(a: &SetFamily) -> Result<SetFamily> {
    let n = a.ground_size();
    check_ground(2 * n)?;
    let members = a
        .members()
        .iter()
        .map(|s| {
            let bits = (0..n).fold(0u128, |b, x| {
                b | 1 << (2 * x + usize::from(!s.contains(x)))
            });
            MemberSet::from_bits(bits)
        })
        .collect();
    let mut mt = meta("embed_powerset_in_signed", &[("n", json!(n))]);
    mt.labels = Some(pair_labels(n, 2));
    Ok(SetFamily::new(2 * n, members)?.with_meta(mt))
}
