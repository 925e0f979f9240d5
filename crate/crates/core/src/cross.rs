//! Maximum sum and product of sizes of k cross-t-intersecting subfamilies.
//!
//! A tuple (A_1..A_k) of subfamilies of F is encoded as a [`Labeling`]: each
//! member gets the set of indices of the families containing it. The tuple is
//! cross-t-intersecting iff every conflicting pair (|A∩B| < t) has one side
//! unlabeled or both sides labeled with the same single index, and every
//! member with fewer than t elements carries at most one index.
//!
//! The exact searches work over a reduced label alphabet per member, ordered
//!
//! ```text
//! ∅ < {1} < {2} < ... < {k} < {1..k}
//! ```
//!
//! A member labeled with two or more indices has no labeled conflict
//! neighbour, so relabeling it with every index keeps the tuple valid and
//! strictly increases the sum, and the product too whenever it is positive.
//! Hence no optimum with positive value is lost. The family indices are
//! interchangeable; labelings are kept canonical by requiring the singleton
//! labels to first appear in increasing order. Labelings are compared
//! lexicographically by member index over the order above, and every search
//! reports the least optimal one.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use serde_json::{json, Value};

use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::extremal::{beta_with_guard, describe, ell, repeatable_largest, BetaReport};
use crate::family::{alpha, decompose, is_cross_t_intersecting, union_family, SetFamily};
use crate::io::family_to_json;
use crate::rational::Rational;
use crate::report::{VerificationReport, Witness};
use crate::subsets::{above, full_mask, MaskGraph};

/// Size limits for the exhaustive searches. A labeling search runs only when
/// `(k+1)^|F| / k!` is at most `2^labeling_log2`; enumerating every optimum
/// uses the tighter `enumeration_log2`. Subfamily enumerations (β and the
/// sum search) accept at most `subfamily_members` members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchGuards {
    pub labeling_log2: u32,
    pub enumeration_log2: u32,
    pub subfamily_members: usize,
}

impl Default for SearchGuards {
    fn default() -> Self {
        SearchGuards {
            labeling_log2: 34,
            enumeration_log2: 26,
            subfamily_members: crate::extremal::BETA_GUARD,
        }
    }
}

/// Cap on the number of optimal labelings collected by an enumeration.
pub const MAX_OPTIMA: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Objective {
    Sum,
    Product,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Sum => "sum",
            Objective::Product => "product",
        }
    }

    pub fn evaluate(self, sizes: &[usize]) -> BigUint {
        match self {
            Objective::Sum => BigUint::from(sizes.iter().sum::<usize>()),
            Objective::Product => sizes.iter().map(|&s| BigUint::from(s)).product(),
        }
    }
}

/// For each member, the bitmask of family indices (bit i-1 for family i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    k: usize,
    labels: Vec<u64>,
}

fn index_mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl Labeling {
    pub fn new(k: usize, labels: Vec<u64>) -> Result<Self> {
        if k == 0 || k > 64 {
            return Err(Error::InvalidParameter(format!("k must be in 1..=64, got {k}")));
        }
        if labels.iter().any(|&l| l & !index_mask(k) != 0) {
            return Err(Error::InvalidParameter(format!("label outside 1..={k}")));
        }
        Ok(Labeling { k, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Labels as 1-based family indices.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.labels
            .iter()
            .map(|&l| (0..self.k).filter(|i| l >> i & 1 == 1).map(|i| i + 1).collect())
            .collect()
    }

    pub fn is_valid(&self, f: &SetFamily, t: usize) -> bool {
        if self.labels.len() != f.len() {
            return false;
        }
        let g = ConflictGraph::new(f, t);
        (0..f.len()).all(|a| {
            let la = self.labels[a];
            if g.is_self_conflicted(a) && la.count_ones() > 1 {
                return false;
            }
            g.neighbors(a).iter().all(|b| {
                let lb = self.labels[b];
                la == 0 || lb == 0 || (la == lb && la.count_ones() == 1)
            })
        })
    }

    pub fn decode(&self, f: &SetFamily) -> Vec<SetFamily> {
        (0..self.k)
            .map(|i| f.subfamily((0..f.len()).filter(|&a| self.labels[a] >> i & 1 == 1)))
            .collect()
    }

    pub fn encode(f: &SetFamily, tuple: &[SetFamily]) -> Result<Self> {
        let mut labels = vec![0u64; f.len()];
        for (i, a) in tuple.iter().enumerate() {
            for idx in f.indices_of(a)? {
                labels[idx] |= 1 << i;
            }
        }
        Labeling::new(tuple.len(), labels)
    }

    pub fn sizes(&self) -> Vec<usize> {
        (0..self.k)
            .map(|i| self.labels.iter().filter(|&&l| l >> i & 1 == 1).count())
            .collect()
    }

    /// Every family equal to the same t-intersecting subfamily.
    pub fn is_constant(&self) -> bool {
        let full = index_mask(self.k);
        self.labels.iter().all(|&l| l == 0 || l == full)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossConfigResult {
    pub k: usize,
    pub objective: Objective,
    pub value: BigUint,
    pub families: Vec<SetFamily>,
    pub labeling: Labeling,
    /// Set only by exact searches.
    pub optimal: bool,
    pub all_optima_checked: Option<bool>,
}

impl CrossConfigResult {
    fn from_labeling(f: &SetFamily, objective: Objective, labeling: Labeling) -> Self {
        let families = labeling.decode(f);
        let value = objective.evaluate(&labeling.sizes());
        CrossConfigResult {
            k: labeling.k(),
            objective,
            value,
            families,
            labeling,
            optimal: true,
            all_optima_checked: None,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.families.iter().map(SetFamily::len).collect()
    }

    /// The structural invariants every reported configuration satisfies.
    pub fn check(&self, t: usize) -> std::result::Result<(), String> {
        if !is_cross_t_intersecting(&self.families, t) {
            return Err("families are not cross-t-intersecting".into());
        }
        if self.objective.evaluate(&self.sizes()) != self.value {
            return Err("value does not match the family sizes".into());
        }
        if !am_gm_holds(&self.sizes()) {
            return Err("AM-GM violated".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let value = match self.objective {
            Objective::Sum => json!(self.value.to_u64().expect("sums are small")),
            Objective::Product => json!(self.value.to_string()),
        };
        let mut v = json!({
            "k": self.k,
            "objective": self.objective.name(),
            "value": value,
            "families": self.families.iter().map(|f| family_to_json(f, false)).collect::<Vec<_>>(),
            "labeling": self.labeling.to_lists(),
            "optimal": self.optimal,
        });
        if let Some(c) = self.all_optima_checked {
            v["all_optima_checked"] = json!(c);
        }
        v
    }
}

/// k^k · Π x_i <= (Σ x_i)^k.
pub fn am_gm_holds(sizes: &[usize]) -> bool {
    let k = sizes.len() as u32;
    if k == 0 {
        return true;
    }
    let prod: BigUint = sizes.iter().map(|&s| BigUint::from(s)).product();
    let sum = BigUint::from(sizes.iter().sum::<usize>());
    BigUint::from(k).pow(k) * prod <= sum.pow(k)
}

fn check_nonempty_k(f: &SetFamily, k: usize) -> Result<()> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("cross-t-intersecting search"));
    }
    if k == 0 || k > 64 {
        return Err(Error::InvalidParameter(format!("k must be in 1..=64, got {k}")));
    }
    Ok(())
}

fn check_labeling_guard(n: usize, k: usize, log2: u32, what: &'static str) -> Result<()> {
    let states = BigUint::from(k + 1).pow(n as u32);
    let fact: BigUint = (1..=k).map(BigUint::from).product();
    let limit = (BigUint::one() << log2) * &fact;
    if states > limit || n > 64 {
        return Err(Error::guard(
            what,
            format!("(k+1)^|F|/k! = {}^{}/{}!", k + 1, n, k),
            format!("2^{log2}"),
        ));
    }
    Ok(())
}

const EMPTY: u8 = 0;

struct LabelSearch {
    n: usize,
    k: usize,
    objective: Objective,
    nb: Vec<u64>,
    /// Members with at least t elements.
    big: Vec<bool>,
    /// Greedy clique cover of the conflict graph: class of each member.
    cover: Vec<usize>,
    codes: Vec<u8>,
    single: Vec<u64>,
    all: u64,
    counts: Vec<u64>,
    used: usize,
    target: u128,
    found: bool,
    best: Option<Vec<u8>>,
    enumerate: bool,
    optima: Vec<Vec<u8>>,
    overflow: bool,
}

impl LabelSearch {
    fn new(f: &SetFamily, t: usize, k: usize, objective: Objective) -> Self {
        let g = MaskGraph::new(f, t);
        let n = f.len();
        let mut classes: Vec<u64> = Vec::new();
        let mut cover = vec![0; n];
        for v in 0..n {
            match classes.iter().position(|&c| c & !g.nb[v] == 0) {
                Some(c) => {
                    classes[c] |= 1 << v;
                    cover[v] = c;
                }
                None => {
                    cover[v] = classes.len();
                    classes.push(1 << v);
                }
            }
        }
        LabelSearch {
            n,
            k,
            objective,
            nb: g.nb,
            big: f.members().iter().map(|m| m.len() >= t).collect(),
            cover,
            codes: vec![EMPTY; n],
            single: vec![0; k],
            all: 0,
            counts: vec![0; k],
            used: 0,
            target: 0,
            found: false,
            best: None,
            enumerate: false,
            optima: Vec::new(),
            overflow: false,
        }
    }

    fn all_code(&self) -> u8 {
        self.k as u8 + 1
    }

    fn value(&self) -> u128 {
        match self.objective {
            Objective::Sum => self.counts.iter().map(|&c| c as u128).sum(),
            Objective::Product => self.counts.iter().map(|&c| c as u128).product(),
        }
    }

    fn waterfill_product(base: &mut [u64], units: u64) -> u128 {
        for _ in 0..units {
            let i = (0..base.len()).min_by_key(|&i| base[i]).expect("k >= 1");
            base[i] += 1;
        }
        base.iter().map(|&c| c as u128).product()
    }

    /// Upper bound on the objective over all completions from member `i` on.
    fn upper_bound(&self, i: usize) -> u128 {
        let labeled = self.all | self.single.iter().fold(0, |a, &b| a | b);
        let mut restricted = vec![0u64; self.k];
        let mut free = 0u64;
        let mut classes = 0u64;
        for j in i..self.n {
            let touch = self.nb[j] & labeled;
            if touch & self.all != 0 {
                continue;
            }
            let mut hit = None;
            let mut multi = false;
            for (c, &s) in self.single.iter().enumerate() {
                if touch & s != 0 {
                    if hit.is_some() {
                        multi = true;
                        break;
                    }
                    hit = Some(c);
                }
            }
            if multi {
                continue;
            }
            match hit {
                Some(c) => restricted[c] += 1,
                None => {
                    free += 1;
                    if self.k >= 2 && self.big[j] {
                        classes |= 1 << self.cover[j];
                    }
                }
            }
        }
        let u_max = (classes.count_ones() as u64).min(free);
        match self.objective {
            Objective::Sum => {
                let base: u128 = self.counts.iter().zip(&restricted).map(|(&c, &r)| (c + r) as u128).sum();
                base + free as u128 + (self.k as u128 - 1) * u_max as u128
            }
            Objective::Product => (0..=u_max)
                .map(|u| {
                    let mut base: Vec<u64> = self
                        .counts
                        .iter()
                        .zip(&restricted)
                        .map(|(&c, &r)| c + r + u)
                        .collect();
                    Self::waterfill_product(&mut base, free - u)
                })
                .max()
                .expect("non-empty range"),
        }
    }

    fn prune(&self, ub: u128) -> bool {
        if self.enumerate || !self.found {
            ub < self.target
        } else {
            ub <= self.target
        }
    }

    fn leaf(&mut self) {
        let v = self.value();
        if self.enumerate {
            if v == self.target {
                if self.optima.len() < MAX_OPTIMA {
                    self.optima.push(self.codes.clone());
                } else {
                    self.overflow = true;
                }
            }
        } else if (!self.found && v >= self.target) || v > self.target {
            self.found = true;
            self.target = v;
            self.best = Some(self.codes.clone());
        }
    }

    fn dfs(&mut self, i: usize) {
        if i == self.n {
            self.leaf();
            return;
        }
        if self.prune(self.upper_bound(i)) {
            return;
        }
        let below = full_mask(i);
        let touch = self.nb[i] & below;
        // ∅ first
        self.dfs(i + 1);
        if touch & self.all != 0 {
            return;
        }
        let hits: Vec<usize> = (0..self.k).filter(|&c| touch & self.single[c] != 0).collect();
        let singles: Vec<usize> = match hits.len() {
            0 => (0..self.k.min(self.used + 1)).collect(),
            1 => hits,
            _ => return,
        };
        for c in singles {
            let opened = c == self.used;
            if opened {
                self.used += 1;
            }
            self.codes[i] = c as u8 + 1;
            self.single[c] |= 1 << i;
            self.counts[c] += 1;
            self.dfs(i + 1);
            self.counts[c] -= 1;
            self.single[c] &= !(1 << i);
            self.codes[i] = EMPTY;
            if opened {
                self.used -= 1;
            }
        }
        let labeled_nb = touch & (self.all | self.single.iter().fold(0, |a, &b| a | b));
        if self.k >= 2 && self.big[i] && labeled_nb == 0 {
            self.codes[i] = self.all_code();
            self.all |= 1 << i;
            self.counts.iter_mut().for_each(|c| *c += 1);
            self.dfs(i + 1);
            self.counts.iter_mut().for_each(|c| *c -= 1);
            self.all &= !(1 << i);
            self.codes[i] = EMPTY;
        }
    }

    fn to_labeling(&self, codes: &[u8]) -> Labeling {
        let labels = codes
            .iter()
            .map(|&c| match c {
                EMPTY => 0,
                c if c == self.all_code() => index_mask(self.k),
                c => 1u64 << (c - 1),
            })
            .collect();
        Labeling::new(self.k, labels).expect("k checked")
    }
}

fn check_magnitude(n: usize, k: usize, objective: Objective) -> Result<()> {
    if objective == Objective::Product && (n as u128).checked_pow(k as u32).is_none() {
        return Err(Error::guard("product magnitude |F|^k", format!("{n}^{k}"), "2^128"));
    }
    Ok(())
}

/// Value of the best constant configuration, used as the starting
/// incumbent: it is feasible, so nothing below it needs exploring.
fn constant_seed(f: &SetFamily, t: usize, k: usize, objective: Objective) -> Result<u128> {
    let size = repeatable_largest(f, t)?.map_or(0, |l| l.len()) as u128;
    Ok(match objective {
        Objective::Sum => (k as u128 * size).max(f.len() as u128),
        Objective::Product => size.pow(k as u32),
    })
}

/// Exact optimum by labeling search; the canonical-least optimal labeling.
pub fn labeling_search(
    f: &SetFamily,
    t: usize,
    k: usize,
    objective: Objective,
    guards: &SearchGuards,
) -> Result<CrossConfigResult> {
    check_nonempty_k(f, k)?;
    check_labeling_guard(f.len(), k, guards.labeling_log2, "labeling search space")?;
    check_magnitude(f.len(), k, objective)?;
    let mut s = LabelSearch::new(f, t, k, objective);
    s.target = constant_seed(f, t, k, objective)?;
    s.dfs(0);
    let codes = s.best.clone().expect("the seed value is attained by a feasible labeling");
    let res = CrossConfigResult::from_labeling(f, objective, s.to_labeling(&codes));
    debug_assert!(res.labeling.is_valid(f, t));
    res.check(t).map_err(|e| Error::InvalidParameter(format!("internal: {e}")))?;
    Ok(res)
}

/// Every optimal labeling in canonical form (one per relabeling of the
/// family indices), in canonical order, together with the optimum.
pub fn optimal_labelings(
    f: &SetFamily,
    t: usize,
    k: usize,
    objective: Objective,
    guards: &SearchGuards,
) -> Result<(BigUint, Vec<Labeling>)> {
    check_labeling_guard(f.len(), k, guards.enumeration_log2, "optimum enumeration space")?;
    let best = labeling_search(f, t, k, objective, guards)?;
    let mut s = LabelSearch::new(f, t, k, objective);
    s.enumerate = true;
    s.target = best.value.to_u128().expect("fits");
    s.dfs(0);
    if s.overflow {
        return Err(Error::guard("number of optimal labelings", "more", MAX_OPTIMA));
    }
    let out = s.optima.iter().map(|c| s.to_labeling(c)).collect();
    Ok((best.value, out))
}

pub fn max_product_exact(f: &SetFamily, t: usize, k: usize) -> Result<CrossConfigResult> {
    max_product_exact_with(f, t, k, &SearchGuards::default())
}

pub fn max_product_exact_with(
    f: &SetFamily,
    t: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<CrossConfigResult> {
    labeling_search(f, t, k, Objective::Product, guards)
}

struct SumSearch<'a> {
    g: &'a MaskGraph,
    big: u64,
    k1: u64,
    l: u64,
    best: u64,
    best_mask: u64,
    found: bool,
}

impl SumSearch<'_> {
    fn value(&self, s: u64) -> u64 {
        s.count_ones() as u64 + self.k1 * (self.g.plus(s) & self.big).count_ones() as u64
    }

    fn bound(&self, s: u64, r: u64) -> u64 {
        let plus = (self.g.plus(s) & self.big).count_ones() + (self.g.free(s, r) & self.big).count_ones();
        (s | r).count_ones() as u64 + self.k1 * (plus as u64).min(self.l)
    }

    fn dfs(&mut self, s: u64, start: usize) {
        let n = self.g.n;
        for j in start..n {
            let child = s | 1 << j;
            let b = self.bound(child, above(j, n));
            if b < self.best || (self.found && b == self.best) {
                continue;
            }
            let v = self.value(child);
            if v > self.best || (!self.found && v == self.best) {
                self.best = v;
                self.best_mask = child;
                self.found = true;
            }
            self.dfs(child, j + 1);
        }
    }
}

/// The subfamily A_0 maximizing |A| + (k-1)·|{A ∈ A^{t,+} : |A| >= t}|, the
/// canonical-least one on ties, and the optimum it gives.
///
/// This is k·(|A^{t,+}| + |A^{t,-}|/k) except that members of A^{t,+} with
/// fewer than t elements are counted once: such a set cannot sit in two
/// families, since it does not t-intersect itself.
pub fn best_sum_subfamily(f: &SetFamily, t: usize, k: usize, guard: usize) -> Result<(u64, u64)> {
    check_nonempty_k(f, k)?;
    if f.len() > guard.min(64) {
        return Err(Error::guard("family size for subfamily enumeration", f.len(), guard.min(64)));
    }
    let g = MaskGraph::new(f, t);
    let big = f
        .members()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.len() >= t)
        .fold(0u64, |b, (i, _)| b | 1 << i);
    let l = crate::extremal::ell_value(f, t)? as u64;
    let mut s = SumSearch {
        g: &g,
        big,
        k1: k as u64 - 1,
        l,
        best: 0,
        best_mask: 0,
        found: false,
    };
    let all = full_mask(f.len());
    s.best = s.value(all);
    s.dfs(0, 0);
    if !s.found {
        // only the empty subfamily reaches the seed, i.e. it is 0
        s.best_mask = 0;
    }
    Ok((s.best, s.best_mask))
}

pub fn max_sum_exact(f: &SetFamily, t: usize, k: usize) -> Result<CrossConfigResult> {
    max_sum_exact_with(f, t, k, &SearchGuards::default())
}

/// B_1 = A_0 and B_2 = ... = B_k = the members of A_0^{t,+} with at least t
/// elements, for A_0 from [`best_sum_subfamily`].
pub fn max_sum_exact_with(
    f: &SetFamily,
    t: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<CrossConfigResult> {
    let (_, mask) = best_sum_subfamily(f, t, k, guards.subfamily_members)?;
    let g = MaskGraph::new(f, t);
    let repeat = if k >= 2 {
        g.plus(mask)
            & f.members()
                .iter()
                .enumerate()
                .filter(|(_, m)| m.len() >= t)
                .fold(0u64, |b, (i, _)| b | 1 << i)
    } else {
        0
    };
    let labels = (0..f.len())
        .map(|i| {
            if repeat >> i & 1 == 1 {
                index_mask(k)
            } else if mask >> i & 1 == 1 {
                1
            } else {
                0
            }
        })
        .collect();
    let res = CrossConfigResult::from_labeling(f, Objective::Sum, Labeling::new(k, labels)?);
    res.check(t).map_err(|e| Error::InvalidParameter(format!("internal: {e}")))?;
    Ok(res)
}

/// x mod k, except that multiples of k map to k.
///
/// Panics if `x` or `k` is zero.
pub fn modstar(x: usize, k: usize) -> usize {
    assert!(x >= 1 && k >= 1, "modstar needs positive arguments");
    match x % k {
        0 => k,
        r => r,
    }
}

/// Whether `{(ip+j) mod* k : 0 <= i < k, 1 <= j <= p}` holds every index of
/// 1..=k exactly p times.
pub fn cyclic_cover_holds(k: usize, p: usize) -> bool {
    let mut seen = vec![0usize; k + 1];
    for i in 0..k {
        for j in 1..=p {
            seen[modstar(i * p + j, k)] += 1;
        }
    }
    seen[1..].iter().all(|&c| c == p)
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer().into(), r.denom().into())
}

fn subsets_of_size(k: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, p, &mut Vec::new(), &mut out);
    out
}

/// Checks Π x_i <= Π y_i given Π_{i∈I} x_i <= Π_{i∈I} y_i for every p-subset
/// I, along with the cyclic covering identity behind it.
pub fn product_extension_check(x: &[Rational], y: &[Rational], p: usize) -> Result<VerificationReport> {
    let k = x.len();
    if y.len() != k || p == 0 || p > k {
        return Err(Error::InvalidParameter(format!(
            "need |x| = |y| = k and 1 <= p <= k, got |x|={k}, |y|={}, p={p}",
            y.len()
        )));
    }
    if k > 20 {
        return Err(Error::guard("k for subset hypothesis", k, 20));
    }
    if x.iter().chain(y).any(|v| v.numer() < 0) {
        return Err(Error::InvalidParameter("values must be non-negative".into()));
    }
    let (bx, by): (Vec<BigRational>, Vec<BigRational>) = (x.iter().map(big).collect(), y.iter().map(big).collect());
    let prod = |v: &[BigRational], idx: &[usize]| -> BigRational {
        idx.iter().fold(BigRational::one(), |a, &i| a * &v[i])
    };
    for i in subsets_of_size(k, p) {
        if prod(&bx, &i) > prod(&by, &i) {
            let shown: Vec<usize> = i.iter().map(|j| j + 1).collect();
            return Err(Error::HypothesisFails(format!(
                "product over {shown:?} is larger for x than for y"
            )));
        }
    }
    let all: Vec<usize> = (0..k).collect();
    let (px, py) = (prod(&bx, &all), prod(&by, &all));
    let mut rep = VerificationReport::new("lem-5.3", format!("k={k},p={p}"));
    let cyclic: Vec<usize> = (0..k)
        .flat_map(|i| (1..=p).map(move |j| modstar(i * p + j, k) - 1))
        .collect();
    rep.value("prod_x", big_to_string(&px))
        .value("prod_y", big_to_string(&py))
        .value("cyclic_cover", cyclic_cover_holds(k, p));
    rep.check(px <= py, "product of x exceeds product of y");
    rep.check(cyclic_cover_holds(k, p), "cyclic cover identity fails");
    rep.check(
        prod(&bx, &cyclic) == Pow::pow(px.clone(), p as u32),
        "cyclic product of x differs from its p-th power",
    );
    Ok(rep.finish())
}

fn big_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Checks the union identities for a cross-t-intersecting tuple with union A:
/// A^{t,+} = ∪ A_i^{t,+}, A^{t,-} = ∪ A_i^{t,-}, |A^{t,-}| = Σ |A_i^{t,-}|.
pub fn verify_union_decomposition(tuple: &[SetFamily], t: usize) -> Result<VerificationReport> {
    if !is_cross_t_intersecting(tuple, t) {
        return Err(Error::HypothesisFails("families are not cross-t-intersecting".into()));
    }
    let a = union_family(tuple)?;
    let d = decompose(&a, t);
    let parts: Vec<_> = tuple.iter().map(|x| decompose(x, t)).collect();
    let plus_union = union_family(&parts.iter().map(|p| p.plus.clone()).collect::<Vec<_>>())?;
    let minus_union = union_family(&parts.iter().map(|p| p.minus.clone()).collect::<Vec<_>>())?;
    let minus_sum: usize = parts.iter().map(|p| p.minus.len()).sum();
    let sizes: Vec<String> = tuple.iter().map(|x| x.len().to_string()).collect();
    let mut rep = VerificationReport::new("lem-2.1", format!("t={t},sizes=[{}]", sizes.join(",")));
    rep.value("plus", d.plus.len())
        .value("minus", d.minus.len())
        .value("minus_sum", minus_sum);
    rep.check(d.plus == plus_union, "(i) plus part of the union differs");
    rep.check(d.minus == minus_union, "(ii) minus part of the union differs");
    rep.check(d.minus.len() == minus_sum, "(iii) minus parts are not disjoint");
    Ok(rep.finish())
}

fn instance(f: &SetFamily, t: usize, k: usize) -> String {
    format!("{},t={t},k={k}", describe(f))
}

fn require_alpha(f: &SetFamily, t: usize) -> Result<()> {
    if alpha(f)? < t {
        return Err(Error::Inapplicable(format!("alpha(F) < t = {t}")));
    }
    Ok(())
}

fn record(rep: &mut VerificationReport, name: &str, r: &CrossConfigResult, t: usize) {
    rep.value(name, r.value.clone())
        .witness(name, Witness::Labels(r.labeling.to_lists()));
    if let Err(e) = r.check(t) {
        rep.check(false, format!("{name}: {e}"));
    }
    rep.check(am_gm_holds(&r.sizes()), format!("{name}: AM-GM violated"));
}

fn pow(base: usize, k: usize) -> BigUint {
    BigUint::from(base).pow(k as u32)
}

/// The constant configuration on a largest t-intersecting subfamily whose
/// members can be repeated.
fn constant_l(f: &SetFamily, t: usize, k: usize) -> Result<Option<CrossConfigResult>> {
    let l = ell(f, t)?.value;
    Ok(repeatable_largest(f, t)?.filter(|x| x.len() == l).map(|x| {
        let labels = (0..f.len())
            .map(|i| if x.contains(&f.get(i)) { index_mask(k) } else { 0 })
            .collect();
        let lab = Labeling::new(k, labels).expect("k checked");
        CrossConfigResult::from_labeling(f, Objective::Sum, lab)
    }))
}

fn is_constant_largest(lab: &Labeling, f: &SetFamily, t: usize, l: usize) -> bool {
    let fams = lab.decode(f);
    lab.is_constant() && fams[0].len() == l && crate::family::is_t_intersecting(&fams[0], t)
}

pub fn verify_main_theorem(f: &SetFamily, t: usize, k: usize) -> Result<VerificationReport> {
    verify_main_theorem_with(f, t, k, &SearchGuards::default())
}

/// For k >= κ: the maximum sum is k·l and the maximum product is l^k, both
/// attained by a constant configuration; for k > κ every optimum is one.
pub fn verify_main_theorem_with(
    f: &SetFamily,
    t: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<VerificationReport> {
    check_nonempty_k(f, k)?;
    require_alpha(f, t)?;
    let b = beta_with_guard(f, t, guards.subfamily_members)?;
    let kk = Rational::from_int(k as i64);
    if kk < b.kappa {
        return Err(Error::Inapplicable(format!("k = {k} < kappa = {}", b.kappa)));
    }
    let l = b.ell;
    let mut rep = VerificationReport::new("thm-1.1", instance(f, t, k));
    rep.value("kappa", b.kappa).value("ell", l);
    let sum = max_sum_exact_with(f, t, k, guards)?;
    let prod = max_product_exact_with(f, t, k, guards)?;
    record(&mut rep, "max_sum", &sum, t);
    record(&mut rep, "max_product", &prod, t);
    rep.check(sum.value == BigUint::from(k * l), "max sum differs from k*l");
    rep.check(prod.value == pow(l, k), "max product differs from l^k");
    match constant_l(f, t, k)? {
        Some(c) => {
            rep.check(c.check(t).is_ok(), "constant configuration is not cross-t-intersecting");
            rep.check(c.sizes().iter().all(|&s| s == l), "constant configuration has the wrong size");
        }
        None => {
            rep.check(false, "no largest t-intersecting subfamily can be repeated");
        }
    }
    if kk > b.kappa {
        for obj in [Objective::Sum, Objective::Product] {
            let (_, optima) = optimal_labelings(f, t, k, obj, guards)?;
            let bad = optima.iter().filter(|o| !is_constant_largest(o, f, t, l)).count();
            rep.value(&format!("{}_optima", obj.name()), optima.len())
                .value(&format!("{}_non_constant_optima", obj.name()), bad);
            rep.check(bad == 0, format!("{} optimum that is not constant", obj.name()));
        }
        rep.value("all_optima_checked", true);
    }
    Ok(rep.finish())
}

pub fn verify_summax2(f: &SetFamily, t: usize, k: usize) -> Result<VerificationReport> {
    verify_summax2_with(f, t, k, &SearchGuards::default())
}

/// Maximum sum = k·l when k >= κ and > k·l when k < κ.
pub fn verify_summax2_with(
    f: &SetFamily,
    t: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<VerificationReport> {
    check_nonempty_k(f, k)?;
    require_alpha(f, t)?;
    let b = beta_with_guard(f, t, guards.subfamily_members)?;
    let l = b.ell;
    let mut rep = VerificationReport::new("thm-1.2", instance(f, t, k));
    let sum = max_sum_exact_with(f, t, k, guards)?;
    rep.value("kappa", b.kappa).value("ell", l).value("k_times_ell", k * l);
    record(&mut rep, "max_sum", &sum, t);
    let kl = BigUint::from(k * l);
    if Rational::from_int(k as i64) >= b.kappa {
        rep.value("part", "i");
        rep.check(sum.value == kl, "max sum differs from k*l although k >= kappa");
    } else {
        rep.value("part", "ii");
        rep.check(sum.value > kl, "max sum not above k*l although k < kappa");
    }
    Ok(rep.finish())
}

fn is_trivial(lab: &Labeling) -> bool {
    lab.labels().iter().all(|&x| x == 1)
}

pub fn verify_summax3(f: &SetFamily, t: usize, k: usize) -> Result<VerificationReport> {
    verify_summax3_with(f, t, k, &SearchGuards::default())
}

/// When β = l/|F|: maximum sum |F| for k <= |F|/l and k·l for k >= |F|/l,
/// with the structure of all optima on either side of the threshold.
pub fn verify_summax3_with(
    f: &SetFamily,
    t: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<VerificationReport> {
    check_nonempty_k(f, k)?;
    if k < 2 {
        return Err(Error::InvalidParameter("need k >= 2".into()));
    }
    require_alpha(f, t)?;
    let b: BetaReport = beta_with_guard(f, t, guards.subfamily_members)?;
    if !b.attains_upper {
        return Err(Error::Inapplicable(format!(
            "beta = {} differs from l/|F| = {}",
            b.beta,
            Rational::ratio(b.ell, f.len())
        )));
    }
    let l = b.ell;
    let q = Rational::ratio(f.len(), l);
    let kk = Rational::from_int(k as i64);
    let mut rep = VerificationReport::new("thm-4.2", instance(f, t, k));
    rep.value("ell", l).value("threshold", q);
    let expected = if kk <= q { f.len() } else { k * l };
    let (value, optima) = optimal_labelings(f, t, k, Objective::Sum, guards)?;
    let sum = max_sum_exact_with(f, t, k, guards)?;
    record(&mut rep, "max_sum", &sum, t);
    rep.value("expected", expected).value("optima", optima.len());
    rep.check(sum.value == value, "subfamily route and labeling search disagree");
    rep.check(value == BigUint::from(expected), "maximum sum differs from the piecewise value");
    if kk < q {
        let ok = optima.iter().all(|o| {
            o.labels().iter().all(|x| x.count_ones() == 1)
                && o.decode(f).iter().all(|a| decompose(a, t).plus.is_empty())
        });
        rep.value("partition_form", ok);
        rep.check(ok, "an optimum is not a partition into minus parts");
    } else if kk > q {
        let ok = optima.iter().all(|o| is_constant_largest(o, f, t, l));
        rep.value("constant_form", ok);
        rep.check(ok, "an optimum is not a constant configuration");
    } else {
        let trivial = optima.iter().any(is_trivial);
        let constant = optima.iter().any(|o| is_constant_largest(o, f, t, l));
        rep.value("trivial_optimal", trivial)
            .value("constant_optimal", constant)
            .value(
                "other_optima",
                optima.iter().filter(|o| !is_trivial(o) && !is_constant_largest(o, f, t, l)).count(),
            );
        rep.check(trivial && constant, "trivial or constant configuration missing among optima");
    }
    rep.value("all_optima_checked", true);
    Ok(rep.finish())
}

pub fn verify_summax4(f: &SetFamily, t: usize, k: usize) -> Result<VerificationReport> {
    verify_summax4_with(f, t, k, &SearchGuards::default())
}

/// With both F^{t,+} and F^{t,-} non-empty and 2 <= k < κ, neither the
/// trivial nor the constant configuration is optimal.
pub fn verify_summax4_with(
    f: &SetFamily,
    t: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<VerificationReport> {
    check_nonempty_k(f, k)?;
    require_alpha(f, t)?;
    let d = decompose(f, t);
    if d.plus.is_empty() {
        return Err(Error::Inapplicable("F^{t,+} is empty".into()));
    }
    if d.minus.is_empty() {
        return Err(Error::Inapplicable("F^{t,-} is empty".into()));
    }
    let b = beta_with_guard(f, t, guards.subfamily_members)?;
    if k < 2 || Rational::from_int(k as i64) >= b.kappa {
        return Err(Error::Inapplicable(format!("need 2 <= k < kappa = {}", b.kappa)));
    }
    let l = b.ell;
    let mut rep = VerificationReport::new("prop-4.5", instance(f, t, k));
    let mut witness = vec![f.clone()];
    witness.extend(std::iter::repeat_n(d.plus.clone(), k - 1));
    let witness_sum = f.len() + (k - 1) * d.plus.len();
    rep.value("kappa", b.kappa)
        .value("ell", l)
        .value("witness_sum", witness_sum)
        .witness("witness", Witness::Families(witness.clone()));
    rep.check(is_cross_t_intersecting(&witness, t), "witness is not cross-t-intersecting");
    let sum = max_sum_exact_with(f, t, k, guards)?;
    record(&mut rep, "max_sum", &sum, t);
    rep.check(sum.value >= BigUint::from(witness_sum), "max sum below the witness");
    rep.check(sum.value > BigUint::from(f.len()), "trivial configuration is optimal");
    rep.check(sum.value > BigUint::from(k * l), "constant configuration is optimal");
    Ok(rep.finish())
}

pub fn verify_prodext(f: &SetFamily, t: usize, p: usize, k: usize) -> Result<VerificationReport> {
    verify_prodext_with(f, t, p, k, &SearchGuards::default())
}

/// If the constant configuration maximizes the product for p families, it
/// does for every k >= p.
pub fn verify_prodext_with(
    f: &SetFamily,
    t: usize,
    p: usize,
    k: usize,
    guards: &SearchGuards,
) -> Result<VerificationReport> {
    check_nonempty_k(f, k)?;
    if p == 0 || k < p {
        return Err(Error::InvalidParameter(format!("need 1 <= p <= k, got p={p}, k={k}")));
    }
    let l = ell(f, t)?.value;
    let base = max_product_exact_with(f, t, p, guards)?;
    if base.value != pow(l, p) {
        return Err(Error::LemmaInapplicable(format!(
            "max product for p = {p} is {}, not l^p = {}",
            base.value,
            pow(l, p)
        )));
    }
    let mut rep = VerificationReport::new("lem-5.2", format!("{},t={t},p={p},k={k}", describe(f)));
    rep.value("ell", l);
    record(&mut rep, "max_product_p", &base, t);
    let prod = max_product_exact_with(f, t, k, guards)?;
    record(&mut rep, "max_product_k", &prod, t);
    rep.check(prod.value == pow(l, k), "max product for k differs from l^k");
    Ok(rep.finish())
}

pub fn verify_geomthm(p: usize, t: usize, k: usize) -> Result<VerificationReport> {
    verify_geomthm_with(p, t, k, &SearchGuards::default())
}

/// The line family: κ = l = p, constant configuration optimal for the
/// product iff k >= p, beaten by p^{k-1}(p-k+1)p when k < p.
pub fn verify_geomthm_with(p: usize, t: usize, k: usize, guards: &SearchGuards) -> Result<VerificationReport> {
    if !(3..=4).contains(&p) {
        return Err(Error::guard("p for the line family", p, 4));
    }
    if k < 2 {
        return Err(Error::InvalidParameter("need k >= 2".into()));
    }
    let lf = crate::generators::gen_lines_detailed(p, t, None, None)?;
    let f = &lf.family;
    let b = beta_with_guard(f, t, guards.subfamily_members)?;
    let mut rep = VerificationReport::new("thm-5.4", format!("gen_lines(p={p},t={t}),k={k}"));
    rep.value("kappa", b.kappa).value("ell", b.ell).value("size", f.len());
    rep.check(b.kappa == Rational::from_int(p as i64), "kappa differs from p");
    rep.check(b.ell == p, "l differs from p");
    rep.check(f.len() == p * p, "family size differs from p^2");
    let prod = max_product_exact_with(f, t, k, guards)?;
    record(&mut rep, "max_product", &prod, t);
    let constant = pow(p, k);
    rep.value("constant_value", constant.clone());
    if k >= p {
        rep.check(prod.value == constant, "constant configuration not optimal for k >= p");
    } else {
        let group = |i: usize| f.subfamily(lf.member[i].iter().copied());
        let mut w: Vec<SetFamily> = (0..k - 1).map(group).collect();
        w.push(f.subfamily(lf.member[k - 1..].iter().flatten().copied()));
        let wv = pow(p, k - 1) * BigUint::from((p - k + 1) * p);
        rep.value("witness_value", wv.clone())
            .witness("witness", Witness::Families(w.clone()));
        rep.check(is_cross_t_intersecting(&w, t), "witness is not cross-t-intersecting");
        rep.check(
            Objective::Product.evaluate(&w.iter().map(SetFamily::len).collect::<Vec<_>>()) == wv,
            "witness value differs from p^(k-1)(p-k+1)p",
        );
        rep.check(prod.value >= wv, "max product below the witness");
        rep.check(prod.value > constant, "constant configuration not beaten for k < p");
    }
    Ok(rep.finish())
}

/// The configuration A_1 = {F_1..F_{n+1}}, A_2 = ... = A_k = {F_{n+1}} on
/// `gen_example2(n,m,t)` and its sum n+k, which beats both |F| and k·l when
/// 2 <= m < k < n, checked maximal by search.
pub fn verify_example_sum(n: usize, m: usize, t: usize, k: usize, guards: &SearchGuards) -> Result<VerificationReport> {
    if !(2 <= m && m < k && k < n) {
        return Err(Error::InvalidParameter(format!("need 2 <= m < k < n, got n={n}, m={m}, k={k}")));
    }
    let f = crate::generators::gen_example2(n, m, t)?;
    let named: Vec<usize> = f.meta().groups.as_ref().expect("named sets").iter().map(|g| g[0]).collect();
    let mut w = vec![f.subfamily(named[..=n].iter().copied())];
    w.extend(std::iter::repeat_n(f.subfamily([named[n]]), k - 1));
    let l = ell(&f, t)?.value;
    let ws: usize = w.iter().map(SetFamily::len).sum();
    let mut rep = VerificationReport::new("ex-4.6", format!("{},k={k}", describe(&f)));
    rep.value("witness_sum", ws)
        .value("size", f.len())
        .value("k_times_ell", k * l)
        .witness("witness", Witness::Families(w.clone()));
    rep.check(is_cross_t_intersecting(&w, t), "witness is not cross-t-intersecting");
    rep.check(ws == n + k, "witness sum differs from n+k");
    rep.check(ws > f.len().max(k * l), "witness does not beat max(|F|, k*l)");
    let sum = max_sum_exact_with(&f, t, k, guards)?;
    record(&mut rep, "max_sum", &sum, t);
    rep.check(sum.value == BigUint::from(n + k), "maximum sum differs from n+k");
    Ok(rep.finish())
}

/// For `gen_example2(n,m,t)` and 2 <= k <= m the trivial configuration
/// (all of F in one family) gives the maximum sum.
pub fn verify_example_trivial(n: usize, m: usize, t: usize, k: usize, guards: &SearchGuards) -> Result<VerificationReport> {
    if !(2 <= k && k <= m) {
        return Err(Error::InvalidParameter(format!("need 2 <= k <= m, got m={m}, k={k}")));
    }
    let f = crate::generators::gen_example2(n, m, t)?;
    let b = beta_with_guard(&f, t, guards.subfamily_members)?;
    let mut rep = VerificationReport::new("ex-4.7", format!("{},k={k}", describe(&f)));
    let sum = max_sum_exact_with(&f, t, k, guards)?;
    record(&mut rep, "max_sum", &sum, t);
    rep.value("kappa", b.kappa).value("size", f.len());
    rep.check(Rational::from_int(k as i64) < b.kappa, "k is not below kappa");
    rep.check(decompose(&f, t).plus.is_empty(), "F^{t,+} is not empty");
    rep.check(sum.value == BigUint::from(f.len()), "trivial configuration is not optimal");
    Ok(rep.finish())
}

/// The subfamily route against the labeling search: both give the same
/// maximum sum, the constructed tuple is cross-t-intersecting, and the union
/// of an optimal labeling scores as high as A_0. Also records the value of
/// the construction with all of A_0^{t,+} repeated, which differs only when
/// A_0^{t,+} holds a set with fewer than t elements.
pub fn verify_sum_route(f: &SetFamily, t: usize, k: usize, guards: &SearchGuards) -> Result<VerificationReport> {
    let (h0, mask) = best_sum_subfamily(f, t, k, guards.subfamily_members)?;
    let route = max_sum_exact_with(f, t, k, guards)?;
    let search = labeling_search(f, t, k, Objective::Sum, guards)?;
    let g = MaskGraph::new(f, t);
    let plus = g.plus(mask).count_ones() as usize;
    let minus = mask.count_ones() as usize - plus;
    let big_mask = f
        .members()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.len() >= t)
        .fold(0u64, |b, (i, _)| b | 1 << i);
    let union_mask = search
        .labeling
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l != 0)
        .fold(0u64, |b, (i, _)| b | 1 << i);
    let h_union = union_mask.count_ones() as u64 + (k as u64 - 1) * (g.plus(union_mask) & big_mask).count_ones() as u64;
    let mut rep = VerificationReport::new("prop-4.4", instance(f, t, k));
    rep.value("g_of_a0", Rational::from_int(plus as i64) + Rational::new(minus as i64, k as i64))
        .value("uncorrected_sum", k * plus + minus)
        .value("small_plus_members", (g.plus(mask) & !big_mask).count_ones() as usize)
        .witness("a0", Witness::Family(f.subfamily_mask(mask)));
    record(&mut rep, "route_sum", &route, t);
    record(&mut rep, "search_sum", &search, t);
    rep.check(route.value == search.value, "subfamily route and labeling search disagree");
    rep.check(route.value == BigUint::from(h0), "route value differs from its subfamily score");
    rep.check(h_union == h0, "union of an optimal labeling scores differently from A_0");
    Ok(rep.finish())
}
