//! l(F,t), β(F,t,A), β(F,t) and κ(F,t), and checks of the inequalities
//! relating them.
//!
//! β(F,t) is a minimum over all 2^|F| subfamilies; nothing cheaper is known,
//! so it is computed by a pruned depth-first enumeration, with an unpruned
//! reference enumeration kept for cross-checking.

use crate::clique::CliqueSearch;
use crate::conflict::ConflictGraph;
use crate::error::{Error, Result};
use crate::family::{decompose, SetFamily};
use crate::rational::Rational;
use crate::report::{VerificationReport, Witness};
use crate::subsets::{above, full_mask, lex_less, MaskGraph};

/// Largest family accepted by the pruned β enumeration.
pub const BETA_GUARD: usize = 24;
/// Largest family accepted by the unpruned reference enumeration.
pub const REFERENCE_GUARD: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllResult {
    pub value: usize,
    /// Lexicographically least largest t-intersecting subfamily.
    pub witness: SetFamily,
    pub indices: Vec<usize>,
}

/// l(F,t), with the canonical-least optimal subfamily as witness.
pub fn ell(f: &SetFamily, t: usize) -> Result<EllResult> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("l"));
    }
    let compat = ConflictGraph::new(f, t).compatibility();
    let search = CliqueSearch::new(&compat);
    let value = search.maximum().len();
    let indices = search
        .least_clique_of(value, &compat)
        .expect("a clique of the maximum size exists");
    Ok(EllResult {
        value,
        witness: f.subfamily(indices.iter().copied()),
        indices,
    })
}

/// l(F,t) without witness extraction.
pub fn ell_value(f: &SetFamily, t: usize) -> Result<usize> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("l"));
    }
    let compat = ConflictGraph::new(f, t).compatibility();
    Ok(CliqueSearch::new(&compat).maximum().len())
}

/// A largest t-intersecting subfamily all of whose members have at least `t`
/// elements, so that it can be repeated across several cross-t-intersecting
/// families. `None` when every member is smaller than `t`.
pub fn repeatable_largest(f: &SetFamily, t: usize) -> Result<Option<SetFamily>> {
    let e = ell(f, t)?;
    if e.value >= 2 || e.witness.members().iter().all(|m| m.len() >= t) {
        return Ok(Some(e.witness));
    }
    Ok(f.members()
        .iter()
        .position(|m| m.len() >= t)
        .map(|i| f.subfamily([i])))
}

/// β(F,t,A).
pub fn beta_of(f: &SetFamily, t: usize, a: &SetFamily) -> Result<Rational> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("beta"));
    }
    if !a.is_subfamily_of(f) || a.ground_size() != f.ground_size() {
        return Err(Error::NotSubfamily);
    }
    let l = ell_value(f, t)?;
    let d = decompose(a, t);
    Ok(if d.minus.is_empty() {
        Rational::ratio(l, f.len())
    } else {
        Rational::ratio(l - d.plus.len(), d.minus.len())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaReport {
    pub beta: Rational,
    pub kappa: Rational,
    pub ell: usize,
    /// Canonical-least subfamily attaining the minimum.
    pub witness: SetFamily,
    pub witness_mask: u64,
    /// β = l/|F|.
    pub attains_upper: bool,
}

fn check_beta_guard(f: &SetFamily, guard: usize) -> Result<()> {
    if f.is_empty() {
        return Err(Error::EmptyFamily("beta"));
    }
    if f.len() > guard {
        return Err(Error::guard("family size for subfamily enumeration", f.len(), guard));
    }
    Ok(())
}

/// Exact fraction with small non-negative parts, compared by
/// cross-multiplication in the hot loops.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    #[inline]
    fn lt(self, o: Frac) -> bool {
        (self.num as u128) * (o.den as u128) < (o.num as u128) * (self.den as u128)
    }
}

struct BetaSearch<'a> {
    g: &'a MaskGraph,
    l: u64,
    best: Frac,
    best_mask: u64,
}

impl BetaSearch<'_> {
    /// Lower bound on β(F,t,X) over X with `s ⊆ X ⊆ s ∪ r` and X^{t,-} ≠ ∅.
    fn lower_bound(&self, s: u64, r: u64) -> Option<Frac> {
        let total = (s | r).count_ones() as u64;
        if total < 2 {
            return None;
        }
        let p_max = (self.g.plus(s).count_ones() as u64 + self.g.free(s, r).count_ones() as u64)
            .min(self.l - 1)
            .min(total - 1);
        let at_zero = Frac {
            num: self.l,
            den: total,
        };
        let at_max = Frac {
            num: self.l - p_max,
            den: total - p_max,
        };
        Some(if at_max.lt(at_zero) { at_max } else { at_zero })
    }

    fn value(&self, s: u64) -> Option<Frac> {
        let plus = self.g.plus(s).count_ones() as u64;
        let minus = s.count_ones() as u64 - plus;
        (minus > 0).then(|| Frac {
            num: self.l - plus,
            den: minus,
        })
    }

    fn dfs(&mut self, s: u64, start: usize) {
        let n = self.g.n;
        for j in start..n {
            let child = s | 1 << j;
            let rest = above(j, n);
            match self.lower_bound(child, rest) {
                Some(lb) if lb.lt(self.best) => {}
                _ => continue,
            }
            if let Some(v) = self.value(child) {
                if v.lt(self.best) {
                    self.best = v;
                    self.best_mask = child;
                }
            }
            self.dfs(child, j + 1);
        }
    }
}

fn build_report(f: &SetFamily, l: usize, beta: Rational, mask: u64) -> BetaReport {
    let upper = Rational::ratio(l, f.len());
    let kappa = beta.recip();
    assert!(kappa <= Rational::ratio(f.len(), 1), "kappa exceeds |F|");
    BetaReport {
        beta,
        kappa,
        ell: l,
        witness: f.subfamily_mask(mask),
        witness_mask: mask,
        attains_upper: beta == upper,
    }
}

/// β(F,t) by pruned enumeration, default guard.
pub fn beta(f: &SetFamily, t: usize) -> Result<BetaReport> {
    beta_with_guard(f, t, BETA_GUARD)
}

pub fn beta_with_guard(f: &SetFamily, t: usize, guard: usize) -> Result<BetaReport> {
    check_beta_guard(f, guard.min(64))?;
    let l = ell_value(f, t)?;
    let g = MaskGraph::new(f, t);
    // The empty subfamily is first in canonical order and has value l/|F|.
    let mut search = BetaSearch {
        g: &g,
        l: l as u64,
        best: Frac {
            num: l as u64,
            den: f.len() as u64,
        },
        best_mask: 0,
    };
    search.dfs(0, 0);
    let beta = Rational::new(search.best.num as i64, search.best.den as i64);
    Ok(build_report(f, l, beta, search.best_mask))
}

/// β(F,t) by evaluating every subfamily, no pruning.
pub fn beta_reference(f: &SetFamily, t: usize) -> Result<BetaReport> {
    check_beta_guard(f, REFERENCE_GUARD)?;
    let l = ell_value(f, t)?;
    let g = MaskGraph::new(f, t);
    let upper = Rational::ratio(l, f.len());
    let mut best = (upper, 0u64);
    for s in 0..=full_mask(f.len()) {
        let plus = g.plus(s).count_ones() as usize;
        let minus = s.count_ones() as usize - plus;
        let v = if minus == 0 {
            upper
        } else {
            Rational::ratio(l - plus, minus)
        };
        if v < best.0 || (v == best.0 && lex_less(s, best.1)) {
            best = (v, s);
        }
    }
    Ok(build_report(f, l, best.0, best.1))
}

/// κ(F,t) = 1/β(F,t).
pub fn kappa(f: &SetFamily, t: usize) -> Result<Rational> {
    Ok(beta(f, t)?.kappa)
}

/// Short instance description: generator and parameters if known.
pub fn describe(f: &SetFamily) -> String {
    let m = f.meta();
    match &m.generator {
        Some(g) => {
            let params: Vec<String> = m.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{g}({})", params.join(","))
        }
        None => format!("family(n={},size={})", f.ground_size(), f.len()),
    }
}

/// Checks |A^{t,+}| + c|A^{t,-}| <= l(F,t) for every A ⊆ F.
pub fn verify_pointwise_inequality(f: &SetFamily, t: usize, c: Rational) -> Result<VerificationReport> {
    check_beta_guard(f, BETA_GUARD)?;
    let mut rep = VerificationReport::new("prop-3.2", format!("{},t={t},c={c}", describe(f)));
    let l = ell_value(f, t)?;
    let g = MaskGraph::new(f, t);
    let (cn, cd) = (c.numer() as i128, c.denom() as i128);
    let mut violations = 0u64;
    let mut first: Option<u64> = None;
    for s in 0..=full_mask(f.len()) {
        let plus = g.plus(s).count_ones() as i128;
        let minus = s.count_ones() as i128 - plus;
        if cd * plus + cn * minus > cd * l as i128 {
            violations += 1;
            if first.is_none_or(|b| lex_less(s, b)) {
                first = Some(s);
            }
        }
    }
    rep.value("ell", l).value("c", c).value("violations", violations);
    if let Some(s) = first {
        rep.witness("first_violation", Witness::Family(f.subfamily_mask(s)));
    }
    rep.check(violations == 0, format!("{violations} subfamilies violate the inequality"));
    Ok(rep.finish())
}

/// Checks 1/|F| <= β <= l/|F| and that the lower bound is attained exactly
/// when no two distinct members t-intersect.
pub fn verify_beta_bounds(f: &SetFamily, t: usize) -> Result<VerificationReport> {
    let b = beta(f, t)?;
    let mut rep = VerificationReport::new("prop-3.1", format!("{},t={t}", describe(f)));
    let lower = Rational::ratio(1, f.len());
    let upper = Rational::ratio(b.ell, f.len());
    let pairwise_conflicting = ConflictGraph::new(f, t).edge_count() == f.len() * (f.len() - 1) / 2;
    rep.value("beta", b.beta)
        .value("lower", lower)
        .value("upper", upper)
        .value("ell", b.ell)
        .value("pairwise_conflicting", pairwise_conflicting)
        .witness("minimizer", Witness::Family(b.witness.clone()));
    rep.check(lower <= b.beta, "beta below 1/|F|");
    rep.check(b.beta <= upper, "beta above l/|F|");
    rep.check(
        (b.beta == lower) == pairwise_conflicting,
        "equality at 1/|F| does not match pairwise conflict",
    );
    Ok(rep.finish())
}

/// Checks that β = l/|F| forces F = F^{t,+} or F = F^{t,-}. Also records
/// whether the instance is a counterexample to the converse.
pub fn verify_eq4_implication(f: &SetFamily, t: usize) -> Result<VerificationReport> {
    let b = beta(f, t)?;
    let mut rep = VerificationReport::new("eq-4", format!("{},t={t}", describe(f)));
    let d = decompose(f, t);
    let split_trivially = d.plus.is_empty() || d.minus.is_empty();
    rep.value("beta", b.beta)
        .value("upper", Rational::ratio(b.ell, f.len()))
        .value("attains_upper", b.attains_upper)
        .value("plus", d.plus.len())
        .value("minus", d.minus.len())
        .value("converse_counterexample", split_trivially && !b.attains_upper);
    if b.attains_upper {
        rep.check(split_trivially, "beta = l/|F| but F has both parts non-empty");
    }
    Ok(rep.finish())
}
