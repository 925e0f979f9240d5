//! Claim catalog and the orchestrator that runs claim checks over their
//! instance grids.

use std::path::PathBuf;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::cross::{
    am_gm_holds, cyclic_cover_holds, max_product_exact_with, max_sum_exact_with, optimal_labelings,
    product_extension_check, verify_example_sum, verify_example_trivial, verify_geomthm_with,
    verify_main_theorem_with, verify_prodext_with, verify_sum_route, verify_summax2_with,
    verify_summax3_with, verify_summax4_with, verify_union_decomposition, Objective, SearchGuards,
};
use crate::error::{Error, Result};
use crate::extremal::{
    beta_of, beta_with_guard, describe, ell, verify_beta_bounds, verify_eq4_implication,
    verify_pointwise_inequality, BETA_GUARD,
};
use crate::family::{alpha, decompose, is_t_intersecting, FamilyMeta, MemberSet, SetFamily};
use crate::generators::*;
use crate::rational::Rational;
use crate::report::{write_report, ReportFormat, VerificationReport, Witness};
use crate::symmetry::{
    brute_force_t_symmetric, is_t_symmetric_via_generators, verify_wz, GroundPermutation, SymmetryBasis,
};

/// Largest accepted overrides, one per guard.
pub const MAX_LABELING_LOG2: u32 = 40;
pub const MAX_ENUMERATION_LOG2: u32 = 34;
pub const MAX_SUBFAMILY_MEMBERS: usize = 30;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Claims the suite knows how to check, with a one-line description.
pub const CLAIMS: &[(&str, &str)] = &[
    ("eq-4", "beta = l/|F| forces F = F^{t,+} or F = F^{t,-}; converse fails"),
    ("ex-3.3", "beta of the star-with-union family is 1/n"),
    ("ex-3.5", "beta of the family with extra disjoint t-sets is 1/n < l/|F|"),
    ("ex-4.6", "n+k beats both |F| and k*l on the extra-sets family"),
    ("ex-4.7", "the trivial configuration is optimal for 2 <= k <= m"),
    ("lem-1.3", "AM-GM on every search output"),
    ("lem-2.1", "union decomposition of cross-t-intersecting tuples"),
    ("lem-5.2", "constant optimality for p families extends to k >= p"),
    ("lem-5.3", "subset product domination extends to the full product"),
    ("prop-3.1", "1/|F| <= beta <= l/|F|"),
    ("prop-3.2", "|A^{t,+}| + beta |A^{t,-}| <= l for all A"),
    ("prop-4.4", "maximum sum through the best subfamily score"),
    ("prop-4.5", "witness beating k*l when k < kappa and F^{t,+} is nonempty"),
    ("symmetry", "generator certificates, brute force, and a non-symmetric control"),
    ("thm-1.1", "k >= kappa: max sum k*l, max product l^k, constant optima"),
    ("thm-1.2", "max sum = k*l iff k >= kappa"),
    ("thm-3.10", "l(2^[n],t) = |K_{n,t}| and beta(2^[n],t) = |K_{n,t}|/2^n"),
    ("thm-3.6", "beta(2^[n],1) = 1/2"),
    ("thm-3.7", "power set sum and product maxima for t = 1"),
    ("thm-3.8", "the pointwise inequality on t-symmetric families"),
    ("thm-4.2", "maximum sum when beta = l/|F|"),
    ("thm-5.4", "line families: constant configuration beaten below kappa"),
    ("thm-5.5", "power set product maxima for t >= 1"),
    ("thm-5.6", "uniform product maxima for t = 1"),
    ("thm-5.7", "uniform product maxima for t >= 1 (large-n bound, reported)"),
    ("thm-5.9", "permutation product maxima (n = 3 value reported)"),
    ("beta-uniform", "beta(C([n],r),1) = r/n"),
];

/// Claims that cannot be checked at desk scale.
pub const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("thm-5.8", "asymptotic statement, holds only for n sufficiently large"),
    ("thm-5.10", "asymptotic statement, holds only for n sufficiently large"),
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.0).collect()
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Empty selects every claim in [`CLAIMS`].
    pub claims: Vec<String>,
    pub guards: SearchGuards,
    /// Member limit for exhaustive β computations.
    pub beta_guard: usize,
    /// 0 lets the thread pool choose.
    pub threads: usize,
    pub seed: u64,
    /// Random families per randomized claim.
    pub random_instances: usize,
    /// Restricts the line-family grid to one p.
    pub line_p: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: ReportFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            claims: Vec::new(),
            guards: SearchGuards::default(),
            beta_guard: BETA_GUARD,
            threads: 0,
            seed: DEFAULT_SEED,
            random_instances: 20,
            line_p: None,
            output: None,
            format: ReportFormat::Json,
        }
    }
}

impl SuiteConfig {
    pub fn with_claims<S: AsRef<str>>(claims: &[S]) -> Self {
        SuiteConfig {
            claims: claims.iter().map(|c| c.as_ref().to_string()).collect(),
            ..SuiteConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.guards;
        if g.labeling_log2 > MAX_LABELING_LOG2 {
            return Err(Error::guard("labeling guard (log2)", g.labeling_log2, MAX_LABELING_LOG2));
        }
        if g.enumeration_log2 > MAX_ENUMERATION_LOG2 {
            return Err(Error::guard("enumeration guard (log2)", g.enumeration_log2, MAX_ENUMERATION_LOG2));
        }
        if g.subfamily_members > MAX_SUBFAMILY_MEMBERS {
            return Err(Error::guard("subfamily guard", g.subfamily_members, MAX_SUBFAMILY_MEMBERS));
        }
        if self.beta_guard > MAX_SUBFAMILY_MEMBERS {
            return Err(Error::guard("beta guard", self.beta_guard, MAX_SUBFAMILY_MEMBERS));
        }
        if let Some(p) = self.line_p {
            if !(3..=4).contains(&p) {
                return Err(Error::guard("p for the line family", p, 4));
            }
        }
        Ok(())
    }

    fn selected(&self) -> Result<Vec<&'static str>> {
        if self.claims.is_empty() {
            return Ok(claim_ids());
        }
        let mut out = Vec::new();
        for c in &self.claims {
            if let Some((id, reason)) = OUT_OF_SCOPE.iter().find(|o| o.0 == c) {
                return Err(Error::OutOfScope { id: id.to_string(), reason });
            }
            match CLAIMS.iter().find(|x| x.0 == c) {
                Some(x) if !out.contains(&x.0) => out.push(x.0),
                Some(_) => {}
                None => return Err(Error::UnknownClaim(c.clone())),
            }
        }
        Ok(out)
    }
}

type Check = Box<dyn Fn(&SuiteConfig) -> Result<Vec<VerificationReport>> + Send + Sync>;

struct Job {
    claim: &'static str,
    instance: String,
    run: Check,
}

fn job(claim: &'static str, instance: impl Into<String>, run: impl Fn(&SuiteConfig) -> Result<VerificationReport> + Send + Sync + 'static) -> Job {
    Job {
        claim,
        instance: instance.into(),
        run: Box::new(move |c| run(c).map(|r| vec![r])),
    }
}

/// Runs the selected claims, sorted by claim id then instance. Failures of
/// single checks (guards, inapplicable hypotheses) become failed reports.
/// Writes the reports when `cfg.output` is set.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let jobs: Vec<Job> = cfg.selected()?.into_iter().flat_map(|c| jobs_for(c, cfg)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let mut reports: Vec<VerificationReport> = pool.install(|| {
        jobs.par_iter()
            .flat_map_iter(|j| match (j.run)(cfg) {
                Ok(r) => r,
                Err(e) => vec![VerificationReport::errored(j.claim, &j.instance, &e)],
            })
            .collect()
    });
    reports.sort_by(|a, b| (&a.claim_id, &a.instance).cmp(&(&b.claim_id, &b.instance)));
    if let Some(path) = &cfg.output {
        write_report(&reports, path, cfg.format)?;
    }
    Ok(reports)
}

/// A seeded generator for the `index`-th random instance of a run.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random family with at most `max_members` distinct sets over a ground set
/// of at most `max_ground` elements, resampled until α(F) >= t.
pub fn random_family<R: Rng>(rng: &mut R, max_ground: usize, max_members: usize, t: usize) -> SetFamily {
    assert!(t >= 1 && t <= max_ground && max_ground <= 16 && max_members >= 1);
    loop {
        let n = rng.gen_range(t..=max_ground);
        let cap = max_members.min(1 << n);
        let m = rng.gen_range(1..=cap);
        let mut all: Vec<u128> = (0..1u128 << n).collect();
        all.shuffle(rng);
        let members = all[..m].iter().map(|&b| MemberSet::from_bits(b)).collect();
        let f = SetFamily::new(n, members).expect("distinct in-range sets");
        if alpha(&f).is_ok_and(|a| a >= t) {
            return f;
        }
    }
}

/// A random cross-t-intersecting tuple of 2..=4 subfamilies of a random
/// family: members are visited in random order and given a random set of
/// indices, kept only when compatible with everything placed so far.
pub fn random_cross_tuple<R: Rng>(rng: &mut R, max_ground: usize, max_members: usize, t: usize) -> Vec<SetFamily> {
    let f = random_family(rng, max_ground, max_members, t);
    let k = rng.gen_range(2..=4usize);
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.shuffle(rng);
    let mut placed: Vec<(MemberSet, u64)> = Vec::new();
    for i in order {
        let a = f.get(i);
        let lab: u64 = rng.gen_range(0..1u64 << k);
        let fits = |b: &MemberSet, lb: u64| {
            (0..k).all(|x| {
                (0..k).all(|y| x == y || lab >> x & 1 == 0 || lb >> y & 1 == 0 || a.intersection_len(b) >= t)
            })
        };
        if lab != 0 && fits(&a, lab) && placed.iter().all(|(b, lb)| fits(b, *lb)) {
            placed.push((a, lab));
        }
    }
    (0..k)
        .map(|x| {
            let m = placed.iter().filter(|(_, l)| l >> x & 1 == 1).map(|(b, _)| *b).collect();
            SetFamily::new(f.ground_size(), m).expect("subfamily")
        })
        .collect()
}

fn random_instance(seed: u64, index: usize, t: usize) -> SetFamily {
    let mut rng = instance_rng(seed, index as u64);
    let f = random_family(&mut rng, 6, 9, t);
    let mut meta = FamilyMeta {
        generator: Some("random".into()),
        ..FamilyMeta::default()
    };
    meta.params.insert("index".into(), json!(index));
    meta.params.insert("seed".into(), json!(seed));
    meta.params.insert("t".into(), json!(t));
    f.with_meta(meta)
}

fn ceil_kappa(f: &SetFamily, t: usize, beta_guard: usize) -> Result<(Rational, usize)> {
    let kappa = beta_with_guard(f, t, beta_guard)?.kappa;
    Ok((kappa, kappa.ceil().max(1) as usize))
}

fn pow(base: usize, k: usize) -> BigUint {
    BigUint::from(base).pow(k as u32)
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn fixed_families() -> Vec<(SetFamily, usize)> {
    vec![
        (gen_powerset(3).unwrap(), 1),
        (gen_powerset(3).unwrap(), 2),
        (gen_example1(3, 1).unwrap(), 1),
        (gen_example2(3, 2, 1).unwrap(), 1),
        (gen_uniform(5, 2).unwrap(), 1),
        (gen_lines(3, 1, None, None).unwrap(), 1),
    ]
}

fn jobs_for(claim: &'static str, cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    match claim {
        "thm-3.6" => {
            for n in 2..=4 {
                jobs.push(job(claim, format!("n={n}"), move |c| {
                    let f = gen_powerset(n)?;
                    let b = beta_with_guard(&f, 1, c.beta_guard)?;
                    let mut rep = VerificationReport::new(claim, describe(&f) + ",t=1");
                    rep.value("beta", b.beta).value("ell", b.ell).value("size", f.len());
                    rep.witness("witness", Witness::Family(b.witness));
                    rep.check(b.beta == Rational::new(1, 2), "beta differs from 1/2");
                    Ok(rep.finish())
                }));
            }
        }
        "thm-3.10" => {
            for n in 1..=7 {
                for t in 1..=n {
                    jobs.push(job(claim, format!("n={n},t={t}"), move |c| {
                        let f = gen_powerset(n)?;
                        let kat = gen_katona(n, t)?;
                        let l = ell(&f, t)?.value;
                        let mut rep = VerificationReport::new(claim, format!("{},t={t}", describe(&f)));
                        rep.value("ell", l).value("katona", kat.len());
                        rep.check(l == kat.len(), "l differs from |K_{n,t}|");
                        rep.check(is_t_intersecting(&kat, t), "K_{n,t} is not t-intersecting");
                        if n <= 4 {
                            let b = beta_with_guard(&f, t, c.beta_guard)?;
                            let expected = Rational::ratio(kat.len(), 1 << n);
                            rep.value("beta", b.beta).value("expected_beta", expected);
                            rep.check(b.beta == expected, "beta differs from |K_{n,t}|/2^n");
                        }
                        Ok(rep.finish())
                    }));
                }
            }
        }
        "beta-uniform" => {
            for (n, r) in [(4, 2), (5, 2), (6, 2), (6, 3)] {
                jobs.push(job(claim, format!("n={n},r={r}"), move |c| {
                    let f = gen_uniform(n, r)?;
                    let b = beta_with_guard(&f, 1, c.beta_guard)?;
                    let mut rep = VerificationReport::new(claim, describe(&f) + ",t=1");
                    rep.value("beta", b.beta).value("ell", b.ell).value("size", f.len());
                    rep.check(b.beta == Rational::ratio(r, n), "beta differs from r/n");
                    Ok(rep.finish())
                }));
            }
        }
        "ex-3.3" => {
            for n in 2..=4 {
                for t in 1..=2 {
                    jobs.push(job(claim, format!("n={n},t={t}"), move |c| {
                        let f = gen_example1(n, t)?;
                        let b = beta_with_guard(&f, t, c.beta_guard)?;
                        let at_f = beta_of(&f, t, &f)?;
                        let d = decompose(&f, t);
                        let mut rep = VerificationReport::new(claim, format!("{},t={t}", describe(&f)));
                        rep.value("beta", b.beta)
                            .value("beta_at_f", at_f)
                            .value("ell", b.ell)
                            .value("plus", d.plus.len())
                            .value("minus", d.minus.len());
                        let inv_n = Rational::ratio(1, n);
                        rep.check(b.beta == inv_n, "beta differs from 1/n");
                        rep.check(at_f == inv_n, "beta(F,t,F) differs from 1/n");
                        rep.check(d.plus.len() == 1 && d.minus.len() == n, "decomposition is not {F_{n+1}} / n sets");
                        rep.check(
                            Rational::ratio(1, f.len()) < b.beta && b.beta < Rational::ratio(b.ell, f.len()),
                            "beta is not strictly between 1/|F| and l/|F|",
                        );
                        Ok(rep.finish())
                    }));
                }
            }
        }
        "ex-3.5" => {
            for (n, m) in [(3, 2), (4, 2), (4, 3)] {
                for t in 1..=2 {
                    jobs.push(job(claim, format!("n={n},m={m},t={t}"), move |c| {
                        let f = gen_example2(n, m, t)?;
                        let b = beta_with_guard(&f, t, c.beta_guard)?;
                        let mut rep = VerificationReport::new(claim, format!("{},t={t}", describe(&f)));
                        rep.value("beta", b.beta).value("ell", b.ell).value("size", f.len());
                        rep.check(b.beta == Rational::ratio(1, n), "beta differs from 1/n");
                        rep.check(decompose(&f, t).plus.is_empty(), "F^{t,+} is not empty");
                        rep.check(b.beta < Rational::ratio(b.ell, f.len()), "beta is not below l/|F|");
                        Ok(rep.finish())
                    }));
                }
            }
        }
        "ex-4.6" => jobs.push(job(claim, "n=4,m=2,t=1,k=3", |c| verify_example_sum(4, 2, 1, 3, &c.guards))),
        "ex-4.7" => {
            for (n, m, k) in [(4, 2, 2), (4, 3, 2), (4, 3, 3)] {
                jobs.push(job(claim, format!("n={n},m={m},k={k}"), move |c| {
                    verify_example_trivial(n, m, 1, k, &c.guards)
                }));
            }
        }
        "thm-1.1" | "thm-1.2" | "prop-4.4" => {
            // The last field marks k < κ, outside the scope of thm-1.1.
            let fixed: Vec<(fn() -> Result<SetFamily>, usize, usize, bool)> = vec![
                (|| gen_powerset(3), 1, 2, false),
                (|| gen_powerset(3), 1, 3, false),
                (|| gen_example1(3, 1), 1, 2, true),
                (|| gen_example1(3, 1), 1, 3, false),
                (|| gen_example1(3, 1), 1, 4, false),
                (|| gen_uniform(4, 2), 1, 3, false),
                (|| gen_example2(4, 2, 1), 1, 3, true),
                (|| gen_lines(3, 1, None, None), 1, 3, false),
            ];
            for (gen, t, k, below) in fixed {
                if below && claim == "thm-1.1" {
                    continue;
                }
                jobs.push(job(claim, format!("fixed:{},t={t},k={k}", gen().map(|f| describe(&f)).unwrap_or_default()), move |c| {
                    run_sum_claim(claim, &gen()?, t, k, c)
                }));
            }
            for i in 0..cfg.random_instances {
                let t = 1 + i % 2;
                jobs.push(Job {
                    claim,
                    instance: format!("random:{i}"),
                    run: Box::new(move |c| {
                        let f = random_instance(c.seed, i, t);
                        let (_, ck) = ceil_kappa(&f, t, c.beta_guard)?;
                        let ks: Vec<usize> = match claim {
                            "thm-1.1" => vec![ck, ck + 1],
                            _ => (1..=ck + 1).collect(),
                        };
                        ks.into_iter().map(|k| run_sum_claim(claim, &f, t, k, c)).collect()
                    }),
                });
            }
        }
        "thm-4.2" => {
            let grid: Vec<(fn() -> Result<SetFamily>, usize)> = vec![
                (|| gen_powerset(3), 2),
                (|| gen_powerset(3), 3),
                (|| gen_powerset(3), 4),
                (|| gen_powerset(4), 2),
                (|| gen_uniform(6, 2), 2),
            ];
            for (gen, k) in grid {
                jobs.push(job(claim, format!("k={k}"), move |c| verify_summax3_with(&gen()?, 1, k, &c.guards)));
            }
        }
        "prop-4.5" => {
            for k in 2..=3 {
                jobs.push(job(claim, format!("k={k}"), move |c| {
                    verify_summax4_with(&gen_example1(4, 1)?, 1, k, &c.guards)
                }));
            }
        }
        "prop-3.1" | "prop-3.2" | "eq-4" => {
            for (i, (f, t)) in fixed_families().into_iter().enumerate() {
                jobs.push(job(claim, format!("#{i}"), move |c| match claim {
                    "prop-3.1" => verify_beta_bounds(&f, t),
                    "prop-3.2" => verify_pointwise_inequality(&f, t, beta_with_guard(&f, t, c.beta_guard)?.beta),
                    _ => verify_eq4_implication(&f, t),
                }));
            }
        }
        "thm-3.8" => {
            for (name, f, gens) in symmetric_instances() {
                jobs.push(job(claim, name, move |_| {
                    let cert = is_t_symmetric_via_generators(&f, 1, &gens)?;
                    verify_wz(&f, 1, SymmetryBasis::Certified(&cert))
                }));
            }
        }
        "symmetry" => {
            for (name, f, gens) in symmetric_instances() {
                jobs.push(job(claim, name, move |_| {
                    let cert = is_t_symmetric_via_generators(&f, 1, &gens)?;
                    let brute = brute_force_t_symmetric(&f, 1)?;
                    let mut rep = VerificationReport::new(claim, describe(&f) + ",t=1");
                    rep.value("generators", cert.is_t_symmetric)
                        .value("brute_force", brute.is_t_symmetric)
                        .value("orbits", cert.orbit_count);
                    rep.check(cert.is_t_symmetric, "generators do not act transitively");
                    rep.check(brute.is_t_symmetric, "brute force rejects a generator-certified family");
                    Ok(rep.finish())
                }));
            }
            jobs.push(job(claim, "control:gen_example1(n=3,t=1)", move |_| {
                let f = gen_example1(3, 1)?;
                let brute = brute_force_t_symmetric(&f, 1)?;
                let wz = verify_wz(&f, 1, SymmetryBasis::Override)?;
                let violated = matches!(wz.get("violated_at_full"), Some(q) if q.to_json() == json!(true));
                let mut rep = VerificationReport::new(claim, describe(&f) + ",t=1,control");
                rep.value("brute_force", brute.is_t_symmetric)
                    .value("orbits", brute.orbit_count)
                    .value("violated_at_full", violated)
                    .value("override_report_passed", wz.passed);
                rep.check(!brute.is_t_symmetric, "brute force calls the control t-symmetric");
                rep.check(violated && !wz.passed, "inequality holds at A = F on the control");
                Ok(rep.finish())
            }));
        }
        "thm-3.7" => {
            for n in 2..=3 {
                for k in 2..=3 {
                    jobs.push(job(claim, format!("n={n},k={k}"), move |c| powerset_t1(n, k, c)));
                }
            }
        }
        "thm-5.5" => {
            for n in 2..=4 {
                for t in 1..=n {
                    for k in 2..=3 {
                        jobs.push(job(claim, format!("n={n},t={t},k={k}"), move |c| powerset_product(n, t, k, c)));
                    }
                }
            }
        }
        "thm-5.6" => {
            for (n, r, k) in [(4, 2, 2), (5, 2, 2), (6, 2, 2), (4, 2, 3), (5, 2, 3)] {
                jobs.push(job(claim, format!("n={n},r={r},k={k}"), move |c| {
                    let f = gen_uniform(n, r)?;
                    let res = max_product_exact_with(&f, 1, k, &c.guards)?;
                    let expected = pow(binom(n - 1, r - 1), k);
                    let mut rep = VerificationReport::new(claim, format!("{},t=1,k={k}", describe(&f)));
                    rep.value("max_product", res.value.clone()).value("expected", expected.clone());
                    rep.witness("optimum", Witness::Labels(res.labeling.to_lists()));
                    rep.check(am_gm_holds(&res.sizes()), "AM-GM violated");
                    rep.check(res.value == expected, "max product differs from C(n-1,r-1)^k");
                    Ok(rep.finish())
                }));
            }
        }
        "thm-5.7" => {
            for (n, r, t) in [(5, 3, 2), (6, 2, 2), (6, 3, 2)] {
                jobs.push(job(claim, format!("n={n},r={r},t={t}"), move |c| {
                    let f = gen_uniform(n, r)?;
                    let res = max_product_exact_with(&f, t, 2, &c.guards)?;
                    let bound = pow(binom(n - t, r - t), 2);
                    let mut rep = VerificationReport::new(claim, format!("{},t={t},k=2", describe(&f)));
                    rep.value("max_product", res.value.clone())
                        .value("large_n_value", bound.clone())
                        .value("matches_large_n_value", res.value == bound)
                        .value("asserted", false);
                    rep.check(am_gm_holds(&res.sizes()), "AM-GM violated");
                    Ok(rep.finish())
                }));
            }
        }
        "thm-5.9" => {
            jobs.push(job(claim, "r=3,n=3,k=2", move |c| {
                let f = gen_permutations(3, 3)?;
                let res = max_product_exact_with(&f, 1, 2, &c.guards)?;
                let l = ell(&f, 1)?.value;
                let theorem_value = pow(2, 2);
                let mut rep = VerificationReport::new(claim, describe(&f) + ",t=1,k=2");
                rep.value("ell", l)
                    .value("max_product", res.value.clone())
                    .value("theorem_value_n_ge_4", theorem_value.clone())
                    .value("matches_theorem_value", res.value == theorem_value)
                    .value("asserted", false);
                rep.witness("optimum", Witness::Labels(res.labeling.to_lists()));
                rep.check(l == 2, "l differs from (n-1)!");
                rep.check(am_gm_holds(&res.sizes()), "AM-GM violated");
                Ok(rep.finish())
            }));
        }
        "thm-5.4" => {
            let ps: Vec<usize> = cfg.line_p.map_or(vec![3, 4], |p| vec![p]);
            for p in ps {
                for t in 1..=2 {
                    for k in 2..=p {
                        jobs.push(job(claim, format!("p={p},t={t},k={k}"), move |c| verify_geomthm_with(p, t, k, &c.guards)));
                    }
                }
            }
        }
        "lem-1.3" => jobs.push(job(claim, "search outputs", am_gm_aggregate)),
        "lem-2.1" => jobs.push(job(claim, "500 random tuples", union_aggregate)),
        "lem-5.2" => {
            let grid: Vec<(fn() -> Result<SetFamily>, usize, usize, usize)> = vec![
                (|| gen_powerset(3), 1, 2, 3),
                (|| gen_powerset(3), 1, 2, 4),
                (|| gen_uniform(5, 2), 1, 2, 3),
                (|| gen_lines(3, 1, None, None), 1, 3, 4),
            ];
            for (gen, t, p, k) in grid {
                jobs.push(job(claim, format!("{},t={t},p={p},k={k}", gen().map(|f| describe(&f)).unwrap_or_default()), move |c| {
                    verify_prodext_with(&gen()?, t, p, k, &c.guards)
                }));
            }
        }
        "lem-5.3" => {
            jobs.push(job(claim, "cyclic cover k<=8", move |_| {
                let mut rep = VerificationReport::new(claim, "cyclic cover, 1<=p<=k<=8");
                let mut checked = 0usize;
                for k in 1..=8 {
                    for p in 1..=k {
                        checked += 1;
                        rep.check(cyclic_cover_holds(k, p), format!("cover fails for k={k}, p={p}"));
                    }
                }
                rep.value("pairs_checked", checked);
                Ok(rep.finish())
            }));
            jobs.push(job(claim, "100 random inputs", product_extension_aggregate));
        }
        _ => unreachable!("catalog and dispatch out of sync: {claim}"),
    }
    jobs
}

fn run_sum_claim(claim: &str, f: &SetFamily, t: usize, k: usize, c: &SuiteConfig) -> Result<VerificationReport> {
    match claim {
        "thm-1.1" => verify_main_theorem_with(f, t, k, &c.guards),
        "thm-1.2" => verify_summax2_with(f, t, k, &c.guards),
        _ => verify_sum_route(f, t, k, &c.guards),
    }
}

fn symmetric_instances() -> Vec<(String, SetFamily, Vec<GroundPermutation>)> {
    let sym = |n: usize| {
        vec![
            GroundPermutation::cycle(n, &[0, 1]).unwrap(),
            GroundPermutation::cycle(n, &(0..n).collect::<Vec<_>>()).unwrap(),
        ]
    };
    // Element x*m + y: permute the coordinates x, and the values y at x = 0.
    let signed = |n: usize, m: usize| {
        let at = |x: usize, y: usize| x * m + y;
        let coords = |perm: &dyn Fn(usize) -> usize| {
            let mut img = vec![0; n * m];
            for x in 0..n {
                for y in 0..m {
                    img[at(x, y)] = at(perm(x), y);
                }
            }
            GroundPermutation::new(img).unwrap()
        };
        let values = |perm: &dyn Fn(usize) -> usize| {
            let mut img: Vec<usize> = (0..n * m).collect();
            for y in 0..m {
                img[at(0, y)] = at(0, perm(y));
            }
            GroundPermutation::new(img).unwrap()
        };
        vec![
            coords(&|x| if x < 2 { 1 - x } else { x }),
            coords(&|x| (x + 1) % n),
            values(&|y| if y < 2 { 1 - y } else { y }),
            values(&|y| (y + 1) % m),
        ]
    };
    vec![
        ("gen_uniform(4,2)".into(), gen_uniform(4, 2).unwrap(), sym(4)),
        ("gen_uniform(5,2)".into(), gen_uniform(5, 2).unwrap(), sym(5)),
        ("gen_signed(2,2,2)".into(), gen_signed(2, 2, 2).unwrap(), signed(2, 2)),
    ]
}

fn constant_largest_only(f: &SetFamily, t: usize, l: usize, k: usize, obj: Objective, c: &SuiteConfig) -> Result<(usize, bool)> {
    let (_, optima) = optimal_labelings(f, t, k, obj, &c.guards)?;
    let ok = optima.iter().all(|lab| {
        let fams = lab.decode(f);
        lab.is_constant() && fams[0].len() == l && is_t_intersecting(&fams[0], t)
    });
    Ok((optima.len(), ok))
}

fn powerset_t1(n: usize, k: usize, c: &SuiteConfig) -> Result<VerificationReport> {
    let f = gen_powerset(n)?;
    let sum = max_sum_exact_with(&f, 1, k, &c.guards)?;
    let prod = max_product_exact_with(&f, 1, k, &c.guards)?;
    let mut rep = VerificationReport::new("thm-3.7", format!("{},t=1,k={k}", describe(&f)));
    rep.value("max_sum", sum.value.clone()).value("max_product", prod.value.clone());
    rep.check(sum.value == BigUint::from(k << (n - 1)), "max sum differs from k*2^(n-1)");
    rep.check(prod.value == pow(2, k * (n - 1)), "max product differs from 2^(k(n-1))");
    rep.check(am_gm_holds(&sum.sizes()) && am_gm_holds(&prod.sizes()), "AM-GM violated");
    if k > 2 {
        let l = 1 << (n - 1);
        for obj in [Objective::Sum, Objective::Product] {
            let (count, only) = constant_largest_only(&f, 1, l, k, obj, c)?;
            rep.value(&format!("{}_optima", obj.name()), count);
            rep.check(only, format!("a {} optimum is not a constant largest configuration", obj.name()));
        }
    }
    Ok(rep.finish())
}

fn powerset_product(n: usize, t: usize, k: usize, c: &SuiteConfig) -> Result<VerificationReport> {
    let f = gen_powerset(n)?;
    let count = |pred: &dyn Fn(usize, usize) -> bool| {
        (0..1usize << n)
            .filter(|&a| pred(a.count_ones() as usize, (a & ((1 << (n - 1)) - 1)).count_ones() as usize))
            .count()
    };
    // Doubled thresholds keep (n+t)/2 and (n+t-1)/2 exact.
    let k1 = count(&|s, _| 2 * s >= n + t);
    let k2 = count(&|_, s| 2 * s + 1 >= n + t);
    let k3 = count(&|s, _| 2 * s + 1 >= n + t);
    let prod = max_product_exact_with(&f, t, k, &c.guards)?;
    let mut rep = VerificationReport::new("thm-5.5", format!("{},t={t},k={k}", describe(&f)));
    rep.value("max_product", prod.value.clone()).value("k1", k1);
    rep.witness("optimum", Witness::Labels(prod.labeling.to_lists()));
    rep.check(am_gm_holds(&prod.sizes()), "AM-GM violated");
    if (n + t) % 2 == 0 {
        rep.value("case", "even");
        rep.check(prod.value == pow(k1, k), "max product differs from |K_1|^k");
    } else {
        rep.value("case", "odd").value("k2", k2).value("k3", k3);
        if k == 2 {
            let bound = pow(k2, 2).max(BigUint::from(k1 * k3));
            rep.value("bound", bound.clone());
            rep.check(prod.value <= bound, "max product exceeds max(|K_2|^2, |K_1||K_3|)");
        }
    }
    Ok(rep.finish())
}

fn am_gm_aggregate(c: &SuiteConfig) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("lem-1.3", "search outputs and random vectors");
    let cases: Vec<(SetFamily, usize, usize)> = vec![
        (gen_powerset(3)?, 1, 2),
        (gen_powerset(3)?, 1, 3),
        (gen_example2(4, 2, 1)?, 1, 3),
        (gen_uniform(5, 2)?, 1, 2),
        (gen_lines(3, 1, None, None)?, 1, 2),
    ];
    let mut outputs = 0usize;
    for (f, t, k) in &cases {
        for r in [max_sum_exact_with(f, *t, *k, &c.guards)?, max_product_exact_with(f, *t, *k, &c.guards)?] {
            outputs += 1;
            rep.check(am_gm_holds(&r.sizes()), format!("AM-GM fails on {} k={k}: {:?}", describe(f), r.sizes()));
        }
    }
    let mut rng = instance_rng(c.seed, 1_000_003);
    for _ in 0..200 {
        let v: Vec<usize> = (0..rng.gen_range(1..=6)).map(|_| rng.gen_range(0..=20)).collect();
        rep.check(am_gm_holds(&v), format!("AM-GM fails on {v:?}"));
    }
    rep.value("search_outputs", outputs).value("random_vectors", 200usize);
    Ok(rep.finish())
}

fn union_aggregate(c: &SuiteConfig) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("lem-2.1", "500 random cross-t-intersecting tuples");
    let mut rng = instance_rng(c.seed, 2_000_003);
    let mut nonempty = 0usize;
    for i in 0..500 {
        let t = 1 + i % 2;
        let tuple = random_cross_tuple(&mut rng, 6, 9, t);
        nonempty += usize::from(tuple.iter().any(|x| !x.is_empty()));
        match verify_union_decomposition(&tuple, t) {
            Ok(r) => {
                for e in r.failures {
                    rep.check(false, format!("tuple {i}: {e}"));
                }
            }
            Err(e) => {
                rep.check(false, format!("tuple {i}: {e}"));
            }
        }
    }
    rep.value("tuples", 500usize).value("nonempty_tuples", nonempty);
    Ok(rep.finish())
}

fn product_extension_aggregate(c: &SuiteConfig) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("lem-5.3", "100 random hypothesis-satisfying inputs");
    let mut rng = instance_rng(c.seed, 3_000_003);
    let mut accepted = 0usize;
    let mut tries = 0usize;
    while accepted < 100 {
        tries += 1;
        let k = rng.gen_range(2..=6);
        let p = rng.gen_range(1..=k);
        let y: Vec<Rational> = (0..k).map(|_| Rational::new(rng.gen_range(0..=6), rng.gen_range(1..=3))).collect();
        // Half the draws are dominated coordinatewise, half are free.
        let x: Vec<Rational> = if tries % 2 == 0 {
            y.iter().map(|v| *v * Rational::new(rng.gen_range(0..=4), 4)).collect()
        } else {
            (0..k).map(|_| Rational::new(rng.gen_range(0..=6), rng.gen_range(1..=3))).collect()
        };
        match product_extension_check(&x, &y, p) {
            Ok(r) => {
                accepted += 1;
                for e in r.failures {
                    rep.check(false, format!("k={k}, p={p}: {e}"));
                }
            }
            Err(Error::HypothesisFails(_)) => {}
            Err(e) => return Err(e),
        }
    }
    rep.value("inputs", accepted).value("draws", tries);
    Ok(rep.finish())
}

/// Claims that [`verify_family`] can check on an arbitrary family.
pub const FAMILY_CLAIMS: &[&str] = &[
    "eq-4", "lem-5.2", "prop-3.1", "prop-3.2", "prop-4.4", "prop-4.5", "thm-1.1", "thm-1.2", "thm-3.8", "thm-4.2",
];

/// Runs one family-level claim on `f`. `k` is needed by the configuration
/// claims and `p` by lem-5.2; thm-3.8 certifies symmetry by brute force.
pub fn verify_family(
    claim: &str,
    f: &SetFamily,
    t: usize,
    k: Option<usize>,
    p: Option<usize>,
    cfg: &SuiteConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let need_k = || k.ok_or_else(|| Error::InvalidParameter(format!("claim {claim} needs k")));
    let g = &cfg.guards;
    match claim {
        "eq-4" => verify_eq4_implication(f, t),
        "prop-3.1" => verify_beta_bounds(f, t),
        "prop-3.2" => verify_pointwise_inequality(f, t, beta_with_guard(f, t, cfg.beta_guard)?.beta),
        "thm-3.8" => verify_wz(f, t, SymmetryBasis::Certified(&brute_force_t_symmetric(f, t)?)),
        "thm-1.1" => verify_main_theorem_with(f, t, need_k()?, g),
        "thm-1.2" => verify_summax2_with(f, t, need_k()?, g),
        "thm-4.2" => verify_summax3_with(f, t, need_k()?, g),
        "prop-4.4" => verify_sum_route(f, t, need_k()?, g),
        "prop-4.5" => verify_summax4_with(f, t, need_k()?, g),
        "lem-5.2" => {
            let p = p.ok_or_else(|| Error::InvalidParameter("claim lem-5.2 needs p".into()))?;
            verify_prodext_with(f, t, p, need_k()?, g)
        }
        other if OUT_OF_SCOPE.iter().any(|o| o.0 == other) => {
            let (id, reason) = OUT_OF_SCOPE.iter().find(|o| o.0 == other).expect("found");
            Err(Error::OutOfScope { id: id.to_string(), reason })
        }
        other if CLAIMS.iter().any(|c| c.0 == other) => Err(Error::InvalidParameter(format!(
            "claim {other} runs on its own instance grid, not on an input family"
        ))),
        other => Err(Error::UnknownClaim(other.to_string())),
    }
}
