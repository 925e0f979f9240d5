//! `crossint`: generate families, compute l, β, κ, run the exact
//! configuration searches, check t-symmetry, and run the claim suite.
//!
//! Exit status: 0 success, 1 some report failed, 2 usage or guard error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crossint_core::cross::{labeling_search, optimal_labelings, Objective, SearchGuards};
use crossint_core::extremal::{beta_with_guard, ell, BETA_GUARD};
use crossint_core::generators::*;
use crossint_core::io::{family_to_json, parse_family_file};
use crossint_core::report::{write_report, ReportFormat, VerificationReport};
use crossint_core::suite::{run_suite, verify_family, SuiteConfig, CLAIMS, DEFAULT_SEED, FAMILY_CLAIMS, OUT_OF_SCOPE};
use crossint_core::symmetry::{brute_force_t_symmetric, is_t_symmetric_via_generators, GroundPermutation};
use crossint_core::{decompose, Error, Rational, SetFamily};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "crossint", version, about = "Exact tools for cross-t-intersecting set families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Global,
}

#[derive(Args)]
struct Global {
    /// Intersection threshold.
    #[arg(long, global = true, default_value_t = 1)]
    t: usize,
    /// Number of families.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format for `verify`: json or csv.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// log2 limit on the labeling search space.
    #[arg(long = "guard-labeling", global = true)]
    guard_labeling: Option<u32>,
    /// log2 limit on the space searched when enumerating all optima.
    #[arg(long = "guard-enumeration", global = true)]
    guard_enumeration: Option<u32>,
    /// Member limit for subfamily enumeration in the sum route.
    #[arg(long = "guard-subfamily", global = true)]
    guard_subfamily: Option<usize>,
    /// Member limit for exhaustive β.
    #[arg(long = "guard-beta", global = true)]
    guard_beta: Option<usize>,
    /// Worker threads for `verify` (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized instances.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a standard family.
    Gen {
        #[command(subcommand)]
        which: Gen,
    },
    /// Split a family into its t-intersecting core and remainder.
    Decompose { input: PathBuf },
    /// Size of a largest t-intersecting subfamily, with a witness.
    Ell { input: PathBuf },
    /// β(F,t), with a minimizing subfamily.
    Beta { input: PathBuf },
    /// κ(F,t) = 1/β(F,t).
    Kappa { input: PathBuf },
    /// Maximum sum of sizes of k cross-t-intersecting subfamilies.
    SearchSum {
        input: PathBuf,
        /// Also list every optimum, up to relabeling of the families.
        #[arg(long)]
        all_optima: bool,
    },
    /// Maximum product of sizes of k cross-t-intersecting subfamilies.
    SearchProduct {
        input: PathBuf,
        #[arg(long)]
        all_optima: bool,
    },
    /// Decide t-symmetry, from generators when given, else by brute force.
    Symmetry {
        input: PathBuf,
        /// JSON array of ground permutations, each an image vector.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Run claim checks, over the built-in grids or on one input family.
    Verify {
        /// Comma-separated claim ids; all when absent.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        /// Check the claims on this family instead of the built-in grids.
        #[arg(long)]
        input: Option<PathBuf>,
        /// p for lem-5.2 on an input family, or the line family size.
        #[arg(long)]
        p: Option<usize>,
        /// Random families per randomized claim.
        #[arg(long)]
        random_instances: Option<usize>,
        /// Print the claim catalog and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// All subsets of [n].
    Powerset {
        #[arg(long)]
        n: usize,
    },
    /// All r-subsets of [n].
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Subsets of [n] of size at least (n+t)/2 (uses --t).
    Katona {
        #[arg(long)]
        n: usize,
    },
    /// Signed r-sets on n coordinates with m signs.
    Signed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
    /// r-partial permutations of [n] as sets of pairs.
    Permutations {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Partial permutations of [n] with domain size r.
    PartialPermutations {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// n disjoint t-sets and their union (uses --t).
    Example1 {
        #[arg(long)]
        n: usize,
    },
    /// Example1 plus m further disjoint t-sets (uses --t).
    Example2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// The line family on p slopes and p intercepts (uses --t).
    Lines {
        #[arg(long)]
        p: usize,
        /// Comma-separated rationals such as 1,2,3/2.
        #[arg(long, value_delimiter = ',')]
        slopes: Option<Vec<Rational>>,
        #[arg(long, value_delimiter = ',')]
        intercepts: Option<Vec<Rational>>,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}

impl Global {
    fn guards(&self) -> SearchGuards {
        let d = SearchGuards::default();
        SearchGuards {
            labeling_log2: self.guard_labeling.unwrap_or(d.labeling_log2),
            enumeration_log2: self.guard_enumeration.unwrap_or(d.enumeration_log2),
            subfamily_members: self.guard_subfamily.unwrap_or(d.subfamily_members),
        }
    }

    fn suite_config(&self) -> Result<SuiteConfig, Failure> {
        let cfg = SuiteConfig {
            guards: self.guards(),
            beta_guard: self.guard_beta.unwrap_or(BETA_GUARD),
            threads: self.threads,
            seed: self.seed,
            format: self.format.parse()?,
            ..SuiteConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn k(&self) -> Result<usize, Failure> {
        self.k.ok_or_else(|| Failure::Usage("--k is required".into()))
    }

    fn emit(&self, v: &Value) -> Result<(), Failure> {
        if self.format != "json" {
            return Err(Failure::Usage(format!("--format {} is only supported by verify", self.format)));
        }
        let mut text = serde_json::to_string_pretty(v).expect("json");
        text.push('\n');
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io(e.to_string()))?,
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let o = &cli.opts;
    let t = o.t;
    match cli.cmd {
        Cmd::Gen { which } => o.emit(&family_to_json(&generate(which, t)?, true))?,
        Cmd::Decompose { input } => {
            let f = parse_family_file(&input)?;
            let d = decompose(&f, t);
            o.emit(&json!({
                "t": t,
                "plus": family_to_json(&d.plus, false),
                "minus": family_to_json(&d.minus, false),
            }))?
        }
        Cmd::Ell { input } => {
            let f = parse_family_file(&input)?;
            let r = ell(&f, t)?;
            o.emit(&json!({ "t": t, "ell": r.value, "witness": family_to_json(&r.witness, false) }))?
        }
        Cmd::Beta { input } => {
            let f = parse_family_file(&input)?;
            let b = beta_with_guard(&f, t, o.guard_beta.unwrap_or(BETA_GUARD))?;
            o.emit(&json!({
                "t": t,
                "beta": b.beta,
                "kappa": b.kappa,
                "ell": b.ell,
                "size": f.len(),
                "attains_upper": b.attains_upper,
                "witness": family_to_json(&b.witness, false),
            }))?
        }
        Cmd::Kappa { input } => {
            let f = parse_family_file(&input)?;
            let b = beta_with_guard(&f, t, o.guard_beta.unwrap_or(BETA_GUARD))?;
            o.emit(&json!({ "t": t, "kappa": b.kappa, "beta": b.beta, "ell": b.ell }))?
        }
        Cmd::SearchSum { input, all_optima } => search(o, &input, Objective::Sum, all_optima)?,
        Cmd::SearchProduct { input, all_optima } => search(o, &input, Objective::Product, all_optima)?,
        Cmd::Symmetry { input, generators } => {
            let f = parse_family_file(&input)?;
            let report = match generators {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    let gens: Vec<GroundPermutation> = serde_json::from_str(&text)
                        .map_err(|e| Failure::Usage(format!("bad generator file: {e}")))?;
                    is_t_symmetric_via_generators(&f, t, &gens)?
                }
                None => brute_force_t_symmetric(&f, t)?,
            };
            o.emit(&serde_json::to_value(&report).expect("json"))?
        }
        Cmd::Verify { claims, input, p, random_instances, list } => {
            if list {
                for (id, what) in CLAIMS {
                    println!("{id:<13} {what}");
                }
                for (id, why) in OUT_OF_SCOPE {
                    println!("{id:<13} out of scope: {why}");
                }
                return Ok(true);
            }
            let mut cfg = o.suite_config()?;
            let reports = match input {
                Some(path) => {
                    let f = parse_family_file(&path)?;
                    let explicit = !claims.is_empty();
                    let ids: Vec<String> = if explicit {
                        claims
                    } else {
                        // Without --k or --p, only the claims that need neither.
                        FAMILY_CLAIMS
                            .iter()
                            .filter(|id| match **id {
                                "eq-4" | "prop-3.1" | "prop-3.2" | "thm-3.8" => true,
                                "lem-5.2" => o.k.is_some() && p.is_some(),
                                _ => o.k.is_some(),
                            })
                            .map(|s| s.to_string())
                            .collect()
                    };
                    let tag = file_tag(&path)?;
                    let mut reps = Vec::new();
                    for id in &ids {
                        match verify_family(id, &f, t, o.k, p, &cfg) {
                            Ok(mut r) => {
                                r.instance = format!("{tag},{}", r.instance);
                                reps.push(r);
                            }
                            // The default set skips claims whose hypotheses the input misses.
                            Err(
                                e @ (Error::Inapplicable(_) | Error::LemmaInapplicable(_) | Error::HypothesisFails(_)),
                            ) if !explicit => eprintln!("skipped {id}: {e}"),
                            Err(e) => return Err(e.into()),
                        }
                    }
                    reps
                }
                None => {
                    cfg.claims = claims;
                    cfg.line_p = p;
                    if let Some(n) = random_instances {
                        cfg.random_instances = n;
                    }
                    run_suite(&cfg)?
                }
            };
            write_reports(o, &reports, cfg.format)?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            eprintln!("{} reports, {} failed", reports.len(), failed);
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn generate(which: Gen, t: usize) -> Result<SetFamily, Failure> {
    Ok(match which {
        Gen::Powerset { n } => gen_powerset(n)?,
        Gen::Uniform { n, r } => gen_uniform(n, r)?,
        Gen::Katona { n } => gen_katona(n, t)?,
        Gen::Signed { n, r, m } => gen_signed(n, r, m)?,
        Gen::Permutations { r, n } => gen_permutations(r, n)?,
        Gen::PartialPermutations { n, r } => gen_partial_permutations(n, r)?,
        Gen::Example1 { n } => gen_example1(n, t)?,
        Gen::Example2 { n, m } => gen_example2(n, m, t)?,
        Gen::Lines { p, slopes, intercepts } => gen_lines(p, t, slopes.as_deref(), intercepts.as_deref())?,
    })
}

fn search(o: &Global, input: &Path, objective: Objective, all: bool) -> Result<(), Failure> {
    let f = parse_family_file(input)?;
    let k = o.k()?;
    let guards = o.guards();
    let best = labeling_search(&f, o.t, k, objective, &guards)?;
    let mut v = best.to_json();
    v["t"] = json!(o.t);
    if all {
        let (_, optima) = optimal_labelings(&f, o.t, k, objective, &guards)?;
        v["all_optima"] = json!(optima.iter().map(|l| l.to_lists()).collect::<Vec<_>>());
    }
    o.emit(&v)
}

/// File name plus the first 16 hex digits of its SHA-256.
fn file_tag(path: &Path) -> Result<String, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    Ok(format!("file:{name}#{hex}"))
}

fn write_reports(o: &Global, reports: &[VerificationReport], format: ReportFormat) -> Result<(), Failure> {
    match &o.out {
        Some(p) => write_report(reports, p, format)?,
        None => {
            let text = match format {
                ReportFormat::Json => crossint_core::report::reports_to_json(reports),
                ReportFormat::Csv => crossint_core::report::reports_to_csv(reports)?,
            };
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    Ok(())
}
