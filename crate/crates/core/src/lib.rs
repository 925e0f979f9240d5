//! Exact computations on cross-t-intersecting set families: the
//! t-intersecting core/remainder decomposition, the largest t-intersecting
//! subfamily size l(F,t), the fractional parameters β(F,t) and κ(F,t), exact
//! maximization of the sum and product of sizes of k cross-t-intersecting
//! subfamilies, the standard family constructions, t-symmetry checks, and a
//! suite of mechanical claim checks with deterministic reports.

pub mod bitset;
pub mod clique;
pub mod conflict;
pub mod cross;
pub mod error;
pub mod extremal;
pub mod family;
pub mod generators;
pub mod io;
pub mod rational;
pub mod report;
pub mod subsets;
pub mod suite;
pub mod symmetry;

pub use conflict::{conflict_graph, ConflictGraph};
pub use error::{Error, Result};
pub use extremal::{beta, beta_of, ell, kappa, BetaReport, EllResult};
pub use family::{
    alpha, decompose, is_cross_t_intersecting, is_t_intersecting, t_intersects, union_family,
    Decomposition, FamilyMeta, GroundSet, MemberSet, SetFamily,
};
pub use rational::Rational;
pub use report::{Quantity, VerificationReport, Witness};
pub use cross::{
    max_product_exact, max_sum_exact, CrossConfigResult, Labeling, Objective, SearchGuards,
};
pub use report::ReportFormat;
pub use suite::{run_suite, SuiteConfig};
pub use symmetry::{GroundPermutation, SymmetryBasis, SymmetryReport};
