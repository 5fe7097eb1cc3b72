//! Bundles `E` on a blow-up presented by `0 -> O(-2e_0)^a -> O(-e_0)^b -> E -> 0`,
//! their cohomology and the ACM / Ulrich verifiers.

mod chern;
mod cohomology;
pub mod les;
mod plan;
mod presentation;
mod sections;
mod verify;

pub use chern::{chern_and_slope, riemann_roch_chi, ChernData};
pub use cohomology::{bundle_cohomology, BundleCohomology};
pub use plan::{check_eh_inequalities, family_dimension, FamilyDimension, RankPlan};
pub use presentation::{
    certify_surjectivity, construct, sample_matrix, stabilizer_dimension, Attempt,
    KernelBundlePresentation, SurjectivityCertificate, DEFAULT_RETRY_BUDGET, DEFAULT_TRIALS,
};
pub use sections::{dual_sections, dual_side_matrix, kernel_side_matrix, twisted_sections};
pub use verify::{
    regularity_step, verify_acm, verify_ulrich, window_cohomology, AcmReport, Check,
    RegularityReport, RegularityVanishing, TwistSurjectivity, UlrichReport,
};
