//! Root localization for polynomials from the log-concavity ratios
//! β_j = c_j²/(c_{j+1}c_{j−1}) of their coefficients.
//!
//! * [`sector`]: the threshold β₀(θ) above which every root has |arg z| > θ.
//! * [`kurtz`]: annuli holding exactly one root, and real-root intervals when all β_j ≥ 4.
//! * [`constant_ratio`]: the family Σ x^j b^{−j(j+1)} and its critical bases.
//! * [`roots`]: a numerical root oracle used to check every certificate.

// `!(a > b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constant_ratio;
pub mod error;
pub mod kurtz;
pub mod poly;
pub mod precision;
pub mod roots;
pub mod sector;
pub mod solve;

pub use num_complex::Complex;

pub use constant_ratio::{
    classify, critical_base, fb_coeffs, functional_equation_residual, paradox_demo, sign_test,
    squeeze_b0, B0Bracket, Classification, CriticalBase, ParadoxReport, Parity, SignTest, Verdict,
};
pub use error::{Error, Result};
pub use kurtz::{
    annulus_chart, annulus_chart_complex, f_series, kurtz_constant, kurtz_constant_in,
    real_root_chart, tail_mass_bound, AnnulusChart, Direction, KurtzConstant, RealRootChart,
    RootInterval, TailSeries,
};
pub use poly::{
    beta_profile, is_unimodal, mode_index, modes, parse_coefficient_source, BetaProfile, CoeffSeq,
};
pub use precision::{Decimal, Double, Mp, Precision, Real};
pub use roots::{all_real, all_roots, all_roots_complex, count_in_annulus, min_arg, RootSet};
pub use sector::{
    beta0, breakpoints, certify_sector, cn_c2n_witness, max_certified_theta, r_threshold,
    s_threshold, sharpness_base, sharpness_family, small_theta_bounds, theta_branch_formulas,
    theta_of_beta, Branch, BranchProbe, Breakpoints, CertStatus, MaxSector, SectorCertificate,
    SectorThresholds, SharpnessBase, SmallThetaBounds,
};
