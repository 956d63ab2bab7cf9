//! Sector thresholds β₀(θ) on [π/2, π), their inverse, and the sector certificate.
//!
//! All values here are double precision.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly::CoeffSeq;
use crate::solve::{bisect, largest_root_by_scan};

const SCAN_LO: f64 = 1.0;
const SCAN_HI: f64 = 4.0;
const SCAN_STEP: f64 = 1e-3;

/// Which of the four candidates attains β₀(θ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    FourCosSq,
    OneMinus2Cos,
    R,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorThresholds {
    pub theta: f64,
    pub psi: f64,
    pub a: f64,
    pub four_cos2: f64,
    pub one_minus_2cos: f64,
    pub r_val: f64,
    pub s_val: f64,
    pub beta0: f64,
    pub branch: Branch,
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && (PI / 2.0..PI).contains(&theta) {
        Ok(())
    } else {
        Err(domain(format!("theta = {theta} is outside [pi/2, pi)")))
    }
}

/// a = 2cos(π − θ).
fn a_of(theta: f64) -> f64 {
    2.0 * (PI - theta).cos()
}

/// Largest positive X with X² − aX^{3/2} + a² − 2 = 0 in [1, 4].
fn r_root(a: f64) -> Option<f64> {
    largest_root_by_scan(
        |x| x * x - a * x * x.sqrt() + a * a - 2.0,
        SCAN_LO,
        SCAN_HI,
        SCAN_STEP,
    )
}

/// Largest positive X with X³ − (1+a)X² + a² + a − 1 = 0 in [1, 4].
fn s_root(a: f64) -> Option<f64> {
    largest_root_by_scan(
        |x| x * x * x - (1.0 + a) * x * x + a * a + a - 1.0,
        SCAN_LO,
        SCAN_HI,
        SCAN_STEP,
    )
}

pub fn r_threshold(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(r_root(a_of(theta)).unwrap_or(1.0))
}

pub fn s_threshold(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(s_root(a_of(theta)).unwrap_or(1.0))
}

fn thresholds_unchecked(theta: f64) -> SectorThresholds {
    let a = a_of(theta);
    let c = theta.cos();
    let four_cos2 = 4.0 * c * c;
    let one_minus_2cos = 1.0 + a;
    let r_val = r_root(a).unwrap_or(1.0);
    let s_val = s_root(a).unwrap_or(1.0);
    let beta0 = four_cos2.max(one_minus_2cos).max(r_val).max(s_val);
    let tie = 1e-12 * beta0;
    let branch = [
        (Branch::FourCosSq, four_cos2),
        (Branch::OneMinus2Cos, one_minus_2cos),
        (Branch::R, r_val),
        (Branch::S, s_val),
    ]
    .into_iter()
    .find(|(_, v)| beta0 - v <= tie)
    .map(|(b, _)| b)
    .expect("the maximum is one of the candidates");
    SectorThresholds {
        theta,
        psi: PI - theta,
        a,
        four_cos2,
        one_minus_2cos,
        r_val,
        s_val,
        beta0,
        branch,
    }
}

/// β₀(θ) as the maximum of 4cos²θ, 1 − 2cosθ, R(θ) and S(θ).
pub fn beta0(theta: f64) -> Result<SectorThresholds> {
    check_theta(theta)?;
    Ok(thresholds_unchecked(theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breakpoints {
    /// Where 1 − 2cosθ = R(θ).
    pub theta0: f64,
    /// Where R(θ) = S(θ).
    pub theta1: f64,
    pub beta_at_theta0: f64,
    pub beta_at_theta1: f64,
}

pub fn breakpoints() -> Breakpoints {
    let lo = PI / 2.0;
    let hi = 0.8 * PI;
    let t0 = bisect(
        |t| {
            let a = a_of(t);
            1.0 + a - r_root(a).unwrap_or(1.0)
        },
        0.55 * PI,
        hi,
        1e-13,
    )
    .expect("1 − 2cosθ crosses R(θ) inside [0.55π, 0.8π]");
    let t1 = bisect(
        |t| {
            let a = a_of(t);
            r_root(a).unwrap_or(1.0) - s_root(a).unwrap_or(1.0)
        },
        lo,
        t0,
        1e-13,
    )
    .expect("R(θ) crosses S(θ) inside [π/2, θ₀]");
    Breakpoints {
        theta0: t0,
        theta1: t1,
        beta_at_theta0: thresholds_unchecked(t0).beta0,
        beta_at_theta1: thresholds_unchecked(t1).beta0,
    }
}

/// Slack below β₀(π/2) that is still mapped to π/2.
const FLOOR_SLACK: f64 = 1e-12;

/// Θ(β): the inverse of β₀ on [π/2, π), by bisection. β ≥ 4 maps to π.
pub fn theta_of_beta(beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(domain(format!("beta = {beta} is not finite")));
    }
    let floor = thresholds_unchecked(PI / 2.0).beta0;
    if beta < floor - FLOOR_SLACK {
        return Err(domain(format!(
            "beta = {beta} is below beta0(pi/2) = {floor}"
        )));
    }
    if beta <= floor {
        return Ok(PI / 2.0);
    }
    if beta >= 4.0 {
        return Ok(PI);
    }
    let (mut lo, mut hi) = (PI / 2.0, PI);
    while hi - lo > 2e-14 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if thresholds_unchecked(mid).beta0 < beta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The four closed-form branch expressions for 2cosΘ(β), numbered 1–4 from β = 4 downwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchProbe {
    pub beta: f64,
    pub branch: u8,
    pub printed_2cos: f64,
    /// The closed form with a factor 1/2 applied on branches 3 and 4.
    pub halved_2cos: f64,
    pub bisect_2cos: f64,
    /// Closed form within 1e-6 of the bisection inverse.
    pub agree: bool,
    pub halved_agree: bool,
}

/// Nominal β boundaries between the closed-form branches.
pub const PRINTED_BOUNDARIES: [f64; 3] = [2.618_033_988_749_895, 1.57762, 1.52334];

pub fn theta_branch_formulas(beta: f64) -> Result<BranchProbe> {
    let theta = theta_of_beta(beta)?;
    if beta > 4.0 {
        return Err(domain("the branch formulas cover beta <= 4"));
    }
    let (branch, printed, halved) = if beta >= PRINTED_BOUNDARIES[0] {
        let v = -beta.sqrt();
        (1, v, v)
    } else if beta >= PRINTED_BOUNDARIES[1] {
        let v = 1.0 - beta;
        (2, v, v)
    } else if beta >= PRINTED_BOUNDARIES[2] {
        let b3 = beta.powi(3);
        let v = -beta.powf(1.5) + (b3 - 4.0 * beta * beta + 8.0).sqrt();
        (3, v, v / 2.0)
    } else {
        let b2 = beta * beta;
        let v = 1.0 - b2 + ((1.0 + b2).powi(2) + 4.0 * (1.0 - beta.powi(3))).sqrt();
        (4, v, v / 2.0)
    };
    let bisect_2cos = 2.0 * theta.cos();
    Ok(BranchProbe {
        beta,
        branch,
        printed_2cos: printed,
        halved_2cos: halved,
        bisect_2cos,
        agree: (printed - bisect_2cos).abs() <= 1e-6,
        halved_agree: (halved - bisect_2cos).abs() <= 1e-6,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertStatus {
    Certified,
    Refused,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RefusalReason {
    DegreeBelowSix,
    ProfileBelowThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorCertificate {
    pub theta: f64,
    pub beta_required: f64,
    pub min_beta_found: Option<f64>,
    pub branch: Branch,
    pub degree: usize,
    pub status: CertStatus,
    pub refusal: Option<RefusalReason>,
}

/// Certifies |arg z| > θ for every root from the β-profile alone.
pub fn certify_sector(c: &CoeffSeq, theta: f64) -> Result<SectorCertificate> {
    c.require_positive()?;
    let th = beta0(theta)?;
    let degree = c.degree();
    let min_beta = if degree >= 2 {
        Some(c.beta_profile(false)?.min_beta)
    } else {
        None
    };
    let refusal = if degree < 6 {
        Some(RefusalReason::DegreeBelowSix)
    } else if min_beta.is_some_and(|m| m >= th.beta0) {
        None
    } else {
        Some(RefusalReason::ProfileBelowThreshold)
    };
    Ok(SectorCertificate {
        theta,
        beta_required: th.beta0,
        min_beta_found: min_beta,
        branch: th.branch,
        degree,
        status: if refusal.is_none() {
            CertStatus::Certified
        } else {
            CertStatus::Refused
        },
        refusal,
    })
}

/// Widest sector certified by the β-profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MaxSector {
    /// min β ≥ 4: all roots are negative reals.
    RealRoots {
        min_beta: f64,
    },
    Sector {
        theta: f64,
        min_beta: f64,
    },
    /// min β ≤ β₀(π/2); nothing is certified.
    BelowTable {
        min_beta: f64,
    },
}

pub fn max_certified_theta(c: &CoeffSeq) -> Result<MaxSector> {
    c.require_positive()?;
    if c.degree() < 6 {
        return Err(Error::DegreeTooSmall {
            required: 6,
            found: c.degree(),
        });
    }
    let m = c.beta_profile(false)?.min_beta;
    let floor = thresholds_unchecked(PI / 2.0).beta0;
    Ok(if m >= 4.0 {
        MaxSector::RealRoots { min_beta: m }
    } else if m > floor {
        MaxSector::Sector {
            theta: theta_of_beta(m)?,
            min_beta: m,
        }
    } else {
        MaxSector::BelowTable { min_beta: m }
    })
}

/// The low-degree factors whose products with a fast-decaying tail show that
/// β₀(θ) cannot be lowered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SharpnessBase {
    /// z² + az + 1
    G,
    /// g·(1 + z)
    H,
    /// g·(1 + bz + z²), b = R(θ)^{3/2} − a
    J,
    /// g·(1 + bz + bz² + z³), b = S(θ)² − a
    K,
}

impl SharpnessBase {
    pub fn degree(self) -> usize {
        match self {
            SharpnessBase::G => 2,
            SharpnessBase::H => 3,
            SharpnessBase::J => 4,
            SharpnessBase::K => 5,
        }
    }

    /// The base matching the branch that attains β₀.
    pub fn for_branch(branch: Branch) -> Self {
        match branch {
            Branch::FourCosSq => SharpnessBase::G,
            Branch::OneMinus2Cos => SharpnessBase::H,
            Branch::R => SharpnessBase::J,
            Branch::S => SharpnessBase::K,
        }
    }
}

/// The base polynomial and the β value it realises.
pub fn sharpness_base(theta: f64, base: SharpnessBase) -> Result<(CoeffSeq, f64)> {
    check_theta(theta)?;
    let a = a_of(theta);
    let (coeffs, beta) = match base {
        SharpnessBase::G => {
            if a <= 1e-12 {
                return Err(Error::NoPositiveRoot(
                    "z² + az + 1 needs a = -2cos(theta) > 0".into(),
                ));
            }
            (vec![1.0, a, 1.0], a * a)
        }
        SharpnessBase::H => (vec![1.0, 1.0 + a, 1.0 + a, 1.0], 1.0 + a),
        SharpnessBase::J => {
            let beta = r_root(a).ok_or_else(|| {
                Error::NoPositiveRoot(format!("R has no root at theta = {theta}"))
            })?;
            let b = beta.powf(1.5) - a;
            let g = CoeffSeq::new(vec![1.0, a, 1.0])?;
            (
                g.multiply(&CoeffSeq::new(vec![1.0, b, 1.0])?).into_coeffs(),
                beta,
            )
        }
        SharpnessBase::K => {
            let beta = s_root(a).ok_or_else(|| {
                Error::NoPositiveRoot(format!("S has no root at theta = {theta}"))
            })?;
            let b = beta * beta - a;
            let g = CoeffSeq::new(vec![1.0, a, 1.0])?;
            (
                g.multiply(&CoeffSeq::new(vec![1.0, b, b, 1.0])?)
                    .into_coeffs(),
                beta,
            )
        }
    };
    if let Some(index) = coeffs.iter().position(|&v| v <= 0.0) {
        return Err(Error::NoPositiveRoot(format!(
            "base coefficient c_{index} is not positive at theta = {theta}"
        )));
    }
    Ok((CoeffSeq::new(coeffs)?, beta))
}

/// Coefficients n^{−j(j+1)}, j = 0..=m.
pub fn tail_factor(n: u32, m: usize) -> Result<CoeffSeq> {
    if n < 2 {
        return Err(domain("tail parameter n must be at least 2"));
    }
    let ln = (n as f64).ln();
    let coeffs: Vec<f64> = (0..=m)
        .map(|j| (-((j * (j + 1)) as f64) * ln).exp())
        .collect();
    if coeffs.iter().any(|v| !v.is_normal()) {
        return Err(domain(format!(
            "tail coefficients n^(-j(j+1)) underflow double precision for n = {n}, {m} terms"
        )));
    }
    CoeffSeq::new(coeffs)
}

/// base·f_n truncated to total degree `degree`; e^{±iθ} stay roots.
pub fn sharpness_family(
    theta: f64,
    base: SharpnessBase,
    n: u32,
    degree: usize,
) -> Result<CoeffSeq> {
    let need = base.degree() + 1;
    if degree < need {
        return Err(Error::DegreeTooSmall {
            required: need,
            found: degree,
        });
    }
    let (b, _) = sharpness_base(theta, base)?;
    Ok(b.multiply(&tail_factor(n, degree - base.degree())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmallThetaBounds {
    pub theta: f64,
    /// 1 + 16θ²ln2/π².
    pub upper: f64,
    /// exp(16 ln2/n²) when θ = π/n.
    pub upper_exp: Option<f64>,
    pub n: Option<u32>,
    /// 1 + θ²/(4π²).
    pub lower: f64,
}

pub fn small_theta_bounds(theta: f64) -> Result<SmallThetaBounds> {
    if !(theta > 0.0 && theta < PI / 2.0) {
        return Err(domain(format!("theta = {theta} is outside (0, pi/2)")));
    }
    let ratio = PI / theta;
    let n = ratio.round();
    let exact_n = (ratio - n).abs() <= 1e-9 * ratio && n >= 3.0;
    let n = exact_n.then_some(n as u32);
    Ok(SmallThetaBounds {
        theta,
        upper: 1.0 + 16.0 * theta * theta * LN_2 / (PI * PI),
        upper_exp: n.map(|n| (16.0 * LN_2 / (n as f64 * n as f64)).exp()),
        n,
        lower: 1.0 + theta * theta / (4.0 * PI * PI),
    })
}

/// The tent sequence (1, 2, …, n, n, …, 2, 1) of length 2n, whose β-profile
/// minimum is 1 + 1/(n(n−2)).
pub fn cn_c2n_witness(n: usize) -> Result<CoeffSeq> {
    if n < 3 {
        return Err(domain("the witness needs n >= 3"));
    }
    let up = (1..=n).map(|j| j as f64);
    let down = (1..=n).rev().map(|j| j as f64);
    CoeffSeq::new(up.chain(down).collect())
}
