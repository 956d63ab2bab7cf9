//! The tail-mass series F(r, β), the annulus-isolation constant, and the
//! annulus and real-root charts.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::poly::CoeffSeq;
use crate::precision::Real;
use crate::solve::bisect;

/// F(r, β) = Σ_{j≥0} r^j / β^{j(j−1)/2}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailSeries<R: Real = f64> {
    pub r: R,
    pub beta: R,
    pub value: R,
    pub terms_used: usize,
}

pub fn f_series<R: Real>(r: &R, beta: &R) -> Result<TailSeries<R>> {
    let ctx = beta.context();
    let one = R::from_i64(ctx, 1);
    if r.is_negative() || *r > one {
        return Err(domain("F(r, beta) needs 0 <= r <= 1"));
    }
    if !(*beta > one) {
        return Err(domain("F(r, beta) needs beta > 1"));
    }
    let eps = R::epsilon(ctx);
    let thr = if R::digits(ctx) <= 16 {
        eps
    } else {
        eps.min_of(R::from_f64(ctx, 1e-30))
    };
    let inv_beta = one.clone() / beta.clone();
    let mut sum = one.clone();
    let mut term = one;
    // term_{j+1} = term_j · r / β^j
    let mut ratio = r.clone();
    let mut terms_used = 1;
    loop {
        term = term * ratio.clone();
        if term.is_zero() || term < thr.clone() * sum.clone() {
            break;
        }
        sum = sum + term.clone();
        terms_used += 1;
        ratio = ratio * inv_beta.clone();
    }
    Ok(TailSeries {
        r: r.clone(),
        beta: beta.clone(),
        value: sum,
        terms_used,
    })
}

fn f64_series(r: f64, beta: f64) -> f64 {
    f_series(&r, &beta)
        .expect("arguments checked by caller")
        .value
}

/// g(β) = (F(β^{−3/2}, β) + 1)² − β.
fn kurtz_gap<R: Real>(beta: &R) -> R {
    let r = R::from_i64(beta.context(), 1) / (beta.clone() * beta.sqrt());
    let f = f_series(&r, beta).expect("beta > 1").value + R::one();
    f.clone() * f - beta.clone()
}

/// F(β^{−3/2}, β)² − β: the same equation without the +1, kept for comparison.
fn statement_gap(beta: f64) -> f64 {
    let f = f64_series(beta.powf(-1.5), beta);
    f * f - beta
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatementFormReport {
    /// min and max of F² − β over a grid of [4.3, 4.5].
    pub gap_min: f64,
    pub gap_max: f64,
    pub has_root_in_window: bool,
    /// F(β^{−3/2}, β)² at the constant.
    pub f_squared_at_constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KurtzConstant {
    pub value: f64,
    /// |(F + 1)² − β| at `value`.
    pub residual: f64,
    pub statement_form: StatementFormReport,
}

pub const KURTZ_WINDOW: (f64, f64) = (4.3, 4.5);

/// Root of β = (F(β^{−3/2}, β) + 1)² on [4.3, 4.5].
pub fn kurtz_constant() -> KurtzConstant {
    let (lo, hi) = KURTZ_WINDOW;
    let value = bisect(|b| kurtz_gap(&b), lo, hi, 1e-15).expect("bracketed on [4.3, 4.5]");
    let grid: Vec<f64> = (0..=2000)
        .map(|k| statement_gap(lo + (hi - lo) * k as f64 / 2000.0))
        .collect();
    let gap_min = grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let gap_max = grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let f = f64_series(value.powf(-1.5), value);
    KurtzConstant {
        value,
        residual: kurtz_gap(&value).abs(),
        statement_form: StatementFormReport {
            gap_min,
            gap_max,
            has_root_in_window: gap_min <= 0.0 && gap_max >= 0.0,
            f_squared_at_constant: f * f,
        },
    }
}

/// The same constant in any precision, bisected to the context's resolution.
pub fn kurtz_constant_in<R: Real>(ctx: R::Context) -> R {
    let bits = (R::digits(ctx) as f64 * std::f64::consts::LOG2_10) as usize + 8;
    crate::solve::bisect_real(
        |b: &R| kurtz_gap(b),
        R::from_f64(ctx, KURTZ_WINDOW.0),
        R::from_f64(ctx, KURTZ_WINDOW.1),
        bits,
    )
    .expect("bracketed on [4.3, 4.5]")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// Σ_{j≤k} D_j for k at or left of the mode.
    Left,
    /// Σ_{j≥k} D_j for k at or right of the mode.
    Right,
}

/// Bound F(r, β)·D_k on a one-sided tail of D_j = |c_j| scale^j, where β is
/// the minimum of the |c| profile and r is at least the ratio D_{k±1}/D_k
/// stepping away from the mode.
pub fn tail_mass_bound(
    c: &CoeffSeq,
    k: usize,
    direction: Direction,
    r: f64,
    scale: f64,
) -> Result<f64> {
    let n = c.degree();
    if k > n {
        return Err(domain(format!("index {k} exceeds degree {n}")));
    }
    if !(scale > 0.0) {
        return Err(domain("scale must be positive"));
    }
    let beta = c.beta_profile(true)?.min_beta;
    if !(beta > 1.0) {
        return Err(domain("the |c| profile needs min beta > 1"));
    }
    let d: Vec<f64> = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, v)| v.abs() * scale.powi(j as i32))
        .collect();
    let m_lo = crate::poly::mode_index(&d);
    let m_hi = crate::poly::modes(&d).into_iter().max().unwrap_or(m_lo);
    let next = match direction {
        Direction::Right => {
            if k < m_lo {
                return Err(domain(format!("index {k} is left of the mode {m_lo}")));
            }
            (k < n).then(|| d[k + 1] / d[k])
        }
        Direction::Left => {
            if k > m_hi {
                return Err(domain(format!("index {k} is right of the mode {m_hi}")));
            }
            (k > 0).then(|| d[k - 1] / d[k])
        }
    };
    if let Some(ratio) = next {
        if r < ratio * (1.0 - 1e-12) {
            return Err(domain(format!(
                "r = {r} is below the adjacent ratio {ratio}"
            )));
        }
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(domain("r must lie in [0, 1]"));
    }
    Ok(f64_series(r, beta) * d[k])
}

/// Zero-free annuli [ρ_k, R_k] and one-root annuli (R_k, ρ_{k+1}).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnulusChart {
    pub beta0: f64,
    pub r: f64,
    pub f_value: f64,
    /// ρ_k for k = 0..=N.
    pub rho: Vec<f64>,
    /// R_k for k = 0..=N (R_N = ∞).
    pub big_r: Vec<f64>,
    pub zero_free: Vec<(f64, f64)>,
    pub one_root: Vec<(f64, f64)>,
    /// Set when the coefficients are real: every root is then real and simple.
    pub all_real_certified: bool,
}

pub fn annulus_chart(c: &CoeffSeq) -> Result<AnnulusChart> {
    let d: Vec<f64> = c.coeffs().iter().map(|v| v.abs()).collect();
    annulus_chart_from_moduli(&d, true)
}

pub fn annulus_chart_complex(c: &[Complex<f64>]) -> Result<AnnulusChart> {
    let d: Vec<f64> = c.iter().map(|v| v.norm()).collect();
    let real = c.iter().all(|v| v.im == 0.0);
    annulus_chart_from_moduli(&d, real)
}

const CLAMP: f64 = 1e-14;

fn annulus_chart_from_moduli(d: &[f64], real: bool) -> Result<AnnulusChart> {
    let n = d.len().saturating_sub(1);
    if n < 3 {
        return Err(Error::DegreeTooSmall {
            required: 3,
            found: n,
        });
    }
    if let Some(index) = d.iter().position(|&v| v == 0.0) {
        return Err(Error::ZeroCoefficient { index });
    }
    let k0 = kurtz_constant().value;
    let beta = |k: usize| d[k] * d[k] / (d[k + 1] * d[k - 1]);
    for k in 1..n {
        if beta(k) < k0 {
            return Err(Error::ProfileTooSmall {
                index: k,
                beta: beta(k),
                required: k0,
            });
        }
    }
    let r = k0.powf(-1.5);
    let f = f64_series(r, k0);
    let mut rho = Vec::with_capacity(n + 1);
    let mut big_r = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (q_lo, q_hi) = if k == 0 {
            (0.0, d[0] / (d[1] * f))
        } else if k == n {
            (f * d[n - 1] / d[n], f64::INFINITY)
        } else {
            let mut disc = 1.0 - 4.0 * f / beta(k);
            if disc < 0.0 {
                if disc > -CLAMP {
                    disc = 0.0;
                } else {
                    return Err(Error::ProfileTooSmall {
                        index: k,
                        beta: beta(k),
                        required: 4.0 * f,
                    });
                }
            }
            let s = disc.sqrt();
            // (d_k/2d_{k+1}F)(1 − s) rewritten without cancellation.
            (
                2.0 * d[k - 1] / (d[k] * (1.0 + s)),
                d[k] / (2.0 * d[k + 1] * f) * (1.0 + s),
            )
        };
        let left = if k >= 2 {
            d[k - 2] / (r * d[k - 1])
        } else {
            0.0
        };
        let right = if k + 2 <= n {
            r * d[k + 1] / d[k + 2]
        } else {
            f64::INFINITY
        };
        rho.push(left.max(q_lo));
        big_r.push(right.min(q_hi));
    }
    for k in 0..=n {
        if rho[k] > big_r[k] * (1.0 + 1e-12) {
            return Err(Error::ChartInconsistent {
                index: k,
                detail: format!("rho = {} exceeds R = {}", rho[k], big_r[k]),
            });
        }
        if k < n && !(big_r[k] < rho[k + 1]) {
            return Err(Error::ChartInconsistent {
                index: k,
                detail: format!(
                    "R = {} is not below the next rho = {}",
                    big_r[k],
                    rho[k + 1]
                ),
            });
        }
    }
    let zero_free = (0..=n).map(|k| (rho[k], big_r[k])).collect();
    let one_root = (0..n).map(|k| (big_r[k], rho[k + 1])).collect();
    Ok(AnnulusChart {
        beta0: k0,
        r,
        f_value: f,
        rho,
        big_r,
        zero_free,
        one_root,
        all_real_certified: real,
    })
}

/// Bounds lower_k ≤ x_k ≤ upper_k on the k-th smallest root magnitude; the root is −x_k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootInterval {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
}

/// A point x of J_k with the sign of f(−x) found there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignWitness {
    pub k: usize,
    pub x: f64,
    pub expected_sign: i8,
    pub found_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealRootChart {
    pub intervals: Vec<RootInterval>,
    /// J_k for k = 0..=N (J_0 = (0, c_0/c_1], J_N = [c_{N−1}/c_N, ∞)).
    pub j_intervals: Vec<(f64, f64)>,
    pub witnesses: Vec<SignWitness>,
    pub witnesses_ok: bool,
}

pub fn real_root_chart(c: &CoeffSeq) -> Result<RealRootChart> {
    let n = c.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall {
            required: 3,
            found: n,
        });
    }
    c.require_positive()?;
    let p = c.beta_profile(false)?;
    for (i, b) in p.betas.iter().enumerate() {
        if *b < 4.0 {
            return Err(Error::KurtzConditionFails {
                index: i + 1,
                beta: *b,
            });
        }
    }
    let cf = c.coeffs();
    let mut j_intervals = Vec::with_capacity(n + 1);
    j_intervals.push((0.0, cf[0] / cf[1]));
    for k in 1..n {
        let s = (1.0 - 4.0 / p.beta(k)).max(0.0).sqrt();
        let left = 2.0 * cf[k - 1] / (cf[k] * (1.0 + s));
        let right = cf[k] / (2.0 * cf[k + 1]) * (1.0 + s);
        j_intervals.push((left, right.max(left)));
    }
    j_intervals.push((cf[n - 1] / cf[n], f64::INFINITY));

    let mut intervals = Vec::with_capacity(n);
    for k in 1..=n {
        let lower = j_intervals[k - 1].1;
        let upper = j_intervals[k].0;
        if !(lower <= upper) {
            return Err(Error::ChartInconsistent {
                index: k,
                detail: format!("lower bound {lower} exceeds upper bound {upper}"),
            });
        }
        intervals.push(RootInterval { k, lower, upper });
    }

    let mut witnesses = Vec::with_capacity(n + 1);
    for (k, &(lo, hi)) in j_intervals.iter().enumerate() {
        let x = if k == 0 {
            0.5 * hi
        } else if k == n {
            2.0 * lo
        } else {
            0.5 * (lo + hi)
        };
        let v = c.eval_real(&-x);
        let expected_sign = if k % 2 == 0 { 1 } else { -1 };
        let found_sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        witnesses.push(SignWitness {
            k,
            x,
            expected_sign,
            found_sign,
        });
    }
    let witnesses_ok = witnesses.iter().all(|w| w.expected_sign == w.found_sign);
    Ok(RealRootChart {
        intervals,
        j_intervals,
        witnesses,
        witnesses_ok,
    })
}
