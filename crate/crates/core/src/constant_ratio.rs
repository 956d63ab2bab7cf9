//! The constant-ratio family f_{b,N} = Σ x^j b^{−j(j+1)}, its sign tests,
//! the critical bases b₀(l) and the bracket they give for B₀.

use std::f64::consts::PI;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::poly::CoeffSeq;
use crate::precision::{Decimal, Mp, Real};
use crate::roots::{all_real, all_roots, max_relative_imag};
use crate::sector::{sharpness_family, SharpnessBase};
use crate::solve::{bisect, bisect_real, golden_min};

/// c_j = b^{−j(j+1)}, j = 0..=degree. Every β_j equals b².
pub fn fb_coeffs<R: Real>(b: &R, degree: usize) -> Result<CoeffSeq<R>> {
    let one = R::from_i64(b.context(), 1);
    if !(*b > one) {
        return Err(domain("the base b must exceed 1"));
    }
    if degree < 1 {
        return Err(Error::DegreeTooSmall {
            required: 1,
            found: degree,
        });
    }
    let inv = one / b.clone();
    let coeffs: Vec<R> = (0..=degree)
        .map(|j| inv.powi((j * (j + 1)) as i64))
        .collect();
    if coeffs.iter().any(|c| c.is_zero()) {
        return Err(domain("coefficients underflow the working precision"));
    }
    CoeffSeq::new(coeffs)
}

fn f_eval<R: Real>(b: &R, degree: usize, x: &R) -> R {
    fb_coeffs(b, degree).expect("validated base").eval_real(x)
}

/// |f_{b,N}(x) − 1 − (x/b²) f_{b,N}(x/b²)|. The identity is exact for the
/// entire function; with both sides truncated at N the residual is the
/// single term x^{N+1} b^{−(N+1)(N+2)}.
pub fn functional_equation_residual<R: Real>(b: &R, x: &R, degree: usize) -> Result<R> {
    let b2 = b.clone() * b.clone();
    let y = x.clone() / b2;
    let lhs = f_eval(b, degree, x);
    let rhs = R::from_i64(b.context(), 1) + y.clone() * f_eval(b, degree, &y);
    Ok((lhs - rhs).abs())
}

/// x·P′(x) for P(x) = f(−x), and the summed moduli Σ|c_j x^j|.
struct Alternating<R> {
    xdp: R,
    scale: R,
}

fn alternating<R: Real>(c: &[R], x: &R) -> Alternating<R> {
    let ctx = x.context();
    let mut xdp = R::zero();
    let mut scale = R::zero();
    let mut pow = R::from_i64(ctx, 1);
    for (j, cj) in c.iter().enumerate() {
        let t = cj.clone() * pow.clone();
        scale = scale + t.clone();
        let signed = if j % 2 == 0 { t } else { -t };
        xdp = xdp + signed * R::from_i64(ctx, j as i64);
        pow = pow * x.clone();
    }
    Alternating { xdp, scale }
}

fn p_only<R: Real>(c: &[R], x: &R) -> R {
    let mut acc = R::zero();
    let nx = -x.clone();
    for cj in c.iter().rev() {
        acc = acc * nx.clone() + cj.clone();
    }
    acc
}

/// Outcome of the sign tests that decide real-rootedness of f_{b,N}, N ≥ 2l.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SignTest<R: Real = f64> {
    /// Even l: f_{b,l}(−x₁) ≤ 0 with 1 < x₁ < b⁴.
    EvenWitnessFound {
        x1: R,
        value: R,
    },
    /// Odd l: f_{b,l}(−x) ≥ 0 on (0, b⁴).
    OddNonnegative {
        min_value: R,
    },
    Inconclusive {
        min_value: R,
    },
}

const SIGN_GRID: usize = 10_000;

fn rounding_tolerance<R: Real>(scale: &R) -> R {
    R::epsilon(scale.context()) * R::from_i64(scale.context(), 64) * scale.clone()
}

pub fn sign_test<R: Real>(b: &R, l: usize) -> Result<SignTest<R>> {
    let ctx = b.context();
    let b2 = b.clone() * b.clone();
    if !(b2 > R::from_i64(ctx, 3)) {
        return Err(domain("the sign tests need b > sqrt(3)"));
    }
    if l < 2 {
        return Err(domain("the sign tests need l >= 2"));
    }
    let c = fb_coeffs(b, l)?;
    let c = c.coeffs();
    let cf: Vec<f64> = c.iter().map(Real::to_f64).collect();
    let b4 = b2.clone() * b2;
    let b4f = b4.to_f64();
    let one = R::from_i64(ctx, 1);
    let golden_tol = 10f64.powf(-(R::digits(ctx) as f64) / 2.0 - 1.0).max(1e-15);

    if l.is_multiple_of(2) {
        let xs: Vec<f64> = (1..=SIGN_GRID)
            .map(|i| 1.0 + (b4f - 1.0) * i as f64 / (SIGN_GRID + 1) as f64)
            .collect();
        let vals: Vec<f64> = xs.iter().map(|x| p_only(&cf, x)).collect();
        let i = (0..vals.len())
            .min_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap())
            .unwrap();
        let lo = if i == 0 {
            one.clone()
        } else {
            R::from_f64(ctx, xs[i - 1])
        };
        let hi = if i + 1 == xs.len() {
            b4.clone()
        } else {
            R::from_f64(ctx, xs[i + 1])
        };
        let (x1, value) = golden_min(|x: &R| p_only(c, x), lo, hi, golden_tol);
        let tol = rounding_tolerance(&alternating(c, &x1).scale);
        let inside = x1 > one && x1 < b4;
        return Ok(if inside && value <= tol {
            SignTest::EvenWitnessFound { x1, value }
        } else {
            SignTest::Inconclusive { min_value: value }
        });
    }

    // Odd l: critical points where x·P′ changes sign from − to +.
    let n = SIGN_GRID;
    let xs: Vec<f64> = (1..=n).map(|i| b4f * i as f64 / n as f64).collect();
    let d: Vec<f64> = xs.iter().map(|x| alternating(&cf, x).xdp).collect();
    let mut min_value = p_only(c, &b4);
    let iterations = (R::digits(ctx) as f64 * std::f64::consts::LOG2_10) as usize + 8;
    for i in 1..n {
        if d[i - 1] < 0.0 && d[i] >= 0.0 {
            let crit = bisect_real(
                |x: &R| alternating(c, x).xdp,
                R::from_f64(ctx, xs[i - 1]),
                R::from_f64(ctx, xs[i]),
                iterations,
            );
            if let Some(x) = crit {
                let v = p_only(c, &x);
                if v < min_value {
                    min_value = v;
                }
            }
        }
    }
    let grid_min = xs
        .iter()
        .map(|x| p_only(&cf, x))
        .fold(f64::INFINITY, f64::min);
    let scale_at_end = alternating(c, &b4).scale;
    let tol = rounding_tolerance(&scale_at_end);
    let nonneg = min_value >= -tol && grid_min >= -1e-12 * scale_at_end.to_f64();
    Ok(if nonneg {
        SignTest::OddNonnegative { min_value }
    } else {
        SignTest::Inconclusive { min_value }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    AllRealSimple,
    NonrealRoots,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// The l whose sign test decided the verdict.
    pub l_witness: Option<usize>,
    /// b₀(l) used for the odd-l comparison.
    pub critical_base: Option<Mp>,
}

/// Largest l for which odd-l critical bases are computed.
pub const MAX_CRITICAL_L: usize = 12;

/// Decides real-rootedness of f_{b,N} through the sign tests.
pub fn classify<R: Real>(b: &R, degree: usize, digits: u32) -> Result<Classification> {
    let ctx = b.context();
    if !(b.clone() * b.clone() > R::from_i64(ctx, 3)) {
        return Err(domain("classification needs b > sqrt(3)"));
    }
    if degree < 4 {
        return Err(Error::DegreeTooSmall {
            required: 4,
            found: degree,
        });
    }
    let max_l = degree / 2;
    for l in (2..=max_l).step_by(2) {
        if let SignTest::EvenWitnessFound { .. } = sign_test(b, l)? {
            return Ok(Classification {
                verdict: Verdict::AllRealSimple,
                l_witness: Some(l),
                critical_base: None,
            });
        }
    }
    let digits = digits.max(30);
    let b_mp = Mp::parse_decimal(
        Decimal(digits + 10),
        &b.to_decimal_string(digits as usize + 10),
    )?;
    let margin = Mp::parse_decimal(Decimal(digits + 10), &format!("1e{}", 3 - digits as i64))?;
    // l = 3 has b₀ = √3, below every admissible b.
    for l in (5..=max_l.min(MAX_CRITICAL_L)).step_by(2) {
        if let SignTest::OddNonnegative { .. } = sign_test(b, l)? {
            let cb = critical_base(l, digits)?;
            if b_mp < cb.b0.clone() - margin.clone() {
                return Ok(Classification {
                    verdict: Verdict::NonrealRoots,
                    l_witness: Some(l),
                    critical_base: Some(cb.b0),
                });
            }
        }
    }
    Ok(Classification {
        verdict: Verdict::Unknown,
        l_witness: None,
        critical_base: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    /// Even l: b₀(l) bounds B₀ from above.
    Even,
    /// Odd l: b₀(l) bounds B₀ from below.
    Odd,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalBase {
    pub l: usize,
    pub digits: u32,
    pub b0: Mp,
    /// The multiple zero of f_{b0,l} sits at −x0.
    pub x0: Mp,
    pub parity: Parity,
    /// 2 for a double zero, 3 for a triple zero.
    pub multiplicity: u8,
    /// |f| / Σ|c_j x^j| and |x f′| / Σ j|c_j x^j| at the solution.
    pub residuals: (f64, f64),
    pub newton_iterations: usize,
    /// 0 < x0 < b0⁴.
    pub x0_in_window: bool,
    /// √3 < b0 < 2.
    pub b0_in_range: bool,
}

/// Smallest interior local minimum of x ↦ f_{b,l}(−x) on (0, 1.2 b⁴), with its location.
fn smallest_local_min(l: usize, b: f64) -> Option<(f64, f64)> {
    let c = fb_coeffs(&b, l).ok()?.into_coeffs();
    let hi = 1.2 * b.powi(4);
    let m = 4000;
    let xs: Vec<f64> = (1..=m).map(|i| hi * i as f64 / m as f64).collect();
    let vals: Vec<f64> = xs.iter().map(|x| p_only(&c, x)).collect();
    let mut best: Option<(f64, f64)> = None;
    for i in 1..m - 1 {
        if vals[i] <= vals[i - 1] && vals[i] < vals[i + 1] {
            let (x, v) = golden_min(|x: &f64| p_only(&c, x), xs[i - 1], xs[i + 1], 1e-12);
            if best.is_none_or(|(bv, _)| v < bv) {
                best = Some((v, x));
            }
        }
    }
    best
}

fn dips_below_zero(l: usize, b: f64) -> bool {
    smallest_local_min(l, b).is_some_and(|(v, _)| v < 0.0)
}

/// Double-precision seed (b, x) for the multiple-zero solve.
fn seed(l: usize) -> Result<(f64, f64)> {
    let (lo, hi, step): (f64, f64, f64) = (1.70, 2.05, 5e-4);
    let steps = ((hi - lo) / step).round() as usize;
    let mut prev = dips_below_zero(l, lo);
    for i in 1..=steps {
        let b = lo + i as f64 * step;
        let now = dips_below_zero(l, b);
        if !prev && now {
            let b_lo = b - step;
            let flag = |t: f64| if dips_below_zero(l, t) { 1.0 } else { -1.0 };
            let bs = bisect(flag, b_lo, b, 1e-15).ok_or(Error::SeedNotBracketed { l })?;
            let probe = if dips_below_zero(l, bs) { bs } else { b };
            let (_, x) = smallest_local_min(l, probe).ok_or(Error::SeedNotBracketed { l })?;
            return Ok((bs, x));
        }
        prev = now;
    }
    Err(Error::SeedNotBracketed { l })
}

/// Σ w(j)·(−1)^j c_j x^j for the weights needed by the Newton systems.
fn weighted_sums(c: &[Mp], x: &Mp, weights: &[fn(i64) -> i64]) -> Vec<Mp> {
    let ctx = x.context();
    let mut sums = vec![Mp::from_i64(ctx, 0); weights.len()];
    let mut pow = Mp::from_i64(ctx, 1);
    for (j, cj) in c.iter().enumerate() {
        let mut t = cj.clone() * pow.clone();
        if j % 2 == 1 {
            t = -t;
        }
        for (s, w) in sums.iter_mut().zip(weights) {
            let wj = w(j as i64);
            if wj != 0 {
                *s = s.clone() + t.clone() * Mp::from_i64(ctx, wj);
            }
        }
        pow *= x.clone();
    }
    sums
}

/// Newton on (F, G) = (Σ u(j) t_j, Σ v(j) t_j) with t_j = (−1)^j b^{−j(j+1)} x^j.
/// Uses ∂t_j/∂b = −j(j+1) t_j / b and ∂t_j/∂x = j t_j / x.
fn newton_system(
    l: usize,
    b_start: &Mp,
    x_start: &Mp,
    u: fn(i64) -> i64,
    v: fn(i64) -> i64,
    tol_digits: u32,
) -> Option<(Mp, Mp, usize)> {
    let ctx = b_start.context();
    let mut b = b_start.clone();
    let mut x = x_start.clone();
    let tol = Mp::parse_decimal(ctx, &format!("1e-{tol_digits}")).ok()?;
    for it in 1..=120 {
        let c = fb_coeffs(&b, l).ok()?.into_coeffs();
        let [f, g, fb, gb, fx, gx] = newton_sums(&c, &x, u, v);
        let fb = fb / b.clone();
        let gb = gb / b.clone();
        let fx = fx / x.clone();
        let gx = gx / x.clone();
        let det = fb.clone() * gx.clone() - fx.clone() * gb.clone();
        if det.is_zero() {
            return None;
        }
        let db = (fx.clone() * g.clone() - gx * f.clone()) / det.clone();
        let dx = (gb * f - fb * g) / det;
        b += db.clone();
        x += dx.clone();
        let bf = b.to_f64();
        let xf = x.to_f64();
        if !(1.5..2.5).contains(&bf) || !(xf > 0.0 && xf < 100.0) {
            return None;
        }
        if db.abs() <= tol.clone() * b.abs() && dx.abs() <= tol.clone() * x.abs() {
            return Some((b, x, it));
        }
    }
    None
}

/// (F, G, b·∂F/∂b, b·∂G/∂b, x·∂F/∂x, x·∂G/∂x).
fn newton_sums(c: &[Mp], x: &Mp, u: fn(i64) -> i64, v: fn(i64) -> i64) -> [Mp; 6] {
    let ctx = x.context();
    let zero = Mp::from_i64(ctx, 0);
    let mut s: [Mp; 6] = std::array::from_fn(|_| zero.clone());
    let mut pow = Mp::from_i64(ctx, 1);
    for (j, cj) in c.iter().enumerate() {
        let j = j as i64;
        let mut t = cj.clone() * pow.clone();
        if j % 2 == 1 {
            t = -t;
        }
        let db = -j * (j + 1);
        let w = [u(j), v(j), db * u(j), db * v(j), j * u(j), j * v(j)];
        for (acc, wk) in s.iter_mut().zip(w) {
            if wk != 0 {
                *acc = acc.clone() + t.clone() * Mp::from_i64(ctx, wk);
            }
        }
        pow *= x.clone();
    }
    s
}

fn w_one(_: i64) -> i64 {
    1
}
fn w_j(j: i64) -> i64 {
    j
}
fn w_jj(j: i64) -> i64 {
    j * (j - 1)
}

fn relative_residuals(c: &[Mp], x: &Mp) -> (f64, f64) {
    let s = weighted_sums(c, x, &[w_one, w_j]);
    let abs_c: Vec<Mp> = c.iter().map(Real::abs).collect();
    // Moduli sums with all signs positive: evaluate at −x.
    let m = weighted_sums(&abs_c, &-x.clone(), &[w_one, w_j]);
    (
        (s[0].abs() / m[0].abs()).to_f64(),
        (s[1].abs() / m[1].abs()).to_f64(),
    )
}

/// b₀(l): the base at which f_{b,l}(−x) acquires a multiple zero x0 > 0,
/// solved at `digits` significant digits.
pub fn critical_base(l: usize, digits: u32) -> Result<CriticalBase> {
    if !(2..=MAX_CRITICAL_L).contains(&l) {
        return Err(domain(format!("l = {l} is outside 2..=12")));
    }
    if digits < 30 {
        return Err(domain(
            "critical bases are computed with at least 30 digits",
        ));
    }
    let work = Decimal(digits + 10);
    let (b_seed, x_seed) = if l == 2 { (2.0, 8.0) } else { seed(l)? };
    let b0 = Mp::from_f64(work, b_seed);
    let x0 = Mp::from_f64(work, x_seed);
    let tol_digits = digits + 5;

    let double = newton_system(l, &b0, &x0, w_one, w_j, tol_digits);
    let (b, x, its, multiplicity) = match double {
        Some((b, x, its)) => (b, x, its, 2),
        None => {
            let (b, x, its) =
                newton_system(l, &b0, &x0, w_j, w_jj, tol_digits).ok_or(Error::NoConvergence {
                    iterations: 120,
                    unconverged: 1,
                    partial: vec![(b_seed, x_seed)],
                })?;
            (b, x, its, 3)
        }
    };
    let c = fb_coeffs(&b, l)?.into_coeffs();
    let residuals = relative_residuals(&c, &x);
    let limit = 10f64.powi(2 - digits as i32);
    if !(residuals.0 <= limit && residuals.1 <= limit) {
        return Err(Error::NoConvergence {
            iterations: its,
            unconverged: 1,
            partial: vec![(b.to_f64(), x.to_f64())],
        });
    }
    let b4 = b.powi(4);
    let x0_in_window = x > Mp::from_i64(work, 0) && x < b4;
    let b2 = b.clone() * b.clone();
    let b0_in_range = b2 > Mp::from_i64(work, 3) && b < Mp::from_i64(work, 2);
    Ok(CriticalBase {
        l,
        digits,
        b0: b.with_digits(digits),
        x0: x.with_digits(digits),
        parity: if l.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        },
        multiplicity,
        residuals,
        newton_iterations: its,
        x0_in_window,
        b0_in_range,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct B0Bracket {
    /// max over odd l of b₀(l).
    pub lower: Mp,
    /// min over even l of b₀(l).
    pub upper: Mp,
    pub width: Mp,
    pub lower_l: usize,
    pub upper_l: usize,
    /// Bracket after each l = 3..=l_max: (l, lower, upper).
    pub history: Vec<(usize, Mp, Mp)>,
    pub bases: Vec<CriticalBase>,
}

/// Brackets B₀ between the odd-l and even-l critical bases for l ≤ l_max.
pub fn squeeze_b0(l_max: usize, digits: u32) -> Result<B0Bracket> {
    if !(5..=MAX_CRITICAL_L).contains(&l_max) {
        return Err(domain("l_max must lie in 5..=12"));
    }
    let results: Vec<Result<CriticalBase>> = std::thread::scope(|s| {
        let handles: Vec<_> = (2..=l_max)
            .map(|l| s.spawn(move || critical_base(l, digits)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("critical base worker panicked"))
            .collect()
    });
    let bases = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut lower: Option<(usize, Mp)> = None;
    let mut upper: Option<(usize, Mp)> = None;
    let mut history = Vec::new();
    for cb in &bases {
        match cb.parity {
            Parity::Odd => {
                if lower.as_ref().is_none_or(|(_, v)| cb.b0 > *v) {
                    lower = Some((cb.l, cb.b0.clone()));
                }
            }
            Parity::Even => {
                if upper.as_ref().is_none_or(|(_, v)| cb.b0 < *v) {
                    upper = Some((cb.l, cb.b0.clone()));
                }
            }
        }
        if let (Some((_, lo)), Some((_, hi))) = (&lower, &upper) {
            history.push((cb.l, lo.clone(), hi.clone()));
        }
    }
    let (lower_l, lower) = lower.expect("l_max >= 5 includes odd l");
    let (upper_l, upper) = upper.expect("l_max >= 5 includes even l");
    Ok(B0Bracket {
        width: upper.clone() - lower.clone(),
        lower,
        upper,
        lower_l,
        upper_l,
        history,
        bases,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParadoxReport {
    pub witness_theta: f64,
    pub witness_n: u32,
    pub witness_coeffs: Vec<f64>,
    pub witness_min_beta: f64,
    pub witness_nonreal_roots: usize,
    pub witness_min_arg: f64,
    pub family_b: Mp,
    pub family_degree: usize,
    pub family_min_beta: Mp,
    pub family_max_beta: Mp,
    pub family_all_real: bool,
    pub family_max_relative_imag: f64,
    pub digits: u32,
}

/// Ratios above 3.99 with nonreal zeros next to ratios of 3.24 with only real zeros.
pub fn paradox_demo() -> Result<ParadoxReport> {
    let theta = 0.99 * PI;
    let n = 1000;
    let witness = sharpness_family(theta, SharpnessBase::G, n, 8)?;
    let wp = witness.beta_profile(false)?;
    let wr = all_roots(&witness)?;
    let nonreal = wr
        .roots
        .iter()
        .filter(|z| z.im.abs() > 1e-9 * z.norm())
        .count();

    let digits = 50;
    let ctx = Decimal(digits);
    let b = Mp::parse_decimal(ctx, "1.8")?;
    let degree = 30;
    let fam = fb_coeffs(&b, degree)?;
    let fp = fam.beta_profile(false)?;
    let max_beta = fp
        .betas
        .iter()
        .cloned()
        .fold(fp.min_beta.clone(), Real::max_of);
    let fr = all_roots(&fam)?;
    Ok(ParadoxReport {
        witness_theta: theta,
        witness_n: n,
        witness_coeffs: witness.coeffs().to_vec(),
        witness_min_beta: wp.min_beta,
        witness_nonreal_roots: nonreal,
        witness_min_arg: wr.min_arg,
        family_b: b,
        family_degree: degree,
        family_min_beta: fp.min_beta,
        family_max_beta: max_beta,
        family_all_real: all_real(&fr, 1e-20),
        family_max_relative_imag: max_relative_imag(&fr),
        digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Mp {
        Mp::parse_decimal(Decimal(50), s).unwrap()
    }

    #[test]
    fn base_two_coefficients() {
        let c = fb_coeffs(&2.0f64, 3).unwrap();
        assert_eq!(c.coeffs(), &[1.0, 0.25, 1.0 / 64.0, 1.0 / 4096.0]);
        assert!(fb_coeffs(&1.0f64, 3).is_err());
        assert!(fb_coeffs(&2.0f64, 0).is_err());
    }

    #[test]
    fn profile_is_b_squared() {
        let p = fb_coeffs(&mp("1.8"), 10)
            .unwrap()
            .beta_profile(false)
            .unwrap();
        assert_eq!(p.min_beta.to_f64(), 3.24);
        for beta in &p.betas {
            assert!((beta.clone() - mp("3.24")).abs().log10_abs() < -48.0);
        }
    }

    #[test]
    fn scaled_family_is_symmetric() {
        for b in [1.8f64, 2.0, 2.3] {
            let c = fb_coeffs(&b, 5).unwrap().scale_reparam(&b.powi(6)).unwrap();
            assert!(c.is_symmetric(1e-12), "b = {b}");
        }
    }

    #[test]
    fn functional_equation() {
        assert_eq!(
            functional_equation_residual(&1.8f64, &0.0, 10).unwrap(),
            0.0
        );
        let r = functional_equation_residual(&mp("1.8"), &mp("5"), 60).unwrap();
        assert!(r.log10_abs() < -20.0);
        let r = functional_equation_residual(&mp("2"), &mp("-3"), 60).unwrap();
        assert!(r.log10_abs() < -20.0);
        // The truncated residual is the single dropped term.
        let r = functional_equation_residual(&2.0f64, &3.0, 4).unwrap();
        let dropped = 3f64.powi(5) * 2f64.powi(-30);
        assert!((r - dropped).abs() < 1e-12 * dropped);
    }

    #[test]
    fn sign_test_examples() {
        assert!(matches!(
            sign_test(&2.0f64, 2).unwrap(),
            SignTest::EvenWitnessFound { x1, .. } if (x1 - 8.0).abs() < 1e-6
        ));
        assert!(matches!(
            sign_test(&1.80f64, 4).unwrap(),
            SignTest::EvenWitnessFound { .. }
        ));
        assert!(matches!(
            sign_test(&1.79f64, 5).unwrap(),
            SignTest::OddNonnegative { .. }
        ));
        assert!(matches!(
            sign_test(&1.79f64, 4).unwrap(),
            SignTest::Inconclusive { .. }
        ));
        assert!(matches!(
            sign_test(&1.81f64, 5).unwrap(),
            SignTest::Inconclusive { .. }
        ));
        assert!(sign_test(&1.7f64, 4).is_err());
    }

    #[test]
    fn sign_test_in_multiprecision() {
        assert!(matches!(
            sign_test(&mp("1.80"), 4).unwrap(),
            SignTest::EvenWitnessFound { .. }
        ));
        assert!(matches!(
            sign_test(&mp("1.79"), 5).unwrap(),
            SignTest::OddNonnegative { .. }
        ));
    }

    #[test]
    fn closed_form_critical_bases() {
        let cb = critical_base(2, 40).unwrap();
        assert!(cb.b0.to_string().starts_with("2"));
        assert!((cb.b0.to_f64() - 2.0).abs() < 1e-30);
        assert!((cb.x0.to_f64() - 8.0).abs() < 1e-12);
        assert!(!cb.b0_in_range);

        let cb = critical_base(3, 40).unwrap();
        assert_eq!(cb.multiplicity, 3);
        let sqrt3 = Real::sqrt(&Mp::from_i64(Decimal(40), 3));
        assert!((cb.b0.clone() - sqrt3).abs().log10_abs() < -35.0);
        assert!((cb.x0.to_f64() - 9.0).abs() < 1e-12);
        // The triple zero sits on the window edge x0 = b0⁴.
        assert!((cb.x0.clone() - cb.b0.powi(4)).abs().log10_abs() < -30.0);

        let cb = critical_base(4, 40).unwrap();
        let five = Mp::from_i64(Decimal(40), 5);
        let closed = Real::sqrt(&(Mp::from_i64(Decimal(40), 1) + Real::sqrt(&five)));
        assert!((cb.b0.clone() - closed).abs().log10_abs() < -35.0);
        assert!((cb.x0.to_f64() - 7.49722).abs() < 1e-5);
        assert!(cb.x0_in_window && cb.b0_in_range);
        assert_eq!(cb.parity, Parity::Even);
    }

    #[test]
    fn table_value_l5() {
        let cb = critical_base(5, 50).unwrap();
        assert!(cb.b0.to_string().starts_with("1.7982270324863302995970201"));
        assert_eq!(cb.parity, Parity::Odd);
        assert!(cb.residuals.0 < 1e-45 && cb.residuals.1 < 1e-45);
    }

    #[test]
    fn monotone_transition_near_critical_bases() {
        for (l, b0) in [
            (4usize, 1.798_907_44),
            (5, 1.798_227_03),
            (6, 1.798_231_547),
            (7, 1.798_231_538),
        ] {
            let above = sign_test(&(b0 + 1e-3), l).unwrap();
            let below = sign_test(&(b0 - 1e-3), l).unwrap();
            if l % 2 == 0 {
                assert!(
                    matches!(above, SignTest::EvenWitnessFound { .. }),
                    "l = {l}"
                );
                assert!(
                    !matches!(below, SignTest::EvenWitnessFound { .. }),
                    "l = {l}"
                );
            } else {
                assert!(matches!(below, SignTest::OddNonnegative { .. }), "l = {l}");
                assert!(!matches!(above, SignTest::OddNonnegative { .. }), "l = {l}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&1.80f64, 30, 30).unwrap();
        assert_eq!(c.verdict, Verdict::AllRealSimple);
        assert_eq!(c.l_witness, Some(4));
        let c = classify(&1.797f64, 30, 30).unwrap();
        assert_eq!(c.verdict, Verdict::NonrealRoots);
        assert_eq!(c.l_witness, Some(5));
        let c = classify(&1.7982f64, 8, 30).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        assert!(classify(&1.7f64, 30, 30).is_err());
    }

    #[test]
    fn squeeze_small() {
        let br = squeeze_b0(5, 30).unwrap();
        assert_eq!((br.lower_l, br.upper_l), (5, 4));
        assert!((br.width.to_f64() - 6.8e-4).abs() < 1e-5);
        assert!(br.lower < br.upper);
    }

    #[test]
    fn symmetric_form_roots_pair_up() {
        let ctx = Decimal(50);
        let b = mp("2.1");
        let n = 9;
        let c = fb_coeffs(&b, n)
            .unwrap()
            .scale_reparam(&b.powi(n as i64 + 1))
            .unwrap();
        let rs = all_roots(&c).unwrap();
        let one = Mp::from_i64(ctx, 1);
        for z in &rs.roots {
            let inv = num_complex::Complex::new(one.clone(), Mp::from_i64(ctx, 0)) / z.clone();
            let best = rs
                .roots
                .iter()
                .map(|w| {
                    let d = w.clone() - inv.clone();
                    (d.norm_sqr() / inv.norm_sqr()).to_f64()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(best.sqrt() < 1e-20);
        }
    }
}
