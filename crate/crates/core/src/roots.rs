//! Numerical root oracle: Aberth–Ehrlich simultaneous iteration at any [`Real`] precision.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::CoeffSeq;
use crate::precision::Real;

/// All roots of a polynomial, with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<R: Real = f64> {
    /// Sorted by modulus, then by argument.
    pub roots: Vec<Complex<R>>,
    /// max over roots of |f(z)| / Σ|c_j||z|^j.
    pub residual_bound: f64,
    /// min over roots of |arg z|.
    pub min_arg: f64,
    pub iterations: usize,
    pub digits: u32,
}

impl<R: Real> RootSet<R> {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.roots.iter().map(modulus_f64).collect()
    }

    pub fn to_f64_pairs(&self) -> Vec<(f64, f64)> {
        self.roots
            .iter()
            .map(|z| (z.re.to_f64(), z.im.to_f64()))
            .collect()
    }
}

/// Solver limits.
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub max_iterations: usize,
    pub merge_clusters: bool,
}

impl RootOptions {
    pub fn for_degree(n: usize) -> Self {
        RootOptions {
            max_iterations: 200 + 5 * n,
            merge_clusters: true,
        }
    }
}

pub fn all_roots<R: Real>(c: &CoeffSeq<R>) -> Result<RootSet<R>> {
    let z: Vec<Complex<R>> = c
        .coeffs()
        .iter()
        .map(|v| Complex::new(v.clone(), R::zero()))
        .collect();
    all_roots_complex(&z)
}

pub fn all_roots_complex<R: Real>(coeffs: &[Complex<R>]) -> Result<RootSet<R>> {
    all_roots_with(coeffs, RootOptions::for_degree(coeffs.len()))
}

pub fn all_roots_with<R: Real>(coeffs: &[Complex<R>], opts: RootOptions) -> Result<RootSet<R>> {
    if coeffs.len() < 2 {
        return Err(Error::DegreeTooSmall {
            required: 1,
            found: coeffs.len().saturating_sub(1),
        });
    }
    let lead = &coeffs[coeffs.len() - 1];
    if lead.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let ctx = if lead.re.is_zero() {
        lead.im.context()
    } else {
        lead.re.context()
    };
    let digits = R::digits(ctx);

    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let a = &coeffs[zeros..];
    let n = a.len() - 1;
    let mut roots: Vec<Complex<R>> = Vec::with_capacity(coeffs.len() - 1);
    let mut iterations = 0;

    if n == 1 {
        roots.push(-(a[0].clone() / a[1].clone()));
    } else if n > 1 {
        let (found, its) = aberth(a, ctx, opts)?;
        iterations = its;
        roots.extend(found);
    }
    for _ in 0..zeros {
        roots.push(Complex::new(R::zero(), R::zero()));
    }

    if opts.merge_clusters {
        merge_clusters(&mut roots, digits);
    }
    sort_roots(&mut roots);

    let moduli: Vec<R> = coeffs.iter().map(cabs).collect();
    let residual_bound = roots
        .iter()
        .map(|z| {
            let ev = eval_scaled(coeffs, &moduli, z);
            if ev.bound.is_zero() {
                0.0
            } else {
                (cabs(&ev.value) / ev.bound).to_f64()
            }
        })
        .fold(0.0, f64::max);
    let min_arg = roots
        .iter()
        .map(arg_abs)
        .fold(std::f64::consts::PI, f64::min);
    Ok(RootSet {
        roots,
        residual_bound,
        min_arg,
        iterations,
        digits,
    })
}

/// T(f) = min |arg z| over the roots.
pub fn min_arg<R: Real>(rs: &RootSet<R>) -> f64 {
    rs.min_arg
}

/// Number of roots with r_in < |z| < r_out. Fails if a root sits within
/// 1e-9 (relative) of either circle, where the count would be unreliable.
pub fn count_in_annulus<R: Real>(rs: &RootSet<R>, r_in: f64, r_out: f64) -> Result<usize> {
    if !(r_in < r_out) {
        return Err(crate::error::domain("annulus needs r_in < r_out"));
    }
    const TOL: f64 = 1e-9;
    let mut count = 0;
    for m in rs.moduli() {
        for r in [r_in, r_out] {
            if r.is_finite() && r > 0.0 && (m - r).abs() <= TOL * r {
                return Err(Error::RootOnBoundary {
                    radius: r,
                    tolerance: TOL,
                });
            }
        }
        if m > r_in && m < r_out {
            count += 1;
        }
    }
    Ok(count)
}

/// True iff every root has |Im z| ≤ tol·max(1, |z|).
pub fn all_real<R: Real>(rs: &RootSet<R>, tol: f64) -> bool {
    rs.roots.iter().all(|z| is_real_root(z, tol))
}

pub fn is_real_root<R: Real>(z: &Complex<R>, tol: f64) -> bool {
    let ctx = z.re.context();
    let scale = cabs(z).max_of(R::one());
    z.im.abs() <= R::from_f64(ctx, tol) * scale
}

/// Largest |Im z| / |z| over the roots.
pub fn max_relative_imag<R: Real>(rs: &RootSet<R>) -> f64 {
    rs.roots
        .iter()
        .map(|z| {
            let m = cabs(z);
            if m.is_zero() {
                0.0
            } else {
                (z.im.abs() / m).to_f64()
            }
        })
        .fold(0.0, f64::max)
}

/// |arg z| in [0, π], robust for moduli beyond the f64 range.
pub fn arg_abs<R: Real>(z: &Complex<R>) -> f64 {
    let scale = z.re.abs().max_of(z.im.abs());
    if scale.is_zero() {
        return 0.0;
    }
    let re = (z.re.clone() / scale.clone()).to_f64();
    let im = (z.im.clone() / scale).to_f64();
    im.atan2(re).abs()
}

fn modulus_f64<R: Real>(z: &Complex<R>) -> f64 {
    cabs(z).to_f64()
}

/// |z| with scaling, so tiny or huge components do not underflow or overflow when squared.
pub(crate) fn cabs<R: Real>(z: &Complex<R>) -> R {
    let (x, y) = (z.re.abs(), z.im.abs());
    let big = x.clone().max_of(y.clone());
    if big.is_zero() {
        return big;
    }
    let small = x.min_of(y);
    let q = small / big.clone();
    big * (R::one() + q.clone() * q).sqrt()
}

struct Scaled<R: Real> {
    value: Complex<R>,
    /// Newton ratio f/f' (None when f' vanishes).
    ratio: Option<Complex<R>>,
    /// Σ|a_j||z|^j, in the same scaling as `value`.
    bound: R,
}

/// Evaluates f at z; for |z| > 1 the reversed polynomial at 1/z is used so
/// that the large powers never form.
fn eval_scaled<R: Real>(a: &[Complex<R>], moduli: &[R], z: &Complex<R>) -> Scaled<R> {
    let n = a.len() - 1;
    let zero = Complex::new(R::zero(), R::zero());
    let r2 = z.norm_sqr();
    if r2 <= R::one() {
        let r = r2.sqrt();
        let mut p = a[n].clone();
        let mut dp = zero;
        let mut bound = moduli[n].clone();
        for j in (0..n).rev() {
            dp = dp * z.clone() + p.clone();
            p = p * z.clone() + a[j].clone();
            bound = bound * r.clone() + moduli[j].clone();
        }
        let ratio = if dp.is_zero() {
            None
        } else {
            Some(p.clone() / dp)
        };
        Scaled {
            value: p,
            ratio,
            bound,
        }
    } else {
        let w = Complex::new(R::one(), R::zero()) / z.clone();
        let rw = (R::one() / r2).sqrt();
        let mut q = a[0].clone();
        let mut dq = zero;
        let mut bound = moduli[0].clone();
        for j in 1..=n {
            dq = dq * w.clone() + q.clone();
            q = q * w.clone() + a[j].clone();
            bound = bound * rw.clone() + moduli[j].clone();
        }
        let nn = R::from_i64(z.re.context(), n as i64);
        let denom = q.clone() * nn - w * dq;
        let ratio = if denom.is_zero() {
            None
        } else {
            Some(z.clone() * q.clone() / denom)
        };
        Scaled {
            value: q,
            ratio,
            bound,
        }
    }
}

fn initial_points<R: Real>(a: &[Complex<R>], ctx: R::Context) -> Vec<Complex<R>> {
    let n = a.len() - 1;
    let logs: Vec<f64> = a.iter().map(|c| cabs(c).log10_abs()).collect();
    // Upper convex hull of (j, log10|a_j|).
    let mut hull: Vec<usize> = Vec::new();
    for j in 0..=n {
        if !logs[j].is_finite() {
            continue;
        }
        while hull.len() >= 2 {
            let (i1, i2) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (i2 as f64 - i1 as f64) * (logs[j] - logs[i1])
                - (logs[i2] - logs[i1]) * (j as f64 - i1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    let ten = R::from_i64(ctx, 10);
    let mut pts = Vec::with_capacity(n);
    for (e, w) in hull.windows(2).enumerate() {
        let (i, k) = (w[0], w[1]);
        let m = k - i;
        let log_u = (logs[i] - logs[k]) / m as f64;
        let whole = log_u.floor();
        let u = R::from_f64(ctx, 10f64.powf(log_u - whole)) * ten.powi(whole as i64);
        for t in 0..m {
            let ang = std::f64::consts::TAU * (t as f64 / m as f64 + e as f64 / n as f64) + 0.4;
            pts.push(Complex::new(
                u.clone() * R::from_f64(ctx, ang.cos()),
                u.clone() * R::from_f64(ctx, ang.sin()),
            ));
        }
    }
    pts
}

fn aberth<R: Real>(
    a: &[Complex<R>],
    ctx: R::Context,
    opts: RootOptions,
) -> Result<(Vec<Complex<R>>, usize)> {
    let n = a.len() - 1;
    let digits = R::digits(ctx);
    let moduli: Vec<R> = a.iter().map(cabs).collect();
    let step_tol = R::from_f64(ctx, 10f64.powi(2 - digits as i32));
    let eps = R::epsilon(ctx);
    let be_tol = eps.clone() * R::from_i64(ctx, 4 * n as i64 + 8);
    let one = Complex::new(R::one(), R::zero());
    let nudge = Complex::new(R::one(), R::from_f64(ctx, 1e-3));

    let mut z = initial_points(a, ctx);
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < opts.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let ev = eval_scaled(a, &moduli, &z[i]);
            if cabs(&ev.value) <= be_tol.clone() * ev.bound.clone() {
                done[i] = true;
                continue;
            }
            let Some(ratio) = ev.ratio else {
                z[i] = z[i].clone() * nudge.clone();
                continue;
            };
            let mut s = Complex::new(R::zero(), R::zero());
            for j in 0..n {
                if j != i {
                    let d = z[i].clone() - z[j].clone();
                    if !d.is_zero() {
                        s = s + one.clone() / d;
                    }
                }
            }
            let denom = one.clone() - ratio.clone() * s;
            let corr = if denom.is_zero() {
                ratio
            } else {
                ratio / denom
            };
            z[i] = z[i].clone() - corr.clone();
            if cabs(&corr) <= step_tol.clone() * cabs(&z[i]) {
                done[i] = true;
            }
        }
    }

    if done.iter().any(|d| !d) {
        let loose = eps.sqrt();
        let unsettled: Vec<usize> = (0..n)
            .filter(|&i| !done[i])
            .filter(|&i| {
                let ev = eval_scaled(a, &moduli, &z[i]);
                cabs(&ev.value) > loose.clone() * ev.bound
            })
            .collect();
        if !unsettled.is_empty() {
            return Err(Error::NoConvergence {
                iterations,
                unconverged: unsettled.len(),
                partial: z.iter().map(|v| (v.re.to_f64(), v.im.to_f64())).collect(),
            });
        }
    }
    Ok((z, iterations))
}

/// Replaces roots closer than 10^{2−digits/2} (relative) by their cluster centroid.
/// A k-fold root is only resolved to about ε^{1/k}, so the radius sits a little
/// above the square root of the unit roundoff.
fn merge_clusters<R: Real>(roots: &mut [Complex<R>], digits: u32) {
    let n = roots.len();
    if n < 2 {
        return;
    }
    let ctx = roots[0].re.context();
    let thr = R::from_f64(ctx, 10f64.powf(2.0 - digits as f64 / 2.0));
    let thr2 = thr.clone() * thr;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut any = false;
    for i in 0..n {
        for j in i + 1..n {
            let scale = roots[i].norm_sqr().max_of(R::one());
            if (roots[i].clone() - roots[j].clone()).norm_sqr() <= thr2.clone() * scale {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj] = ri;
                    any = true;
                }
            }
        }
    }
    if !any {
        return;
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    for members in groups.values().filter(|m| m.len() > 1) {
        let k = R::from_i64(ctx, members.len() as i64);
        let mut sum = Complex::new(R::zero(), R::zero());
        for &i in members {
            sum = sum + roots[i].clone();
        }
        let centroid = Complex::new(sum.re / k.clone(), sum.im / k);
        for &i in members {
            roots[i] = centroid.clone();
        }
    }
}

fn sort_roots<R: Real>(roots: &mut [Complex<R>]) {
    roots.sort_by(|x, y| {
        let (mx, my) = (cabs(x), cabs(y));
        mx.partial_cmp(&my)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| {
                let ax = x.im.to_f64().atan2(x.re.to_f64());
                let ay = y.im.to_f64().atan2(y.re.to_f64());
                ax.partial_cmp(&ay).unwrap_or(std::cmp::Ordering::Equal)
            })
    });
}
