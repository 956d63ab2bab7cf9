//! Bracketed scalar root finding and minimisation.

use crate::precision::Real;

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping at width `tol`.
/// Returns `None` if the endpoints do not bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Largest root of `f` in `[lo, hi]`, found by scanning down from `hi` with
/// the given step and bisecting the first sign change met.
pub fn largest_root_by_scan<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64) -> Option<f64> {
    let n = ((hi - lo) / step).ceil() as usize;
    let mut x_hi = hi;
    let mut f_hi = f(hi);
    if f_hi == 0.0 {
        return Some(hi);
    }
    for i in 1..=n {
        let x_lo = (hi - i as f64 * step).max(lo);
        let f_lo = f(x_lo);
        if f_lo == 0.0 {
            return Some(x_lo);
        }
        if f_lo.signum() != f_hi.signum() {
            return bisect(&f, x_lo, x_hi, 1e-15 * x_hi.abs().max(1.0));
        }
        x_hi = x_lo;
        f_hi = f_lo;
    }
    None
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimisation of `f` on `[a, b]` in the scalar type `R`,
/// run until the bracket is below `rel_tol` relative to its midpoint.
/// Returns `(argmin, min)`.
pub fn golden_min<R: Real, F: Fn(&R) -> R>(f: F, a: R, b: R, rel_tol: f64) -> (R, R) {
    let ctx = a.context();
    let inv = R::from_f64(ctx, INV_PHI);
    let half = R::from_f64(ctx, 0.5);
    let mut a = a;
    let mut b = b;
    let mut c = b.clone() - inv.clone() * (b.clone() - a.clone());
    let mut d = a.clone() + inv.clone() * (b.clone() - a.clone());
    let mut fc = f(&c);
    let mut fd = f(&d);
    for _ in 0..400 {
        let width = (b.clone() - a.clone()).abs();
        let mid = (a.clone() + b.clone()) * half.clone();
        if width.to_f64() <= rel_tol * mid.abs().to_f64().max(1e-300) {
            break;
        }
        if fc < fd {
            b = d;
            d = c.clone();
            fd = fc;
            c = b.clone() - inv.clone() * (b.clone() - a.clone());
            fc = f(&c);
        } else {
            a = c;
            c = d.clone();
            fc = fd;
            d = a.clone() + inv.clone() * (b.clone() - a.clone());
            fd = f(&d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bisection in the scalar type `R` for a sign change of `f` on `[lo, hi]`,
/// run for `iterations` halvings.
pub fn bisect_real<R: Real, F: Fn(&R) -> R>(f: F, lo: R, hi: R, iterations: usize) -> Option<R> {
    let half = R::from_f64(lo.context(), 0.5);
    let mut lo = lo;
    let mut hi = hi;
    let flo = f(&lo);
    let fhi = f(&hi);
    if flo.is_zero() {
        return Some(lo);
    }
    if fhi.is_zero() {
        return Some(hi);
    }
    let lo_neg = flo.is_negative();
    if lo_neg == fhi.is_negative() {
        return None;
    }
    for _ in 0..iterations {
        let mid = (lo.clone() + hi.clone()) * half.clone();
        let fm = f(&mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) * half)
}
