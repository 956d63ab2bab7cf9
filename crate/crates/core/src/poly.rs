//! Coefficient sequences, β-profiles and reparameterizations.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::precision::Real;

/// Coefficients c_0..c_N of Σ c_j z^j, lowest degree first, with c_N ≠ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq<R: Real = f64> {
    coeffs: Vec<R>,
}

impl<R: Real> CoeffSeq<R> {
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeTooSmall {
                required: 1,
                found: coeffs.len().saturating_sub(1),
            });
        }
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(CoeffSeq { coeffs })
    }

    /// Parses decimal literals in the given context, so inputs carry no binary rounding.
    pub fn parse_decimals<S: AsRef<str>>(ctx: R::Context, items: &[S]) -> Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| R::parse_decimal(ctx, s.as_ref()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn context(&self) -> R::Context {
        self.coeffs[self.degree()].context()
    }

    pub fn to_f64(&self) -> CoeffSeq<f64> {
        CoeffSeq {
            coeffs: self.coeffs.iter().map(Real::to_f64).collect(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| *c > R::zero())
    }

    pub(crate) fn require_positive(&self) -> Result<()> {
        match self.coeffs.iter().position(|c| !(*c > R::zero())) {
            Some(index) => Err(Error::NonPositiveCoefficient { index }),
            None => Ok(()),
        }
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: &Complex<R>) -> Complex<R> {
        let mut acc = Complex::new(R::zero(), R::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    /// Horner evaluation at a real point.
    pub fn eval_real(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// c'_j = c_j λ^j, the coefficients of f(λz).
    pub fn scale_reparam(&self, lambda: &R) -> Result<Self> {
        if !(*lambda > R::zero()) {
            return Err(domain("scaling factor must be positive"));
        }
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * lambda.clone();
        }
        Self::new(out)
    }

    /// Reversed coefficients, the coefficients of z^N f(1/z).
    pub fn opposite(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(CoeffSeq {
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        })
    }

    /// True iff |c_j − c_{N−j}| ≤ tol·max|c| for all j.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self
            .coeffs
            .iter()
            .map(Real::abs)
            .fold(R::zero(), Real::max_of);
        let bound = scale * R::from_f64(self.context(), tol);
        let n = self.degree();
        (0..=n / 2).all(|j| (self.coeffs[j].clone() - self.coeffs[n - j].clone()).abs() <= bound)
    }

    /// Product of two polynomials.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        CoeffSeq { coeffs: out }
    }

    pub fn beta_profile(&self, use_moduli: bool) -> Result<BetaProfile<R>> {
        beta_profile(self, use_moduli)
    }
}

/// The ratios β_j = c_j²/(c_{j+1}c_{j−1}) for j = 1..N−1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaProfile<R: Real = f64> {
    pub betas: Vec<R>,
    pub min_beta: R,
    /// j at which the minimum is attained (smallest such j).
    pub argmin: usize,
    /// Smallest index of a maximal |c_j|.
    pub mode_index: usize,
}

impl<R: Real> BetaProfile<R> {
    /// β_j for j in 1..N.
    pub fn beta(&self, j: usize) -> &R {
        &self.betas[j - 1]
    }
}

pub fn beta_profile<R: Real>(c: &CoeffSeq<R>, use_moduli: bool) -> Result<BetaProfile<R>> {
    let n = c.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall {
            required: 2,
            found: n,
        });
    }
    for (index, v) in c.coeffs.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::ZeroCoefficient { index });
        }
        if !use_moduli && v.is_negative() {
            return Err(Error::NonPositiveCoefficient { index });
        }
    }
    let d: Vec<R> = if use_moduli {
        c.coeffs.iter().map(Real::abs).collect()
    } else {
        c.coeffs.clone()
    };
    let betas: Vec<R> = (1..n)
        .map(|j| d[j].clone() * d[j].clone() / (d[j + 1].clone() * d[j - 1].clone()))
        .collect();
    let mut argmin = 1;
    for (i, b) in betas.iter().enumerate() {
        if *b < betas[argmin - 1] {
            argmin = i + 1;
        }
    }
    Ok(BetaProfile {
        min_beta: betas[argmin - 1].clone(),
        betas,
        argmin,
        mode_index: mode_index(&d),
    })
}

/// Smallest index of a maximal |a_j|.
pub fn mode_index<R: Real>(a: &[R]) -> usize {
    let mut best = 0;
    for j in 1..a.len() {
        if a[j].abs() > a[best].abs() {
            best = j;
        }
    }
    best
}

/// All indices attaining the maximal |a_j|.
pub fn modes<R: Real>(a: &[R]) -> Vec<usize> {
    let m = a[mode_index(a)].abs();
    (0..a.len()).filter(|&j| a[j].abs() == m).collect()
}

/// Weakly increasing up to some index and weakly decreasing afterwards.
pub fn is_unimodal<R: Real>(a: &[R]) -> bool {
    let mut j = 1;
    while j < a.len() && a[j] >= a[j - 1] {
        j += 1;
    }
    while j < a.len() && a[j] <= a[j - 1] {
        j += 1;
    }
    j >= a.len()
}

/// Reads a coefficient source: either a JSON array (of numbers or strings) or
/// one decimal literal per line with `#` comments. Returns the literals, index 0 first.
pub fn parse_coefficient_source(text: &str) -> Result<Vec<String>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let value: serde_json::Value = serde_json::from_str(trimmed)
            .map_err(|e| Error::CoefficientSource(format!("invalid JSON: {e}")))?;
        let items = value
            .as_array()
            .ok_or_else(|| Error::CoefficientSource("expected a JSON array".into()))?;
        return items
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s.trim().to_string()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::CoefficientSource(format!(
                    "unsupported JSON entry {other}"
                ))),
            })
            .collect();
    }
    let mut out = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            out.push(body.to_string());
        }
    }
    if out.is_empty() {
        return Err(Error::CoefficientSource("no coefficients found".into()));
    }
    Ok(out)
}
