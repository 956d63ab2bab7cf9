//! Scalar backends: IEEE double and fixed-digit decimal multiprecision.
//!
//! Algorithms that must run at 50 digits are written against [`Real`]; the
//! double-precision instantiation is `f64` itself.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use dashu_float::ops::SquareRoot;
use dashu_float::DBig;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

/// Failure to read a decimal literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal literal {literal:?}")]
pub struct ParseRealError {
    pub literal: String,
}

/// Context for IEEE double arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Double;

/// Context for decimal arithmetic carrying the given number of significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decimal(pub u32);

/// A real scalar type usable by the generic algorithms.
pub trait Real:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Send + Sync + Num + Neg<Output = Self> + 'static
{
    type Context: Copy + fmt::Debug + PartialEq + Send + Sync;

    /// The context the value was built in.
    fn context(&self) -> Self::Context;
    /// Significant decimal digits carried in `ctx`.
    fn digits(ctx: Self::Context) -> u32;
    fn from_f64(ctx: Self::Context, v: f64) -> Self;
    fn from_i64(ctx: Self::Context, v: i64) -> Self;
    fn parse_decimal(ctx: Self::Context, s: &str) -> Result<Self, ParseRealError>;
    /// Relative spacing of representable values in `ctx`.
    fn epsilon(ctx: Self::Context) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// log10|x|, finite even where `to_f64` would overflow. −∞ at zero.
    fn log10_abs(&self) -> f64;
    /// Scientific-notation string with `digits` significant digits.
    fn to_decimal_string(&self, digits: usize) -> String;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 {
            Self::from_i64(self.context(), 1) / self.clone()
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::from_i64(self.context(), 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    type Context = Double;

    fn context(&self) -> Double {
        Double
    }
    fn digits(_: Double) -> u32 {
        15
    }
    fn from_f64(_: Double, v: f64) -> f64 {
        v
    }
    fn from_i64(_: Double, v: i64) -> f64 {
        v as f64
    }
    fn parse_decimal(_: Double, s: &str) -> Result<f64, ParseRealError> {
        s.trim().parse::<f64>().map_err(|_| ParseRealError {
            literal: s.to_string(),
        })
    }
    fn epsilon(_: Double) -> f64 {
        f64::EPSILON
    }
    fn sqrt(&self) -> f64 {
        f64::sqrt(*self)
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn log10_abs(&self) -> f64 {
        f64::abs(*self).log10()
    }
    fn to_decimal_string(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
    fn powi(&self, n: i64) -> f64 {
        match i32::try_from(n) {
            Ok(n) => f64::powi(*self, n),
            Err(_) => f64::powf(*self, n as f64),
        }
    }
}

/// Decimal floating point with a fixed number of significant digits.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp(DBig);

impl Mp {
    pub fn from_dbig(v: DBig) -> Self {
        Mp(v)
    }

    pub fn as_dbig(&self) -> &DBig {
        &self.0
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// Re-round to `digits` significant digits.
    pub fn with_digits(&self, digits: u32) -> Mp {
        Mp(self.0.clone().with_precision(digits as usize).value())
    }

    fn ctx_digits(&self) -> u32 {
        match self.0.precision() {
            0 => 50,
            p => p as u32,
        }
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mp({})",
            self.to_decimal_string(self.ctx_digits() as usize)
        )
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.ctx_digits() as usize))
    }
}

impl Serialize for Mp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Mp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let digits = s.chars().filter(|c| c.is_ascii_digit()).count().max(50) as u32;
        Mp::parse_decimal(Decimal(digits), &s).map_err(serde::de::Error::custom)
    }
}

macro_rules! mp_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Mp {
            type Output = Mp;
            fn $method(self, rhs: Mp) -> Mp {
                Mp(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Mp> for Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a Mp> for &'a Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp(&self.0 $op &rhs.0)
            }
        }
    };
}

mp_binop!(Add, add, +);
mp_binop!(Sub, sub, -);
mp_binop!(Mul, mul, *);

impl Div for Mp {
    type Output = Mp;
    fn div(self, rhs: Mp) -> Mp {
        // Both operands unlimited would make an inexact quotient panic.
        if self.0.precision() == 0 && rhs.0.precision() == 0 {
            let l = self.0.with_precision(50).value();
            return Mp(l / rhs.0);
        }
        Mp(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Mp> for Mp {
    type Output = Mp;
    fn div(self, rhs: &'a Mp) -> Mp {
        self / rhs.clone()
    }
}

impl Rem for Mp {
    type Output = Mp;
    fn rem(self, rhs: Mp) -> Mp {
        let q = (self.clone() / rhs.clone()).0.trunc();
        self - Mp(q) * rhs
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl AddAssign for Mp {
    fn add_assign(&mut self, rhs: Mp) {
        self.0 = std::mem::take(&mut self.0) + rhs.0;
    }
}

impl SubAssign for Mp {
    fn sub_assign(&mut self, rhs: Mp) {
        self.0 = std::mem::take(&mut self.0) - rhs.0;
    }
}

impl MulAssign for Mp {
    fn mul_assign(&mut self, rhs: Mp) {
        self.0 = std::mem::take(&mut self.0) * rhs.0;
    }
}

impl Zero for Mp {
    fn zero() -> Mp {
        Mp(DBig::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == DBig::ZERO
    }
}

impl One for Mp {
    fn one() -> Mp {
        Mp(DBig::ONE)
    }
}

impl Num for Mp {
    type FromStrRadixErr = ParseRealError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Mp, ParseRealError> {
        if radix != 10 {
            return Err(ParseRealError {
                literal: s.to_string(),
            });
        }
        DBig::from_str(s.trim())
            .map(Mp)
            .map_err(|_| ParseRealError {
                literal: s.to_string(),
            })
    }
}

impl Real for Mp {
    type Context = Decimal;

    fn context(&self) -> Decimal {
        Decimal(self.ctx_digits())
    }
    fn digits(ctx: Decimal) -> u32 {
        ctx.0
    }
    fn from_f64(ctx: Decimal, v: f64) -> Mp {
        assert!(v.is_finite(), "non-finite value {v} cannot be converted");
        // `{:e}` prints the shortest string that round-trips, so no binary noise is invented.
        Mp::parse_decimal(ctx, &format!("{v:e}")).expect("formatted f64 parses")
    }
    fn from_i64(ctx: Decimal, v: i64) -> Mp {
        Mp(DBig::from(v).with_precision(ctx.0 as usize).value())
    }
    fn parse_decimal(ctx: Decimal, s: &str) -> Result<Mp, ParseRealError> {
        let v = DBig::from_str(s.trim()).map_err(|_| ParseRealError {
            literal: s.to_string(),
        })?;
        Ok(Mp(v.with_precision(ctx.0 as usize).value()))
    }
    fn epsilon(ctx: Decimal) -> Mp {
        let e = DBig::from_parts(1.into(), 1 - ctx.0 as isize);
        Mp(e.with_precision(ctx.0 as usize).value())
    }
    fn sqrt(&self) -> Mp {
        if self.0 == DBig::ZERO {
            return self.clone();
        }
        let v = if self.0.precision() == 0 {
            self.0.clone().with_precision(50).value()
        } else {
            self.0.clone()
        };
        Mp(v.sqrt())
    }
    fn abs(&self) -> Mp {
        if self.0 < DBig::ZERO {
            Mp(-self.0.clone())
        } else {
            self.clone()
        }
    }
    fn to_f64(&self) -> f64 {
        // DBig::to_f64 trips a debug assertion in dashu when the significand is
        // longer than the precision; go through a short decimal instead.
        let short = self.0.clone().with_precision(20).value();
        let (sig, exp) = short.into_repr().into_parts();
        format!("{sig}e{exp}").parse().unwrap_or(f64::NAN)
    }
    fn log10_abs(&self) -> f64 {
        if self.0 == DBig::ZERO {
            return f64::NEG_INFINITY;
        }
        let short = self.0.clone().with_precision(17).value();
        let (sig, exp) = short.into_repr().into_parts();
        let s: f64 = sig.to_string().parse().unwrap_or(1.0);
        s.abs().log10() + exp as f64
    }
    fn to_decimal_string(&self, digits: usize) -> String {
        if self.0 == DBig::ZERO {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let short = self.0.clone().with_precision(digits).value();
        let (sig, exp) = short.into_repr().into_parts();
        let neg = self.0 < DBig::ZERO;
        let mut mant = sig.to_string().trim_start_matches('-').to_string();
        let mut exp = exp as i64;
        // Normalise away trailing zeros kept by the representation.
        while mant.len() > 1 && mant.ends_with('0') {
            mant.pop();
            exp += 1;
        }
        let sci = exp + mant.len() as i64 - 1;
        let sign = if neg { "-" } else { "" };
        if (-6..=21).contains(&sci) {
            if exp >= 0 {
                format!("{sign}{mant}{}", "0".repeat(exp as usize))
            } else if sci >= 0 {
                let split = (sci + 1) as usize;
                format!("{sign}{}.{}", &mant[..split], &mant[split..])
            } else {
                format!("{sign}0.{}{mant}", "0".repeat((-sci - 1) as usize))
            }
        } else {
            let (head, tail) = mant.split_at(1);
            if tail.is_empty() {
                format!("{sign}{head}e{sci}")
            } else {
                format!("{sign}{head}.{tail}e{sci}")
            }
        }
    }
}

impl PartialEq<f64> for Mp {
    fn eq(&self, other: &f64) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd<f64> for Mp {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        if !other.is_finite() {
            return 0.0f64.partial_cmp(other);
        }
        let o = Mp::from_f64(Decimal(self.ctx_digits().max(20)), *other);
        self.0.partial_cmp(&o.0)
    }
}

/// Working precision selected by a caller: double for up to 15 digits,
/// decimal multiprecision beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precision {
    Double,
    Decimal(u32),
}

impl Precision {
    pub fn from_digits(digits: u32) -> Precision {
        if digits <= 15 {
            Precision::Double
        } else {
            Precision::Decimal(digits)
        }
    }

    pub fn digits(self) -> u32 {
        match self {
            Precision::Double => 15,
            Precision::Decimal(d) => d,
        }
    }
}
