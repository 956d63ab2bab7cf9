use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// An angle as typed on the command line, kept alongside its value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Angle {
    pub input: String,
    pub radians: f64,
    pub pi_fraction: f64,
}

impl Angle {
    pub fn from_radians(radians: f64) -> Angle {
        Angle {
            input: format!("{radians}"),
            radians,
            pi_fraction: radians / PI,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleError(String);

impl fmt::Display for AngleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot read {:?} as an angle (use radians, `0.75pi`, `3pi/4` or `pi`)",
            self.0
        )
    }
}

impl std::error::Error for AngleError {}

impl FromStr for Angle {
    type Err = AngleError;

    /// Accepts raw radians or `[k]pi[/d]`, with `π` as a synonym for `pi`.
    fn from_str(s: &str) -> Result<Angle, AngleError> {
        let err = || AngleError(s.to_string());
        let t = s
            .trim()
            .to_lowercase()
            .replace('π', "pi")
            .replace(['*', ' '], "");
        let pi_fraction = match t.split_once("pi") {
            None => {
                let radians: f64 = t.parse().map_err(|_| err())?;
                if !radians.is_finite() {
                    return Err(err());
                }
                return Ok(Angle {
                    input: s.to_string(),
                    radians,
                    pi_fraction: radians / PI,
                });
            }
            Some((k, rest)) => {
                let k = match k {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    k => k.parse::<f64>().map_err(|_| err())?,
                };
                let d = match rest {
                    "" => 1.0,
                    r => r
                        .strip_prefix('/')
                        .ok_or_else(err)?
                        .parse::<f64>()
                        .map_err(|_| err())?,
                };
                if d == 0.0 || !k.is_finite() || !d.is_finite() {
                    return Err(err());
                }
                k / d
            }
        };
        Ok(Angle {
            input: s.to_string(),
            radians: pi_fraction * PI,
            pi_fraction,
        })
    }
}
