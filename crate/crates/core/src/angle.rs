//! Angles on the circle `T = R/Z`, kept exact when rational.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `R/Z`. Rational angles carry exact numerator/denominator so
/// that phases `e^{2 pi i n p/q}` reduce the exponent modulo `q` before any
/// floating-point work.
#[derive(Clone, Copy, Debug)]
pub enum Angle {
    Rational { p: i64, q: i64 },
    Real(f64),
}

/// Denominators above this bound are treated as stand-ins for angles of
/// infinite order.
pub const INFINITE_ORDER_DENOMINATOR: i64 = 1_000_000;

impl Angle {
    pub const ZERO: Angle = Angle::Rational { p: 0, q: 1 };

    /// Reduced rational angle `p/q mod 1`.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(Error::ZeroDenominator);
        }
        let p = p.rem_euclid(q);
        let g = gcd(p, q);
        Ok(Angle::Rational { p: p / g, q: q / g })
    }

    pub fn real(x: f64) -> Self {
        Angle::Real(x.rem_euclid(1.0))
    }

    /// `(sqrt(5) - 1) / 2`, the default irrational probe.
    pub fn golden() -> Self {
        Angle::Real((5f64.sqrt() - 1.0) / 2.0)
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Angle::Rational { p, q } => p as f64 / q as f64,
            Angle::Real(x) => x,
        }
    }

    pub fn neg(self) -> Self {
        match self {
            Angle::Rational { p, q } => Angle::Rational { p: (q - p) % q, q },
            Angle::Real(x) => Angle::real(-x),
        }
    }

    /// `e^{2 pi i n angle}`.
    pub fn phase(self, n: i64) -> Complex64 {
        match self {
            Angle::Rational { p, q } => {
                let r = (n as i128 * p as i128).rem_euclid(q as i128) as i64;
                root_of_unity(r, q)
            }
            Angle::Real(x) => turn((n as f64 * x).rem_euclid(1.0)),
        }
    }

    /// `e^{2 pi i angle}`.
    pub fn unit(self) -> Complex64 {
        self.phase(1)
    }

    /// Whether the angle is accepted as a proxy for an element of infinite
    /// order. This is never a proof: every double is rational.
    pub fn is_infinite_order_proxy(self) -> bool {
        match self {
            Angle::Rational { q, .. } => q > INFINITE_ORDER_DENOMINATOR,
            Angle::Real(x) => x != 0.0,
        }
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::Rational { p: a, q: b }, Angle::Rational { p: c, q: d }) => a == c && b == d,
            (Angle::Real(a), Angle::Real(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Eq for Angle {}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational { p, q } => write!(f, "{p}/{q}"),
            Angle::Real(x) => write!(f, "{x:.17e}"),
        }
    }
}

/// Accepts either a decimal (`0.37`) or a rational pair (`2,5`).
impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Some((p, q)) = s.split_once(',') {
            let p: i64 = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let q: i64 = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            Angle::rational(p, q).map_err(|e| e.to_string())
        } else {
            let x: f64 = s.trim().parse().map_err(|e| format!("bad angle: {e}"))?;
            if !x.is_finite() {
                return Err("angle must be finite".into());
            }
            Ok(Angle::real(x))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AngleRepr {
    Pair([i64; 2]),
    Real(f64),
}

impl Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Angle::Rational { p, q } => AngleRepr::Pair([p, q]),
            Angle::Real(x) => AngleRepr::Real(x),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match AngleRepr::deserialize(d)? {
            AngleRepr::Pair([p, q]) => Angle::rational(p, q).map_err(serde::de::Error::custom),
            AngleRepr::Real(x) if x.is_finite() => Ok(Angle::real(x)),
            AngleRepr::Real(_) => Err(serde::de::Error::custom("angle must be finite")),
        }
    }
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `e^{2 pi i r/q}` for `0 <= r < q`, exact at multiples of a quarter turn.
pub fn root_of_unity(r: i64, q: i64) -> Complex64 {
    let r = r.rem_euclid(q);
    if (4 * r as i128) % q as i128 == 0 {
        return match (4 * r as i128) / q as i128 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    turn(r as f64 / q as f64)
}

/// `e^{2 pi i x}`.
pub fn turn(x: f64) -> Complex64 {
    let (s, c) = (2.0 * std::f64::consts::PI * x).sin_cos();
    Complex64::new(c, s)
}
