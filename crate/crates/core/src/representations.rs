//! Unitary representations of the Heisenberg group evaluated on group-ring
//! elements.
//!
//! At a rational angle `theta = p/q` the representation indexed by
//! `(s, t)` acts on `C^q` by
//!
//! ```text
//! X = e^{2 pi i s} S,   (S v)_i = v_{i+1 mod q}
//! Y = e^{2 pi i t} diag(1, w, w^2, ..., w^{q-1}),   w = e^{2 pi i theta}
//! Z = w I
//! ```
//!
//! so that `XY = w YX`. For irrational probing we use finite sections of the
//! monomial representations on `l2(Z)`, restricted to the coordinates
//! `n in [-N, N]` with zero boundary.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{gcd, root_of_unity, turn, Angle};
use crate::error::{Error, Result};
use crate::group_ring::{Coefficient, GroupRingElement, Monomial};

/// Parameters `(p, q, s, t)` of a finite-dimensional representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepPoint {
    p: i64,
    q: i64,
    s: f64,
    t: f64,
}

impl RepPoint {
    /// Requires `0 <= p < q` with `gcd(p, q) = 1`; `s` and `t` are reduced
    /// modulo 1.
    pub fn new(p: i64, q: i64, s: f64, t: f64) -> Result<Self> {
        if q <= 0 {
            return Err(Error::ZeroDenominator);
        }
        if !(0..q).contains(&p) || gcd(p, q) != 1 {
            return Err(Error::NotReduced { p, q });
        }
        if !s.is_finite() || !t.is_finite() {
            return Err(Error::InvalidConfig("s and t must be finite".into()));
        }
        Ok(RepPoint { p, q, s: s.rem_euclid(1.0), t: t.rem_euclid(1.0) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn theta(&self) -> Angle {
        Angle::Rational { p: self.p, q: self.q }
    }

    pub fn dim(&self) -> usize {
        self.q as usize
    }
}

/// `pi(f)` at a representation point.
#[derive(Clone, Debug)]
pub struct RepMatrix {
    pub entries: DMatrix<Complex64>,
    pub point: RepPoint,
}

/// Images of `x`, `y` and `z`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub x: DMatrix<Complex64>,
    pub y: DMatrix<Complex64>,
    pub z: DMatrix<Complex64>,
}

pub fn rep_generators(point: &RepPoint) -> Generators {
    let q = point.dim();
    let theta = point.theta();
    let es = turn(point.s);
    let et = turn(point.t);
    let x = DMatrix::from_fn(q, q, |i, j| if j == (i + 1) % q { es } else { Complex64::default() });
    let y = DMatrix::from_fn(q, q, |i, j| {
        if i == j {
            et * theta.phase(i as i64)
        } else {
            Complex64::default()
        }
    });
    let z = DMatrix::from_diagonal_element(q, q, theta.unit());
    Generators { x, y, z }
}

/// `pi(f) = sum f_{k,l,m} X^k Y^l Z^m`.
///
/// `X^k Y^l Z^m` is a phased permutation matrix with entries at
/// `(i, i + k mod q)`, so each term costs `O(q)`.
pub fn evaluate<C: Coefficient>(f: &GroupRingElement<C>, point: &RepPoint) -> RepMatrix {
    let q = point.q;
    let n = q as usize;
    let units: Vec<Complex64> = (0..q).map(|r| root_of_unity(r, q)).collect();
    let p = point.p as i128;
    let mut entries = DMatrix::zeros(n, n);
    for (mono, c) in f.terms() {
        let Monomial { k, l, m } = mono;
        let prefactor = c.to_complex()
            * turn(((point.s * k as f64).rem_euclid(1.0) + (point.t * l as f64).rem_euclid(1.0)).rem_euclid(1.0));
        let l = l as i128;
        let m = m as i128;
        for i in 0..q {
            let j = (i + k.rem_euclid(q)) % q;
            // w^{l j + m} with w = e^{2 pi i p/q}
            let r = ((l * j as i128 + m) * p).rem_euclid(q as i128) as usize;
            entries[(i as usize, j as usize)] += prefactor * units[r];
        }
    }
    RepMatrix { entries, point: *point }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowVariant {
    /// `(x^k y^l z^m F)(n) = e^{2 pi i (m theta - k (n theta + s))} F(n + l)`
    Induced,
    /// `x F(n) = F(n+1)`, `y F(n) = zeta chi^n F(n)`, `z = chi`, with
    /// `zeta = e^{2 pi i s}` and `chi = e^{2 pi i theta}`.
    ZetaChi,
}

/// Finite section of a monomial representation on `n in [-N, N]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowedRep {
    pub theta: Angle,
    pub s: f64,
    pub half_width: usize,
    pub variant: WindowVariant,
}

impl WindowedRep {
    pub fn induced(theta: Angle, s: f64, half_width: usize) -> Self {
        WindowedRep { theta, s, half_width, variant: WindowVariant::Induced }
    }

    pub fn zeta_chi(theta: Angle, s: f64, half_width: usize) -> Self {
        WindowedRep { theta, s, half_width, variant: WindowVariant::ZetaChi }
    }

    pub fn dim(&self) -> usize {
        2 * self.half_width + 1
    }
}

/// The `(2N+1) x (2N+1)` matrix of `f` in a truncated monomial
/// representation. Row and column `i` correspond to `n = i - N`; any
/// translate leaving the window is dropped.
pub fn windowed_operator<C: Coefficient>(
    f: &GroupRingElement<C>,
    w: &WindowedRep,
) -> Result<DMatrix<Complex64>> {
    let (reach_k, reach_l) = f.reach();
    let reach = match w.variant {
        WindowVariant::Induced => reach_l,
        WindowVariant::ZetaChi => reach_k,
    };
    if (w.half_width as u64) < reach {
        return Err(Error::WindowTooSmall { half_width: w.half_width, reach });
    }
    let half = w.half_width as i64;
    let dim = w.dim();
    let mut out = DMatrix::zeros(dim, dim);
    for (mono, c) in f.terms() {
        let c = c.to_complex();
        let Monomial { k, l, m } = mono;
        let (shift, base) = match w.variant {
            WindowVariant::Induced => (l, c * turn((-(k as f64) * w.s).rem_euclid(1.0))),
            WindowVariant::ZetaChi => (k, c * turn((l as f64 * w.s).rem_euclid(1.0))),
        };
        for n in -half..=half {
            let col = n + shift;
            if !(-half..=half).contains(&col) {
                continue;
            }
            let phase = match w.variant {
                WindowVariant::Induced => w.theta.phase(m - k * n),
                WindowVariant::ZetaChi => w.theta.phase((n + k) * l + m),
            };
            out[((n + half) as usize, (col + half) as usize)] += base * phase;
        }
    }
    Ok(out)
}
