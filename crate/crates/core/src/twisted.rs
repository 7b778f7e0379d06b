//! Twisted convolution on `Z^2` and localisation of the group ring along a
//! central character.
//!
//! At twist angle `theta`,
//!
//! ```text
//! (f # g)_{m,n} = sum_{k,l} f_{k,l} g_{m-k,n-l} e^{2 pi i (m-k) l theta}
//! f*_{k,l}      = conj(f_{-k,-l}) e^{2 pi i k l theta}
//! ```
//!
//! Localising at the central character `z -> e^{2 pi i phi}` sends
//! `f_{k,l,m}` to `sum_m f_{k,l,m} e^{2 pi i m phi}`. In normal form
//! `(x^k y^l)(x^k' y^l') = x^{k+k'} y^{l+l'} z^{-k' l}`, so the group law
//! carries the phase `e^{-2 pi i k' l phi}` while the twisted product above
//! carries `e^{+2 pi i k' l theta}`. Localisation at `phi` is therefore a
//! homomorphism into the twisted algebra at `theta = -phi`, and
//! [`localize`] tags its output with that twist angle.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::group_ring::{Coefficient, GroupRingElement};

/// Coefficients below this modulus are dropped by [`localize`].
pub const COLLAPSE_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedElement {
    theta: Angle,
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl TwistedElement {
    pub fn zero(theta: Angle) -> Self {
        TwistedElement { theta, terms: BTreeMap::new() }
    }

    pub fn delta(theta: Angle, k: i64, l: i64) -> Self {
        Self::from_terms(theta, [((k, l), Complex64::new(1.0, 0.0))])
    }

    /// Sums repeated indices and drops exact zeros.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Complex64)>>(theta: Angle, terms: I) -> Self {
        let mut out = Self::zero(theta);
        for (kl, c) in terms {
            *out.terms.entry(kl).or_default() += c;
        }
        out.terms.retain(|_, c| c.re != 0.0 || c.im != 0.0);
        out
    }

    pub fn theta(&self) -> Angle {
        self.theta
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = ((i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(kl, c)| (*kl, *c))
    }

    pub fn coefficient(&self, k: i64, l: i64) -> Complex64 {
        self.terms.get(&(k, l)).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Largest coefficient difference, treating absent terms as zero.
    pub fn max_abs_diff(&self, other: &TwistedElement) -> f64 {
        let keys: std::collections::BTreeSet<(i64, i64)> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter()
            .map(|(k, l)| (self.coefficient(k, l) - other.coefficient(k, l)).norm())
            .fold(0.0, f64::max)
    }

    pub fn twisted_multiply(&self, rhs: &TwistedElement) -> Result<TwistedElement> {
        if self.theta != rhs.theta {
            return Err(Error::ThetaMismatch(self.theta, rhs.theta));
        }
        let mut out: BTreeMap<(i64, i64), Complex64> = BTreeMap::new();
        for (&(k, l), a) in &self.terms {
            for (&(kp, lp), b) in &rhs.terms {
                let idx = (
                    k.checked_add(kp).ok_or(Error::Overflow("twisted index"))?,
                    l.checked_add(lp).ok_or(Error::Overflow("twisted index"))?,
                );
                let n = kp.checked_mul(l).ok_or(Error::Overflow("twisted phase"))?;
                *out.entry(idx).or_default() += a * b * self.theta.phase(n);
            }
        }
        Ok(Self::from_terms(self.theta, out))
    }

    pub fn twisted_involution(&self) -> Result<TwistedElement> {
        let terms = self
            .terms()
            .map(|((k, l), c)| {
                let of = || Error::Overflow("twisted involution");
                let n = k.checked_mul(l).ok_or_else(of)?;
                let idx = (k.checked_neg().ok_or_else(of)?, l.checked_neg().ok_or_else(of)?);
                // f*_{-k,-l} = conj(f_{k,l}) e^{2 pi i k l theta}
                Ok((idx, c.conj() * self.theta.phase(n)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(self.theta, terms))
    }
}

/// `f^phi = sum f_{k,l,m} e^{2 pi i m phi} delta_{k,l}`, an element of the
/// twisted algebra at `theta = -phi`.
pub fn localize<C: Coefficient>(f: &GroupRingElement<C>, phi: Angle) -> TwistedElement {
    let mut terms: BTreeMap<(i64, i64), Complex64> = BTreeMap::new();
    for (mono, c) in f.terms() {
        *terms.entry((mono.k, mono.l)).or_default() += c.to_complex() * phi.phase(mono.m);
    }
    terms.retain(|_, c| c.norm() >= COLLAPSE_TOL);
    TwistedElement { theta: phi.neg(), terms }
}
