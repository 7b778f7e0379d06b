//! Integer Laurent polynomials in `(y, z)` and their one-variable
//! specializations `g(., chi)`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Coefficients below this modulus are treated as zero after specialization.
pub const ZERO_TOL: f64 = 1e-14;

/// `sum c_{a,b} y^a z^b` with integer coefficients and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentPoly2 {
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), i64)>>(terms: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (exp, c) in terms {
            let e = map.entry(exp).or_insert(0i64);
            *e = e.checked_add(c).ok_or(Error::Overflow("coefficient sum"))?;
        }
        map.retain(|_, c| *c != 0);
        Ok(LaurentPoly2 { terms: map })
    }

    pub fn constant(c: i64) -> Self {
        Self::from_terms([((0, 0), c)]).expect("single term cannot overflow")
    }

    /// Terms `((a, b), c)` for `c y^a z^b`, sorted by `(a, b)`.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.unsigned_abs() as f64).sum()
    }

    /// `g(y z^m, z)`: the term `(a, b)` moves to `(a, b + m a)`.
    pub fn shear(&self, m: i64) -> Result<Self> {
        let of = || Error::Overflow("shear");
        let terms = self
            .terms()
            .map(|((a, b), c)| {
                let b = m.checked_mul(a).and_then(|ma| ma.checked_add(b)).ok_or_else(of)?;
                Ok(((a, b), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(terms)
    }

    /// `g(y, chi)` for a unimodular `chi`.
    pub fn specialize(&self, chi: Complex64) -> Result<LaurentPoly1> {
        if (chi.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular(chi.norm()));
        }
        Ok(self.specialize_with(|b| chi.powi(b as i32)))
    }

    /// `g(y, e^{2 pi i angle})`, with exact phase reduction for rational angles.
    pub fn specialize_at(&self, angle: Angle) -> LaurentPoly1 {
        self.specialize_with(|b| angle.phase(b))
    }

    fn specialize_with(&self, chi_pow: impl Fn(i64) -> Complex64) -> LaurentPoly1 {
        let mut coeffs: BTreeMap<i64, Complex64> = BTreeMap::new();
        for ((a, b), c) in self.terms() {
            *coeffs.entry(a).or_default() += chi_pow(b) * c as f64;
        }
        LaurentPoly1::from_terms(coeffs)
    }

    pub fn evaluate(&self, y: Complex64, z: Complex64) -> Complex64 {
        self.terms()
            .map(|((a, b), c)| pow(y, a) * pow(z, b) * c as f64)
            .sum()
    }
}

fn pow(base: Complex64, e: i64) -> Complex64 {
    if e >= 0 {
        base.powu(e as u32)
    } else {
        base.inv().powu(e.unsigned_abs() as u32)
    }
}

/// `sum c_a y^a` with complex coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i64, Complex64>,
}

impl LaurentPoly1 {
    /// Drops exact zeros; near-zero coefficients are kept and handled by
    /// [`LaurentPoly1::to_polynomial`].
    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (a, c) in terms {
            *map.entry(a).or_default() += c;
        }
        map.retain(|_, c| c.re != 0.0 || c.im != 0.0);
        LaurentPoly1 { terms: map }
    }

    pub fn from_real<I: IntoIterator<Item = (i64, f64)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(a, c)| (a, Complex64::new(c, 0.0))))
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (i64, Complex64)> + '_ {
        self.terms.iter().map(|(a, c)| (*a, *c))
    }

    pub fn coefficient(&self, a: i64) -> Complex64 {
        self.terms.get(&a).copied().unwrap_or_default()
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// True when every coefficient is below [`ZERO_TOL`] in modulus.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm() <= ZERO_TOL)
    }

    pub fn evaluate(&self, y: Complex64) -> Complex64 {
        self.terms().map(|(a, c)| c * pow(y, a)).sum()
    }

    /// `h(y) = y^shift * P(y)` with `P` an ordinary polynomial whose
    /// coefficients are returned in ascending order. Leading and trailing
    /// coefficients below `ZERO_TOL * |h|_1` are trimmed. `None` for the
    /// zero polynomial.
    pub fn to_polynomial(&self) -> Option<(i64, Vec<Complex64>)> {
        if self.is_zero() {
            return None;
        }
        let cut = ZERO_TOL * self.l1_norm().max(1.0);
        let kept: Vec<(i64, Complex64)> = self.terms().filter(|(_, c)| c.norm() > cut).collect();
        let low = kept.first()?.0;
        let high = kept.last()?.0;
        let mut coeffs = vec![Complex64::default(); (high - low) as usize + 1];
        for (a, c) in self.terms() {
            if (low..=high).contains(&a) {
                coeffs[(a - low) as usize] = c;
            }
        }
        Some((low, coeffs))
    }

    /// `h(c y)`.
    pub fn rescale(&self, c: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(a, v)| (a, v * pow(c, a))))
    }
}
