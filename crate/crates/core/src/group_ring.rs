//! Finitely supported elements of the group ring of the discrete Heisenberg
//! group `H = <x, y | z = x y x^-1 y^-1 central>`.
//!
//! Every group element has a unique normal form `x^k y^l z^m`, stored as a
//! [`Monomial`]. Multiplication follows from `y^l x^k = x^k y^l z^{-kl}`:
//!
//! ```text
//! (k, l, m) * (k', l', m') = (k + k', l + l', m + m' - k' l)
//! ```
//!
//! Integer arithmetic is checked; overflow is reported, never wrapped.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly2;

/// Normal-form exponents of `x^k y^l z^m`. Ordered lexicographically on
/// `(k, l, m)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { k: 0, l: 0, m: 0 };
    pub const X: Monomial = Monomial { k: 1, l: 0, m: 0 };
    pub const Y: Monomial = Monomial { k: 0, l: 1, m: 0 };
    pub const Z: Monomial = Monomial { k: 0, l: 0, m: 1 };

    pub const fn new(k: i64, l: i64, m: i64) -> Self {
        Monomial { k, l, m }
    }

    pub fn checked_mul(self, rhs: Monomial) -> Result<Monomial> {
        monomial_product(self, rhs)
    }

    /// `(x^k y^l z^m)^-1 = x^-k y^-l z^{-m-kl}`.
    pub fn checked_inverse(self) -> Result<Monomial> {
        let of = || Error::Overflow("monomial inverse");
        let k = self.k.checked_neg().ok_or_else(of)?;
        let l = self.l.checked_neg().ok_or_else(of)?;
        let kl = self.k.checked_mul(self.l).ok_or_else(of)?;
        let m = self.m.checked_neg().and_then(|m| m.checked_sub(kl)).ok_or_else(of)?;
        Ok(Monomial { k, l, m })
    }
}

/// Group law on normal forms.
pub fn monomial_product(a: Monomial, b: Monomial) -> Result<Monomial> {
    let of = || Error::Overflow("monomial product");
    let k = a.k.checked_add(b.k).ok_or_else(of)?;
    let l = a.l.checked_add(b.l).ok_or_else(of)?;
    let cocycle = b.k.checked_mul(a.l).ok_or_else(of)?;
    let m = a.m.checked_add(b.m).and_then(|m| m.checked_sub(cocycle)).ok_or_else(of)?;
    Ok(Monomial { k, l, m })
}

/// The unipotent integer matrix of `x^k y^l z^m`, with `x`, `y`, `z` the
/// elementary matrices at positions (1,2), (2,3) and (1,3).
///
/// Since `x^k y^l` already has `kl` in the corner, the (1,3) entry is
/// `m + k l`, not `m`.
pub fn monomial_to_matrix(a: Monomial) -> [[i128; 3]; 3] {
    let (k, l, m) = (a.k as i128, a.l as i128, a.m as i128);
    [[1, k, m + k * l], [0, 1, l], [0, 0, 1]]
}

/// Scalars a group-ring element can carry.
pub trait Coefficient: Copy + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(self, rhs: Self) -> Option<Self>;
    fn checked_mul(self, rhs: Self) -> Option<Self>;
    fn checked_neg(self) -> Option<Self>;
    fn conj(self) -> Self;
    fn modulus(self) -> f64;
    fn to_complex(self) -> Complex64;
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(self, rhs: Self) -> Option<Self> {
        i64::checked_add(self, rhs)
    }
    fn checked_mul(self, rhs: Self) -> Option<Self> {
        i64::checked_mul(self, rhs)
    }
    fn checked_neg(self) -> Option<Self> {
        i64::checked_neg(self)
    }
    fn conj(self) -> Self {
        self
    }
    fn modulus(self) -> f64 {
        self.unsigned_abs() as f64
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self as f64, 0.0)
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_mul(self, rhs: Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn checked_neg(self) -> Option<Self> {
        Some(-self)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// A finitely supported function `H -> C` with no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement<C: Coefficient> {
    terms: BTreeMap<Monomial, C>,
}

pub type IntElement = GroupRingElement<i64>;
pub type ComplexElement = GroupRingElement<Complex64>;

impl<C: Coefficient> Default for GroupRingElement<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> GroupRingElement<C> {
    pub fn zero() -> Self {
        GroupRingElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::IDENTITY, C::one())
    }

    pub fn monomial(mono: Monomial, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        GroupRingElement { terms }
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Result<Self> {
        let mut out = Self::zero();
        for (mono, c) in terms {
            out.add_term(mono, c)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, mono: Monomial, c: C) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing
                    .checked_add(c)
                    .ok_or(Error::Overflow("coefficient sum"))?;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
        Ok(())
    }

    /// Terms in lexicographic `(k, l, m)` order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (Monomial, C)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coefficient(&self, mono: Monomial) -> C {
        self.terms.get(&mono).copied().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).sum()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (mono, c) in rhs.terms() {
            out.add_term(mono, c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(m, c)| c.checked_neg().map(|c| (m, c)))
            .collect::<Option<BTreeMap<_, _>>>()
            .ok_or(Error::Overflow("negation"))?;
        Ok(GroupRingElement { terms })
    }

    pub fn scale(&self, c: C) -> Result<Self> {
        Self::from_terms(
            self.terms()
                .map(|(m, a)| a.checked_mul(c).map(|v| (m, v)).ok_or(Error::Overflow("scaling")))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Convolution product `(fg)(w) = sum_{uv = w} f(u) g(v)`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow("coefficient product"))?;
                out.add_term(monomial_product(a, b)?, c)?;
            }
        }
        Ok(out)
    }

    /// `f*(g) = conj(f(g^-1))`.
    pub fn involution(&self) -> Result<Self> {
        Self::from_terms(
            self.terms()
                .map(|(m, c)| Ok((m.checked_inverse()?, c.conj())))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn to_complex(&self) -> ComplexElement {
        GroupRingElement {
            terms: self.terms().map(|(m, c)| (m, c.to_complex())).collect(),
        }
    }

    /// Largest `|k|` and `|l|` over the support.
    pub fn reach(&self) -> (u64, u64) {
        self.terms.keys().fold((0, 0), |(rk, rl), m| {
            (rk.max(m.k.unsigned_abs()), rl.max(m.l.unsigned_abs()))
        })
    }
}

/// An element of either coefficient flavour, as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyElement {
    Int(IntElement),
    Complex(ComplexElement),
}

impl AnyElement {
    pub fn to_complex(&self) -> ComplexElement {
        match self {
            AnyElement::Int(f) => f.to_complex(),
            AnyElement::Complex(f) => f.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            AnyElement::Int(f) => f.is_empty(),
            AnyElement::Complex(f) => f.is_empty(),
        }
    }

    /// Integer flavour is preserved only when both operands are integral.
    pub fn multiply(&self, rhs: &AnyElement) -> Result<AnyElement> {
        match (self, rhs) {
            (AnyElement::Int(a), AnyElement::Int(b)) => a.multiply(b).map(AnyElement::Int),
            _ => self.to_complex().multiply(&rhs.to_complex()).map(AnyElement::Complex),
        }
    }

    pub fn involution(&self) -> Result<AnyElement> {
        match self {
            AnyElement::Int(a) => a.involution().map(AnyElement::Int),
            AnyElement::Complex(a) => a.involution().map(AnyElement::Complex),
        }
    }
}

impl From<IntElement> for AnyElement {
    fn from(f: IntElement) -> Self {
        AnyElement::Int(f)
    }
}

impl From<ComplexElement> for AnyElement {
    fn from(f: ComplexElement) -> Self {
        AnyElement::Complex(f)
    }
}

/// `f = g1(y,z) x - g0(y,z)` in normal form.
///
/// A term `c y^a z^b` of `g1` becomes `c y^a z^b x = c x y^a z^{b-a}`.
pub fn linear_element(g1: &LaurentPoly2, g0: &LaurentPoly2) -> Result<IntElement> {
    let mut terms = Vec::with_capacity(g1.len() + g0.len());
    for ((a, b), c) in g1.terms() {
        terms.push((monomial_product(Monomial::new(0, a, b), Monomial::X)?, c));
    }
    for ((a, b), c) in g0.terms() {
        let c = c.checked_neg().ok_or(Error::Overflow("negation"))?;
        terms.push((Monomial::new(0, a, b), c));
    }
    IntElement::from_terms(terms)
}
