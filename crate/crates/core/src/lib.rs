//! Numerical invertibility and expansiveness diagnostics for the integral
//! group ring of the discrete Heisenberg group.
//!
//! The crate is organised around the objects one needs to decide whether an
//! element `f` of `Z[H]` is invertible in `l1(H)`, which is equivalent to the
//! principal algebraic action defined by `f` being expansive:
//!
//! * [`group_ring`]: exact arithmetic with normal-form monomials `x^k y^l z^m`.
//! * [`representations`]: the finite-dimensional unitary representations at
//!   rational angles and truncated monomial representations on `l2(Z)`.
//! * [`spectral`]: smallest singular values and the rational parameter sweep.
//! * [`twisted`]: the twisted convolution algebra and localisation.
//! * [`linear`]: Mahler measures, unitary varieties and the criteria for
//!   elements of the form `g1(y,z) x - g0(y,z)`.
//! * [`io`]: JSON and CSV formats shared with the command-line tool.
//!
//! Verdicts produced by the sweep are *evidence*: a vanishing singular value
//! at one concrete representation is a (floating-point) certificate of
//! non-invertibility, while a positive minimum over a finite sample is not a
//! proof of invertibility.

pub mod angle;
pub mod error;
pub mod fixtures;
pub mod group_ring;
pub mod io;
pub mod laurent;
pub mod linear;
pub mod parallel;
pub mod representations;
pub mod spectral;
pub mod twisted;

pub use angle::Angle;
pub use error::{Error, Result};
pub use group_ring::{
    linear_element, monomial_product, monomial_to_matrix, AnyElement, Coefficient, ComplexElement,
    GroupRingElement, IntElement, Monomial,
};
pub use laurent::{LaurentPoly1, LaurentPoly2};
pub use representations::{evaluate, rep_generators, windowed_operator, RepMatrix, RepPoint};
pub use spectral::{enumerate_points, sigma_min, sweep, SweepConfig, SweepReport, Verdict};
pub use twisted::{localize, TwistedElement};

pub use num_complex::Complex64;
