//! Expansiveness verdicts for `f = g1(y,z) x - g0(y,z)` read off from the
//! slices `g_{i,chi}(y) = g_i(y, chi)`.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly2;
use crate::linear::mahler::{mahler_1d, mahler_2d_with, MahlerEstimate, DEFAULT_NODES};
use crate::linear::roots::{unit_circle_roots, UnitCircleRootSet, DEFAULT_CIRCLE_TOL};

pub const DEFAULT_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearVerdict {
    Expansive,
    NonExpansive,
    Inconclusive,
    /// Hypotheses of the criterion are not met.
    NotApplicable,
}

/// `int log |psi_chi| d lambda` with
/// `psi_chi(zeta) = g0(zeta, chi) / g1(zeta chi^-1, chi)`.
///
/// Rotating the denominator's argument does not change its mean, so the
/// integral is `m(g_{0,chi}) - m(g_{1,chi})`.
pub fn psi_log_integral(g0: &LaurentPoly2, g1: &LaurentPoly2, chi: Angle) -> Result<f64> {
    let h0 = g0.specialize_at(chi);
    let h1 = g1.specialize_at(chi);
    let m0 = mahler_1d(&h0).map_err(|_| Error::VanishingSpecialization("g0"))?;
    let m1 = mahler_1d(&h1).map_err(|_| Error::VanishingSpecialization("g1"))?;
    Ok(m0 - m1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneEmptyReport {
    pub verdict: LinearVerdict,
    /// `"Thm-one-empty(i)"` or `"Thm-one-empty(ii)"` when a condition holds.
    pub condition: Option<String>,
    pub chi: Angle,
    pub infinite_order_proxy: bool,
    pub u0: UnitCircleRootSet,
    pub u1: UnitCircleRootSet,
    pub integral: f64,
}

/// Condition (i): `U_chi(g0)` empty, `U_chi(g1)` not, integral `< 0`.
/// Condition (ii): the mirror image with integral `> 0`.
/// Either one, at `chi` of infinite order, forces non-expansiveness.
pub fn check_one_empty(g0: &LaurentPoly2, g1: &LaurentPoly2, chi: Angle) -> Result<OneEmptyReport> {
    let integral = psi_log_integral(g0, g1, chi)?;
    let u0 = unit_circle_roots(&g0.specialize_at(chi), DEFAULT_CIRCLE_TOL);
    let u1 = unit_circle_roots(&g1.specialize_at(chi), DEFAULT_CIRCLE_TOL);
    let proxy = chi.is_infinite_order_proxy();
    let condition = if u0.is_empty() && !u1.is_empty() && integral < 0.0 {
        Some("Thm-one-empty(i)")
    } else if !u0.is_empty() && u1.is_empty() && integral > 0.0 {
        Some("Thm-one-empty(ii)")
    } else {
        None
    };
    let verdict = match (proxy, condition) {
        (false, _) => LinearVerdict::NotApplicable,
        (true, Some(_)) => LinearVerdict::NonExpansive,
        (true, None) => LinearVerdict::Inconclusive,
    };
    Ok(OneEmptyReport {
        verdict,
        condition: condition.map(str::to_owned),
        chi,
        infinite_order_proxy: proxy,
        u0,
        u1,
        integral,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub verdict: LinearVerdict,
    pub condition: Option<String>,
    pub chi: Angle,
    pub infinite_order_proxy: bool,
    pub u0: UnitCircleRootSet,
    pub u1: UnitCircleRootSet,
    pub m0: Option<f64>,
    pub m1: Option<f64>,
    pub margin: f64,
}

/// Both slices vanish somewhere on the circle and `m(g_{0,chi}) !=
/// m(g_{1,chi})`. A slice that is identically zero decides the question
/// on its own once the other slice has a circle root.
pub fn check_mahler_mismatch(
    g0: &LaurentPoly2,
    g1: &LaurentPoly2,
    chi: Angle,
    margin: f64,
) -> MismatchReport {
    let h0 = g0.specialize_at(chi);
    let h1 = g1.specialize_at(chi);
    let u0 = unit_circle_roots(&h0, DEFAULT_CIRCLE_TOL);
    let u1 = unit_circle_roots(&h1, DEFAULT_CIRCLE_TOL);
    let m0 = mahler_1d(&h0).ok();
    let m1 = mahler_1d(&h1).ok();
    let proxy = chi.is_infinite_order_proxy();
    let both_nonempty = !u0.is_empty() && !u1.is_empty();
    let condition = if !both_nonempty {
        None
    } else if u0.is_identically_zero || u1.is_identically_zero {
        Some("Thm-mahler-mismatch(zero-slice)")
    } else {
        match (m0, m1) {
            (Some(a), Some(b)) if (a - b).abs() > margin => Some("Thm-mahler-mismatch"),
            _ => None,
        }
    };
    let verdict = match (proxy, condition) {
        (false, _) => LinearVerdict::NotApplicable,
        (true, Some(_)) => LinearVerdict::NonExpansive,
        (true, None) => LinearVerdict::Inconclusive,
    };
    MismatchReport {
        verdict,
        condition: condition.map(str::to_owned),
        chi,
        infinite_order_proxy: proxy,
        u0,
        u1,
        m0,
        m1,
        margin,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ls2Options {
    /// Number of equally spaced `chi` used to test emptiness of `U(g_i)`.
    /// This is a heuristic: a thin variety can slip between samples.
    pub chi_samples: usize,
    pub margin: f64,
    pub nodes: usize,
}

impl Default for Ls2Options {
    fn default() -> Self {
        Ls2Options { chi_samples: 1024, margin: DEFAULT_MARGIN, nodes: DEFAULT_NODES }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ls2Report {
    pub verdict: LinearVerdict,
    pub condition: String,
    pub u0_empty: bool,
    pub u1_empty: bool,
    pub m0: Option<MahlerEstimate>,
    pub m1: Option<MahlerEstimate>,
    pub options: Ls2Options,
}

fn variety_sampled_empty(g: &LaurentPoly2, samples: usize) -> bool {
    (0..samples).all(|j| {
        let chi = Angle::Rational { p: j as i64, q: samples as i64 };
        unit_circle_roots(&g.specialize_at(chi), DEFAULT_CIRCLE_TOL).is_empty()
    })
}

/// When both unitary varieties are empty, `alpha_f` is expansive iff
/// `m(g0) != m(g1)`.
pub fn ls2_criterion(g0: &LaurentPoly2, g1: &LaurentPoly2, opts: &Ls2Options) -> Result<Ls2Report> {
    let samples = opts.chi_samples.max(1);
    let u0_empty = !g0.is_empty() && variety_sampled_empty(g0, samples);
    let u1_empty = !g1.is_empty() && variety_sampled_empty(g1, samples);
    let condition = "LS2-mahler-iff".to_owned();
    if !(u0_empty && u1_empty) {
        return Ok(Ls2Report {
            verdict: LinearVerdict::NotApplicable,
            condition,
            u0_empty,
            u1_empty,
            m0: None,
            m1: None,
            options: opts.clone(),
        });
    }
    let m0 = mahler_2d_with(g0, opts.nodes)?;
    let m1 = mahler_2d_with(g1, opts.nodes)?;
    let diff = (m0.value - m1.value).abs();
    let verdict = if diff > opts.margin + m0.error_estimate + m1.error_estimate {
        LinearVerdict::Expansive
    } else if diff <= opts.margin {
        LinearVerdict::NonExpansive
    } else {
        LinearVerdict::Inconclusive
    };
    Ok(Ls2Report { verdict, condition, u0_empty, u1_empty, m0: Some(m0), m1: Some(m1), options: opts.clone() })
}
