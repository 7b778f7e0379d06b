//! Smallest singular values of `pi(f)` across rational representations.
//!
//! `f` is invertible in `l1(H)` exactly when `pi(f)` is invertible with a
//! uniformly bounded inverse over the finite-dimensional irreducibles. A
//! sweep samples `sigma_min(pi(f))` over a Farey grid of angles and a grid
//! of `(s, t)` in the fundamental cell `[0, 1/q)^2`; `1/sigma_min` is the
//! norm of the inverse. The resulting [`Verdict`] is evidence only.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{gcd, Angle};
use crate::error::{Error, Result};
use crate::group_ring::{Coefficient, GroupRingElement};
use crate::parallel::{default_workers, map_indexed, Execution};
use crate::representations::{evaluate, windowed_operator, RepPoint, WindowVariant, WindowedRep};

/// Relative gap (to `|f|_1`) below which two singular values tie.
pub const TIE_TOL: f64 = 1e-12;

/// Smallest singular value of a square complex matrix.
pub fn sigma_min(a: &DMatrix<Complex64>) -> Result<f64> {
    let (rows, cols) = a.shape();
    if rows != cols || rows == 0 {
        return Err(Error::NotSquare { rows, cols });
    }
    if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let svd = SVD::try_new(a.clone(), false, false, f64::EPSILON, 10_000).ok_or(Error::NoConvergence)?;
    Ok(svd.singular_values.min().max(0.0))
}

/// All reduced `p/q` with `q <= q_max`, crossed with the `(s, t)` grid
/// `{i / (grid_s q)} x {j / (grid_t q)}`. Ordered by `q`, then `p`, then
/// `i`, then `j`.
pub fn enumerate_points(q_max: u32, grid_s: u32, grid_t: u32) -> impl Iterator<Item = RepPoint> {
    (1..=q_max as i64).flat_map(move |q| {
        (0..q).filter(move |&p| gcd(p, q) == 1).flat_map(move |p| {
            (0..grid_s).flat_map(move |i| {
                (0..grid_t).map(move |j| {
                    let s = i as f64 / (grid_s as f64 * q as f64);
                    let t = j as f64 / (grid_t as f64 * q as f64);
                    RepPoint::new(p, q, s, t).expect("enumerated fractions are reduced")
                })
            })
        })
    })
}

/// A diagnostic evaluation of a windowed operator at an irrational angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowProbe {
    pub angle: Angle,
    pub s: f64,
    pub half_widths: Vec<usize>,
    pub variant: WindowVariant,
}

impl Default for WindowProbe {
    fn default() -> Self {
        WindowProbe {
            angle: Angle::golden(),
            s: 0.0,
            half_widths: vec![50, 100, 200],
            variant: WindowVariant::Induced,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub q_max: u32,
    pub grid_s: u32,
    pub grid_t: u32,
    /// `sigma_min` at or below this counts as a vanishing singular value.
    pub threshold: f64,
    /// Minima in `(threshold, threshold * inconclusive_band]` are reported
    /// as inconclusive.
    pub inconclusive_band: f64,
    pub probes: Vec<WindowProbe>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q_max: 64,
            grid_s: 8,
            grid_t: 8,
            threshold: 1e-8,
            inconclusive_band: 100.0,
            probes: vec![WindowProbe::default()],
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_max == 0 || self.grid_s == 0 || self.grid_t == 0 {
            return Err(Error::InvalidConfig("q_max and grid sizes must be at least 1".into()));
        }
        if !(self.threshold >= 0.0 && self.threshold.is_finite()) {
            return Err(Error::InvalidConfig("threshold must be finite and non-negative".into()));
        }
        if !(self.inconclusive_band >= 1.0 && self.inconclusive_band.is_finite()) {
            return Err(Error::InvalidConfig("inconclusive_band must be >= 1".into()));
        }
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        let phi_sum: usize = (1..=self.q_max as i64)
            .map(|q| (0..q).filter(|&p| gcd(p, q) == 1).count())
            .sum();
        phi_sum * self.grid_s as usize * self.grid_t as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub point: RepPoint,
    pub sigma_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub angle: Angle,
    pub s: f64,
    pub half_width: usize,
    pub variant: WindowVariant,
    pub sigma_min: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Some sampled `pi(f)` is singular to working precision.
    NonInvertibleEvidence,
    /// Every sampled `pi(f)` is well inside the invertible range.
    InvertibleEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub records: Vec<SweepRecord>,
    pub global_min_sigma: f64,
    /// `1 / global_min_sigma`, absent when the minimum is zero.
    pub max_inverse_norm: Option<f64>,
    pub verdict: Verdict,
    /// The first record, in enumeration order (`q`, then `p`, then `s`,
    /// then `t`), within `TIE_TOL * |f|_1` of the minimum.
    pub witness: RepPoint,
    pub probes: Vec<ProbeRecord>,
}

/// [`sweep_with`] using every available hardware thread.
pub fn sweep<C: Coefficient>(f: &GroupRingElement<C>, config: &SweepConfig) -> Result<SweepReport> {
    sweep_with(f, config, Execution::with_workers(default_workers()))
}

pub fn sweep_with<C: Coefficient>(
    f: &GroupRingElement<C>,
    config: &SweepConfig,
    exec: Execution,
) -> Result<SweepReport> {
    config.validate()?;
    if f.is_empty() {
        return Err(Error::InvalidConfig("cannot sweep the zero element".into()));
    }
    let points: Vec<RepPoint> = enumerate_points(config.q_max, config.grid_s, config.grid_t).collect();
    let sigmas = map_indexed(points.len(), exec, |i| sigma_min(&evaluate(f, &points[i]).entries));
    let records = points
        .into_iter()
        .zip(sigmas)
        .map(|(point, s)| s.map(|sigma_min| SweepRecord { point, sigma_min }))
        .collect::<Result<Vec<_>>>()?;

    let global_min_sigma = records.iter().map(|r| r.sigma_min).fold(f64::INFINITY, f64::min);
    // values this close to the minimum are rounding-level ties
    let tie = global_min_sigma + TIE_TOL * f.l1_norm();
    let best = records.iter().find(|r| r.sigma_min <= tie).expect("at least one point");
    let verdict = if global_min_sigma <= config.threshold {
        Verdict::NonInvertibleEvidence
    } else if global_min_sigma <= config.threshold * config.inconclusive_band {
        Verdict::Inconclusive
    } else {
        Verdict::InvertibleEvidence
    };
    let max_inverse_norm = (global_min_sigma > 0.0).then(|| 1.0 / global_min_sigma);
    let witness = best.point;

    let probe_specs: Vec<WindowedRep> = config
        .probes
        .iter()
        .flat_map(|p| {
            p.half_widths.iter().map(move |&n| WindowedRep {
                theta: p.angle,
                s: p.s,
                half_width: n,
                variant: p.variant,
            })
        })
        .collect();
    let probes = map_indexed(probe_specs.len(), exec, |i| {
        let w = &probe_specs[i];
        let sigma_min = sigma_min(&windowed_operator(f, w)?)?;
        Ok(ProbeRecord { angle: w.theta, s: w.s, half_width: w.half_width, variant: w.variant, sigma_min })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    Ok(SweepReport {
        config: config.clone(),
        records,
        global_min_sigma,
        max_inverse_norm,
        verdict,
        witness,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::{IntElement, Monomial};

    fn int(terms: &[(i64, i64, i64, i64)]) -> IntElement {
        IntElement::from_terms(terms.iter().map(|&(k, l, m, c)| (Monomial::new(k, l, m), c)))
            .unwrap()
    }

    fn totient(n: i64) -> usize {
        (1..=n).filter(|&k| gcd(k, n) == 1).count()
    }

    fn small(q_max: u32) -> SweepConfig {
        SweepConfig { q_max, grid_s: 2, grid_t: 2, probes: vec![], ..Default::default() }
    }

    #[test]
    fn sigma_min_examples() {
        for q in [1, 3, 17] {
            assert!((sigma_min(&DMatrix::identity(q, q)).unwrap() - 1.0).abs() < 1e-15);
        }
        let xm1 = int(&[(1, 0, 0, 1), (0, 0, 0, -1)]);
        for (p, q) in [(0, 1), (1, 2), (2, 5), (5, 12)] {
            let pt = RepPoint::new(p, q, 0.0, 0.0).unwrap();
            assert!(sigma_min(&evaluate(&xm1, &pt).entries).unwrap() < 1e-14);
        }
        let xm3 = int(&[(1, 0, 0, 1), (0, 0, 0, -3)]);
        for (p, q, s) in [(0, 1, 0.0), (1, 4, 0.0), (3, 7, 0.01)] {
            let pt = RepPoint::new(p, q, s, 0.4).unwrap();
            // spectrum of X is {e^{2 pi i (s + j/q)}}; distance to 3 is minimised by j = 0
            let expected = (turn_c(s) - 3.0).norm();
            assert!((sigma_min(&evaluate(&xm3, &pt).entries).unwrap() - expected).abs() < 1e-10);
        }
    }

    fn turn_c(x: f64) -> Complex64 {
        crate::angle::turn(x)
    }

    #[test]
    fn sigma_min_rejects_bad_input() {
        let rect = DMatrix::<Complex64>::zeros(2, 3);
        assert!(matches!(sigma_min(&rect), Err(Error::NotSquare { rows: 2, cols: 3 })));
        let mut nan = DMatrix::<Complex64>::identity(2, 2);
        nan[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(sigma_min(&nan), Err(Error::NonFinite)));
    }

    #[test]
    fn enumeration_examples() {
        let pts: Vec<_> = enumerate_points(1, 2, 2).collect();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|p| p.p() == 0 && p.q() == 1));
        assert_eq!(pts[1].t(), 0.5);
        assert_eq!(pts[2].s(), 0.5);

        let pq: Vec<(i64, i64)> = enumerate_points(3, 1, 1).map(|p| (p.p(), p.q())).collect();
        assert_eq!(pq, vec![(0, 1), (1, 2), (1, 3), (2, 3)]);

        let phi: usize = (1..=5).map(totient).sum();
        assert_eq!(phi, 10);
        assert_eq!(enumerate_points(5, 4, 4).count(), phi * 16);
        assert_eq!(SweepConfig { q_max: 5, grid_s: 4, grid_t: 4, ..Default::default() }.point_count(), 160);
    }

    #[test]
    fn sweep_x_minus_one() {
        let f = int(&[(1, 0, 0, 1), (0, 0, 0, -1)]);
        let report = sweep(&f, &small(8)).unwrap();
        assert_eq!(report.verdict, Verdict::NonInvertibleEvidence);
        assert_eq!(report.global_min_sigma, 0.0);
        assert_eq!((report.witness.s(), report.witness.t()), (0.0, 0.0));
        assert_eq!(report.max_inverse_norm, None);
    }

    #[test]
    fn sweep_x_minus_three() {
        let f = int(&[(1, 0, 0, 1), (0, 0, 0, -3)]);
        let report = sweep(&f, &small(16)).unwrap();
        assert_eq!(report.verdict, Verdict::InvertibleEvidence);
        assert!((report.global_min_sigma - 2.0).abs() < 1e-8);
        let inv = report.max_inverse_norm.unwrap();
        assert!((inv - 0.5).abs() < 1e-8);
        assert!((inv * report.global_min_sigma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inconclusive_band() {
        // x - (1 + 1e-7): sigma_min = 1e-7 at s = 0
        let f = IntElement::from_terms([(Monomial::X, 1), (Monomial::IDENTITY, -1)]).unwrap().to_complex();
        let f = f
            .checked_add(&crate::group_ring::ComplexElement::monomial(
                Monomial::IDENTITY,
                Complex64::new(-1e-7, 0.0),
            ))
            .unwrap();
        let report = sweep(&f, &small(2)).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn sweep_rejects_bad_input() {
        assert!(sweep(&IntElement::zero(), &small(2)).is_err());
        let f = int(&[(0, 0, 0, 1)]);
        assert!(sweep(&f, &SweepConfig { q_max: 0, ..small(1) }).is_err());
        assert!(sweep(&f, &SweepConfig { threshold: -1.0, ..small(1) }).is_err());
    }

    #[test]
    fn probes_are_reported() {
        let f = int(&[(1, 0, 0, 1), (0, 0, 0, -3)]);
        let cfg = SweepConfig {
            probes: vec![WindowProbe { half_widths: vec![5, 10], ..Default::default() }],
            ..small(2)
        };
        let report = sweep(&f, &cfg).unwrap();
        assert_eq!(report.probes.len(), 2);
        assert!(report.probes.iter().all(|p| (p.sigma_min - 2.0).abs() < 1e-12));
    }
}
