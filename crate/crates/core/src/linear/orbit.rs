//! Intersections of the unitary varieties `U(g1)` and `U(g0^(m))`, where
//! `g0^(m)(y, z) = g0(y z^m, z)`, traced as curves `s(t)` on the torus
//! `(e^{2 pi i s}, e^{2 pi i t})`.
//!
//! At each `t` the slices are one-variable polynomials whose circle roots
//! give the curve points. Roots are tracked between neighbouring samples;
//! a crossing shows up as a sign change of the wrapped difference between a
//! branch of each curve and is then bisected.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::Result;
use crate::laurent::LaurentPoly2;
use crate::linear::criteria::LinearVerdict;
use crate::linear::roots::{unit_circle_roots, DEFAULT_CIRCLE_TOL};
use crate::parallel::{map_indexed, Execution};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SAMPLES: usize = 2000;
const MAX_DEPTH: u32 = 40;
/// Wrapped differences at least this large are jumps across `s = 1/2`
/// rather than genuine sign changes.
const JUMP: f64 = 0.25;
/// Two roots this close at the end of a refined interval are a fold.
const FOLD_GAP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub s: f64,
    pub t: f64,
    /// `|g1(e(s), e(t))|`.
    pub residual_g1: f64,
    /// `|g0(e(s + m t), e(t))|`.
    pub residual_g0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub m: i64,
    pub nonempty: bool,
    pub witness: Option<Witness>,
    pub crossings: usize,
    /// Smallest circular distance between the two curves over the samples.
    pub min_separation: Option<f64>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub verdict: LinearVerdict,
    pub condition: Option<String>,
    pub tol: f64,
    pub samples: usize,
    pub per_m: Vec<IntersectionReport>,
}

/// Runs [`intersect`] for every `m` in `m_range` (inclusive) in parallel.
pub fn check_orbit_intersection(
    g0: &LaurentPoly2,
    g1: &LaurentPoly2,
    m_range: std::ops::RangeInclusive<i64>,
    tol: f64,
    samples: usize,
    exec: Execution,
) -> Result<OrbitReport> {
    let ms: Vec<i64> = m_range.collect();
    let per_m = map_indexed(ms.len(), exec, |i| intersect(g0, g1, ms[i], tol, samples))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let hit = per_m.iter().any(|r| r.nonempty);
    Ok(OrbitReport {
        verdict: if hit { LinearVerdict::NonExpansive } else { LinearVerdict::Inconclusive },
        condition: hit.then(|| "Thm-linear".to_owned()),
        tol,
        samples,
        per_m,
    })
}

/// The same intersections read for `g0(y,z) x - g1(y,z)`: a point `(s, t)`
/// found at shear `m` is the point `(s + m t, t)` at shear `-m` with the
/// roles of `g0` and `g1` exchanged.
pub fn swapped(report: &OrbitReport) -> OrbitReport {
    let per_m = report
        .per_m
        .iter()
        .map(|r| IntersectionReport {
            m: -r.m,
            witness: r.witness.as_ref().map(|w| Witness {
                s: (w.s + r.m as f64 * w.t).rem_euclid(1.0),
                t: w.t,
                residual_g1: w.residual_g0,
                residual_g0: w.residual_g1,
            }),
            ..r.clone()
        })
        .collect();
    OrbitReport {
        condition: report.condition.as_ref().map(|_| "Coro-swapped".to_owned()),
        per_m,
        ..report.clone()
    }
}

#[derive(Clone, Debug)]
struct Slice {
    t: f64,
    /// `None` when the slice is the zero polynomial (the whole circle).
    a: Option<Vec<f64>>,
    b: Option<Vec<f64>>,
}

/// Circle roots in turns, ascending, repeated by multiplicity.
fn circle_turns(g: &LaurentPoly2, t: f64) -> Option<Vec<f64>> {
    let set = unit_circle_roots(&g.specialize_at(Angle::real(t)), DEFAULT_CIRCLE_TOL);
    if set.is_identically_zero {
        return None;
    }
    let mut v: Vec<f64> = set.roots.iter().flat_map(|r| std::iter::repeat_n(r.turns(), r.multiplicity)).collect();
    v.sort_by(f64::total_cmp);
    Some(v)
}

/// Whether the change from `fewer` to `more` roots is roots pairing up and
/// leaving the circle: an even surplus, every surplus root close to another.
fn is_fold(more: &[f64], fewer: &[f64]) -> bool {
    let surplus = more.len() - fewer.len();
    let paired = more
        .iter()
        .enumerate()
        .filter(|&(i, &x)| more.iter().enumerate().any(|(j, &y)| i != j && wrap(x - y).abs() < FOLD_GAP))
        .count();
    surplus % 2 == 0 && paired >= surplus
}

/// Signed circular difference in `[-1/2, 1/2)`.
fn wrap(d: f64) -> f64 {
    (d + 0.5).rem_euclid(1.0) - 0.5
}

/// Cyclic relabelling `j -> (j + shift) mod n` of sorted `next` that moves
/// its points least from `prev`.
fn best_shift(prev: &[f64], next: &[f64]) -> usize {
    let n = prev.len();
    (0..n)
        .min_by(|&x, &y| {
            let cost = |sh: usize| (0..n).map(|i| wrap(next[(i + sh) % n] - prev[i]).abs()).sum::<f64>();
            cost(x).total_cmp(&cost(y))
        })
        .unwrap_or(0)
}

fn nearest(points: &[f64], target: f64) -> f64 {
    points
        .iter()
        .copied()
        .min_by(|x, y| wrap(x - target).abs().total_cmp(&wrap(y - target).abs()))
        .expect("non-empty root list")
}

struct Tracer<'a> {
    g1: &'a LaurentPoly2,
    sheared: LaurentPoly2,
    g0: &'a LaurentPoly2,
    m: i64,
    tol: f64,
    crossings: usize,
    witness: Option<Witness>,
    min_sep: Option<f64>,
    diagnostics: Vec<String>,
}

impl Tracer<'_> {
    fn slice(&self, t: f64) -> Slice {
        Slice { t, a: circle_turns(self.g1, t), b: circle_turns(&self.sheared, t) }
    }

    fn witness_at(&self, s: f64, t: f64) -> Witness {
        let e = crate::angle::turn;
        Witness {
            s,
            t,
            residual_g1: self.g1.evaluate(e(s), e(t)).norm(),
            residual_g0: self.g0.evaluate(e(s + self.m as f64 * t), e(t)).norm(),
        }
    }

    fn record(&mut self, w: Witness) {
        self.crossings += 1;
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    fn observe(&mut self, sl: &Slice) {
        match (&sl.a, &sl.b) {
            (None, None) => self.record(self.witness_at(0.0, sl.t)),
            (None, Some(b)) if !b.is_empty() => self.record(self.witness_at(b[0], sl.t)),
            (Some(a), None) if !a.is_empty() => self.record(self.witness_at(a[0], sl.t)),
            (Some(a), Some(b)) => {
                for &x in a {
                    for &y in b {
                        let d = wrap(x - y).abs();
                        self.min_sep = Some(self.min_sep.map_or(d, |m: f64| m.min(d)));
                    }
                }
            }
            _ => {}
        }
    }

    fn interval(&mut self, lo: &Slice, hi: &Slice, depth: u32) {
        let (Some(a0), Some(b0), Some(a1), Some(b1)) = (&lo.a, &lo.b, &hi.a, &hi.b) else {
            return;
        };
        if a0.len() != a1.len() || b0.len() != b1.len() {
            if depth >= MAX_DEPTH {
                let folds = |x: &[f64], y: &[f64]| {
                    x.len() == y.len() || if x.len() > y.len() { is_fold(x, y) } else { is_fold(y, x) }
                };
                if folds(a0, a1) && folds(b0, b1) {
                    return;
                }
                self.diagnostics.push(format!(
                    "root count changes within t in [{:.17e}, {:.17e}]: {}->{} and {}->{}",
                    lo.t,
                    hi.t,
                    a0.len(),
                    a1.len(),
                    b0.len(),
                    b1.len()
                ));
                return;
            }
            let mid = self.slice(0.5 * (lo.t + hi.t));
            self.observe(&mid);
            self.interval(lo, &mid, depth + 1);
            self.interval(&mid, hi, depth + 1);
            return;
        }
        let (sa, sb) = (best_shift(a0, a1), best_shift(b0, b1));
        for i in 0..a0.len() {
            for j in 0..b0.len() {
                let (x0, y0) = (a0[i], b0[j]);
                let (x1, y1) = (a1[(i + sa) % a1.len()], b1[(j + sb) % b1.len()]);
                let (d0, d1) = (wrap(x0 - y0), wrap(x1 - y1));
                if d0.abs() >= JUMP || d1.abs() >= JUMP {
                    continue;
                }
                if d0 == 0.0 {
                    self.record(self.witness_at(x0, lo.t));
                } else if d0.signum() != d1.signum() && d1 != 0.0 {
                    let w = self.bisect(lo.t, hi.t, x0, y0, d0);
                    self.record(w);
                }
            }
        }
    }

    /// Follows the branches starting at `(x, y)` at `lo` until the bracket
    /// is shorter than `tol`.
    fn bisect(&self, mut lo: f64, mut hi: f64, mut x: f64, mut y: f64, d_lo: f64) -> Witness {
        while hi - lo > self.tol {
            let mid = 0.5 * (lo + hi);
            let sl = self.slice(mid);
            let (Some(a), Some(b)) = (&sl.a, &sl.b) else { break };
            if a.is_empty() || b.is_empty() {
                break;
            }
            let (xm, ym) = (nearest(a, x), nearest(b, y));
            let d = wrap(xm - ym);
            if d == 0.0 {
                return self.witness_at(xm, mid);
            }
            if d.signum() == d_lo.signum() {
                lo = mid;
                x = xm;
                y = ym;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        let sl = self.slice(t);
        let s = match (&sl.a, &sl.b) {
            (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => {
                let (xa, yb) = (nearest(a, x), nearest(b, y));
                (yb + 0.5 * wrap(xa - yb)).rem_euclid(1.0)
            }
            _ => x,
        };
        self.witness_at(s, t)
    }
}

/// Tests `U(g1) ∩ U(g0^(m)) != {}` on `samples` equally spaced `t`.
pub fn intersect(g0: &LaurentPoly2, g1: &LaurentPoly2, m: i64, tol: f64, samples: usize) -> Result<IntersectionReport> {
    let samples = samples.max(2);
    let mut tr = Tracer {
        g1,
        sheared: g0.shear(m)?,
        g0,
        m,
        tol,
        crossings: 0,
        witness: None,
        min_sep: None,
        diagnostics: Vec::new(),
    };
    let mut prev = tr.slice(0.0);
    tr.observe(&prev);
    for k in 1..=samples {
        let next = tr.slice(k as f64 / samples as f64);
        tr.observe(&next);
        tr.interval(&prev, &next, 0);
        prev = next;
    }
    Ok(IntersectionReport {
        m,
        nonempty: tr.witness.is_some(),
        witness: tr.witness,
        crossings: tr.crossings,
        min_separation: tr.min_sep,
        diagnostics: tr.diagnostics,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t: f64,
    /// `"K"` for `U(g1)`, `"K[m]"` for `U(g0^(m))`.
    pub curve: String,
    /// Position of the root in ascending order at this `t`.
    pub branch: usize,
    pub s: f64,
}

/// Samples of both curves at `samples` equally spaced `t` in `[0, 1)`.
/// Values of `t` where a slice has no circle roots contribute no rows; a
/// slice that vanishes identically is skipped as well.
pub fn emit_curves(g0: &LaurentPoly2, g1: &LaurentPoly2, m: i64, samples: usize) -> Result<Vec<CurvePoint>> {
    let samples = samples.max(2);
    let sheared = g0.shear(m)?;
    let label = format!("K[{m}]");
    let mut out = Vec::new();
    for k in 0..samples {
        let t = k as f64 / samples as f64;
        for (g, name) in [(g1, "K"), (&sheared, label.as_str())] {
            if let Some(turns) = circle_turns(g, t) {
                out.extend(turns.into_iter().enumerate().map(|(branch, s)| CurvePoint {
                    t,
                    curve: name.to_owned(),
                    branch,
                    s,
                }));
            }
        }
    }
    Ok(out)
}
