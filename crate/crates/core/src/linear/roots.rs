//! Polynomial roots via companion-matrix eigenvalues and their restriction
//! to the unit circle.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPoly1;

/// Roots closer than this are reported as one root with multiplicity.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Default tolerance on `| |root| - 1 |`.
pub const DEFAULT_CIRCLE_TOL: f64 = 1e-6;

/// All complex roots of `sum coeffs[i] y^i`, leading coefficient nonzero.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    if n == 1 {
        return vec![-coeffs[0] / lead];
    }
    let mut companion = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i] / lead;
    }
    balance(&mut companion);
    let eig = Schur::try_new(companion, f64::EPSILON, 100 * n)
        .and_then(|schur| schur.eigenvalues())
        .map(|e| e.iter().copied().collect())
        // the unshifted-stagnation cases (e.g. y^2 + 1) never converge
        .unwrap_or_else(|| aberth(coeffs));
    eig.into_iter().map(|r| polish(coeffs, r)).collect()
}

/// Aberth-Ehrlich simultaneous iteration, started on a circle of the
/// geometric-mean root radius.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = (coeffs[0].norm() / coeffs[n].norm()).powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, (2.0 * std::f64::consts::PI * k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Parlett-Reinsch diagonal scaling by powers of two.
fn balance(a: &mut DMatrix<Complex64>) {
    let n = a.nrows();
    let norm1 = |c: Complex64| c.re.abs() + c.im.abs();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += norm1(a[(j, i)]);
                    r += norm1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c >= g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

fn horner(coeffs: &[Complex64], y: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::default();
    let mut dp = Complex64::default();
    for &c in coeffs.iter().rev() {
        dp = dp * y + p;
        p = p * y + c;
    }
    (p, dp)
}

/// A few Newton steps, kept only while they reduce `|P|`.
fn polish(coeffs: &[Complex64], mut r: Complex64) -> Complex64 {
    let (mut pv, _) = horner(coeffs, r);
    for _ in 0..4 {
        let (p, dp) = horner(coeffs, r);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let cand = r - p / dp;
        let (pc, _) = horner(coeffs, cand);
        if !(pc.norm() < pv.norm()) {
            break;
        }
        r = cand;
        pv = pc;
    }
    r
}

/// Roots of a Laurent polynomial `h = y^shift P(y)` (the roots of `P`).
/// `None` for the zero polynomial.
pub fn laurent_roots(h: &LaurentPoly1) -> Option<Vec<Complex64>> {
    let (_, coeffs) = h.to_polynomial()?;
    Some(polynomial_roots(&coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleRoot {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl CircleRoot {
    /// `arg(value) / 2 pi` in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        let x = self.value.arg() / (2.0 * std::f64::consts::PI);
        let x = x.rem_euclid(1.0);
        if x >= 1.0 {
            0.0
        } else {
            x
        }
    }
}

/// `{ zeta in S : h(zeta) = 0 }`, or the whole circle when `h == 0`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UnitCircleRootSet {
    pub roots: Vec<CircleRoot>,
    pub is_identically_zero: bool,
}

impl UnitCircleRootSet {
    /// Empty as a subset of the circle.
    pub fn is_empty(&self) -> bool {
        !self.is_identically_zero && self.roots.is_empty()
    }

    /// Root positions in turns, ascending.
    pub fn turns(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.roots.iter().map(CircleRoot::turns).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn unit_circle_roots(h: &LaurentPoly1, tol: f64) -> UnitCircleRootSet {
    let Some(all) = laurent_roots(h) else {
        return UnitCircleRootSet { roots: Vec::new(), is_identically_zero: true };
    };
    let on_circle: Vec<Complex64> = all.into_iter().filter(|r| (r.norm() - 1.0).abs() <= tol).collect();
    UnitCircleRootSet { roots: cluster(on_circle), is_identically_zero: false }
}

fn cluster(mut roots: Vec<Complex64>) -> Vec<CircleRoot> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    for r in roots {
        match out.iter_mut().find(|(c, n)| (*c / *n as f64 - r).norm() <= CLUSTER_TOL) {
            Some((sum, n)) => {
                *sum += r;
                *n += 1;
            }
            None => out.push((r, 1)),
        }
    }
    out.into_iter()
        .map(|(sum, n)| CircleRoot { value: sum / n as f64, multiplicity: n })
        .collect()
}
