//! Logarithmic Mahler measures `m(h) = int_T log |h(e^{2 pi i theta})|`.
//!
//! One variable: Jensen's formula, `log |a_n| + sum log max(1, |r|)` over
//! the roots of the associated ordinary polynomial.
//!
//! Two variables: `m(g) = int_0^1 m(g(., e^{2 pi i beta})) d beta`. The inner
//! measure is exact; the outer integrand is continuous but has square-root
//! kinks where a root crosses the circle. Those points are located first and
//! each panel between them is integrated by Gauss-Legendre under a cosine
//! substitution that clusters nodes at the panel ends.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly1, LaurentPoly2};
use crate::linear::roots::polynomial_roots;

pub fn mahler_1d(h: &LaurentPoly1) -> Result<f64> {
    let (_, coeffs) = h.to_polynomial().ok_or(Error::ZeroPolynomial)?;
    let lead = coeffs.last().expect("non-empty after trimming").norm();
    let roots = polynomial_roots(&coeffs);
    Ok(lead.ln() + roots.iter().map(|r| r.norm().ln().max(0.0)).sum::<f64>())
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MahlerEstimate {
    pub value: f64,
    /// `|I(2n) - I(n)|` for `n` nodes per panel.
    pub error_estimate: f64,
    pub nodes_per_panel: usize,
    /// Points in `[0, 1]` where the inner root configuration changes.
    pub breakpoints: Vec<f64>,
}

pub const DEFAULT_NODES: usize = 256;
const SCAN_SAMPLES: usize = 512;

pub fn mahler_2d(g: &LaurentPoly2) -> Result<MahlerEstimate> {
    mahler_2d_with(g, DEFAULT_NODES)
}

/// Two-variable Mahler measure with `nodes` Gauss points per panel; the
/// returned value uses `2 * nodes`.
pub fn mahler_2d_with(g: &LaurentPoly2, nodes: usize) -> Result<MahlerEstimate> {
    if g.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if nodes == 0 {
        return Err(Error::InvalidConfig("at least one quadrature node is required".into()));
    }
    let breakpoints = root_configuration_breaks(g);
    let mut edges = Vec::with_capacity(breakpoints.len() + 2);
    edges.push(0.0);
    edges.extend(breakpoints.iter().copied());
    edges.push(1.0);
    let coarse = integrate_panels(g, &edges, nodes)?;
    let fine = integrate_panels(g, &edges, 2 * nodes)?;
    Ok(MahlerEstimate {
        value: fine,
        error_estimate: (fine - coarse).abs(),
        nodes_per_panel: 2 * nodes,
        breakpoints,
    })
}

fn inner(g: &LaurentPoly2, beta: f64) -> Result<f64> {
    mahler_1d(&g.specialize_at(Angle::Real(beta)))
}

fn integrate_panels(g: &LaurentPoly2, edges: &[f64], n: usize) -> Result<f64> {
    let (x, w) = gauss_legendre(n);
    let mut total = 0.0;
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        // slivers between two bisected breakpoints straddle a zero of the
        // inner polynomial
        if b - a < 1e-12 {
            continue;
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        for (&u, &wu) in x.iter().zip(&w) {
            // beta = a + (b - a) sin^2(pi (u + 1) / 4)
            let phase = half_pi * (u + 1.0) / 2.0;
            let beta = a + (b - a) * phase.sin().powi(2);
            let jac = (b - a) * (std::f64::consts::PI / 4.0) * (2.0 * phase).sin();
            total += wu * jac * inner(g, beta)?;
        }
    }
    Ok(total)
}

/// Discrete description of the inner polynomial: its degree span and how
/// many roots lie strictly outside the circle. `None` marks the zero
/// polynomial.
fn signature(g: &LaurentPoly2, beta: f64) -> Option<(usize, usize)> {
    let (_, coeffs) = g.specialize_at(Angle::Real(beta)).to_polynomial()?;
    let outside = polynomial_roots(&coeffs).iter().filter(|r| r.norm() > 1.0 + 1e-9).count();
    Some((coeffs.len(), outside))
}

fn root_configuration_breaks(g: &LaurentPoly2) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = (0.0, signature(g, 0.0));
    for i in 1..=SCAN_SAMPLES {
        let b = i as f64 / SCAN_SAMPLES as f64;
        let sig = signature(g, b);
        if sig != prev.1 {
            let (mut lo, mut hi) = (prev.0, b);
            let lo_sig = prev.1;
            while hi - lo > 1e-15 {
                let mid = 0.5 * (lo + hi);
                if signature(g, mid) == lo_sig {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let x = 0.5 * (lo + hi);
            if x > 0.0 && x < 1.0 {
                out.push(x);
            }
        }
        prev = (b, sig);
    }
    out
}
