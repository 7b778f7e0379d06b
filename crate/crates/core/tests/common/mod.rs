//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use heis_core::angle::turn;
use heis_core::group_ring::{IntElement, Monomial};
use heis_core::laurent::LaurentPoly1;
use heis_core::representations::RepPoint;
use heis_core::twisted::TwistedElement;
use heis_core::Complex64;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::rngs::StdRng;
use rand::Rng;

pub fn matmul3(a: [[i128; 3]; 3], b: [[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let mut c = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Largest singular value.
pub fn op_norm(a: &DMatrix<Complex64>) -> f64 {
    a.clone().svd(false, false).singular_values.max()
}

/// `sqrt(lambda_min(A^* A))` through a Hermitian eigensolver.
pub fn sigma_min_gram(a: &DMatrix<Complex64>) -> f64 {
    let gram = a.adjoint() * a;
    let eig = SymmetricEigen::new(gram);
    eig.eigenvalues.min().max(0.0).sqrt()
}

pub fn random_element(rng: &mut StdRng, max_terms: usize, exp: i64, coeff: i64) -> IntElement {
    let n = rng.random_range(1..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let mono = Monomial::new(
                rng.random_range(-exp..=exp),
                rng.random_range(-exp..=exp),
                rng.random_range(-exp..=exp),
            );
            let mut c = 0;
            while c == 0 {
                c = rng.random_range(-coeff..=coeff);
            }
            (mono, c)
        })
        .collect();
    IntElement::from_terms(terms).unwrap()
}

pub fn random_point(rng: &mut StdRng, q_max: i64) -> RepPoint {
    loop {
        let q = rng.random_range(1..=q_max);
        let p = rng.random_range(0..q);
        if let Ok(pt) = RepPoint::new(p, q, rng.random::<f64>(), rng.random::<f64>()) {
            return pt;
        }
    }
}

/// Untwisted convolution on a dense box, written without the sparse code path.
pub fn plain_convolution(f: &TwistedElement, g: &TwistedElement) -> BTreeMap<(i64, i64), Complex64> {
    const R: i64 = 8;
    let side = (2 * R + 1) as usize;
    let dense = |h: &TwistedElement| {
        let mut a = vec![Complex64::default(); side * side];
        for ((k, l), c) in h.terms() {
            assert!(k.abs() <= R && l.abs() <= R);
            a[((k + R) as usize) * side + (l + R) as usize] = c;
        }
        a
    };
    let (a, b) = (dense(f), dense(g));
    let mut out = BTreeMap::new();
    for i in 0..side * side {
        for j in 0..side * side {
            if a[i] == Complex64::default() || b[j] == Complex64::default() {
                continue;
            }
            let k = (i / side) as i64 + (j / side) as i64 - 2 * R;
            let l = (i % side) as i64 + (j % side) as i64 - 2 * R;
            *out.entry((k, l)).or_insert(Complex64::default()) += a[i] * b[j];
        }
    }
    out.retain(|_, c| *c != Complex64::default());
    out
}

/// Midpoint rule for `int_0^1 log |h(e^{2 pi i x})| dx`.
pub fn mahler_trapezoid(h: &LaurentPoly1, n: usize) -> f64 {
    (0..n).map(|j| h.evaluate(turn((j as f64 + 0.5) / n as f64)).norm().ln()).sum::<f64>() / n as f64
}

/// Random integer Laurent polynomial with exponents in `[lo, lo + deg]`.
pub fn random_laurent1(rng: &mut StdRng, deg: i64, coeff: i64) -> LaurentPoly1 {
    let lo = rng.random_range(-3..=0);
    LaurentPoly1::from_real((lo..=lo + deg).map(|a| (a, rng.random_range(-coeff..=coeff) as f64)))
}
