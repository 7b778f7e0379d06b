//! The worked example `f = g1(y,z) x - g0(y,z)` with
//! `g1 = 1 - y - 1/y - z - 1/z` and `g0 = 3 - y - 1/y - z - 1/z`.

use crate::laurent::LaurentPoly2;

fn cross(constant: i64) -> LaurentPoly2 {
    LaurentPoly2::from_terms([
        ((0, 0), constant),
        ((1, 0), -1),
        ((-1, 0), -1),
        ((0, 1), -1),
        ((0, -1), -1),
    ])
    .expect("small coefficients")
}

pub fn example_g1() -> LaurentPoly2 {
    cross(1)
}

pub fn example_g0() -> LaurentPoly2 {
    cross(3)
}
