//! Elements linear in `x`: `f = g1(y, z) x - g0(y, z)`.

pub mod criteria;
pub mod mahler;
pub mod orbit;
pub mod roots;

pub use criteria::{
    check_mahler_mismatch, check_one_empty, ls2_criterion, psi_log_integral, LinearVerdict, Ls2Options,
    Ls2Report, MismatchReport, OneEmptyReport,
};
pub use mahler::{mahler_1d, mahler_2d, mahler_2d_with, MahlerEstimate};
pub use orbit::{check_orbit_intersection, emit_curves, swapped, CurvePoint, IntersectionReport, OrbitReport, Witness};
pub use roots::{laurent_roots, polynomial_roots, unit_circle_roots, CircleRoot, UnitCircleRootSet};
