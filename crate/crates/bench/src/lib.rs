//! Shared inputs for the benchmarks.

use conicinv_core::models::{mk_conic_bundle, ConicBundleModel};
use conicinv_core::{rat_int, RatPoly};

pub fn sextic() -> RatPoly {
    "(t^2-1)*(t^2-4)*(t^2-9)".parse().expect("valid")
}

/// Product of `t − k` for `k = 1..=n`, shifted to mix rational and irrational roots.
pub fn wide_poly(n: i64) -> RatPoly {
    let roots: Vec<_> = (1..=n).map(rat_int).collect();
    RatPoly::from_roots(&roots) - RatPoly::from(1)
}

pub fn family_model(a: i64, b: i64, den: i64) -> ConicBundleModel {
    let h = -RatPoly::from_roots(&[conicinv_core::rat(a, den), conicinv_core::rat(b, den)]);
    mk_conic_bundle(RatPoly::one(), RatPoly::zero(), sextic(), h).expect("valid member")
}
