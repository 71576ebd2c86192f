//! Seeded generators and floating-point oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{Matrix3, SymmetricEigen};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use conicinv_core::models::{is_iskovskikh_normal_form, mk_conic_bundle, ConicBundleModel};
use conicinv_core::{rat, rat_int, Rat, RatPoly};

/// Samples closer than this to an arc endpoint are not compared.
pub const ENDPOINT_GUARD: f64 = 1e-6;
/// Eigenvalues of the equilibrated Gram matrix below this count as zero.
pub const EIGEN_TOL: f64 = 1e-9;

pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> RatPoly {
    let deg = rng.gen_range(0..=max_deg);
    RatPoly::new((0..=deg).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect())
}

/// Random polynomial with fractional coefficients, for printing round trips.
pub fn random_rational_poly<R: Rng>(rng: &mut R, max_deg: usize) -> RatPoly {
    let deg = rng.gen_range(0..=max_deg);
    RatPoly::new(
        (0..=deg)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    Rat::from_integer(0.into())
                } else {
                    rat(rng.gen_range(-50..=50), rng.gen_range(1..=12))
                }
            })
            .collect(),
    )
}

pub fn random_squarefree<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> RatPoly {
    loop {
        let mut c: Vec<Rat> = (0..deg).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect();
        let mut lc = 0;
        while lc == 0 {
            lc = rng.gen_range(-bound..=bound);
        }
        c.push(rat_int(lc));
        let p = RatPoly::new(c);
        if p.is_squarefree().unwrap() {
            return p;
        }
    }
}

/// Distinct rationals with small numerators and denominators.
pub fn distinct_rationals<R: Rng>(rng: &mut R, n: usize, span: i64) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    while out.len() < n {
        let r = rat(rng.gen_range(-span..=span), rng.gen_range(1..=3));
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// `(t − u)² + v` with `v > 0`: no real roots.
pub fn positive_quadratic<R: Rng>(rng: &mut R) -> RatPoly {
    let u = rat(rng.gen_range(-6..=6), rng.gen_range(1..=2));
    let v = rat(rng.gen_range(1..=9), rng.gen_range(1..=3));
    let l = RatPoly::new(vec![-u, Rat::from_integer(1.into())]);
    &l * &l + RatPoly::constant(v)
}

/// Squarefree polynomial with exactly `r` real roots and `m` irreducible positive quadratic factors.
pub fn with_known_real_roots<R: Rng>(rng: &mut R, r: usize, m: usize) -> RatPoly {
    loop {
        let mut p = RatPoly::from_roots(&distinct_rationals(rng, r, 12));
        for _ in 0..m {
            p = p * positive_quadratic(rng);
        }
        if rng.gen_bool(0.5) {
            p = -p;
        }
        if p.is_squarefree().unwrap() {
            return p;
        }
    }
}

pub fn random_valid_model<R: Rng>(rng: &mut R) -> ConicBundleModel {
    loop {
        let a = random_poly(rng, 2, 3);
        let b = if rng.gen_bool(0.5) {
            RatPoly::zero()
        } else {
            random_poly(rng, 1, 3)
        };
        let c = random_poly(rng, 3, 3);
        let h = random_poly(rng, 3, 3);
        if let Ok(m) = mk_conic_bundle(a, b, c, h) {
            return m;
        }
    }
}

/// Random model in Iskovskikh normal form with `deg H ∈ {2, 4}`.
pub fn random_normal_form<R: Rng>(rng: &mut R) -> ConicBundleModel {
    loop {
        let k = *[2usize, 2, 4].choose(rng).unwrap();
        let lead = rat_int(rng.gen_range(1..=3));
        let h = -RatPoly::from_roots(&distinct_rationals(rng, k, 8)).scale(&lead);
        let a = if rng.gen_bool(0.5) {
            RatPoly::from(rng.gen_range(1i64..=3))
        } else {
            positive_quadratic(rng)
        };
        let b = if rng.gen_bool(0.5) {
            RatPoly::zero()
        } else {
            random_poly(rng, 1, 2)
        };
        let c_deg = *[2usize, 4].choose(rng).unwrap();
        let mut c: Vec<Rat> = (0..c_deg).map(|_| rat_int(rng.gen_range(-5..=5))).collect();
        c.push(rat_int(rng.gen_range(1..=3)));
        let Ok(m) = mk_conic_bundle(a, b, RatPoly::new(c), h) else {
            continue;
        };
        if is_iskovskikh_normal_form(&m).valid() {
            return m;
        }
    }
}

/// Random model with real points over the whole base: `B² − 4AC` is positive definite.
pub fn random_full_circle<R: Rng>(rng: &mut R) -> ConicBundleModel {
    loop {
        let b = if rng.gen_bool(0.5) {
            RatPoly::zero()
        } else {
            random_poly(rng, 1, 2)
        };
        let mut q = positive_quadratic(rng);
        if rng.gen_bool(0.5) {
            q = q * positive_quadratic(rng);
        }
        let h = random_poly(rng, 4, 4);
        if let Ok(m) = mk_conic_bundle(RatPoly::one(), b, -q, h) {
            return m;
        }
    }
}

pub fn eval_f64(p: &RatPoly, t: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap())
}

/// Whether the ternary form `A x² + B xy + C y² − H z²` is isotropic over ℝ at
/// `t`, read off the inertia of its Gram matrix after a diagonal rescaling.
pub fn oracle_fiber_real(m: &ConicBundleModel, t: f64) -> bool {
    let (a, b, c, h) = (
        eval_f64(m.a(), t),
        eval_f64(m.b(), t),
        eval_f64(m.c(), t),
        eval_f64(m.h(), t),
    );
    let g = Matrix3::new(a, b / 2.0, 0.0, b / 2.0, c, 0.0, 0.0, 0.0, -h);
    let d = Matrix3::from_diagonal(&g.diagonal().map(|x| if x == 0.0 { 1.0 } else { 1.0 / x.abs().sqrt() }));
    let ev = SymmetricEigen::new(d * g * d).eigenvalues;
    let scale = ev.iter().fold(1.0f64, |s, e| s.max(e.abs()));
    let pos = ev.iter().filter(|e| **e > EIGEN_TOL * scale).count();
    let neg = ev.iter().filter(|e| **e < -EIGEN_TOL * scale).count();
    pos < 3 && neg < 3
}
