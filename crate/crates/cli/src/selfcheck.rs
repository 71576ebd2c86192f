//! Floating-point cross-check of an exact real locus.

use nalgebra::{Matrix3, SymmetricEigen};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conicinv_core::invariants::RealLocus;
use conicinv_core::models::ConicBundleModel;
use conicinv_core::projmaps::ProjPoint;
use conicinv_core::{Rat, RatPoly};

const ENDPOINT_GUARD: f64 = 1e-6;
const EIGEN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LocusCheck {
    pub samples: usize,
    pub agree: usize,
    pub skipped: usize,
    /// Sample points where the exact and floating answers differ.
    pub disagreements: Vec<f64>,
}

fn eval_f64(p: &RatPoly, t: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
}

/// Whether the conic `A x² + B xy + C y² − H z²` at `t` has a real point,
/// judged from the eigenvalue signs of its Gram matrix.
pub fn fiber_real_f64(m: &ConicBundleModel, t: f64) -> bool {
    let (a, b, c, h) = (
        eval_f64(m.a(), t),
        eval_f64(m.b(), t),
        eval_f64(m.c(), t),
        eval_f64(m.h(), t),
    );
    let g = Matrix3::new(a, b / 2.0, 0.0, b / 2.0, c, 0.0, 0.0, 0.0, -h);
    // diagonal congruence keeps the signature and evens out the scales
    let d = Matrix3::from_diagonal(
        &g.diagonal()
            .map(|x| if x == 0.0 { 1.0 } else { x.abs().sqrt().recip() }),
    );
    let eig = SymmetricEigen::new(d * g * d).eigenvalues;
    let scale = eig.iter().fold(0.0f64, |s, e| s.max(e.abs())).max(1.0);
    let pos = eig.iter().any(|e| *e > EIGEN_TOL * scale);
    let neg = eig.iter().any(|e| *e < -EIGEN_TOL * scale);
    let zero = eig.iter().any(|e| e.abs() <= EIGEN_TOL * scale);
    (pos && neg) || zero
}

/// Compares `locus` with the floating answer at `n` seeded sample points
/// spread over the whole line, skipping points near arc endpoints.
pub fn check_locus(m: &ConicBundleModel, locus: &RealLocus, n: usize, seed: u64) -> LocusCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let boundary: Vec<f64> = locus.boundary().iter().map(|x| x.to_f64()).collect();
    let mut out = LocusCheck {
        samples: n,
        ..LocusCheck::default()
    };
    for _ in 0..n {
        let u: f64 = rng.gen_range(-0.499..0.499);
        let t = (std::f64::consts::PI * u).tan();
        if boundary.iter().any(|e| (e - t).abs() < ENDPOINT_GUARD) {
            out.skipped += 1;
            continue;
        }
        let exact = locus.contains(&Rat::from_float(t).expect("finite"));
        if exact == fiber_real_f64(m, t) {
            out.agree += 1;
        } else {
            out.disagreements.push(t);
        }
    }
    out
}

/// Seeded points with nonzero integer coordinates in `[-100, 100]`.
pub fn random_points(n: usize, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coord = move || loop {
        let v: i64 = rng.gen_range(-100..=100);
        if v != 0 {
            return v;
        }
    };
    (0..n)
        .map(|_| ProjPoint::from_ints(coord(), coord(), coord()).expect("nonzero"))
        .collect()
}
