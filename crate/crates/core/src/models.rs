//! The two conic-bundle normal forms and their validation.
//!
//! A [`ConicBundleModel`] is the surface `A(t)x² + B(t)xy + C(t)y² = H(t)z²`
//! over the affine line, with the involution `z ↦ −z`. A
//! [`DeJonquieresModel`] is the surface `xy = f(z, t)` in weighted projective
//! space, stored through the dehomogenized `f(1, t)`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::ModelError;
use crate::invariants::RealLocus;
use crate::poly::{binary_discriminant, Rat, RatPoly};
use crate::roots::count_distinct_real_roots;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Named pass/fail checks. Valid iff every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Advisory notes that do not affect validity.
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid())?;
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

pub const CHECK_DELTA_NONZERO: &str = "discriminant_nonzero";
pub const CHECK_DELTA_SQUAREFREE: &str = "discriminant_squarefree";
pub const CHECK_DELTA_EVEN: &str = "discriminant_even_degree";

/// `A x² + B xy + C y² = H z²` with `Δ = (B² − 4AC)·H` squarefree of even degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundleModel {
    a: RatPoly,
    b: RatPoly,
    c: RatPoly,
    h: RatPoly,
    delta: RatPoly,
}

impl ConicBundleModel {
    pub fn a(&self) -> &RatPoly {
        &self.a
    }
    pub fn b(&self) -> &RatPoly {
        &self.b
    }
    pub fn c(&self) -> &RatPoly {
        &self.c
    }
    pub fn h(&self) -> &RatPoly {
        &self.h
    }

    /// `Δ = (B² − 4AC)·H`.
    pub fn delta(&self) -> &RatPoly {
        &self.delta
    }

    /// `B² − 4AC`, the branch polynomial of the fixed curve.
    pub fn binary_discriminant(&self) -> RatPoly {
        binary_discriminant(&self.a, &self.b, &self.c)
    }

    pub fn parts(&self) -> [&RatPoly; 4] {
        [&self.a, &self.b, &self.c, &self.h]
    }
}

impl fmt::Display for ConicBundleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})x^2 + ({})xy + ({})y^2 = ({})z^2",
            self.a, self.b, self.c, self.h
        )
    }
}

/// Checks the discriminant conditions on `(A, B, C, H)` without building a model.
pub fn validate_conic_bundle(a: &RatPoly, b: &RatPoly, c: &RatPoly, h: &RatPoly) -> ValidationReport {
    let delta = binary_discriminant(a, b, c) * h;
    let mut report = ValidationReport::new();
    if delta.is_zero() {
        let why = if h.is_zero() { "H = 0" } else { "B^2 - 4AC = 0" };
        report.push(CHECK_DELTA_NONZERO, false, format!("Δ vanishes identically ({why})"));
        return report;
    }
    report.push(CHECK_DELTA_NONZERO, true, format!("Δ = {delta}"));
    let sf = delta.is_squarefree().expect("nonzero");
    report.push(
        CHECK_DELTA_SQUAREFREE,
        sf,
        if sf {
            "Δ has no multiple roots".to_string()
        } else {
            format!("Δ has the repeated factor {}", delta.gcd(&delta.derivative()))
        },
    );
    let deg = delta.degree().unwrap();
    report.push(CHECK_DELTA_EVEN, deg % 2 == 0, format!("deg Δ = {deg}"));
    report
}

/// Builds the model iff `Δ` is nonzero, squarefree and of even degree.
pub fn mk_conic_bundle(a: RatPoly, b: RatPoly, c: RatPoly, h: RatPoly) -> Result<ConicBundleModel, ValidationReport> {
    let report = validate_conic_bundle(&a, &b, &c, &h);
    if !report.valid() {
        return Err(report);
    }
    let delta = binary_discriminant(&a, &b, &c) * &h;
    Ok(ConicBundleModel { a, b, c, h, delta })
}

/// `(λA, λB, λC, λH)`.
pub fn scale(m: &ConicBundleModel, lambda: &Rat) -> Result<ConicBundleModel, ModelError> {
    if lambda.is_zero() {
        return Err(ModelError::ZeroScale);
    }
    // B²−4AC picks up λ², H picks up λ: squarefreeness and degree are unchanged
    let l3 = lambda * lambda * lambda;
    Ok(ConicBundleModel {
        a: m.a.scale(lambda),
        b: m.b.scale(lambda),
        c: m.c.scale(lambda),
        h: m.h.scale(lambda),
        delta: m.delta.scale(&l3),
    })
}

pub const CHECK_H_REAL_ROOTS: &str = "h_only_real_roots";
pub const CHECK_H_NEGATIVE_LEAD: &str = "h_leading_coefficient_negative";
pub const CHECK_INFINITY_NO_REAL_POINT: &str = "fiber_at_infinity_has_no_real_point";
pub const CHECK_PROPER_LOCUS: &str = "real_locus_proper";

/// Checks the extra conditions of the Iskovskikh normal form: `H` splits over
/// the reals with negative leading coefficient, the fiber over `[1:0]` has no
/// real point, and the real locus of the base is a proper subset of `P¹(ℝ)`.
pub fn is_iskovskikh_normal_form(m: &ConicBundleModel) -> ValidationReport {
    normal_form_with_locus(m, &crate::invariants::real_locus(m))
}

pub(crate) fn normal_form_with_locus(m: &ConicBundleModel, locus: &RealLocus) -> ValidationReport {
    let mut report = ValidationReport::new();
    let h = m.h();
    let deg = h.degree().expect("H is nonzero in a valid model");
    // H divides the squarefree Δ, so distinct roots are all its roots
    let real = count_distinct_real_roots(h).expect("nonzero");
    report.push(
        CHECK_H_REAL_ROOTS,
        real == deg,
        format!("{real} real roots out of degree {deg}"),
    );
    let lc = h.leading_coeff().unwrap();
    report.push(
        CHECK_H_NEGATIVE_LEAD,
        lc.is_negative(),
        format!("leading coefficient {lc}"),
    );
    let inf = locus.contains_infinity();
    report.push(
        CHECK_INFINITY_NO_REAL_POINT,
        !inf,
        if inf {
            "the conic over [1:0] has real points".to_string()
        } else {
            "the conic over [1:0] has no real point".to_string()
        },
    );
    report.push(
        CHECK_PROPER_LOCUS,
        !locus.is_full(),
        if locus.is_full() {
            "every real fiber has real points".to_string()
        } else {
            format!("real locus {locus}")
        },
    );
    report
}

/// `xy = f(z, t)` with `f` squarefree of degree `2d`, `d ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeJonquieresModel {
    f: RatPoly,
    d: usize,
}

impl DeJonquieresModel {
    pub fn f(&self) -> &RatPoly {
        &self.f
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

pub const CHECK_F_EVEN: &str = "f_even_degree";
pub const CHECK_F_SQUAREFREE: &str = "f_squarefree";
pub const CHECK_F_DEGREE_AT_LEAST_4: &str = "f_degree_at_least_4";

pub fn mk_dejonquieres(f: RatPoly) -> Result<DeJonquieresModel, ValidationReport> {
    let mut report = ValidationReport::new();
    let Some(deg) = f.degree() else {
        report.push(CHECK_F_SQUAREFREE, false, "f = 0");
        return Err(report);
    };
    report.push(CHECK_F_EVEN, deg % 2 == 0, format!("deg f = {deg}"));
    let sf = f.is_squarefree().expect("nonzero");
    report.push(
        CHECK_F_SQUAREFREE,
        sf,
        if sf {
            "f has no multiple roots".to_string()
        } else {
            format!("f has the repeated factor {}", f.gcd(&f.derivative()))
        },
    );
    let detail = if deg >= 4 {
        format!("d = {}", deg / 2)
    } else {
        "d = 1 gives a rational fixed curve; need deg f >= 4".to_string()
    };
    report.push(CHECK_F_DEGREE_AT_LEAST_4, deg >= 4, detail);
    if !report.valid() {
        return Err(report);
    }
    Ok(DeJonquieresModel { f, d: deg / 2 })
}
