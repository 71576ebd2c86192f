//! JSON forms of models and reports.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use conicinv_core::conjugacy::Decision;
use conicinv_core::family::CorollaryReport;
use conicinv_core::invariants::{Endpoint, FixedCurve, RealLocus};
use conicinv_core::models::{mk_conic_bundle, ConicBundleModel, ValidationReport};
use conicinv_core::{rat, AlgReal, ParseError, RatPoly};

/// Model file format: polynomial strings in the expression grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B", default = "zero")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "H")]
    pub h: String,
}

fn zero() -> String {
    "0".to_string()
}

#[derive(Debug)]
pub enum ModelInputError {
    Parse { field: &'static str, err: ParseError },
    Invalid(ValidationReport),
}

impl ModelJson {
    pub fn from_model(m: &ConicBundleModel) -> Self {
        let [a, b, c, h] = m.parts().map(ToString::to_string);
        ModelJson { a, b, c, h }
    }

    pub fn polys(&self) -> Result<[RatPoly; 4], ModelInputError> {
        let p = |field: &'static str, s: &str| {
            s.parse::<RatPoly>()
                .map_err(|err| ModelInputError::Parse { field, err })
        };
        Ok([p("A", &self.a)?, p("B", &self.b)?, p("C", &self.c)?, p("H", &self.h)?])
    }

    pub fn to_model(&self) -> Result<ConicBundleModel, ModelInputError> {
        let [a, b, c, h] = self.polys()?;
        mk_conic_bundle(a, b, c, h).map_err(ModelInputError::Invalid)
    }
}

pub fn report(r: &ValidationReport) -> Value {
    json!({
        "valid": r.valid(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "warnings": r.warnings,
    })
}

pub fn fixed_curve(c: &FixedCurve) -> Value {
    json!({
        "branch": c.branch.to_string(),
        "genus": c.genus,
        "real_components": c.real_components,
        "flag": c.kind.as_str(),
    })
}

/// Exact description plus a labelled approximation; intervals are narrowed below 1/1024.
pub fn alg_real(x: &AlgReal) -> Value {
    match x.as_rational() {
        Some(r) => json!({
            "kind": "rational",
            "value": r.to_string(),
            "approx": x.to_f64(),
        }),
        None => {
            let x = x.refine_to(&rat(1, 1024));
            let (p, lo, hi) = x.isolating().expect("irrational values carry an interval");
            json!({
                "kind": "algebraic",
                "poly": p.to_string(),
                "interval": [lo.to_string(), hi.to_string()],
                "approx": x.to_f64(),
            })
        }
    }
}

pub fn endpoint(e: &Endpoint) -> Value {
    match e {
        Endpoint::Finite(x) => alg_real(x),
        Endpoint::Infinity => json!({ "kind": "infinity" }),
    }
}

pub fn locus(l: &RealLocus) -> Value {
    json!({
        "full": l.is_full(),
        "empty": l.is_empty(),
        "contains_infinity": l.contains_infinity(),
        "arcs": l.arcs().iter().map(|a| json!({
            "start": endpoint(&a.start),
            "end": endpoint(&a.end),
            "passes_infinity": a.passes_infinity(),
        })).collect::<Vec<_>>(),
        "points": l.isolated_points().iter().map(alg_real).collect::<Vec<_>>(),
    })
}

pub fn decision(d: &Decision) -> Value {
    json!({
        "verdict": d.verdict.as_str(),
        "witnesses": d.witnesses.as_ref().map(|w| json!({
            "lambda": w.lambda.to_string(),
            "mu": w.mu.to_string(),
        })),
        "failed_condition": d.failed_condition.map(|c| c.as_str()),
        "extended": d.extended,
        "contradiction": d.contradiction,
        "mobius": d.mobius.as_ref().map(|m| json!({
            "a": m.a.to_string(),
            "b": m.b.to_string(),
            "c": m.c.to_string(),
            "d": m.d.to_string(),
        })),
        "notes": d.notes,
    })
}

pub fn corollary(r: &CorollaryReport) -> Value {
    let s = &r.summary;
    json!({
        "f": r.f.to_string(),
        "fixed_curve": fixed_curve(&r.fixed_curve),
        "pairs": r.pairs.iter().map(|p| json!({
            "a": p.a.to_string(),
            "b": p.b.to_string(),
            "valid": p.valid(),
            "report": report(&p.report),
            "label": p.label.as_ref().map(ToString::to_string),
            "curve_proportional": p.curve_proportional,
        })).collect::<Vec<_>>(),
        "pairwise": r.matrix().iter().map(|row| row.iter().map(|v| v.map(|v| v.as_str())).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "comparisons": r.comparisons.iter().map(|c| json!({
            "i": c.i,
            "j": c.j,
            "verdict": c.decision.verdict.as_str(),
            "failed_condition": c.decision.failed_condition.map(|f| f.as_str()),
        })).collect::<Vec<_>>(),
        "summary": {
            "pairs": s.pairs,
            "valid": s.valid,
            "comparisons": s.comparisons,
            "equivalent": s.equivalent,
            "not_equivalent": s.not_equivalent,
            "undecided": s.undecided,
            "sign_condition": s.sign_condition,
            "curves_proportional": s.curves_proportional,
        },
        "notes": r.notes,
    })
}
