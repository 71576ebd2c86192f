//! Equivariant birational equivalence of conic-bundle models.
//!
//! Two Iskovskikh normal forms over the same base coordinate are equivalent
//! iff their real loci coincide and both `B² − 4AC` and `H` agree up to
//! positive factors. Equal discriminant loci follow from the latter and are
//! only re-checked as a consistency test.

use std::fmt;

use num_traits::{One, Zero};

use crate::invariants::{fixed_curve_cb, real_locus, CurveKind};
use crate::models::{mk_conic_bundle, normal_form_with_locus, ConicBundleModel, ValidationReport};
use crate::poly::{positive_proportionality, Rat, RatPoly};
use crate::roots::isolate_real_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not_equivalent",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailedCondition {
    DiscriminantLocus,
    RealInterval,
    SignCondition,
}

impl FailedCondition {
    pub fn as_str(self) -> &'static str {
        match self {
            FailedCondition::DiscriminantLocus => "discriminant_locus",
            FailedCondition::RealInterval => "real_interval",
            FailedCondition::SignCondition => "sign_condition",
        }
    }
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Positive factors relating the second model to the first:
/// `B₂² − 4A₂C₂ = λ·(B₁² − 4A₁C₁)` and `H₂ = μ·H₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub lambda: Rat,
    pub mu: Rat,
}

/// Real Möbius transformation `t ↦ (a·t + b)/(c·t + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

/// Point of `P¹(ℚ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinePoint {
    Finite(Rat),
    Infinity,
}

impl LinePoint {
    fn coords(&self) -> (Rat, Rat) {
        match self {
            LinePoint::Finite(t) => (t.clone(), Rat::one()),
            LinePoint::Infinity => (Rat::one(), Rat::zero()),
        }
    }
}

impl fmt::Display for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinePoint::Finite(t) => write!(f, "{t}"),
            LinePoint::Infinity => write!(f, "∞"),
        }
    }
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius {
            a: Rat::one(),
            b: Rat::zero(),
            c: Rat::zero(),
            d: Rat::one(),
        }
    }

    /// `t ↦ t + s`.
    pub fn shift(s: Rat) -> Self {
        Mobius {
            b: s,
            ..Self::identity()
        }
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &LinePoint) -> LinePoint {
        let (u, v) = p.coords();
        let num = &self.a * &u + &self.b * &v;
        let den = &self.c * &u + &self.d * &v;
        if den.is_zero() {
            LinePoint::Infinity
        } else {
            LinePoint::Finite(num / den)
        }
    }

    fn as_array(&self) -> [Rat; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    fn negated(&self) -> Self {
        Mobius {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// The unique map sending `src[i]` to `dst[i]`; `None` when a triple has repeated points.
    pub fn from_triples(src: &[LinePoint; 3], dst: &[LinePoint; 3]) -> Option<Mobius> {
        let s = frame(src)?;
        let t = frame(dst)?;
        // φ = T · adj(S)
        let adj = [s[3].clone(), -&s[1], -&s[2], s[0].clone()];
        let m = mat_mul(&t, &adj);
        let out = Mobius {
            a: m[0].clone(),
            b: m[1].clone(),
            c: m[2].clone(),
            d: m[3].clone(),
        };
        (!out.det().is_zero()).then_some(out)
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = RatPoly::new(vec![self.b.clone(), self.a.clone()]);
        let den = RatPoly::new(vec![self.d.clone(), self.c.clone()]);
        if den == RatPoly::one() {
            write!(f, "t ↦ {num}")
        } else {
            write!(f, "t ↦ ({num})/({den})")
        }
    }
}

/// Matrix (row-major 2×2) sending `[1:0], [0:1], [1:1]` to the three points.
fn frame(p: &[LinePoint; 3]) -> Option<[Rat; 4]> {
    let (x1, y1) = p[0].coords();
    let (x2, y2) = p[1].coords();
    let (x3, y3) = p[2].coords();
    let det = &x1 * &y2 - &x2 * &y1;
    if det.is_zero() {
        return None;
    }
    let c1 = (&x3 * &y2 - &x2 * &y3) / &det;
    let c2 = (&x1 * &y3 - &x3 * &y1) / &det;
    if c1.is_zero() || c2.is_zero() {
        return None;
    }
    Some([&c1 * &x1, &c2 * &x2, &c1 * &y1, &c2 * &y2])
}

fn mat_mul(l: &[Rat; 4], r: &[Rat; 4]) -> [Rat; 4] {
    [
        &l[0] * &r[0] + &l[1] * &r[2],
        &l[0] * &r[1] + &l[1] * &r[3],
        &l[2] * &r[0] + &l[3] * &r[2],
        &l[2] * &r[1] + &l[3] * &r[3],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub witnesses: Option<Witnesses>,
    pub failed_condition: Option<FailedCondition>,
    pub notes: Vec<String>,
    /// Set when the equal-discriminant check disagreed with the sign condition.
    pub contradiction: bool,
    /// Set for results of the base-change search.
    pub extended: bool,
    /// Base change applied to the second model, for extended results.
    pub mobius: Option<Mobius>,
}

impl Decision {
    fn new(verdict: Verdict) -> Self {
        Decision {
            verdict,
            witnesses: None,
            failed_condition: None,
            notes: Vec::new(),
            contradiction: false,
            extended: false,
            mobius: None,
        }
    }

    fn not_equivalent(cond: FailedCondition) -> Self {
        Decision {
            failed_condition: Some(cond),
            ..Self::new(Verdict::NotEquivalent)
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verdict: {}", self.verdict)?;
        if self.extended {
            write!(f, " (extended: up to base change)")?;
        }
        writeln!(f)?;
        if let Some(w) = &self.witnesses {
            writeln!(f, "witnesses: lambda = {}, mu = {}", w.lambda, w.mu)?;
        }
        if let Some(c) = &self.failed_condition {
            writeln!(f, "failed condition: {c}")?;
        }
        if let Some(m) = &self.mobius {
            writeln!(f, "base change: {m}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConjugacyError {
    #[error("model {which} is not in Iskovskikh normal form:\n{report}")]
    NotNormalForm { which: usize, report: ValidationReport },
}

fn same_discriminant_locus(m1: &ConicBundleModel, m2: &ConicBundleModel) -> bool {
    m1.delta().monic() == m2.delta().monic()
}

/// Decides equivalence of two models over the same base coordinate.
///
/// Models whose every real fiber has real points (de Jonquières type) are
/// compared through their fixed curves only; a mixed pair is never equivalent.
pub fn decide_equivalent(m1: &ConicBundleModel, m2: &ConicBundleModel) -> Result<Decision, ConjugacyError> {
    let loc1 = real_locus(m1);
    let loc2 = real_locus(m2);
    match (loc1.is_full(), loc2.is_full()) {
        (true, true) => return Ok(decide_dejonquieres(m1, m2)),
        (true, false) | (false, true) => {
            return Ok(Decision::not_equivalent(FailedCondition::RealInterval)
                .note("one model has real points over all of P^1(R) (de Jonquieres type), the other does not"))
        }
        (false, false) => {}
    }
    for (which, m, loc) in [(1, m1, &loc1), (2, m2, &loc2)] {
        let report = normal_form_with_locus(m, loc);
        if !report.valid() {
            return Err(ConjugacyError::NotNormalForm { which, report });
        }
    }

    let lambda = positive_proportionality(&m2.binary_discriminant(), &m1.binary_discriminant());
    let mu = positive_proportionality(m2.h(), m1.h());
    let same_interval = loc1 == loc2;
    let same_locus = same_discriminant_locus(m1, m2);

    let mut notes = Vec::new();
    notes.push(match &lambda {
        Some(p) => format!("B^2-4AC: second = {} x first", p.lambda),
        None => "B^2-4AC: not positively proportional".to_string(),
    });
    notes.push(match &mu {
        Some(p) => format!("H: second = {} x first", p.lambda),
        None => "H: not positively proportional".to_string(),
    });
    notes.push(format!(
        "real intervals {}",
        if same_interval { "agree" } else { "differ" }
    ));
    notes.push(format!(
        "discriminant loci {} (implied by the sign condition, checked independently)",
        if same_locus { "agree" } else { "differ" }
    ));

    let mut decision = match (&lambda, &mu) {
        (Some(l), Some(u)) => {
            if same_interval {
                let mut d = Decision::new(Verdict::Equivalent);
                d.witnesses = Some(Witnesses {
                    lambda: l.lambda.clone(),
                    mu: u.lambda.clone(),
                });
                d
            } else {
                Decision::not_equivalent(FailedCondition::RealInterval)
            }
        }
        _ => Decision::not_equivalent(FailedCondition::SignCondition),
    };
    if lambda.is_some() && mu.is_some() && !same_locus {
        decision.contradiction = true;
        notes.push("inconsistency: sign condition holds but discriminant loci differ".to_string());
    }
    decision.notes.extend(notes);
    Ok(decision)
}

fn decide_dejonquieres(m1: &ConicBundleModel, m2: &ConicBundleModel) -> Decision {
    let c1 = fixed_curve_cb(m1);
    let c2 = fixed_curve_cb(m2);
    let base = "both models have real points over all of P^1(R) (de Jonquieres type); compared by fixed curve only";
    if c1.kind == CurveKind::Rational || c2.kind == CurveKind::Rational {
        return Decision::new(Verdict::Undecided)
            .note(base)
            .note("a rational fixed curve carries no conjugacy information here");
    }
    match positive_proportionality(&c2.branch, &c1.branch) {
        Some(p) => {
            let mut d = Decision::new(Verdict::Equivalent).note(base).note(
                "fixed curves w^2 = P agree up to a positive factor; mu is set to 1 since H is not an invariant of this class",
            );
            // branches are stored primitive; restate the factor for the raw B^2-4AC
            let raw = positive_proportionality(&m2.binary_discriminant(), &m1.binary_discriminant());
            d.witnesses = Some(Witnesses {
                lambda: raw.map_or(p.lambda, |r| r.lambda),
                mu: Rat::one(),
            });
            d
        }
        None => Decision::new(Verdict::Undecided)
            .note(base)
            .note("branch polynomials are not positively proportional, but the curves could still be isomorphic"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("B^2-4AC has odd degree; no consistent weights for a base change")]
    OddDiscriminant,
    #[error("no weights compatible with the degrees of A, B, C")]
    NoWeights,
    #[error("transformed model is invalid:\n{0}")]
    Invalid(ValidationReport),
    #[error("singular base change")]
    Singular,
}

/// Pulls a model back along `t = φ(s)`, rehomogenizing each coefficient with
/// the weight that keeps `Δ` of the same degree.
pub fn mobius_transform(m: &ConicBundleModel, phi: &Mobius) -> Result<ConicBundleModel, TransformError> {
    if phi.det().is_zero() {
        return Err(TransformError::Singular);
    }
    let [ea, eb, ec, eh] = weights(m)?;
    let arr = phi.as_array();
    let pull = |p: &RatPoly, e: usize| p.mobius_pullback(e, &arr).map_err(|_| TransformError::NoWeights);
    let a = pull(m.a(), ea)?;
    let b = pull(m.b(), eb)?;
    let c = pull(m.c(), ec)?;
    let h = pull(m.h(), eh)?;
    mk_conic_bundle(a, b, c, h).map_err(TransformError::Invalid)
}

/// `[e_A, e_B, e_C, e_H]` with `e_A + e_C = 2e_B = deg(B² − 4AC)`, `e_H = deg H`,
/// and `e_A ≡ e_C ≡ e_H (mod 2)`, each bounding the degree of its polynomial.
fn weights(m: &ConicBundleModel) -> Result<[usize; 4], TransformError> {
    let dd = m.binary_discriminant().degree().expect("nonzero");
    if dd % 2 == 1 {
        return Err(TransformError::OddDiscriminant);
    }
    let eb = dd / 2;
    let eh = m.h().degree().expect("nonzero");
    let deg = |p: &RatPoly| p.degree().unwrap_or(0);
    if !m.b().is_zero() && deg(m.b()) > eb {
        return Err(TransformError::NoWeights);
    }
    let mut ea = deg(m.a());
    if ea % 2 != eh % 2 {
        ea += 1;
    }
    if ea > dd {
        return Err(TransformError::NoWeights);
    }
    let ec = dd - ea;
    if !m.c().is_zero() && deg(m.c()) > ec {
        return Err(TransformError::NoWeights);
    }
    Ok([ea, eb, ec, eh])
}

fn rational_roots(p: &RatPoly) -> (Vec<Rat>, usize) {
    let roots = isolate_real_roots(p).expect("Δ is squarefree");
    let n = roots.len();
    (roots.iter().filter_map(|r| r.as_rational().cloned()).collect(), n)
}

/// Searches for a rational base change `φ` with `m2 ∘ φ` equivalent to `m1`.
///
/// Candidates send a fixed triple of rational roots of `Δ₁` (padded with `∞`)
/// to ordered triples of rational roots of `Δ₂` (plus `∞`). When the source
/// triple consists of roots and every real root of `Δ₂` is rational, the
/// search covers every real base change, and a failure is reported as
/// `not_equivalent`; otherwise as `undecided`.
pub fn decide_up_to_mobius(m1: &ConicBundleModel, m2: &ConicBundleModel) -> Result<Decision, ConjugacyError> {
    let direct = decide_equivalent(m1, m2)?;
    let finish = |mut d: Decision| {
        d.extended = true;
        d
    };
    if direct.verdict == Verdict::Equivalent {
        let mut d = finish(direct);
        d.mobius = Some(Mobius::identity());
        return Ok(d);
    }
    if real_locus(m1).is_full() || real_locus(m2).is_full() {
        return Ok(finish(direct).note("base-change search only applies to Iskovskikh normal forms"));
    }

    let (rat1, real1) = rational_roots(m1.delta());
    let (rat2, real2) = rational_roots(m2.delta());
    if m1.delta().degree() != m2.delta().degree() || real1 != real2 {
        return Ok(finish(Decision::not_equivalent(FailedCondition::DiscriminantLocus)).note(format!(
            "discriminants have different root counts (degree {:?} vs {:?}, real {real1} vs {real2}); no base change can match them",
            m1.delta().degree(),
            m2.delta().degree()
        )));
    }

    let mut src: Vec<LinePoint> = rat1.iter().cloned().map(LinePoint::Finite).collect();
    src.push(LinePoint::Infinity);
    if src.len() < 3 {
        return Ok(finish(Decision::new(Verdict::Undecided)).note(format!(
            "Δ of the first model has {} rational root(s); at least 3 points counting ∞ are needed",
            rat1.len()
        )));
    }
    let src: [LinePoint; 3] = [src[0].clone(), src[1].clone(), src[2].clone()];
    let mut dst: Vec<LinePoint> = rat2.iter().cloned().map(LinePoint::Finite).collect();
    dst.push(LinePoint::Infinity);

    let delta_deg = m2.delta().degree().expect("nonzero");
    let target_delta = m1.delta().monic();
    let mut exhaustive = !src.contains(&LinePoint::Infinity) && rat2.len() == real2;
    let mut best_failure: Option<FailedCondition> = None;
    let mut tried = 0usize;
    for i in 0..dst.len() {
        for j in 0..dst.len() {
            for k in 0..dst.len() {
                if i == j || j == k || i == k {
                    continue;
                }
                let target = [dst[i].clone(), dst[j].clone(), dst[k].clone()];
                let Some(phi) = Mobius::from_triples(&src, &target) else {
                    continue;
                };
                // the discriminant locus must be carried onto itself
                let pulled = m2
                    .delta()
                    .mobius_pullback(delta_deg, &phi.as_array())
                    .expect("degree bound holds");
                if pulled.monic() != target_delta {
                    continue;
                }
                // the matrix is defined up to sign, which can flip the sign of H
                for cand in [phi.clone(), phi.negated()] {
                    let moved = match mobius_transform(m2, &cand) {
                        Ok(m) => m,
                        Err(TransformError::Invalid(_)) => continue,
                        Err(_) => {
                            exhaustive = false;
                            continue;
                        }
                    };
                    let Ok(d) = decide_equivalent(m1, &moved) else {
                        continue;
                    };
                    tried += 1;
                    if d.verdict == Verdict::Equivalent {
                        let mut d = finish(d);
                        d.mobius = Some(cand.clone());
                        d.notes.push(format!("found after {tried} candidate base change(s)"));
                        return Ok(d);
                    }
                    if best_failure.is_none() {
                        best_failure = d.failed_condition;
                    }
                }
            }
        }
    }
    let summary =
        format!("{tried} candidate base change(s) matching the discriminants and in normal form, none equivalent");
    if exhaustive {
        let cond = best_failure.unwrap_or(FailedCondition::DiscriminantLocus);
        Ok(finish(Decision::not_equivalent(cond))
            .note(summary)
            .note("all real roots are rational, so every real base change matching the discriminants was tried"))
    } else {
        Ok(finish(Decision::new(Verdict::Undecided))
            .note(summary)
            .note("search restricted to rational candidates; irrational base changes were not examined"))
    }
}
