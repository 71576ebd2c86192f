//! Conjugacy invariants of a model: the fixed curve `w² = P(t)`, the real
//! locus of the base, and the resulting class label.

use std::fmt;

use crate::error::InvariantError;
use crate::models::{is_iskovskikh_normal_form, ConicBundleModel, DeJonquieresModel};
use crate::poly::{homogenize, Rat, RatPoly};
use crate::roots::{gap_samples, isolate_real_roots, AlgReal};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// Branch of degree at most 2: no geometrically irrational fixed curve.
    Rational,
    Elliptic,
    Hyperelliptic,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Rational => "rational",
            CurveKind::Elliptic => "elliptic",
            CurveKind::Hyperelliptic => "hyperelliptic",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The curve `w² = branch(t)`, with `branch` stored primitive (coprime integer
/// coefficients); its sign is kept since `P` and `−P` give different real curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedCurve {
    pub branch: RatPoly,
    /// 0 for rational curves.
    pub genus: u32,
    pub real_components: usize,
    pub kind: CurveKind,
}

impl FixedCurve {
    /// Builds the invariants of `w² = branch` for a squarefree nonzero `branch`.
    pub fn from_branch(branch: &RatPoly) -> Result<Self, InvariantError> {
        if branch.is_zero() || !branch.is_squarefree()? {
            return Err(InvariantError::NotSquarefree);
        }
        let branch = branch.primitive();
        let deg = branch.degree().unwrap();
        let (genus, kind) = if deg <= 2 {
            (0, CurveKind::Rational)
        } else {
            let g = genus(&branch)?;
            (
                g,
                if g == 1 {
                    CurveKind::Elliptic
                } else {
                    CurveKind::Hyperelliptic
                },
            )
        };
        let real_components = real_components(&branch)?;
        Ok(FixedCurve {
            branch,
            genus,
            real_components,
            kind,
        })
    }
}

impl fmt::Display for FixedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w^2 = {} ({}, genus {}, {} real component{})",
            self.branch,
            self.kind,
            self.genus,
            self.real_components,
            if self.real_components == 1 { "" } else { "s" }
        )
    }
}

/// `⌈deg/2⌉ − 1` for a squarefree branch polynomial of degree at least 3.
pub fn genus(branch: &RatPoly) -> Result<u32, InvariantError> {
    let deg = branch.degree().ok_or(InvariantError::NotSquarefree)?;
    if !branch.is_squarefree()? {
        return Err(InvariantError::NotSquarefree);
    }
    if deg <= 2 {
        return Err(InvariantError::RationalCurve { degree: deg });
    }
    Ok((deg.div_ceil(2) - 1) as u32)
}

/// Number of connected components of the real locus of `w² = branch`.
///
/// The branch is read as a binary form of even degree `2⌈deg/2⌉`, so an odd
/// degree puts a root at `[1:0]`. Components are the maximal arcs of the
/// circle `P¹(ℝ)` on which the form is nonnegative. A positive branch without
/// real roots gives one or two components depending on the degree.
pub fn real_components(branch: &RatPoly) -> Result<usize, InvariantError> {
    if branch.is_zero() || !branch.is_squarefree()? {
        return Err(InvariantError::NotSquarefree);
    }
    let deg = branch.degree().unwrap();
    let form = homogenize(branch, deg + deg % 2)?;
    let roots = isolate_real_roots(branch)?;
    if roots.is_empty() {
        if branch.sign_at_pos_infinity() == Sign::Negative {
            return Ok(0);
        }
        // w has weight deg/2; going once around the circle multiplies it by
        // (−1)^(deg/2), which swaps the sheets w = ±√P exactly when deg/2 is odd
        return Ok(if (deg / 2) % 2 == 1 { 1 } else { 2 });
    }
    let samples = gap_samples(&roots);

    // walk the circle from −∞ to +∞: gap, root, gap, ..., root, gap, then [1:0]
    let mut cyclic: Vec<bool> = Vec::with_capacity(2 * roots.len() + 2);
    for (i, s) in samples.iter().enumerate() {
        if i > 0 {
            cyclic.push(true);
        }
        cyclic.push(branch.sign_at(s) != Sign::Negative);
    }
    if form.sign_at_infinity() == Sign::Zero {
        cyclic.push(true);
    } else {
        // [1:0] lies inside the gap that wraps around; first and last gap agree
        debug_assert_eq!(cyclic.first(), cyclic.last());
        cyclic.pop();
    }
    Ok(cyclic_runs(&cyclic))
}

/// Maximal runs of `true` in a cyclic sequence.
fn cyclic_runs(items: &[bool]) -> usize {
    if items.iter().all(|&b| b) {
        return usize::from(!items.is_empty());
    }
    let n = items.len();
    (0..n).filter(|&i| items[i] && !items[(i + n - 1) % n]).count()
}

pub fn fixed_curve_cb(m: &ConicBundleModel) -> FixedCurve {
    FixedCurve::from_branch(&m.binary_discriminant()).expect("B^2 - 4AC divides a squarefree Δ")
}

pub fn fixed_curve_dj(m: &DeJonquieresModel) -> FixedCurve {
    FixedCurve::from_branch(m.f()).expect("f is squarefree of degree >= 4")
}

/// Whether the conic over the rational point `t` has a real point.
///
/// The fiber is the ternary form `diag-block(A, B/2; B/2, C) ⊕ (−H)` with
/// determinant `Δ/4`. It has a real zero iff it is singular or indefinite,
/// which for `Δ(t) ≠ 0` means `B² − 4AC > 0` or `A·H > 0`.
pub fn fiber_has_real_point(m: &ConicBundleModel, t: &Rat) -> bool {
    if m.delta().sign_at(t) == Sign::Zero {
        return true;
    }
    if m.binary_discriminant().sign_at(t) == Sign::Positive {
        return true;
    }
    m.a().sign_at(t) * m.h().sign_at(t) == Sign::Positive
}

/// Arc endpoint on `P¹(ℝ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Finite(AlgReal),
    Infinity,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Finite(x) => write!(f, "{x}"),
            Endpoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Closed arc of `P¹(ℝ)` traversed from `start` to `end` in the increasing
/// direction of `t`. When `start > end`, or either endpoint is `∞`, the arc
/// passes through `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: Endpoint,
    pub end: Endpoint,
}

impl Arc {
    pub fn contains(&self, t: &Rat) -> bool {
        match (&self.start, &self.end) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => {
                let after_start = a.cmp_rat(t).is_le();
                let before_end = b.cmp_rat(t).is_ge();
                if a <= b {
                    after_start && before_end
                } else {
                    after_start || before_end
                }
            }
            (Endpoint::Infinity, Endpoint::Finite(b)) => b.cmp_rat(t).is_ge(),
            (Endpoint::Finite(a), Endpoint::Infinity) => a.cmp_rat(t).is_le(),
            (Endpoint::Infinity, Endpoint::Infinity) => true,
        }
    }

    pub fn passes_infinity(&self) -> bool {
        match (&self.start, &self.end) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a > b,
            _ => true,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// Exact closed subset of `P¹(ℝ)`: disjoint arcs plus isolated points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealLocus {
    arcs: Vec<Arc>,
    points: Vec<AlgReal>,
    full: bool,
    infinity: bool,
}

impl RealLocus {
    pub fn full() -> Self {
        RealLocus {
            arcs: Vec::new(),
            points: Vec::new(),
            full: true,
            infinity: true,
        }
    }

    pub fn empty() -> Self {
        RealLocus {
            arcs: Vec::new(),
            points: Vec::new(),
            full: false,
            infinity: false,
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn isolated_points(&self) -> &[AlgReal] {
        &self.points
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty() && self.points.is_empty()
    }

    pub fn contains_infinity(&self) -> bool {
        self.infinity
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.full || self.arcs.iter().any(|a| a.contains(t)) || self.points.iter().any(|p| p.cmp_rat(t).is_eq())
    }

    /// Finite arc endpoints and isolated points, in the order stored.
    pub fn boundary(&self) -> Vec<&AlgReal> {
        let mut out = Vec::new();
        for a in &self.arcs {
            for e in [&a.start, &a.end] {
                if let Endpoint::Finite(x) = e {
                    out.push(x);
                }
            }
        }
        out.extend(self.points.iter());
        out
    }
}

impl fmt::Display for RealLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            return write!(f, "all of P^1(R)");
        }
        if self.is_empty() {
            return write!(f, "empty");
        }
        let mut parts: Vec<String> = self.arcs.iter().map(ToString::to_string).collect();
        parts.extend(self.points.iter().map(|p| format!("{{{p}}}")));
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// The set of `t ∈ P¹(ℝ)` whose fiber has a real point.
///
/// Roots of `Δ` always belong to it (singular fibers have a real point). On
/// each gap between consecutive roots membership is constant and read off a
/// rational sample. `[1:0]` belongs to the closure of whichever end gaps are in.
pub fn real_locus(m: &ConicBundleModel) -> RealLocus {
    let roots = isolate_real_roots(m.delta()).expect("Δ is squarefree");
    let gaps: Vec<bool> = gap_samples(&roots).iter().map(|s| fiber_has_real_point(m, s)).collect();
    let n = roots.len();
    let infinity = gaps[0] || gaps[n];
    if gaps.iter().all(|&g| g) {
        return RealLocus::full();
    }
    if n == 0 {
        return RealLocus::empty();
    }

    // runs over the sequence gap0, root1, gap1, ..., rootn, gapn; roots are always in
    struct Run {
        first: usize,
        last: usize,
    }
    let len = 2 * n + 1;
    let inside = |i: usize| i % 2 == 1 || gaps[i / 2];
    let mut runs = Vec::new();
    let mut i = 0;
    while i < len {
        if !inside(i) {
            i += 1;
            continue;
        }
        let first = i;
        while i + 1 < len && inside(i + 1) {
            i += 1;
        }
        runs.push(Run { first, last: i });
        i += 1;
    }

    let endpoint = |i: usize| -> Endpoint {
        if i % 2 == 1 {
            Endpoint::Finite(roots[i / 2].clone())
        } else {
            Endpoint::Infinity
        }
    };

    let mut arcs = Vec::new();
    let mut points = Vec::new();
    let wraps = runs.len() > 1 && runs[0].first == 0 && runs[runs.len() - 1].last == len - 1;
    let inner = if wraps { &runs[1..runs.len() - 1] } else { &runs[..] };
    for r in inner {
        if r.first == r.last {
            points.push(roots[r.first / 2].clone());
        } else {
            arcs.push(Arc {
                start: endpoint(r.first),
                end: endpoint(r.last),
            });
        }
    }
    if wraps {
        arcs.push(Arc {
            start: endpoint(runs[runs.len() - 1].first),
            end: endpoint(runs[0].last),
        });
    }
    RealLocus {
        arcs,
        points,
        full: false,
        infinity,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    DeJonquieres {
        genus: Option<u32>,
    },
    /// `d = deg H`.
    Iskovskikh {
        d: usize,
        genus: Option<u32>,
    },
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |g: &Option<u32>| match g {
            Some(g) => format!("genus {g}"),
            None => "rational fixed curve".to_string(),
        };
        match self {
            ClassLabel::DeJonquieres { genus } => {
                write!(f, "de Jonquieres involution ({})", g(genus))
            }
            ClassLabel::Iskovskikh { d, genus } => {
                write!(f, "{d}-twisted Iskovskikh involution ({})", g(genus))
            }
        }
    }
}

/// De Jonquières when every real fiber has a real point; otherwise a
/// `deg H`-twisted Iskovskikh involution, provided the model is in normal form.
pub fn classify(m: &ConicBundleModel) -> Result<ClassLabel, InvariantError> {
    let curve = fixed_curve_cb(m);
    let genus = (curve.kind != CurveKind::Rational).then_some(curve.genus);
    if real_locus(m).is_full() {
        return Ok(ClassLabel::DeJonquieres { genus });
    }
    let report = is_iskovskikh_normal_form(m);
    if !report.valid() {
        return Err(InvariantError::NotNormalForm(report));
    }
    Ok(ClassLabel::Iskovskikh {
        d: m.h().degree().unwrap(),
        genus,
    })
}
