//! The family `x² + f(t)y² = −(t−a)(t−b)z²` and the pairwise
//! non-conjugacy demonstration over a list of parameter pairs.

use std::fmt;

use rayon::prelude::*;

use crate::conjugacy::{decide_equivalent, Decision, FailedCondition, Verdict};
use crate::invariants::{classify, fixed_curve_cb, real_components, ClassLabel, FixedCurve};
use crate::models::{mk_conic_bundle, ConicBundleModel, ValidationReport};
use crate::poly::{positive_proportionality, rat_int, Rat, RatPoly};
use crate::roots::count_distinct_real_roots;
use crate::sign::Sign;

pub const CHECK_FAMILY_EVEN: &str = "f_even_degree";
pub const CHECK_FAMILY_DEGREE: &str = "f_degree_at_least_6";
pub const CHECK_FAMILY_SQUAREFREE: &str = "f_squarefree";
pub const CHECK_FAMILY_REAL_ROOTS: &str = "f_at_least_4_real_roots";
pub const CHECK_FAMILY_COMPONENTS: &str = "fixed_curve_at_least_2_components";
pub const CHECK_PARAMS_DISTINCT: &str = "parameters_distinct";
pub const CHECK_PARAMS_NOT_ROOTS: &str = "parameters_not_roots_of_f";

const CONNECTEDNESS_NOTE: &str =
    "connectedness of the real locus of each surface (needed for rationality) is not verified";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("f is not admissible for the family:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("no parameter pair gives a valid model")]
    EmptyDemo,
}

/// `−4f`, the branch of the common fixed curve.
fn branch_of(f: &RatPoly) -> RatPoly {
    f.scale(&rat_int(-4))
}

pub fn validate_corollary_input(f: &RatPoly) -> ValidationReport {
    let mut report = ValidationReport::new();
    let Some(deg) = f.degree() else {
        report.push(CHECK_FAMILY_SQUAREFREE, false, "f = 0");
        return report;
    };
    report.push(CHECK_FAMILY_EVEN, deg % 2 == 0, format!("deg f = {deg}"));
    report.push(CHECK_FAMILY_DEGREE, deg >= 6, format!("deg f = {deg}"));
    let sf = f.is_squarefree().expect("nonzero");
    report.push(
        CHECK_FAMILY_SQUAREFREE,
        sf,
        if sf {
            "only simple roots"
        } else {
            "f has a multiple root"
        },
    );
    if !sf {
        return report;
    }
    let real = count_distinct_real_roots(f).expect("nonzero");
    report.push(CHECK_FAMILY_REAL_ROOTS, real >= 4, format!("{real} real roots"));
    let comps = real_components(&branch_of(f)).expect("squarefree");
    report.push(
        CHECK_FAMILY_COMPONENTS,
        comps >= 2,
        format!("w^2 = -4f has {comps} real component(s)"),
    );
    report
}

/// Checks for a single parameter pair; warnings flag parameters where `f < 0`.
pub fn check_sab(f: &RatPoly, a: &Rat, b: &Rat) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.push(
        CHECK_PARAMS_DISTINCT,
        a != b,
        if a == b {
            format!("a = b = {a}")
        } else {
            format!("a = {a}, b = {b}")
        },
    );
    let roots: Vec<&Rat> = [a, b].into_iter().filter(|x| f.sign_at(x) == Sign::Zero).collect();
    report.push(
        CHECK_PARAMS_NOT_ROOTS,
        roots.is_empty(),
        if roots.is_empty() {
            "f(a) and f(b) are nonzero".to_string()
        } else {
            format!(
                "f vanishes at {}",
                roots.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )
        },
    );
    for x in [a, b] {
        if f.sign_at(x) == Sign::Negative {
            report
                .warnings
                .push(format!("f({x}) < 0: parameter lies where f is negative"));
        }
    }
    report
}

/// `(A, B, C, H) = (1, 0, f, −(t−a)(t−b))`.
pub fn make_sab(f: &RatPoly, a: &Rat, b: &Rat) -> Result<ConicBundleModel, ValidationReport> {
    let mut report = check_sab(f, a, b);
    let h = -RatPoly::from_roots(&[a.clone(), b.clone()]);
    match mk_conic_bundle(RatPoly::one(), RatPoly::zero(), f.clone(), h) {
        Ok(m) if report.valid() => Ok(m),
        Ok(_) => Err(report),
        Err(r) => {
            report.merge(r);
            Err(report)
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairEntry {
    pub a: Rat,
    pub b: Rat,
    pub report: ValidationReport,
    pub model: Option<ConicBundleModel>,
    pub label: Option<ClassLabel>,
    /// The model's fixed-curve branch is a positive multiple of `−4f`.
    pub curve_proportional: bool,
}

impl PairEntry {
    pub fn valid(&self) -> bool {
        self.model.is_some()
    }
}

/// Comparison of the pairs at indices `i < j`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub i: usize,
    pub j: usize,
    pub decision: Decision,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pairs: usize,
    pub valid: usize,
    pub comparisons: usize,
    pub equivalent: usize,
    pub not_equivalent: usize,
    pub undecided: usize,
    pub sign_condition: usize,
    pub curves_proportional: usize,
}

#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub f: RatPoly,
    pub fixed_curve: FixedCurve,
    pub pairs: Vec<PairEntry>,
    pub comparisons: Vec<Comparison>,
    pub summary: Summary,
    pub notes: Vec<String>,
}

impl CorollaryReport {
    /// Verdict matrix over all pairs; `None` on the diagonal and for invalid pairs.
    pub fn matrix(&self) -> Vec<Vec<Option<Verdict>>> {
        let n = self.pairs.len();
        let mut m = vec![vec![None; n]; n];
        for c in &self.comparisons {
            m[c.i][c.j] = Some(c.decision.verdict);
            m[c.j][c.i] = Some(c.decision.verdict);
        }
        m
    }

    /// Every comparison came out not equivalent.
    pub fn all_distinct(&self) -> bool {
        self.comparisons
            .iter()
            .all(|c| c.decision.verdict == Verdict::NotEquivalent)
    }
}

impl fmt::Display for CorollaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {}", self.f)?;
        writeln!(f, "fixed curve: {}", self.fixed_curve)?;
        for (k, p) in self.pairs.iter().enumerate() {
            if p.valid() {
                let label = p.label.as_ref().map_or("unclassified".to_string(), ToString::to_string);
                writeln!(f, "  #{k} (a, b) = ({}, {}): valid, {label}", p.a, p.b)?;
            } else {
                let why: Vec<String> = p.report.failures().map(|c| c.name.clone()).collect();
                writeln!(f, "  #{k} (a, b) = ({}, {}): invalid ({})", p.a, p.b, why.join(", "))?;
            }
            for w in &p.report.warnings {
                writeln!(f, "      warning: {w}")?;
            }
        }
        for c in &self.comparisons {
            write!(f, "  #{} vs #{}: {}", c.i, c.j, c.decision.verdict)?;
            if let Some(fc) = c.decision.failed_condition {
                write!(f, " ({fc})")?;
            }
            writeln!(f)?;
        }
        let s = &self.summary;
        writeln!(
            f,
            "summary: {} valid of {} pairs, {} comparisons: {} not equivalent ({} by sign condition), {} equivalent, {} undecided; {} fixed curves proportional to -4f",
            s.valid, s.pairs, s.comparisons, s.not_equivalent, s.sign_condition, s.equivalent, s.undecided, s.curves_proportional
        )?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

pub fn corollary_demo(f: &RatPoly, pairs: &[(Rat, Rat)]) -> Result<CorollaryReport, FamilyError> {
    let input = validate_corollary_input(f);
    if !input.valid() {
        return Err(FamilyError::InvalidInput(input));
    }
    let branch = branch_of(f);
    let fixed_curve = FixedCurve::from_branch(&branch).expect("validated squarefree");

    let entries: Vec<PairEntry> = pairs
        .par_iter()
        .map(|(a, b)| {
            let report = check_sab(f, a, b);
            match make_sab(f, a, b) {
                Ok(m) => {
                    let curve_proportional = positive_proportionality(&fixed_curve_cb(&m).branch, &branch).is_some();
                    PairEntry {
                        a: a.clone(),
                        b: b.clone(),
                        report,
                        label: classify(&m).ok(),
                        model: Some(m),
                        curve_proportional,
                    }
                }
                Err(report) => PairEntry {
                    a: a.clone(),
                    b: b.clone(),
                    report,
                    model: None,
                    label: None,
                    curve_proportional: false,
                },
            }
        })
        .collect();

    let valid: Vec<usize> = (0..entries.len()).filter(|&k| entries[k].valid()).collect();
    if valid.is_empty() {
        return Err(FamilyError::EmptyDemo);
    }
    let index_pairs: Vec<(usize, usize)> = valid
        .iter()
        .enumerate()
        .flat_map(|(x, &i)| valid[x + 1..].iter().map(move |&j| (i, j)))
        .collect();

    let mut notes = vec![CONNECTEDNESS_NOTE.to_string()];
    let comparisons: Vec<Comparison> = index_pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let m1 = entries[i].model.as_ref().unwrap();
            let m2 = entries[j].model.as_ref().unwrap();
            decide_equivalent(m1, m2)
                .ok()
                .map(|decision| Comparison { i, j, decision })
        })
        .collect();
    if comparisons.len() < index_pairs.len() {
        notes.push(format!(
            "{} comparison(s) skipped: a model is not in Iskovskikh normal form",
            index_pairs.len() - comparisons.len()
        ));
    }

    let count = |v: Verdict| comparisons.iter().filter(|c| c.decision.verdict == v).count();
    let summary = Summary {
        pairs: entries.len(),
        valid: valid.len(),
        comparisons: comparisons.len(),
        equivalent: count(Verdict::Equivalent),
        not_equivalent: count(Verdict::NotEquivalent),
        undecided: count(Verdict::Undecided),
        sign_condition: comparisons
            .iter()
            .filter(|c| c.decision.failed_condition == Some(FailedCondition::SignCondition))
            .count(),
        curves_proportional: entries.iter().filter(|e| e.curve_proportional).count(),
    };
    Ok(CorollaryReport {
        f: f.clone(),
        fixed_curve,
        pairs: entries,
        comparisons,
        summary,
        notes,
    })
}

/// `n` distinct rational pairs `a < b` inside `(lo, hi)`, with pairwise distinct sets `{a, b}`.
pub fn grid_pairs(lo: &Rat, hi: &Rat, n: usize) -> Vec<(Rat, Rat)> {
    let mut k = 2usize;
    while k * (k - 1) / 2 < n {
        k += 1;
    }
    let step = (hi - lo) / rat_int(k as i64 + 1);
    let pts: Vec<Rat> = (1..=k).map(|i| lo + &step * rat_int(i as i64)).collect();
    let mut out = Vec::with_capacity(n);
    'outer: for i in 0..k {
        for j in i + 1..k {
            if out.len() == n {
                break 'outer;
            }
            out.push((pts[i].clone(), pts[j].clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::CHECK_DELTA_SQUAREFREE;
    use crate::poly::rat;

    fn f6() -> RatPoly {
        "(t^2-1)*(t^2-4)*(t^2-9)".parse().unwrap()
    }

    #[test]
    fn input_validation() {
        let r = validate_corollary_input(&f6());
        assert!(r.valid(), "{r}");
        assert!(r.check(CHECK_FAMILY_COMPONENTS).unwrap().detail.contains('3'));

        let r = validate_corollary_input(&"t^6+1".parse().unwrap());
        assert!(!r.check(CHECK_FAMILY_REAL_ROOTS).unwrap().passed);
        let r = validate_corollary_input(&"(t^2-1)*(t^2-4)".parse().unwrap());
        assert!(!r.check(CHECK_FAMILY_DEGREE).unwrap().passed);
    }

    #[test]
    fn sab_examples() {
        let m = make_sab(&f6(), &rat(7, 2), &rat(15, 4)).unwrap();
        assert_eq!(m.h(), &-RatPoly::from_roots(&[rat(7, 2), rat(15, 4)]));
        let e = make_sab(&f6(), &rat_int(1), &rat_int(2)).unwrap_err();
        assert!(!e.check(CHECK_PARAMS_NOT_ROOTS).unwrap().passed);
        assert!(!e.check(CHECK_DELTA_SQUAREFREE).unwrap().passed);
        let e = make_sab(&f6(), &rat_int(5), &rat_int(5)).unwrap_err();
        assert!(!e.check(CHECK_PARAMS_DISTINCT).unwrap().passed);
        assert!(!check_sab(&f6(), &rat(5, 2), &rat(7, 2)).warnings.is_empty());
    }

    #[test]
    fn demo_on_grid() {
        let pairs = grid_pairs(&rat_int(3), &rat_int(4), 10);
        assert_eq!(pairs.len(), 10);
        let r = corollary_demo(&f6(), &pairs).unwrap();
        assert_eq!(r.summary.valid, 10);
        assert_eq!(r.summary.comparisons, 45);
        assert_eq!(r.summary.sign_condition, 45);
        assert_eq!(r.summary.curves_proportional, 10);
        assert!(r.all_distinct());
        assert_eq!(r.fixed_curve.genus, 2);
        assert!(r.notes.iter().any(|n| n.contains("connectedness")));
        for p in &r.pairs {
            assert_eq!(p.label, Some(ClassLabel::Iskovskikh { d: 2, genus: Some(2) }));
        }
    }

    #[test]
    fn demo_edge_cases() {
        let r = corollary_demo(&f6(), &[(rat(7, 2), rat(15, 4))]).unwrap();
        assert_eq!(r.summary.comparisons, 0);
        let r = corollary_demo(
            &f6(),
            &[
                (rat(7, 2), rat(15, 4)),
                (rat_int(1), rat(15, 4)),
                (rat(13, 4), rat(7, 2)),
            ],
        )
        .unwrap();
        assert!(!r.pairs[1].valid());
        assert_eq!(r.summary.comparisons, 1);
        assert_eq!(r.matrix()[0][2], Some(Verdict::NotEquivalent));
        assert_eq!(r.matrix()[0][1], None);
        assert!(matches!(
            corollary_demo(&f6(), &[(rat_int(1), rat_int(2))]),
            Err(FamilyError::EmptyDemo)
        ));
        assert!(matches!(
            corollary_demo(&"t^6+1".parse().unwrap(), &[]),
            Err(FamilyError::InvalidInput(_))
        ));
    }
}
