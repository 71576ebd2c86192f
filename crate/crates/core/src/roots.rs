//! Sturm sequences, real root isolation and real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::PolyError;
use crate::poly::{rat, Rat, RatPoly};
use crate::sign::Sign;

/// Sturm chain of a squarefree polynomial.
///
/// Members are rescaled by positive constants only, so sign variations are
/// those of the classical chain.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        let mut a = p.primitive();
        let mut b = p.derivative().primitive();
        chain.push(a.clone());
        while !b.is_zero() {
            chain.push(b.clone());
            let (_, r) = a.div_rem(&b);
            a = b;
            b = (-r).primitive();
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = Sign>>(signs: I) -> usize {
        let mut last = Sign::Zero;
        let mut count = 0;
        for s in signs.filter(|s| *s != Sign::Zero) {
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|q| q.sign_at(x)))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(RatPoly::sign_at_pos_infinity))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(RatPoly::sign_at_neg_infinity))
    }

    /// Distinct real roots in `(lo, hi)`; neither endpoint may be a root.
    pub fn count_between(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_infinity() - self.variations_at_pos_infinity()
    }

    pub fn poly(&self) -> &RatPoly {
        &self.chain[0]
    }
}

/// Exact number of real roots of `p` in the open interval `(lo, hi)`.
pub fn count_real_roots_in(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<usize, PolyError> {
    if !p.is_squarefree()? {
        return Err(PolyError::NotSquarefree);
    }
    if lo >= hi {
        return Err(PolyError::EmptyInterval);
    }
    for x in [lo, hi] {
        if p.eval(x).is_zero() {
            return Err(PolyError::RootAtEndpoint(x.to_string()));
        }
    }
    Ok(SturmChain::new(p).count_between(lo, hi))
}

/// Number of distinct real roots of a nonzero polynomial (multiplicities ignored).
pub fn count_distinct_real_roots(p: &RatPoly) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(SturmChain::new(&p.squarefree_part()).count_all())
}

/// Strict upper bound on the absolute value of every complex root, a power of two.
fn root_bound(p: &RatPoly) -> Rat {
    let lc = p.leading_coeff().expect("nonzero").abs();
    let n = p.degree().unwrap();
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rat::zero);
    let cauchy = max + Rat::one();
    let mut b = Rat::one();
    while b <= cauchy {
        b *= Rat::from_integer(BigInt::from(2));
    }
    b
}

/// All real roots of a squarefree polynomial, in increasing order.
pub fn isolate_real_roots(p: &RatPoly) -> Result<Vec<AlgReal>, PolyError> {
    if !p.is_squarefree()? {
        return Err(PolyError::NotSquarefree);
    }
    let q = p.primitive();
    if q.is_constant() {
        return Ok(Vec::new());
    }
    let sturm = SturmChain::new(&q);
    let total = sturm.count_all();
    let b = root_bound(&q);
    let mut out = Vec::with_capacity(total);
    isolate_in(&q, &sturm, -b.clone(), b, total, &mut out);
    Ok(out)
}

fn isolate_in(p: &RatPoly, sturm: &SturmChain, lo: Rat, hi: Rat, count: usize, out: &mut Vec<AlgReal>) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(AlgReal::from_isolating(p.clone(), lo, hi).exactify());
        return;
    }
    let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
    if p.sign_at(&mid) == Sign::Zero {
        // carve out a small window around the rational root
        let mut eps = (&hi - &lo) / Rat::from_integer(BigInt::from(4));
        loop {
            let a = &mid - &eps;
            let b = &mid + &eps;
            if p.sign_at(&a) != Sign::Zero && p.sign_at(&b) != Sign::Zero && sturm.count_between(&a, &b) == 1 {
                let left = sturm.count_between(&lo, &a);
                let right = sturm.count_between(&b, &hi);
                isolate_in(p, sturm, lo, a, left, out);
                out.push(AlgReal::from_rat(mid));
                isolate_in(p, sturm, b, hi, right, out);
                return;
            }
            eps /= Rat::from_integer(BigInt::from(2));
        }
    }
    let left = sturm.count_between(&lo, &mid);
    isolate_in(p, sturm, lo, mid.clone(), left, out);
    isolate_in(p, sturm, mid, hi, count - left, out);
}

/// The rational with the smallest denominator in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "simplest_between needs lo < hi");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if !hi.is_positive() {
        return -simplest_nonneg(&-hi, Some(&-lo));
    }
    simplest_nonneg(lo, Some(hi))
}

fn simplest_nonneg(lo: &Rat, hi: Option<&Rat>) -> Rat {
    let fl = lo.floor();
    let next = &fl + Rat::one();
    if hi.is_none_or(|h| &next < h) {
        return next;
    }
    if fl == *lo {
        // lo is an integer and (lo, hi) holds no integer
        let hi_frac = hi.unwrap() - &fl;
        return fl + simplest_nonneg(&hi_frac.recip(), None).recip();
    }
    let lo_frac = lo - &fl;
    let hi_frac = hi.unwrap() - &fl;
    fl + simplest_nonneg(&hi_frac.recip(), Some(&lo_frac.recip())).recip()
}

#[derive(Clone, Debug)]
enum Repr {
    Exact(Rat),
    /// Squarefree primitive defining polynomial with exactly one root in `(lo, hi)`;
    /// it does not vanish at either endpoint.
    Interval {
        poly: RatPoly,
        lo: Rat,
        hi: Rat,
    },
}

/// Real algebraic number: either an exact rational or a root of a squarefree
/// polynomial pinned down by an open isolating interval.
#[derive(Clone, Debug)]
pub struct AlgReal {
    repr: Repr,
}

impl AlgReal {
    pub fn from_rat(x: Rat) -> Self {
        AlgReal { repr: Repr::Exact(x) }
    }

    fn from_isolating(poly: RatPoly, lo: Rat, hi: Rat) -> Self {
        AlgReal {
            repr: Repr::Interval { poly, lo, hi },
        }
    }

    /// Checked constructor: `poly` squarefree with exactly one root in `(lo, hi)`.
    pub fn new(poly: &RatPoly, lo: Rat, hi: Rat) -> Result<Self, PolyError> {
        if count_real_roots_in(poly, &lo, &hi)? != 1 {
            return Err(PolyError::NotIsolating);
        }
        Ok(Self::from_isolating(poly.primitive(), lo, hi).exactify())
    }

    /// The positive square root of a positive rational `n`.
    pub fn sqrt(n: &Rat) -> Self {
        let poly = RatPoly::new(vec![-n.clone(), Rat::zero(), Rat::one()]);
        let hi = n + Rat::one();
        Self::new(&poly.squarefree_part(), Rat::zero(), hi).expect("sqrt isolates")
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match &self.repr {
            Repr::Exact(x) => Some(x),
            Repr::Interval { .. } => None,
        }
    }

    /// `(defining polynomial, lo, hi)` for irrational values.
    pub fn isolating(&self) -> Option<(&RatPoly, &Rat, &Rat)> {
        match &self.repr {
            Repr::Exact(_) => None,
            Repr::Interval { poly, lo, hi } => Some((poly, lo, hi)),
        }
    }

    /// Lower bound; equals the value for rationals, strictly below it otherwise.
    pub fn lower(&self) -> &Rat {
        match &self.repr {
            Repr::Exact(x) => x,
            Repr::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rat {
        match &self.repr {
            Repr::Exact(x) => x,
            Repr::Interval { hi, .. } => hi,
        }
    }

    /// Halves the isolating interval. Returns a new value; rationals are returned unchanged.
    pub fn refine(&self) -> Self {
        match &self.repr {
            Repr::Exact(_) => self.clone(),
            Repr::Interval { poly, lo, hi } => {
                let mid = (lo + hi) / Rat::from_integer(BigInt::from(2));
                let sm = poly.sign_at(&mid);
                if sm == Sign::Zero {
                    return Self::from_rat(mid);
                }
                if sm == poly.sign_at(lo) {
                    Self::from_isolating(poly.clone(), mid, hi.clone())
                } else {
                    Self::from_isolating(poly.clone(), lo.clone(), mid)
                }
            }
        }
    }

    /// Refines until the interval width is below `width`.
    pub fn refine_to(&self, width: &Rat) -> Self {
        let mut x = self.clone();
        while let Repr::Interval { lo, hi, .. } = &x.repr {
            if &(hi - lo) < width {
                break;
            }
            x = x.refine();
        }
        x
    }

    /// Detects a rational root hidden in an isolating interval and returns it exactly.
    ///
    /// A rational root `a/q` of an integer polynomial has `q | lc`, and two
    /// distinct fractions with denominators at most `L` differ by at least
    /// `1/L²`, so once the interval is that narrow the simplest fraction in it
    /// is the only candidate.
    fn exactify(self) -> Self {
        let Repr::Interval { poly, .. } = &self.repr else {
            return self;
        };
        let lc = poly.leading_coeff().unwrap().numer().abs();
        let lc_sq = Rat::from_integer(&lc * &lc);
        let narrowed = self.refine_to(&lc_sq.recip());
        let Repr::Interval { poly, lo, hi } = &narrowed.repr else {
            return narrowed;
        };
        let cand = simplest_between(lo, hi);
        if cand.denom() <= &lc && poly.sign_at(&cand) == Sign::Zero {
            return Self::from_rat(cand);
        }
        // keep the coarser interval; narrowing was only needed for the test
        self
    }

    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            Repr::Interval { .. } => {
                let x = self.refine_to(&rat(1, 1 << 52).abs());
                let mid = (x.lower() + x.upper()) / Rat::from_integer(BigInt::from(2));
                mid.to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        match &self.repr {
            Repr::Exact(x) => x.cmp(r),
            Repr::Interval { poly, lo, hi } => {
                if r <= lo {
                    Ordering::Greater
                } else if r >= hi {
                    Ordering::Less
                } else {
                    let sr = poly.sign_at(r);
                    if sr == Sign::Zero {
                        Ordering::Equal
                    } else if sr == poly.sign_at(lo) {
                        // root lies in (r, hi)
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
            }
        }
    }

    /// Exact sign of `p` at this number.
    pub fn sign_of(&self, p: &RatPoly) -> Sign {
        sign_at(p, self)
    }
}

/// Exact sign of `p(x)`.
pub fn sign_at(p: &RatPoly, x: &AlgReal) -> Sign {
    if p.is_constant() {
        return p.leading_coeff().map_or(Sign::Zero, Sign::of);
    }
    let (poly, lo, hi) = match &x.repr {
        Repr::Exact(r) => return p.sign_at(r),
        Repr::Interval { poly, lo, hi } => (poly, lo, hi),
    };
    let g = poly.gcd(p);
    if !g.is_constant() && SturmChain::new(&g).count_between(lo, hi) == 1 {
        return Sign::Zero;
    }
    // x is not a root of p: shrink until p has no root in the closed interval
    let ps = p.squarefree_part();
    let sturm = SturmChain::new(&ps);
    let mut cur = x.clone();
    loop {
        let (lo, hi) = match &cur.repr {
            Repr::Exact(r) => return p.sign_at(r),
            Repr::Interval { lo, hi, .. } => (lo, hi),
        };
        let slo = ps.sign_at(lo);
        let shi = ps.sign_at(hi);
        if slo != Sign::Zero && shi != Sign::Zero && sturm.count_between(lo, hi) == 0 {
            return p.sign_at(lo);
        }
        cur = cur.refine();
    }
}

/// Exact comparison of two real algebraic numbers.
pub fn compare(x: &AlgReal, y: &AlgReal) -> Ordering {
    match (&x.repr, &y.repr) {
        (Repr::Exact(a), _) => y.cmp_rat(a).reverse(),
        (_, Repr::Exact(b)) => x.cmp_rat(b),
        (
            Repr::Interval {
                poly: p,
                lo: l1,
                hi: h1,
            },
            Repr::Interval {
                poly: q,
                lo: l2,
                hi: h2,
            },
        ) => {
            if h1 <= l2 {
                return Ordering::Less;
            }
            if h2 <= l1 {
                return Ordering::Greater;
            }
            let g = p.gcd(q);
            if !g.is_constant() {
                let lo = l1.max(l2);
                let hi = h1.min(h2);
                // endpoints of the overlap are endpoints of one of the two
                // isolating intervals, so g does not vanish there
                if SturmChain::new(&g).count_between(lo, hi) == 1 {
                    return Ordering::Equal;
                }
            }
            let (mut a, mut b) = (x.clone(), y.clone());
            loop {
                a = a.refine();
                b = b.refine();
                if a.as_rational().is_some() || b.as_rational().is_some() {
                    return compare(&a, &b);
                }
                if a.upper() <= b.lower() {
                    return Ordering::Less;
                }
                if b.upper() <= a.lower() {
                    return Ordering::Greater;
                }
            }
        }
    }
}

impl PartialEq for AlgReal {
    fn eq(&self, other: &Self) -> bool {
        compare(self, other) == Ordering::Equal
    }
}

impl Eq for AlgReal {}

impl PartialOrd for AlgReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgReal {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl From<Rat> for AlgReal {
    fn from(x: Rat) -> Self {
        AlgReal::from_rat(x)
    }
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact(x) => write!(f, "{x}"),
            Repr::Interval { poly, lo, hi } => {
                write!(f, "root of {poly} in ({lo}, {hi}) ≈ {:.6}", self.to_f64())
            }
        }
    }
}

/// A rational strictly between consecutive roots, for each of the `n + 1` gaps
/// cut out of the real line by `roots` (sorted, distinct).
pub fn gap_samples(roots: &[AlgReal]) -> Vec<Rat> {
    let two = Rat::from_integer(BigInt::from(2));
    if roots.is_empty() {
        return vec![Rat::zero()];
    }
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push(roots[0].lower().floor() - Rat::one());
    for w in roots.windows(2) {
        let a = w[0].upper();
        let b = w[1].lower();
        if a < b {
            out.push((a + b) / &two);
        } else {
            // shared endpoint of two isolating intervals, never a root
            out.push(a.clone());
        }
    }
    out.push(roots[roots.len() - 1].upper().ceil() + Rat::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn p(s: &str) -> RatPoly {
        s.parse().unwrap()
    }

    #[test]
    fn isolate_examples() {
        assert!(isolate_real_roots(&p("t^2 + 1")).unwrap().is_empty());

        let r = isolate_real_roots(&p("t^2 - 2")).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].cmp_rat(&rat_int(-2)).is_gt() && r[0].cmp_rat(&rat_int(-1)).is_lt());
        assert!(r[1].cmp_rat(&rat_int(1)).is_gt() && r[1].cmp_rat(&rat_int(2)).is_lt());
        let narrow = r[1].refine_to(&rat(1, 2));
        assert!(narrow.lower() >= &rat_int(1) && narrow.upper() <= &rat_int(2));

        let r = isolate_real_roots(&p("t^3 - t")).unwrap();
        let exact: Vec<_> = r.iter().map(|x| x.as_rational().cloned().unwrap()).collect();
        assert_eq!(exact, vec![rat_int(-1), rat_int(0), rat_int(1)]);

        assert_eq!(isolate_real_roots(&p("t^2")), Err(PolyError::NotSquarefree));
        assert_eq!(isolate_real_roots(&RatPoly::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn rational_roots_are_detected() {
        let r = isolate_real_roots(&p("(6*t - 1)*(5*t + 7)*(t^2 - 3)")).unwrap();
        let got: Vec<_> = r.iter().map(|x| x.as_rational().cloned()).collect();
        assert_eq!(got, vec![None, Some(rat(-7, 5)), Some(rat(1, 6)), None]);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_real_roots_in(&p("t^3 - t"), &rat_int(-2), &rat_int(2)), Ok(3));
        assert_eq!(count_real_roots_in(&p("t^2 + 1"), &rat_int(-10), &rat_int(10)), Ok(0));
        assert_eq!(count_real_roots_in(&p("t^2 - 2"), &rat_int(0), &rat_int(2)), Ok(1));
        assert!(matches!(
            count_real_roots_in(&p("t^2 - 1"), &rat_int(1), &rat_int(2)),
            Err(PolyError::RootAtEndpoint(_))
        ));
        assert_eq!(
            count_real_roots_in(&p("t^2 - 1"), &rat_int(2), &rat_int(0)),
            Err(PolyError::EmptyInterval)
        );
    }

    #[test]
    fn sign_examples() {
        let sqrt2 = AlgReal::sqrt(&rat_int(2));
        assert_eq!(sign_at(&p("t - 1"), &sqrt2), Sign::Positive);
        assert_eq!(sign_at(&p("t^2 - 2"), &sqrt2), Sign::Zero);
        assert_eq!(sign_at(&p("t^4 - 4"), &sqrt2), Sign::Zero);
        assert_eq!(sign_at(&p("-1"), &sqrt2), Sign::Negative);
        assert_eq!(sign_at(&p("t - 3/2"), &sqrt2), Sign::Negative);
        assert_eq!(sign_at(&p("(t - 7/5)^2"), &sqrt2), Sign::Positive);
    }

    #[test]
    fn compare_examples() {
        let sqrt2 = AlgReal::sqrt(&rat_int(2));
        assert_eq!(compare(&sqrt2, &AlgReal::from_rat(rat(3, 2))), Ordering::Less);
        let other = AlgReal::new(&p("2*t^2 - 4"), rat_int(1), rat_int(2)).unwrap();
        assert_eq!(compare(&sqrt2, &other), Ordering::Equal);
        let neg = isolate_real_roots(&p("t^2 - 2")).unwrap().remove(0);
        assert_eq!(compare(&neg, &sqrt2), Ordering::Less);
        let cbrt = AlgReal::new(&p("t^3 - 2"), rat_int(1), rat_int(2)).unwrap();
        assert_eq!(compare(&sqrt2, &cbrt), Ordering::Greater);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 3)), rat_int(0));
        assert_eq!(simplest_between(&rat(-5, 2), &rat(-9, 4)), rat(-7, 3));
        assert_eq!(simplest_between(&rat_int(3), &rat(31, 10)), rat(34, 11));
        assert_eq!(simplest_between(&rat(7, 5), &rat(3, 2)), rat(10, 7));
    }

    #[test]
    fn refinement_keeps_root() {
        let x = AlgReal::sqrt(&rat_int(3));
        let y = x.refine_to(&rat(1, 1000));
        assert_eq!(compare(&x, &y), Ordering::Equal);
        assert!((y.to_f64() - 3f64.sqrt()).abs() < 1e-3);
    }
}
