//! Dense univariate polynomials in `t` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;
use crate::sign::Sign;

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Shorthand for building a [`Rat`] from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Univariate polynomial, coefficients stored constant term first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial is
/// the empty coefficient vector and `degree()` is the index of the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// `∏ (t − r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| acc * RatPoly::new(vec![-r.clone(), Rat::one()]))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rat) -> Sign {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            // sign of q^n · p(a/q) = Σ c_k a^k q^(n−k), all in integers
            let (a, q) = (x.numer(), x.denom());
            let mut acc = BigInt::zero();
            let mut qpow = BigInt::one();
            for c in self.coeffs.iter().rev() {
                acc = acc * a + c.numer() * &qpow;
                qpow *= q;
            }
            return Sign::of(&acc);
        }
        Sign::of(&self.eval(x))
    }

    /// Sign of `p(t)` for all sufficiently large positive `t`.
    pub fn sign_at_pos_infinity(&self) -> Sign {
        self.leading_coeff().map_or(Sign::Zero, Sign::of)
    }

    /// Sign of `p(t)` for all sufficiently large negative `t`.
    pub fn sign_at_neg_infinity(&self) -> Sign {
        match self.degree() {
            None => Sign::Zero,
            Some(d) if d % 2 == 0 => self.sign_at_pos_infinity(),
            Some(_) => -self.sign_at_pos_infinity(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep remainders primitive so coefficient growth stays in check
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).is_constant())
    }

    /// `p / gcd(p, p')`, normalized to positive content with the sign of `p` kept.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides its argument").primitive()
    }

    /// Positive rational content: `p = content · primitive`, where the
    /// primitive part has coprime integer coefficients.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let num_gcd = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den_lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Rat::new(num_gcd, den_lcm)
    }

    /// Integer coefficients with gcd 1, same sign as `self`.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// `Σ c_k (αs+β)^k (γs+δ)^(e−k)`: the degree-`e` form of `self`
    /// pulled back along `t = (αs+β)/(γs+δ)` and dehomogenized again.
    pub fn mobius_pullback(&self, e: usize, m: &[Rat; 4]) -> Result<Self, PolyError> {
        if let Some(d) = self.degree() {
            if d > e {
                return Err(PolyError::DegreeTooHigh { degree: d, bound: e });
            }
        }
        let num = RatPoly::new(vec![m[1].clone(), m[0].clone()]);
        let den = RatPoly::new(vec![m[3].clone(), m[2].clone()]);
        let mut acc = Self::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = num.pow(k as u32) * den.pow((e - k) as u32);
            acc = acc + term.scale(c);
        }
        Ok(acc)
    }
}

/// `B² − 4AC`.
pub fn binary_discriminant(a: &RatPoly, b: &RatPoly, c: &RatPoly) -> RatPoly {
    b * b - (a * c).scale(&rat_int(4))
}

/// Result of [`positive_proportionality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proportionality {
    /// Positive factor with `p = lambda · q`.
    pub lambda: Rat,
    /// Set when both inputs were zero and `lambda = 1` was chosen by convention.
    pub degenerate: bool,
}

/// Returns `λ > 0` with `p = λ·q`, if one exists.
pub fn positive_proportionality(p: &RatPoly, q: &RatPoly) -> Option<Proportionality> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => {
            return Some(Proportionality {
                lambda: Rat::one(),
                degenerate: true,
            })
        }
        (false, false) => {}
        _ => return None,
    }
    if p.degree() != q.degree() {
        return None;
    }
    let lambda = p.leading_coeff()? / q.leading_coeff()?;
    if !lambda.is_positive() {
        return None;
    }
    (*p == q.scale(&lambda)).then_some(Proportionality {
        lambda,
        degenerate: false,
    })
}

/// Binary form `Σ c_k z^(d−k) t^k`; setting `z = 1` recovers the source polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `z^(d−k) t^k`.
    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn eval(&self, z: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * num_traits::pow(t.clone(), k) * num_traits::pow(z.clone(), self.degree - k);
        }
        acc
    }

    /// Sign of the form at `[z:t] = [0:1]`, the coefficient of `t^d`.
    pub fn sign_at_infinity(&self) -> Sign {
        Sign::of(&self.coeffs[self.degree])
    }

    pub fn dehomogenize(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for k in (0..=self.degree).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mut vars = Vec::new();
            match k {
                0 => {}
                1 => vars.push("t".to_string()),
                _ => vars.push(format!("t^{k}")),
            }
            match self.degree - k {
                0 => {}
                1 => vars.push("z".to_string()),
                j => vars.push(format!("z^{j}")),
            }
            terms.push((c.clone(), vars.join("*")));
        }
        write_terms(f, &terms)
    }
}

/// Homogenizes `p` to a binary form of degree `d`.
pub fn homogenize(p: &RatPoly, d: usize) -> Result<BinaryForm, PolyError> {
    if let Some(deg) = p.degree() {
        if deg > d {
            return Err(PolyError::DegreeTooHigh { degree: deg, bound: d });
        }
    }
    let coeffs = (0..=d).map(|k| p.coeff(k)).collect();
    Ok(BinaryForm { degree: d, coeffs })
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Rat, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, vars)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if vars.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{vars}")?;
        } else {
            write!(f, "{a}*{vars}")?;
        }
    }
    Ok(())
}

/// Prints in the input grammar accepted by `str::parse::<RatPoly>`, highest degree first.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rat, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let vars = match k {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{k}"),
                };
                (c.clone(), vars)
            })
            .collect();
        write_terms(f, &terms)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl From<Rat> for RatPoly {
    fn from(c: Rat) -> Self {
        RatPoly::constant(c)
    }
}

impl From<i64> for RatPoly {
    fn from(c: i64) -> Self {
        RatPoly::constant(rat_int(c))
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RatPoly> for &'a RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
