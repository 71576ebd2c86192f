//! Rational self-maps of the projective plane given by homogeneous
//! components, restricted to invertible linear maps and maps whose components
//! are single quadratic monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::MapError;
use crate::poly::{rat_int, Rat};

const VARS: [char; 3] = ['x', 'y', 'z'];

/// Point `[x:y:z]` of the projective plane. Equality is up to a nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: [Rat; 3],
}

impl ProjPoint {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Result<Self, MapError> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(MapError::ZeroPoint);
        }
        Ok(ProjPoint { coords: [x, y, z] })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self, MapError> {
        Self::new(rat_int(x), rat_int(y), rat_int(z))
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn canonical(&self) -> [Rat; 3] {
        let lead = self.coords.iter().find(|c| !c.is_zero()).unwrap().clone();
        self.coords.clone().map(|c| c / &lead)
    }

    /// Coprime integer coordinates with the first nonzero coordinate positive.
    pub fn integral(&self) -> [BigInt; 3] {
        let c = self.canonical();
        let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints = c.map(|x| (x * Rat::from_integer(l.clone())).to_integer());
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        ints.map(|x| x / &g)
    }

    pub fn scaled(&self, s: &Rat) -> Result<Self, MapError> {
        let [x, y, z] = self.coords.clone();
        Self::new(x * s, y * s, z * s)
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.integral();
        write!(f, "[{a}:{b}:{c}]")
    }
}

impl std::str::FromStr for ProjPoint {
    type Err = String;

    /// Parses `"1,2,3"`, `"[1:2:3]"` or `"1/2, 0, -3"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split([',', ':']).map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three coordinates, got {}", parts.len()));
        }
        let mut coords = Vec::with_capacity(3);
        for part in parts {
            let r: Rat = part
                .parse()
                .map_err(|_| format!("invalid rational coordinate {part:?}"))?;
            coords.push(r);
        }
        let [x, y, z]: [Rat; 3] = coords.try_into().unwrap();
        ProjPoint::new(x, y, z).map_err(|e| e.to_string())
    }
}

/// Homogeneous polynomial in `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<[u32; 3], Rat>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn monomial(c: Rat, exps: [u32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Form { terms }
    }

    /// The coordinate variable `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.iter().sum())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rat)> {
        self.terms.iter()
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for i in 0..3 {
                    v *= num_traits::pow(p[i].clone(), e[i] as usize);
                }
                v
            })
            .fold(Rat::zero(), |a, b| a + b)
    }

    fn add(&self, other: &Form) -> Form {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Form { terms }
    }

    fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out = out.add(&Form::monomial(c1 * c2, e));
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Form {
        (0..n).fold(Form::monomial(Rat::one(), [0; 3]), |acc, _| acc.mul(self))
    }

    fn scale(&self, s: &Rat) -> Form {
        Form {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Substitutes `x, y, z := subs[0], subs[1], subs[2]`.
    fn substitute(&self, subs: &[Form; 3]) -> Form {
        let mut out = Form::zero();
        for (e, c) in &self.terms {
            let mut t = Form::monomial(c.clone(), [0; 3]);
            for i in 0..3 {
                t = t.mul(&subs[i].pow(e[i]));
            }
            out = out.add(&t);
        }
        out
    }

    fn divide_monomial(&self, e: [u32; 3]) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ([k[0] - e[0], k[1] - e[1], k[2] - e[2]], c.clone()))
                .collect(),
        }
    }
}

fn monomial_name(e: &[u32; 3]) -> String {
    let mut s = String::new();
    for i in 0..3 {
        match e[i] {
            0 => {}
            1 => s.push(VARS[i]),
            k => s.push_str(&format!("{}^{k}", VARS[i])),
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest powers of x first
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let name = monomial_name(e);
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_one() {
                write!(f, "{name}")?;
            } else if name == "1" {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}{name}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapShape {
    Linear,
    MonomialQuadratic,
}

/// Rational map `[x:y:z] ⇢ [f0:f1:f2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMap {
    comps: [Form; 3],
    shape: MapShape,
}

/// Outcome of evaluating a map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Point(ProjPoint),
    BasePoint,
}

impl Image {
    pub fn point(self) -> Option<ProjPoint> {
        match self {
            Image::Point(p) => Some(p),
            Image::BasePoint => None,
        }
    }
}

impl HomMap {
    /// Builds a map from already reduced components.
    ///
    /// Fails when the components share a factor, have mixed degrees, or fall
    /// outside the supported shapes.
    pub fn new(comps: [Form; 3]) -> Result<Self, MapError> {
        if comps.iter().all(Form::is_zero) {
            return Err(MapError::ZeroMap);
        }
        if !comps.iter().all(Form::is_homogeneous) {
            return Err(MapError::MixedDegrees);
        }
        let degs: Vec<u32> = comps.iter().filter_map(Form::degree).collect();
        if degs.iter().any(|d| *d != degs[0]) {
            return Err(MapError::MixedDegrees);
        }
        let common = common_monomial(&comps);
        if common != [0; 3] {
            return Err(MapError::CommonFactor(monomial_name(&common)));
        }
        let shape = match degs[0] {
            1 => {
                if linear_det(&comps).is_zero() {
                    return Err(MapError::UnsupportedShape);
                }
                MapShape::Linear
            }
            2 if comps.iter().all(|c| c.terms.len() == 1) => MapShape::MonomialQuadratic,
            _ => return Err(MapError::UnsupportedShape),
        };
        Ok(HomMap { comps, shape })
    }

    /// Cancels the common monomial factor and scalar content, then builds the map.
    pub fn reduced(comps: [Form; 3]) -> Result<Self, MapError> {
        let common = common_monomial(&comps);
        let comps = comps.map(|c| c.divide_monomial(common));
        let content = comps
            .iter()
            .flat_map(|c| c.terms.values())
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den = comps
            .iter()
            .flat_map(|c| c.terms.values())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let comps = if content.is_zero() {
            comps
        } else {
            let mut s = Rat::new(den, content);
            let lead = comps.iter().find_map(|c| c.terms.values().next_back());
            if lead.is_some_and(|c| c.is_negative()) {
                s = -s;
            }
            comps.map(|c| c.scale(&s))
        };
        Self::new(comps)
    }

    /// Linear map `v ↦ M v` for a row-major 3×3 matrix.
    pub fn linear(m: [[Rat; 3]; 3]) -> Result<Self, MapError> {
        let comps = m.map(|row| {
            (0..3).fold(Form::zero(), |acc, j| {
                let mut e = [0; 3];
                e[j] = 1;
                acc.add(&Form::monomial(row[j].clone(), e))
            })
        });
        Self::new(comps)
    }

    pub fn identity() -> Self {
        Self::new([Form::var(0), Form::var(1), Form::var(2)]).unwrap()
    }

    /// `[x:y:z] ⇢ [yz:xz:xy]`.
    pub fn standard_cremona() -> Self {
        let one = Rat::one();
        Self::new([
            Form::monomial(one.clone(), [0, 1, 1]),
            Form::monomial(one.clone(), [1, 0, 1]),
            Form::monomial(one, [1, 1, 0]),
        ])
        .unwrap()
    }

    /// `[x:y:z] ↦ [x:y:−z]`.
    pub fn linear_involution() -> Self {
        Self::new([Form::var(0), Form::var(1), Form::monomial(-Rat::one(), [0, 0, 1])]).unwrap()
    }

    /// The cyclic coordinate permutation `[x:y:z] ↦ [y:z:x]`.
    pub fn cyclic_permutation() -> Self {
        Self::new([Form::var(1), Form::var(2), Form::var(0)]).unwrap()
    }

    pub fn components(&self) -> &[Form; 3] {
        &self.comps
    }

    pub fn shape(&self) -> MapShape {
        self.shape
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().find_map(Form::degree).unwrap()
    }

    pub fn apply(&self, p: &ProjPoint) -> Image {
        let v = self.comps.clone().map(|c| c.eval(p.coords()));
        let [a, b, c] = v;
        match ProjPoint::new(a, b, c) {
            Ok(q) => Image::Point(q),
            Err(_) => Image::BasePoint,
        }
    }

    /// `self ∘ inner`, with common factors cancelled.
    pub fn compose(&self, inner: &HomMap) -> Result<HomMap, MapError> {
        let comps = self.comps.clone().map(|c| c.substitute(&inner.comps));
        Self::reduced(comps)
    }

    /// The finite set of points where all components vanish.
    pub fn base_points(&self) -> Vec<ProjPoint> {
        match self.shape {
            MapShape::Linear => Vec::new(),
            MapShape::MonomialQuadratic => {
                // without a common variable the base locus is a set of coordinate points
                (0..3)
                    .map(|i| {
                        let mut c = [Rat::zero(), Rat::zero(), Rat::zero()];
                        c[i] = Rat::one();
                        let [x, y, z] = c;
                        ProjPoint::new(x, y, z).unwrap()
                    })
                    .filter(|p| self.apply(p) == Image::BasePoint)
                    .collect()
            }
        }
    }

    /// Checks `m(m(p)) = p` on every sample.
    pub fn check_involution(&self, samples: &[ProjPoint]) -> Result<bool, MapError> {
        for p in samples {
            let q = self.apply(p).point().ok_or_else(|| MapError::BasePoint(p.clone()))?;
            let r = self.apply(&q).point().ok_or_else(|| MapError::BasePoint(q.clone()))?;
            if r != *p {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn common_monomial(comps: &[Form; 3]) -> [u32; 3] {
    let mut e = [u32::MAX; 3];
    for c in comps {
        for k in c.terms.keys() {
            for i in 0..3 {
                e[i] = e[i].min(k[i]);
            }
        }
    }
    e.map(|x| if x == u32::MAX { 0 } else { x })
}

fn linear_det(comps: &[Form; 3]) -> Rat {
    let m: Vec<Vec<Rat>> = comps
        .iter()
        .map(|c| {
            (0..3)
                .map(|j| {
                    let mut e = [0; 3];
                    e[j] = 1;
                    c.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
                })
                .collect()
        })
        .collect();
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl fmt::Display for HomMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.comps;
        write!(f, "[{a}:{b}:{c}]")
    }
}
