use thiserror::Error;

use crate::projmaps::ProjPoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("interval endpoint {0} is a root")]
    RootAtEndpoint(String),
    #[error("empty interval: lower bound is not below the upper bound")]
    EmptyInterval,
    #[error("no root of the defining polynomial in the given interval, or more than one")]
    NotIsolating,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("unknown variable {name:?} at position {pos}; only `t` is supported")]
    UnknownVariable { pos: usize, name: String },
    #[error("decimal literal at position {pos}; write it as a fraction such as 3/2")]
    Decimal { pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("exponent too large at position {pos}")]
    ExponentTooLarge { pos: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("components have different degrees")]
    MixedDegrees,
    #[error("all components vanish identically")]
    ZeroMap,
    #[error("components share the common factor {0}; cancel it first")]
    CommonFactor(String),
    #[error("map shape not supported (only invertible linear and monomial quadratic maps)")]
    UnsupportedShape,
    #[error("point {0} is a base point")]
    BasePoint(ProjPoint),
    #[error("projective point with all coordinates zero")]
    ZeroPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("degree {0} is too small or unsupported for this operation")]
    BadDegree(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("branch polynomial must be nonzero and squarefree")]
    NotSquarefree,
    #[error("branch of degree {degree} defines a rational curve, which has no genus label")]
    RationalCurve { degree: usize },
    #[error("model has a proper real locus but is not in Iskovskikh normal form; re-present it so that H splits over R with negative leading coefficient and the fiber over [1:0] has no real point\n{0}")]
    NotNormalForm(crate::models::ValidationReport),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
