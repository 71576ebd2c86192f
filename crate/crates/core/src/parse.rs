//! Polynomial expression parser.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary ('*' unary)*
//! unary    := ('-' | '+') unary | power
//! power    := base ('^' natural)?
//! base     := rational | 't' | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Unary minus binds looser than `^`, so `-t^2` is `-(t^2)`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ParseError;
use crate::poly::{Rat, RatPoly};

const MAX_EXPONENT: u32 = 4096;

impl FromStr for RatPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

pub fn parse_poly(text: &str) -> Result<RatPoly, ParseError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        idx: 0,
        len: text.len(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if let Some((pos, _)) = p.peek_raw() {
        return Err(ParseError::Trailing { pos });
    }
    Ok(out)
}

struct Parser {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn peek_raw(&self) -> Option<(usize, char)> {
        self.chars.get(self.idx).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek_raw().is_some_and(|(_, c)| c.is_whitespace()) {
            self.idx += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.peek_raw()
    }

    fn expr(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some((_, c)) = self.peek() {
            match c {
                '+' => {
                    self.idx += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.idx += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some((_, '*')) = self.peek() {
            self.idx += 1;
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatPoly, ParseError> {
        match self.peek() {
            Some((_, '-')) => {
                self.idx += 1;
                Ok(-self.unary()?)
            }
            Some((_, '+')) => {
                self.idx += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatPoly, ParseError> {
        let base = self.base()?;
        if let Some((_, '^')) = self.peek() {
            self.idx += 1;
            let pos = self.peek().map_or(self.len, |(p, _)| p);
            match self.peek_raw() {
                Some((p, '-')) => return Err(ParseError::NegativeExponent { pos: p }),
                Some((_, c)) if c.is_ascii_digit() => {}
                Some((p, c)) => return Err(ParseError::Unexpected { pos: p, found: c }),
                None => return Err(ParseError::UnexpectedEnd { pos }),
            }
            let n = self.integer()?;
            let e: u32 = u32::try_from(&n)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseError::ExponentTooLarge { pos })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RatPoly, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd { pos: self.len }),
            Some((_, '(')) => {
                self.idx += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.idx += 1;
                        Ok(inner)
                    }
                    Some((pos, found)) => Err(ParseError::Unexpected { pos, found }),
                    None => Err(ParseError::UnexpectedEnd { pos: self.len }),
                }
            }
            Some((_, c)) if c.is_ascii_digit() => Ok(RatPoly::constant(self.rational()?)),
            Some((pos, '.')) => Err(ParseError::Decimal { pos }),
            Some((pos, c)) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some((_, c)) = self.peek_raw() {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.idx += 1;
                    } else {
                        break;
                    }
                }
                if name == "t" {
                    Ok(RatPoly::t())
                } else {
                    Err(ParseError::UnknownVariable { pos, name })
                }
            }
            Some((pos, found)) => Err(ParseError::Unexpected { pos, found }),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.idx;
        let mut digits = String::new();
        while let Some((_, c)) = self.peek_raw() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.idx += 1;
            } else {
                break;
            }
        }
        if let Some((pos, '.')) = self.peek_raw() {
            return Err(ParseError::Decimal { pos });
        }
        if digits.is_empty() {
            self.idx = start;
            return Err(match self.peek_raw() {
                Some((pos, found)) => ParseError::Unexpected { pos, found },
                None => ParseError::UnexpectedEnd { pos: self.len },
            });
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let num = self.integer()?;
        if let Some((_, '/')) = self.peek() {
            self.idx += 1;
            let pos = self.peek().map_or(self.len, |(p, _)| p);
            let den = self.integer()?;
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator { pos });
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse_poly("t^2 - 2").unwrap(), RatPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(
            parse_poly("(t^2-1)*(t^2-4)*(t^2-9)").unwrap(),
            RatPoly::from_ints(&[-36, 0, 49, 0, -14, 0, 1])
        );
        assert_eq!(
            parse_poly("3/2*t + 1/3").unwrap(),
            RatPoly::new(vec![rat(1, 3), rat(3, 2)])
        );
        assert_eq!(parse_poly("-(t^2-9)").unwrap(), RatPoly::from_ints(&[9, 0, -1]));
        assert_eq!(parse_poly("-t^2").unwrap(), RatPoly::from_ints(&[0, 0, -1]));
        assert_eq!(parse_poly("  7 ").unwrap(), RatPoly::constant(rat_int(7)));
        assert_eq!(parse_poly("2*-t").unwrap(), RatPoly::from_ints(&[0, -2]));
        assert_eq!(parse_poly("4/6").unwrap(), RatPoly::constant(rat(2, 3)));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_poly("1.5*t"), Err(ParseError::Decimal { pos: 1 }));
        assert!(matches!(
            parse_poly("x^2"),
            Err(ParseError::UnknownVariable { pos: 0, .. })
        ));
        assert_eq!(parse_poly("t^-1"), Err(ParseError::NegativeExponent { pos: 2 }));
        assert_eq!(parse_poly("t^2 +"), Err(ParseError::UnexpectedEnd { pos: 5 }));
        assert_eq!(parse_poly("(t+1"), Err(ParseError::UnexpectedEnd { pos: 4 }));
        assert_eq!(parse_poly("2t"), Err(ParseError::Trailing { pos: 1 }));
        assert_eq!(parse_poly("1/0"), Err(ParseError::ZeroDenominator { pos: 2 }));
        assert!(parse_poly("t^99999").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn print_parse_idempotent() {
        for s in ["-t^2 + 1", "3/2*t^5 - 1/7*t + 2", "0", "-1/2", "t"] {
            let p = parse_poly(s).unwrap();
            let printed = p.to_string();
            assert_eq!(printed, s);
            assert_eq!(parse_poly(&printed).unwrap(), p);
        }
    }
}
