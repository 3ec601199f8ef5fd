//! Text syntax for polynomials, rational functions and quaternionic functions.
//!
//! ```text
//! qfunction := rational [ ';' rational ]          f1 ; f2   (f2 defaults to 0)
//! rational  := sum [ '/' sum ]                    numerator / real denominator
//! sum       := [+|-] product { (+|-) product }
//! product   := power { '*' power | '/' power }    '/' only inside parentheses,
//!                                                 and only by constants
//! power     := atom [ '^' integer ]
//! atom      := number [i] | i | z1 | z2 | c1 | c2 | '(' sum ')'
//! ```
//!
//! `c1`, `c2` stand for `z̄1`, `z̄2`. Numbers are decimals and are read
//! exactly, so `0.1` is `1/10`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::function::QFunction;
use super::poly::{Coeff, ConjPoly, Var};
use super::rational::ConjRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Imag(BigRational),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
}

fn lex(src: &str) -> Result<Lexer> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let text = &src[start..i];
            let value = parse_decimal(text).ok_or_else(|| Error::Parse {
                pos: start,
                expected: "a decimal number".into(),
            })?;
            let followed_by_i = i < bytes.len()
                && bytes[i] == b'i'
                && !bytes
                    .get(i + 1)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_');
            if followed_by_i {
                i += 1;
                toks.push((start, Tok::Imag(value)));
            } else {
                toks.push((start, Tok::Num(value)));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^();".contains(c) {
            toks.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                expected: "a number, variable, operator or parenthesis".into(),
            });
        }
    }
    toks.push((src.len(), Tok::End));
    Ok(Lexer { toks })
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let mut parts = text.splitn(2, '.');
    let int_part = parts.next()?;
    let frac_part = parts.next().unwrap_or("");
    if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(n, d))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    allow_bump: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            expected: expected.to_string(),
        })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(&format!("`{c}`"))
        }
    }

    fn sum(&mut self, nested: bool) -> Result<ConjPoly> {
        let mut negate = false;
        if self.is_sym('+') || self.is_sym('-') {
            negate = self.bump() == Tok::Sym('-');
        }
        let first = self.product(nested)?;
        let mut acc = if negate { -first } else { first };
        while self.is_sym('+') || self.is_sym('-') {
            let minus = self.bump() == Tok::Sym('-');
            let t = self.product(nested)?;
            acc = if minus { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn product(&mut self, nested: bool) -> Result<ConjPoly> {
        let mut acc = self.power()?;
        loop {
            if self.is_sym('*') {
                self.bump();
                let rhs = self.power()?;
                acc = &acc * &rhs;
            } else if nested && self.is_sym('/') {
                self.bump();
                let at = self.offset();
                let rhs = self.power()?;
                match rhs.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(Coeff::one() / c)),
                    _ => {
                        return Err(Error::Parse {
                            pos: at,
                            expected: "a nonzero constant divisor".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<ConjPoly> {
        let base = self.atom()?;
        if self.is_sym('^') {
            self.bump();
            match self.bump() {
                Tok::Num(n) if n.is_integer() => {
                    let k: u32 = n.to_integer().try_into().map_err(|_| Error::Parse {
                        pos: self.offset(),
                        expected: "a small exponent".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => {
                    self.pos -= 1;
                    self.err("a nonnegative integer exponent")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ConjPoly> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(ConjPoly::constant(Complex::new(n, BigRational::zero()))),
            Tok::Imag(n) => Ok(ConjPoly::constant(Complex::new(BigRational::zero(), n))),
            Tok::Sym('(') => {
                let inner = self.sum(true)?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "z1" => Ok(ConjPoly::var(Var::Z1)),
                "z2" => Ok(ConjPoly::var(Var::Z2)),
                "c1" => Ok(ConjPoly::var(Var::Zb1)),
                "c2" => Ok(ConjPoly::var(Var::Zb2)),
                "i" => Ok(ConjPoly::constant(Complex::i())),
                "bump" if self.allow_bump => Ok(ConjPoly::one()),
                _ => Err(Error::Parse {
                    pos: at,
                    expected: "one of z1, z2, c1, c2, i".into(),
                }),
            },
            _ => Err(Error::Parse {
                pos: at,
                expected: "a number, variable or `(`".into(),
            }),
        }
    }

    fn rational(&mut self) -> Result<ConjRational> {
        let num = self.sum(false)?;
        if self.is_sym('/') {
            self.bump();
            let at = self.offset();
            let den = self.sum(false)?;
            return ConjRational::new(num, den).map_err(|e| match e {
                Error::ZeroDenominator => Error::Parse {
                    pos: at,
                    expected: "a nonzero denominator".into(),
                },
                Error::NonRealDenominator(_) => Error::Parse {
                    pos: at,
                    expected: "a real-valued denominator".into(),
                },
                other => other,
            });
        }
        Ok(ConjRational::from_poly(num))
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.err("end of input or an operator")
        }
    }
}

fn parser(src: &str, allow_bump: bool) -> Result<Parser> {
    Ok(Parser {
        toks: lex(src)?.toks,
        pos: 0,
        allow_bump,
    })
}

pub fn parse_poly(src: &str) -> Result<ConjPoly> {
    let mut p = parser(src, false)?;
    let out = p.sum(false)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_rational(src: &str) -> Result<ConjRational> {
    let mut p = parser(src, false)?;
    let out = p.rational()?;
    p.finish()?;
    Ok(out)
}

/// `F1 ; F2`, or a single `F1` meaning `F1 + 0·j`.
pub fn parse_qfunction(src: &str) -> Result<QFunction> {
    let mut p = parser(src, false)?;
    let f1 = p.rational()?;
    let f2 = if p.is_sym(';') {
        p.bump();
        p.rational()?
    } else {
        ConjRational::zero()
    };
    p.finish()?;
    Ok(QFunction::new(f1, f2))
}

/// Polynomial factor of a test-form coefficient; the identifier `bump`
/// may appear and stands for the (implicit) bump factor.
pub fn parse_test_polynomial(src: &str) -> Result<ConjPoly> {
    let mut p = parser(src, true)?;
    let out = p.sum(false)?;
    p.finish()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::poly::{coeff_int, rat};

    #[test]
    fn term_syntax() {
        let p = parse_poly("(2+3i)*z1^2*c1*z2*c2^3").unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&[2, 1, 1, 3]), coeff_int(2, 3));
    }

    #[test]
    fn decimals_are_exact() {
        let p = parse_poly("0.5*z1 - 1.25").unwrap();
        assert_eq!(p.coefficient(&[1, 0, 0, 0]), Complex::new(rat(1, 2), rat(0, 1)));
        assert_eq!(p.coefficient(&[0, 0, 0, 0]), Complex::new(rat(-5, 4), rat(0, 1)));
    }

    #[test]
    fn division_inside_parentheses() {
        let p = parse_poly("(1/3 - 2/5*i)*z2").unwrap();
        assert_eq!(p.coefficient(&[0, 0, 1, 0]), Complex::new(rat(1, 3), rat(-2, 5)));
    }

    #[test]
    fn qfunction_literal() {
        let f = parse_qfunction("c1 / (z1*c1 + z2*c2)^2 ; -c2 / (z1*c1 + z2*c2)^2").unwrap();
        assert!(!f.f1().is_polynomial());
        let g = parse_qfunction("z1").unwrap();
        assert!(g.f2().is_zero());
    }

    #[test]
    fn errors_report_position_and_expectation() {
        match parse_poly("z1 * * z2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("z3") {
            Err(Error::Parse { pos, expected }) => {
                assert_eq!(pos, 0);
                assert!(expected.contains("z1"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_rational("1 / z1"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("(z1 + 1"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_poly("z1 z2"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn bump_only_in_test_polynomials() {
        assert!(parse_poly("bump").is_err());
        assert!(parse_test_polynomial("z1*bump").unwrap() == ConjPoly::var(Var::Z1));
    }
}
