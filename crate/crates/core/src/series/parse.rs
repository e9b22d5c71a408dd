//! Parser for polynomial germs in plumbing coordinates.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 't' NAT ('^' NAT)?
//! coeff  := DECIMAL | NAT '/' NAT
//! ```
//!
//! Whitespace is ignored between tokens. Decimal coefficients are read as
//! exact rationals (`0.1` is `1/10`), so repeated monomials merge exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{PinchError, Result};
use crate::series::germ::AnalyticGerm;
use crate::series::index::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column} (token '{token}'): {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number { text: String, integral: bool },
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number { text, .. } => f.write_str(text),
            Tok::Var => f.write_str("t"),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::End => f.write_str("<end of input>"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&ch) = chars.peek() {
        let (tl, tc) = (line, column);
        let push = |out: &mut Vec<Spanned>, tok| {
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            })
        };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            '0'..='9' => {
                let mut text = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    text.push(d);
                    chars.next();
                    column += 1;
                }
                let mut integral = true;
                if chars.peek() == Some(&'.') {
                    chars.next();
                    column += 1;
                    text.push('.');
                    integral = false;
                    let before = text.len();
                    while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                        text.push(d);
                        chars.next();
                        column += 1;
                    }
                    if text.len() == before {
                        return Err(ParseError {
                            line: tl,
                            column: tc,
                            token: text,
                            message: "decimal point must be followed by digits".into(),
                        });
                    }
                }
                push(&mut out, Tok::Number { text, integral });
                continue;
            }
            't' => push(&mut out, Tok::Var),
            '+' => push(&mut out, Tok::Plus),
            '-' => push(&mut out, Tok::Minus),
            '*' => push(&mut out, Tok::Star),
            '/' => push(&mut out, Tok::Slash),
            '^' => push(&mut out, Tok::Caret),
            other => {
                return Err(ParseError {
                    line: tl,
                    column: tc,
                    token: other.to_string(),
                    message: "unexpected character".into(),
                })
            }
        }
        chars.next();
        column += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

fn decimal_to_ratio(text: &str) -> BigRational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int}{frac}")
        .parse()
        .expect("lexer emits digits only");
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    BigRational::new(digits, denom)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

/// A parsed term: coefficient and sparse variable exponents (1-based index).
type RawTerm = (BigRational, Vec<(usize, u32)>);

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(at: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            token: at.tok.to_string(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> std::result::Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek().tok {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let (mut c, vars) = self.term()?;
            if negate {
                c = -c;
            }
            terms.push((c, vars));
            match self.peek().tok {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => return Ok(terms),
                _ => {
                    return Err(Self::error_at(
                        self.peek(),
                        "expected '+', '-' or end of input",
                    ))
                }
            }
            self.bump();
        }
    }

    fn term(&mut self) -> std::result::Result<RawTerm, ParseError> {
        let mut vars = Vec::new();
        let coeff = match self.peek().tok {
            Tok::Number { .. } => self.coeff()?,
            Tok::Var => {
                vars.push(self.factor()?);
                BigRational::one()
            }
            _ => {
                return Err(Self::error_at(
                    self.peek(),
                    "expected a coefficient or a variable",
                ))
            }
        };
        while self.peek().tok == Tok::Star {
            let star = self.bump();
            if self.peek().tok != Tok::Var {
                return Err(Self::error_at(
                    &star,
                    "'*' must be followed by a variable t<k>",
                ));
            }
            vars.push(self.factor()?);
        }
        Ok((coeff, vars))
    }

    fn coeff(&mut self) -> std::result::Result<BigRational, ParseError> {
        let num = self.bump();
        let Tok::Number { text, integral } = &num.tok else {
            unreachable!()
        };
        if self.peek().tok != Tok::Slash {
            return Ok(decimal_to_ratio(text));
        }
        if !integral {
            return Err(Self::error_at(
                &num,
                "rational coefficients need integer numerator",
            ));
        }
        let slash = self.bump();
        let den = self.peek().clone();
        match &den.tok {
            Tok::Number {
                text: d,
                integral: true,
            } => {
                self.bump();
                let d: BigInt = d.parse().expect("digits");
                if d.is_zero() {
                    return Err(Self::error_at(&den, "zero denominator"));
                }
                Ok(BigRational::new(text.parse().expect("digits"), d))
            }
            Tok::Number { .. } => Err(Self::error_at(&den, "denominator must be a natural number")),
            _ => Err(Self::error_at(
                &slash,
                "'/' must be followed by a natural number",
            )),
        }
    }

    fn nat(&mut self, after: &Spanned, what: &str) -> std::result::Result<u64, ParseError> {
        let at = self.peek().clone();
        match &at.tok {
            Tok::Number {
                text,
                integral: true,
            } => {
                self.bump();
                text.parse::<u64>()
                    .map_err(|_| Self::error_at(&at, format!("{what} is too large")))
            }
            Tok::Number { .. } => Err(Self::error_at(
                &at,
                format!("{what} must be a natural number"),
            )),
            _ => Err(Self::error_at(after, format!("expected {what}"))),
        }
    }

    fn factor(&mut self) -> std::result::Result<(usize, u32), ParseError> {
        let var = self.bump();
        let index = self.nat(&var, "variable index after 't'")?;
        if index == 0 {
            return Err(Self::error_at(
                &self.toks[self.pos - 1],
                "variable indices start at t1",
            ));
        }
        let index =
            usize::try_from(index).map_err(|_| Self::error_at(&var, "variable index too large"))?;
        if index > 4096 {
            return Err(Self::error_at(
                &self.toks[self.pos - 1],
                "variable index too large (max 4096)",
            ));
        }
        let mut exp = 1u32;
        if self.peek().tok == Tok::Caret {
            let caret = self.bump();
            let e = self.nat(&caret, "exponent after '^'")?;
            exp = u32::try_from(e).map_err(|_| Self::error_at(&caret, "exponent too large"))?;
        }
        Ok((index, exp))
    }
}

/// Parse `src` into a germ with arity `arity`, or the largest variable index
/// used when `arity` is `None`.
pub fn parse_germ(src: &str, arity: Option<usize>) -> Result<AnalyticGerm> {
    let toks = lex(src)?;
    let mut parser = Parser { toks, pos: 0 };
    let terms = parser.expr()?;
    let max_var = terms
        .iter()
        .flat_map(|(_, v)| v.iter().map(|&(k, _)| k))
        .max()
        .unwrap_or(0);
    let n = match arity {
        Some(n) if n < max_var => {
            return Err(PinchError::Validation(format!(
                "expression uses t{max_var} but arity is fixed at {n}"
            )))
        }
        Some(n) => n,
        None => max_var.max(1),
    };
    let mut germ = AnalyticGerm::new(n)?;
    for (c, vars) in terms {
        let mut e = vec![0u32; n];
        for (k, p) in vars {
            e[k - 1] = e[k - 1]
                .checked_add(p)
                .ok_or_else(|| PinchError::Validation(format!("exponent of t{k} overflows")))?;
        }
        germ.add_term(MultiIndex::new(e)?, c)?;
    }
    Ok(germ)
}
