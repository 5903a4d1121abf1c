//! Concrete syntax for equations and rational tuples.
//!
//! ```text
//! equation := expr "=" expr [ "@" "arity" "=" INT ]
//! expr     := term (("+" | "-") term)*
//! term     := unary ("*" unary)*
//! unary    := ("+" | "-") unary | power
//! power    := primary [ "^" INT ]
//! primary  := INT | VAR | "(" expr ")"
//! tuple    := "(" rational ("," rational)* ")"
//! rational := ["-"] INT [ "/" INT ]
//! ```
//!
//! Variables are `x1`, `x2`, …; coefficients are integers. `@arity=k` widens
//! the equation to `k` variables without adding terms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::codec::QTuple;
use crate::exactnum::Rational;
use crate::poly::{Equation, Polynomial};

/// Byte range `[start, end)` into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedCharacter(char),
    InvalidVariable(String),
    UnknownIdentifier(String),
    RationalConstant,
    FractionalExponent,
    NegativeExponent,
    ExponentTooLarge,
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    ArityBelowUsed { forced: usize, used: usize },
    InvalidArity,
    ZeroDenominator,
}

impl ParseErrorKind {
    /// Stable short identifier, used by golden diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            ParseErrorKind::UnexpectedCharacter(_) => "unexpected-character",
            ParseErrorKind::InvalidVariable(_) => "invalid-variable",
            ParseErrorKind::UnknownIdentifier(_) => "unknown-identifier",
            ParseErrorKind::RationalConstant => "rational-constant",
            ParseErrorKind::FractionalExponent => "fractional-exponent",
            ParseErrorKind::NegativeExponent => "negative-exponent",
            ParseErrorKind::ExponentTooLarge => "exponent-too-large",
            ParseErrorKind::UnexpectedToken { .. } => "unexpected-token",
            ParseErrorKind::UnexpectedEnd { .. } => "unexpected-end",
            ParseErrorKind::ArityBelowUsed { .. } => "arity-below-used",
            ParseErrorKind::InvalidArity => "invalid-arity",
            ParseErrorKind::ZeroDenominator => "zero-denominator",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedCharacter(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::InvalidVariable(v) => write!(f, "invalid variable `{v}` (expected x1, x2, ...)"),
            ParseErrorKind::UnknownIdentifier(v) => write!(f, "unknown identifier `{v}`"),
            ParseErrorKind::RationalConstant => write!(f, "coefficients must be integer literals"),
            ParseErrorKind::FractionalExponent => {
                write!(f, "exponent must be a non-negative integer, found a fraction")
            }
            ParseErrorKind::NegativeExponent => write!(f, "exponent must be a non-negative integer, found a negative"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
            ParseErrorKind::UnexpectedToken { found, expected } => write!(f, "expected {expected}, found `{found}`"),
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::ArityBelowUsed { forced, used } => {
                write!(f, "forced arity {forced} is below the largest variable index {used}")
            }
            ParseErrorKind::InvalidArity => write!(f, "arity must be a positive integer"),
            ParseErrorKind::ZeroDenominator => write!(f, "denominator must be non-zero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl ParseError {
    fn new(kind: ParseErrorKind, span: SourceSpan) -> Self {
        ParseError { kind, span }
    }

    /// `code start..end`, the form stored in golden files.
    pub fn diagnostic(&self) -> String {
        format!("{} {}", self.kind.code(), self.span)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Decimal,
    Var(usize),
    Word(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    LParen,
    RParen,
    Equals,
    At,
}

impl Tok {
    fn describe(&self, text: &str, span: SourceSpan) -> String {
        match self {
            Tok::Int(_) | Tok::Decimal | Tok::Var(_) | Tok::Word(_) => text[span.start..span.end].to_string(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::Slash => "/".into(),
            Tok::Comma => ",".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Equals => "=".into(),
            Tok::At => "@".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'/' => Some(Tok::Slash),
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'=' => Some(Tok::Equals),
            b'@' => Some(Tok::At),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((tok, SourceSpan::new(start, start + 1)));
            i += 1;
        } else if b.is_ascii_whitespace() {
            i += 1;
        } else if b.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push((Tok::Decimal, SourceSpan::new(start, i)));
            } else {
                let value = text[start..i].parse().expect("ascii digits");
                tokens.push((Tok::Int(value), SourceSpan::new(start, i)));
            }
        } else if b.is_ascii_alphabetic() || b == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let span = SourceSpan::new(start, i);
            tokens.push((classify_word(word, span)?, span));
        } else {
            let c = text[start..].chars().next().expect("non-empty remainder");
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedCharacter(c),
                SourceSpan::new(start, start + c.len_utf8()),
            ));
        }
    }
    Ok(tokens)
}

fn classify_word(word: &str, span: SourceSpan) -> Result<Tok, ParseError> {
    let Some(digits) = word.strip_prefix('x') else {
        return Ok(Tok::Word(word.to_string()));
    };
    let invalid = || ParseError::new(ParseErrorKind::InvalidVariable(word.to_string()), span);
    if digits.is_empty() {
        return Err(invalid());
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(Tok::Word(word.to_string()));
    }
    if digits.starts_with('0') {
        return Err(invalid());
    }
    digits.parse::<usize>().map(Tok::Var).map_err(|_| invalid())
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<(Tok, SourceSpan)>,
    pos: usize,
    max_var: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        Ok(Parser { text, tokens: lex(text)?, pos: 0, max_var: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn end_span(&self) -> SourceSpan {
        SourceSpan::new(self.text.len(), self.text.len())
    }

    fn unexpected(&self, tok: &Tok, span: SourceSpan, expected: &'static str) -> ParseError {
        let kind = match tok {
            Tok::Slash | Tok::Decimal => ParseErrorKind::RationalConstant,
            Tok::Word(w) => ParseErrorKind::UnknownIdentifier(w.clone()),
            _ => ParseErrorKind::UnexpectedToken { found: tok.describe(self.text, span), expected },
        };
        ParseError::new(kind, span)
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<SourceSpan, ParseError> {
        match self.bump() {
            Some((tok, span)) if tok == want => Ok(span),
            Some((tok, span)) => Err(self.unexpected(&tok, span, expected)),
            None => Err(ParseError::new(ParseErrorKind::UnexpectedEnd { expected }, self.end_span())),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let exp = self.exponent()?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        const EXPECTED: &str = "a non-negative integer exponent";
        match self.bump() {
            Some((Tok::Int(n), span)) => {
                n.to_u32().ok_or_else(|| ParseError::new(ParseErrorKind::ExponentTooLarge, span))
            }
            Some((Tok::Decimal, span)) => Err(ParseError::new(ParseErrorKind::FractionalExponent, span)),
            Some((Tok::Minus, span)) => {
                let span = match self.tokens.get(self.pos) {
                    Some((Tok::Int(_) | Tok::Decimal, s)) => span.join(*s),
                    _ => span,
                };
                Err(ParseError::new(ParseErrorKind::NegativeExponent, span))
            }
            Some((tok, span)) => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken { found: tok.describe(self.text, span), expected: EXPECTED },
                span,
            )),
            None => Err(ParseError::new(ParseErrorKind::UnexpectedEnd { expected: EXPECTED }, self.end_span())),
        }
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        const EXPECTED: &str = "an integer, a variable or `(`";
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(Polynomial::constant(n, 1).expect("arity 1")),
            Some((Tok::Var(index), _)) => {
                self.max_var = self.max_var.max(index);
                Ok(Polynomial::var(index, index).expect("index is positive"))
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((tok, span)) => Err(self.unexpected(&tok, span, EXPECTED)),
            None => Err(ParseError::new(ParseErrorKind::UnexpectedEnd { expected: EXPECTED }, self.end_span())),
        }
    }

    fn arity_suffix(&mut self) -> Result<Option<(usize, SourceSpan)>, ParseError> {
        match self.bump() {
            None => return Ok(None),
            Some((Tok::At, _)) => {}
            Some((tok, span)) => return Err(self.unexpected(&tok, span, "`@arity=` or end of input")),
        }
        match self.bump() {
            Some((Tok::Word(w), _)) if w == "arity" => {}
            Some((tok, span)) => {
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedToken { found: tok.describe(self.text, span), expected: "`arity`" },
                    span,
                ))
            }
            None => {
                return Err(ParseError::new(ParseErrorKind::UnexpectedEnd { expected: "`arity`" }, self.end_span()))
            }
        }
        self.expect(Tok::Equals, "`=`")?;
        let (value, span) = match self.bump() {
            Some((Tok::Int(n), span)) => (n, span),
            Some((Tok::Minus | Tok::Decimal, span)) => return Err(ParseError::new(ParseErrorKind::InvalidArity, span)),
            Some((tok, span)) => return Err(self.unexpected(&tok, span, "an arity")),
            None => {
                return Err(ParseError::new(ParseErrorKind::UnexpectedEnd { expected: "an arity" }, self.end_span()))
            }
        };
        if value.is_zero() {
            return Err(ParseError::new(ParseErrorKind::InvalidArity, span));
        }
        let forced = value.to_usize().ok_or_else(|| ParseError::new(ParseErrorKind::InvalidArity, span))?;
        if let Some((tok, span)) = self.bump() {
            return Err(self.unexpected(&tok, span, "end of input"));
        }
        Ok(Some((forced, span)))
    }
}

/// Parses `lhs = rhs [@arity=k]` into the equation `lhs - rhs = 0`.
pub fn parse_equation(text: &str) -> Result<Equation, ParseError> {
    let mut parser = Parser::new(text)?;
    let lhs = parser.expr()?;
    parser.expect(Tok::Equals, "`=`")?;
    let rhs = parser.expr()?;
    let forced = parser.arity_suffix()?;
    let used = parser.max_var;
    let arity = match forced {
        Some((k, span)) if k < used => {
            return Err(ParseError::new(ParseErrorKind::ArityBelowUsed { forced: k, used }, span));
        }
        Some((k, _)) => k,
        None => used.max(1),
    };
    let poly = lhs.sub(&rhs);
    Ok(Equation::new(poly, arity).expect("arity covers every variable"))
}

/// Canonical text `P = 0 @arity=k`.
pub fn render_equation(eq: &Equation) -> String {
    format!("{} = 0 @arity={}", eq.lhs(), eq.arity())
}

/// Parses `(a/b, c, ...)`.
pub fn parse_tuple(text: &str) -> Result<QTuple, ParseError> {
    let mut parser = Parser::new(text)?;
    parser.expect(Tok::LParen, "`(`")?;
    let mut components = vec![parse_rational_tokens(&mut parser)?];
    loop {
        match parser.bump() {
            Some((Tok::Comma, _)) => components.push(parse_rational_tokens(&mut parser)?),
            Some((Tok::RParen, _)) => break,
            Some((tok, span)) => return Err(parser.unexpected(&tok, span, "`,` or `)`")),
            None => {
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedEnd { expected: "`,` or `)`" },
                    parser.end_span(),
                ))
            }
        }
    }
    if let Some((tok, span)) = parser.bump() {
        return Err(parser.unexpected(&tok, span, "end of input"));
    }
    Ok(QTuple::new(components).expect("at least one component"))
}

/// Parses `a` or `a/b` with an optional leading minus.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let mut parser = Parser::new(text)?;
    let value = parse_rational_tokens(&mut parser)?;
    if let Some((tok, span)) = parser.bump() {
        return Err(parser.unexpected(&tok, span, "end of input"));
    }
    Ok(value)
}

fn parse_rational_tokens(parser: &mut Parser<'_>) -> Result<Rational, ParseError> {
    const EXPECTED: &str = "an integer";
    let negative = matches!(parser.peek(), Some(Tok::Minus));
    if negative {
        parser.bump();
    }
    let numerator = match parser.bump() {
        Some((Tok::Int(n), _)) => n,
        Some((tok, span)) => {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedToken { found: tok.describe(parser.text, span), expected: EXPECTED },
                span,
            ))
        }
        None => return Err(ParseError::new(ParseErrorKind::UnexpectedEnd { expected: EXPECTED }, parser.end_span())),
    };
    let numerator = if negative { -numerator } else { numerator };
    if !matches!(parser.peek(), Some(Tok::Slash)) {
        return Ok(Rational::from_integer(numerator));
    }
    parser.bump();
    match parser.bump() {
        Some((Tok::Int(d), span)) if d.is_zero() => Err(ParseError::new(ParseErrorKind::ZeroDenominator, span)),
        Some((Tok::Int(d), _)) => Ok(Rational::new(numerator, d).expect("non-zero denominator")),
        Some((tok, span)) => Err(ParseError::new(
            ParseErrorKind::UnexpectedToken {
                found: tok.describe(parser.text, span),
                expected: "a positive denominator",
            },
            span,
        )),
        None => Err(ParseError::new(
            ParseErrorKind::UnexpectedEnd { expected: "a positive denominator" },
            parser.end_span(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rendered(text: &str) -> String {
        render_equation(&parse_equation(text).unwrap())
    }

    fn diag(text: &str) -> String {
        parse_equation(text).unwrap_err().diagnostic()
    }

    #[test]
    fn parse_examples() {
        let e = parse_equation("x1^2 - 4 = 0").unwrap();
        assert_eq!(e.arity(), 1);
        assert_eq!(e.lhs().to_string(), "x1^2 - 4");

        let e = parse_equation("(2*x1 - 1)^2 = 0 @arity=2").unwrap();
        assert_eq!(e.arity(), 2);
        assert_eq!(e.lhs().to_string(), "4*x1^2 - 4*x1 + 1");

        let e = parse_equation("x1*x2 = 5").unwrap();
        assert_eq!(e.arity(), 2);
        assert_eq!(e.lhs().to_string(), "x1*x2 - 5");
    }

    #[test]
    fn render_examples() {
        assert_eq!(rendered("0 = 0"), "0 = 0 @arity=1");
        assert_eq!(rendered("x1^2 - 4 = 0"), "x1^2 - 4 = 0 @arity=1");
        assert_eq!(rendered("(2*x1 - 1)^2 = 0 @arity=2"), "4*x1^2 - 4*x1 + 1 = 0 @arity=2");
    }

    #[test]
    fn cancelled_variables_still_count_towards_arity() {
        assert_eq!(rendered("x3 - x3 = 0"), "0 = 0 @arity=3");
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(rendered("x1*x2=5@arity=3"), rendered("  x1 * x2 = 5 @ arity = 3 "));
    }

    #[test]
    fn error_diagnostics() {
        assert_eq!(diag("x1 = 1/2"), "rational-constant 6..7");
        assert_eq!(diag("x1^1.5 = 0"), "fractional-exponent 3..6");
        assert_eq!(diag("x1^-2 = 0"), "negative-exponent 3..5");
        assert_eq!(diag("x1*x2 = 0 @arity=1"), "arity-below-used 17..18");
        assert_eq!(diag("x0 = 1"), "invalid-variable 0..2");
        assert_eq!(diag("y = 1"), "unknown-identifier 0..1");
        assert_eq!(diag("x1 + 1"), "unexpected-end 6..6");
        assert_eq!(diag("x1 $ 1 = 0"), "unexpected-character 3..4");
        assert_eq!(diag("2.5*x1 = 0"), "rational-constant 0..3");
        assert_eq!(diag("0 = 0 @arity=0"), "invalid-arity 13..14");
        assert_eq!(diag("(x1 = 0"), "unexpected-token 4..5");
        assert_eq!(diag("x1 = 0 = 1"), "unexpected-token 7..8");
    }

    #[test]
    fn tuples() {
        let t = parse_tuple("(2/3, -1, 0/5)").unwrap();
        assert_eq!(t.to_string(), "(2/3, -1, 0)");
        assert_eq!(parse_tuple("(4/6)").unwrap().to_string(), "(2/3)");
        assert_eq!(parse_tuple("(1/0)").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert!(parse_tuple("()").is_err());
        assert!(parse_tuple("(1, 2").is_err());
        assert!(parse_tuple("(1/-2)").is_err());
        assert_eq!(parse_rational("-7/21").unwrap(), Rational::new(-1, 3).unwrap());
    }
}
