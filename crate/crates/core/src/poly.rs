//! Multivariate integer polynomials and Diophantine equations.
//!
//! Terms are kept in a sorted map keyed by [`Monomial`] under graded
//! lexicographic order with `x1 > x2 > …`. An [`Equation`] is `lhs = 0` over
//! tuples of a fixed arity; the arity may exceed the largest variable that
//! actually occurs, which is how a zero-coefficient dummy variable is carried.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("variable x{index} exceeds arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{0} expects a second operand")]
    MissingOperand(ArithOp),
    #[error("{0} takes a single operand")]
    UnexpectedOperand(ArithOp),
}

/// Exponent vector of a term; position 0 holds the exponent of `x1`.
///
/// Trailing zero exponents are trimmed, so two monomials are equal exactly when
/// they denote the same power product.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    /// `x_index^exp`, with `index` counted from 1.
    pub fn var(index: usize, exp: u32) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        let mut exponents = vec![0; index];
        exponents[index - 1] = exp;
        Monomial::new(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_index` (1-based).
    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Largest variable index with a non-zero exponent, 0 for the unit monomial.
    pub fn max_var(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let exponents = (1..=len).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::new(exponents)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Trimmed vectors compare lexicographically as if zero-padded.
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with integer coefficients in `x1..x_arity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
    arity: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Square,
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ArithOp::Add => "add",
            ArithOp::Sub => "sub",
            ArithOp::Mul => "mul",
            ArithOp::Square => "square",
        };
        f.write_str(name)
    }
}

/// Whether binary operations may lift the smaller operand to the larger arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Padding {
    Pad,
    Strict,
}

/// Builds a canonical polynomial from `(coefficient, exponents)` pairs.
pub fn normalize<I, C>(raw: I, arity: usize) -> Result<Polynomial, PolyError>
where
    I: IntoIterator<Item = (C, Vec<u32>)>,
    C: Into<BigInt>,
{
    let mut poly = Polynomial::zero(arity)?;
    for (coefficient, exponents) in raw {
        let monomial = Monomial::new(exponents);
        if monomial.max_var() > arity {
            return Err(PolyError::VariableOutOfRange { index: monomial.max_var(), arity });
        }
        poly.add_term(monomial, coefficient.into());
    }
    Ok(poly)
}

/// One arithmetic step on polynomials; `q` is required exactly for binary ops.
pub fn poly_arith(
    op: ArithOp,
    p: &Polynomial,
    q: Option<&Polynomial>,
    padding: Padding,
) -> Result<Polynomial, PolyError> {
    if op == ArithOp::Square {
        return match q {
            Some(_) => Err(PolyError::UnexpectedOperand(op)),
            None => Ok(p.square()),
        };
    }
    let q = q.ok_or(PolyError::MissingOperand(op))?;
    if padding == Padding::Strict && p.arity != q.arity {
        return Err(PolyError::ArityMismatch { expected: p.arity, found: q.arity });
    }
    Ok(match op {
        ArithOp::Add => p.add(q),
        ArithOp::Sub => p.sub(q),
        _ => p.mul(q),
    })
}

impl Polynomial {
    pub fn zero(arity: usize) -> Result<Self, PolyError> {
        if arity == 0 {
            return Err(PolyError::ZeroArity);
        }
        Ok(Polynomial { terms: BTreeMap::new(), arity })
    }

    pub fn constant(c: impl Into<BigInt>, arity: usize) -> Result<Self, PolyError> {
        let mut p = Polynomial::zero(arity)?;
        p.add_term(Monomial::one(), c.into());
        Ok(p)
    }

    /// The variable `x_index` as a polynomial of the given arity.
    pub fn var(index: usize, arity: usize) -> Result<Self, PolyError> {
        if index == 0 || index > arity {
            return Err(PolyError::VariableOutOfRange { index, arity });
        }
        let mut p = Polynomial::zero(arity)?;
        p.add_term(Monomial::var(index, 1), BigInt::one());
        Ok(p)
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Largest variable index occurring with a non-zero coefficient.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// The same polynomial viewed in a different number of ambient variables.
    pub fn with_arity(&self, arity: usize) -> Result<Polynomial, PolyError> {
        if arity == 0 {
            return Err(PolyError::ZeroArity);
        }
        let used = self.max_var();
        if used > arity {
            return Err(PolyError::VariableOutOfRange { index: used, arity });
        }
        Ok(Polynomial { terms: self.terms.clone(), arity })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial { terms: self.terms.clone(), arity: self.arity.max(other.arity) };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(), arity: self.arity }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial { terms: BTreeMap::new(), arity: self.arity.max(other.arity) };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn square(&self) -> Polynomial {
        self.mul(self)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::constant(1, self.arity).expect("arity is positive");
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial { terms: BTreeMap::new(), arity: self.arity };
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(), arity: self.arity }
    }

    /// gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Polynomial {
        let Some(lead) = self.leading_coefficient() else {
            return self.clone();
        };
        let mut g = self.content();
        if lead.is_negative() {
            g = -g;
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(), arity: self.arity }
    }

    /// Exact value at a rational point whose length equals the arity.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch { expected: self.arity, found: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &point[i].pow(e);
                }
            }
            total = &total + &term;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [arity {}]", self.arity)
    }
}

/// `lhs = 0` over tuples of length `arity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    lhs: Polynomial,
    arity: usize,
}

impl Equation {
    /// Fails if `lhs` uses a variable beyond `arity`.
    pub fn new(lhs: Polynomial, arity: usize) -> Result<Self, PolyError> {
        let lhs = lhs.with_arity(arity)?;
        Ok(Equation { lhs, arity })
    }

    /// The equation `lhs = 0` in exactly the variables of `lhs`'s arity.
    pub fn from_polynomial(lhs: Polynomial) -> Self {
        let arity = lhs.arity();
        Equation { lhs, arity }
    }

    pub fn lhs(&self) -> &Polynomial {
        &self.lhs
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.lhs.evaluate(point)
    }

    pub fn is_solution(&self, point: &[Rational]) -> Result<bool, PolyError> {
        Ok(self.evaluate(point)?.is_zero())
    }

    pub fn with_arity(&self, arity: usize) -> Result<Equation, PolyError> {
        Equation::new(self.lhs.clone(), arity)
    }

    /// Equal arity and equal content-normalized left-hand sides.
    pub fn canonical_equal(&self, other: &Equation) -> bool {
        eq_canonical_equal(self, other)
    }
}

pub fn eq_canonical_equal(e1: &Equation, e2: &Equation) -> bool {
    e1.arity == e2.arity && e1.lhs.primitive().terms == e2.lhs.primitive().terms
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0 @arity={}", self.lhs, self.arity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(raw: &[(i64, &[u32])], arity: usize) -> Polynomial {
        normalize(raw.iter().map(|(c, e)| (*c, e.to_vec())), arity).unwrap()
    }

    fn x(i: usize, arity: usize) -> Polynomial {
        Polynomial::var(i, arity).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let cancelled = p(&[(1, &[1]), (-1, &[1])], 1);
        assert!(cancelled.is_zero());
        assert_eq!(cancelled.arity(), 1);

        let merged = p(&[(2, &[1, 1]), (3, &[1, 1])], 2);
        assert_eq!(merged.to_string(), "5*x1*x2");
        assert_eq!(merged.len(), 1);

        let sq = p(&[(4, &[2]), (-4, &[1]), (1, &[])], 1);
        assert_eq!(sq.to_string(), "4*x1^2 - 4*x1 + 1");

        assert_eq!(normalize(vec![(1, vec![0, 1])], 1), Err(PolyError::VariableOutOfRange { index: 2, arity: 1 }));
        // Trailing zeros past the arity are harmless.
        assert!(normalize(vec![(1, vec![1, 0, 0])], 1).is_ok());
    }

    #[test]
    fn arith_examples() {
        let x1 = x(1, 1);
        assert!(poly_arith(ArithOp::Add, &x1, Some(&x1.neg()), Padding::Strict).unwrap().is_zero());

        let lin = p(&[(2, &[1]), (-1, &[])], 1);
        let prod = poly_arith(ArithOp::Mul, &lin, Some(&lin), Padding::Strict).unwrap();
        assert_eq!(prod.to_string(), "4*x1^2 - 4*x1 + 1");

        let sum = x(1, 2).add(&x(2, 2));
        let sq = poly_arith(ArithOp::Square, &sum, None, Padding::Strict).unwrap();
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn arith_operand_errors() {
        let a = x(1, 1);
        let b = x(2, 2);
        assert_eq!(
            poly_arith(ArithOp::Add, &a, Some(&b), Padding::Strict),
            Err(PolyError::ArityMismatch { expected: 1, found: 2 })
        );
        assert_eq!(poly_arith(ArithOp::Add, &a, Some(&b), Padding::Pad).unwrap().arity(), 2);
        assert_eq!(poly_arith(ArithOp::Mul, &a, None, Padding::Pad), Err(PolyError::MissingOperand(ArithOp::Mul)));
        assert_eq!(
            poly_arith(ArithOp::Square, &a, Some(&a), Padding::Pad),
            Err(PolyError::UnexpectedOperand(ArithOp::Square))
        );
    }

    #[test]
    fn graded_lex_order() {
        // degree first, then x1 > x2 > x3
        let poly = p(&[(1, &[0, 0, 1]), (1, &[0, 2]), (1, &[1, 1]), (1, &[2]), (1, &[1]), (1, &[])], 3);
        assert_eq!(poly.to_string(), "x1^2 + x1*x2 + x2^2 + x1 + x3 + 1");
        assert_eq!(p(&[(-1, &[1]), (3, &[])], 1).to_string(), "-x1 + 3");
    }

    #[test]
    fn evaluate_examples() {
        let zero = Polynomial::zero(1).unwrap();
        assert_eq!(zero.evaluate(&[q(5, 1)]).unwrap(), Rational::zero());
        let roots = p(&[(1, &[2]), (-4, &[])], 1);
        assert!(roots.evaluate(&[q(2, 1)]).unwrap().is_zero());
        let sq = p(&[(4, &[2]), (-4, &[1]), (1, &[])], 1);
        assert!(sq.evaluate(&[q(1, 2)]).unwrap().is_zero());
        assert_eq!(sq.evaluate(&[q(1, 3)]).unwrap(), q(1, 9));
        assert_eq!(sq.evaluate(&[]), Err(PolyError::ArityMismatch { expected: 1, found: 0 }));
    }

    #[test]
    fn canonical_equality_examples() {
        let e1 = Equation::new(p(&[(1, &[1]), (-1, &[])], 1), 1).unwrap();
        let e2 = Equation::new(p(&[(2, &[1]), (-2, &[])], 1), 1).unwrap();
        let e3 = Equation::new(p(&[(1, &[1]), (-1, &[])], 1), 2).unwrap();
        let neg = Equation::new(p(&[(-3, &[1]), (3, &[])], 1), 1).unwrap();
        assert!(eq_canonical_equal(&e1, &e2));
        assert!(eq_canonical_equal(&e1, &neg));
        assert!(!eq_canonical_equal(&e1, &e3));
        let z = Equation::new(Polynomial::zero(1).unwrap(), 1).unwrap();
        assert!(eq_canonical_equal(&z, &z.clone()));
    }

    #[test]
    fn equation_arity_must_cover_variables() {
        assert_eq!(Equation::new(x(2, 2), 1), Err(PolyError::VariableOutOfRange { index: 2, arity: 1 }));
        let padded = Equation::new(x(1, 1), 3).unwrap();
        assert_eq!(padded.arity(), 3);
        assert_eq!(padded.lhs().arity(), 3);
        assert_eq!(padded.lhs().max_var(), 1);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let base = x(1, 2).sub(&x(2, 2)).add(&Polynomial::constant(2, 2).unwrap());
        let mut expected = Polynomial::constant(1, 2).unwrap();
        for _ in 0..5 {
            expected = expected.mul(&base);
        }
        assert_eq!(base.pow(5), expected);
        assert_eq!(base.pow(0).to_string(), "1");
    }
}
