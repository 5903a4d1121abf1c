//! Exact integer and rational arithmetic.
//!
//! Everything downstream works on [`Rational`] values that are kept in the
//! unique reduced form `hat / bar` with `bar > 0` and `gcd(|hat|, bar) = 1`.
//! This module also provides the canonical four-square decomposition and the
//! partition of the primes into consecutive triples used by the codec.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("denominator must be non-zero")]
    InvalidDenominator,
    #[error("prime triples are indexed from 1, got {0}")]
    InvalidTripleIndex(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal `{0}`")]
    InvalidLiteral(String),
}

/// Reduces `a / b` to lowest terms with a positive denominator.
pub fn lowest_terms(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt), ExactError> {
    if b.is_zero() {
        return Err(ExactError::InvalidDenominator);
    }
    if a.is_zero() {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    let g = a.gcd(b);
    let (mut hat, mut bar) = (a / &g, b / &g);
    if bar.is_negative() {
        hat = -hat;
        bar = -bar;
    }
    Ok((hat, bar))
}

/// An exact rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    hat: BigInt,
    bar: BigInt,
}

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, ExactError> {
        let (hat, bar) = lowest_terms(&numerator.into(), &denominator.into())?;
        Ok(Rational { hat, bar })
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational { hat: n.into(), bar: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Numerator of the reduced form.
    pub fn hat(&self) -> &BigInt {
        &self.hat
    }

    /// Denominator of the reduced form; always at least 1.
    pub fn bar(&self) -> &BigInt {
        &self.bar
    }

    pub fn is_zero(&self) -> bool {
        self.hat.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.bar.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.hat.is_negative()
    }

    /// The integer value, if this rational is an integer.
    pub fn to_integer(&self) -> Option<&BigInt> {
        self.is_integer().then_some(&self.hat)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Rational::new(&self.hat * &rhs.bar, &self.bar * &rhs.hat)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        // Powers of a reduced fraction stay reduced.
        Rational {
            hat: num_traits::pow(self.hat.clone(), exp as usize),
            bar: num_traits::pow(self.bar.clone(), exp as usize),
        }
    }

    fn from_parts(numerator: BigInt, denominator: BigInt) -> Rational {
        Rational::new(numerator, denominator).expect("denominator of a product of non-zero denominators")
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if self.bar == rhs.bar {
            return Rational::from_parts(&self.hat + &rhs.hat, self.bar.clone());
        }
        Rational::from_parts(&self.hat * &rhs.bar + &rhs.hat * &self.bar, &self.bar * &rhs.bar)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if self.bar.is_one() && rhs.bar.is_one() {
            return Rational::from_integer(&self.hat * &rhs.hat);
        }
        Rational::from_parts(&self.hat * &rhs.hat, &self.bar * &rhs.bar)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { hat: -&self.hat, bar: self.bar.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { hat: -self.hat, bar: self.bar }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.hat * &other.bar).cmp(&(&other.hat * &self.bar))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bar.is_one() {
            write!(f, "{}", self.hat)
        } else {
            write!(f, "{}/{}", self.hat, self.bar)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_signed(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn parse_unsigned(text: &str) -> Option<BigInt> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `a` or `a/b`; only the numerator may carry a sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let bad = || ExactError::InvalidLiteral(s.to_string());
        match text.split_once('/') {
            None => parse_signed(text).map(Rational::from_integer).ok_or_else(bad),
            Some((num, den)) => {
                let num = parse_signed(num.trim()).ok_or_else(bad)?;
                let den = parse_unsigned(den.trim()).ok_or_else(bad)?;
                Rational::new(num, den)
            }
        }
    }
}

/// Four non-negative integers in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FourSquareWitness {
    pub t1: BigUint,
    pub t2: BigUint,
    pub t3: BigUint,
    pub t4: BigUint,
}

impl FourSquareWitness {
    pub fn components(&self) -> [&BigUint; 4] {
        [&self.t1, &self.t2, &self.t3, &self.t4]
    }

    pub fn sum_of_squares(&self) -> BigUint {
        self.components().iter().map(|t| *t * *t).sum()
    }
}

impl fmt::Display for FourSquareWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.t1, self.t2, self.t3, self.t4)
    }
}

fn ceil_sqrt(x: &BigUint) -> BigUint {
    let s = x.sqrt();
    if &(&s * &s) < x {
        s + 1u32
    } else {
        s
    }
}

/// Largest argument for which [`four_squares`] returns the canonical tuple.
pub const CANONICAL_FOUR_SQUARES_LIMIT: u64 = 100_000_000;

/// A non-increasing `(t1, t2, t3, t4)` with `t1² + t2² + t3² + t4² = n`.
///
/// Up to [`CANONICAL_FOUR_SQUARES_LIMIT`] this is the lexicographically
/// smallest such tuple, found by bounded exhaustive search. That search costs
/// about `√n` steps, so larger arguments take a greedy decomposition instead:
/// deterministic and exact, but not necessarily the smallest tuple.
pub fn four_squares(n: &BigUint) -> FourSquareWitness {
    if n > &BigUint::from(CANONICAL_FOUR_SQUARES_LIMIT) {
        return greedy_four_squares(n);
    }
    let one = BigUint::one();
    // Non-increasing order forces t1² ≥ n/4, t2² ≥ r1/3 and t3² ≥ r2/2.
    let mut t1 = ceil_sqrt(&n.div_ceil(&BigUint::from(4u32)));
    let hi1 = n.sqrt();
    while t1 <= hi1 {
        let r1 = n - &t1 * &t1;
        let mut t2 = ceil_sqrt(&r1.div_ceil(&BigUint::from(3u32)));
        let hi2 = r1.sqrt().min(t1.clone());
        while t2 <= hi2 {
            let r2 = &r1 - &t2 * &t2;
            let mut t3 = ceil_sqrt(&r2.div_ceil(&BigUint::from(2u32)));
            let hi3 = r2.sqrt().min(t2.clone());
            while t3 <= hi3 {
                let r3 = &r2 - &t3 * &t3;
                let t4 = r3.sqrt();
                if &t4 * &t4 == r3 && t4 <= t3 {
                    return FourSquareWitness { t1, t2, t3, t4 };
                }
                t3 += &one;
            }
            t2 += &one;
        }
        t1 += &one;
    }
    unreachable!("every natural number is a sum of four squares")
}

/// `r` is not of the form `4^a·(8b + 7)`, so it is a sum of three squares.
fn is_three_square_sum(r: &BigUint) -> bool {
    if r.is_zero() {
        return true;
    }
    let mut r = r.clone();
    while (&r % 4u32).is_zero() {
        r >>= 2;
    }
    &r % 8u32 != BigUint::from(7u32)
}

fn two_squares(r: &BigUint) -> Option<(BigUint, BigUint)> {
    let one = BigUint::one();
    let lo = ceil_sqrt(&r.div_ceil(&BigUint::from(2u32)));
    let mut a = r.sqrt();
    while a >= lo {
        let rest = r - &a * &a;
        let b = rest.sqrt();
        if &b * &b == rest {
            return Some((a, b));
        }
        if a.is_zero() {
            break;
        }
        a -= &one;
    }
    None
}

/// Takes the largest squares first: after two steps the remainder is about
/// `n^(1/4)`, small enough to split into two squares by direct search.
///
/// Factors of 4 are split off first. A multiple of 8 forces all four squares
/// to be even, which the greedy step would only discover after a long walk.
fn greedy_four_squares(n: &BigUint) -> FourSquareWitness {
    let shift = if n.is_zero() { 0 } else { n.trailing_zeros().unwrap_or(0) / 2 };
    let reduced = n >> (2 * shift);
    let w = greedy_four_squares_reduced(&reduced);
    FourSquareWitness { t1: w.t1 << shift, t2: w.t2 << shift, t3: w.t3 << shift, t4: w.t4 << shift }
}

fn greedy_four_squares_reduced(n: &BigUint) -> FourSquareWitness {
    let one = BigUint::one();
    let mut t1 = n.sqrt();
    loop {
        let r1 = n - &t1 * &t1;
        if is_three_square_sum(&r1) {
            let mut t2 = r1.sqrt();
            for _ in 0..64 {
                let r2 = &r1 - &t2 * &t2;
                if let Some((t3, t4)) = two_squares(&r2) {
                    let mut t = [t1, t2, t3, t4];
                    t.sort_by(|a, b| b.cmp(a));
                    let [t1, t2, t3, t4] = t;
                    return FourSquareWitness { t1, t2, t3, t4 };
                }
                if t2.is_zero() {
                    break;
                }
                t2 -= &one;
            }
        }
        t1 -= &one;
    }
}

/// The `i`-th consecutive triple of primes `(p_i, q_i, r_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeTriple {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

/// Primes 3i−2, 3i−1 and 3i (1-based) as a triple.
pub fn prime_triple(i: u64) -> Result<PrimeTriple, ExactError> {
    if i == 0 {
        return Err(ExactError::InvalidTripleIndex(0));
    }
    let count = usize::try_from(3 * i).expect("triple index fits in memory");
    let primes = first_primes(count);
    let base = count - 3;
    Ok(PrimeTriple { p: primes[base], q: primes[base + 1], r: primes[base + 2] })
}

/// Sieve of Eratosthenes that grows its range on demand.
#[derive(Debug, Default)]
pub struct PrimeSieve {
    primes: Vec<u64>,
    limit: u64,
}

impl PrimeSieve {
    pub const fn new() -> Self {
        PrimeSieve { primes: Vec::new(), limit: 1 }
    }

    /// Ensures at least `count` primes are known and returns them.
    pub fn first(&mut self, count: usize) -> &[u64] {
        while self.primes.len() < count {
            self.extend();
        }
        &self.primes[..count]
    }

    fn extend(&mut self) {
        let lo = self.limit + 1;
        let hi = (self.limit * 2).max(64);
        let mut composite = vec![false; (hi - lo + 1) as usize];
        if self.primes.is_empty() {
            // Initial segment [2, hi]: plain Eratosthenes.
            let mut p = 2;
            while p * p <= hi {
                if !composite[(p - lo) as usize] {
                    let mut multiple = p * p;
                    while multiple <= hi {
                        composite[(multiple - lo) as usize] = true;
                        multiple += p;
                    }
                }
                p += 1;
            }
        } else {
            // √hi ≤ hi/2 = limit, so every sieving prime is already known.
            for &p in &self.primes {
                if p * p > hi {
                    break;
                }
                let mut multiple = lo.div_ceil(p) * p;
                while multiple <= hi {
                    composite[(multiple - lo) as usize] = true;
                    multiple += p;
                }
            }
        }
        self.primes.extend(
            composite
                .iter()
                .enumerate()
                .filter(|&(offset, &c)| !c && lo + offset as u64 >= 2)
                .map(|(offset, _)| lo + offset as u64),
        );
        self.limit = hi;
    }
}

static SIEVE: Mutex<PrimeSieve> = Mutex::new(PrimeSieve::new());

/// The first `count` primes in increasing order, from a process-wide cache.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut sieve = SIEVE.lock().unwrap_or_else(|e| e.into_inner());
    sieve.first(count).to_vec()
}

/// Multiplicity of the prime `p` in `n` (`n > 0`), dividing it out of `n`.
pub fn strip_factor(n: &mut BigUint, p: u64) -> u64 {
    let p = BigUint::from(p);
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn lowest_terms_examples() {
        assert_eq!(lowest_terms(&big(0), &big(7)).unwrap(), (big(0), big(1)));
        assert_eq!(lowest_terms(&big(-4), &big(6)).unwrap(), (big(-2), big(3)));
        assert_eq!(lowest_terms(&big(7), &big(1)).unwrap(), (big(7), big(1)));
        assert_eq!(lowest_terms(&big(4), &big(-6)).unwrap(), (big(-2), big(3)));
        assert_eq!(lowest_terms(&big(3), &big(0)), Err(ExactError::InvalidDenominator));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!("-6/8".parse::<Rational>().unwrap().to_string(), "-3/4");
        assert_eq!("12".parse::<Rational>().unwrap().to_string(), "12");
        assert_eq!("0/5".parse::<Rational>().unwrap().to_string(), "0");
        assert!("3/-4".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let half = Rational::new(1, 2).unwrap();
        let third = Rational::new(1, 3).unwrap();
        assert_eq!(&half + &third, Rational::new(5, 6).unwrap());
        assert_eq!(&half - &half, Rational::zero());
        assert_eq!(&half * &Rational::from(2), Rational::one());
        assert_eq!(half.checked_div(&third).unwrap(), Rational::new(3, 2).unwrap());
        assert_eq!(half.checked_div(&Rational::zero()), Err(ExactError::DivisionByZero));
        assert!(third < half);
        assert_eq!(Rational::new(-2, 3).unwrap().pow(2), Rational::new(4, 9).unwrap());
    }

    // Independent oracle: all non-increasing tuples, minimum taken lexicographically.
    fn brute_four_squares(n: u64) -> (u64, u64, u64, u64) {
        let hi = (n as f64).sqrt() as u64 + 1;
        let mut best = None;
        for a in 0..=hi {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        if a * a + b * b + c * c + d * d == n {
                            let t = (a, b, c, d);
                            if best.is_none_or(|x| t < x) {
                                best = Some(t);
                            }
                        }
                    }
                }
            }
        }
        best.unwrap()
    }

    fn fs(n: u64) -> (u64, u64, u64, u64) {
        let w = four_squares(&BigUint::from(n));
        let c = w.components().map(|t| t.to_u64().unwrap());
        (c[0], c[1], c[2], c[3])
    }

    #[test]
    fn four_squares_examples() {
        assert_eq!(fs(0), (0, 0, 0, 0));
        assert_eq!(fs(3), (1, 1, 1, 0));
        assert_eq!(fs(7), (2, 1, 1, 1));
        assert_eq!(fs(4), (1, 1, 1, 1));
    }

    #[test]
    fn four_squares_matches_brute_force() {
        for n in 0..=300 {
            assert_eq!(fs(n), brute_four_squares(n), "n = {n}");
        }
    }

    #[test]
    fn four_squares_identity_up_to_ten_thousand() {
        for n in 0..=10_000u64 {
            let w = four_squares(&BigUint::from(n));
            assert_eq!(w.sum_of_squares(), BigUint::from(n));
            assert!(w.t1 >= w.t2 && w.t2 >= w.t3 && w.t3 >= w.t4);
        }
    }

    #[test]
    fn four_squares_beyond_canonical_range() {
        let mut n = BigUint::from(CANONICAL_FOUR_SQUARES_LIMIT) + 1u32;
        let step = BigUint::from(10u32).pow(7) + 3u32;
        for _ in 0..30 {
            let w = four_squares(&n);
            assert_eq!(w.sum_of_squares(), n);
            assert!(w.t1 >= w.t2 && w.t2 >= w.t3 && w.t3 >= w.t4);
            n = &n * 7u32 + &step;
        }
        let big = BigUint::from(7u32) * BigUint::from(4u32).pow(40);
        assert_eq!(four_squares(&big).sum_of_squares(), big);
    }

    #[test]
    fn prime_triple_examples() {
        assert_eq!(prime_triple(1).unwrap(), PrimeTriple { p: 2, q: 3, r: 5 });
        assert_eq!(prime_triple(2).unwrap(), PrimeTriple { p: 7, q: 11, r: 13 });
        assert_eq!(prime_triple(3).unwrap(), PrimeTriple { p: 17, q: 19, r: 23 });
        assert_eq!(prime_triple(0), Err(ExactError::InvalidTripleIndex(0)));
    }

    #[test]
    fn triples_concatenate_to_first_300_primes() {
        let mut expected = Vec::new();
        let mut n = 2u64;
        while expected.len() < 300 {
            if (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)) {
                expected.push(n);
            }
            n += 1;
        }
        let got: Vec<u64> = (1..=100)
            .flat_map(|i| {
                let t = prime_triple(i).unwrap();
                [t.p, t.q, t.r]
            })
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn sieve_grows_across_segments() {
        let mut sieve = PrimeSieve::new();
        assert_eq!(sieve.first(5), &[2, 3, 5, 7, 11]);
        assert_eq!(sieve.first(1000)[999], 7919);
    }

    #[test]
    fn strip_factor_counts_multiplicity() {
        let mut n = BigUint::from(225u32);
        assert_eq!(strip_factor(&mut n, 3), 2);
        assert_eq!(strip_factor(&mut n, 5), 2);
        assert_eq!(strip_factor(&mut n, 7), 0);
        assert_eq!(n, BigUint::one());
    }
}
