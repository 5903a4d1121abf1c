//! Prime-exponent coding of rational tuples.
//!
//! For `x ≥ 0`, factor `x + 1` over the consecutive prime triples
//! `(p_i, q_i, r_i)` and read exponents `(α_i, β_i, γ_i)`; component `i` of the
//! decoded tuple is `(-1)^α_i · β_i / (γ_i + 1)`. Every tuple in `ℚⁿ` is hit.
//! Composing with a projection onto a ring (identity on members, all-zero
//! tuple elsewhere) gives a surjection onto `Rⁿ`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::exactnum::{first_primes, strip_factor, Rational};
use crate::rings::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("tuples must have at least one component")]
    EmptyTuple,
    #[error("tuple length must be at least 1")]
    ZeroLength,
}

/// A non-empty tuple of rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QTuple(Vec<Rational>);

impl QTuple {
    pub fn new(components: Vec<Rational>) -> Result<Self, CodecError> {
        if components.is_empty() {
            return Err(CodecError::EmptyTuple);
        }
        Ok(QTuple(components))
    }

    pub fn zeros(n: usize) -> Result<Self, CodecError> {
        QTuple::new(vec![Rational::zero(); n])
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, CodecError> {
        QTuple::new(values.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Rational> {
        self.0
    }
}

impl std::ops::Index<usize> for QTuple {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for QTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exponents `(α_i, β_i, γ_i)` of the first `n` prime triples in `x + 1`.
pub fn triple_exponents(x: &BigUint, n: usize) -> Vec<(u64, u64, u64)> {
    let primes = first_primes(3 * n);
    let mut rest = x + 1u32;
    primes
        .chunks_exact(3)
        .map(|t| {
            let alpha = strip_factor(&mut rest, t[0]);
            let beta = strip_factor(&mut rest, t[1]);
            let gamma = strip_factor(&mut rest, t[2]);
            (alpha, beta, gamma)
        })
        .collect()
}

/// The coding surjection `ℕ → ℚⁿ`.
pub fn decode_tuple(x: &BigUint, n: usize) -> Result<QTuple, CodecError> {
    if n == 0 {
        return Err(CodecError::ZeroLength);
    }
    let components = triple_exponents(x, n)
        .into_iter()
        .map(|(alpha, beta, gamma)| {
            let sign = if alpha % 2 == 1 { -1 } else { 1 };
            Rational::new(BigInt::from(sign) * BigInt::from(beta), BigInt::from(gamma) + 1).expect("γ + 1 is positive")
        })
        .collect();
    QTuple::new(components)
}

pub fn decode_index(x: u64, n: usize) -> Result<QTuple, CodecError> {
    decode_tuple(&BigUint::from(x), n)
}

/// A preimage of `t` under [`decode_tuple`]: the unique one built from the
/// lowest-terms form of each component.
pub fn encode_tuple(t: &QTuple) -> BigUint {
    let primes = first_primes(3 * t.len());
    let mut product = BigUint::one();
    for (component, triple) in t.components().iter().zip(primes.chunks_exact(3)) {
        if component.is_zero() {
            continue;
        }
        let alpha = u32::from(component.is_negative());
        let beta = exponent(component.hat().abs());
        let gamma = exponent(component.bar() - 1u32);
        product *= BigUint::from(triple[0]).pow(alpha);
        product *= BigUint::from(triple[1]).pow(beta);
        product *= BigUint::from(triple[2]).pow(gamma);
    }
    product - 1u32
}

fn exponent(value: BigInt) -> u32 {
    value.to_u32().expect("component too large to encode as a prime exponent")
}

/// Identity on tuples inside the target, all-zero tuple otherwise.
///
/// For [`RingSpec::N`] this is the projection onto `ℕⁿ`.
pub fn project(t: &QTuple, target: &RingSpec) -> QTuple {
    if t.components().iter().all(|c| target.contains(c)) {
        t.clone()
    } else {
        QTuple::zeros(t.len()).expect("same non-zero length")
    }
}

/// The `i`-th tuple of a surjection `ℕ → Rⁿ`.
///
/// Subrings use `project ∘ decode`. For `ℕ` each component of the projected
/// tuple is a natural number `k`, which is then sent to the `k`-th element of
/// `ℕ`'s own enumeration.
pub fn surjection(ring: &RingSpec, n: usize, i: &BigUint) -> Result<QTuple, CodecError> {
    let projected = project(&decode_tuple(i, n)?, ring);
    if !matches!(ring, RingSpec::N) {
        return Ok(projected);
    }
    let components = projected
        .components()
        .iter()
        .map(|k| {
            let k = k.hat().to_biguint().expect("component of a natural tuple");
            crate::rings::enumerate_element(ring, &k)
        })
        .collect();
    QTuple::new(components)
}

pub fn surjection_index(ring: &RingSpec, n: usize, i: u64) -> Result<QTuple, CodecError> {
    surjection(ring, n, &BigUint::from(i))
}
