//! Subrings of `ℚ` with decidable membership, plus `ℕ`.
//!
//! `ℕ` is not a ring; it is carried here because the solvability decider only
//! needs an infinite set with a computable enumeration. Operations that rely
//! on ring closure reject it.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::codec::{decode_tuple, project};
use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("c*Z needs a non-zero c")]
    ZeroMultiplier,
    #[error("Z[1/m] needs m >= 2, got {0}")]
    InvalidLocalization(BigUint),
    #[error("{0} is not a subring of Q")]
    NotASubring(RingSpec),
    #[error("unrecognised ring `{0}` (expected Z, Q, N, Z[1/m] or c*Z)")]
    Unrecognised(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Z,
    /// `cℤ` for a non-zero `c`; a ring without 1 when `|c| > 1`.
    MultiplesOf(BigInt),
    /// `ℤ[1/m]` for `m ≥ 2`.
    Localization(BigUint),
    Q,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Direct,
    Constructive,
}

/// A non-zero integer in the ring, with the enumeration index that produced it
/// when found constructively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroInteger {
    pub value: BigInt,
    pub index: Option<u64>,
}

impl RingSpec {
    pub fn multiples_of(c: impl Into<BigInt>) -> Result<Self, RingError> {
        let c = c.into();
        if c.is_zero() {
            return Err(RingError::ZeroMultiplier);
        }
        Ok(RingSpec::MultiplesOf(c))
    }

    pub fn localization(m: impl Into<BigUint>) -> Result<Self, RingError> {
        let m = m.into();
        if m < BigUint::from(2u32) {
            return Err(RingError::InvalidLocalization(m));
        }
        Ok(RingSpec::Localization(m))
    }

    /// Checks the variant parameters; constructors already enforce this.
    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            RingSpec::MultiplesOf(c) if c.is_zero() => Err(RingError::ZeroMultiplier),
            RingSpec::Localization(m) if *m < BigUint::from(2u32) => Err(RingError::InvalidLocalization(m.clone())),
            _ => Ok(()),
        }
    }

    /// True for every variant except `ℕ`.
    pub fn is_subring(&self) -> bool {
        !matches!(self, RingSpec::N)
    }

    pub fn require_subring(&self) -> Result<(), RingError> {
        self.validate()?;
        if self.is_subring() {
            Ok(())
        } else {
            Err(RingError::NotASubring(self.clone()))
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        contains(self, r)
    }
}

pub fn contains(ring: &RingSpec, r: &Rational) -> bool {
    match ring {
        RingSpec::Z => r.is_integer(),
        RingSpec::MultiplesOf(c) => r.is_integer() && r.hat().is_multiple_of(c),
        RingSpec::Localization(m) => {
            let m = BigInt::from(m.clone());
            let mut bar = r.bar().clone();
            while !bar.is_one() {
                let g = bar.gcd(&m);
                if g.is_one() {
                    return false;
                }
                bar /= g;
            }
            true
        }
        RingSpec::Q => true,
        RingSpec::N => r.is_integer() && !r.hat().is_negative(),
    }
}

/// A non-zero integer belonging to the ring.
///
/// `Direct` reads it off the variant. `Constructive` scans the enumeration
/// `i ↦ project(decode(i, 1), ring)` for the first non-zero integer.
pub fn find_nonzero_integer(ring: &RingSpec, mode: SearchMode) -> Result<NonzeroInteger, RingError> {
    ring.require_subring()?;
    match mode {
        SearchMode::Direct => {
            let value = match ring {
                RingSpec::MultiplesOf(c) => c.clone(),
                _ => BigInt::one(),
            };
            Ok(NonzeroInteger { value, index: None })
        }
        SearchMode::Constructive => {
            for i in 0u64.. {
                let first = enumerate_element(ring, &BigUint::from(i));
                if first.is_integer() && !first.is_zero() {
                    return Ok(NonzeroInteger { value: first.hat().clone(), index: Some(i) });
                }
            }
            unreachable!("every non-zero subring contains a non-zero integer")
        }
    }
}

/// The `k`-th element of a computable enumeration of the ring (or of `ℕ`).
pub fn enumerate_element(ring: &RingSpec, k: &BigUint) -> Rational {
    let decoded = decode_tuple(k, 1).expect("length 1");
    project(&decoded, ring).into_components().swap_remove(0)
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Z => write!(f, "Z"),
            RingSpec::MultiplesOf(c) => write!(f, "{c}*Z"),
            RingSpec::Localization(m) => write!(f, "Z[1/{m}]"),
            RingSpec::Q => write!(f, "Q"),
            RingSpec::N => write!(f, "N"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || RingError::Unrecognised(s.to_string());
        match compact.as_str() {
            "Z" => return Ok(RingSpec::Z),
            "Q" => return Ok(RingSpec::Q),
            "N" => return Ok(RingSpec::N),
            _ => {}
        }
        if let Some(m) = compact.strip_prefix("Z[1/").and_then(|rest| rest.strip_suffix(']')) {
            if m.is_empty() || !m.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            return RingSpec::localization(m.parse::<BigUint>().map_err(|_| bad())?);
        }
        if let Some(c) = compact.strip_suffix("*Z") {
            let digits = c.strip_prefix('-').unwrap_or(c);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            return RingSpec::multiples_of(c.parse::<BigInt>().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ring(s: &str) -> RingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&ring("Z[1/2]"), &q(3, 4)));
        assert!(!contains(&ring("2*Z"), &q(3, 1)));
        assert!(contains(&RingSpec::Q, &q(-7, 3)));
        assert!(!contains(&ring("Z[1/6]"), &q(1, 5)));
        assert!(contains(&ring("Z[1/6]"), &q(5, 72)));
        assert!(contains(&RingSpec::N, &q(0, 1)));
        assert!(!contains(&RingSpec::N, &q(-1, 1)));
        assert!(!contains(&RingSpec::Z, &q(1, 2)));
        assert!(contains(&ring("-3*Z"), &q(6, 1)));
    }

    #[test]
    fn ring_text_forms() {
        for s in ["Z", "Q", "N", "Z[1/6]", "3*Z", "-2*Z"] {
            assert_eq!(ring(s).to_string(), s);
        }
        assert_eq!(ring(" Z [1/ 10] ").to_string(), "Z[1/10]");
        assert_eq!("Z[1/1]".parse::<RingSpec>(), Err(RingError::InvalidLocalization(BigUint::one())));
        assert_eq!("0*Z".parse::<RingSpec>(), Err(RingError::ZeroMultiplier));
        assert!("R".parse::<RingSpec>().is_err());
        assert!("2Z".parse::<RingSpec>().is_err());
    }

    #[test]
    fn find_nonzero_integer_examples() {
        let z = find_nonzero_integer(&RingSpec::Z, SearchMode::Constructive).unwrap();
        assert_eq!(z, NonzeroInteger { value: BigInt::from(1), index: Some(2) });
        let two = find_nonzero_integer(&ring("2*Z"), SearchMode::Constructive).unwrap();
        assert_eq!(two, NonzeroInteger { value: BigInt::from(2), index: Some(8) });
        let three = find_nonzero_integer(&ring("3*Z"), SearchMode::Direct).unwrap();
        assert_eq!(three.value, BigInt::from(3));
        assert_eq!(find_nonzero_integer(&RingSpec::N, SearchMode::Direct), Err(RingError::NotASubring(RingSpec::N)));
    }

    #[test]
    fn enumerate_element_examples() {
        assert_eq!(enumerate_element(&RingSpec::Z, &BigUint::from(0u32)), q(0, 1));
        assert_eq!(enumerate_element(&RingSpec::Z, &BigUint::from(2u32)), q(1, 1));
        assert_eq!(enumerate_element(&ring("Z[1/2]"), &BigUint::from(224u32)), q(0, 1));
        assert_eq!(enumerate_element(&ring("Z[1/2]"), &BigUint::from(14u32)), q(1, 2));
    }

    #[test]
    fn localization_matches_bounded_power_oracle() {
        for m in [2u64, 6, 10, 12] {
            let spec = RingSpec::localization(m).unwrap();
            // bar divides m^64 exactly when every prime factor of bar divides m
            let m64 = num_traits::pow(BigInt::from(m), 64);
            for bar in 1..=2000i64 {
                let oracle = (&m64 % BigInt::from(bar)).is_zero();
                assert_eq!(contains(&spec, &q(1, bar)), oracle, "m = {m}, bar = {bar}");
            }
        }
    }
}
