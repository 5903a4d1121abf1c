//! Equation transforms.
//!
//! * [`add_dummy`] appends a variable that occurs with coefficient zero.
//! * [`build_nonzero_equation`] is `x1·x2 − m² − x3² − x4² − x5² − x6² = 0`,
//!   solvable over a ring with `x1 = b` exactly when `b ≠ 0`; variable layout
//!   is `x1 = b`, `x2 = y`, `x3..x6 = y1..y4`.
//! * [`exclusion_product`] vanishes exactly on a finite point set.
//! * [`avoidance_equation`] combines the two into a single equation that is
//!   solvable iff `D = 0` has a solution outside the excluded points.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::codec::QTuple;
use crate::exactnum::{four_squares, Rational};
use crate::poly::{Equation, PolyError, Polynomial};
use crate::rings::{RingError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point {index} has length {found}, expected {expected}")]
    MixedLengths { index: usize, expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Values for the variables of some equation, in variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<Rational>);

impl Assignment {
    pub fn new(values: Vec<Rational>) -> Self {
        Assignment(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }

    pub fn to_tuple(&self) -> Option<QTuple> {
        QTuple::new(self.0.clone()).ok()
    }
}

impl From<QTuple> for Assignment {
    fn from(t: QTuple) -> Self {
        Assignment(t.into_components())
    }
}

/// Same left-hand side, one more variable.
pub fn add_dummy(eq: &Equation) -> Equation {
    eq.with_arity(eq.arity() + 1).expect("widening never drops variables")
}

pub fn build_nonzero_equation(m: &BigInt) -> Result<Equation, GadgetError> {
    if m.is_zero() {
        return Err(GadgetError::InvalidParameter("m must be non-zero".into()));
    }
    let var = |i| Polynomial::var(i, 6).expect("index within arity 6");
    let mut lhs = var(1).mul(&var(2)).sub(&Polynomial::constant(m * m, 6)?);
    for i in 3..=6 {
        lhs = lhs.sub(&var(i).square());
    }
    Ok(Equation::new(lhs, 6)?)
}

/// Witness `(y, y1, y2, y3, y4)` for the non-zero gadget at `x1 = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroWitness {
    pub y: Rational,
    pub squares: [Rational; 4],
}

impl NonzeroWitness {
    /// `(y, y1, y2, y3, y4)`.
    pub fn assignment(&self) -> Assignment {
        let mut values = vec![self.y.clone()];
        values.extend(self.squares.iter().cloned());
        Assignment(values)
    }

    /// `(b, y, y1, y2, y3, y4)`, a point of [`build_nonzero_equation`].
    pub fn with_b(&self, b: &Rational) -> Assignment {
        let mut values = vec![b.clone()];
        values.extend(self.assignment().into_values());
        Assignment(values)
    }
}

fn check_nonzero_integer_member(m: &BigInt, ring: &RingSpec) -> Result<(), GadgetError> {
    ring.require_subring()?;
    if m.is_zero() {
        return Err(GadgetError::InvalidParameter("m must be non-zero".into()));
    }
    if !ring.contains(&Rational::from_integer(m.clone())) {
        return Err(GadgetError::InvalidParameter(format!("m = {m} is not in {ring}")));
    }
    Ok(())
}

/// Constructive half of the non-zero gadget; `None` exactly when `b = 0`.
///
/// Writes `b = p/q` with `p > 0`, sets `y = m²·q`, then `y·b − m² = m²·(p−1)`
/// and the remaining variables are `m` times a four-square decomposition of
/// `p − 1`.
pub fn witness_nonzero(b: &Rational, m: &BigInt, ring: &RingSpec) -> Result<Option<NonzeroWitness>, GadgetError> {
    check_nonzero_integer_member(m, ring)?;
    if !ring.contains(b) {
        return Err(GadgetError::InvalidParameter(format!("b = {b} is not in {ring}")));
    }
    if b.is_zero() {
        return Ok(None);
    }
    let p = b.hat().abs();
    let q = if b.is_negative() { -b.bar() } else { b.bar().clone() };
    let m_sq = m * m;
    let y = &m_sq * &q;
    let target = (&y * b.hat() / b.bar() - &m_sq) / &m_sq;
    debug_assert_eq!(target, &p - 1);
    let t = four_squares(&target.to_biguint().expect("p ≥ 1"));
    let scaled = |t: &BigUint| Rational::from_integer(m * BigInt::from(t.clone()));
    Ok(Some(NonzeroWitness {
        y: Rational::from_integer(y),
        squares: [scaled(&t.t1), scaled(&t.t2), scaled(&t.t3), scaled(&t.t4)],
    }))
}

/// `∏_points Σ_i (x_i·bar(r_i) − hat(r_i))²` in `x1..xn`; the empty product is 1.
pub fn exclusion_product(points: &[QTuple], n: usize) -> Result<Polynomial, GadgetError> {
    let mut product = Polynomial::constant(1, n)?;
    for (index, point) in points.iter().enumerate() {
        if point.len() != n {
            return Err(GadgetError::MixedLengths { index, expected: n, found: point.len() });
        }
        let mut distance = Polynomial::zero(n)?;
        for (i, r) in point.components().iter().enumerate() {
            let linear = Polynomial::var(i + 1, n)?.scale(r.bar()).sub(&Polynomial::constant(r.hat().clone(), n)?);
            distance = distance.add(&linear.square());
        }
        product = product.mul(&distance);
    }
    Ok(product)
}

/// Is `D = 0` solvable in `Rⁿ` outside `excluded`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceQuery {
    pub equation: Equation,
    pub ring: RingSpec,
    pub excluded: Vec<QTuple>,
}

impl AvoidanceQuery {
    pub fn new(equation: Equation, ring: RingSpec, excluded: Vec<QTuple>) -> Result<Self, GadgetError> {
        let n = equation.arity();
        for (index, point) in excluded.iter().enumerate() {
            if point.len() != n {
                return Err(GadgetError::MixedLengths { index, expected: n, found: point.len() });
            }
        }
        Ok(AvoidanceQuery { equation, ring, excluded })
    }

    pub fn is_excluded(&self, point: &QTuple) -> bool {
        self.excluded.contains(point)
    }

    /// A solution of `D` that lies in the ring and outside the excluded set.
    pub fn accepts(&self, point: &QTuple) -> Result<bool, GadgetError> {
        Ok(point.components().iter().all(|c| self.ring.contains(c))
            && !self.is_excluded(point)
            && self.equation.is_solution(point.components())?)
    }

    /// The same question as a single equation in `n + 5` variables.
    pub fn flatten(&self, m: &BigInt) -> Result<Equation, GadgetError> {
        avoidance_equation(&self.equation, &self.excluded, m, &self.ring)
    }
}

/// `D² + (x_{n+1}·P − m² − Σ_{j=2..5} x_{n+j}²)²` where `P` is the exclusion
/// product of `points`.
///
/// Over a subring of `ℚ` a sum of two squares vanishes only if both do, so a
/// zero forces `D(x) = 0` and, through the non-zero gadget, `P(x) ≠ 0`.
pub fn avoidance_equation(
    eq: &Equation,
    points: &[QTuple],
    m: &BigInt,
    ring: &RingSpec,
) -> Result<Equation, GadgetError> {
    check_nonzero_integer_member(m, ring)?;
    let n = eq.arity();
    for (index, point) in points.iter().enumerate() {
        if !point.components().iter().all(|c| ring.contains(c)) {
            return Err(GadgetError::InvalidParameter(format!("excluded point {index} = {point} is not in {ring}")));
        }
    }
    let arity = n + 5;
    let d = eq.lhs().with_arity(arity)?;
    let p = exclusion_product(points, n)?.with_arity(arity)?;
    let mut gadget = Polynomial::var(n + 1, arity)?.mul(&p).sub(&Polynomial::constant(m * m, arity)?);
    for j in 2..=5 {
        gadget = gadget.sub(&Polynomial::var(n + j, arity)?.square());
    }
    Ok(Equation::new(d.square().add(&gadget.square()), arity)?)
}

/// Extends a solution `x` of `D` outside `points` to a zero of the avoidance
/// equation. `None` if `x` is not such a solution.
pub fn avoidance_witness(
    eq: &Equation,
    points: &[QTuple],
    m: &BigInt,
    ring: &RingSpec,
    x: &QTuple,
) -> Result<Option<Assignment>, GadgetError> {
    let query = AvoidanceQuery::new(eq.clone(), ring.clone(), points.to_vec())?;
    if x.len() != eq.arity() || !query.accepts(x)? {
        return Ok(None);
    }
    let b = exclusion_product(points, eq.arity())?.evaluate(x.components())?;
    let Some(witness) = witness_nonzero(&b, m, ring)? else {
        return Ok(None);
    };
    let mut values = x.components().to_vec();
    values.extend(witness.assignment().into_values());
    Ok(Some(Assignment(values)))
}
