//! Semi-decision engines.
//!
//! [`semidecide_finite`] halts exactly when an equation has finitely many
//! solutions, given an oracle for "is `D = 0` solvable outside this finite
//! set". [`decide_solvability`] decides solvability given a computable list of
//! all equations with finitely many solutions, by interleaving witness search
//! with a scan of the list for `D` with one extra dummy variable.
//!
//! Both are driven by an explicit budget; [`EngineOutcome::BudgetExhausted`]
//! is a normal result, not an error.

use std::cell::RefCell;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::codec::{surjection, CodecError, QTuple};
use crate::exactnum::Rational;
use crate::gadgets::{add_dummy, AvoidanceQuery, GadgetError};
use crate::parser::render_equation;
use crate::poly::{eq_canonical_equal, Equation, Monomial, PolyError};
use crate::rings::{enumerate_element, RingError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle validation failed: {0}")]
    Validation(String),
    #[error("oracle cannot answer this query: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("a finite-solution list needs at least one equation")]
    Empty,
    #[error("list entry {index} has a solution beyond its declared bound: {witness}")]
    Invalid { index: usize, witness: QTuple },
    #[error("{0}")]
    Source(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    List(#[from] ListError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    /// A solution exists outside the excluded set; `witness` is one when known.
    Solvable {
        witness: Option<QTuple>,
    },
    Unsolvable,
}

impl Answer {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Answer::Solvable { .. })
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Solvable { .. } => write!(f, "solvable"),
            Answer::Unsolvable => write!(f, "unsolvable"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Table,
    BoundedSearch,
    UnivariateLinear,
}

/// Answers avoidance queries for some fragment of equations.
pub trait Oracle {
    fn kind(&self) -> OracleKind;

    fn answer(&self, query: &AvoidanceQuery) -> Result<Answer, OracleError>;
}

/// The declared solution set of a table oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    /// Exactly these tuples.
    Finite(Vec<QTuple>),
    /// Infinitely many solutions, of which `samples` are some.
    Infinite { samples: Vec<QTuple> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleSpec {
    Table { equation: Equation, ring: RingSpec, solutions: SolutionSet },
    UnivariateLinear,
    BoundedSearch { bound: u64 },
}

pub fn make_oracle(spec: OracleSpec) -> Result<Box<dyn Oracle>, OracleError> {
    Ok(match spec {
        OracleSpec::Table { equation, ring, solutions } => Box::new(TableOracle::new(equation, ring, solutions)?),
        OracleSpec::UnivariateLinear => Box::new(UnivariateLinearOracle),
        OracleSpec::BoundedSearch { bound } => Box::new(BoundedSearchOracle::new(bound)),
    })
}

/// Exact answers from a stored solution set.
#[derive(Debug, Clone)]
pub struct TableOracle {
    equation: Equation,
    ring: RingSpec,
    solutions: SolutionSet,
}

impl TableOracle {
    /// Checks that every listed tuple is a solution lying in the ring.
    pub fn new(equation: Equation, ring: RingSpec, solutions: SolutionSet) -> Result<Self, OracleError> {
        let listed = match &solutions {
            SolutionSet::Finite(s) => s,
            SolutionSet::Infinite { samples } => samples,
        };
        for t in listed {
            if t.len() != equation.arity() {
                return Err(OracleError::Validation(format!(
                    "{t} has length {}, equation has arity {}",
                    t.len(),
                    equation.arity()
                )));
            }
            if !t.components().iter().all(|c| ring.contains(c)) {
                return Err(OracleError::Validation(format!("{t} is not in {ring}")));
            }
            let value = equation.evaluate(t.components()).map_err(GadgetError::from)?;
            if !value.is_zero() {
                return Err(OracleError::Validation(format!("{t} is not a solution (value {value})")));
            }
        }
        let solutions = match solutions {
            SolutionSet::Finite(mut s) => {
                s.sort();
                s.dedup();
                SolutionSet::Finite(s)
            }
            other => other,
        };
        Ok(TableOracle { equation, ring, solutions })
    }

    pub fn solutions(&self) -> &SolutionSet {
        &self.solutions
    }
}

impl Oracle for TableOracle {
    fn kind(&self) -> OracleKind {
        OracleKind::Table
    }

    fn answer(&self, query: &AvoidanceQuery) -> Result<Answer, OracleError> {
        if !eq_canonical_equal(&query.equation, &self.equation) || query.ring != self.ring {
            return Err(OracleError::Unsupported(format!(
                "table holds {} over {}",
                render_equation(&self.equation),
                self.ring
            )));
        }
        match &self.solutions {
            SolutionSet::Finite(s) => Ok(match s.iter().find(|t| !query.is_excluded(t)) {
                Some(t) => Answer::Solvable { witness: Some(t.clone()) },
                None => Answer::Unsolvable,
            }),
            SolutionSet::Infinite { samples } => {
                Ok(Answer::Solvable { witness: samples.iter().find(|t| !query.is_excluded(t)).cloned() })
            }
        }
    }
}

/// Exact oracle for `a·x1 + b = 0` in one variable.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnivariateLinearOracle;

impl Oracle for UnivariateLinearOracle {
    fn kind(&self) -> OracleKind {
        OracleKind::UnivariateLinear
    }

    fn answer(&self, query: &AvoidanceQuery) -> Result<Answer, OracleError> {
        let lhs = query.equation.lhs();
        if query.equation.arity() != 1 || lhs.degree() > 1 {
            return Err(OracleError::Unsupported(format!(
                "{} is not linear in one variable",
                render_equation(&query.equation)
            )));
        }
        let a = lhs.coefficient(&Monomial::var(1, 1));
        let b = lhs.coefficient(&Monomial::one());
        if !a.is_zero() {
            let root = Rational::new(-b, a).expect("a is non-zero");
            let point = QTuple::new(vec![root.clone()]).expect("one component");
            return Ok(if query.ring.contains(&root) && !query.is_excluded(&point) {
                Answer::Solvable { witness: Some(point) }
            } else {
                Answer::Unsolvable
            });
        }
        if !b.is_zero() {
            return Ok(Answer::Unsolvable);
        }
        // 0 = 0: every element solves it and the ring is infinite, so some
        // enumerated element escapes the finite excluded set.
        for k in 0u64.. {
            let r = enumerate_element(&query.ring, &BigUint::from(k));
            let point = QTuple::new(vec![r]).expect("one component");
            if !query.is_excluded(&point) {
                return Ok(Answer::Solvable { witness: Some(point) });
            }
        }
        unreachable!("an infinite ring is not covered by a finite set")
    }
}

/// Searches the first `bound` tuples of the ring enumeration.
///
/// `Solvable` answers carry a checked witness. `Unsolvable` only means no
/// witness was found within the bound.
#[derive(Debug, Clone, Copy)]
pub struct BoundedSearchOracle {
    bound: u64,
}

impl BoundedSearchOracle {
    pub fn new(bound: u64) -> Self {
        BoundedSearchOracle { bound }
    }
}

impl Oracle for BoundedSearchOracle {
    fn kind(&self) -> OracleKind {
        OracleKind::BoundedSearch
    }

    fn answer(&self, query: &AvoidanceQuery) -> Result<Answer, OracleError> {
        let n = query.equation.arity();
        for i in 0..self.bound {
            let point =
                surjection(&query.ring, n, &BigUint::from(i)).map_err(|e| OracleError::Unsupported(e.to_string()))?;
            if query.accepts(&point)? {
                return Ok(Answer::Solvable { witness: Some(point) });
            }
        }
        Ok(Answer::Unsolvable)
    }
}

/// Delegates to another oracle, recording each query flattened into a single
/// equation.
pub struct FlatteningLogger<'a> {
    inner: &'a dyn Oracle,
    m: BigInt,
    log: RefCell<Vec<String>>,
}

impl<'a> FlatteningLogger<'a> {
    pub fn new(inner: &'a dyn Oracle, m: BigInt) -> Self {
        FlatteningLogger { inner, m, log: RefCell::new(Vec::new()) }
    }

    /// Rendered flattened equations, one per query so far.
    pub fn flattened(&self) -> Vec<String> {
        self.log.borrow().clone()
    }
}

impl Oracle for FlatteningLogger<'_> {
    fn kind(&self) -> OracleKind {
        self.inner.kind()
    }

    fn answer(&self, query: &AvoidanceQuery) -> Result<Answer, OracleError> {
        let flat = query.flatten(&self.m)?;
        self.log.borrow_mut().push(render_equation(&flat));
        self.inner.answer(query)
    }
}

/// A total computable sequence of equations with finitely many solutions.
pub trait FiniteListEnumerator {
    /// Description of the equations this list is complete for.
    fn universe(&self) -> &str;

    fn equation(&self, i: u64) -> Result<Equation, ListError>;
}

/// A finite curated list, repeated cyclically to make it total.
#[derive(Debug, Clone)]
pub struct CuratedList {
    universe: String,
    equations: Vec<Equation>,
}

impl CuratedList {
    pub fn new(universe: impl Into<String>, equations: Vec<Equation>) -> Result<Self, ListError> {
        if equations.is_empty() {
            return Err(ListError::Empty);
        }
        Ok(CuratedList { universe: universe.into(), equations })
    }

    pub fn entries(&self) -> &[Equation] {
        &self.equations
    }

    /// Checks that no entry has more than `max_solutions` distinct solutions
    /// among the first `bound` tuples of the ring enumeration.
    pub fn validate_by_search(&self, ring: &RingSpec, bound: u64, max_solutions: usize) -> Result<(), ListError> {
        for (index, eq) in self.equations.iter().enumerate() {
            let mut found: Vec<QTuple> = Vec::new();
            for i in 0..bound {
                let point =
                    surjection(ring, eq.arity(), &BigUint::from(i)).map_err(|e| ListError::Source(e.to_string()))?;
                let solves = eq.is_solution(point.components()).map_err(|e| ListError::Source(e.to_string()))?;
                if solves && !found.contains(&point) {
                    if found.len() == max_solutions {
                        return Err(ListError::Invalid { index, witness: point });
                    }
                    found.push(point);
                }
            }
        }
        Ok(())
    }
}

impl FiniteListEnumerator for CuratedList {
    fn universe(&self) -> &str {
        &self.universe
    }

    fn equation(&self, i: u64) -> Result<Equation, ListError> {
        let len = self.equations.len() as u64;
        Ok(self.equations[(i % len) as usize].clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// All solutions lie in the excluded set at halt.
    FiniteSolutions,
    Solvable,
    Unsolvable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::FiniteSolutions => write!(f, "finite"),
            Verdict::Solvable => write!(f, "solvable"),
            Verdict::Unsolvable => write!(f, "unsolvable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// `point` is the `index`-th enumerated tuple and solves the equation.
    Witness { index: u64, point: QTuple },
    /// The oracle answered unsolvable with `excluded = θ(0..=k)`.
    ExcludedAtHalt { k: u64, excluded: Vec<QTuple> },
    /// List entry `index` is the equation with a dummy variable appended.
    ListMatch { index: u64, equation: Equation },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineOutcome {
    Halted {
        verdict: Verdict,
        evidence: Evidence,
    },
    /// `steps` queries or indices were spent; `last_index` is the last one tried.
    BudgetExhausted {
        steps: u64,
        last_index: Option<u64>,
    },
}

impl EngineOutcome {
    pub fn is_halted(&self) -> bool {
        matches!(self, EngineOutcome::Halted { .. })
    }

    pub fn verdict(&self) -> Option<Verdict> {
        match self {
            EngineOutcome::Halted { verdict, .. } => Some(*verdict),
            EngineOutcome::BudgetExhausted { .. } => None,
        }
    }
}

impl fmt::Display for EngineOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineOutcome::Halted { verdict, evidence } => match evidence {
                Evidence::Witness { index, point } => write!(f, "{verdict} {point} i={index}"),
                Evidence::ExcludedAtHalt { k, .. } => write!(f, "{verdict} k={k}"),
                Evidence::ListMatch { index, .. } => write!(f, "{verdict} i={index}"),
            },
            EngineOutcome::BudgetExhausted { .. } => write!(f, "exhausted"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Eval,
    List,
    Query,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Eval => write!(f, "eval"),
            StepKind::List => write!(f, "list"),
            StepKind::Query => write!(f, "query"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub kind: StepKind,
    pub index: u64,
    pub detail: String,
    pub answer: String,
}

/// Step log; renders as one tab-separated line per step.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    lines: Vec<TraceLine>,
    flatten_queries: bool,
}

impl Trace {
    pub fn new() -> Self {
        Trace::default()
    }

    /// Also log every avoidance query as its flattened equation.
    pub fn with_flattening() -> Self {
        Trace { lines: Vec::new(), flatten_queries: true }
    }

    pub fn lines(&self) -> &[TraceLine] {
        &self.lines
    }

    fn push(&mut self, kind: StepKind, index: u64, detail: String, answer: impl Into<String>) {
        self.lines.push(TraceLine { kind, index, detail, answer: answer.into() });
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|l| format!("{}\t{}\t{}\t{}\n", l.kind, l.index, l.detail, l.answer)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { index: u64, witness: QTuple },
    Exhausted { steps: u64 },
}

/// Evaluates `eq` on the first `budget` tuples of the ring enumeration.
pub fn dovetail_search(
    eq: &Equation,
    ring: &RingSpec,
    budget: u64,
    mut trace: Option<&mut Trace>,
) -> Result<SearchOutcome, EngineError> {
    ring.validate()?;
    for i in 0..budget {
        let point = surjection(ring, eq.arity(), &BigUint::from(i))?;
        let value = eq.evaluate(point.components())?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(StepKind::Eval, i, format!("{point} -> {value}"), if value.is_zero() { "zero" } else { "nonzero" });
        }
        if value.is_zero() {
            return Ok(SearchOutcome::Found { index: i, witness: point });
        }
    }
    Ok(SearchOutcome::Exhausted { steps: budget })
}

/// Halts iff `eq` has finitely many solutions in the ring.
///
/// For `k = 0, 1, …` asks whether `eq` is solvable outside `{θ(0), …, θ(k)}`,
/// `θ` being the ring enumeration; the first negative answer halts. `budget`
/// counts oracle queries. `m` must be a non-zero integer of the ring; it is
/// used when queries are flattened into single equations.
pub fn semidecide_finite(
    eq: &Equation,
    ring: &RingSpec,
    oracle: &dyn Oracle,
    m: &BigInt,
    budget: u64,
    mut trace: Option<&mut Trace>,
) -> Result<EngineOutcome, EngineError> {
    ring.require_subring()?;
    if m.is_zero() || !ring.contains(&Rational::from_integer(m.clone())) {
        return Err(EngineError::InvalidParameter(format!("m = {m} must be a non-zero integer in {ring}")));
    }
    let n = eq.arity();
    let mut excluded = Vec::new();
    for k in 0..budget {
        let theta = surjection(ring, n, &BigUint::from(k))?;
        excluded.push(theta.clone());
        let query = AvoidanceQuery::new(eq.clone(), ring.clone(), excluded)?;
        let answer = oracle.answer(&query)?;
        if let Some(t) = trace.as_deref_mut() {
            let mut detail = format!("theta={theta} excluded={}", query.excluded.len());
            if t.flatten_queries {
                detail.push_str(&format!(" flat={}", render_equation(&query.flatten(m)?)));
            }
            t.push(StepKind::Query, k, detail, answer.to_string());
        }
        if answer == Answer::Unsolvable {
            return Ok(EngineOutcome::Halted {
                verdict: Verdict::FiniteSolutions,
                evidence: Evidence::ExcludedAtHalt { k, excluded: query.excluded },
            });
        }
        excluded = query.excluded;
    }
    Ok(EngineOutcome::BudgetExhausted { steps: budget, last_index: budget.checked_sub(1) })
}

/// Decides solvability of `eq` from a complete list of finite-solution
/// equations.
///
/// At each index `i` the `i`-th enumerated tuple is tried as a witness first;
/// then list entry `i` is compared with `eq` plus one dummy variable, which
/// has finitely many solutions over an infinite set exactly when `eq` has
/// none. `budget` counts indices.
pub fn decide_solvability(
    eq: &Equation,
    ring: &RingSpec,
    list: &dyn FiniteListEnumerator,
    budget: u64,
    mut trace: Option<&mut Trace>,
) -> Result<EngineOutcome, EngineError> {
    ring.validate()?;
    let n = eq.arity();
    let widened = add_dummy(eq);
    for i in 0..budget {
        let point = surjection(ring, n, &BigUint::from(i))?;
        let value = eq.evaluate(point.components())?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(StepKind::Eval, i, format!("{point} -> {value}"), if value.is_zero() { "zero" } else { "nonzero" });
        }
        if value.is_zero() {
            return Ok(EngineOutcome::Halted {
                verdict: Verdict::Solvable,
                evidence: Evidence::Witness { index: i, point },
            });
        }
        let entry = list.equation(i)?;
        let matched = eq_canonical_equal(&widened, &entry);
        if let Some(t) = trace.as_deref_mut() {
            t.push(StepKind::List, i, render_equation(&entry), if matched { "match" } else { "no-match" });
        }
        if matched {
            return Ok(EngineOutcome::Halted {
                verdict: Verdict::Unsolvable,
                evidence: Evidence::ListMatch { index: i, equation: entry },
            });
        }
    }
    Ok(EngineOutcome::BudgetExhausted { steps: budget, last_index: budget.checked_sub(1) })
}
