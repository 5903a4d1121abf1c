//! Computable constructions around Diophantine equations over subrings of `ℚ`.
//!
//! * [`exactnum`]: reduced rationals, four-square decompositions, prime triples.
//! * [`poly`]: integer polynomials and equations with explicit arity.
//! * [`parser`]: text forms for equations and tuples.
//! * [`rings`]: `ℤ`, `cℤ`, `ℤ[1/m]`, `ℚ` and `ℕ` with decidable membership.
//! * [`codec`]: the prime-exponent surjection `ℕ → ℚⁿ` and its projections.
//! * [`gadgets`]: dummy variable, non-zero gadget, exclusion product.
//! * [`engines`]: the finite-solutions semi-decider and the solvability decider.

pub mod codec;
pub mod engines;
pub mod exactnum;
pub mod gadgets;
pub mod parser;
pub mod poly;
pub mod rings;

pub use codec::{decode_tuple, encode_tuple, project, surjection, QTuple};
pub use engines::{
    decide_solvability, dovetail_search, make_oracle, semidecide_finite, CuratedList, EngineOutcome, Evidence,
    FiniteListEnumerator, Oracle, OracleSpec, SearchOutcome, SolutionSet, Trace, Verdict,
};
pub use exactnum::{four_squares, lowest_terms, prime_triple, Rational};
pub use gadgets::{add_dummy, avoidance_equation, build_nonzero_equation, exclusion_product, witness_nonzero};
pub use parser::{parse_equation, parse_rational, parse_tuple, render_equation};
pub use poly::{eq_canonical_equal, Equation, Polynomial};
pub use rings::{contains, enumerate_element, find_nonzero_integer, RingSpec, SearchMode};
