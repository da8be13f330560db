//! Exact symbolic computation in ℤ₂×ℤ₂-graded commutative algebras.
//!
//! The kernel implements the sign rule `a·b = (−1)^{⟨deg a, deg b⟩} b·a` for
//! degrees in ℤ₂×ℤ₂ with the standard mod-2 scalar product, on top of an
//! exact-rational coefficient ring. On that foundation it builds:
//!
//! * graded polynomial expressions over nilpotent and non-nilpotent
//!   generators, with relation rewriting (e.g. a degree-(1,1) unit with
//!   α² = 1) and order-k truncation of the distinguished degree-(1,1)
//!   coordinate z ([`algebra`]);
//! * graded derivations, left partial derivatives, graded commutators,
//!   algebra morphisms with nilpotent Taylor expansion, and Jacobians
//!   ([`calculus`]);
//! * the (2+2|2)-dimensional graded superspace with supercharges, covariant
//!   derivatives, superfields, supertranslations and boosts ([`superspace`]);
//! * Berezin integration and the ℤ₂×ℤ₂-Berezinian of degree-zero graded
//!   matrices ([`berezin`]);
//! * graded sigma models — linear, nonlinear, sine-Gordon and the exotic
//!   degree-(1,1) multiplet — with component/superspace Euler–Lagrange
//!   equations, auxiliary-field elimination, supersymmetry variations,
//!   quasi-invariance witnesses and Noether currents ([`models`]);
//! * randomized coordinate-change verification for the general graded
//!   coordinate-transformation template ([`coordchange`]);
//! * self-verification suites with deterministic JSON reports ([`suites`],
//!   [`report`]) and plain-text/LaTeX/s-expression rendering ([`render`]).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every identity check is a symbolic zero test, never a numeric tolerance.
//!
//! The `examples/` directory is the guided tour; each example exercises one
//! capability end to end. The `bigraded` binary exposes the same suites on
//! the command line (`run`, `expand`, `render`).

pub mod algebra;
pub mod berezin;
pub mod calculus;
pub mod cli;
pub mod coeff;
pub mod coordchange;
pub mod grading;
pub mod models;
pub mod naive;
pub mod render;
pub mod report;
pub mod suites;
pub mod superspace;

/// Exact rational scalar used throughout the kernel.
pub type Rat = num::BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    use num::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn rint(n: i64) -> Rat {
    rat(n, 1)
}
