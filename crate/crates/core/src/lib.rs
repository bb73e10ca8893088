//! Exact computational number theory toolkit centered on sums of seven
//! positive octahedral numbers.
//!
//! The crate is organized around the constructive ingredients of that
//! problem:
//!
//! * [`arith`] — factorization, divisor statistics, Jacobi symbols,
//!   modular square-root counting, Hensel lifting, and exact searches
//!   for products of two prime powers inside rational windows.
//! * [`cubic`] — integer-valued cubic polynomials in the binomial basis,
//!   their value sets modulo primes, p-adic surjectivity, and the
//!   octahedral congruence solver.
//! * [`quat`] — exact Hurwitz quaternion arithmetic: Euclidean division,
//!   standard-form associates, factorization of norm-5^s elements, and
//!   orthogonal lattices.
//! * [`qgraph`] — the conjugation graph on proper norm-r quaternions,
//!   good-vertex detection, and the scaled non-backtracking walk count.
//! * [`ternary`] — diagonal ternary quadratic forms: representation
//!   search, Linnik condition checks, range scans, prime systems, and
//!   sums of three squares of linear forms.
//! * [`bounds`] — rigorous numeric evaluation of the explicit analytic
//!   constants (Siegel-type products, level-lowering inequalities,
//!   multiplicative bound products, and the senior-form sum).
//! * [`decomp`] — the certificate-emitting seven-octahedral
//!   decomposition pipeline and its independent verifier.

pub mod arith;
pub mod bounds;
pub mod cubic;
pub mod decomp;
pub mod qgraph;
pub mod quat;
pub mod ternary;
