//! Squarefree values of integer polynomials.
//!
//! For `P ∈ ℤ[x1, …, xs]` this crate computes
//!
//! * the local counts `ρ_P(p²)` of solutions of `P ≡ 0 (mod p²)` (two
//!   independent algorithms, see [`local`]);
//! * truncated Euler products `∏_{p ≤ B} (1 - ρ_P(p²)/p^(2s))` ([`euler`]);
//! * primes `p` for which `p²` divides every value of `P` ([`local::property_a_witnesses`]);
//! * whether `P` has a repeated non-constant factor ([`algebra::squarefree_verdict`]);
//! * counts of lattice points in a box where `P` takes a squarefree value
//!   ([`boxcount`]).
//!
//! ```
//! use sfd_core::{parse, euler::{partial_euler_product, ProductMode}, Budget};
//!
//! let p = parse("x", None)?;
//! let report = partial_euler_product(&p, 10, ProductMode::Rational, None, Budget::DEFAULT)?;
//! assert_eq!(report.final_rational().unwrap().to_string(), "768/1225");
//! # Ok::<(), sfd_core::Error>(())
//! ```

pub mod algebra;
pub mod boxcount;
mod error;
pub mod euler;
pub mod local;
pub mod poly;
pub mod primes;
pub mod squarefree;

pub use algebra::{multivariate_gcd, squarefree_verdict, SquarefreenessVerdict};
pub use boxcount::{count_squarefree_values, density_sweep, BoxSpec, CountOptions, CountReport};
pub use error::{Error, Result};
pub use euler::{partial_euler_product, EulerReport, ProductMode};
pub use local::{Budget, PrimeLocalDatum, PropertyAWitness, RhoMethod};
pub use poly::{parse, Monomial, Polynomial, MAX_ARITY};
pub use squarefree::is_squarefree_int;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/squarefree-polynomials.md")]
    mod squarefree_polynomials {}
    #[doc = include_str!("../../../book/src/local-densities.md")]
    mod local_densities {}
    #[doc = include_str!("../../../book/src/euler-products.md")]
    mod euler_products {}
    #[doc = include_str!("../../../book/src/box-counts.md")]
    mod box_counts {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/math-notes.md")]
    mod math_notes {}
}
