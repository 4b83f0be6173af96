//! Exact-arithmetic toolkit for shift-equivalence testing of polynomials.
//!
//! Given black-box evaluation access to two polynomials `f` and `g` over a
//! prime field or the rationals, the solver decides whether some vector `a`
//! satisfies `f(x + a) = g(x)` as a polynomial identity, and produces such an
//! `a` when one exists. Everything is computed in exact field arithmetic;
//! randomness only enters through polynomial identity testing and is always
//! driven by an explicit seed.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature adds `std::error::Error` impls and a memoizing oracle wrapper.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod circuit;
pub mod error;
pub mod field;
pub mod lindep;
pub mod linalg;
pub mod oracle;
pub mod pit;
pub mod poly;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use field::{FactorialTable, FieldElement, FieldSpec, DEFAULT_PRIME};
pub use linalg::{AffineSubspace, Matrix};
pub use oracle::Oracle;
pub use poly::{DensePoly, Monomial};
pub use rng::SeededRng;
