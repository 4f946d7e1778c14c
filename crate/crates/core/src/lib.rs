//! Exact q-series arithmetic and constructive partition bijections.
//!
//! The crate is `no_std` and only needs `alloc`. It is organised bottom-up:
//!
//! - [`series`]: truncated Laurent series in `q` with big-integer
//!   coefficients, plus the auxiliary-variable extension [`MultiSeries`]
//!   over `z`, `x`, `y`.
//! - [`partitions`]: partition types, conjugation, Durfee squares, the
//!   self-conjugate/distinct-odd hook map, and exhaustive enumerators for the
//!   finite families the bijections act on.
//! - [`bijections`]: weight-preserving maps between those families, each
//!   with an explicit inverse, and [`bijections::check_bijection`] which
//!   sweeps a whole domain.
//! - [`identities`]: a registry of q-series identities with closed-form and
//!   enumerative sides and a coefficient-exact verifier.
//! - [`dsl`]: a small expression language that evaluates onto
//!   [`MultiSeries`].

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bijections;
pub mod dsl;
pub mod identities;
pub mod partitions;
pub mod series;

pub use series::{AuxVar, Monomial, MultiSeries, QSeries, SeriesError, Term};
