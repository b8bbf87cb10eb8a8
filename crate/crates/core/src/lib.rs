//! Exact character combinatorics for the finite general linear groups and the
//! symmetric groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: integer partitions, hooks, Specht dimensions, the
//!   Murnaghan-Nakayama rule and the chiral count `b(n)`.
//! - [`valuations`]: `l`-adic valuations of factorials, falling factorials and
//!   the `q^m - 1` terms, all computed without forming large integers.
//! - [`fqpoly`]: finite fields `F_q`, monic irreducibles other than `x`, the
//!   reciprocal involution and its orbits.
//! - [`green`]: partition-valued labels of irreducible characters of
//!   `GL_n(F_q)`, their degrees and 2-adic divisibility statistics.
//! - [`gl2`]: self-dual irreducibles of `GL_2(F_q)`, their values at the
//!   involutions, Stiefel-Whitney vanishing decisions and densities.
//! - [`oracle`]: brute-force `GL_2(F_q)` for `q <= 9` with exact cyclotomic
//!   character values; the independent ground truth for [`gl2`].
//! - [`report`]: deterministic CSV / JSON / pretty emitters, and [`commands`]
//!   for the report behind each CLI subcommand.
//! - [`acceptance`]: the end-to-end checks shared by the test suite and the
//!   `verify` command.

pub mod acceptance;
pub mod arith;
pub mod commands;
pub mod cyclotomic;
pub mod error;
pub mod fqpoly;
pub mod gl2;
pub mod green;
pub mod oracle;
pub mod partitions;
pub mod report;
pub mod valuations;

pub use error::{Error, Result};
