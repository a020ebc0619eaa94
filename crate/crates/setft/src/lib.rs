//! Signal processing and learning on set functions.
//!
//! A set function maps every subset of a ground set `{x_1, .., x_n}` to a
//! real number. This crate implements three Fourier bases for such
//! functions (the set-difference, union, and symmetric-difference shift
//! models, the last one being the classical Walsh-Hadamard transform),
//! plus the machinery built on top of them:
//!
//! * dense fast transforms and inverses in `n·2^(n-1)` butterflies
//!   ([`transform`]),
//! * set convolution, one-hop filters, and frequency responses
//!   ([`filter`]),
//! * sparse spectrum learning from few oracle queries, with and without
//!   random filtering ([`ssft`]),
//! * generators for coverage, preference, facility-location, graph-cut,
//!   information-gain, and random sparse functions ([`generators`]),
//! * an experiment harness with reconstruction-error estimation and
//!   greedy maximization ([`evaluation`]).
//!
//! The `examples/` directory walks through each capability; the thin
//! `setft` binary exposes the same operations as subcommands.

pub mod cli;
pub mod error;
pub mod evaluation;
pub mod filter;
pub mod function;
pub mod generators;
pub mod io;
mod linalg;
pub mod rng;
pub mod set;
pub mod ssft;
pub mod transform;

pub use error::{Error, Result};
pub use function::{DenseSetFunction, Model, QueryCounter, SetFunctionOracle, SparseFT};
pub use set::{GroundSet, SubsetMask};
