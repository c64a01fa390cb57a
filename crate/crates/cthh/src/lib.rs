//! Bound quivers, relation extensions and the first Hochschild cohomology of
//! cluster-tilted algebras.
//!
//! The crate works entirely in exact rational arithmetic over the rationals
//! (a stand-in for an algebraically closed field of characteristic zero: every
//! computation performed here -- kernels, circuits, derivation spaces -- only
//! needs an infinite field of characteristic zero).
//!
//! The pipeline, bottom to top:
//!
//! * [`quiver`] -- quivers, composable path words;
//! * [`element`] -- linear combinations of parallel paths with exact coefficients;
//! * [`rewrite`] -- completion of an admissible relation set into a confluent
//!   rewriting system, normal forms, the finite basis of the quotient algebra;
//! * [`linalg`] -- exact Gaussian elimination, ranks and kernels;
//! * [`relations`] -- minimal and strongly minimal relations, dependence circuits;
//! * [`extension`] -- the cluster-tilted presentation built from a tilted one:
//!   potential, cyclic derivatives, the forbidden-walk validator;
//! * [`equivalence`] -- the equivalence relation on new arrows and the relation
//!   invariant `n`;
//! * [`cycles`] -- chordless cycles, inner/outer arrows, the quiver formulas for
//!   `n`, point deletion and Hochschild degrees;
//! * [`derivations`] -- the brute-force oracle: normalized derivations, inner
//!   derivations and `dim HH^1` by exact linear algebra.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cycles;
pub mod derivations;
pub mod element;
pub mod equivalence;
pub mod extension;
pub mod linalg;
pub mod quiver;
pub mod relations;
pub mod rewrite;

pub use element::{Coeff, Element};
pub use quiver::{Arrow, ArrowId, PathWord, PointId, Provenance, Quiver};
pub use rewrite::{complete_rewriting, CompletionLimits, Presentation};
