//! Exact lattice dynamics for compact complex and real surfaces.
//!
//! The crate is organised around the objects that carry the arithmetic:
//!
//! * [`exact`] — rational polynomials, Sturm root isolation, characteristic
//!   polynomials, Salem/quadratic unit detection and rigorous enclosures.
//! * [`lattice`] — hyperbolic integer lattices and their isometries.
//! * [`surfaces`] — concrete Néron–Severi models ((2,2,2)-surfaces, Wehler
//!   surfaces, 2-tori) and their entropies.
//! * [`abelian`] — real abelian surfaces given by period data: Picard
//!   numbers, the real Néron–Severi lattice, concordance, rational lines.
//! * [`birational`] — birational self-maps of ℙ¹×ℙ¹ with exact composition.
//! * [`crofton`] — Cauchy–Crofton length estimates of real plane curves.
//!
//! Every decision (loxodromic or not, Salem or not, disjoint or not) is made
//! in exact arithmetic. Floating point only appears in the Crofton sampler,
//! and even there each sampled line is rounded to dyadic coordinates before
//! an exact root count.

pub mod abelian;
pub mod birational;
pub mod crofton;
mod error;
pub mod exact;
pub mod lattice;
pub mod surfaces;

pub use error::{Error, Result};
