//! Exact decision procedures for the three classically equivalent properties a
//! finite subset `A` of a cyclic group `Z_N` (with `N` square-free) can have:
//!
//! * `A` is **spectral**: some `B ⊆ Z_N` of the same cardinality makes the
//!   characters `x ↦ ω_N^{bx}`, `b ∈ B`, an orthogonal basis of `l²(A)`;
//! * `A` **tiles** `Z_N` by translation: some `T` has `A ⊕ T = Z_N`;
//! * `A` satisfies the Coven–Meyerowitz conditions **(T1)** and **(T2)** on the
//!   cyclotomic divisors of its mask polynomial.
//!
//! Everything is integer-exact: vanishing of `A(ω_N^d)` is decided by
//! polynomial remainder against the cyclotomic `Φ_{N/d}`, never by floating
//! point (float evaluation exists only as a cross-checking diagnostic).
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] — arithmetic in `Z_N`, CRT coordinates, multisets, d-cycles;
//! * [`poly`] — integer polynomials, cyclotomics, zero sets of mask polynomials;
//! * [`cycles`] — decompositions of vanishing multisets into prime cycles;
//! * [`tiling`] — (T1)/(T2), tiling verification and complement search,
//!   graph normal form of tiles;
//! * [`spectral`] — spectral-pair verification and spectrum search;
//! * [`verifier`] — exhaustive and sampled cross-verification of the
//!   equivalence, plus the structural case analysis on three-prime groups;
//! * [`sampling`] — deterministic instance generators used by the verifier
//!   and the test suites.

pub mod cycles;
pub mod error;
pub mod group;
pub mod poly;
pub mod sampling;
pub mod search;
pub mod spectral;
pub mod tiling;
pub mod verifier;

pub use error::{Error, Result};
pub use group::{Cycle, CyclicGroup, MultiSet, ResidueVector};
pub use poly::{cyclotomic, IntPolynomial, MaskPolynomial, ZeroProfile};
pub use search::{Budget, Search};
