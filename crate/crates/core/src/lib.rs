//! Exact-arithmetic computations of formality and (quasi-)Kähler obstructions.
//!
//! Every computation is carried out over the integers or the rationals with
//! arbitrary-precision arithmetic; nothing here ever rounds.
//!
//! - [`linalg`]: integer/rational matrices, Smith normal form, characteristic
//!   polynomials, the Kronecker cyclotomic test and Jordan-block tests.
//! - [`cdga`]: finite commutative differential graded algebras, their
//!   cohomology, cup products and Massey triple products.
//! - [`cup`]: the degree-one cup product tensor shared by several modules.
//! - [`lie`]: Lyndon bases of free Lie algebras and holonomy Lie algebra ranks.
//! - [`resonance`]: resonance varieties, isotropicity, the position
//!   obstruction, the BNS resonance bound and the Alexander polynomial test.
//! - [`graph`]: right-angled Artin and Bestvina–Brady groups, flag complexes
//!   and simplicial homology.
//! - [`torus`]: mapping tori of surface diffeomorphisms and their monodromy.
//! - [`rules`]: a cited forward-chaining engine over group facts.
//! - [`analyze`]: glue turning computations into facts and reports.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analyze;
pub mod cdga;
pub mod cup;
pub mod error;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod resonance;
pub mod rules;
pub mod torus;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational number, always kept in lowest terms.
pub type Rat = num_rational::BigRational;
