//! Table-given finite strict semi-monoidal 2-categories, with the machinery
//! needed to detect weak units (cancellable pseudo-idempotents), synthesize
//! their coherence cells, and certify the unit-coherence theorems by
//! exhaustive evaluation of pasting equations.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure table
//! arithmetic.  IO, file formats and the command-line driver live in the
//! companion `twocat-cli` crate.
//!
//! Layout:
//!
//! * [`kernel`] — the model representation, structural/axiom validation, and
//!   the pasting-expression evaluator.  Equality of cells is identity of
//!   table ids, so every equation is decided by lookups.
//! * [`equivalence`] — equi-arrows (adjoint-equivalence witnesses),
//!   cancellable objects, and the "divide by a cancellable thing" operations
//!   that power every uniqueness construction.
//! * [`dim1`] — units in monoidal 1-categories, run on models whose 2-cells
//!   are all identities; doubles as an oracle for the 2-dimensional synthesis.
//! * [`units`] — unit objects, synthesis of left/right constraints and the
//!   canonical associator, the pentagon, and contractibility of the
//!   2-category of units.
//! * [`arrowcat`] — the arrow 2-category of a model, used to prove that unit
//!   morphisms are semi-monoid maps.
//! * [`gps`] — the tricategory-style unit structure (Kelly cells, axioms
//!   TA2/TA3) and the equivalence between the two notions of unit.
//! * [`models`] — built-in model generators used as test beds.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arrowcat;
pub mod dim1;
pub mod equivalence;
pub mod gps;
pub mod kernel;
pub mod models;
pub mod units;

pub use kernel::{ObjId, OneId, TwoCategoryModel, TwoId};

/// SplitMix64 step; used to derive deterministic choice indices from seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
