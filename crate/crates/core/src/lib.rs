//! Exact combinatorics of cross-t-intersecting set families at desk scale.
//!
//! The crate provides the substrate (bitmask subsets, k-uniform families,
//! exact binomials), the Galois closure maps whose closed pairs are the
//! maximal cross-t-intersecting pairs, the shift/compression operator, the
//! generating-set machinery with its push-up/push-down transforms, the named
//! extremal constructions with exact size formulas, exact-rational sweeps of
//! the auxiliary product inequalities, and an exact branch-and-bound search
//! for the maximum of |A|·|B| over cross-t-intersecting pairs.

pub mod compress;
pub mod construct;
pub mod error;
pub mod genset;
pub mod ineq;
pub mod poly;
pub mod randgen;
pub mod relation;
pub mod scalar;
pub mod search;
pub mod sets;

pub use error::{Error, Result};
