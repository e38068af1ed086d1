//! Exact Möbius inversion, weightings and Euler characteristics of finite
//! categories, with the functor-level counting results built on them.
//!
//! Every number is an exact rational. Negative mathematical outcomes (no
//! Möbius inversion, no weighting, a degenerate functor) are ordinary
//! error values, never panics.

pub mod builders;
pub mod category;
pub mod exact;
pub mod format;
pub mod functors;
pub mod lefschetz;
pub mod mobius;
pub mod verify;
