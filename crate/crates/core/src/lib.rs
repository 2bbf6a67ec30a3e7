//! Exact multisegment combinatorics for irreducible representations of
//! `GL_n` over a p-adic field.
//!
//! Everything is computed in the standard basis of the Grothendieck ring,
//! where multiplication is multiset union, so every identity can be checked
//! coefficient by coefficient.

pub mod error;
pub mod expansion;
pub mod ferrers;
pub mod perm;
pub mod qaffine;
pub mod ring;
pub mod sample;
pub mod segment;
pub mod selftest;
pub mod socle;
pub mod tsystems;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use ring::RingElement;
pub use segment::{Multisegment, RegularProfile, Segment};
