//! Groupoids on subspace lattices over prime fields.
//!
//! The library builds, validates and closes groupoids whose objects are the
//! subspaces of a family of ambient spaces F_p^n, turns them into finite
//! presheaves on vector-space injections, extends those presheaves to all
//! linear maps, decides centrality of elements, computes centres and
//! primitive-element groupoids, enumerates groupoids under centrality and
//! primitivity constraints, and (for p = 2) realizes the associated invariant
//! subalgebras of F_2[x_1..x_n] degree by degree.

pub mod amalgam;
pub mod centre;
pub mod enumeration;
pub mod exec;
pub mod fp;
pub mod functor;
pub mod groupoid;
pub mod invariants;
pub mod primitive;

mod error;

pub use error::{Error, Result};
