//! Exact equivariant K-theory localization.
//!
//! The crate models representation rings of finite groups as class
//! functions, equivariant K-theory of finite G-sets as invariant functions on
//! the global stabilizer, torus-equivariant K-theory of spaces with isolated
//! fixed points through their fixed-point restrictions, and Euler
//! characteristics of projective quotients by finite groups.

pub mod caps;
pub mod error;
pub mod exact;
pub mod gkm;
pub mod group;
pub mod gset;
pub mod oracle;
pub mod quotient;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
