//! Core of the V-Fuzz toolkit: a sensitivity-typed, fine-grained call-by-value
//! lambda-calculus with algebraic effects, together with the quantale/relator
//! machinery needed to compute finite approximations of applicative
//! (bi)similarity distances between programs.
//!
//! The crate is `no_std` (with `alloc`); IO, the CLI, and file formats live in
//! the companion `vfuzz` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod distance;
pub mod effects;
pub mod error;
pub mod evaluation;
pub mod quantale;
pub mod rational;
pub mod relators;
pub mod syntax;
pub mod typing;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
