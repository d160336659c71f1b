//! Compact representations of modular semilattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`order`]: finite posets stored by their cover relation;
//! * [`semilattice`]: finite meet-semilattices, modularity and the induced
//!   inconsistency / collinearity relations on join-irreducibles;
//! * [`ppip`]: projective posets with inconsistent pairs, their axioms,
//!   consistent subspaces and the Birkhoff-type correspondence;
//! * [`product`]: PPIP construction for `(meet, join)`-closed subsets of
//!   product semilattices from a two-coordinate membership oracle;
//! * [`horn`]: implicational systems, closures, pseudoclosed sets, optimal
//!   bases and recognition of modular semilattices;
//! * [`gf`]: linear algebra over small prime fields, polar spaces, maximum
//!   vanishing subspaces and block-triangularization of partitioned matrices;
//! * [`io`]: JSON schemas, the line-oriented implication format and DOT output.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod gf;
pub mod horn;
pub mod io;
pub mod order;
pub mod ppip;
pub mod product;
pub mod semilattice;
pub mod sets;

pub use error::{Error, ErrorKind, Result};
pub use order::Poset;
pub use ppip::Ppip;
pub use semilattice::Semilattice;
