//! Exact hyperplane partitions of finite point sets.
//!
//! `colorcut-core` computes, with exact rational arithmetic only:
//!
//! - the family `H(X)` of partitions of a finite point set `X ⊂ R^d` that
//!   can be realized by a single hyperplane ([`hdivision`]),
//! - full subdivisions, transversals and minimal transversals of an
//!   abstract division ([`divisions`]),
//! - separation and partition of colored point sets by hyperplanes, with
//!   Kirchberger-type witness extraction ([`colorful`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, instance
//! generation and the command line live in the `colorcut` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod colorful;
pub mod counting;
pub mod divisions;
mod error;
mod fm;
pub mod geom;
pub mod hdivision;
pub mod reference;
mod rat;

pub use colorful::{Certificate, Coloring, ColorId, HellyDual, WitnessReport};
pub use counting::CountingTriple;
pub use divisions::{Division, MemberSet, MinimalTransversal, Partition};
pub use error::{Error, Result};
pub use geom::{Hyperplane, Point, PointConfig, PointId};
pub use hdivision::HDivision;
pub use rat::{ParseRatError, Rat};
