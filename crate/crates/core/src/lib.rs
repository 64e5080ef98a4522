//! Exact computations with root data, Weyl and braid groups, and the Tits
//! extended Weyl group, aimed at centralizers of semisimple elements and
//! explicit splittings of their component groups.

pub mod braid;
pub mod centralizer;
pub mod error;
pub mod frobenius;
pub mod fundgroup;
pub mod group;
pub mod lattice;
pub mod lifting;
pub mod rootdata;
pub mod tits;
pub mod verify;
pub mod weyl;

pub use braid::{BraidWord, GarsideNormalForm};
pub use error::{Error, Result};
pub use lattice::{Lattice, Rational, RationalVector};
pub use rootdata::{CartanType, Component, Family, RootDatum, RootId};
pub use tits::{TitsElement, TitsGroup};
pub use weyl::WeylElement;
