//! Exact computation engine for disjoint pairs, t-disjoint pairs and
//! q-matchings in k-uniform set systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`binom`], [`kset`], [`family`], [`io`] and [`params`] hold the
//!   representation of k-sets and families, the lexicographic machinery and
//!   the extremal constructions (lex segments, l-balls, unions of t-stars).
//! * [`counting`], [`cover`] and [`structure`] count every statistic exactly
//!   and classify families.
//! * [`formulas`] evaluates closed forms and bounds in exact rational
//!   arithmetic.
//! * [`kneser`] is the Kneser-graph view: spectrum and spectral bounds.
//! * [`search`] certifies minima by exhaustive or branch-and-bound search.

pub mod binom;
pub mod counting;
pub mod cover;
mod error;
pub mod family;
pub mod formulas;
pub mod io;
pub mod kneser;
pub mod kset;
pub mod params;
pub mod search;
pub mod structure;

pub use counting::{CountReport, Method, Statistic};
pub use error::{Error, Result};
pub use family::SetFamily;
pub use kset::{KSet, LexRank};
pub use params::Params;
