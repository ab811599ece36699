//! Finitely generated submonoids of a free monoid: automata recognizing X*
//! with multiplicities, decoders, transition monoids of relations, and the
//! degree and group of a finite set of words.

pub mod analysis;
pub mod automata;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod relmonoid;
mod search;
pub mod transducers;
pub mod words;

pub use error::{Error, Result};
