//! Semigroups of double cosets of `Aut(F_inf)` with respect to the
//! stabilizer of `x_1..x_m`, and their exact Markov representations over
//! finite groups.
//!
//! * [`word`]: reduced words in the free group.
//! * [`automorphism`]: finitely supported automorphisms with certified inverses.
//! * [`cosets`]: the forced-apart products and their `H`-witnesses.
//! * [`rep`]: the operators `P T(g)` on `L^2(K^m)` in exact rationals.

pub mod automorphism;
pub mod cli;
pub mod cosets;
mod error;
pub mod json;
pub mod rep;
pub mod verify;
pub mod word;

pub use automorphism::{Automorphism, Endomorphism, Permutation};
pub use cosets::{ConjClassRep, DoubleCosetRep, TupleRep};
pub use error::Error;
pub use rep::{FiniteGroup, RationalMatrix, RepEngine, Subgroup};
pub use word::{Generator, Letter, Sign, Word};
