//! Exact finite-group realization of the representation of the double-coset
//! semigroup on `L^2(K^m)`.
//!
//! `K` is a finite group with normalized counting measure. Functions on `K^d`
//! are rational vectors over the delta basis, indexed by [`TupleIndex`].

mod group;
mod markov;
mod matrix;
mod tuple;

pub use group::{builtin_group, cyclic, dihedral, quaternion8, symmetric, FiniteGroup, Subgroup};
pub use markov::{eval_word, CylinderFunction, RepEngine, WeakLimitSides, DEFAULT_MAX_POINTS};
pub use matrix::{parse_rational, rat, Rational, RationalMatrix};
pub use tuple::TupleIndex;
