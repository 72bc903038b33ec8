//! Finite F-enriched category theory.
//!
//! Tight/loose 2-categories, F-weights and their limits, relative
//! transformation classifiers, rigged and PIE weights, and lifting of
//! limits to categories of algebras for a 2-monad.

#![allow(clippy::too_many_arguments, clippy::needless_range_loop)]

pub mod cat_core;
pub mod cli_io;
pub mod f_core;
pub mod kan_classifiers;
pub mod monad_alg;
pub mod riggedness;
pub mod two_cat;
pub mod weights;
