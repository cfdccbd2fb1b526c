//! Exact-arithmetic toolkit for player-centered incomplete cooperative games.
//!
//! A player-centered (or `i`-centered) incomplete game knows the worth of
//! every coalition containing a fixed player `i` and nothing else. This crate
//! describes the sets of extensions of such games within the usual game
//! classes (positive, convex, superadditive, monotone and their monotone or
//! zero-normalised variants), enumerates their extreme points and rays, and
//! computes closed-form bounds on the core, the Shapley value and the
//! τ-value over all extensions. Every closed form is paired with an
//! independent polyhedral or brute-force route so the two can be compared.
//!
//! All arithmetic is done with arbitrary-precision rationals.

pub mod approximations;
pub mod error;
pub mod extensions;
pub mod game_core;
pub mod incomplete;
pub mod polyhedra;
pub mod rational;
pub mod solutions;

pub use error::{Error, Result};
pub use game_core::{Coalition, GameClass, MobiusVector, TUGame};
pub use incomplete::{IncompleteGame, PlayerCentered};
pub use rational::Rational;
