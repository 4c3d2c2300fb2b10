//! Misère-play combinatorial games in the dicot and dead-ending universes.
//!
//! Games are interned trees ([`GameId`]). On top of them the crate provides
//! outcome and strong-outcome computation, comparison modulo a universe by
//! the options-only recursive test, reduction to the unique canonical form,
//! a textual notation, and bounded enumeration with property scans.

pub mod canonical;
pub mod error;
pub mod game;
pub mod lab;
pub mod notation;
pub mod order;
pub mod outcome;

pub use canonical::{canonical_form, canonical_form_traced, ReductionRule, ReductionStep, ReductionTrace};
pub use error::{Error, Result};
pub use game::{conjugate, integer, mk_game, murder, rank, star, sum, zero, GameId, Side, Universe};
pub use lab::{enumerate, EnumerationBudget};
pub use notation::{from_interchange, parse, print, to_interchange, GameDoc, Style};
pub use order::{definitional_ge_check, distinguish, equivalent, ge, ge_normal, Distinguisher, Verdict};
pub use outcome::{outcome, outcome_ge, strong_outcome, Outcome, Winner};
