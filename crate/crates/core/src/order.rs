//! Comparison of games modulo a universe.
//!
//! `G >= H` modulo the universe means `o(G + X) >= o(H + X)` for every `X` in
//! it. For dicots and dead-ending games this is decided from the options
//! alone: a base outcome condition (plain outcomes for dicots, strong outcomes
//! for dead-ending games) together with the two maintenance conditions
//!
//! * every `H^L` is answered by some `G^L >= H^L` or some `H^{LR} <= G`;
//! * every `G^R` is answered by some `H^R <= G^R` or some `G^{RL} >= H`.

use std::sync::LazyLock;

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{conjugate, sum, GameId, Universe};
use crate::lab::{enumerate, EnumerationBudget};
use crate::outcome::{
    normal_right_result, outcome, outcome_ge, strong_results, sum_outcome, Outcome, Winner,
};

static GE_MEMO: LazyLock<DashMap<(GameId, GameId, Universe), bool, FxBuildHasher>> =
    LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));

fn require(g: GameId, u: Universe) -> Result<()> {
    if u.contains(g) {
        Ok(())
    } else {
        Err(Error::not_in(g, u))
    }
}

/// `g >= h` modulo `u`. Both games must belong to `u`.
pub fn ge(g: GameId, h: GameId, u: Universe) -> Result<bool> {
    require(g, u)?;
    require(h, u)?;
    Ok(ge_in(g, h, u))
}

pub fn equivalent(g: GameId, h: GameId, u: Universe) -> Result<bool> {
    Ok(ge(g, h, u)? && ge(h, g, u)?)
}

/// Unchecked comparison for callers that already know `g, h` are in `u`.
/// Recursive calls stay in `u` because universes are closed under options.
pub(crate) fn ge_in(g: GameId, h: GameId, u: Universe) -> bool {
    let key = (g, h, u);
    if let Some(found) = GE_MEMO.get(&key) {
        return *found;
    }
    let result = base_condition(g, h, u)
        && h.left().iter().all(|&hl| {
            g.left().iter().any(|&gl| ge_in(gl, hl, u))
                || hl.right().iter().any(|&hlr| ge_in(g, hlr, u))
        })
        && g.right().iter().all(|&gr| {
            h.right().iter().any(|&hr| ge_in(gr, hr, u))
                || gr.left().iter().any(|&grl| ge_in(grl, h, u))
        });
    GE_MEMO.insert(key, result);
    result
}

pub(crate) fn equivalent_in(g: GameId, h: GameId, u: Universe) -> bool {
    ge_in(g, h, u) && ge_in(h, g, u)
}

fn base_condition(g: GameId, h: GameId, u: Universe) -> bool {
    match u {
        Universe::Dicot => outcome_ge(outcome(g), outcome(h)),
        Universe::DeadEnding => {
            let (gl, gr) = strong_results(g);
            let (hl, hr) = strong_results(h);
            gl >= hl && gr >= hr
        }
    }
}

/// Normal-play `g >= h`: Left wins `g - h` when Right moves first.
pub fn ge_normal(g: GameId, h: GameId) -> bool {
    normal_right_result(sum(g, conjugate(h))) == Winner::Left
}

/// Checks `o(g + X) >= o(h + X)` for every `X` in `test_set`.
///
/// This is the defining condition restricted to a finite set of test games,
/// so it is a necessary condition for `g >= h`. The compared games may lie
/// outside the universe; the test games may not.
pub fn definitional_ge_check(
    g: GameId,
    h: GameId,
    u: Universe,
    test_set: &[GameId],
) -> Result<bool> {
    for &x in test_set {
        require(x, u)?;
    }
    Ok(test_set
        .iter()
        .all(|&x| outcome_ge(sum_outcome(g, x), sum_outcome(h, x))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The games are equivalent modulo the universe.
    Holds,
    /// A test game with different outcomes was found.
    Distinguished,
    /// No test game within the budget separates the games, yet they are not equivalent.
    Inconclusive,
}

/// Result of a distinguishing-game search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinguisher {
    pub verdict: Verdict,
    pub witness: Option<GameId>,
    /// Outcomes of `g + witness` and `h + witness`.
    pub witness_outcomes: Option<(Outcome, Outcome)>,
    pub max_rank: u32,
    pub max_options: usize,
}

/// Searches the universe in enumeration order (increasing rank) for a game
/// `X` with `o(g + X) != o(h + X)`.
///
/// A witness refuting `g >= h` is preferred, so when one exists within the
/// budget `outcome_ge(o(g + X), o(h + X))` is false. Otherwise the first
/// witness refuting `h >= g` is returned.
pub fn distinguish(
    g: GameId,
    h: GameId,
    u: Universe,
    max_rank: u32,
    max_options: usize,
) -> Result<Distinguisher> {
    require(g, u)?;
    require(h, u)?;
    let tests = enumerate(&EnumerationBudget::new(max_rank, max_options, Some(u)))?;
    let pairs: Vec<(GameId, Outcome, Outcome)> = tests
        .into_iter()
        .map(|x| (x, sum_outcome(g, x), sum_outcome(h, x)))
        .collect();
    let found = pairs
        .iter()
        .find(|(_, a, b)| !outcome_ge(*a, *b))
        .or_else(|| pairs.iter().find(|(_, a, b)| a != b))
        .copied();
    let (verdict, witness, witness_outcomes) = match found {
        Some((x, a, b)) => (Verdict::Distinguished, Some(x), Some((a, b))),
        None if equivalent_in(g, h, u) => (Verdict::Holds, None, None),
        None => (Verdict::Inconclusive, None, None),
    };
    Ok(Distinguisher {
        verdict,
        witness,
        witness_outcomes,
        max_rank,
        max_options,
    })
}
