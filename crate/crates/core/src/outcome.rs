//! Misère and normal-play outcomes, and strong outcomes for dead-ending games.

use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{conjugate, murder, sum, GameId};

/// Who wins a game with a fixed first player. Ordered `Left > Right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Winner {
    Right,
    Left,
}

impl Winner {
    pub fn flip(self) -> Winner {
        match self {
            Winner::Left => Winner::Right,
            Winner::Right => Winner::Left,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Winner::Left => "L",
            Winner::Right => "R",
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Outcome class: the pair (winner when Left starts, winner when Right starts).
///
/// Partially ordered: `L` is the top, `R` the bottom, `N` and `P` are incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// Left wins whoever starts.
    L,
    /// The first player wins.
    N,
    /// The second player wins.
    P,
    /// Right wins whoever starts.
    R,
}

impl Outcome {
    pub fn from_results(left_first: Winner, right_first: Winner) -> Outcome {
        match (left_first, right_first) {
            (Winner::Left, Winner::Left) => Outcome::L,
            (Winner::Left, Winner::Right) => Outcome::N,
            (Winner::Right, Winner::Left) => Outcome::P,
            (Winner::Right, Winner::Right) => Outcome::R,
        }
    }

    pub fn left_first(self) -> Winner {
        match self {
            Outcome::L | Outcome::N => Winner::Left,
            Outcome::P | Outcome::R => Winner::Right,
        }
    }

    pub fn right_first(self) -> Winner {
        match self {
            Outcome::L | Outcome::P => Winner::Left,
            Outcome::N | Outcome::R => Winner::Right,
        }
    }

    /// Outcome of the conjugate game: `L` and `R` swap, `N` and `P` stay.
    pub fn conjugate(self) -> Outcome {
        Outcome::from_results(self.right_first().flip(), self.left_first().flip())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Outcome::L => "L",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::R => "R",
        }
    }
}

impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let l = self.left_first().cmp(&other.left_first());
        let r = self.right_first().cmp(&other.right_first());
        match (l, r) {
            (a, b) if a == b => Some(a),
            (Ordering::Equal, b) => Some(b),
            (a, Ordering::Equal) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `a >= b` in the outcome partial order.
pub fn outcome_ge(a: Outcome, b: Outcome) -> bool {
    a.left_first() >= b.left_first() && a.right_first() >= b.right_first()
}

/// Misère winner with Left moving first (`o_L`).
pub fn left_result(g: GameId) -> Winner {
    g.misere_results().0
}

/// Misère winner with Right moving first (`o_R`).
pub fn right_result(g: GameId) -> Winner {
    g.misere_results().1
}

pub fn outcome(g: GameId) -> Outcome {
    let (l, r) = g.misere_results();
    Outcome::from_results(l, r)
}

/// Normal-play winner with Left moving first: a player without a move loses.
pub fn normal_left_result(g: GameId) -> Winner {
    g.normal_results().0
}

pub fn normal_right_result(g: GameId) -> Winner {
    g.normal_results().1
}

pub fn normal_outcome(g: GameId) -> Outcome {
    let (l, r) = g.normal_results();
    Outcome::from_results(l, r)
}

type PairMemo = DashMap<(GameId, GameId), (Winner, Winner), FxBuildHasher>;

static SUM_RESULTS: LazyLock<PairMemo> = LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));

/// Misère outcome of `g + x` computed by playing the two components side by
/// side, without building the sum in the intern table.
pub fn sum_outcome(g: GameId, x: GameId) -> Outcome {
    let (l, r) = sum_results(g, x);
    Outcome::from_results(l, r)
}

fn sum_results(g: GameId, x: GameId) -> (Winner, Winner) {
    if x.is_zero() {
        return g.misere_results();
    }
    if g.is_zero() {
        return x.misere_results();
    }
    let key = if g.index() <= x.index() { (g, x) } else { (x, g) };
    if let Some(found) = SUM_RESULTS.get(&key) {
        return *found;
    }
    // a mover without moves wins
    let left_first = if (g.left().is_empty() && x.left().is_empty())
        || g.left().iter().any(|&gl| sum_results(gl, x).1 == Winner::Left)
        || x.left().iter().any(|&xl| sum_results(g, xl).1 == Winner::Left)
    {
        Winner::Left
    } else {
        Winner::Right
    };
    let right_first = if (g.right().is_empty() && x.right().is_empty())
        || g.right().iter().any(|&gr| sum_results(gr, x).0 == Winner::Right)
        || x.right().iter().any(|&xr| sum_results(g, xr).0 == Winner::Right)
    {
        Winner::Right
    } else {
        Winner::Left
    };
    SUM_RESULTS.insert(key, (left_first, right_first));
    (left_first, right_first)
}

static STRONG: LazyLock<DashMap<GameId, (Winner, Winner), FxBuildHasher>> =
    LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));

/// Strong (left, right) results of a dead-ending game: the worst the game can
/// do for each first player when summed with an adversarial end.
///
/// With `k = rank(g) > 0` the adversary's best end is the perfect murder
/// `M_{k-1}` (or its conjugate), so only two sums are evaluated per side.
pub(crate) fn strong_results(g: GameId) -> (Winner, Winner) {
    let k = g.rank();
    if k == 0 {
        return (Winner::Left, Winner::Right);
    }
    if let Some(found) = STRONG.get(&g) {
        return *found;
    }
    let m = murder(k - 1);
    let left = left_result(g).min(left_result(sum(g, m)));
    let right = right_result(g).max(right_result(sum(g, conjugate(m))));
    STRONG.insert(g, (left, right));
    (left, right)
}

fn require_dead_ending(g: GameId) -> Result<()> {
    if g.is_dead_ending() {
        Ok(())
    } else {
        Err(Error::NotDeadEnding(g.to_string()))
    }
}

pub fn strong_left_outcome(g: GameId) -> Result<Winner> {
    require_dead_ending(g)?;
    Ok(strong_results(g).0)
}

pub fn strong_right_outcome(g: GameId) -> Result<Winner> {
    require_dead_ending(g)?;
    Ok(strong_results(g).1)
}

pub fn strong_outcome(g: GameId) -> Result<Outcome> {
    require_dead_ending(g)?;
    let (l, r) = strong_results(g);
    Ok(Outcome::from_results(l, r))
}

/// Strong results by brute force: the minimum (for Left) and maximum (for
/// Right) over the supplied ends. Works for any game; `left_ends` should
/// hold Left-ends and `right_ends` Right-ends, each including `0`.
pub fn strong_results_over(
    g: GameId,
    left_ends: &[GameId],
    right_ends: &[GameId],
) -> (Winner, Winner) {
    let left = left_ends
        .iter()
        .map(|&x| sum_results(g, x).0)
        .min()
        .unwrap_or(Winner::Left);
    let right = right_ends
        .iter()
        .map(|&y| sum_results(g, y).1)
        .max()
        .unwrap_or(Winner::Right);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{integer, mk_game, star, zero};

    #[test]
    fn basic_outcomes() {
        assert_eq!(left_result(zero()), Winner::Left);
        assert_eq!(right_result(zero()), Winner::Right);
        assert_eq!(outcome(zero()), Outcome::N);
        assert_eq!(outcome(star()), Outcome::P);
        let g = mk_game([star()], [zero()]);
        assert_eq!(left_result(g), Winner::Left);
        for k in 1..=5 {
            assert_eq!(outcome(murder(k)), Outcome::L);
        }
    }

    #[test]
    fn self_conjugate_sum_is_p() {
        let g = mk_game([zero(), star()], [zero(), star()]);
        assert_eq!(outcome(sum(g, conjugate(g))), Outcome::P);
    }

    #[test]
    fn outcome_order() {
        use Outcome::*;
        assert!(outcome_ge(L, R));
        assert!(!outcome_ge(N, P) && !outcome_ge(P, N));
        assert!(outcome_ge(N, N));
        assert_eq!(N.partial_cmp(&P), None);
        assert!(L > N && N > R && L > P && P > R);
        for a in [L, N, P, R] {
            for b in [L, N, P, R] {
                assert_eq!(outcome_ge(a, b), a >= b);
            }
        }
    }

    #[test]
    fn normal_play() {
        assert_eq!(normal_outcome(zero()), Outcome::P);
        assert_eq!(normal_outcome(star()), Outcome::N);
        assert_eq!(normal_outcome(integer(1)), Outcome::L);
    }

    #[test]
    fn strong_examples() {
        let g = mk_game([star()], [zero()]);
        assert_eq!(strong_left_outcome(g).unwrap(), Winner::Right);
        let h = mk_game([integer(-1)], [zero()]);
        assert_eq!(strong_left_outcome(h).unwrap(), Winner::Left);
        assert_eq!(strong_outcome(murder(2)).unwrap(), Outcome::L);
        assert_eq!(strong_outcome(zero()).unwrap(), Outcome::N);
        let k = mk_game([integer(-1)], [integer(1)]);
        assert_eq!(strong_outcome(k).unwrap(), Outcome::N);
    }

    #[test]
    fn strong_requires_dead_ending() {
        let bad = mk_game([mk_game([], [star()])], [zero()]);
        assert!(matches!(strong_outcome(bad), Err(Error::NotDeadEnding(_))));
    }

    #[test]
    fn sum_outcome_matches_interned_sum() {
        let games = [zero(), star(), integer(1), integer(-2), murder(2), mk_game([star()], [zero()])];
        for &a in &games {
            for &b in &games {
                assert_eq!(sum_outcome(a, b), outcome(sum(a, b)));
            }
        }
    }
}
