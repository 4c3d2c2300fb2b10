//! Reduction to canonical form in the dicot and dead-ending universes.
//!
//! Options are reduced first, then the game itself is rewritten until none of
//! the rules applies:
//!
//! 1. remove dominated options;
//! 2. bypass open-reversible options (replace `A` by `B^L`);
//! 3. handle end-reversible options, which differs per universe.
//!
//! For dicots an end-reversible option is removed when another winning move
//! exists and otherwise replaced by `*`; `{A | C}` with both options
//! end-reversible becomes `0`. For dead-ending games a non-fundamental
//! end-reversible option is removed when the result stays dead-ending, and is
//! otherwise replaced by `{ | M_n}` with `n` the least index such that
//! `G >= M_n`; `{A | C}` with both options end-reversible becomes `0`.
//! Right options are handled dually.

use std::sync::LazyLock;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{conjugate, mk_game, murder, star, zero, GameId, Side, Universe};
use crate::order::ge_in;
use crate::outcome::{left_result, right_result, strong_results, Winner};

/// Rewrite passes allowed on one node before giving up.
const PASS_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReductionRule {
    Domination,
    OpenReversible,
    /// An end-reversible option removed.
    EndRemove,
    /// `{A | C}` with both options end-reversible rewritten to `0` (dead-ending).
    EndPairRemove,
    /// End-reversible option replaced by `*` (dicot).
    SubstituteStarD,
    /// `{A | C}` with both options end-reversible rewritten to `0` (dicot).
    StarPairToZeroD,
    /// End-reversible option replaced by `{ | M_n}` or `{~M_n | }` (dead-ending).
    SubstituteMurderE,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub side: Side,
    pub before: GameId,
    pub after: GameId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReversalKind {
    /// The reversing option has moves for the reversed player.
    Open,
    /// The reversing option is an end for the reversed player.
    End,
}

/// `option` of `side` reverses through `through`, an option of `option` for
/// the opponent that is no better for `side` than the whole game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reversal {
    pub side: Side,
    pub option: GameId,
    pub through: GameId,
    pub kind: ReversalKind,
}

fn require(g: GameId, u: Universe) -> Result<()> {
    if u.contains(g) {
        Ok(())
    } else {
        Err(Error::not_in(g, u))
    }
}

/// `a` is at least as good as `b` for `side`.
fn at_least(side: Side, a: GameId, b: GameId, u: Universe) -> bool {
    match side {
        Side::Left => ge_in(a, b, u),
        Side::Right => ge_in(b, a, u),
    }
}

fn without(options: &[GameId], drop: GameId) -> Vec<GameId> {
    options.iter().copied().filter(|&x| x != drop).collect()
}

fn undominated(g: GameId, side: Side, u: Universe) -> Vec<GameId> {
    let options = g.options(side);
    options
        .iter()
        .copied()
        .filter(|&a| {
            !options.iter().any(|&b| {
                b != a && at_least(side, b, a, u) && (b < a || !at_least(side, a, b, u))
            })
        })
        .collect()
}

/// Removes every dominated option on both sides. Among mutually equivalent
/// options the structurally least one is kept.
pub fn remove_dominated(g: GameId, u: Universe) -> Result<GameId> {
    require(g, u)?;
    Ok(mk_game(undominated(g, Side::Left, u), undominated(g, Side::Right, u)))
}

fn reversals(g: GameId, side: Side, u: Universe) -> impl Iterator<Item = Reversal> {
    g.options(side).iter().flat_map(move |&a| {
        a.options(side.opponent())
            .iter()
            .filter(move |&&b| at_least(side, g, b, u))
            .map(move |&b| Reversal {
                side,
                option: a,
                through: b,
                kind: if b.is_end(side) {
                    ReversalKind::End
                } else {
                    ReversalKind::Open
                },
            })
    })
}

/// First reversible option of `side` in structural order, with its reversing option.
pub fn find_reversible(g: GameId, side: Side, u: Universe) -> Result<Option<Reversal>> {
    require(g, u)?;
    Ok(reversals(g, side, u).next())
}

fn end_reversible(g: GameId, side: Side, a: GameId, u: Universe) -> bool {
    a.options(side.opponent())
        .iter()
        .any(|&b| b.is_end(side) && at_least(side, g, b, u))
}

fn bypass(g: GameId, r: &Reversal) -> GameId {
    let mut options = without(g.options(r.side), r.option);
    options.extend_from_slice(r.through.options(r.side));
    g.with_options(r.side, options)
}

/// Replaces the open-reversible option `a` by the options of its reversing
/// option `b` (for the same player).
pub fn bypass_open_reversible(g: GameId, a: GameId, b: GameId, u: Universe) -> Result<GameId> {
    require(g, u)?;
    for side in [Side::Left, Side::Right] {
        if g.options(side).contains(&a)
            && a.options(side.opponent()).contains(&b)
            && !b.is_end(side)
            && at_least(side, g, b, u)
        {
            let r = Reversal {
                side,
                option: a,
                through: b,
                kind: ReversalKind::Open,
            };
            return Ok(bypass(g, &r));
        }
    }
    Err(Error::Precondition(format!(
        "{a} is not open-reversible through {b} in {g}"
    )))
}

fn good_for(side: Side) -> Winner {
    match side {
        Side::Left => Winner::Left,
        Side::Right => Winner::Right,
    }
}

fn strong_for(g: GameId, side: Side) -> Winner {
    let (l, r) = strong_results(g);
    match side {
        Side::Left => l,
        Side::Right => r,
    }
}

/// `a` is fundamental for `side` in the dead-ending game `g`: the strong
/// result of `side` is a win with `a` and a loss without it.
fn fundamental(g: GameId, side: Side, a: GameId) -> bool {
    let options = g.options(side);
    if options.len() == 1 {
        // removing a lone option leaves an end, whose strong result is a win
        return false;
    }
    let reduced = g.with_options(side, without(options, a));
    strong_for(g, side) == good_for(side) && strong_for(reduced, side) != good_for(side)
}

pub fn is_fundamental_left(g: GameId, a: GameId) -> Result<bool> {
    require(g, Universe::DeadEnding)?;
    if !g.left().contains(&a) {
        return Err(Error::Precondition(format!("{a} is not a Left option of {g}")));
    }
    Ok(fundamental(g, Side::Left, a))
}

pub fn is_fundamental_right(g: GameId, a: GameId) -> Result<bool> {
    require(g, Universe::DeadEnding)?;
    if !g.right().contains(&a) {
        return Err(Error::Precondition(format!("{a} is not a Right option of {g}")));
    }
    Ok(fundamental(g, Side::Right, a))
}

/// `M_n` seen from `side`: the murder itself for Left, its conjugate for Right.
fn murder_for(side: Side, n: u32) -> GameId {
    match side {
        Side::Left => murder(n),
        Side::Right => conjugate(murder(n)),
    }
}

/// The option `{ | M_n}` (Left) or `{~M_n | }` (Right).
fn murder_substitute(side: Side, n: u32) -> GameId {
    let m = murder_for(side, n);
    match side {
        Side::Left => mk_game([], [m]),
        Side::Right => mk_game([m], []),
    }
}

fn murder_index(g: GameId, side: Side) -> Result<u32> {
    let bound = g
        .options(side)
        .iter()
        .flat_map(|a| a.options(side.opponent()))
        .filter(|&&b| b.is_end(side) && at_least(side, g, b, Universe::DeadEnding))
        .map(|b| b.rank())
        .max()
        // an end of rank k is at least as good as M_k for its owner's opponent
        .or_else(|| g.is_end(side).then(|| g.rank()))
        .ok_or_else(|| {
            Error::Precondition(format!("{g} has no end-reversible {side} option and is not an end"))
        })?;
    (0..=bound)
        .find(|&n| at_least(side, g, murder_for(side, n), Universe::DeadEnding))
        .ok_or_else(|| {
            Error::Internal(format!(
                "no murder index up to {bound} for {g}; an end of that rank should be bounded below"
            ))
        })
}

/// Least `n` with `g >= M_n` modulo dead-ending games, for `g` with an
/// end-reversible Left option or `g` a Left-end.
pub fn minimal_murder_index(g: GameId) -> Result<u32> {
    require(g, Universe::DeadEnding)?;
    murder_index(g, Side::Left)
}

/// Least `n` with `~M_n >= g`, for `g` with an end-reversible Right option.
pub fn minimal_murder_index_right(g: GameId) -> Result<u32> {
    require(g, Universe::DeadEnding)?;
    murder_index(g, Side::Right)
}

fn single_options_both_end_reversible(g: GameId, u: Universe) -> bool {
    g.left().len() == 1
        && g.right().len() == 1
        && end_reversible(g, Side::Left, g.left()[0], u)
        && end_reversible(g, Side::Right, g.right()[0], u)
}

/// Left wins by moving to `b` (for Right: Right wins).
fn winning_move(side: Side, b: GameId) -> bool {
    match side {
        Side::Left => right_result(b) == Winner::Left,
        Side::Right => left_result(b) == Winner::Right,
    }
}

type Rewrite = (ReductionRule, Side, GameId);

fn end_step_dicot(g: GameId) -> Result<Option<Rewrite>> {
    let u = Universe::Dicot;
    if single_options_both_end_reversible(g, u) {
        return Ok(Some((ReductionRule::StarPairToZeroD, Side::Left, zero())));
    }
    let star = star();
    for side in [Side::Left, Side::Right] {
        let options = g.options(side);
        for &a in options {
            if !end_reversible(g, side, a, u) {
                continue;
            }
            let rest = without(options, a);
            if rest.iter().any(|&b| winning_move(side, b)) {
                return Ok(Some((ReductionRule::EndRemove, side, g.with_options(side, rest))));
            }
            if a != star {
                let mut replaced = rest;
                replaced.push(star);
                return Ok(Some((
                    ReductionRule::SubstituteStarD,
                    side,
                    g.with_options(side, replaced),
                )));
            }
        }
    }
    Ok(None)
}

fn end_step_dead_ending(g: GameId) -> Result<Option<Rewrite>> {
    let u = Universe::DeadEnding;
    if single_options_both_end_reversible(g, u) {
        return Ok(Some((ReductionRule::EndPairRemove, Side::Left, zero())));
    }
    for side in [Side::Left, Side::Right] {
        let options = g.options(side);
        for &a in options {
            if !end_reversible(g, side, a, u) {
                continue;
            }
            let rest = without(options, a);
            let removed = g.with_options(side, rest.clone());
            if removed.is_dead_ending() && !fundamental(g, side, a) {
                return Ok(Some((ReductionRule::EndRemove, side, removed)));
            }
            let n = murder_index(g, side)?;
            let substitute = canonical_in(murder_substitute(side, n), u, &mut None)?;
            if a != substitute {
                let mut replaced = rest;
                replaced.push(substitute);
                return Ok(Some((
                    ReductionRule::SubstituteMurderE,
                    side,
                    g.with_options(side, replaced),
                )));
            }
        }
    }
    Ok(None)
}

fn end_step(g: GameId, u: Universe) -> Result<Option<Rewrite>> {
    match u {
        Universe::Dicot => end_step_dicot(g),
        Universe::DeadEnding => end_step_dead_ending(g),
    }
}

fn has_end_reversible(g: GameId, u: Universe) -> bool {
    [Side::Left, Side::Right]
        .into_iter()
        .any(|side| g.options(side).iter().any(|&a| end_reversible(g, side, a, u)))
}

/// One end-reversibility rewrite modulo dicots.
pub fn reduce_end_reversible_d(g: GameId) -> Result<GameId> {
    reduce_end_reversible(g, Universe::Dicot)
}

/// One end-reversibility rewrite modulo dead-ending games.
pub fn reduce_end_reversible_e(g: GameId) -> Result<GameId> {
    reduce_end_reversible(g, Universe::DeadEnding)
}

fn reduce_end_reversible(g: GameId, u: Universe) -> Result<GameId> {
    require(g, u)?;
    if !has_end_reversible(g, u) {
        return Err(Error::Precondition(format!(
            "{g} has no end-reversible option modulo {u}"
        )));
    }
    Ok(end_step(g, u)?.map_or(g, |(_, _, next)| next))
}

static CANONICAL: LazyLock<DashMap<(GameId, Universe), GameId, FxBuildHasher>> =
    LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));

/// The unique reduced form of `g` modulo `u`.
pub fn canonical_form(g: GameId, u: Universe) -> Result<GameId> {
    require(g, u)?;
    canonical_in(g, u, &mut None)
}

/// Like [`canonical_form`], also returning every rewrite applied, options
/// first. A follower shared by several options is traced once.
pub fn canonical_form_traced(g: GameId, u: Universe) -> Result<(GameId, ReductionTrace)> {
    require(g, u)?;
    let mut tracer = Some(Tracer::default());
    let cf = canonical_in(g, u, &mut tracer)?;
    let steps = tracer.map(|t| t.steps).unwrap_or_default();
    Ok((cf, ReductionTrace { steps }))
}

#[derive(Default)]
struct Tracer {
    steps: Vec<ReductionStep>,
    done: FxHashMap<GameId, GameId>,
}

fn canonical_in(g: GameId, u: Universe, trace: &mut Option<Tracer>) -> Result<GameId> {
    // a traced run bypasses the shared memo so that every step is recorded
    let known = match trace {
        None => CANONICAL.get(&(g, u)).map(|found| *found),
        Some(t) => t.done.get(&g).copied(),
    };
    if let Some(found) = known {
        return Ok(found);
    }
    let left = g
        .left()
        .iter()
        .map(|&x| canonical_in(x, u, trace))
        .collect::<Result<Vec<_>>>()?;
    let right = g
        .right()
        .iter()
        .map(|&x| canonical_in(x, u, trace))
        .collect::<Result<Vec<_>>>()?;
    let mut current = mk_game(left, right);

    let mut passes = 0;
    loop {
        passes += 1;
        if passes > PASS_CAP {
            return Err(Error::Internal(format!(
                "reduction of {g} modulo {u} did not settle after {PASS_CAP} passes"
            )));
        }
        let Some((rule, side, next)) = rewrite(current, u)? else {
            break;
        };
        if let Some(t) = trace.as_mut() {
            t.steps.push(ReductionStep {
                rule,
                side,
                before: current,
                after: next,
            });
        }
        current = next;
    }

    if let Some(t) = trace.as_mut() {
        t.done.insert(g, current);
    }
    CANONICAL.insert((g, u), current);
    CANONICAL.insert((current, u), current);
    Ok(current)
}

fn rewrite(g: GameId, u: Universe) -> Result<Option<Rewrite>> {
    for side in [Side::Left, Side::Right] {
        let kept = undominated(g, side, u);
        if kept.len() != g.options(side).len() {
            return Ok(Some((ReductionRule::Domination, side, g.with_options(side, kept))));
        }
    }
    for side in [Side::Left, Side::Right] {
        if let Some(r) = reversals(g, side, u).find(|r| r.kind == ReversalKind::Open) {
            return Ok(Some((ReductionRule::OpenReversible, side, bypass(g, &r))));
        }
    }
    end_step(g, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{integer, murder, sum};
    use crate::notation::game;
    use crate::order::{equivalent, ge};

    const E: Universe = Universe::DeadEnding;
    const D: Universe = Universe::Dicot;

    #[test]
    fn known_identities() {
        assert_eq!(canonical_form(sum(integer(3), integer(-7)), E).unwrap(), integer(-4));
        assert_eq!(canonical_form(sum(integer(1), integer(1)), E).unwrap(), integer(2));
        assert_eq!(canonical_form(sum(star(), star()), D).unwrap(), zero());
        assert_eq!(canonical_form(game("{-1|1}"), E).unwrap(), zero());
        assert_eq!(canonical_form(sum(integer(1), integer(-1)), E).unwrap(), zero());
    }

    #[test]
    fn domination() {
        // 0 and 1 are incomparable modulo E: X = 0 and X = * separate them
        assert_eq!(crate::outcome::outcome(integer(1)), crate::outcome::Outcome::R);
        assert_eq!(crate::outcome::outcome(sum(integer(1), star())), crate::outcome::Outcome::N);
        assert_eq!(remove_dominated(game("{0,1|}"), E).unwrap(), game("{0,1|}"));
        assert!(remove_dominated(game("{0,{0|}|}"), D).is_err());
        assert_eq!(remove_dominated(game("{0,*|0}"), D).unwrap(), game("{0,*|0}"));
        assert_eq!(remove_dominated(star(), D).unwrap(), star());
        assert_eq!(remove_dominated(star(), E).unwrap(), star());
        assert_eq!(remove_dominated(game("{0,0|0}"), E).unwrap(), star());
        assert!(remove_dominated(integer(1), D).is_err());
    }

    #[test]
    fn reversal_search() {
        let r = find_reversible(game("{-1|1}"), Side::Left, E).unwrap().unwrap();
        assert_eq!(r.option, integer(-1));
        assert_eq!(r.through, zero());
        assert_eq!(r.kind, ReversalKind::End);
        assert_eq!(find_reversible(star(), Side::Left, D).unwrap(), None);

        let g = game("{{0|-1}|0}");
        let a = game("{0|-1}");
        let expected = a
            .right()
            .iter()
            .find(|&&b| ge(g, b, E).unwrap())
            .map(|&b| if b.is_left_end() { ReversalKind::End } else { ReversalKind::Open });
        assert_eq!(find_reversible(g, Side::Left, E).unwrap().map(|r| r.kind), expected);
    }

    #[test]
    fn fundamental_options() {
        let g = game("{*|0}");
        assert!(!is_fundamental_left(g, star()).unwrap());
        let lone = game("{-1|1}");
        assert!(!is_fundamental_left(lone, integer(-1)).unwrap());
        assert!(is_fundamental_left(g, zero()).is_err());
    }

    #[test]
    fn murder_indices() {
        assert_eq!(minimal_murder_index(game("{-1|1}")).unwrap(), 0);
        assert!(minimal_murder_index(star()).is_err());
        assert_eq!(minimal_murder_index(integer(-1)).unwrap(), 1);
        assert_eq!(minimal_murder_index(murder(3)).unwrap(), 3);
        assert!(minimal_murder_index(integer(1)).is_err());
        assert!(!ge(integer(-1), zero(), E).unwrap());
        assert!(ge(integer(-1), murder(1), E).unwrap());
    }

    #[test]
    fn end_rules() {
        assert_eq!(reduce_end_reversible_e(game("{-1|1}")).unwrap(), zero());
        let ss = game("{*|*}");
        assert_eq!(reduce_end_reversible_d(ss).unwrap(), zero());
        assert!(reduce_end_reversible_d(star()).is_err());
    }

    #[test]
    fn traced_steps_are_equivalences() {
        for text in ["3 + -7", "{-1|1}", "{*|*} + {0,*|0}", "M(2) + ~M(2)", "{{*|0},0|{0|-1}}"] {
            let g = game(text);
            let u = if g.is_dicot() { D } else { E };
            let (cf, trace) = canonical_form_traced(g, u).unwrap();
            assert_eq!(cf, canonical_form(g, u).unwrap());
            for step in &trace.steps {
                assert!(equivalent(step.before, step.after, u).unwrap(), "{step:?}");
                assert!(u.contains(step.after));
            }
        }
    }
}
