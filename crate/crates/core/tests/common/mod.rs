//! Brute-force reference implementations that share nothing with the
//! library's outcome code: sums are explored as multisets of components and
//! never interned.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;

use misere_core::{GameId, Outcome, Winner};

/// Sorted component ids, Left to move, misère convention.
type Position = (Vec<u32>, bool, bool);

thread_local! {
    static MEMO: RefCell<HashMap<Position, bool>> = RefCell::new(HashMap::new());
}

/// Whether the player to move wins the sum of `parts`.
/// `left_to_move` picks the mover; `misere` picks the convention.
fn mover_wins(parts: &[GameId], left_to_move: bool, misere: bool) -> bool {
    let mut key: Vec<u32> = parts.iter().map(|g| g.index()).collect();
    key.sort_unstable();
    let key = (key, left_to_move, misere);
    if let Some(&w) = MEMO.with(|m| m.borrow().get(&key).copied()).as_ref() {
        return w;
    }
    let mut has_move = false;
    let mut wins = false;
    'outer: for (i, &g) in parts.iter().enumerate() {
        let options = if left_to_move { g.left() } else { g.right() };
        for &o in options {
            has_move = true;
            let mut next = parts.to_vec();
            next[i] = o;
            if !mover_wins(&next, !left_to_move, misere) {
                wins = true;
                break 'outer;
            }
        }
    }
    if !has_move {
        wins = misere;
    }
    MEMO.with(|m| m.borrow_mut().insert(key, wins));
    wins
}

fn winner(parts: &[GameId], left_first: bool, misere: bool) -> Winner {
    let mover_wins = mover_wins(parts, left_first, misere);
    if mover_wins == left_first {
        Winner::Left
    } else {
        Winner::Right
    }
}

/// Misère outcome of the disjunctive sum of `parts`.
pub fn outcome_of(parts: &[GameId]) -> Outcome {
    Outcome::from_results(winner(parts, true, true), winner(parts, false, true))
}

/// Normal-play outcome of the disjunctive sum of `parts`.
pub fn normal_outcome_of(parts: &[GameId]) -> Outcome {
    Outcome::from_results(winner(parts, true, false), winner(parts, false, false))
}

/// Strong outcome by exhaustion: Left's worst first-player result against
/// every listed Left-end, and Right's against every listed Right-end.
pub fn strong_outcome_over(g: GameId, left_ends: &[GameId], right_ends: &[GameId]) -> (Winner, Winner) {
    let l = left_ends
        .iter()
        .map(|&x| winner(&[g, x], true, true))
        .min()
        .unwrap_or(Winner::Left);
    let r = right_ends
        .iter()
        .map(|&x| winner(&[g, x], false, true))
        .max()
        .unwrap_or(Winner::Right);
    (l, r)
}

/// `g >= h` against each test game by direct play.
pub fn dominates_over(g: GameId, h: GameId, tests: &[GameId]) -> bool {
    tests
        .iter()
        .all(|&x| misere_core::outcome_ge(outcome_of(&[g, x]), outcome_of(&[h, x])))
}
