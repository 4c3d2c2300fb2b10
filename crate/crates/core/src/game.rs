//! Interned short game trees.
//!
//! Every game lives in a process-wide intern table and is addressed by a
//! [`GameId`]. Option sets are deduplicated and sorted by the structural
//! order on construction, so two ids are equal exactly when the trees are
//! identical. Nodes are never freed.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::LazyLock;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::outcome::Winner;

const DICOT: u8 = 1 << 0;
const DEAD_ENDING: u8 = 1 << 1;
const DEAD_LEFT_END: u8 = 1 << 2;
const DEAD_RIGHT_END: u8 = 1 << 3;
const IMPARTIAL: u8 = 1 << 4;

pub(crate) struct Node {
    id: u32,
    left: Box<[GameId]>,
    right: Box<[GameId]>,
    rank: u32,
    flags: u8,
    /// Misère (left-first, right-first) winners.
    misere: (Winner, Winner),
    /// Normal-play (left-first, right-first) winners.
    normal: (Winner, Winner),
}

/// Handle to an interned game. Cheap to copy and safe to share across threads.
///
/// `Eq` and `Hash` use the intern index; `Ord` is the structural order
/// (rank, number of Left options, number of Right options, then the option
/// lists compared lexicographically under the same order).
#[derive(Clone, Copy)]
pub struct GameId(&'static Node);

type OptionKey = (Box<[GameId]>, Box<[GameId]>);

struct Store {
    table: DashMap<OptionKey, GameId, FxBuildHasher>,
    next_id: AtomicU32,
    sums: DashMap<(GameId, GameId), GameId, FxBuildHasher>,
    conjugates: DashMap<GameId, GameId, FxBuildHasher>,
}

static STORE: LazyLock<Store> = LazyLock::new(|| Store {
    table: DashMap::with_hasher(FxBuildHasher),
    next_id: AtomicU32::new(0),
    sums: DashMap::with_hasher(FxBuildHasher),
    conjugates: DashMap::with_hasher(FxBuildHasher),
});

/// Number of distinct games interned so far.
pub fn interned_count() -> usize {
    STORE.table.len()
}

/// Builds `{left | right}` and returns its interned id.
pub fn mk_game<L, R>(left: L, right: R) -> GameId
where
    L: IntoIterator<Item = GameId>,
    R: IntoIterator<Item = GameId>,
{
    intern(left.into_iter().collect(), right.into_iter().collect())
}

fn normalize(mut options: Vec<GameId>) -> Box<[GameId]> {
    options.sort_unstable();
    options.dedup();
    options.into_boxed_slice()
}

fn intern(left: Vec<GameId>, right: Vec<GameId>) -> GameId {
    let key = (normalize(left), normalize(right));
    if let Some(found) = STORE.table.get(&key) {
        return *found;
    }
    let node = build_node(&key.0, &key.1);
    *STORE.table.entry(key).or_insert(node)
}

fn build_node(left: &[GameId], right: &[GameId]) -> GameId {
    let rank = left
        .iter()
        .chain(right)
        .map(|g| g.rank() + 1)
        .max()
        .unwrap_or(0);

    let all = |flag: u8| left.iter().chain(right).all(|g| g.0.flags & flag != 0);
    let mut flags = 0;
    if left.is_empty() == right.is_empty() && all(DICOT) {
        flags |= DICOT;
    }
    if left.is_empty() && right.iter().all(|g| g.0.flags & DEAD_LEFT_END != 0) {
        flags |= DEAD_LEFT_END;
    }
    if right.is_empty() && left.iter().all(|g| g.0.flags & DEAD_RIGHT_END != 0) {
        flags |= DEAD_RIGHT_END;
    }
    // Every end-follower is a dead end: the options carry the property, and
    // if this node is itself an end it must be a dead one.
    let ends_ok = (!left.is_empty() || flags & DEAD_LEFT_END != 0)
        && (!right.is_empty() || flags & DEAD_RIGHT_END != 0);
    if ends_ok && all(DEAD_ENDING) {
        flags |= DEAD_ENDING;
    }
    if left == right && all(IMPARTIAL) {
        flags |= IMPARTIAL;
    }

    let misere = (
        if left.is_empty() {
            Winner::Left
        } else {
            left.iter().map(|g| g.0.misere.1).max().unwrap()
        },
        if right.is_empty() {
            Winner::Right
        } else {
            right.iter().map(|g| g.0.misere.0).min().unwrap()
        },
    );
    let normal = (
        if left.is_empty() {
            Winner::Right
        } else {
            left.iter().map(|g| g.0.normal.1).max().unwrap()
        },
        if right.is_empty() {
            Winner::Left
        } else {
            right.iter().map(|g| g.0.normal.0).min().unwrap()
        },
    );

    let node = Node {
        id: STORE.next_id.fetch_add(1, AtomicOrdering::Relaxed),
        left: left.into(),
        right: right.into(),
        rank,
        flags,
        misere,
        normal,
    };
    GameId(Box::leak(Box::new(node)))
}

/// The empty game `{ | }`.
pub fn zero() -> GameId {
    static ZERO: LazyLock<GameId> = LazyLock::new(|| mk_game([], []));
    *ZERO
}

/// `* = {0 | 0}`.
pub fn star() -> GameId {
    static STAR: LazyLock<GameId> = LazyLock::new(|| mk_game([zero()], [zero()]));
    *STAR
}

/// The misère integer `n`: `n = {n-1 | }` for positive `n`, `{ | n+1}` for negative.
pub fn integer(n: i64) -> GameId {
    let mut g = zero();
    for _ in 0..n.unsigned_abs() {
        g = if n > 0 { mk_game([g], []) } else { mk_game([], [g]) };
    }
    g
}

/// The perfect murder `M_n`: `M_0 = 0`, `M_n = { | 0, M_{n-1}}`.
pub fn murder(n: u32) -> GameId {
    let mut g = zero();
    for _ in 0..n {
        g = mk_game([], [zero(), g]);
    }
    g
}

/// Swaps the roles of Left and Right throughout the tree.
pub fn conjugate(g: GameId) -> GameId {
    if g.is_zero() {
        return g;
    }
    if let Some(c) = STORE.conjugates.get(&g) {
        return *c;
    }
    let c = mk_game(
        g.right().iter().map(|&x| conjugate(x)),
        g.left().iter().map(|&x| conjugate(x)),
    );
    STORE.conjugates.insert(g, c);
    STORE.conjugates.insert(c, g);
    c
}

/// Disjunctive sum `g + h`.
pub fn sum(g: GameId, h: GameId) -> GameId {
    if g.is_zero() {
        return h;
    }
    if h.is_zero() {
        return g;
    }
    let key = if g.0.id <= h.0.id { (g, h) } else { (h, g) };
    if let Some(s) = STORE.sums.get(&key) {
        return *s;
    }
    let left = g
        .left()
        .iter()
        .map(|&gl| sum(gl, h))
        .chain(h.left().iter().map(|&hl| sum(g, hl)))
        .collect();
    let right = g
        .right()
        .iter()
        .map(|&gr| sum(gr, h))
        .chain(h.right().iter().map(|&hr| sum(g, hr)))
        .collect();
    let s = intern(left, right);
    STORE.sums.insert(key, s);
    s
}

/// Tree height: 0 for the empty game, otherwise one more than the highest option.
pub fn rank(g: GameId) -> u32 {
    g.rank()
}

/// A player, also used to pick an option set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "Left",
            Side::Right => "Right",
        })
    }
}

impl GameId {
    /// Intern index. Stable for the lifetime of the process only.
    pub fn index(self) -> u32 {
        self.0.id
    }

    pub fn left(self) -> &'static [GameId] {
        &self.0.left
    }

    pub fn right(self) -> &'static [GameId] {
        &self.0.right
    }

    pub fn options(self, side: Side) -> &'static [GameId] {
        match side {
            Side::Left => self.left(),
            Side::Right => self.right(),
        }
    }

    pub fn rank(self) -> u32 {
        self.0.rank
    }

    pub fn is_zero(self) -> bool {
        self.0.rank == 0
    }

    pub fn is_dicot(self) -> bool {
        self.0.flags & DICOT != 0
    }

    pub fn is_dead_ending(self) -> bool {
        self.0.flags & DEAD_ENDING != 0
    }

    pub fn is_left_end(self) -> bool {
        self.0.left.is_empty()
    }

    pub fn is_right_end(self) -> bool {
        self.0.right.is_empty()
    }

    /// True when `side` has no move here.
    pub fn is_end(self, side: Side) -> bool {
        self.options(side).is_empty()
    }

    /// Every follower (including this game) is a Left-end.
    pub fn is_dead_left_end(self) -> bool {
        self.0.flags & DEAD_LEFT_END != 0
    }

    pub fn is_dead_right_end(self) -> bool {
        self.0.flags & DEAD_RIGHT_END != 0
    }

    pub fn is_dead_end(self) -> bool {
        self.is_dead_left_end() || self.is_dead_right_end()
    }

    pub fn is_impartial(self) -> bool {
        self.0.flags & IMPARTIAL != 0
    }

    pub(crate) fn misere_results(self) -> (Winner, Winner) {
        self.0.misere
    }

    pub(crate) fn normal_results(self) -> (Winner, Winner) {
        self.0.normal
    }

    /// All distinct followers, the game itself first.
    pub fn followers(self) -> Vec<GameId> {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(g) = stack.pop() {
            if seen.insert(g) {
                out.push(g);
                stack.extend(g.left().iter().chain(g.right()).copied());
            }
        }
        out
    }

    /// Same game with the options of `side` replaced.
    pub fn with_options(self, side: Side, options: Vec<GameId>) -> GameId {
        match side {
            Side::Left => intern(options, self.right().to_vec()),
            Side::Right => intern(self.left().to_vec(), options),
        }
    }
}

impl PartialEq for GameId {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for GameId {}

impl Hash for GameId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u32(self.0.id);
    }
}

impl Ord for GameId {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.rank()
            .cmp(&other.rank())
            .then(self.left().len().cmp(&other.left().len()))
            .then(self.right().len().cmp(&other.right().len()))
            .then_with(|| self.left().iter().cmp(other.left().iter()))
            .then_with(|| self.right().iter().cmp(other.right().iter()))
    }
}

impl PartialOrd for GameId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::print(*self, crate::notation::Style::Named))
    }
}

impl fmt::Debug for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GameId({}: {})", self.0.id, self)
    }
}

/// A universe of games in which comparison and reduction take place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Universe {
    /// Dicots: at every follower either both players can move or neither can.
    Dicot,
    /// Dead-ending games: every end-follower is a dead end.
    DeadEnding,
}

impl Universe {
    pub fn contains(self, g: GameId) -> bool {
        match self {
            Universe::Dicot => g.is_dicot(),
            Universe::DeadEnding => g.is_dead_ending(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Universe::Dicot => "dicot",
            Universe::DeadEnding => "dead-ending",
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg_one() -> GameId {
        mk_game([], [zero()])
    }

    #[test]
    fn constructors() {
        assert_eq!(mk_game([], []), zero());
        assert_eq!(mk_game([zero()], [zero()]), star());
        assert_eq!(
            mk_game([star(), zero()], [zero(), star()]),
            mk_game([zero(), star()], [star(), zero()])
        );
        assert_eq!(integer(0), zero());
        assert_eq!(integer(2), mk_game([mk_game([zero()], [])], []));
        assert_eq!(integer(-1), neg_one());
        assert_eq!(murder(0), zero());
        assert_eq!(murder(2), mk_game([], [zero(), neg_one()]));
        assert_eq!(murder(1), integer(-1));
    }

    #[test]
    fn duplicate_options_merge() {
        let g = mk_game([zero(), zero()], [zero()]);
        assert_eq!(g, star());
        assert_eq!(g.left().len(), 1);
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(zero()), zero());
        let g = mk_game([zero(), star()], [zero(), star()]);
        assert_eq!(conjugate(g), g);
        assert_eq!(conjugate(integer(3)), integer(-3));
        assert_eq!(conjugate(conjugate(murder(3))), murder(3));
    }

    #[test]
    fn sums() {
        let g = mk_game([star()], [zero()]);
        assert_eq!(sum(zero(), g), g);
        assert_eq!(sum(star(), star()), mk_game([star()], [star()]));
        assert_eq!(rank(sum(integer(2), murder(3))), 5);
        assert_eq!(sum(integer(1), integer(1)), integer(2));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(zero()), 0);
        assert_eq!(rank(murder(4)), 4);
        assert_eq!(rank(mk_game([star()], [zero()])), 2);
        assert_eq!(rank(conjugate(murder(4))), 4);
    }

    #[test]
    fn predicates() {
        assert!(star().is_dicot());
        assert!(!integer(1).is_dicot());
        assert!(murder(3).is_dead_ending());
        assert!(murder(3).is_dead_left_end());
        // {|*} is a Left-end but its option * lets Left move: not dead
        let bad_end = mk_game([], [star()]);
        assert!(bad_end.is_left_end());
        assert!(!bad_end.is_dead_left_end());
        assert!(!mk_game([bad_end], [zero()]).is_dead_ending());
        assert!(zero().is_dead_left_end() && zero().is_dead_right_end());
        assert!(star().is_impartial());
        assert!(!integer(1).is_impartial());
        assert!(!mk_game([zero()], [star()]).is_impartial());
    }

    #[test]
    fn structural_order() {
        assert!(zero() < star());
        assert!(star() < integer(2));
        // same rank and counts: decided by the children
        assert!(integer(-1) < integer(1) || integer(1) < integer(-1));
        let mut v = [star(), zero(), integer(1), integer(-1)];
        v.sort();
        assert_eq!(v[0], zero());
        assert_eq!(v[3], star());
    }

    #[test]
    fn followers_of_murder() {
        // M_3, M_2, M_1, 0
        assert_eq!(murder(3).followers().len(), 4);
    }
}
