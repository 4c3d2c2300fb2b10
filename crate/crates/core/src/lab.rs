//! Bounded enumeration of universes and empirical property scans.
//!
//! Scans never fail on a counterexample; they collect violations into a
//! report. All sampling is seeded so a report is reproducible from its budget
//! and seed.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::canonical::canonical_form;
use crate::error::{Error, Result};
use crate::game::{conjugate, mk_game, murder, sum, zero, GameId, Side, Universe};
use crate::notation::{print, Style};
use crate::order::{definitional_ge_check, equivalent_in, ge_in, ge_normal};
use crate::outcome::{outcome, strong_results, strong_results_over, sum_outcome, Outcome, Winner};

pub const DEFAULT_SEED: u64 = 1729;

/// Largest rank accepted without opting in through [`EnumerationBudget::max_games`].
pub const DEFAULT_MAX_RANK: u32 = 3;

/// Candidate-count guard for a single enumeration.
pub const DEFAULT_MAX_GAMES: usize = 2_000_000;

/// Keep at most this many violation messages per report.
const VIOLATION_LOG_CAP: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub max_rank: u32,
    pub max_options: usize,
    /// `None` enumerates every form, with no universe filter.
    pub universe: Option<Universe>,
    pub max_games: usize,
}

impl EnumerationBudget {
    pub fn new(max_rank: u32, max_options: usize, universe: Option<Universe>) -> Self {
        EnumerationBudget {
            max_rank,
            max_options,
            universe,
            max_games: DEFAULT_MAX_GAMES,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_options == 0 {
            return Err(Error::Precondition("max options per side must be at least 1".into()));
        }
        if self.max_rank > DEFAULT_MAX_RANK && self.max_games <= DEFAULT_MAX_GAMES {
            return Err(Error::ResourceCap { cap: self.max_games });
        }
        Ok(())
    }

    /// Whether `{left | right}` would be admitted, decided from the options
    /// alone so that rejected candidates are never interned.
    fn admits_options(&self, left: &[GameId], right: &[GameId]) -> bool {
        let all = |f: fn(GameId) -> bool| left.iter().chain(right).all(|&g| f(g));
        match self.universe {
            None => true,
            Some(Universe::Dicot) => left.is_empty() == right.is_empty() && all(GameId::is_dicot),
            Some(Universe::DeadEnding) => {
                all(GameId::is_dead_ending)
                    && (!left.is_empty() || right.iter().all(|g| g.is_dead_left_end()))
                    && (!right.is_empty() || left.iter().all(|g| g.is_dead_right_end()))
            }
        }
    }
}

/// All subsets of `pool` with at most `cap` elements, in lexicographic index order.
fn bounded_subsets(pool: &[GameId], cap: usize) -> Vec<Vec<GameId>> {
    fn extend(pool: &[GameId], cap: usize, start: usize, cur: &mut Vec<GameId>, out: &mut Vec<Vec<GameId>>) {
        out.push(cur.clone());
        if cur.len() == cap {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            extend(pool, cap, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(pool, cap, 0, &mut Vec::new(), &mut out);
    out
}

fn count_subsets(n: usize, cap: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=cap.min(n) {
        total += binom;
        binom = binom * (n - k) as u128 / (k + 1) as u128;
    }
    total
}

/// Every game of the budget's slice: rank at most `max_rank`, at most
/// `max_options` options per side at every follower, and inside the universe
/// if one is given. Sorted by the structural order, so ranks ascend.
pub fn enumerate(budget: &EnumerationBudget) -> Result<Vec<GameId>> {
    budget.validate()?;
    let mut games = vec![zero()];
    for r in 1..=budget.max_rank {
        let pool = games.clone();
        let candidates = count_subsets(pool.len(), budget.max_options).pow(2);
        if candidates > budget.max_games as u128 {
            return Err(Error::ResourceCap { cap: budget.max_games });
        }
        let subsets = bounded_subsets(&pool, budget.max_options);
        for left in &subsets {
            for right in &subsets {
                let top = left.iter().chain(right).map(|g| g.rank() + 1).max();
                if top == Some(r) && budget.admits_options(left, right) {
                    games.push(mk_game(left.iter().copied(), right.iter().copied()));
                }
            }
        }
    }
    games.sort();
    Ok(games)
}

/// Every dead end for `side` (dead Left-ends `{ | S}` or dead Right-ends
/// `{S | }`) of rank at most `max_rank` with at most `max_options` options at
/// each follower. These are exactly the `side`-ends of the dead-ending
/// universe, and they stay few enough to list well past rank 3.
pub fn enumerate_dead_ends(max_rank: u32, max_options: usize, side: Side) -> Result<Vec<GameId>> {
    if max_options == 0 {
        return Err(Error::Precondition("max options per side must be at least 1".into()));
    }
    let mut ends = vec![zero()];
    for r in 1..=max_rank {
        let pool = ends.clone();
        if count_subsets(pool.len(), max_options) > DEFAULT_MAX_GAMES as u128 {
            return Err(Error::ResourceCap { cap: DEFAULT_MAX_GAMES });
        }
        for set in bounded_subsets(&pool, max_options) {
            if set.iter().map(|g| g.rank() + 1).max() == Some(r) {
                ends.push(match side {
                    Side::Left => mk_game([], set),
                    Side::Right => mk_game(set, []),
                });
            }
        }
    }
    ends.sort();
    Ok(ends)
}

/// Up to `count` distinct games of rank exactly `budget.max_rank`, drawn
/// uniformly from the slice (options chosen from the enumerated lower ranks).
/// Used where the full slice is too large to enumerate.
pub fn sample_top_rank(budget: &EnumerationBudget, count: usize, seed: u64) -> Result<Vec<GameId>> {
    if budget.max_rank == 0 {
        return Ok(vec![zero()]);
    }
    let lower = enumerate(&EnumerationBudget {
        max_rank: budget.max_rank - 1,
        ..*budget
    })?;
    let subsets = bounded_subsets(&lower, budget.max_options);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < count.saturating_mul(1000) {
        attempts += 1;
        let left = &subsets[rng.gen_range(0..subsets.len())];
        let right = &subsets[rng.gen_range(0..subsets.len())];
        let top = left.iter().chain(right).map(|g| g.rank() + 1).max();
        if top != Some(budget.max_rank) || !budget.admits_options(left, right) {
            continue;
        }
        let g = mk_game(left.iter().copied(), right.iter().copied());
        if seen.insert(g) {
            out.push(g);
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of a property scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub name: String,
    pub universe: Option<Universe>,
    /// Number of instances examined.
    pub checked: u64,
    /// Instances where the property's premise held (so the check was non-vacuous).
    pub exercised: u64,
    pub violation_count: u64,
    /// The first violations found, as readable messages.
    pub violations: Vec<String>,
    pub seed: Option<u64>,
}

impl ScanReport {
    fn new(name: &str, universe: Option<Universe>) -> Self {
        ScanReport {
            name: name.to_string(),
            universe,
            ..Default::default()
        }
    }

    fn violation(&mut self, message: String) {
        self.violation_count += 1;
        if self.violations.len() < VIOLATION_LOG_CAP {
            self.violations.push(message);
        }
    }

    /// Counts one instance and records a violation when `ok` is false.
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation(message());
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let universe = self.universe.map_or("-", |u| u.name());
        write!(
            f,
            "{:<28} {:<12} checked {:>10}  exercised {:>10}  violations {}",
            self.name, universe, self.checked, self.exercised, self.violation_count
        )?;
        for v in &self.violations {
            write!(f, "\n    {v}")?;
        }
        Ok(())
    }
}

fn name(g: GameId) -> String {
    print(g, Style::Named)
}

/// Class summary inside a [`CensusReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub representative: String,
    pub rank: u32,
    pub size: usize,
    pub outcome: Outcome,
    /// `rep + ~rep` reduces to `0`.
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub universe: Universe,
    pub games: usize,
    pub per_rank: BTreeMap<u32, usize>,
    pub classes: Vec<ClassSummary>,
    pub outcome_distribution: BTreeMap<String, usize>,
    pub invertible: Vec<String>,
    pub sampled_pairs: usize,
    pub seed: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl CensusReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn summary_table(&self) -> String {
        let mut out = format!(
            "universe {}: {} games, {} classes, {} sampled pairs, {} violations\n",
            self.universe,
            self.games,
            self.classes.len(),
            self.sampled_pairs,
            self.violation_count
        );
        out.push_str("rank  games\n");
        for (r, n) in &self.per_rank {
            out.push_str(&format!("{r:>4}  {n}\n"));
        }
        out.push_str("outcome  games\n");
        for (o, n) in &self.outcome_distribution {
            out.push_str(&format!("{o:>7}  {n}\n"));
        }
        out.push_str("size  outcome  invertible  representative\n");
        for c in &self.classes {
            out.push_str(&format!(
                "{:>4}  {:>7}  {:>10}  {}\n",
                c.size, c.outcome, c.invertible, c.representative
            ));
        }
        for v in &self.violations {
            out.push_str(&format!("violation: {v}\n"));
        }
        out
    }
}

/// Buckets `games` by canonical form and cross-checks the bucketing against
/// direct equivalence tests.
///
/// Checked: every game is equivalent to its representative; representatives
/// are pairwise inequivalent; and on `sample_pairs` seeded random pairs,
/// equivalence agrees with having the same representative.
pub fn census(games: &[GameId], u: Universe, sample_pairs: usize, seed: u64) -> Result<CensusReport> {
    let mut violations = ScanReport::new("census", Some(u));
    let mut rep_of = FxHashMap::default();
    let mut buckets: BTreeMap<GameId, Vec<GameId>> = BTreeMap::new();
    let mut per_rank = BTreeMap::new();
    let mut outcomes = BTreeMap::new();
    for &g in games {
        let cf = canonical_form(g, u)?;
        violations.check(u.contains(cf) && equivalent_in(g, cf, u), || {
            format!("{} is not equivalent to its representative {}", name(g), name(cf))
        });
        rep_of.insert(g, cf);
        buckets.entry(cf).or_default().push(g);
        *per_rank.entry(g.rank()).or_insert(0) += 1;
        *outcomes.entry(outcome(g).to_string()).or_insert(0) += 1;
    }

    let reps: Vec<GameId> = buckets.keys().copied().collect();
    for (i, &a) in reps.iter().enumerate() {
        for &b in &reps[i + 1..] {
            violations.check(!equivalent_in(a, b, u), || {
                format!("distinct representatives {} and {} are equivalent", name(a), name(b))
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = 0;
    if !games.is_empty() {
        for _ in 0..sample_pairs {
            let g = games[rng.gen_range(0..games.len())];
            let h = games[rng.gen_range(0..games.len())];
            let same = rep_of[&g] == rep_of[&h];
            violations.check(equivalent_in(g, h, u) == same, || {
                format!("{} and {}: equivalence disagrees with bucketing", name(g), name(h))
            });
            sampled += 1;
        }
    }

    let mut classes = Vec::new();
    let mut invertible = Vec::new();
    for (rep, members) in &buckets {
        let inv = canonical_form(sum(*rep, conjugate(*rep)), u)? == zero();
        if inv {
            invertible.push(name(*rep));
        }
        classes.push(ClassSummary {
            representative: name(*rep),
            rank: rep.rank(),
            size: members.len(),
            outcome: outcome(*rep),
            invertible: inv,
        });
    }

    Ok(CensusReport {
        universe: u,
        games: games.len(),
        per_rank,
        classes,
        outcome_distribution: outcomes,
        invertible,
        sampled_pairs: sampled,
        seed,
        violation_count: violations.violation_count,
        violations: violations.violations,
    })
}

/// For every unordered pair with `g + h == 0` modulo `u`, checks `h == ~g`.
/// The impartial members are also scanned modulo dicots, which agrees with
/// equivalence among impartial games.
pub fn scan_conjugate_property(games: &[GameId], u: Universe) -> Vec<ScanReport> {
    let mut reports = vec![conjugate_scan("conjugate property", games, u)];
    let impartial: Vec<GameId> = games.iter().copied().filter(|g| g.is_impartial()).collect();
    reports.push(conjugate_scan("conjugate property (impartial)", &impartial, Universe::Dicot));
    reports
}

fn conjugate_scan(label: &str, games: &[GameId], u: Universe) -> ScanReport {
    let mut report = ScanReport::new(label, Some(u));
    for (i, &g) in games.iter().enumerate() {
        for &h in &games[i..] {
            report.checked += 1;
            let total = sum(g, h);
            if equivalent_in(total, zero(), u) {
                report.exercised += 1;
                if !equivalent_in(h, conjugate(g), u) {
                    report.violation(format!(
                        "{} + {} is zero but {} is not the conjugate",
                        name(g),
                        name(h),
                        name(h)
                    ));
                }
            }
        }
    }
    report
}

/// Perfect-murder facts: outcomes, the descending chain, that every Left-end
/// of rank `k` lies above `M_k .. M_{k+2}`, and that `M_0 >= M_1` fails.
pub fn scan_murder_theorems(max_n: u32, left_ends: &[GameId]) -> ScanReport {
    let u = Universe::DeadEnding;
    let mut report = ScanReport::new("murder bounds", Some(u));
    report.check(outcome(murder(0)) == Outcome::N, || "o(M_0) != N".into());
    for k in 1..=max_n {
        report.check(outcome(murder(k)) == Outcome::L, || format!("o(M_{k}) != L"));
        report.check(ge_in(murder(k), murder(k + 1), u), || format!("M_{k} >= M_{} fails", k + 1));
    }
    report.check(!ge_in(murder(0), murder(1), u), || "M_0 >= M_1 holds".into());
    for &g in left_ends {
        let k = g.rank();
        if k == 0 || !g.is_left_end() || !g.is_dead_ending() {
            continue;
        }
        report.exercised += 1;
        for n in k..=k + 2 {
            report.check(ge_in(g, murder(n), u), || format!("{} >= M_{n} fails", name(g)));
        }
    }
    report
}

/// Misère comparison implies normal-play comparison. Over all ordered pairs
/// when `sample_pairs` is `None`, otherwise over seeded random pairs.
pub fn scan_normal_embedding(
    games: &[GameId],
    u: Universe,
    sample_pairs: Option<usize>,
    seed: u64,
) -> ScanReport {
    let mut report = ScanReport::new("normal-play embedding", Some(u));
    let visit = |g: GameId, h: GameId, report: &mut ScanReport| {
        report.checked += 1;
        if ge_in(g, h, u) {
            report.exercised += 1;
            if !ge_normal(g, h) {
                report.violation(format!("{} >= {} but not in normal play", name(g), name(h)));
            }
        }
    };
    match sample_pairs {
        None => {
            for &g in games {
                for &h in games {
                    visit(g, h, &mut report);
                }
            }
        }
        Some(n) => {
            report.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..n {
                let g = games[rng.gen_range(0..games.len())];
                let h = games[rng.gen_range(0..games.len())];
                visit(g, h, &mut report);
            }
        }
    }
    report
}

/// The strong-outcome shortcut against a brute-force minimum (maximum) over
/// the supplied Left-ends (Right-ends) of rank at most `rank(g) + 1`.
pub fn scan_strong_outcomes(games: &[GameId], left_ends: &[GameId], right_ends: &[GameId]) -> ScanReport {
    let mut report = ScanReport::new("strong outcome oracle", Some(Universe::DeadEnding));
    for &g in games {
        if !g.is_dead_ending() {
            continue;
        }
        let limit = g.rank() + 1;
        let ls: Vec<GameId> = left_ends.iter().copied().filter(|x| x.rank() <= limit).collect();
        let rs: Vec<GameId> = right_ends.iter().copied().filter(|x| x.rank() <= limit).collect();
        let brute = strong_results_over(g, &ls, &rs);
        let formula = strong_results(g);
        report.check(brute == formula, || {
            format!("{}: formula {:?} vs brute force {:?}", name(g), formula, brute)
        });
    }
    report
}

/// Reflexivity over all games and transitivity over every ordered triple of
/// the slice; `exercised` counts the triples with `a >= b >= c`.
pub fn scan_preorder(games: &[GameId], u: Universe) -> Vec<ScanReport> {
    let mut reflexive = ScanReport::new("reflexivity", Some(u));
    for &g in games {
        reflexive.exercised += 1;
        reflexive.check(ge_in(g, g, u), || format!("{} >= itself fails", name(g)));
    }
    let n = games.len();
    let above: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| ge_in(games[i], games[j], u)).collect())
        .collect();
    let mut matrix = vec![false; n * n];
    for (i, row) in above.iter().enumerate() {
        for &j in row {
            matrix[i * n + j] = true;
        }
    }
    let mut transitive = ScanReport::new("transitivity", Some(u));
    transitive.checked = (n as u64).pow(3);
    for a in 0..n {
        for &b in &above[a] {
            for &c in &above[b] {
                transitive.exercised += 1;
                if !matrix[a * n + c] {
                    transitive.violation(
                    format!(
                        "{} >= {} >= {} but not {0} >= {2}",
                        name(games[a]),
                        name(games[b]),
                        name(games[c])
                    ));
                }
            }
        }
    }
    vec![reflexive, transitive]
}

/// Every pair with `g >= h` passes the defining check against `test_set`.
pub fn scan_soundness(games: &[GameId], u: Universe, test_set: &[GameId]) -> Result<ScanReport> {
    let mut report = ScanReport::new("comparison soundness", Some(u));
    for &g in games {
        for &h in games {
            report.checked += 1;
            if ge_in(g, h, u) {
                report.exercised += 1;
                if !definitional_ge_check(g, h, u, test_set)? {
                    report.violation(format!(
                        "{} >= {} but some test game disagrees",
                        name(g),
                        name(h)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Canonical-form laws: equivalence, idempotence, no rank increase,
/// membership, and commuting with conjugation.
pub fn scan_canonical_laws(games: &[GameId], u: Universe) -> Result<ScanReport> {
    let mut report = ScanReport::new("canonical form laws", Some(u));
    for &g in games {
        let cf = canonical_form(g, u)?;
        report.exercised += 1;
        let g_name = || name(g);
        report.check(u.contains(cf), || format!("cf({}) left the universe", g_name()));
        report.check(equivalent_in(cf, g, u), || format!("cf({}) = {} is not equivalent", g_name(), name(cf)));
        report.check(canonical_form(cf, u)? == cf, || format!("cf not idempotent on {}", g_name()));
        report.check(cf.rank() <= g.rank(), || format!("cf({}) has higher rank", g_name()));
        let conj = canonical_form(conjugate(g), u)?;
        report.check(conj == conjugate(cf), || format!("cf does not commute with conjugation on {}", g_name()));
    }
    Ok(report)
}

/// Canonical forms agree exactly when the games are equivalent, over every
/// unordered pair.
pub fn scan_uniqueness_pairs(games: &[GameId], u: Universe) -> Result<ScanReport> {
    let mut report = ScanReport::new("uniqueness (pairwise)", Some(u));
    let forms = games
        .iter()
        .map(|&g| canonical_form(g, u))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..games.len() {
        for j in i..games.len() {
            let eq = equivalent_in(games[i], games[j], u);
            if eq {
                report.exercised += 1;
            }
            report.check(eq == (forms[i] == forms[j]), || {
                format!("{} vs {}: equivalence {eq}, forms {} and {}", name(games[i]), name(games[j]), name(forms[i]), name(forms[j]))
            });
        }
    }
    Ok(report)
}

/// Every dead end `e` satisfies `e + ~e == 0` by reduction.
pub fn scan_end_invertibility(ends: &[GameId]) -> Result<ScanReport> {
    let u = Universe::DeadEnding;
    let mut report = ScanReport::new("end invertibility", Some(u));
    for &e in ends {
        if !e.is_dead_end() {
            continue;
        }
        let cf = canonical_form(sum(e, conjugate(e)), u)?;
        report.exercised += 1;
        report.check(cf == zero(), || format!("{} + ~{0} reduces to {}", name(e), name(cf)));
    }
    Ok(report)
}

fn pick<'a>(rng: &mut ChaCha8Rng, games: &'a [GameId]) -> &'a GameId {
    &games[rng.gen_range(0..games.len())]
}

/// `g >= h` implies `g + j >= h + j`, on `samples` seeded triples whose
/// premise holds.
pub fn scan_cancellative(games: &[GameId], u: Universe, samples: usize, seed: u64) -> ScanReport {
    let mut report = ScanReport::new("cancellative property", Some(u));
    report.seed = Some(seed);
    let pairs: Vec<(GameId, GameId)> = games
        .iter()
        .flat_map(|&g| games.iter().map(move |&h| (g, h)))
        .filter(|&(g, h)| ge_in(g, h, u))
        .collect();
    if pairs.is_empty() {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (g, h) = pairs[rng.gen_range(0..pairs.len())];
        let j = *pick(&mut rng, games);
        report.exercised += 1;
        report.check(ge_in(sum(g, j), sum(h, j), u), || {
            format!("{} >= {} but adding {} breaks it", name(g), name(h), name(j))
        });
    }
    report
}

/// Adding a Left option to a game that already has one never hurts Left.
/// Draws whose enlarged game leaves `u` (a Right-end gaining a Left move in
/// the dead-ending universe) are redrawn, up to a bounded number of attempts.
pub fn scan_hand_tying(games: &[GameId], u: Universe, samples: usize, seed: u64) -> ScanReport {
    let mut report = ScanReport::new("hand-tying", Some(u));
    report.seed = Some(seed);
    let bases: Vec<GameId> = games.iter().copied().filter(|g| !g.left().is_empty()).collect();
    if bases.is_empty() {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while report.exercised < samples as u64 && attempts < samples.saturating_mul(100) {
        attempts += 1;
        let g = *pick(&mut rng, &bases);
        let a = *pick(&mut rng, games);
        let bigger = mk_game(g.left().iter().copied().chain([a]), g.right().iter().copied());
        report.checked += 1;
        if !u.contains(bigger) {
            continue;
        }
        report.exercised += 1;
        if !ge_in(bigger, g, u) {
            report.violation(format!("adding {} to the Left of {} is worse for Left", name(a), name(g)));
        }
    }
    report
}

/// For `g` with an end-reversible Left option `A` and `X` with a Left move:
/// whenever moving to `A + X` wins for Left, some `g + X^L` also wins.
pub fn scan_weak_avoidance(games: &[GameId], tests: &[GameId], u: Universe) -> ScanReport {
    let mut report = ScanReport::new("weak avoidance", Some(u));
    for &g in games {
        let end_reversible: Vec<GameId> = g
            .left()
            .iter()
            .copied()
            .filter(|a| a.right().iter().any(|&b| b.is_left_end() && ge_in(g, b, u)))
            .collect();
        for &a in &end_reversible {
            for &x in tests {
                if x.left().is_empty() {
                    continue;
                }
                report.checked += 1;
                if sum_outcome(a, x).right_first() == Winner::Left {
                    report.exercised += 1;
                    let escape = x
                        .left()
                        .iter()
                        .any(|&xl| sum_outcome(g, xl).right_first() == Winner::Left);
                    if !escape {
                        report.violation(format!(
                            "{} + {}: only the end-reversible {} wins",
                            name(g),
                            name(x),
                            name(a)
                        ));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{integer, star};

    #[test]
    fn small_enumerations() {
        let all1 = enumerate(&EnumerationBudget::new(1, 4, None)).unwrap();
        assert_eq!(all1.len(), 4);
        assert!(all1.contains(&integer(1)) && all1.contains(&integer(-1)) && all1.contains(&star()));
        let d1 = enumerate(&EnumerationBudget::new(1, 4, Some(Universe::Dicot))).unwrap();
        assert_eq!(d1, vec![zero(), star()]);
        assert_eq!(enumerate(&EnumerationBudget::new(2, 4, None)).unwrap().len(), 256);
    }

    #[test]
    fn enumeration_guards() {
        let huge = EnumerationBudget::new(3, 2, Some(Universe::DeadEnding));
        assert!(matches!(enumerate(&huge), Err(Error::ResourceCap { .. })));
        assert!(enumerate(&EnumerationBudget::new(4, 1, None)).is_err());
        assert!(enumerate(&EnumerationBudget::new(1, 0, None)).is_err());
    }

    #[test]
    fn subset_counts() {
        for (n, cap) in [(4, 4), (4, 2), (10, 2), (7, 3), (0, 2)] {
            let pool: Vec<GameId> = (0..n).map(|i| integer(i as i64)).collect();
            assert_eq!(bounded_subsets(&pool, cap).len() as u128, count_subsets(n, cap));
        }
    }

    #[test]
    fn dead_ends() {
        let ends = enumerate_dead_ends(2, 4, Side::Left).unwrap();
        assert_eq!(ends.len(), 4);
        assert_eq!(enumerate_dead_ends(4, 2, Side::Left).unwrap().len(), 67);
        assert!(ends.iter().all(|e| e.is_dead_left_end() && e.is_dead_ending()));
        assert!(ends.contains(&murder(2)) && ends.contains(&integer(-2)));
        let right = enumerate_dead_ends(3, 4, Side::Right).unwrap();
        let conj: Vec<GameId> = enumerate_dead_ends(3, 4, Side::Left)
            .unwrap()
            .into_iter()
            .map(conjugate)
            .collect();
        assert_eq!(right.len(), conj.len());
        assert!(conj.iter().all(|g| right.contains(g)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let b = EnumerationBudget::new(3, 2, Some(Universe::DeadEnding));
        let a = sample_top_rank(&b, 50, 7).unwrap();
        assert_eq!(a, sample_top_rank(&b, 50, 7).unwrap());
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|g| g.rank() == 3 && g.is_dead_ending()));
    }
}
