//! `misere`: command-line front end for misere-core.
//!
//! Exit codes: 0 success, 1 verification found violations or an internal
//! error, 2 usage error, 3 parse error, 4 domain error, 5 resource cap.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use misere_core::canonical::canonical_form_traced;
use misere_core::lab::{self, ScanReport, DEFAULT_SEED};
use misere_core::notation::{from_json, to_interchange};
use misere_core::outcome::{normal_outcome, strong_left_outcome, strong_right_outcome};
use misere_core::{
    canonical_form, conjugate, distinguish, enumerate, ge, ge_normal, outcome, parse, print, strong_outcome, sum,
    EnumerationBudget, Error, GameId, Side, Style, Universe, Verdict,
};

#[derive(Parser)]
#[command(name = "misere", version, about = "Misère-play games modulo dicot and dead-ending universes")]
struct Cli {
    /// Output format. `structured` prints one JSON document on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UniverseArg {
    Dicot,
    DeadEnding,
}

impl From<UniverseArg> for Universe {
    fn from(u: UniverseArg) -> Universe {
        match u {
            UniverseArg::Dicot => Universe::Dicot,
            UniverseArg::DeadEnding => Universe::DeadEnding,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompareUniverse {
    Dicot,
    DeadEnding,
    Normal,
}

/// Enumeration limits. Flags override the environment, which overrides the defaults.
#[derive(clap::Args, Clone, Copy)]
struct Budget {
    /// Largest game rank to enumerate.
    #[arg(long, env = "MISERE_MAX_RANK", default_value_t = 2)]
    max_rank: u32,
    /// Most options per side at every follower.
    #[arg(long, env = "MISERE_MAX_OPTIONS", default_value_t = 4)]
    max_options: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Murders,
    Conjugate,
    Uniqueness,
    Ends,
    Embedding,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a game and print its named form, brace form and interchange document.
    Parse { game: String },
    /// Outcome class (L, N, P or R) under misère or normal play.
    Outcome {
        game: String,
        #[arg(long)]
        normal: bool,
    },
    /// Strong outcome of a dead-ending game.
    StrongOutcome { game: String },
    /// Disjunctive sum of two games.
    Sum { left: String, right: String },
    /// Conjugate of a game.
    Conj { game: String },
    /// Compare two games: `>=`, `<=`, `=` or `incomparable`.
    Compare {
        g: String,
        h: String,
        #[arg(long, value_enum)]
        universe: CompareUniverse,
    },
    /// Canonical form modulo a universe.
    Reduce {
        game: String,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        /// Also print every rewrite applied.
        #[arg(long)]
        trace: bool,
    },
    /// Search the universe for a game telling two games apart.
    Distinguish {
        g: String,
        h: String,
        #[arg(long, value_enum)]
        universe: UniverseArg,
        #[command(flatten)]
        budget: Budget,
    },
    /// List a universe slice, or summarize it by equivalence class.
    Enumerate {
        /// Omit to list every form.
        #[arg(long, value_enum)]
        universe: Option<UniverseArg>,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        census: bool,
        /// Random pairs cross-checked by the census.
        #[arg(long, default_value_t = 1000)]
        sample_pairs: usize,
        #[arg(long, env = "MISERE_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Scan a slice for counterexamples; exits 1 if any are found.
    Verify {
        #[arg(value_enum)]
        property: Property,
        #[arg(long, value_enum, default_value = "dead-ending")]
        universe: UniverseArg,
        #[command(flatten)]
        budget: Budget,
        /// Longest murder chain checked by `murders`.
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        /// Sample this many pairs for `embedding` instead of checking all.
        #[arg(long)]
        sample_pairs: Option<usize>,
        #[arg(long, env = "MISERE_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Core(Error),
    Violations(u64),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::Interchange(_) => 3,
        Error::NotInUniverse { .. } | Error::NotDeadEnding(_) | Error::Precondition(_) => 4,
        Error::ElaborationBudget { .. } | Error::ResourceCap { .. } => 5,
        Error::Internal(_) => 1,
    }
}

/// Reads notation, or an interchange document when the argument is JSON.
fn read_game(text: &str) -> Result<GameId, Error> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') && trimmed.contains('"') {
        from_json(trimmed)
    } else {
        parse(text)
    }
}

fn named(g: GameId) -> String {
    print(g, Style::Named)
}

fn game_json(g: GameId) -> Value {
    json!({ "named": named(g), "game": to_interchange(g) })
}

struct Output {
    format: Format,
}

impl Output {
    /// Writes the result; a closed pipe (e.g. `| head`) is not an error.
    fn emit(&self, text: impl AsRef<str>, structured: Value) {
        let mut stdout = std::io::stdout().lock();
        let _ = match self.format {
            Format::Text => writeln!(stdout, "{}", text.as_ref()),
            Format::Structured => writeln!(stdout, "{structured}"),
        };
    }
}

fn enumeration(budget: Budget, universe: Option<Universe>) -> Result<Vec<GameId>, Error> {
    enumerate(&EnumerationBudget::new(budget.max_rank, budget.max_options, universe))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Output { format: cli.format };
    match cli.command {
        Command::Parse { game } => {
            let g = read_game(&game)?;
            let brace = print(g, Style::Brace);
            let doc = serde_json::to_string(&to_interchange(g)).expect("documents serialize");
            out.emit(
                format!("named: {}\nbrace: {brace}\ninterchange: {doc}", named(g)),
                json!({ "named": named(g), "brace": brace, "game": to_interchange(g) }),
            );
        }
        Command::Outcome { game, normal } => {
            let g = read_game(&game)?;
            let o = if normal { normal_outcome(g) } else { outcome(g) };
            out.emit(o.symbol(), json!({ "outcome": o, "play": if normal { "normal" } else { "misere" } }));
        }
        Command::StrongOutcome { game } => {
            let g = read_game(&game)?;
            let o = strong_outcome(g)?;
            let (l, r) = (strong_left_outcome(g)?, strong_right_outcome(g)?);
            out.emit(
                format!("{} (left first: {}, right first: {})", o.symbol(), l.symbol(), r.symbol()),
                json!({ "outcome": o, "left_first": l, "right_first": r }),
            );
        }
        Command::Sum { left, right } => {
            let g = sum(read_game(&left)?, read_game(&right)?);
            out.emit(named(g), game_json(g));
        }
        Command::Conj { game } => {
            let g = conjugate(read_game(&game)?);
            out.emit(named(g), game_json(g));
        }
        Command::Compare { g, h, universe } => {
            let (g, h) = (read_game(&g)?, read_game(&h)?);
            let (up, down) = match universe {
                CompareUniverse::Normal => (ge_normal(g, h), ge_normal(h, g)),
                CompareUniverse::Dicot => (ge(g, h, Universe::Dicot)?, ge(h, g, Universe::Dicot)?),
                CompareUniverse::DeadEnding => (ge(g, h, Universe::DeadEnding)?, ge(h, g, Universe::DeadEnding)?),
            };
            let relation = match (up, down) {
                (true, true) => "=",
                (true, false) => ">=",
                (false, true) => "<=",
                (false, false) => "incomparable",
            };
            out.emit(relation, json!({ "relation": relation, "ge": up, "le": down }));
        }
        Command::Reduce { game, universe, trace } => {
            let g = read_game(&game)?;
            let u = Universe::from(universe);
            if trace {
                let (cf, trace) = canonical_form_traced(g, u)?;
                let mut text = String::new();
                for step in &trace.steps {
                    text.push_str(&format!(
                        "{:?} ({}): {} => {}\n",
                        step.rule,
                        step.side,
                        named(step.before),
                        named(step.after)
                    ));
                }
                text.push_str(&named(cf));
                let steps: Vec<Value> = trace
                    .steps
                    .iter()
                    .map(|s| {
                        json!({ "rule": s.rule, "side": s.side, "before": named(s.before), "after": named(s.after) })
                    })
                    .collect();
                out.emit(text, json!({ "named": named(cf), "game": to_interchange(cf), "trace": steps }));
            } else {
                let cf = canonical_form(g, u)?;
                out.emit(named(cf), game_json(cf));
            }
        }
        Command::Distinguish { g, h, universe, budget } => {
            let (g, h) = (read_game(&g)?, read_game(&h)?);
            let d = distinguish(g, h, universe.into(), budget.max_rank, budget.max_options)?;
            let text = match (d.verdict, d.witness, d.witness_outcomes) {
                (Verdict::Distinguished, Some(x), Some((a, b))) => {
                    format!("distinguished by {}: o(G+X) = {}, o(H+X) = {}", named(x), a.symbol(), b.symbol())
                }
                (Verdict::Holds, ..) => "equivalent: no distinguishing game exists".to_string(),
                _ => format!(
                    "inconclusive: no distinguishing game up to rank {} with {} options",
                    d.max_rank, d.max_options
                ),
            };
            out.emit(text, serde_json::to_value(&d).expect("reports serialize"));
        }
        Command::Enumerate { universe, budget, census, sample_pairs, seed } => {
            let u = universe.map(Universe::from);
            let games = enumeration(budget, u)?;
            if census {
                let u = u.ok_or_else(|| Error::Precondition("--census needs --universe".into()))?;
                let report = lab::census(&games, u, sample_pairs, seed)?;
                let violations = report.violation_count;
                out.emit(report.summary_table().trim_end(), serde_json::to_value(&report).expect("reports serialize"));
                if violations > 0 {
                    return Err(Failure::Violations(violations));
                }
            } else {
                let text: Vec<String> = games.iter().map(|&g| named(g)).collect();
                let docs: Vec<Value> = games.iter().map(|&g| game_json(g)).collect();
                out.emit(text.join("\n"), json!({ "count": games.len(), "games": docs }));
            }
        }
        Command::Verify { property, universe, budget, max_n, sample_pairs, seed } => {
            let u = Universe::from(universe);
            let reports = verify(property, u, budget, max_n, sample_pairs, seed)?;
            let violations: u64 = reports.iter().map(|r| r.violation_count).sum();
            let text: Vec<String> = reports.iter().map(ToString::to_string).collect();
            out.emit(text.join("\n"), serde_json::to_value(&reports).expect("reports serialize"));
            if violations > 0 {
                return Err(Failure::Violations(violations));
            }
        }
    }
    Ok(())
}

fn require_dead_ending(u: Universe, property: &str) -> Result<(), Error> {
    if u == Universe::DeadEnding {
        Ok(())
    } else {
        Err(Error::Precondition(format!("`{property}` is a dead-ending property")))
    }
}

fn verify(
    property: Property,
    u: Universe,
    budget: Budget,
    max_n: u32,
    sample_pairs: Option<usize>,
    seed: u64,
) -> Result<Vec<ScanReport>, Error> {
    Ok(match property {
        Property::Murders => {
            require_dead_ending(u, "murders")?;
            let ends = lab::enumerate_dead_ends(budget.max_rank, budget.max_options, Side::Left)?;
            vec![lab::scan_murder_theorems(max_n, &ends)]
        }
        Property::Conjugate => lab::scan_conjugate_property(&enumeration(budget, Some(u))?, u),
        Property::Uniqueness => {
            let games = enumeration(budget, Some(u))?;
            vec![lab::scan_uniqueness_pairs(&games, u)?, lab::scan_canonical_laws(&games, u)?]
        }
        Property::Ends => {
            require_dead_ending(u, "ends")?;
            let mut ends = lab::enumerate_dead_ends(budget.max_rank, budget.max_options, Side::Left)?;
            ends.extend(lab::enumerate_dead_ends(budget.max_rank, budget.max_options, Side::Right)?);
            ends.sort();
            ends.dedup();
            vec![lab::scan_end_invertibility(&ends)?]
        }
        Property::Embedding => vec![lab::scan_normal_embedding(&enumeration(budget, Some(u))?, u, sample_pairs, seed)],
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Violations(n)) => {
            eprintln!("{n} violations found");
            ExitCode::from(1)
        }
    }
}
