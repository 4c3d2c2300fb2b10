//! Text notation and the nested `{"L": [...], "R": [...]}` interchange format.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr  := term ( '+' term )*
//! term  := '~'? game
//! game  := '{' opts '|' opts '}' | atom
//! opts  := ε | expr ( ',' expr )*
//! atom  := '0' | '*' | signed-integer | 'M(' nat ')'
//! ```
//!
//! `~` is conjugation and binds tighter than `+`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{conjugate, integer, mk_game, murder, star, sum, GameId};

/// Default cap on the number of nodes an expression may elaborate to.
pub const DEFAULT_ELABORATION_BUDGET: usize = 1_000_000;

pub fn parse(text: &str) -> Result<GameId> {
    parse_with_budget(text, DEFAULT_ELABORATION_BUDGET)
}

pub fn parse_with_budget(text: &str, budget: usize) -> Result<GameId> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        budget,
        used: 0,
    };
    let g = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    budget: usize,
    used: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", byte as char)))
        }
    }

    fn syntax(&self, message: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(&b) => format!(", found '{}'", b as char),
            None => ", found end of input".to_string(),
        };
        Error::Syntax {
            offset: self.pos,
            message: format!("{message}{found}"),
        }
    }

    fn charge(&mut self, cost: u64, offset: usize) -> Result<()> {
        let total = (self.used as u64).saturating_add(cost);
        if total > self.budget as u64 {
            return Err(Error::ElaborationBudget {
                offset,
                budget: self.budget,
            });
        }
        self.used = total as usize;
        Ok(())
    }

    fn expr(&mut self) -> Result<GameId> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if !self.eat(b'+') {
                return Ok(acc);
            }
            let rhs = self.term()?;
            // the sum can create at most one node per pair of followers
            let cost = (acc.followers().len() as u64) * (rhs.followers().len() as u64);
            self.charge(cost, at)?;
            acc = sum(acc, rhs);
        }
    }

    fn term(&mut self) -> Result<GameId> {
        if self.eat(b'~') {
            let at = self.pos;
            let g = self.game()?;
            self.charge(g.followers().len() as u64, at)?;
            Ok(conjugate(g))
        } else {
            self.game()
        }
    }

    fn game(&mut self) -> Result<GameId> {
        let at = self.pos;
        if self.eat(b'{') {
            let left = self.opts()?;
            self.expect(b'|')?;
            let right = self.opts()?;
            self.expect(b'}')?;
            self.charge(1, at)?;
            Ok(mk_game(left, right))
        } else {
            self.atom()
        }
    }

    fn opts(&mut self) -> Result<Vec<GameId>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(b'|') | Some(b'}')) {
            return Ok(out);
        }
        out.push(self.expr()?);
        while self.eat(b',') {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<GameId> {
        let at = self.pos;
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(star())
            }
            Some(b'M') => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'(') {
                    return Err(self.syntax("expected '(' after 'M'"));
                }
                self.pos += 1;
                let n = self.natural(at)?;
                self.expect(b')')?;
                self.charge(n, at)?;
                Ok(murder(n as u32))
            }
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                let n = self.natural(at)?;
                self.charge(n, at)?;
                Ok(integer(-(n as i64)))
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.natural(at)?;
                self.charge(n, at)?;
                Ok(integer(n as i64))
            }
            _ => Err(self.syntax("expected a game")),
        }
    }

    /// Reads a run of digits. Values too large to elaborate are reported as a
    /// budget failure rather than a syntax error.
    fn natural(&mut self, atom_start: usize) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse::<u64>() {
            Ok(n) if n <= self.budget as u64 => Ok(n),
            _ => Err(Error::ElaborationBudget {
                offset: atom_start,
                budget: self.budget,
            }),
        }
    }
}

/// Output style for [`print`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Fully expanded braces, e.g. `{{|}|{|}}`.
    Brace,
    /// Braces with recognized atoms (`0`, `*`, integers, `M(n)` for `n >= 2`) named.
    Named,
}

pub fn print(g: GameId, style: Style) -> String {
    let mut out = String::new();
    write_game(&mut out, g, style);
    out
}

fn write_game(out: &mut String, g: GameId, style: Style) {
    if style == Style::Named {
        if let Some(name) = atom_name(g) {
            out.push_str(&name);
            return;
        }
    }
    out.push('{');
    write_list(out, g.left(), style);
    out.push('|');
    write_list(out, g.right(), style);
    out.push('}');
}

fn write_list(out: &mut String, games: &[GameId], style: Style) {
    for (i, &g) in games.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_game(out, g, style);
    }
}

fn atom_name(g: GameId) -> Option<String> {
    if g == star() {
        return Some("*".to_string());
    }
    let k = g.rank();
    if g == integer(k as i64) {
        return Some(k.to_string());
    }
    if g == integer(-(k as i64)) {
        return Some(format!("-{k}"));
    }
    if k >= 2 && g == murder(k) {
        return Some(format!("M({k})"));
    }
    None
}

/// Interchange document: a game as nested Left/Right option lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    #[serde(rename = "L")]
    pub left: Vec<GameDoc>,
    #[serde(rename = "R")]
    pub right: Vec<GameDoc>,
}

/// Games serialize as their interchange document.
impl Serialize for GameId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        to_interchange(*self).serialize(serializer)
    }
}

pub fn to_interchange(g: GameId) -> GameDoc {
    GameDoc {
        left: g.left().iter().map(|&x| to_interchange(x)).collect(),
        right: g.right().iter().map(|&x| to_interchange(x)).collect(),
    }
}

pub fn from_interchange(doc: &GameDoc) -> GameId {
    mk_game(
        doc.left.iter().map(from_interchange),
        doc.right.iter().map(from_interchange),
    )
}

/// Decodes a JSON interchange document.
pub fn from_json(text: &str) -> Result<GameId> {
    let doc: GameDoc = serde_json::from_str(text).map_err(|e| Error::Interchange(e.to_string()))?;
    Ok(from_interchange(&doc))
}

pub fn to_json(g: GameId) -> String {
    serde_json::to_string(&to_interchange(g)).expect("game documents always serialize")
}

/// Convenience for tests and callers that know the text is valid.
pub fn game(text: &str) -> GameId {
    parse(text).unwrap_or_else(|e| panic!("invalid game notation {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::zero;

    #[test]
    fn parse_examples() {
        assert_eq!(game("{*|0}"), mk_game([star()], [zero()]));
        assert_eq!(game("M(2)"), mk_game([], [zero(), mk_game([], [zero()])]));
        assert_eq!(game("3 + ~M(1)"), sum(integer(3), conjugate(murder(1))));
        assert_eq!(game(" { 0 , * | 0 , * } "), game("{*,0|*,0}"));
        assert_eq!(game("{|}"), zero());
        assert_eq!(game("-2"), conjugate(game("2")));
        assert_eq!(game("~{*|0} + 1"), sum(conjugate(game("{*|0}")), integer(1)));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("{0|*") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse("{0|*} }") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("M2"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse("0 +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("~~0"), Err(Error::Syntax { offset: 1, .. })));
    }

    #[test]
    fn budget_guards_huge_atoms() {
        assert!(matches!(
            parse("99999999999999999999999"),
            Err(Error::ElaborationBudget { offset: 0, .. })
        ));
        assert!(matches!(
            parse("{0|} + M(2000000)"),
            Err(Error::ElaborationBudget { offset: 7, .. })
        ));
        assert!(matches!(
            parse_with_budget("40 + 40", 1000),
            Err(Error::ElaborationBudget { offset: 3, .. })
        ));
        assert!(parse_with_budget("40 + 2", 1000).is_ok());
    }

    #[test]
    fn printing() {
        assert_eq!(print(zero(), Style::Brace), "{|}");
        assert_eq!(print(zero(), Style::Named), "0");
        assert_eq!(print(murder(1), Style::Named), "-1");
        assert_eq!(print(murder(3), Style::Named), "M(3)");
        assert_eq!(print(game("{-1|1}"), Style::Brace), "{{|{|}}|{{|}|}}");
        assert_eq!(print(game("{-1|1}"), Style::Named), "{-1|1}");
        assert_eq!(print(game("~M(2)"), Style::Named), "{0,1|}");
    }

    #[test]
    fn interchange_examples() {
        assert_eq!(to_json(zero()), r#"{"L":[],"R":[]}"#);
        assert_eq!(
            to_json(star()),
            r#"{"L":[{"L":[],"R":[]}],"R":[{"L":[],"R":[]}]}"#
        );
        assert_eq!(from_json(r#"{"R":[], "L":[]}"#).unwrap(), zero());
        assert!(matches!(from_json(r#"{"L":[]}"#), Err(Error::Interchange(_))));
        assert!(matches!(from_json(r#"{"L":[],"R":[],"X":[]}"#), Err(Error::Interchange(_))));
        assert!(matches!(from_json("[1,2]"), Err(Error::Interchange(_))));
    }
}
