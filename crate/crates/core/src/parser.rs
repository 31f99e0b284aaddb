//! Surface syntax.
//!
//! ```text
//! iff   := imp ("<->" imp)*
//! imp   := or ("->" imp)?
//! or    := and ("|" and)*
//! and   := rhd ("&" rhd)*
//! rhd   := unary ("|>" rhd)?
//! unary := ("~" | "!" | "[]" | "<>") unary | atom
//! atom  := ident | "true" | "false" | "(" iff ")"
//! ```

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

/// Grammar nesting (prefix operators, parentheses and chained binary operators)
/// beyond this depth is rejected so that parsing and dropping stay bounded.
pub const MAX_NESTING: usize = 256;

const OPERAND: &[&str] = &["variable", "true", "false", "(", "~", "!", "[]", "<>"];
const BINARY: &[&str] = &["|>", "&", "|", "->", "<->"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at byte {offset}: expected {}, found {found}", ExpectedList(expected))]
    Unexpected {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("at byte {offset}: nesting deeper than {MAX_NESTING}")]
    TooDeep { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Unexpected { offset, .. } | ParseError::TooDeep { offset } => *offset,
        }
    }
}

struct ExpectedList<'a>(&'a [&'static str]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [one] => write!(f, "`{one}`"),
            many => {
                f.write_str("one of ")?;
                for (i, e) in many.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "`{e}`")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    True,
    False,
    Not,
    Box,
    Dia,
    And,
    Or,
    Imp,
    Iff,
    Rhd,
    LParen,
    RParen,
    Invalid(char),
    Eof,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::True => f.write_str("`true`"),
            Tok::False => f.write_str("`false`"),
            Tok::Not => f.write_str("`~`"),
            Tok::Box => f.write_str("`[]`"),
            Tok::Dia => f.write_str("`<>`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Imp => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Rhd => f.write_str("`|>`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Invalid(c) => write!(f, "invalid character {c:?}"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if c.is_ascii_lowercase() {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            let word = &rest[..len];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            };
            (tok, len)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("<>") {
            (Tok::Dia, 2)
        } else if rest.starts_with("[]") {
            (Tok::Box, 2)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("|>") {
            (Tok::Rhd, 2)
        } else {
            match c {
                b'~' | b'!' => (Tok::Not, 1),
                b'&' => (Tok::And, 1),
                b'|' => (Tok::Or, 1),
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                _ => {
                    let ch = rest.chars().next().unwrap_or('\u{fffd}');
                    (Tok::Invalid(ch), ch.len_utf8())
                }
            }
        };
        out.push((i, tok));
        i += len;
    }
    out.push((text.len(), Tok::Eof));
    out
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    nesting: usize,
    parens: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok<'a> {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) {
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, t: &Tok<'_>) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(ParseError::TooDeep { offset: self.offset() });
        }
        Ok(())
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Unexpected {
            offset: self.offset(),
            expected,
            found: self.peek().to_string(),
        }
    }

    fn after_operand(&self) -> Vec<&'static str> {
        let mut v = BINARY.to_vec();
        v.push(if self.parens > 0 { ")" } else { "end of input" });
        v
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let saved = self.nesting;
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            self.enter()?;
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        self.nesting = saved;
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            self.enter()?;
            let rhs = self.imp()?;
            self.nesting -= 1;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let saved = self.nesting;
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            self.enter()?;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        self.nesting = saved;
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let saved = self.nesting;
        let mut lhs = self.rhd()?;
        while self.eat(&Tok::And) {
            self.enter()?;
            let rhs = self.rhd()?;
            lhs = Formula::and(lhs, rhs);
        }
        self.nesting = saved;
        Ok(lhs)
    }

    fn rhd(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Rhd) {
            self.enter()?;
            let rhs = self.rhd()?;
            self.nesting -= 1;
            return Ok(Formula::rhd(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Box => Formula::boxed,
            Tok::Dia => Formula::dia,
            _ => return self.atom(),
        };
        self.bump();
        self.enter()?;
        let inner = self.unary()?;
        self.nesting -= 1;
        Ok(wrap(inner))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let f = match *self.peek() {
            Tok::Ident(name) => Formula::var(name),
            Tok::True => Formula::top(),
            Tok::False => Formula::Bot,
            Tok::LParen => {
                self.bump();
                self.enter()?;
                self.parens += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected(self.after_operand()));
                }
                self.parens -= 1;
                self.nesting -= 1;
                return Ok(inner);
            }
            _ => return Err(self.unexpected(OPERAND.to_vec())),
        };
        self.bump();
        Ok(f)
    }
}

/// Parses surface text into the core tree with all sugar expanded.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text),
        pos: 0,
        nesting: 0,
        parens: 0,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected(p.after_operand()));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// True when `name` is accepted as a variable by [`parse`].
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "true"
        && name != "false"
}
