use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Formula, LogicError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Xor,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => alloc::format!("atom `{name}`"),
            Tok::Not => "`!`".to_string(),
            Tok::And => "`&`".to_string(),
            Tok::Or => "`|`".to_string(),
            Tok::Xor => "`^`".to_string(),
            Tok::Implies => "`->`".to_string(),
            Tok::Iff => "`<->`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'^' => Tok::Xor,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let found = text[start..].chars().next().unwrap_or('\u{fffd}');
                return Err(LogicError::UnknownToken { pos: start, found });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> LogicError {
        LogicError::Syntax { pos: self.offset(), message: message.into() }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conjunction()?;
        let mut seen: Option<Tok> = None;
        while let Some(op @ (Tok::Or | Tok::Xor)) = self.peek().cloned() {
            if seen.as_ref().is_some_and(|s| *s != op) {
                return Err(self.error("`|` and `^` cannot be mixed without parentheses"));
            }
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = match op {
                Tok::Or => Formula::or(lhs, rhs),
                _ => Formula::xor(lhs, rhs),
            };
            seen = Some(op);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, LogicError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(other) => Err(self.error(alloc::format!(
                "expected atom, `!` or `(`, found {}",
                other.describe()
            ))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses the concrete formula syntax.
///
/// Precedence, tightest first: `!`, `&`, `|`/`^` (one level, left
/// associative, never mixed without parentheses), `->` (right associative),
/// `<->` (left associative).
pub fn parse(text: &str) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(LogicError::EmptyInput);
    }
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let f = p.iff()?;
    if let Some(tok) = p.peek() {
        let message = alloc::format!("unexpected {}", tok.describe());
        return Err(p.error(message));
    }
    Ok(f)
}
