//! Text syntax for words.
//!
//! ```text
//! word  := '1' | term ( ['*'] term )*
//! term  := '~'* atom [ '^' integer ]
//! atom  := ident | '1' | '(' word ')' | '[' word ',' word ']'
//! ident := [A-Za-z_][A-Za-z0-9_]* '\''*
//! ```
//!
//! `~g` and `g^-1` both denote the inverse, `[u,v]` is `u v u⁻¹ v⁻¹`, and
//! whitespace juxtaposition is accepted in place of `*`. The printer emits
//! runs of equal letters as powers joined by ` * `, and `1` for the empty
//! word.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{runs, reduce, Generator, Letter, Word};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse word at byte {position}: {message}")]
pub struct ParseWordError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseWordError> {
        Err(ParseWordError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn starts_term(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c == '~' || c == '(' || c == '[' || c == '1' || c == '_' || c.is_ascii_alphabetic())
    }

    fn word(&mut self) -> Result<Vec<Letter>, ParseWordError> {
        let mut letters = Vec::new();
        if !self.starts_term() {
            return Ok(letters);
        }
        letters.extend(self.term()?);
        loop {
            if self.eat('*') {
                if !self.starts_term() {
                    return self.error("expected a factor after '*'");
                }
                letters.extend(self.term()?);
            } else if self.starts_term() {
                letters.extend(self.term()?);
            } else {
                return Ok(letters);
            }
        }
    }

    fn term(&mut self) -> Result<Vec<Letter>, ParseWordError> {
        let mut inverted = false;
        while self.eat('~') {
            inverted = !inverted;
        }
        let mut base = self.atom()?;
        if inverted {
            base = invert(base);
        }
        if self.eat('^') {
            let n = self.integer()?;
            let unit = if n < 0 { invert(base) } else { base };
            let mut out = Vec::with_capacity(unit.len() * n.unsigned_abs() as usize);
            for _ in 0..n.unsigned_abs() {
                out.extend(unit.iter().cloned());
            }
            Ok(out)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Vec<Letter>, ParseWordError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                if !self.eat(',') {
                    return self.error("expected ',' in commutator");
                }
                let v = self.word()?;
                if !self.eat(']') {
                    return self.error("expected ']'");
                }
                let mut out = u.clone();
                out.extend(v.iter().cloned());
                out.extend(invert(u));
                out.extend(invert(v));
                Ok(out)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(c) if c == '_' || c.is_ascii_alphabetic() => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c == '_' || c.is_ascii_alphanumeric() {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                while self.peek() == Some('\'') {
                    self.pos += 1;
                }
                Ok(vec![Letter::positive(Generator::new(&self.text[start..self.pos]))])
            }
            _ => self.error("expected a generator, '1', '(' or '['"),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseWordError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.text[start..self.pos].parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.error("expected an integer exponent")
            }
        }
    }
}

fn invert(letters: Vec<Letter>) -> Vec<Letter> {
    letters.iter().rev().map(Letter::inverse).collect()
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { text: s, pos: 0 };
        let letters = p.word()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.error("unexpected trailing input");
        }
        Ok(reduce(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (letter, n)) in runs(self.letters()).into_iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            let exp = n as i64 * letter.sign();
            if exp == 1 {
                write!(f, "{}", letter.generator)?;
            } else {
                write!(f, "{}^{}", letter.generator, exp)?;
            }
        }
        Ok(())
    }
}
