//! Recursive-descent parser for the ASCII formula grammar:
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" or)?
//! and     := unary ("&" and)?
//! unary   := "~" unary | atom
//! atom    := ident | "bot" | "top" | "(" formula ")"
//! ```

use std::fmt;

use thiserror::Error;

use super::{is_keyword, Formula, VarName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty formula")]
    Empty,
    #[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
}

impl ParseError {
    /// Byte offset of the error in the input (0 for empty input).
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::Syntax { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Bot,
    Top,
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    Invalid(char),
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "identifier `{s}`"),
            Token::Bot => f.write_str("`bot`"),
            Token::Top => f.write_str("`top`"),
            Token::Tilde => f.write_str("`~`"),
            Token::Amp => f.write_str("`&`"),
            Token::Bar => f.write_str("`|`"),
            Token::Arrow => f.write_str("`->`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Invalid(c) => write!(f, "character {c:?}"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'~' => Token::Tilde,
            b'&' => Token::Amp,
            b'|' => Token::Bar,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Arrow
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "bot" => Token::Bot,
                    "top" => Token::Top,
                    word => Token::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                i += ch.len_utf8() - 1;
                Token::Invalid(ch)
            }
        };
        i += 1;
        tokens.push((start, tok));
    }
    tokens.push((text.len(), Token::End));
    tokens
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let (offset, tok) = &self.tokens[self.pos];
        ParseError::Syntax {
            offset: *offset,
            expected,
            found: tok.to_string(),
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and()?;
        if *self.peek() == Token::Bar {
            self.bump();
            let rhs = self.or()?;
            return Ok(Formula::disj(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Token::Amp {
            self.bump();
            let rhs = self.and()?;
            return Ok(Formula::conj(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Token::Tilde {
            self.bump();
            let inner = self.unary()?;
            return Ok(Formula::neg(inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        const ATOM: [&str; 5] = ["identifier", "`bot`", "`top`", "`(`", "`~`"];
        match self.peek().clone() {
            Token::Ident(name) => {
                debug_assert!(!is_keyword(&name));
                self.bump();
                Ok(Formula::Var(VarName::new(&name).expect("tokenizer yields identifiers")))
            }
            Token::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Token::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Token::LParen => {
                self.bump();
                let inner = self.imp()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(vec!["`)`", "`&`", "`|`", "`->`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(ATOM.to_vec())),
        }
    }
}

/// Parses a formula. Errors carry the byte offset of the offending token.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        tokens: tokenize(text),
        pos: 0,
    };
    let f = parser.imp()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(vec!["`&`", "`|`", "`->`", "end of input"]));
    }
    Ok(f)
}
