//! Tokenizer shared by the workspace and query grammars.
//!
//! Positions are 1-based line/column pairs pointing at the first character
//! of the token.  `//` starts a comment running to the end of the line.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(usize),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Eq,
    Arrow,
    Minus,
    Slash,
    Dot,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Number(n) => format!("number {n}"),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Colon => "':'".into(),
            Tok::Eq => "'='".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Dot => "'.'".into(),
        }
    }
}

/// Failure to read the input, with the position and the set of token
/// shapes that would have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub found: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(pos: Pos, found: impl Into<String>, mut expected: Vec<String>) -> ParseError {
        expected.sort();
        expected.dedup();
        ParseError { pos, found: found.into(), expected }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: found {}, expected {}", self.pos, self.found, self.expected.join(" or "))
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug)]
pub struct Lexed {
    pub toks: Vec<(Tok, Pos)>,
    /// Position just past the last token, reported when input ends early.
    pub eof: Pos,
}

pub fn lex(src: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            _ if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '/' => {
                chars.next();
                if chars.peek() == Some(&'/') {
                    while let Some(&d) = chars.peek() {
                        if d == '\n' {
                            break;
                        }
                        chars.next();
                    }
                    // Column is stale inside a comment, reset at the newline.
                    col += 2;
                } else {
                    toks.push((Tok::Slash, pos));
                    col += 1;
                }
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    toks.push((Tok::Arrow, pos));
                    col += 2;
                } else {
                    toks.push((Tok::Minus, pos));
                    col += 1;
                }
            }
            '{' | '}' | '[' | ']' | ',' | ';' | ':' | '=' | '.' => {
                chars.next();
                let t = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '=' => Tok::Eq,
                    _ => Tok::Dot,
                };
                toks.push((t, pos));
                col += 1;
            }
            _ if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        text.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                col += text.len();
                let n: usize = text.parse().map_err(|_| {
                    ParseError::new(pos, format!("oversized number '{text}'"), vec!["a smaller number".into()])
                })?;
                toks.push((Tok::Number(n), pos));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        text.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                col += text.len();
                toks.push((Tok::Ident(text), pos));
            }
            _ => {
                return Err(ParseError::new(
                    pos,
                    format!("character '{c}'"),
                    vec!["an identifier".into(), "a number".into(), "punctuation".into()],
                ));
            }
        }
    }
    Ok(Lexed { toks, eof: Pos { line, col } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_their_positions() {
        let l = lex("mor f: 0 -> 1;").unwrap();
        let kinds: Vec<&Tok> = l.toks.iter().map(|(t, _)| t).collect();
        assert_eq!(
            kinds,
            vec![
                &Tok::Ident("mor".into()),
                &Tok::Ident("f".into()),
                &Tok::Colon,
                &Tok::Number(0),
                &Tok::Arrow,
                &Tok::Number(1),
                &Tok::Semi,
            ]
        );
        assert_eq!(l.toks[4].1, Pos { line: 1, col: 10 });
    }

    #[test]
    fn comments_and_newlines_are_skipped() {
        let l = lex("a // rest is ignored ; { }\nb").unwrap();
        assert_eq!(l.toks.len(), 2);
        assert_eq!(l.toks[1].1, Pos { line: 2, col: 1 });
    }

    #[test]
    fn a_bare_minus_is_distinct_from_an_arrow() {
        let l = lex("-1 ->").unwrap();
        assert_eq!(l.toks[0].0, Tok::Minus);
        assert_eq!(l.toks[2].0, Tok::Arrow);
    }

    #[test]
    fn stray_characters_are_rejected_with_a_position() {
        let e = lex("mor f @").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 7 });
        assert!(e.found.contains('@'));
    }
}
