//! Tokenizer shared by the text grammars: polynomials, necklace expressions,
//! and link expressions.
//!
//! The one whitespace-sensitive rule lives here: an identifier immediately
//! followed by `*` (no space) is a starred edge name (`a*`), while a `*`
//! separated from the previous token is multiplication (`2 * a a*`). The
//! scalar names `h`, `hbar`, and `ħ` are reserved and never starred.

use num::BigInt;

use crate::{Error, Result};

/// One lexical token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifier (vertex or arrow name, or a reserved scalar name).
    Ident(String),
    /// Identifier immediately followed by `*`: a starred edge name.
    Starred(String),
    /// Unsigned integer literal.
    Int(BigInt),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Amp,
    Plus,
    Minus,
    /// Multiplication / coefficient separator (a `*` not glued to an ident).
    Star,
    Caret,
    Slash,
}

/// True for the reserved scalar identifiers that may appear in coefficients.
pub fn is_scalar_name(name: &str) -> bool {
    matches!(name, "h" | "hbar" | "ħ")
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Tokenize `input`, or report the offending character.
pub fn lex(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        match c {
            '(' => { chars.next(); toks.push(Tok::LParen); }
            ')' => { chars.next(); toks.push(Tok::RParen); }
            '[' => { chars.next(); toks.push(Tok::LBracket); }
            ']' => { chars.next(); toks.push(Tok::RBracket); }
            ',' => { chars.next(); toks.push(Tok::Comma); }
            '&' => { chars.next(); toks.push(Tok::Amp); }
            '+' => { chars.next(); toks.push(Tok::Plus); }
            '-' | '−' => { chars.next(); toks.push(Tok::Minus); }
            '*' => { chars.next(); toks.push(Tok::Star); }
            '·' => { chars.next(); toks.push(Tok::Star); }
            '^' => { chars.next(); toks.push(Tok::Caret); }
            '/' => { chars.next(); toks.push(Tok::Slash); }
            _ if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer `{digits}`")))?;
                toks.push(Tok::Int(n));
            }
            _ if is_ident_start(c) => {
                let mut name = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if is_ident_continue(d) {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                // A `*` glued to a non-scalar identifier is part of the name.
                if !is_scalar_name(&name) {
                    if let Some(&(_, '*')) = chars.peek() {
                        chars.next();
                        toks.push(Tok::Starred(name));
                        continue;
                    }
                }
                toks.push(Tok::Ident(name));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character `{c}` at byte {pos}"
                )));
            }
        }
    }
    Ok(toks)
}

/// Cursor over a token stream with one- and two-token lookahead.
pub struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Tok>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn lex(input: &str) -> Result<Self> {
        Ok(Cursor::new(lex(input)?))
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    pub fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {what}, found {}",
                self.describe_here()
            )))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "trailing input starting at {}",
                self.describe_here()
            )))
        }
    }

    pub fn describe_here(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(t) => format!("{t:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starred_idents_are_whitespace_sensitive() {
        let toks = lex("2 * a a* b*b").unwrap();
        assert_eq!(
            toks,
            vec![
                Tok::Int(2.into()),
                Tok::Star,
                Tok::Ident("a".into()),
                Tok::Starred("a".into()),
                Tok::Starred("b".into()),
                Tok::Ident("b".into()),
            ]
        );
    }

    #[test]
    fn scalar_names_are_never_starred() {
        let toks = lex("h*hbar").unwrap();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("h".into()),
                Tok::Star,
                Tok::Ident("hbar".into()),
            ]
        );
        let toks = lex("ħ^2").unwrap();
        assert_eq!(toks, vec![Tok::Ident("ħ".into()), Tok::Caret, Tok::Int(2.into())]);
    }

    #[test]
    fn link_tokens() {
        let toks = lex("(a,1)(a*,2) & [v1]").unwrap();
        assert_eq!(
            toks,
            vec![
                Tok::LParen,
                Tok::Ident("a".into()),
                Tok::Comma,
                Tok::Int(1.into()),
                Tok::RParen,
                Tok::LParen,
                Tok::Starred("a".into()),
                Tok::Comma,
                Tok::Int(2.into()),
                Tok::RParen,
                Tok::Amp,
                Tok::LBracket,
                Tok::Ident("v1".into()),
                Tok::RBracket,
            ]
        );
    }

    #[test]
    fn unicode_minus_and_middle_dot() {
        let toks = lex("−1·x").unwrap();
        assert_eq!(
            toks,
            vec![Tok::Minus, Tok::Int(1.into()), Tok::Star, Tok::Ident("x".into())]
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(lex("a $ b").is_err());
    }
}
