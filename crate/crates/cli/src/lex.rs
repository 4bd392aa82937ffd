//! Tokens with source positions.

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Byte range in the source.
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: &str = ";=[](){},+-*/^";

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&(i, c)) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let tok = if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                chars.next();
                col += 1;
            }
            let n = src[i..end]
                .parse::<u64>()
                .map_err(|_| ParseError::new(start_line, start_col, "integer literal too large"))?;
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + 1;
                chars.next();
                col += 1;
            }
            Tok::Ident(src[i..end].to_string())
        } else if SYMBOLS.contains(c) {
            chars.next();
            col += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError::new(line, col, format!("unexpected character '{c}'")));
        };
        let end = chars.peek().map_or(src.len(), |&(j, _)| j);
        out.push(Token { tok, line: start_line, col: start_col, start: i, end });
    }
    out.push(Token { tok: Tok::Eof, line, col, start: src.len(), end: src.len() });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let t = lex("let P = T*t^1; # comment\n  diag [[P]]").unwrap();
        let kinds: Vec<_> = t.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[0], Tok::Ident("let".into()));
        assert_eq!(kinds[4], Tok::Sym('*'));
        let diag = t.iter().find(|t| t.tok == Tok::Ident("diag".into())).unwrap();
        assert_eq!((diag.line, diag.col), (2, 3));
        assert_eq!(t.last().unwrap().tok, Tok::Eof);
        assert!(lex("let x = 1 @ 2").is_err());
    }
}
