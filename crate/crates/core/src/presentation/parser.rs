//! Lexer and recursive-descent parser for `.grp` presentation files.
//!
//! ```text
//! presentation := "group" [name] "{" "gens:" gen+ ";" "rels:" [word {"," word}] ";"
//!                 ["involutions:" ident+ ";"] "}"
//! gen          := ident ["[" int "]"]
//! word         := factor {"*" factor}
//! factor       := (ident | "(" word ")") ["^" signed-int]
//! ```
//!
//! `#` starts a comment running to the end of the line. `gen[n]` declares a
//! generator with multiplicity `n` in the Cayley generating multiset.

use super::{Presentation, PresentationError, Word};
use crate::presentation::Letter;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, PresentationError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: start_line, column: start_col });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            let n = s.parse::<i64>().map_err(|_| PresentationError::Syntax {
                line: start_line,
                column: start_col,
                message: format!("integer `{s}` out of range"),
            })?;
            out.push(Token { tok: Tok::Int(n), line: start_line, column: start_col });
        } else if "{};:,*^()[]-".contains(c) {
            out.push(Token { tok: Tok::Punct(c), line: start_line, column: start_col });
            i += 1;
            col += 1;
        } else {
            return Err(PresentationError::Syntax {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// A parsed word whose letters still carry source positions, so undeclared
/// symbols can be reported where they occur.
type Located = Vec<(Letter, usize, usize)>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        let t = self.peek();
        Err(PresentationError::Syntax { line: t.line, column: t.column, message: message.into() })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), PresentationError> {
        if self.peek().tok == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            let found = Self::describe(&self.peek().tok);
            self.error(format!("expected `{c}`, found {found}"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), PresentationError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                self.expect_punct(':')
            }
            other => {
                let found = Self::describe(other);
                self.error(format!("expected `{kw}:`, found {found}"))
            }
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
            && self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Punct(':'))
    }

    fn signed_int(&mut self) -> Result<i64, PresentationError> {
        let negative = if self.peek().tok == Tok::Punct('-') {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(if negative { -n } else { n })
            }
            ref other => {
                let found = Self::describe(other);
                self.error(format!("expected integer exponent, found {found}"))
            }
        }
    }

    fn word(&mut self) -> Result<Located, PresentationError> {
        let mut letters = self.factor()?;
        while self.peek().tok == Tok::Punct('*') {
            self.bump();
            letters.extend(self.factor()?);
        }
        Ok(letters)
    }

    fn factor(&mut self) -> Result<Located, PresentationError> {
        let t = self.peek().clone();
        let base: Located = match t.tok {
            Tok::Ident(s) => {
                self.bump();
                vec![(Letter::pos(s), t.line, t.column)]
            }
            Tok::Punct('(') => {
                self.bump();
                let inner = self.word()?;
                self.expect_punct(')')?;
                inner
            }
            ref other => {
                let found = Self::describe(other);
                return self.error(format!("expected generator or `(`, found {found}"));
            }
        };
        if self.peek().tok == Tok::Punct('^') {
            self.bump();
            let n = self.signed_int()?;
            let src: Located = if n < 0 {
                base.iter().rev().map(|(l, a, b)| (l.inverted(), *a, *b)).collect()
            } else {
                base
            };
            let mut out = Vec::with_capacity(src.len() * n.unsigned_abs() as usize);
            for _ in 0..n.unsigned_abs() {
                out.extend(src.iter().cloned());
            }
            Ok(out)
        } else {
            Ok(base)
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize), PresentationError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, t.line, t.column))
            }
            ref other => {
                let found = Self::describe(other);
                self.error(format!("expected {what}, found {found}"))
            }
        }
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == "group" => {
                self.bump();
            }
            other => {
                let found = Self::describe(other);
                return self.error(format!("expected `group`, found {found}"));
            }
        }
        let name = match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => None,
        };
        self.expect_punct('{')?;

        self.expect_keyword("gens")?;
        let mut generators: Vec<String> = Vec::new();
        let mut multiplicities = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            let (g, line, column) = self.ident("generator")?;
            if generators.contains(&g) {
                return Err(PresentationError::DuplicateGenerator { symbol: g, line, column });
            }
            let mut mult = 1;
            if self.peek().tok == Tok::Punct('[') {
                self.bump();
                let n = self.signed_int()?;
                if n < 1 {
                    return self.error("generator multiplicity must be positive");
                }
                mult = n as usize;
                self.expect_punct(']')?;
            }
            generators.push(g);
            multiplicities.push(mult);
        }
        if generators.is_empty() {
            return self.error("expected at least one generator");
        }
        self.expect_punct(';')?;

        self.expect_keyword("rels")?;
        let mut located = Vec::new();
        if self.peek().tok != Tok::Punct(';') {
            located.push(self.word()?);
            while self.peek().tok == Tok::Punct(',') {
                self.bump();
                located.push(self.word()?);
            }
        }
        self.expect_punct(';')?;

        let mut involutions = Vec::new();
        if self.at_keyword("involutions") {
            self.expect_keyword("involutions")?;
            while let Tok::Ident(_) = self.peek().tok {
                let (g, line, column) = self.ident("involution")?;
                if !generators.contains(&g) {
                    return Err(PresentationError::UndeclaredGenerator { symbol: g, line, column });
                }
                if !involutions.contains(&g) {
                    involutions.push(g);
                }
            }
            if involutions.is_empty() {
                return self.error("expected at least one involution");
            }
            self.expect_punct(';')?;
        }
        self.expect_punct('}')?;
        if self.peek().tok != Tok::Eof {
            let found = Self::describe(&self.peek().tok);
            return self.error(format!("trailing input: {found}"));
        }

        let mut relators = Vec::with_capacity(located.len());
        for w in located {
            let mut letters = Vec::with_capacity(w.len());
            for (mut l, line, column) in w {
                if !generators.contains(&l.symbol) {
                    return Err(PresentationError::UndeclaredGenerator { symbol: l.symbol, line, column });
                }
                if involutions.contains(&l.symbol) {
                    l.inverse = false;
                }
                letters.push(l);
            }
            relators.push(Word(letters));
        }
        Ok(Presentation { name, generators, multiplicities, relators, involutions })
    }
}

pub(super) fn parse(text: &str) -> Result<Presentation, PresentationError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.presentation()
}

/// Parses a standalone word in the presentation grammar (parentheses and
/// powers allowed) against the generators of `p`.
pub(super) fn parse_word(p: &Presentation, text: &str) -> Result<Word, PresentationError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let w = parser.word()?;
    if parser.peek().tok != Tok::Eof {
        let found = Parser::describe(&parser.peek().tok);
        return parser.error(format!("trailing input: {found}"));
    }
    let mut letters = Vec::with_capacity(w.len());
    for (mut l, line, column) in w {
        if !p.generators.contains(&l.symbol) {
            return Err(PresentationError::UndeclaredGenerator { symbol: l.symbol, line, column });
        }
        if p.is_involution(&l.symbol) {
            l.inverse = false;
        }
        letters.push(l);
    }
    Ok(Word(letters))
}
