//! Group presentations: parsing, emitting, free reduction and coset
//! enumeration into finite [`GroupModel`](crate::group::GroupModel)s.

mod parser;
mod todd_coxeter;
mod word;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use todd_coxeter::{coset_enumerate, CosetEnumerationError};
pub use word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("undeclared generator `{symbol}` at {line}:{column}")]
    UndeclaredGenerator { symbol: String, line: usize, column: usize },
    #[error("duplicate generator `{symbol}` at {line}:{column}")]
    DuplicateGenerator { symbol: String, line: usize, column: usize },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// A finite group presentation `<generators | relators>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: Option<String>,
    pub generators: Vec<String>,
    /// Multiplicity of each generator in the Cayley generating multiset.
    pub multiplicities: Vec<usize>,
    pub relators: Vec<Word>,
    /// Generators declared to have order two.
    pub involutions: Vec<String>,
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        parser::parse(text)
    }

    /// Parses a word such as `(k*r)^-2*k` over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parser::parse_word(self, text)
    }

    pub fn is_involution(&self, symbol: &str) -> bool {
        self.involutions.iter().any(|g| g == symbol)
    }

    pub fn generator_index(&self, symbol: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == symbol)
    }

    /// Relators with the implied `g^2` added for each declared involution
    /// that lacks one.
    pub fn effective_relators(&self) -> Vec<Word> {
        let mut rels = self.relators.clone();
        for g in &self.involutions {
            let sq = Word(vec![Letter::pos(g.clone()), Letter::pos(g.clone())]);
            if !rels.contains(&sq) {
                rels.push(sq);
            }
        }
        rels
    }

    /// Cayley generating multiset: one label per generator copy. Generators
    /// with multiplicity `n > 1` are labelled `g#1 .. g#n`.
    pub fn generator_labels(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (g, &m) in self.generators.iter().zip(&self.multiplicities) {
            if m == 1 {
                out.push((g.clone(), g.clone()));
            } else {
                for i in 1..=m {
                    out.push((format!("{g}#{i}"), g.clone()));
                }
            }
        }
        out
    }

    /// Canonical text form; `parse(emit(p)) == p`.
    pub fn emit(&self) -> String {
        let mut s = String::from("group ");
        if let Some(n) = &self.name {
            s.push_str(n);
            s.push(' ');
        }
        s.push_str("{ gens:");
        for (g, &m) in self.generators.iter().zip(&self.multiplicities) {
            let _ = write!(s, " {g}");
            if m != 1 {
                let _ = write!(s, "[{m}]");
            }
        }
        s.push_str("; rels:");
        for (i, r) in self.relators.iter().enumerate() {
            s.push_str(if i == 0 { " " } else { ", " });
            if r.is_empty() {
                let _ = write!(s, "{}^0", self.generators[0]);
            } else {
                let _ = write!(s, "{r}");
            }
        }
        s.push(';');
        if !self.involutions.is_empty() {
            s.push_str(" involutions:");
            for g in &self.involutions {
                let _ = write!(s, " {g}");
            }
            s.push(';');
        }
        s.push_str(" }");
        s
    }

    /// Free reduction with involution normalisation: letters of declared
    /// involutions get sign +1, then adjacent mutually inverse letters are
    /// cancelled (an involution letter is its own inverse). This is not a
    /// solution of the word problem.
    pub fn reduce_word(&self, w: &Word) -> Result<Word, PresentationError> {
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        for l in w.letters() {
            if self.generator_index(&l.symbol).is_none() {
                return Err(PresentationError::UnknownSymbol(l.symbol.clone()));
            }
            let invol = self.is_involution(&l.symbol);
            let l = if invol { Letter::pos(l.symbol.clone()) } else { l.clone() };
            match stack.last() {
                Some(top) if top.symbol == l.symbol && (invol || top.inverse != l.inverse) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Ok(Word(stack))
    }
}

/// Free-function form of [`Presentation::parse`].
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Presentation::parse(text)
}

/// Free-function form of [`Presentation::reduce_word`].
pub fn reduce_word(p: &Presentation, w: &Word) -> Result<Word, PresentationError> {
    p.reduce_word(w)
}
