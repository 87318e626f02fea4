use std::fmt;

use serde::{Deserialize, Serialize};

/// One signed generator occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub symbol: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(symbol: impl Into<String>, inverse: bool) -> Self {
        Self { symbol: symbol.into(), inverse }
    }

    pub fn pos(symbol: impl Into<String>) -> Self {
        Self::new(symbol, false)
    }

    pub fn neg(symbol: impl Into<String>) -> Self {
        Self::new(symbol, true)
    }

    pub fn inverted(&self) -> Self {
        Self { symbol: self.symbol.clone(), inverse: !self.inverse }
    }
}

/// A word over generator symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverted).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    /// `self^n`, with negative `n` meaning powers of the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend(base.0.iter().cloned());
        }
        Word(v)
    }

    /// Parses `a*b^-1*c^2` style words (no parentheses); used for short
    /// CLI arguments. The full grammar lives in the presentation parser.
    pub fn parse_flat(text: &str) -> Option<Word> {
        let text = text.trim();
        if text.is_empty() {
            return None;
        }
        let mut letters = Vec::new();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (sym, exp) = match factor.split_once('^') {
                Some((s, e)) => (s.trim(), e.trim().parse::<i64>().ok()?),
                None => (factor, 1),
            };
            if sym.is_empty() || !sym.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return None;
            }
            letters.extend(Word(vec![Letter::pos(sym)]).pow(exp).0);
        }
        Some(Word(letters))
    }
}

impl fmt::Display for Word {
    /// Runs of one signed letter are collapsed into powers: `k*r^-1*r^-1`
    /// prints as `k*r^-2`. The empty word prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == *l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.inverse { -run } else { run };
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{}", l.symbol)?;
            } else {
                write!(f, "{}^{}", l.symbol, exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_collapses_runs() {
        let w = Word(vec![Letter::pos("k"), Letter::neg("r"), Letter::neg("r"), Letter::pos("k")]);
        assert_eq!(w.to_string(), "k*r^-2*k");
        assert_eq!(Word::empty().to_string(), "e");
    }

    #[test]
    fn pow_and_inverse() {
        let w = Word(vec![Letter::pos("k"), Letter::pos("r")]);
        assert_eq!(w.pow(-1), Word(vec![Letter::neg("r"), Letter::neg("k")]));
        assert_eq!(w.pow(3).len(), 6);
        assert!(w.pow(0).is_empty());
    }

    #[test]
    fn flat_words() {
        assert_eq!(Word::parse_flat("a^2*b^-1").unwrap().to_string(), "a^2*b^-1");
        assert!(Word::parse_flat("a*(b)").is_none());
    }
}
