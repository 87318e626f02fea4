//! Finite groups as multiplication tables.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group axiom violated: {0}")]
    Axiom(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relator `{relator}` evaluates to `{value}`, not the identity")]
    RelatorFails { relator: String, value: String },
}

/// A finite group given by its full multiplication table. Element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupModel {
    pub name: Option<String>,
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    /// Generator symbol to element, in declaration order.
    generators: Vec<(String, usize)>,
}

impl GroupModel {
    /// Builds a model from a multiplication table and checks the group axioms
    /// (associativity exhaustively up to order 64, sampled beyond).
    pub fn from_table(
        name: Option<String>,
        elements: Vec<String>,
        mul: Vec<Vec<usize>>,
        generators: Vec<(String, usize)>,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        if n == 0 || mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(GroupError::Axiom("table is not a total binary operation".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            if let Some(y) = (0..n).find(|&y| mul[x][y] == 0) {
                inv[x] = y;
            } else {
                return Err(GroupError::Axiom(format!("{} has no inverse", elements[x])));
            }
        }
        let g = Self { name, elements, mul, inv, generators };
        g.validate()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, symbol: &str) -> Option<usize> {
        self.generators.iter().find(|(s, _)| s == symbol).map(|&(_, x)| x)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut x = 0;
        for _ in 0..n.unsigned_abs() {
            x = self.mul(x, base);
        }
        x
    }

    /// Evaluates a word whose symbols are generator symbols of this model.
    pub fn evaluate(&self, w: &Word) -> Result<usize, GroupError> {
        let mut x = 0;
        for l in w.letters() {
            let g = self
                .generator(&l.symbol)
                .ok_or_else(|| GroupError::UnknownGenerator(l.symbol.clone()))?;
            x = self.mul(x, if l.inverse { self.inv(g) } else { g });
        }
        Ok(x)
    }

    /// Elements of the subgroup generated by `gens`, in breadth-first order
    /// from the identity.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = vec![0];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !seen[y] {
                        seen[y] = true;
                        order.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks identity, inverses, associativity (exhaustive up to order 64,
    /// a deterministic sample of triples beyond) and that the table is a
    /// Latin square.
    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order();
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::Axiom(format!("element 0 is not an identity at {}", self.name(x))));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(GroupError::Axiom(format!("bad inverse for {}", self.name(x))));
            }
            let row: BTreeSet<usize> = self.mul[x].iter().copied().collect();
            if row.len() != n {
                return Err(GroupError::Axiom(format!("row of {} is not a permutation", self.name(x))));
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::Axiom(format!(
                    "associativity fails on ({}, {}, {})",
                    self.name(a),
                    self.name(b),
                    self.name(c)
                )))
            } else {
                Ok(())
            }
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..200_000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let (a, b, c) = ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize);
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// Checks that every relator of `p` evaluates to the identity.
    pub fn check_relators(&self, p: &Presentation) -> Result<(), GroupError> {
        for r in p.effective_relators() {
            let v = self.evaluate(&r)?;
            if v != 0 {
                return Err(GroupError::RelatorFails { relator: r.to_string(), value: self.name(v).to_string() });
            }
        }
        Ok(())
    }

    /// Resolves a generator description against this group:
    /// `e` or `1` is the identity, `(i,j,..)` is the product
    /// `g1^i * g2^j * ..` over the declared generators, and anything else
    /// is read as a word over the generator symbols (`a*b^-1`) or an
    /// element name.
    pub fn resolve(&self, text: &str) -> Result<usize, GroupError> {
        let t = text.trim();
        if t == "e" || t == "1" {
            return Ok(0);
        }
        if let Some(x) = self.element(t) {
            return Ok(x);
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let exps: Result<Vec<i64>, _> = inner.split(',').map(|s| s.trim().parse::<i64>()).collect();
            if let Ok(exps) = exps {
                if exps.len() != self.generators.len() {
                    return Err(GroupError::UnknownElement(t.to_string()));
                }
                let mut x = 0;
                for (&(_, g), &k) in self.generators.iter().zip(&exps) {
                    x = self.mul(x, self.pow(g, k));
                }
                return Ok(x);
            }
        }
        match Word::parse_flat(t) {
            Some(w) => self.evaluate(&w).map_err(|_| GroupError::UnknownElement(t.to_string())),
            None => Err(GroupError::UnknownElement(t.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> GroupModel {
        let mul = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        GroupModel::from_table(
            Some("Z3".into()),
            vec!["e".into(), "a".into(), "a^-1".into()],
            mul,
            vec![("a".into(), 1)],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_table_basics() {
        let g = z3();
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.closure(&[1]).len(), 3);
        assert_eq!(g.resolve("a^2").unwrap(), 2);
        assert_eq!(g.resolve("(2)").unwrap(), 2);
        assert_eq!(g.resolve("e").unwrap(), 0);
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_non_group_table() {
        let mul = vec![vec![0, 1], vec![1, 1]];
        assert!(GroupModel::from_table(None, vec!["e".into(), "x".into()], mul, vec![]).is_err());
    }
}
