//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! Strategy: HLT. Cosets are processed in order of definition; for each live
//! coset every relator is scanned and filled from it (defining new cosets as
//! needed), then any still-empty row entries are defined. Coincidences are
//! processed immediately with a union-find queue. The enumeration is fully
//! deterministic for a fixed presentation; the final table is standardized
//! by breadth-first search from the identity with columns in generator order
//! `g1, g1^-1, g2, g2^-1, ...` (involutions have a single column), so element
//! `i` is the `i`-th element in shortlex order of its least word.

use thiserror::Error;

use super::{Letter, Presentation, Word};
use crate::group::{GroupError, GroupModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetEnumerationError {
    #[error("coset budget exhausted: {defined} cosets defined (budget {budget}); the group may be infinite or larger than the budget")]
    BudgetExhausted { defined: usize, budget: usize },
    #[error("group has order {order}, more than the budget {budget}")]
    OrderExceedsBudget { order: usize, budget: usize },
    #[error("max_cosets must be at least 1")]
    ZeroBudget,
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

const NONE: usize = usize::MAX;

struct Table {
    cols: usize,
    inv_col: Vec<usize>,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    limit: usize,
}

impl Table {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, CosetEnumerationError> {
        if self.rows.len() >= self.limit {
            return Err(CosetEnumerationError::BudgetExhausted { defined: self.rows.len(), budget: self.limit });
        }
        let n = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.rows[c][x] = n;
        self.rows[n][self.inv_col[x]] = c;
        Ok(n)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.rows[dead][x];
                if d == NONE {
                    continue;
                }
                let xi = self.inv_col[x];
                if self.rows[d][xi] == dead {
                    self.rows[d][xi] = NONE;
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                if self.rows[mu][x] != NONE {
                    let t = self.rows[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.rows[nu][xi] != NONE {
                    let t = self.rows[nu][xi];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][xi] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<(), CosetEnumerationError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.rows[f][w[i]] != NONE {
                f = self.rows[f][w[i]];
                i += 1;
                if i > j {
                    break;
                }
            }
            if i > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i && self.rows[b][self.inv_col[w[j]]] != NONE {
                b = self.rows[b][self.inv_col[w[j]]];
                if j == 0 {
                    // j < i cannot be represented with usize when i == 0
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                self.rows[f][w[i]] = b;
                self.rows[b][self.inv_col[w[i]]] = f;
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }
}

/// Enumerates the cosets of the trivial subgroup of the group presented by
/// `p` and returns the resulting [`GroupModel`].
///
/// `max_cosets` bounds the order of the returned group. The enumeration
/// itself may need more scratch cosets than the final order; it is allowed
/// `max(64 * max_cosets, 4096)` definitions before giving up.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<GroupModel, CosetEnumerationError> {
    if max_cosets == 0 {
        return Err(CosetEnumerationError::ZeroBudget);
    }
    if p.generators.is_empty() {
        return Err(CosetEnumerationError::Malformed("no generators".into()));
    }
    // Column layout.
    let mut gen_col = Vec::new();
    let mut inv_col = Vec::new();
    let mut col_letter: Vec<Letter> = Vec::new();
    for g in &p.generators {
        let c = inv_col.len();
        gen_col.push(c);
        if p.is_involution(g) {
            inv_col.push(c);
            col_letter.push(Letter::pos(g.clone()));
        } else {
            inv_col.push(c + 1);
            inv_col.push(c);
            col_letter.push(Letter::pos(g.clone()));
            col_letter.push(Letter::neg(g.clone()));
        }
    }
    let cols = inv_col.len();
    let to_cols = |w: &Word| -> Result<Vec<usize>, CosetEnumerationError> {
        w.letters()
            .iter()
            .map(|l| {
                let gi = p
                    .generator_index(&l.symbol)
                    .ok_or_else(|| CosetEnumerationError::Malformed(format!("unknown symbol `{}`", l.symbol)))?;
                let c = gen_col[gi];
                Ok(if l.inverse && !p.is_involution(&l.symbol) { inv_col[c] } else { c })
            })
            .collect()
    };
    let relators: Vec<Vec<usize>> = p
        .effective_relators()
        .iter()
        .map(to_cols)
        .collect::<Result<_, _>>()?;

    let limit = max_cosets.saturating_mul(64).max(4096);
    let mut t = Table { cols, inv_col: inv_col.clone(), rows: vec![vec![NONE; cols]], parent: vec![0], limit };

    let mut alpha = 0;
    while alpha < t.rows.len() {
        if t.live(alpha) {
            for r in &relators {
                t.scan_and_fill(alpha, r)?;
                if !t.live(alpha) {
                    break;
                }
            }
            if t.live(alpha) {
                for x in 0..cols {
                    if t.rows[alpha][x] == NONE {
                        t.define(alpha, x)?;
                    }
                }
            }
        }
        alpha += 1;
    }

    // Standardize: BFS from coset 0 over live cosets.
    let mut index = vec![NONE; t.rows.len()];
    let mut order = vec![0usize];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    index[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        for x in 0..cols {
            let d = t.rep(t.rows[c][x]);
            if index[d] == NONE {
                index[d] = order.len();
                order.push(d);
                let mut w = words[head].clone();
                w.push(x);
                words.push(w);
            }
        }
        head += 1;
    }
    let n = order.len();
    if n > max_cosets {
        return Err(CosetEnumerationError::OrderExceedsBudget { order: n, budget: max_cosets });
    }
    // Right regular action by columns, in standardized numbering.
    let act: Vec<Vec<usize>> = order
        .iter()
        .map(|&c| (0..cols).map(|x| index[t.rep(t.rows[c][x])]).collect())
        .collect();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| words[y].iter().fold(x, |acc, &col| act[acc][col]))
                .collect()
        })
        .collect();
    let names: Vec<String> = words
        .iter()
        .map(|w| Word(w.iter().map(|&c| col_letter[c].clone()).collect()).to_string())
        .collect();
    let generators: Vec<(String, usize)> = p
        .generators
        .iter()
        .zip(&gen_col)
        .map(|(g, &c)| (g.clone(), act[0][c]))
        .collect();
    let model = GroupModel::from_table(p.name.clone(), names, mul, generators)?;
    model.check_relators(p)?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(text: &str) -> GroupModel {
        coset_enumerate(&Presentation::parse(text).unwrap(), 1000).unwrap()
    }

    #[test]
    fn a4_has_order_12() {
        let g = enumerate("group A4 { gens: k r; rels: k^2, r^3, (k*r)^3; involutions: k; }");
        assert_eq!(g.order(), 12);
        assert_eq!(g.element_order(g.generator("k").unwrap()), 2);
        assert_eq!(g.element_order(g.generator("r").unwrap()), 3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn a4_odd_presentation_has_order_12() {
        let g = enumerate("group { gens: r g; rels: r^3, g^3, (r*g)^2; }");
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn cyclic_and_trivial() {
        let z4 = enumerate("group { gens: a; rels: a^4; }");
        assert_eq!(z4.order(), 4);
        assert!(z4.is_abelian());
        assert_eq!(z4.element_order(z4.generator("a").unwrap()), 4);
        assert_eq!(z4.element_names(), &["e", "a", "a^-1", "a^2"]);
        let z1 = enumerate("group Z1 { gens: a; rels: a^1; }");
        assert_eq!(z1.order(), 1);
    }

    #[test]
    fn larger_groups() {
        assert_eq!(enumerate("group { gens: a b; rels: a^4, b^2, a*b*a^-1*b^-1; involutions: b; }").order(), 8);
        assert_eq!(enumerate("group { gens: s t; rels: (s*t)^5; involutions: s t; }").order(), 10);
        assert_eq!(enumerate("group { gens: a b; rels: a^3, b^2, (a*b)^4; }").order(), 24);
        assert_eq!(enumerate("group { gens: a b; rels: a^3, b^2, (a*b)^5; }").order(), 60);
        assert_eq!(enumerate("group Q8 { gens: i j; rels: i^4, i^2*j^-2, j^-1*i*j*i; }").order(), 8);
    }

    #[test]
    fn budget_errors_are_distinct() {
        let z = Presentation::parse("group Z { gens: a; rels: ; }").unwrap();
        assert!(matches!(coset_enumerate(&z, 10), Err(CosetEnumerationError::BudgetExhausted { .. })));
        let a4 = Presentation::parse("group { gens: k r; rels: k^2, r^3, (k*r)^3; }").unwrap();
        assert_eq!(
            coset_enumerate(&a4, 10).unwrap_err(),
            CosetEnumerationError::OrderExceedsBudget { order: 12, budget: 10 }
        );
        assert_eq!(coset_enumerate(&a4, 0).unwrap_err(), CosetEnumerationError::ZeroBudget);
    }

    #[test]
    fn deterministic() {
        let p = Presentation::parse("group { gens: r g; rels: r^3, g^3, (r*g)^2; }").unwrap();
        assert_eq!(coset_enumerate(&p, 100).unwrap(), coset_enumerate(&p, 100).unwrap());
    }
}
