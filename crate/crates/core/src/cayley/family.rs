//! Normal-form engines for the bundled infinite groups.
//!
//! Every engine encodes its elements as `Vec<i64>` in a canonical normal
//! form, so equality of encodings is equality in the group. Only right
//! multiplication by a generator (or its inverse) is needed to grow balls.

use std::collections::BTreeSet;

use crate::group::GroupModel;
use crate::presentation::{Letter, Word};

use super::CayleyError;

/// One generator of a bundled family, as it appears on Cayley graph edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyGenerator {
    pub label: String,
    /// Order at most two: drawn as a single undirected edge.
    pub involution: bool,
}

pub(crate) type Elem = Vec<i64>;

pub(crate) trait NormalForm: Send + Sync {
    fn identity(&self) -> Elem;
    fn generators(&self) -> Vec<FamilyGenerator>;
    fn mul_gen(&self, x: &Elem, gen: usize, inverse: bool) -> Elem;
    fn name(&self, x: &Elem) -> String;
}

/// Finite group × Z^k with arbitrary generator vectors.
pub(crate) struct DirectProduct {
    pub finite: Option<GroupModel>,
    pub rank: usize,
    /// (label, finite part, free abelian part)
    pub gens: Vec<(String, usize, Vec<i64>)>,
}

impl DirectProduct {
    fn finite_mul(&self, a: usize, b: usize) -> usize {
        self.finite.as_ref().map_or(0, |g| g.mul(a, b))
    }
    fn finite_inv(&self, a: usize) -> usize {
        self.finite.as_ref().map_or(0, |g| g.inv(a))
    }
    fn finite_order(&self, a: usize) -> usize {
        self.finite.as_ref().map_or(1, |g| g.element_order(a))
    }
}

impl NormalForm for DirectProduct {
    fn identity(&self) -> Elem {
        vec![0; self.rank + 1]
    }

    fn generators(&self) -> Vec<FamilyGenerator> {
        self.gens
            .iter()
            .map(|(label, f, v)| FamilyGenerator {
                label: label.clone(),
                involution: v.iter().all(|&c| c == 0) && self.finite_order(*f) <= 2,
            })
            .collect()
    }

    fn mul_gen(&self, x: &Elem, gen: usize, inverse: bool) -> Elem {
        let (_, f, v) = &self.gens[gen];
        let mut y = x.clone();
        let s = if inverse { -1 } else { 1 };
        let fpart = if inverse { self.finite_inv(*f) } else { *f };
        y[0] = self.finite_mul(x[0] as usize, fpart) as i64;
        for (i, c) in v.iter().enumerate() {
            y[i + 1] += s * c;
        }
        y
    }

    fn name(&self, x: &Elem) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(g) = self.finite.as_ref().filter(|g| g.order() > 1) {
            parts.push(g.name(x[0] as usize).to_string());
        }
        parts.extend(x[1..].iter().map(|c| c.to_string()));
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            format!("({})", parts.join(","))
        }
    }
}

/// Free group on the given symbols; elements are freely reduced words.
pub(crate) struct FreeGroup {
    pub symbols: Vec<String>,
}

impl NormalForm for FreeGroup {
    fn identity(&self) -> Elem {
        Vec::new()
    }

    fn generators(&self) -> Vec<FamilyGenerator> {
        self.symbols
            .iter()
            .map(|s| FamilyGenerator { label: s.clone(), involution: false })
            .collect()
    }

    fn mul_gen(&self, x: &Elem, gen: usize, inverse: bool) -> Elem {
        let letter = if inverse { -(gen as i64 + 1) } else { gen as i64 + 1 };
        let mut y = x.clone();
        if y.last() == Some(&-letter) {
            y.pop();
        } else {
            y.push(letter);
        }
        y
    }

    fn name(&self, x: &Elem) -> String {
        Word(
            x.iter()
                .map(|&l| Letter::new(self.symbols[(l.unsigned_abs() - 1) as usize].clone(), l < 0))
                .collect(),
        )
        .to_string()
    }
}

/// One factor of a free product with amalgamation over a subgroup `C` of
/// order 1 or 2.
#[derive(Clone, Debug)]
pub(crate) struct Factor {
    pub group: GroupModel,
    /// (label, element)
    pub gens: Vec<(String, usize)>,
    /// The element generating `C` in this factor.
    pub shared: Option<usize>,
    pub tag: String,
}

/// Free product of finite groups amalgamated over a common `C` (trivial or
/// of order 2). Normal form: `t1 * t2 * ... * tn * h` where each `ti` is a
/// non-trivial left-coset representative of `C` in its factor, consecutive
/// syllables come from different factors and `h ∈ C`. The representative of
/// `yC` is the lower-indexed of `y` and `y * c`.
///
/// Encoding: `[h, f1, t1, f2, t2, ...]` with `h ∈ {0, 1}`.
pub(crate) struct Amalgam {
    pub factors: Vec<Factor>,
    /// (label, factor, element); the shared involution appears once.
    pub gens: Vec<(String, usize, usize)>,
    pub shared_label: Option<String>,
    clash: BTreeSet<String>,
}

impl Amalgam {
    pub fn new(factors: Vec<Factor>, shared_label: Option<String>) -> Result<Self, CayleyError> {
        let shared = factors.iter().all(|f| f.shared.is_some());
        if !shared && factors.iter().any(|f| f.shared.is_some()) {
            return Err(CayleyError::InvalidFamily("either every factor or none names an amalgamated involution".into()));
        }
        for f in &factors {
            if let Some(b) = f.shared {
                if f.group.element_order(b) != 2 {
                    return Err(CayleyError::NotInvolution {
                        factor: f.tag.clone(),
                        element: f.group.name(b).to_string(),
                    });
                }
            }
            let elems: Vec<usize> = f.gens.iter().map(|&(_, x)| x).collect();
            let reached = f.group.closure(&elems).len();
            if reached != f.group.order() {
                return Err(CayleyError::NonGenerating { reached, order: f.group.order() });
            }
        }
        // Labels: the shared involution gets one common label; other clashing
        // labels are prefixed by their factor tag.
        let mut count = std::collections::BTreeMap::<String, usize>::new();
        for f in &factors {
            for (l, x) in &f.gens {
                if Some(*x) != f.shared {
                    *count.entry(l.clone()).or_default() += 1;
                }
            }
        }
        let shared_name = shared_label.clone().unwrap_or_else(|| "b".into());
        let mut gens = Vec::new();
        let mut shared_done = false;
        for (fi, f) in factors.iter().enumerate() {
            for (l, x) in &f.gens {
                if Some(*x) == f.shared {
                    if !shared_done {
                        gens.push((shared_name.clone(), fi, *x));
                        shared_done = true;
                    }
                } else if count[l] > 1 || (shared && *l == shared_name) {
                    gens.push((format!("{}.{}", f.tag, l), fi, *x));
                } else {
                    gens.push((l.clone(), fi, *x));
                }
            }
        }
        let mut clash = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for f in &factors {
            for n in f.group.element_names().iter().skip(1) {
                if !seen.insert(n.clone()) {
                    clash.insert(n.clone());
                }
            }
        }
        Ok(Self { factors, gens, shared_label: if shared { Some(shared_name) } else { None }, clash })
    }

    fn shared_in(&self, f: usize) -> usize {
        self.factors[f].shared.unwrap_or(0)
    }

    /// Splits `w` in factor `f` as `rep * c` with `c ∈ C`.
    fn split(&self, f: usize, w: usize) -> (usize, i64) {
        let g = &self.factors[f].group;
        match self.factors[f].shared {
            None => (w, 0),
            Some(b) => {
                let wb = g.mul(w, b);
                if w <= wb {
                    (w, 0)
                } else {
                    (wb, 1)
                }
            }
        }
    }
}

impl NormalForm for Amalgam {
    fn identity(&self) -> Elem {
        vec![0]
    }

    fn generators(&self) -> Vec<FamilyGenerator> {
        self.gens
            .iter()
            .map(|(l, f, x)| FamilyGenerator {
                label: l.clone(),
                involution: self.factors[*f].group.element_order(*x) <= 2,
            })
            .collect()
    }

    fn mul_gen(&self, x: &Elem, gen: usize, inverse: bool) -> Elem {
        let (_, f, s) = self.gens[gen];
        let g = &self.factors[f].group;
        let s = if inverse { g.inv(s) } else { s };
        let h = if x[0] == 1 { self.shared_in(f) } else { 0 };
        let z = g.mul(h, s);
        let mut y = x.clone();
        let last_in_f = y.len() >= 3 && y[y.len() - 2] == f as i64;
        let w = if last_in_f {
            let t = y.pop().unwrap() as usize;
            y.pop();
            g.mul(t, z)
        } else {
            z
        };
        let (rep, c) = self.split(f, w);
        if rep != 0 {
            y.push(f as i64);
            y.push(rep as i64);
        }
        y[0] = c;
        y
    }

    fn name(&self, x: &Elem) -> String {
        let mut parts: Vec<String> = Vec::new();
        for pair in x[1..].chunks(2) {
            let f = &self.factors[pair[0] as usize];
            let mut n = f.group.name(pair[1] as usize).to_string();
            if self.clash.contains(&n) {
                n = format!("{}.{}", f.tag, n);
            }
            if n.contains('*') {
                n = format!("({n})");
            }
            parts.push(n);
        }
        if x[0] == 1 {
            parts.push(self.shared_label.clone().unwrap_or_else(|| "b".into()));
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join("*")
        }
    }
}

/// A finite group seen through the same interface, so finite groups can be
/// truncated into balls too.
pub(crate) struct Finite {
    pub group: GroupModel,
    pub gens: Vec<(String, usize)>,
}

impl NormalForm for Finite {
    fn identity(&self) -> Elem {
        vec![0]
    }

    fn generators(&self) -> Vec<FamilyGenerator> {
        self.gens
            .iter()
            .map(|(l, x)| FamilyGenerator { label: l.clone(), involution: self.group.element_order(*x) <= 2 })
            .collect()
    }

    fn mul_gen(&self, x: &Elem, gen: usize, inverse: bool) -> Elem {
        let s = self.gens[gen].1;
        let s = if inverse { self.group.inv(s) } else { s };
        vec![self.group.mul(x[0] as usize, s) as i64]
    }

    fn name(&self, x: &Elem) -> String {
        self.group.name(x[0] as usize).to_string()
    }
}
