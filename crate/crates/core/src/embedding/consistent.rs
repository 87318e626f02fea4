//! Exhaustive search for label-consistent planar embeddings of a complete
//! Cayley graph: every vertex uses one reference cyclic order of the label
//! slots, or its mirror.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{trace_faces, Embedding, EmbeddingError, RotationSystem};
use crate::cayley::{CayleyGraph, Side};

pub const MAX_LABEL_DEGREE: usize = 6;
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistentEmbedding {
    /// Reference cyclic order of label slots, first slot fixed.
    pub label_order: Vec<(usize, Side)>,
    /// Per-vertex spin; the identity always has `+1`.
    pub spins: Vec<i8>,
    pub embedding: Embedding,
}

impl ConsistentEmbedding {
    /// Human-readable slot names, e.g. `["a+", "b", "a-"]`.
    pub fn label_names(&self, cg: &CayleyGraph) -> Vec<String> {
        self.label_order.iter().map(|&s| slot_name(cg, s)).collect()
    }
}

pub fn slot_name(cg: &CayleyGraph, (g, side): (usize, Side)) -> String {
    let l = &cg.generators[g].label;
    match side {
        Side::Out => format!("{l}+"),
        Side::In => format!("{l}-"),
        Side::Both => l.clone(),
    }
}

/// Rotation in which each vertex lists its darts in `order` (spin `+1`) or
/// reversed (spin `-1`). Slots missing at a vertex (frontier of a ball) are
/// skipped.
pub fn rotation_from_labels(cg: &CayleyGraph, order: &[(usize, Side)], spins: &[i8]) -> RotationSystem {
    let g = &cg.graph;
    let rot = (0..g.vertex_count())
        .map(|v| {
            let by_slot: HashMap<(usize, Side), usize> = g.darts_at(v).iter().map(|&d| (cg.slot(d), d)).collect();
            let mut r: Vec<usize> = order.iter().filter_map(|s| by_slot.get(s).copied()).collect();
            if spins[v] < 0 {
                r.reverse();
            }
            r
        })
        .collect();
    RotationSystem { order: rot }
}

fn permutations(items: &[(usize, Side)]) -> Vec<Vec<(usize, Side)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

pub fn search_consistent_embeddings(cg: &CayleyGraph) -> Result<Vec<ConsistentEmbedding>, EmbeddingError> {
    search_consistent_embeddings_with_budget(cg, DEFAULT_SEARCH_BUDGET)
}

/// All (reference order, spin assignment) pairs whose rotation has genus 0,
/// with the first slot of the order and the identity's spin fixed. Results
/// are ordered by permutation index, then by spin bit pattern.
pub fn search_consistent_embeddings_with_budget(
    cg: &CayleyGraph,
    budget: u128,
) -> Result<Vec<ConsistentEmbedding>, EmbeddingError> {
    if !cg.is_complete() {
        return Err(EmbeddingError::Truncated);
    }
    let slots = cg.slot_types();
    let d = slots.len();
    if d > MAX_LABEL_DEGREE {
        return Err(EmbeddingError::LabelDegreeTooLarge(d));
    }
    let n = cg.vertex_count();
    let perm_count: u128 = (1..d.max(1) as u128).product();
    let spin_count: u128 = 1u128.checked_shl((n.max(1) - 1) as u32).unwrap_or(u128::MAX);
    let candidates = perm_count.saturating_mul(spin_count);
    if candidates > budget {
        return Err(EmbeddingError::BudgetExceeded { candidates, budget });
    }
    let orders: Vec<Vec<(usize, Side)>> = if d == 0 {
        vec![Vec::new()]
    } else {
        permutations(&slots[1..])
            .into_iter()
            .map(|mut p| {
                p.insert(0, slots[0]);
                p
            })
            .collect()
    };
    let spin_count = spin_count as u64;
    let found: Vec<ConsistentEmbedding> = (0..candidates as u64)
        .into_par_iter()
        .filter_map(|i| {
            let order = &orders[(i / spin_count) as usize];
            let mask = i % spin_count;
            let spins: Vec<i8> =
                (0..n).map(|v| if v > 0 && mask >> (v - 1) & 1 == 1 { -1 } else { 1 }).collect();
            let rot = rotation_from_labels(cg, order, &spins);
            let emb = trace_faces(&cg.graph, &rot).ok()?;
            (emb.genus == 0).then(|| ConsistentEmbedding { label_order: order.clone(), spins, embedding: emb })
        })
        .collect();
    Ok(found)
}
