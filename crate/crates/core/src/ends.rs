//! Number of ends of a Cayley graph read off nested balls: the components of
//! `Ball(R) \ Ball(r)` that reach the frontier, classified as 0, 1, 2 or a
//! Cantor set (three or more).
//!
//! Only the count is classified. Ends are not split further by whether
//! vertices accumulate at them, since a finite ball carries no such data.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cayley::{build_ball, CayleyError, CayleyGraph, Family};
use crate::group::GroupModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndsError {
    #[error("inner radius {r} must be smaller than outer radius {big_r}")]
    BadRadii { r: usize, big_r: usize },
    #[error("ball is not truncated; pass a ball built with a radius")]
    NotABall,
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndsClass {
    Zero,
    One,
    Two,
    Cantor,
}

impl EndsClass {
    pub fn from_count(c: usize) -> Self {
        match c {
            0 => EndsClass::Zero,
            1 => EndsClass::One,
            2 => EndsClass::Two,
            _ => EndsClass::Cantor,
        }
    }
}

impl std::fmt::Display for EndsClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EndsClass::Zero => "0",
            EndsClass::One => "1",
            EndsClass::Two => "2",
            EndsClass::Cantor => "cantor",
        })
    }
}

/// Serialized as `0`, `1`, `2` or `"cantor"`.
impl Serialize for EndsClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EndsClass::Zero => s.serialize_u8(0),
            EndsClass::One => s.serialize_u8(1),
            EndsClass::Two => s.serialize_u8(2),
            EndsClass::Cantor => s.serialize_str("cantor"),
        }
    }
}

/// Frontier-reaching components of one annulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnulusCount {
    pub r: usize,
    #[serde(rename = "R")]
    pub big_r: usize,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndsReport {
    pub class: EndsClass,
    pub family: Option<String>,
    /// Counts at `(r, R − 1)` and `(r, R)`; empty for finite groups.
    pub counts: Vec<AnnulusCount>,
    pub stabilized: bool,
    /// Exact normal forms back the ball; false for graphs of unknown origin.
    pub certified: bool,
}

/// Components of `Ball(R) \ Ball(r)` containing a frontier vertex, where
/// `ball` has radius `R`.
pub fn annulus_components(ball: &CayleyGraph, r: usize) -> Result<usize, EndsError> {
    let big_r = ball.radius.ok_or(EndsError::NotABall)?;
    if r >= big_r {
        return Err(EndsError::BadRadii { r, big_r });
    }
    let (_, comp) = ball.graph.components_where(|v| ball.distance[v] > r);
    let mut hit: Vec<usize> = (0..ball.vertex_count()).filter(|&v| ball.frontier[v]).map(|v| comp[v]).collect();
    hit.sort_unstable();
    hit.dedup();
    Ok(hit.len())
}

/// Classifies from a ball of radius `R` (restricted to `R − 1` for the
/// stability check). Cantor requires three or more components at both radii.
pub fn classify_ball(ball: &CayleyGraph, r: usize, certified: bool) -> Result<EndsReport, EndsError> {
    let big_r = ball.radius.ok_or(EndsError::NotABall)?;
    if r + 1 >= big_r {
        return Err(EndsError::BadRadii { r, big_r: big_r.saturating_sub(1) });
    }
    let inner = ball.restrict(big_r - 1);
    let c1 = annulus_components(&inner, r)?;
    let c2 = annulus_components(ball, r)?;
    let stabilized = c1 == c2;
    let class = if c1 >= 3 && c2 >= 3 { EndsClass::Cantor } else { EndsClass::from_count(c2.min(2)) };
    Ok(EndsReport {
        class,
        family: ball.family.clone(),
        counts: vec![
            AnnulusCount { r, big_r: big_r - 1, components: c1 },
            AnnulusCount { r, big_r, components: c2 },
        ],
        stabilized,
        certified,
    })
}

/// Ends of a bundled family. Finite families have no ends.
pub fn classify_ends(family: &Family, r: usize, big_r: usize) -> Result<EndsReport, EndsError> {
    if r >= big_r {
        return Err(EndsError::BadRadii { r, big_r });
    }
    if family.is_finite() {
        return Ok(finite_report(Some(family.tag().to_string())));
    }
    let ball = build_ball(family, big_r)?;
    classify_ball(&ball, r, true)
}

/// A finite group has no ends.
pub fn classify_group(g: &GroupModel) -> EndsReport {
    finite_report(g.name.clone())
}

fn finite_report(family: Option<String>) -> EndsReport {
    EndsReport { class: EndsClass::Zero, family, counts: Vec::new(), stabilized: true, certified: true }
}

/// Radii at which the bundled families' counts have settled.
pub fn default_radii(tag: &str) -> (usize, usize) {
    match tag {
        "z" | "z-gens-1-2" => (2, 5),
        "z-cross-z" => (2, 6),
        t if t.starts_with("z-cross-z") => (2, 6),
        "f2" | "f3" => (1, 4),
        "amalgam" => (2, 6),
        _ => (1, 3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(f: &Family) -> EndsReport {
        let (r, big_r) = default_radii(f.tag());
        classify_ends(f, r, big_r).unwrap()
    }

    #[test]
    fn bundled_families() {
        let z = class(&Family::integers());
        assert_eq!((z.class, z.stabilized), (EndsClass::Two, true));
        assert_eq!(class(&Family::integers_with(&[1, 2]).unwrap()).class, EndsClass::Two);
        assert_eq!(class(&Family::free_abelian(2)).class, EndsClass::One);
        assert_eq!(class(&Family::cyclic_times_integers(3).unwrap()).class, EndsClass::Two);
        let f2 = class(&Family::free_group(2).unwrap());
        assert_eq!(f2.class, EndsClass::Cantor);
        assert_eq!(f2.counts.iter().map(|c| c.components).collect::<Vec<_>>(), vec![12, 12]);
        assert!(f2.stabilized);
    }

    #[test]
    fn tree_counts_grow_with_inner_radius() {
        let ball = build_ball(&Family::free_group(2).unwrap(), 4).unwrap();
        assert_eq!(annulus_components(&ball, 0).unwrap(), 4);
        assert_eq!(annulus_components(&ball, 1).unwrap(), 12);
        assert_eq!(annulus_components(&ball, 2).unwrap(), 36);
    }

    #[test]
    fn serialization() {
        assert_eq!(serde_json::to_string(&EndsClass::Two).unwrap(), "2");
        assert_eq!(serde_json::to_string(&EndsClass::Cantor).unwrap(), "\"cantor\"");
        assert!(classify_ends(&Family::integers(), 3, 3).is_err());
    }
}
