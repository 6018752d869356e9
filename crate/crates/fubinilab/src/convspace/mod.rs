//! Finite convergence spaces.
//!
//! A space is a finite carrier `0..n` together with, for each point `x`, a
//! down-closed family of nonempty subsets that "converge to" `x`, always
//! containing the singleton `{x}`.  In [`AxiomMode::Limit`] the family is
//! additionally closed under binary unions.
//!
//! Subsets of the carrier are bitmasks (`u64`), so carriers are capped at 64
//! points.  Because families are down-closed they are stored as antichains of
//! their maximal members; membership is a subset test against the maximal
//! sets.  JSON serialization expands families back to explicit subset lists.

mod enumerate;
mod map;
mod ops;

pub use enumerate::{enumerate_spaces, enumerate_spaces_bounded, DEFAULT_ENUM_BOUND};
pub(crate) use map::{image_mask, is_continuous as is_point_fn_continuous};
pub use map::{hom_set, ContMap};
pub use ops::{
    curry, embed_initial, eval_map, function_space, product, pullback, uncurry, FunctionSpace,
    Product,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Which closure axioms a convergence structure must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomMode {
    /// Down-closed, point filters, and closed under binary unions.
    Limit,
    /// Down-closed and point filters only.
    DownOnly,
}

/// Hard cap on carriers whose subsets are represented as `u64` bitmasks.
pub const MAX_POINTS: usize = 64;

/// A finite convergence space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvSpace {
    n: usize,
    mode: AxiomMode,
    /// Per point: the maximal converging subsets, as a sorted antichain.
    conv: Vec<Vec<u64>>,
}

/// Removes dominated masks and sorts, producing a canonical antichain.
pub(crate) fn canonical_antichain(masks: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &m in masks {
        if m == 0 {
            continue;
        }
        if masks.iter().any(|&g| g != m && m & !g == 0) {
            continue;
        }
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out.sort_unstable();
    out
}

impl ConvSpace {
    /// Builds a space from per-point generating sets.
    ///
    /// `gens[x]` lists converging subsets of `x`; the family is their
    /// down-closure.  Fails unless every point filter is present, all masks
    /// fit the carrier, and (in limit mode) the family is union-closed.
    pub fn new(n: usize, mode: AxiomMode, gens: Vec<Vec<u64>>) -> Result<ConvSpace> {
        if n > MAX_POINTS {
            return Err(Error::BoundExceeded(format!(
                "carrier of {n} points exceeds {MAX_POINTS}"
            )));
        }
        if gens.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} generator families for {n} points",
                gens.len()
            )));
        }
        let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut conv = Vec::with_capacity(n);
        for (x, g) in gens.iter().enumerate() {
            for &m in g {
                if m & !full != 0 {
                    return Err(Error::Invalid(format!("mask {m:#x} outside carrier")));
                }
            }
            let anti = canonical_antichain(g);
            if !anti.iter().any(|&m| m >> x & 1 == 1) {
                return Err(Error::AxiomViolation(format!(
                    "point filter {{{x}}} does not converge to {x}"
                )));
            }
            if mode == AxiomMode::Limit {
                // Union closure plus down closure forces a unique maximum.
                let union: u64 = anti.iter().fold(0, |a, &m| a | m);
                if anti.len() != 1 || anti[0] != union {
                    return Err(Error::AxiomViolation(format!(
                        "family at {x} is not union-closed"
                    )));
                }
            }
            conv.push(anti);
        }
        Ok(ConvSpace { n, mode, conv })
    }

    /// The discrete structure: only point filters converge.
    pub fn discrete(n: usize, mode: AxiomMode) -> ConvSpace {
        let gens = (0..n).map(|x| vec![1u64 << x]).collect();
        ConvSpace::new(n, mode, gens).expect("discrete structure is valid")
    }

    /// The indiscrete structure: every nonempty subset converges everywhere.
    pub fn indiscrete(n: usize, mode: AxiomMode) -> ConvSpace {
        let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
        let gens = (0..n).map(|_| vec![full]).collect();
        ConvSpace::new(n, mode, gens).expect("indiscrete structure is valid")
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> AxiomMode {
        self.mode
    }

    /// Maximal converging subsets of `x` (a sorted antichain).
    pub fn max_sets(&self, x: usize) -> &[u64] {
        &self.conv[x]
    }

    /// Does the nonempty subset `mask` converge to `x`?
    pub fn converges(&self, x: usize, mask: u64) -> bool {
        mask != 0 && self.conv[x].iter().any(|&g| mask & !g == 0)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| self.conv[x] == [1u64 << x])
    }

    /// The full converging family of `x`, expanded and sorted.
    pub fn family(&self, x: usize) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for &g in &self.conv[x] {
            // Standard sub-mask walk over all nonempty subsets of g.
            let mut s = g;
            loop {
                out.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & g;
            }
        }
        out.remove(&0);
        out.into_iter().collect()
    }

    /// Partition of the carrier by the "co-converging" relation: two points
    /// are linked when one lies in a set converging to the other.  Continuous
    /// maps into discrete spaces are exactly the maps constant on each block.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in 0..self.n {
            for &g in &self.conv[x] {
                for b in 0..self.n {
                    if g >> b & 1 == 1 {
                        let (rx, rb) = (find(&mut parent, x), find(&mut parent, b));
                        if rx != rb {
                            parent[rx.max(rb)] = rx.min(rb);
                        }
                    }
                }
            }
        }
        // Normalize ids to 0..k in order of first occurrence.
        let mut ids = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.n);
        for x in 0..self.n {
            let r = find(&mut parent, x);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            out.push(ids[r]);
        }
        out
    }

    /// JSON encoding with the converging families fully expanded.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "points": self.n,
            "conv": (0..self.n).map(|x| self.family(x)).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON encoding, validating down-closure and the axioms of
    /// the requested mode.
    pub fn from_json(v: &serde_json::Value, mode: AxiomMode) -> Result<ConvSpace> {
        let n = v
            .get("points")
            .and_then(|p| p.as_u64())
            .ok_or_else(|| Error::Invalid("missing \"points\"".into()))? as usize;
        let fam = v
            .get("conv")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Invalid("missing \"conv\"".into()))?;
        if fam.len() != n {
            return Err(Error::Invalid(format!(
                "expected {n} families, found {}",
                fam.len()
            )));
        }
        let mut gens = Vec::with_capacity(n);
        let mut families = Vec::with_capacity(n);
        for (x, f) in fam.iter().enumerate() {
            let masks: Vec<u64> = f
                .as_array()
                .ok_or_else(|| Error::Invalid(format!("family at {x} is not an array")))?
                .iter()
                .map(|m| {
                    m.as_u64()
                        .ok_or_else(|| Error::Invalid(format!("bad mask at point {x}")))
                })
                .collect::<Result<_>>()?;
            families.push(masks.iter().copied().collect::<BTreeSet<u64>>());
            gens.push(masks);
        }
        let space = ConvSpace::new(n, mode, gens)?;
        // Reject inputs that are not literally down-closed.
        for x in 0..n {
            let expanded: BTreeSet<u64> = space.family(x).into_iter().collect();
            if expanded != families[x] {
                return Err(Error::AxiomViolation(format!(
                    "family at {x} is not down-closed"
                )));
            }
        }
        Ok(space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_and_indiscrete() {
        let d = ConvSpace::discrete(3, AxiomMode::Limit);
        assert!(d.is_discrete());
        assert!(d.converges(1, 0b010));
        assert!(!d.converges(1, 0b011));
        let i = ConvSpace::indiscrete(3, AxiomMode::Limit);
        assert!(i.converges(0, 0b111));
        assert!(!i.converges(0, 0));
    }

    #[test]
    fn point_filter_required() {
        let bad = ConvSpace::new(2, AxiomMode::DownOnly, vec![vec![0b10], vec![0b10]]);
        assert!(matches!(bad, Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn limit_mode_requires_union_closure() {
        // {{0},{1}} at point 0 is down-closed but not union-closed.
        let gens = vec![vec![0b01, 0b10], vec![0b10]];
        assert!(ConvSpace::new(2, AxiomMode::Limit, gens.clone()).is_err());
        assert!(ConvSpace::new(2, AxiomMode::DownOnly, gens).is_ok());
    }

    #[test]
    fn family_expansion_and_json_round_trip() {
        let s = ConvSpace::indiscrete(2, AxiomMode::Limit);
        assert_eq!(s.family(0), vec![0b01, 0b10, 0b11]);
        let j = s.to_json();
        let back = ConvSpace::from_json(&j, AxiomMode::Limit).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn json_rejects_non_down_closed() {
        let j = serde_json::json!({"points": 2, "conv": [[1, 3], [2, 3]]});
        // {0,1} converges but {1} (mask 2) is missing from the family at 0.
        assert!(ConvSpace::from_json(&j, AxiomMode::DownOnly).is_err());
        let ok = serde_json::json!({"points": 2, "conv": [[1, 2, 3], [1, 2, 3]]});
        assert!(ConvSpace::from_json(&ok, AxiomMode::DownOnly).is_ok());
    }

    #[test]
    fn components_of_mixed_space() {
        // Points 0,1 linked through a converging pair; 2 isolated.
        let gens = vec![vec![0b011], vec![0b011], vec![0b100]];
        let s = ConvSpace::new(3, AxiomMode::Limit, gens).unwrap();
        assert_eq!(s.components(), vec![0, 0, 1]);
        assert_eq!(ConvSpace::discrete(3, AxiomMode::Limit).components(), vec![0, 1, 2]);
    }

    #[test]
    fn empty_space() {
        let e = ConvSpace::discrete(0, AxiomMode::Limit);
        assert_eq!(e.points(), 0);
        assert_eq!(e.to_json(), serde_json::json!({"points": 0, "conv": []}));
    }
}
