//! Continuous maps between finite convergence spaces.

use super::ConvSpace;
use crate::error::{Error, Result};

/// A continuous map, i.e. a point function whose image of every converging
/// set converges to the image of the limit point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContMap {
    dom: ConvSpace,
    cod: ConvSpace,
    map: Vec<usize>,
}

/// Checks continuity of `map` without constructing a [`ContMap`].
///
/// Images of subsets are monotone in the subset, so checking the maximal
/// converging sets suffices.
pub(crate) fn is_continuous(dom: &ConvSpace, cod: &ConvSpace, map: &[usize]) -> bool {
    (0..dom.points()).all(|x| {
        dom.max_sets(x)
            .iter()
            .all(|&g| cod.converges(map[x], image_mask(map, g)))
    })
}

/// Bitmask image of `mask` under the point function `map`.
pub(crate) fn image_mask(map: &[usize], mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out |= 1u64 << map[b];
        m &= m - 1;
    }
    out
}

impl ContMap {
    /// Builds a continuous map, verifying totality and continuity.
    pub fn new(dom: ConvSpace, cod: ConvSpace, map: Vec<usize>) -> Result<ContMap> {
        if map.len() != dom.points() {
            return Err(Error::DimensionMismatch(format!(
                "map on {} points for a domain of {}",
                map.len(),
                dom.points()
            )));
        }
        if map.iter().any(|&y| y >= cod.points()) {
            return Err(Error::Invalid("map value outside codomain".into()));
        }
        if !is_continuous(&dom, &cod, &map) {
            return Err(Error::NotContinuous(format!("point function {map:?}")));
        }
        Ok(ContMap { dom, cod, map })
    }

    /// Internal constructor for maps already known to be continuous.
    pub(crate) fn unchecked(dom: ConvSpace, cod: ConvSpace, map: Vec<usize>) -> ContMap {
        debug_assert!(is_continuous(&dom, &cod, &map));
        ContMap { dom, cod, map }
    }

    pub fn identity(x: &ConvSpace) -> ContMap {
        ContMap::unchecked(x.clone(), x.clone(), (0..x.points()).collect())
    }

    pub fn dom(&self) -> &ConvSpace {
        &self.dom
    }

    pub fn cod(&self) -> &ConvSpace {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn point_fn(&self) -> &[usize] {
        &self.map
    }

    /// Image of a subset as a bitmask.
    pub fn image(&self, mask: u64) -> u64 {
        image_mask(&self.map, mask)
    }

    /// Post-composition: `self.then(g) = g ∘ self`.
    pub fn then(&self, g: &ContMap) -> Result<ContMap> {
        if self.cod != g.dom {
            return Err(Error::DimensionMismatch(
                "composition of non-composable maps".into(),
            ));
        }
        let map = self.map.iter().map(|&x| g.map[x]).collect();
        Ok(ContMap::unchecked(self.dom.clone(), g.cod.clone(), map))
    }

    /// Returns the continuous inverse if this map is an isomorphism.
    pub fn is_isomorphism(&self) -> Option<ContMap> {
        if self.dom.points() != self.cod.points() {
            return None;
        }
        let n = self.dom.points();
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            if inv[self.map[x]] != usize::MAX {
                return None;
            }
            inv[self.map[x]] = x;
        }
        if !is_continuous(&self.cod, &self.dom, &inv) {
            return None;
        }
        Some(ContMap::unchecked(self.cod.clone(), self.dom.clone(), inv))
    }
}

/// All continuous maps `dom → cod`, ordered by ascending function index
/// (point 0 is the least significant digit).
///
/// Fails if the candidate count `|cod|^|dom|` exceeds `2^20`.
pub fn hom_set(dom: &ConvSpace, cod: &ConvSpace) -> Result<Vec<ContMap>> {
    let candidates = enumerate_point_functions(dom.points(), cod.points())?;
    Ok(candidates
        .into_iter()
        .filter(|m| is_continuous(dom, cod, m))
        .map(|m| ContMap::unchecked(dom.clone(), cod.clone(), m))
        .collect())
}

/// All point functions `0..n_dom → 0..n_cod` in ascending index order.
pub(crate) fn enumerate_point_functions(
    n_dom: usize,
    n_cod: usize,
) -> Result<Vec<Vec<usize>>> {
    if n_dom == 0 {
        return Ok(vec![vec![]]);
    }
    if n_cod == 0 {
        return Ok(vec![]);
    }
    let total = (n_cod as u128).checked_pow(n_dom as u32);
    match total {
        Some(t) if t <= 1 << 20 => {}
        _ => {
            return Err(Error::BoundExceeded(format!(
                "{n_cod}^{n_dom} point functions"
            )))
        }
    }
    let total = total.unwrap() as usize;
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0usize; n_dom];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == n_dom {
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] < n_cod {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::AxiomMode;

    #[test]
    fn identity_and_composition() {
        let s = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let id = ContMap::identity(&s);
        assert_eq!(id.then(&id).unwrap(), id);
    }

    #[test]
    fn continuity_rejects_indiscrete_to_discrete_nonconstant() {
        let i = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let d = ConvSpace::discrete(2, AxiomMode::Limit);
        assert!(ContMap::new(i.clone(), d.clone(), vec![0, 1]).is_err());
        assert!(ContMap::new(i.clone(), d.clone(), vec![1, 1]).is_ok());
        // Every map out of a discrete space is continuous.
        assert!(ContMap::new(d.clone(), i, vec![1, 0]).is_ok());
    }

    #[test]
    fn hom_set_counts() {
        let d2 = ConvSpace::discrete(2, AxiomMode::Limit);
        let i2 = ConvSpace::indiscrete(2, AxiomMode::Limit);
        assert_eq!(hom_set(&d2, &d2).unwrap().len(), 4);
        assert_eq!(hom_set(&i2, &d2).unwrap().len(), 2);
        assert_eq!(hom_set(&i2, &i2).unwrap().len(), 4);
    }

    #[test]
    fn isomorphism_detection() {
        let d2 = ConvSpace::discrete(2, AxiomMode::Limit);
        let i2 = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let swap = ContMap::new(d2.clone(), d2.clone(), vec![1, 0]).unwrap();
        assert!(swap.is_isomorphism().is_some());
        // Continuous bijection whose inverse is not continuous.
        let to_ind = ContMap::new(d2, i2, vec![0, 1]).unwrap();
        assert!(to_ind.is_isomorphism().is_none());
    }

    #[test]
    fn empty_domain_hom_set() {
        let e = ConvSpace::discrete(0, AxiomMode::Limit);
        let d = ConvSpace::discrete(2, AxiomMode::Limit);
        assert_eq!(hom_set(&e, &d).unwrap().len(), 1);
        assert_eq!(hom_set(&d, &e).unwrap().len(), 0);
    }
}
