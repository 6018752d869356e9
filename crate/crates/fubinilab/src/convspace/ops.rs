//! Products, function spaces, initial embeddings, and pullbacks.

use super::map::{enumerate_point_functions, image_mask, is_continuous};
use super::{canonical_antichain, ConvSpace, ContMap};
#[cfg(test)]
use super::AxiomMode;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Largest carrier for which a function-space structure into a non-discrete
/// codomain is computed by subset enumeration.
const SUBSET_ENUM_CAP: usize = 16;

/// A binary product together with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub space: ConvSpace,
    pub proj1: ContMap,
    pub proj2: ContMap,
    n1: usize,
    n2: usize,
}

impl Product {
    /// Carrier sizes of the two factors.
    pub fn factor_sizes(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    /// Index of the pair `(a, b)`.
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.n2 + b
    }

    /// Inverse of [`Product::pair`].
    pub fn unpair(&self, i: usize) -> (usize, usize) {
        (i / self.n2, i % self.n2)
    }
}

/// The product space: a subset converges to `(a, b)` exactly when both of
/// its projections converge.
pub fn product(x: &ConvSpace, y: &ConvSpace) -> Result<Product> {
    if x.mode() != y.mode() {
        return Err(Error::Invalid("mixed axiom modes in product".into()));
    }
    let (n1, n2) = (x.points(), y.points());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= super::MAX_POINTS)
        .ok_or_else(|| Error::BoundExceeded(format!("product carrier {n1}*{n2}")))?;
    let mut gens = Vec::with_capacity(n);
    for a in 0..n1 {
        for b in 0..n2 {
            let mut fam = Vec::new();
            for &ga in x.max_sets(a) {
                for &gb in y.max_sets(b) {
                    let mut m = 0u64;
                    for i in 0..n1 {
                        if ga >> i & 1 == 1 {
                            for j in 0..n2 {
                                if gb >> j & 1 == 1 {
                                    m |= 1u64 << (i * n2 + j);
                                }
                            }
                        }
                    }
                    fam.push(m);
                }
            }
            gens.push(fam);
        }
    }
    let space = ConvSpace::new(n, x.mode(), gens)?;
    let p1: Vec<usize> = (0..n).map(|i| i / n2).collect();
    let p2: Vec<usize> = (0..n).map(|i| i % n2).collect();
    let proj1 = ContMap::new(space.clone(), x.clone(), p1)?;
    let proj2 = ContMap::new(space.clone(), y.clone(), p2)?;
    Ok(Product { space, proj1, proj2, n1, n2 })
}

/// A function space: the carrier of all continuous maps `dom → cod` under
/// the structure of continuous convergence.
#[derive(Debug, Clone)]
pub struct FunctionSpace {
    pub space: ConvSpace,
    pub dom: ConvSpace,
    pub cod: ConvSpace,
    /// Point functions of the carrier, in ascending function-index order.
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FunctionSpace {
    /// Carrier index of a point function, if it is continuous.
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }
}

/// Builds the function space `[dom, cod]` with continuous convergence:
/// a set `A` of maps converges to `f` exactly when `A(B)` converges to
/// `f(x)` for every `x` and every `B` converging to `x`.
pub fn function_space(dom: &ConvSpace, cod: &ConvSpace) -> Result<FunctionSpace> {
    if dom.mode() != cod.mode() {
        return Err(Error::Invalid("mixed axiom modes in function space".into()));
    }
    let maps: Vec<Vec<usize>> = enumerate_point_functions(dom.points(), cod.points())?
        .into_iter()
        .filter(|m| is_continuous(dom, cod, m))
        .collect();
    let n = maps.len();
    if n > super::MAX_POINTS {
        return Err(Error::BoundExceeded(format!("function-space carrier {n}")));
    }
    let gens = if cod.is_discrete() {
        // Discrete codomain: A converges to f exactly when every member of A
        // is constant with value f(x) on every set converging to x, so each
        // family has a unique maximal member computed pointwise.
        let mut gens = Vec::with_capacity(n);
        for f in &maps {
            let mut m = 0u64;
            'cand: for (ai, a) in maps.iter().enumerate() {
                for x in 0..dom.points() {
                    for &g in dom.max_sets(x) {
                        if image_mask(a, g) != 1u64 << f[x] {
                            continue 'cand;
                        }
                    }
                }
                m |= 1u64 << ai;
            }
            gens.push(vec![m]);
        }
        gens
    } else {
        if n > SUBSET_ENUM_CAP {
            return Err(Error::BoundExceeded(format!(
                "function-space structure over {n} maps into a non-discrete codomain"
            )));
        }
        let mut gens = Vec::with_capacity(n);
        for f in &maps {
            let mut valid = Vec::new();
            'subset: for mask in 1u64..(1u64 << n) {
                for x in 0..dom.points() {
                    for &g in dom.max_sets(x) {
                        let mut img = 0u64;
                        let mut mm = mask;
                        while mm != 0 {
                            let ai = mm.trailing_zeros() as usize;
                            img |= image_mask(&maps[ai], g);
                            mm &= mm - 1;
                        }
                        if !cod.converges(f[x], img) {
                            continue 'subset;
                        }
                    }
                }
                valid.push(mask);
            }
            gens.push(canonical_antichain(&valid));
        }
        gens
    };
    let space = ConvSpace::new(n, dom.mode(), gens)?;
    let index = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(FunctionSpace { space, dom: dom.clone(), cod: cod.clone(), maps, index })
}

/// The evaluation map `dom × [dom, cod] → cod`, `(x, f) ↦ f(x)`.
pub fn eval_map(fs: &FunctionSpace) -> Result<(Product, ContMap)> {
    let prod = product(&fs.dom, &fs.space)?;
    let mut map = Vec::with_capacity(prod.space.points());
    for i in 0..prod.space.points() {
        let (x, f) = prod.unpair(i);
        map.push(fs.maps[f][x]);
    }
    let ev = ContMap::new(prod.space.clone(), fs.cod.clone(), map)?;
    Ok((prod, ev))
}

/// Currying: turns `f : X × Y → Z` into `X → [Y, Z]`.
///
/// `prod` must be the product of `X` and `Y` and `fs` the function space
/// `[Y, Z]`.
pub fn curry(prod: &Product, f: &ContMap, fs: &FunctionSpace) -> Result<ContMap> {
    if f.dom() != &prod.space || f.cod() != &fs.cod {
        return Err(Error::DimensionMismatch("curry arguments disagree".into()));
    }
    let nx = prod.proj1.cod().points();
    let ny = prod.proj2.cod().points();
    let mut map = Vec::with_capacity(nx);
    for x in 0..nx {
        let slice: Vec<usize> = (0..ny).map(|y| f.apply(prod.pair(x, y))).collect();
        let idx = fs.index_of(&slice).ok_or_else(|| {
            Error::NotContinuous(format!("partial application at {x} is not in the carrier"))
        })?;
        map.push(idx);
    }
    ContMap::new(prod.proj1.cod().clone(), fs.space.clone(), map)
}

/// Uncurrying: turns `g : X → [Y, Z]` into `X × Y → Z`.
pub fn uncurry(prod: &Product, g: &ContMap, fs: &FunctionSpace) -> Result<ContMap> {
    if g.cod() != &fs.space || g.dom() != prod.proj1.cod() || prod.proj2.cod() != &fs.dom {
        return Err(Error::DimensionMismatch("uncurry arguments disagree".into()));
    }
    let mut map = Vec::with_capacity(prod.space.points());
    for i in 0..prod.space.points() {
        let (x, y) = prod.unpair(i);
        map.push(fs.maps[g.apply(x)][y]);
    }
    ContMap::new(prod.space.clone(), fs.cod.clone(), map)
}

/// The subspace on the points of `mask` with the initial structure: a subset
/// converges exactly when its image in the ambient space converges.
///
/// Returns the subspace, the inclusion, and the (ascending) list of ambient
/// points selected.
pub fn embed_initial(x: &ConvSpace, mask: u64) -> Result<(ConvSpace, ContMap, Vec<usize>)> {
    let full: u64 = if x.points() >= 64 { u64::MAX } else { (1u64 << x.points()) - 1 };
    if mask & !full != 0 {
        return Err(Error::Invalid("subspace mask outside carrier".into()));
    }
    let points: Vec<usize> = (0..x.points()).filter(|&p| mask >> p & 1 == 1).collect();
    let mut ambient_to_sub = vec![usize::MAX; x.points()];
    for (i, &p) in points.iter().enumerate() {
        ambient_to_sub[p] = i;
    }
    let restrict = |m: u64| -> u64 {
        let mut out = 0u64;
        for (i, &p) in points.iter().enumerate() {
            if m >> p & 1 == 1 {
                out |= 1u64 << i;
            }
        }
        out
    };
    let gens = points
        .iter()
        .map(|&p| {
            x.max_sets(p)
                .iter()
                .map(|&g| restrict(g))
                .filter(|&g| g != 0)
                .collect()
        })
        .collect();
    let sub = ConvSpace::new(points.len(), x.mode(), gens)?;
    let incl = ContMap::new(sub.clone(), x.clone(), points.clone())?;
    Ok((sub, incl, points))
}

/// The pullback of `f : X → Z ← Y : g`, as the initial subspace of `X × Y`
/// on the pairs where `f` and `g` agree.
pub fn pullback(f: &ContMap, g: &ContMap) -> Result<(ConvSpace, ContMap, ContMap)> {
    if f.cod() != g.cod() {
        return Err(Error::DimensionMismatch("pullback over different targets".into()));
    }
    let prod = product(f.dom(), g.dom())?;
    let mut mask = 0u64;
    for i in 0..prod.space.points() {
        let (a, b) = prod.unpair(i);
        if f.apply(a) == g.apply(b) {
            mask |= 1u64 << i;
        }
    }
    let (sub, incl, _) = embed_initial(&prod.space, mask)?;
    let to_x = incl.then(&prod.proj1)?;
    let to_y = incl.then(&prod.proj2)?;
    Ok((sub, to_x, to_y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::hom_set;

    fn d2() -> ConvSpace {
        ConvSpace::discrete(2, AxiomMode::Limit)
    }

    fn i2() -> ConvSpace {
        ConvSpace::indiscrete(2, AxiomMode::Limit)
    }

    #[test]
    fn product_of_discrete_is_discrete() {
        let p = product(&d2(), &d2()).unwrap();
        assert!(p.space.is_discrete());
        assert_eq!(p.space.points(), 4);
    }

    #[test]
    fn product_converges_iff_projections_do() {
        let p = product(&i2(), &d2()).unwrap();
        // {(0,0),(1,0)} projects to {0,1} (converges in i2) and {0} (discrete).
        let m = 1u64 << p.pair(0, 0) | 1u64 << p.pair(1, 0);
        assert!(p.space.converges(p.pair(0, 0), m));
        // {(0,0),(0,1)} projects to {0,1} in the discrete factor: no.
        let m2 = 1u64 << p.pair(0, 0) | 1u64 << p.pair(0, 1);
        assert!(!p.space.converges(p.pair(0, 0), m2));
    }

    #[test]
    fn function_space_into_discrete() {
        // [i2, d2] has exactly the two constant maps and is discrete.
        let fs = function_space(&i2(), &d2()).unwrap();
        assert_eq!(fs.maps.len(), 2);
        assert!(fs.space.is_discrete());
        // [d2, d2] has all four maps and is discrete.
        let fs2 = function_space(&d2(), &d2()).unwrap();
        assert_eq!(fs2.maps.len(), 4);
        assert!(fs2.space.is_discrete());
    }

    #[test]
    fn function_space_into_indiscrete_is_indiscrete() {
        let fs = function_space(&d2(), &i2()).unwrap();
        assert_eq!(fs.maps.len(), 4);
        assert_eq!(fs.space, ConvSpace::indiscrete(4, AxiomMode::Limit));
    }

    #[test]
    fn empty_domain_function_space_is_a_point() {
        let e = ConvSpace::discrete(0, AxiomMode::Limit);
        let fs = function_space(&e, &d2()).unwrap();
        assert_eq!(fs.space.points(), 1);
    }

    #[test]
    fn curry_uncurry_is_a_bijection() {
        for x in [d2(), i2()] {
            for y in [d2(), i2()] {
                for z in [d2(), i2()] {
                    let prod = product(&x, &y).unwrap();
                    let fs = function_space(&y, &z).unwrap();
                    let homs = hom_set(&prod.space, &z).unwrap();
                    let curried: Vec<ContMap> = homs
                        .iter()
                        .map(|f| curry(&prod, f, &fs).unwrap())
                        .collect();
                    // Injective and lands back on the original under uncurry.
                    for (f, c) in homs.iter().zip(&curried) {
                        assert_eq!(&uncurry(&prod, c, &fs).unwrap(), f);
                    }
                    // Surjective onto hom(X, [Y,Z]).
                    assert_eq!(curried.len(), hom_set(&x, &fs.space).unwrap().len());
                }
            }
        }
    }

    #[test]
    fn eval_triangle_identity() {
        let (x, y, z) = (i2(), d2(), i2());
        let prod = product(&x, &y).unwrap();
        let fs = function_space(&y, &z).unwrap();
        let (ev_prod, ev) = eval_map(&fs).unwrap();
        for f in hom_set(&prod.space, &z).unwrap() {
            let c = curry(&prod, &f, &fs).unwrap();
            for i in 0..prod.space.points() {
                let (a, b) = prod.unpair(i);
                let v = ev.apply(ev_prod.pair(b, c.apply(a)));
                assert_eq!(v, f.apply(i));
            }
        }
    }

    #[test]
    fn initial_embedding_is_initial() {
        let amb = i2();
        let (sub, incl, pts) = embed_initial(&amb, 0b01).unwrap();
        assert_eq!(sub.points(), 1);
        assert_eq!(pts, vec![0]);
        assert_eq!(incl.apply(0), 0);
        // A map into the subspace is continuous iff its composite with the
        // inclusion is: exhaustive over the one-point case and a 2-point one.
        let (sub2, incl2, _) = embed_initial(&amb, 0b11).unwrap();
        assert_eq!(sub2, amb);
        assert_eq!(incl2, ContMap::identity(&amb));
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let x = d2();
        let id = ContMap::identity(&x);
        let (p, a, b) = pullback(&id, &id).unwrap();
        assert_eq!(p.points(), 2);
        assert_eq!(a, b);
    }
}
