//! The double-dualization monad `H E = E**` with evaluation unit and the
//! multiplication derived from the dualization adjunction.

use crate::convvect::{dual, dual_map, ConvVect, HomVect, Limits, LinMap};
use crate::error::{Error, Result};

/// `H E = E**` together with the intermediate dual.
#[derive(Debug, Clone)]
pub struct HObject {
    pub e: ConvVect,
    /// `E*`.
    pub d1: HomVect,
    /// `E**`.
    pub d2: HomVect,
}

impl HObject {
    pub fn new(e: &ConvVect, limits: &Limits) -> Result<HObject> {
        let d1 = dual(e, limits)?;
        let d2 = dual(&d1.vect, limits)?;
        Ok(HObject { e: e.clone(), d1, d2 })
    }

    /// The double dual as a convergence vector space.
    pub fn he(&self) -> &ConvVect {
        &self.d2.vect
    }
}

/// The unit `∂_E : E → E**`, `e ↦ λφ. φ(e)`.
pub fn partial_map(h: &HObject) -> Result<LinMap> {
    let map: Vec<usize> = (0..h.e.space.points())
        .map(|u| {
            let values: Vec<usize> =
                (0..h.d1.points()).map(|phi| h.d1.eval(phi, u)).collect();
            h.d2.index_of(&values).ok_or_else(|| {
                Error::MismatchedConstructions(format!(
                    "evaluation functional at {u} is not carried by the double dual"
                ))
            })
        })
        .collect::<Result<_>>()?;
    LinMap::new(h.e.clone(), h.he().clone(), map)
}

/// The functorial action `H f = f** : E** → F**`.
pub fn h_map(src: &HObject, dst: &HObject, f: &LinMap) -> Result<LinMap> {
    if f.dom() != &src.e || f.cod() != &dst.e {
        return Err(Error::DimensionMismatch("double dual of a mismatched map".into()));
    }
    let fd = dual_map(f, &src.d1, &dst.d1)?;
    dual_map(&fd, &dst.d2, &src.d2)
}

/// The multiplication `γ_E : E**** → E**`, derived from the dualization
/// adjunction as the dual of `∂_{E*}`.
pub fn gamma(h: &HObject, limits: &Limits) -> Result<LinMap> {
    let hd = HObject::new(&h.d1.vect, limits)?; // over E*: d1 = E**, d2 = E***
    let partial_dual = partial_map(&hd)?; // ∂_{E*} : E* → E***
    let d4 = dual(&hd.d2.vect, limits)?; // E****
    dual_map(&partial_dual, &hd.d1, &d4)
}

/// Outcome of the reflexivity test for `∂_E`.
#[derive(Debug, Clone)]
pub enum ReflexivityOutcome {
    /// `∂_E` is an isomorphism; the inverse is returned.
    Reflexive(LinMap),
    /// Two carrier points with the same image under every functional.
    NotInjective(usize, usize),
    /// A double-dual point not hit by any evaluation functional.
    NotSurjective(usize),
    /// `∂_E` is bijective but its inverse is not continuous.
    InverseDiscontinuous,
}

impl ReflexivityOutcome {
    pub fn is_reflexive(&self) -> bool {
        matches!(self, ReflexivityOutcome::Reflexive(_))
    }
}

/// Decides whether `E` is reflexive, with an explicit witness either way.
pub fn is_reflexive(e: &ConvVect, limits: &Limits) -> Result<ReflexivityOutcome> {
    let h = HObject::new(e, limits)?;
    let p = partial_map(&h)?;
    let n = e.space.points();
    for u in 0..n {
        for v in (u + 1)..n {
            if p.apply(u) == p.apply(v) {
                return Ok(ReflexivityOutcome::NotInjective(u, v));
            }
        }
    }
    if let Some(miss) = (0..h.he().space.points()).find(|&w| !p.point_fn().contains(&w)) {
        return Ok(ReflexivityOutcome::NotSurjective(miss));
    }
    match p.is_isomorphism() {
        Some(inv) => Ok(ReflexivityOutcome::Reflexive(inv)),
        None => Ok(ReflexivityOutcome::InverseDiscontinuous),
    }
}

/// Exhaustive monad-law check for `H` at an object.
pub fn check_h_monad_laws(e: &ConvVect, limits: &Limits) -> Result<()> {
    let h = HObject::new(e, limits)?;
    let he = HObject::new(h.he(), limits)?;
    let g = gamma(&h, limits)?;
    let fail = |what: String| Err(Error::MismatchedConstructions(what));
    // The derived multiplication must act on the literal double dual of HE.
    if g.dom() != he.he() || g.cod() != h.he() {
        return fail("multiplication endpoints disagree with the double dual".into());
    }
    // Right unit: γ ∘ ∂_{H E} = id.
    let p_he = partial_map(&he)?;
    if p_he.then(&g)? != LinMap::identity(h.he()) {
        return fail("right unit law fails".into());
    }
    // Left unit: γ ∘ H(∂_E) = id.
    let p_e = partial_map(&h)?;
    let hp = h_map(&h, &he, &p_e)?;
    if hp.then(&g)? != LinMap::identity(h.he()) {
        return fail("left unit law fails".into());
    }
    // Associativity: γ ∘ H γ = γ ∘ γ_{H E} on H³E.
    let hhe = HObject::new(he.he(), limits)?;
    let hg = h_map(&hhe, &he, &g)?;
    let g_he = gamma(&he, limits)?;
    if hg.then(&g)? != g_he.then(&g)? {
        return fail("associativity fails".into());
    }
    Ok(())
}

/// Naturality of `∂` at a particular morphism: `H f ∘ ∂ = ∂ ∘ f`.
pub fn check_partial_naturality(f: &LinMap, limits: &Limits) -> Result<()> {
    let src = HObject::new(f.dom(), limits)?;
    let dst = HObject::new(f.cod(), limits)?;
    let lhs = partial_map(&src)?.then(&h_map(&src, &dst, f)?)?;
    let rhs = f.then(&partial_map(&dst)?)?;
    if lhs != rhs {
        return Err(Error::MismatchedConstructions("unit naturality fails".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::{AxiomMode, ConvSpace};
    use crate::convvect::{free, scalar_object};
    use crate::scalars::Field;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn scalars_are_reflexive() {
        let r = scalar_object(&f2(), AxiomMode::Limit);
        assert!(is_reflexive(&r, &Limits::default()).unwrap().is_reflexive());
        let r3 = scalar_object(&Field::new(3).unwrap(), AxiomMode::Limit);
        assert!(is_reflexive(&r3, &Limits::default()).unwrap().is_reflexive());
    }

    #[test]
    fn indiscrete_free_space_is_not_reflexive() {
        // Functionals into the discrete scalars are constant on the connected
        // carrier, so the dual collapses and evaluation cannot be injective.
        let x = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let fx = free(&x, &f2(), &Limits::default()).unwrap();
        match is_reflexive(&fx.vect, &Limits::default()).unwrap() {
            ReflexivityOutcome::NotInjective(_, _) => {}
            other => panic!("expected an injectivity witness, got {other:?}"),
        }
    }

    #[test]
    fn monad_laws_on_small_objects() {
        let lim = Limits::default();
        let r = scalar_object(&f2(), AxiomMode::Limit);
        check_h_monad_laws(&r, &lim).unwrap();
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let fx = free(&x, &f2(), &lim).unwrap();
        check_h_monad_laws(&fx.vect, &lim).unwrap();
        let xi = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let fxi = free(&xi, &f2(), &lim).unwrap();
        check_h_monad_laws(&fxi.vect, &lim).unwrap();
        check_h_monad_laws(&scalar_object(&Field::new(3).unwrap(), AxiomMode::Limit), &lim)
            .unwrap();
    }

    #[test]
    fn partial_naturality_on_generated_maps() {
        let lim = Limits::default();
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let fx = free(&x, &f2(), &lim).unwrap();
        let r = scalar_object(&f2(), AxiomMode::Limit);
        for f in crate::convvect::lin_hom_set(&fx.vect, &r).unwrap() {
            check_partial_naturality(&f, &lim).unwrap();
        }
    }

    #[test]
    fn h_is_functorial() {
        let lim = Limits::default();
        let r = scalar_object(&f2(), AxiomMode::Limit);
        let h = HObject::new(&r, &lim).unwrap();
        let id = h_map(&h, &h, &LinMap::identity(&r)).unwrap();
        assert_eq!(id, LinMap::identity(h.he()));
    }
}
