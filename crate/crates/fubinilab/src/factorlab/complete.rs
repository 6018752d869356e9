//! The inverted-morphism class of the double-dualization monad, the
//! orthogonal (complete) objects, the iterated completion with its unit,
//! the comparison monad morphism into double dualization, and the reflected
//! tensor on complete objects.

use crate::convvect::{
    internal_hom, lin_hom_set, tensor, tensor_swap, tensor_unit_iso, ConvVect, Limits,
    LinMap,
};
use crate::error::{Error, Result};
use crate::factorlab::ortho::{epi_strongmono_factorize, is_pointwise_epi};
use crate::monadlab::cat::{Component, Functor, MonadInstance, MonadMorphism, Mor, Obj};
use crate::monadlab::ddual::{h_map, partial_map, HObject};
use std::rc::Rc;

/// All linear maps between universe objects that double dualization sends
/// to isomorphisms.
pub fn sigma_inverted(universe: &[ConvVect], limits: &Limits) -> Result<Vec<LinMap>> {
    let mut out = Vec::new();
    for e in universe {
        let he = HObject::new(e, limits)?;
        for f in universe {
            let hf = HObject::new(f, limits)?;
            for h in lin_hom_set(e, f)? {
                if h_map(&he, &hf, &h)?.is_isomorphism().is_some() {
                    out.push(h);
                }
            }
        }
    }
    Ok(out)
}

/// Whether pre-composition with every member of `sigma` is an isomorphism
/// of hom-objects into `e`.
pub fn is_complete(e: &ConvVect, sigma: &[LinMap], limits: &Limits) -> Result<bool> {
    for h in sigma {
        let hom_b = internal_hom(h.cod(), e, limits)?;
        let hom_a = internal_hom(h.dom(), e, limits)?;
        let table: Vec<usize> = (0..hom_b.points())
            .map(|g| {
                let values: Vec<usize> =
                    h.point_fn().iter().map(|&y| hom_b.eval(g, y)).collect();
                hom_a
                    .index_of(&values)
                    .ok_or_else(|| Error::Invalid("pre-composite is not carried".into()))
            })
            .collect::<Result<_>>()?;
        let pre = LinMap::new(hom_b.vect.clone(), hom_a.vect.clone(), table)?;
        if pre.is_isomorphism().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reflects `e` into the objects orthogonal to `sigma` by repeatedly
/// factoring the double-dual unit and passing to the surjective part.
/// Returns the complete object with the composite unit, which is checked
/// to be inverted by double dualization.
pub fn completion(
    e: &ConvVect,
    sigma: &[LinMap],
    limits: &Limits,
) -> Result<(ConvVect, LinMap)> {
    let mut cur = e.clone();
    let mut unit = LinMap::identity(e);
    let mut rounds = 0usize;
    while !is_complete(&cur, sigma, limits)? {
        if rounds >= limits.iteration_budget {
            return Err(Error::IterationBudgetExhausted(limits.iteration_budget));
        }
        rounds += 1;
        let del = partial_map(&HObject::new(&cur, limits)?)?;
        let pair = epi_strongmono_factorize(&del, limits)?;
        unit = unit.then(&pair.epi_part)?;
        cur = pair.epi_part.cod().clone();
    }
    if rounds > 0 {
        let h_unit = h_map(&HObject::new(e, limits)?, &HObject::new(&cur, limits)?, &unit)?;
        if h_unit.is_isomorphism().is_none() {
            return Err(Error::MismatchedConstructions(
                "completion unit is not inverted by double dualization".into(),
            ));
        }
    }
    Ok((cur, unit))
}

/// The unique factorization of `f` through a surjective map `rho` with the
/// same domain: fails if `f` does not respect the fibers of `rho`.
pub fn lift_along(rho: &LinMap, f: &LinMap) -> Result<LinMap> {
    if rho.dom() != f.dom() {
        return Err(Error::DimensionMismatch("lift of a mismatched map".into()));
    }
    if !is_pointwise_epi(rho) {
        return Err(Error::Invalid("lift along a non-surjective map".into()));
    }
    let n = rho.cod().space.points();
    let mut table = vec![usize::MAX; n];
    for (x, &k) in rho.point_fn().iter().enumerate() {
        let v = f.point_fn()[x];
        if table[k] == usize::MAX {
            table[k] = v;
        } else if table[k] != v {
            return Err(Error::MismatchedConstructions(
                "map does not factor through the quotient".into(),
            ));
        }
    }
    LinMap::new(rho.cod().clone(), f.cod().clone(), table)
}

fn expect_vect(o: &Obj) -> Result<&ConvVect> {
    match o {
        Obj::Vect(e) => Ok(e),
        _ => Err(Error::Invalid("expected a vector space object".into())),
    }
}

/// The completion as an idempotent monad over the given universe of vector
/// spaces, with `sigma` the morphism class it must invert.
pub fn completion_monad(
    universe: &[ConvVect],
    sigma: &[LinMap],
    limits: &Limits,
) -> MonadInstance {
    let sigma: Rc<Vec<LinMap>> = Rc::new(sigma.to_vec());
    let functor = {
        let (sigma, limits) = (sigma.clone(), limits.clone());
        Functor {
            on_obj: {
                let (sigma, limits) = (sigma.clone(), limits.clone());
                Rc::new(move |o: &Obj| -> Result<Obj> {
                    Ok(Obj::Vect(completion(expect_vect(o)?, &sigma, &limits)?.0))
                })
            },
            on_mor: Rc::new(move |m: &Mor| -> Result<Mor> {
                let f = LinMap::new(
                    expect_vect(m.dom())?.clone(),
                    expect_vect(m.cod())?.clone(),
                    m.table().to_vec(),
                )?;
                let (_, rho_dom) = completion(f.dom(), &sigma, &limits)?;
                let (_, rho_cod) = completion(f.cod(), &sigma, &limits)?;
                Ok(Mor::lin(lift_along(&rho_dom, &f.then(&rho_cod)?)?))
            }),
        }
    };
    let unit = {
        let (sigma, limits) = (sigma.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            Ok(Mor::lin(completion(expect_vect(o)?, &sigma, &limits)?.1))
        }) as Component
    };
    // Completion of a complete object is the identity, so the
    // multiplication at any object is carried by the identity.
    let mult = {
        let (sigma, limits) = (sigma.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let k = completion(expect_vect(o)?, &sigma, &limits)?.0;
            Ok(Mor::identity(&Obj::Vect(k)))
        }) as Component
    };
    MonadInstance {
        universe: universe.iter().cloned().map(Obj::Vect).collect(),
        functor,
        unit,
        mult,
    }
}

/// The comparison from the completion monad to double dualization: the
/// component at `E` sends the class of `e` to the evaluation functional of
/// `e`, so that it closes the triangle with the completion unit and the
/// double-dual unit.
pub fn completion_monad_morphism(
    universe: &[ConvVect],
    sigma: &[LinMap],
    limits: &Limits,
) -> Result<MonadMorphism> {
    let source = completion_monad(universe, sigma, limits);
    let target = crate::monadlab::double_dualization_monad(universe, limits);
    let component = {
        let sigma: Rc<Vec<LinMap>> = Rc::new(sigma.to_vec());
        let limits = limits.clone();
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let e = expect_vect(o)?;
            let (_, rho) = completion(e, &sigma, &limits)?;
            let del = partial_map(&HObject::new(e, &limits)?)?;
            Ok(Mor::lin(lift_along(&rho, &del)?))
        }) as Component
    };
    Ok(MonadMorphism { source, target, component })
}

/// Exact verification that the dual of the double-dual unit of a free
/// space retracts the double-dual unit of the dual: the composite
/// `∂*_{FX} ∘ ∂_{(FX)*}` is the identity on `(FX)*`.
pub fn reflexivity_retraction_check(
    x: &crate::convspace::ConvSpace,
    field: &crate::scalars::Field,
    limits: &Limits,
) -> Result<bool> {
    let fx = crate::convvect::free(x, field, limits)?;
    let h1 = HObject::new(&fx.vect, limits)?;
    let h2 = HObject::new(&h1.d1.vect, limits)?;
    let del_dual = partial_map(&h2)?;
    let del_fx = partial_map(&h1)?;
    let retraction = crate::convvect::dual_map(&del_fx, &h1.d1, &h2.d2)?;
    Ok(del_dual.then(&retraction)? == LinMap::identity(&h1.d1.vect))
}

/// The reflected tensor of two complete objects: complete the plain tensor.
pub fn reflected_tensor(
    c1: &ConvVect,
    c2: &ConvVect,
    sigma: &[LinMap],
    limits: &Limits,
) -> Result<ConvVect> {
    for c in [c1, c2] {
        if !is_complete(c, sigma, limits)? {
            return Err(Error::Invalid("reflected tensor of an incomplete object".into()));
        }
    }
    let t = tensor(c1, c2, limits)?;
    Ok(completion(&t.vect, sigma, limits)?.0)
}

/// The symmetry isomorphism of the reflected tensor, obtained by lifting
/// the swap of the plain tensors through the completion units.
pub fn reflected_symmetry_iso(
    c1: &ConvVect,
    c2: &ConvVect,
    sigma: &[LinMap],
    limits: &Limits,
) -> Result<LinMap> {
    let t12 = tensor(c1, c2, limits)?;
    let t21 = tensor(c2, c1, limits)?;
    let swap = tensor_swap(&t12, &t21)?;
    let (_, rho12) = completion(&t12.vect, sigma, limits)?;
    let (_, rho21) = completion(&t21.vect, sigma, limits)?;
    let iso = lift_along(&rho12, &swap.then(&rho21)?)?;
    if iso.is_isomorphism().is_none() {
        return Err(Error::MismatchedConstructions(
            "reflected swap is not an isomorphism".into(),
        ));
    }
    Ok(iso)
}

/// The unit isomorphism of the reflected tensor at a complete object:
/// `K(R ⊗ C) ≅ C`, lifted from the plain unit law through the completion.
pub fn reflected_unit_iso(c: &ConvVect, sigma: &[LinMap], limits: &Limits) -> Result<LinMap> {
    let r = crate::convvect::scalar_object(&c.field, c.mode());
    let t = tensor(&r, c, limits)?;
    let (fwd, _) = tensor_unit_iso(&t)?;
    let (_, rho) = completion(&t.vect, sigma, limits)?;
    let iso = lift_along(&rho, &fwd)?;
    if iso.is_isomorphism().is_none() {
        return Err(Error::MismatchedConstructions(
            "reflected unit law is not an isomorphism".into(),
        ));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::{AxiomMode, ConvSpace};
    use crate::convvect::{free, scalar_object};
    use crate::monadlab::is_reflexive;
    use crate::scalars::Field;

    fn universe(field: &Field, limits: &Limits) -> Vec<ConvVect> {
        let mode = AxiomMode::Limit;
        vec![
            scalar_object(field, mode),
            free(&ConvSpace::discrete(2, mode), field, limits).unwrap().vect,
            free(&ConvSpace::indiscrete(2, mode), field, limits).unwrap().vect,
        ]
    }

    #[test]
    fn identities_are_inverted() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let uni = universe(&field, &limits);
        let sigma = sigma_inverted(&uni, &limits).unwrap();
        for e in &uni {
            assert!(sigma.contains(&LinMap::identity(e)));
        }
    }

    #[test]
    fn double_dual_unit_of_free_space_is_inverted_when_functions_are_reflexive() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        for x in [
            ConvSpace::discrete(1, AxiomMode::Limit),
            ConvSpace::discrete(2, AxiomMode::Limit),
            ConvSpace::indiscrete(2, AxiomMode::Limit),
        ] {
            let fx = free(&x, &field, &limits).unwrap();
            let cot = crate::convvect::scalar_functions(&x, &field, &limits).unwrap();
            if !is_reflexive(cot.vect(), &limits).unwrap().is_reflexive() {
                continue;
            }
            let he = HObject::new(&fx.vect, &limits).unwrap();
            let del = partial_map(&he).unwrap();
            let hdel = h_map(
                &he,
                &HObject::new(&he.d2.vect, &limits).unwrap(),
                &del,
            )
            .unwrap();
            assert!(hdel.is_isomorphism().is_some());
        }
    }

    #[test]
    fn everything_is_complete_for_the_empty_class() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        for e in universe(&field, &limits) {
            assert!(is_complete(&e, &[], &limits).unwrap());
            let (k, unit) = completion(&e, &[], &limits).unwrap();
            assert_eq!(k, e);
            assert_eq!(unit, LinMap::identity(&e));
        }
    }

    #[test]
    fn double_duals_are_complete() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let uni = universe(&field, &limits);
        let sigma = sigma_inverted(&uni, &limits).unwrap();
        for e in &uni {
            let he = HObject::new(e, &limits).unwrap();
            assert!(is_complete(he.he(), &sigma, &limits).unwrap());
        }
        assert!(is_complete(&uni[0], &sigma, &limits).unwrap());
    }

    #[test]
    fn completion_of_a_free_space_matches_its_double_dual() {
        // With reflexive function spaces, the double-dual unit of a free
        // space is inverted, so the completion coincides with the image of
        // the double-dual unit, which is all of the double dual.
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let uni = universe(&field, &limits);
        let sigma = sigma_inverted(&uni, &limits).unwrap();
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let fx = free(&x, &field, &limits).unwrap();
        let (k, unit) = completion(&fx.vect, &sigma, &limits).unwrap();
        let he = HObject::new(&fx.vect, &limits).unwrap();
        assert_eq!(k.space.points(), he.he().space.points());
        assert!(is_pointwise_epi(&unit));
    }

    #[test]
    fn completion_monad_verifies_and_comparison_closes_the_triangle() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let uni = universe(&field, &limits);
        let sigma = sigma_inverted(&uni, &limits).unwrap();
        completion_monad(&uni, &sigma, &limits).verify().unwrap();
        let cmp = completion_monad_morphism(&uni, &sigma, &limits).unwrap();
        cmp.verify().unwrap();
        for e in &uni {
            let (_, rho) = completion(e, &sigma, &limits).unwrap();
            let i = (cmp.component)(&Obj::Vect(e.clone())).unwrap();
            let i_lin = LinMap::new(
                expect_vect(i.dom()).unwrap().clone(),
                expect_vect(i.cod()).unwrap().clone(),
                i.table().to_vec(),
            )
            .unwrap();
            // The triangle with the two units commutes exactly.
            let del = partial_map(&HObject::new(e, &limits).unwrap()).unwrap();
            assert_eq!(rho.then(&i_lin).unwrap(), del);
            // Components are injective initial embeddings.
            assert!(crate::factorlab::ortho::is_strong_mono(&i_lin));
        }
    }

    #[test]
    fn retraction_identity_holds_on_all_small_spaces() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        for x in crate::convspace::enumerate_spaces(2, AxiomMode::Limit).unwrap() {
            assert!(reflexivity_retraction_check(&x, &field, &limits).unwrap());
        }
        let f3 = Field::new(3).unwrap();
        assert!(reflexivity_retraction_check(
            &ConvSpace::discrete(1, AxiomMode::Limit),
            &f3,
            &limits
        )
        .unwrap());
    }

    #[test]
    fn reflected_tensor_is_complete_and_coherent() {
        // One-dimensional objects keep the completeness checks of the
        // 4-point tensors inside the hom-object carrier bound.
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let uni = vec![
            scalar_object(&field, AxiomMode::Limit),
            free(&ConvSpace::discrete(1, AxiomMode::Limit), &field, &limits).unwrap().vect,
        ];
        let sigma = sigma_inverted(&uni, &limits).unwrap();
        let complete: Vec<ConvVect> = uni
            .iter()
            .map(|e| completion(e, &sigma, &limits).unwrap().0)
            .collect();
        for c1 in &complete {
            for c2 in &complete {
                let k = reflected_tensor(c1, c2, &sigma, &limits).unwrap();
                assert!(is_complete(&k, &sigma, &limits).unwrap());
                reflected_symmetry_iso(c1, c2, &sigma, &limits).unwrap();
            }
            let unit_iso = reflected_unit_iso(c1, &sigma, &limits).unwrap();
            assert_eq!(unit_iso.cod(), c1);
        }
    }

    #[test]
    fn zero_space_absorbs_in_the_reflected_tensor() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let uni = universe(&field, &limits);
        let sigma = sigma_inverted(&uni, &limits).unwrap();
        let r = &uni[0];
        let zero_space = free(&ConvSpace::discrete(0, AxiomMode::Limit), &field, &limits)
            .unwrap()
            .vect;
        let k = reflected_tensor(&zero_space, r, &sigma, &limits).unwrap();
        assert_eq!(k.space.points(), 1);
    }
}
