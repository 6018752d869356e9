//! Concrete adjunctions and monads over explicit universes: the
//! free/forgetful adjunction, the contravariant dualization adjunction, and
//! the distribution and double-dualization monads, together with the
//! comparison identifying the distribution monad with the monad induced by
//! the composite adjunction.

use crate::convspace::{ConvSpace, ContMap};
use crate::convvect::{
    cotensor_hom_iso, dual, dual_map, free, free_transpose, ConvVect, Limits, LinMap,
};
use crate::error::{Error, Result};
use crate::monadlab::cat::{
    AdjunctionInstance, Component, Functor, MonadInstance, MonadMorphism, Mor, Obj,
};
use crate::monadlab::ddual::{gamma, h_map, partial_map, HObject};
use crate::monadlab::dist::{d_map, kappa, DObject};
use crate::scalars::Field;
use std::rc::Rc;

fn expect_space(o: &Obj) -> Result<&ConvSpace> {
    match o {
        Obj::Space(x) => Ok(x),
        _ => Err(Error::Invalid("expected a convergence space object".into())),
    }
}

fn expect_vect(o: &Obj) -> Result<&ConvVect> {
    match o {
        Obj::Vect(e) => Ok(e),
        _ => Err(Error::Invalid("expected a vector space object".into())),
    }
}

fn expect_op(o: &Obj) -> Result<&ConvVect> {
    match o {
        Obj::OpVect(e) => Ok(e),
        _ => Err(Error::Invalid("expected an opposite-category object".into())),
    }
}

fn as_lin(m: &Mor) -> Result<LinMap> {
    LinMap::new(
        expect_vect(m.dom())?.clone(),
        expect_vect(m.cod())?.clone(),
        m.table().to_vec(),
    )
}

/// Underlying linear map of an op-morphism (runs from the carrier of the
/// categorical codomain to that of the domain).
fn as_op_underlying(m: &Mor) -> Result<LinMap> {
    LinMap::new(
        expect_op(m.cod())?.clone(),
        expect_op(m.dom())?.clone(),
        m.table().to_vec(),
    )
}

/// The free/forgetful adjunction between convergence spaces and convergence
/// vector spaces, over the given universes.
pub fn free_forgetful_adjunction(
    spaces: &[ConvSpace],
    vects: &[ConvVect],
    field: &Field,
    limits: &Limits,
) -> AdjunctionInstance {
    let left = {
        let (field, limits) = (field.clone(), limits.clone());
        let on_obj = {
            let (field, limits) = (field.clone(), limits.clone());
            Rc::new(move |o: &Obj| -> Result<Obj> {
                Ok(Obj::Vect(free(expect_space(o)?, &field, &limits)?.vect))
            })
        };
        let on_mor = Rc::new(move |m: &Mor| -> Result<Mor> {
            let fx = free(expect_space(m.dom())?, &field, &limits)?;
            let fy = free(expect_space(m.cod())?, &field, &limits)?;
            let h = ContMap::new(
                expect_space(m.dom())?.clone(),
                expect_space(m.cod())?.clone(),
                m.table().to_vec(),
            )?;
            Ok(Mor::lin(free_transpose(&fx, &h.then(&fy.insertion)?, &fy.vect)?))
        });
        Functor { on_obj, on_mor }
    };
    let right = Functor {
        on_obj: Rc::new(|o: &Obj| Ok(Obj::Space(expect_vect(o)?.space.clone()))),
        on_mor: Rc::new(|m: &Mor| {
            Ok(Mor::cont(ContMap::new(
                expect_vect(m.dom())?.space.clone(),
                expect_vect(m.cod())?.space.clone(),
                m.table().to_vec(),
            )?))
        }),
    };
    let unit = {
        let (field, limits) = (field.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            Ok(Mor::cont(free(expect_space(o)?, &field, &limits)?.insertion))
        }) as Component
    };
    let counit = {
        let (field, limits) = (field.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let e = expect_vect(o)?;
            let f_on_carrier = free(&e.space, &field, &limits)?;
            let id = ContMap::identity(&e.space);
            Ok(Mor::lin(free_transpose(&f_on_carrier, &id, e)?))
        }) as Component
    };
    AdjunctionInstance {
        dom_universe: spaces.iter().cloned().map(Obj::Space).collect(),
        cod_universe: vects.iter().cloned().map(Obj::Vect).collect(),
        left,
        right,
        unit,
        counit,
    }
}

/// The contravariant dualization adjunction `L ⇄ L^op`, sending a space to
/// its dual regarded in the opposite category; unit and counit are both
/// carried by evaluation into the double dual.
pub fn dualization_adjunction(
    dom_vects: &[ConvVect],
    cod_vects: &[ConvVect],
    limits: &Limits,
) -> AdjunctionInstance {
    let left = {
        let limits = limits.clone();
        Functor {
            on_obj: {
                let limits = limits.clone();
                Rc::new(move |o: &Obj| -> Result<Obj> {
                    Ok(Obj::OpVect(dual(expect_vect(o)?, &limits)?.vect))
                })
            },
            on_mor: Rc::new(move |m: &Mor| -> Result<Mor> {
                let h = as_lin(m)?;
                let da = dual(h.dom(), &limits)?;
                let db = dual(h.cod(), &limits)?;
                Ok(Mor::op_lin(dual_map(&h, &da, &db)?))
            }),
        }
    };
    let right = {
        let limits = limits.clone();
        Functor {
            on_obj: {
                let limits = limits.clone();
                Rc::new(move |o: &Obj| -> Result<Obj> {
                    Ok(Obj::Vect(dual(expect_op(o)?, &limits)?.vect))
                })
            },
            on_mor: Rc::new(move |m: &Mor| -> Result<Mor> {
                let u = as_op_underlying(m)?; // cod carrier → dom carrier
                let d_dom = dual(u.dom(), &limits)?;
                let d_cod = dual(u.cod(), &limits)?;
                Ok(Mor::lin(dual_map(&u, &d_dom, &d_cod)?))
            }),
        }
    };
    let unit = {
        let limits = limits.clone();
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let h = HObject::new(expect_vect(o)?, &limits)?;
            Ok(Mor::lin(partial_map(&h)?))
        }) as Component
    };
    let counit = {
        let limits = limits.clone();
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let h = HObject::new(expect_op(o)?, &limits)?;
            Ok(Mor::op_lin(partial_map(&h)?))
        }) as Component
    };
    AdjunctionInstance {
        dom_universe: dom_vects.iter().cloned().map(Obj::Vect).collect(),
        cod_universe: cod_vects.iter().cloned().map(Obj::OpVect).collect(),
        left,
        right,
        unit,
        counit,
    }
}

/// The distribution monad on convergence spaces, over the given universe.
pub fn distribution_monad(
    spaces: &[ConvSpace],
    field: &Field,
    limits: &Limits,
) -> MonadInstance {
    let functor = {
        let (field, limits) = (field.clone(), limits.clone());
        Functor {
            on_obj: {
                let (field, limits) = (field.clone(), limits.clone());
                Rc::new(move |o: &Obj| -> Result<Obj> {
                    Ok(Obj::Space(DObject::new(expect_space(o)?, &field, &limits)?.space().clone()))
                })
            },
            on_mor: Rc::new(move |m: &Mor| -> Result<Mor> {
                let dx = DObject::new(expect_space(m.dom())?, &field, &limits)?;
                let dy = DObject::new(expect_space(m.cod())?, &field, &limits)?;
                let h = ContMap::new(
                    expect_space(m.dom())?.clone(),
                    expect_space(m.cod())?.clone(),
                    m.table().to_vec(),
                )?;
                let lm = d_map(&dx, &dy, &h)?;
                Ok(Mor::cont(ContMap::new(
                    dx.space().clone(),
                    dy.space().clone(),
                    lm.point_fn().to_vec(),
                )?))
            }),
        }
    };
    let unit = {
        let (field, limits) = (field.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            Ok(Mor::cont(DObject::new(expect_space(o)?, &field, &limits)?.dirac_map()?))
        }) as Component
    };
    let mult = {
        let (field, limits) = (field.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let dx = DObject::new(expect_space(o)?, &field, &limits)?;
            let ddx = DObject::new(dx.space(), &field, &limits)?;
            let k = kappa(&dx, &ddx)?;
            Ok(Mor::cont(ContMap::new(
                ddx.space().clone(),
                dx.space().clone(),
                k.point_fn().to_vec(),
            )?))
        }) as Component
    };
    MonadInstance {
        universe: spaces.iter().cloned().map(Obj::Space).collect(),
        functor,
        unit,
        mult,
    }
}

/// The double-dualization monad on convergence vector spaces, over the
/// given universe.
pub fn double_dualization_monad(vects: &[ConvVect], limits: &Limits) -> MonadInstance {
    let functor = {
        let limits = limits.clone();
        Functor {
            on_obj: {
                let limits = limits.clone();
                Rc::new(move |o: &Obj| -> Result<Obj> {
                    Ok(Obj::Vect(HObject::new(expect_vect(o)?, &limits)?.he().clone()))
                })
            },
            on_mor: Rc::new(move |m: &Mor| -> Result<Mor> {
                let f = as_lin(m)?;
                let src = HObject::new(f.dom(), &limits)?;
                let dst = HObject::new(f.cod(), &limits)?;
                Ok(Mor::lin(h_map(&src, &dst, &f)?))
            }),
        }
    };
    let unit = {
        let limits = limits.clone();
        Rc::new(move |o: &Obj| -> Result<Mor> {
            Ok(Mor::lin(partial_map(&HObject::new(expect_vect(o)?, &limits)?)?))
        }) as Component
    };
    let mult = {
        let limits = limits.clone();
        Rc::new(move |o: &Obj| -> Result<Mor> {
            Ok(Mor::lin(gamma(&HObject::new(expect_vect(o)?, &limits)?, &limits)?))
        }) as Component
    };
    MonadInstance {
        universe: vects.iter().cloned().map(Obj::Vect).collect(),
        functor,
        unit,
        mult,
    }
}

/// The comparison between the monad induced by the composite of the
/// free/forgetful and dualization adjunctions and the distribution monad.
/// The component at a space `X` is carried by the dual of the linear
/// extension isomorphism between scalar functions on `X` and functionals on
/// the free space.
pub fn composite_vs_distribution(
    spaces: &[ConvSpace],
    field: &Field,
    limits: &Limits,
) -> Result<MonadMorphism> {
    let vect_universe: Vec<ConvVect> = spaces
        .iter()
        .map(|x| Ok(free(x, field, limits)?.vect))
        .collect::<Result<_>>()?;
    let op_universe: Vec<ConvVect> = vect_universe
        .iter()
        .map(|e| Ok(dual(e, limits)?.vect))
        .collect::<Result<_>>()?;
    let ff = free_forgetful_adjunction(spaces, &vect_universe, field, limits);
    let dd = dualization_adjunction(&vect_universe, &op_universe, limits);
    let composite = super::cat::compose_adjunctions(&ff, &dd);
    let source = composite.induced_monad();
    let target = distribution_monad(spaces, field, limits);
    let component = {
        let (field, limits) = (field.clone(), limits.clone());
        Rc::new(move |o: &Obj| -> Result<Mor> {
            let x = expect_space(o)?;
            let fx = free(x, &field, &limits)?;
            let dx = DObject::new(x, &field, &limits)?;
            let hom = dual(&fx.vect, &limits)?;
            let (extension, _) = cotensor_hom_iso(&fx, &dx.functions.cot.target, &dx.functions.cot, &hom)?;
            let fx_double_dual = dual(&hom.vect, &limits)?;
            let comp = dual_map(&extension, &dx.dual, &fx_double_dual)?;
            Ok(Mor::cont(ContMap::new(
                comp.dom().space.clone(),
                dx.space().clone(),
                comp.point_fn().to_vec(),
            )?))
        }) as Component
    };
    Ok(MonadMorphism { source, target, component })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::AxiomMode;
    use crate::convvect::scalar_object;
    use crate::monadlab::cat::transported_monad;

    fn small_spaces(mode: AxiomMode) -> Vec<ConvSpace> {
        vec![
            ConvSpace::discrete(1, mode),
            ConvSpace::discrete(2, mode),
            ConvSpace::indiscrete(2, mode),
        ]
    }

    fn small_vects(field: &Field, limits: &Limits) -> Vec<ConvVect> {
        let mode = AxiomMode::Limit;
        vec![
            scalar_object(field, mode),
            free(&ConvSpace::discrete(2, mode), field, limits).unwrap().vect,
            free(&ConvSpace::indiscrete(2, mode), field, limits).unwrap().vect,
        ]
    }

    #[test]
    fn free_forgetful_adjunction_verifies() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let adj = free_forgetful_adjunction(
            &small_spaces(AxiomMode::Limit),
            &small_vects(&field, &limits),
            &field,
            &limits,
        );
        adj.verify().unwrap();
    }

    #[test]
    fn dualization_adjunction_verifies() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let vects = small_vects(&field, &limits);
        let ops: Vec<ConvVect> =
            vects.iter().map(|e| dual(e, &limits).unwrap().vect).collect();
        let adj = dualization_adjunction(&vects, &ops, &limits);
        adj.verify().unwrap();
    }

    #[test]
    fn double_dualization_monad_verifies_generically() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let vects = small_vects(&field, &limits);
        double_dualization_monad(&vects, &limits).verify().unwrap();
    }

    #[test]
    fn dualization_induces_double_dualization() {
        // The monad induced by the dualization adjunction has the same
        // functor, unit, and multiplication components as the
        // double-dualization monad.
        let field = Field::new(3).unwrap();
        let limits = Limits::default();
        let vects = vec![scalar_object(&field, AxiomMode::Limit)];
        let ops: Vec<ConvVect> =
            vects.iter().map(|e| dual(e, &limits).unwrap().vect).collect();
        let induced = dualization_adjunction(&vects, &ops, &limits).induced_monad();
        let direct = double_dualization_monad(&vects, &limits);
        for o in &induced.universe {
            assert_eq!((induced.unit)(o).unwrap(), (direct.unit)(o).unwrap());
            assert_eq!((induced.mult)(o).unwrap(), (direct.mult)(o).unwrap());
            assert_eq!(
                induced.functor.apply_obj(o).unwrap(),
                direct.functor.apply_obj(o).unwrap()
            );
        }
    }

    #[test]
    fn distribution_monad_verifies_on_one_component_universe() {
        // Triple applications of the functor stay within carrier bounds on
        // connected spaces over F_2.
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let spaces = vec![
            ConvSpace::discrete(1, AxiomMode::Limit),
            ConvSpace::indiscrete(2, AxiomMode::Limit),
        ];
        distribution_monad(&spaces, &field, &limits).verify().unwrap();
    }

    #[test]
    fn transported_identity_monad_is_induced_monad() {
        // Transporting the identity monad along an adjunction yields the
        // induced monad, component by component.
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let spaces = small_spaces(AxiomMode::Limit);
        let vects = small_vects(&field, &limits);
        let adj = free_forgetful_adjunction(&spaces, &vects, &field, &limits);
        let id_monad = MonadInstance {
            universe: adj.cod_universe.clone(),
            functor: Functor::identity(),
            unit: Rc::new(|o| Ok(Mor::identity(o))),
            mult: Rc::new(|o| Ok(Mor::identity(o))),
        };
        let moved = transported_monad(&adj, &id_monad);
        let induced = adj.induced_monad();
        for o in &induced.universe {
            assert_eq!((moved.unit)(o).unwrap(), (induced.unit)(o).unwrap());
            assert_eq!((moved.mult)(o).unwrap(), (induced.mult)(o).unwrap());
        }
        // Full law verification needs a triple application of the functor,
        // so it runs on the one-point universe only.
        let tiny = free_forgetful_adjunction(
            &[ConvSpace::discrete(1, AxiomMode::Limit)],
            &vects,
            &field,
            &limits,
        );
        transported_monad(&tiny, &id_monad).verify().unwrap();
    }

    #[test]
    fn composite_adjunction_induces_distribution_monad() {
        let field = Field::new(2).unwrap();
        let limits = Limits::default();
        let spaces = small_spaces(AxiomMode::Limit);
        let cmp = composite_vs_distribution(&spaces, &field, &limits).unwrap();
        let all_iso = cmp.verify().unwrap();
        assert!(all_iso, "comparison components must be invertible");
    }
}
