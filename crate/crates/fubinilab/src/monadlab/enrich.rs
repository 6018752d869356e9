//! The round trip between the monoidal structure of the distribution monad
//! and its enrichment: the structure map derived from the tensor must agree
//! with the directly computed functorial action.

use super::commute::fubini_instance;
use super::dist::{d_map, DObject};
use crate::convspace::{eval_map, function_space, ConvSpace, ContMap};
use crate::convvect::Limits;
use crate::error::{Error, Result};
use crate::scalars::Field;

/// For every distribution `μ` on `X` and every continuous map `h : X → Y`,
/// compares the derived structure map
/// `(μ, h) ↦ D(Ev)(⊗_{X,[X,Y]}(μ, δ(h)))` with the direct action `D h (μ)`.
///
/// The tensor composite is evaluated via `fubini_instance` when the product
/// instance fits the carrier bounds, and otherwise through its
/// iterated-evaluation form, which needs only the first-level carriers.
pub fn enrichment_roundtrip_check(
    x: &ConvSpace,
    y: &ConvSpace,
    field: &Field,
    limits: &Limits,
) -> Result<()> {
    let fs = function_space(x, y)?;
    let dx = DObject::new(x, field, limits)?;
    let dy = DObject::new(y, field, limits)?;
    let dw = DObject::new(&fs.space, field, limits)?;
    let (ev_prod, ev) = eval_map(&fs)?;
    let fail = |mu: usize, h: usize| {
        Err(Error::EnrichmentMismatch(format!(
            "derived structure map disagrees with the direct action at (μ={mu}, h={h})"
        )))
    };

    match fubini_instance(x, &fs.space, field, limits) {
        Ok(inst) => {
            let dev = d_map(&inst.dz, &dy, &ev)?;
            for h in 0..fs.maps.len() {
                let hm = ContMap::new(x.clone(), y.clone(), fs.maps[h].clone())?;
                let dh = d_map(&dx, &dy, &hm)?;
                let delta_h = dw.dirac(h);
                for mu in 0..dx.points() {
                    if dev.apply(inst.otimes(mu, delta_h)) != dh.apply(mu) {
                        return fail(mu, h);
                    }
                }
            }
            Ok(())
        }
        Err(Error::BoundExceeded(_)) => {
            // D(X × [X,Y]) is out of bounds; evaluate the same composite in
            // its iterated form ν(λw. μ(λx. g(Ev(x, w)))) with ν = δ(h).
            let sfw = &dw.functions;
            let sfy_points = dy.functions.vect().space.points();
            for h in 0..fs.maps.len() {
                let hm = ContMap::new(x.clone(), y.clone(), fs.maps[h].clone())?;
                let dh = d_map(&dx, &dy, &hm)?;
                let nu = dw.dirac(h);
                for mu in 0..dx.points() {
                    let values: Vec<usize> = (0..sfy_points)
                        .map(|g| {
                            let inner: Vec<usize> = (0..fs.maps.len())
                                .map(|w| {
                                    let slice: Vec<usize> = (0..x.points())
                                        .map(|x0| {
                                            dy.functions.eval(
                                                g,
                                                ev.apply(ev_prod.pair(x0, w)),
                                            )
                                        })
                                        .collect();
                                    let fi =
                                        dx.functions.cot.index_of(&slice).ok_or_else(|| {
                                            Error::EnrichmentMismatch(
                                                "evaluation slice not carried".into(),
                                            )
                                        })?;
                                    Ok(dx.pairing(mu, fi))
                                })
                                .collect::<Result<_>>()?;
                            let wi = sfw.cot.index_of(&inner).ok_or_else(|| {
                                Error::EnrichmentMismatch(
                                    "inner transport is not a carried function".into(),
                                )
                            })?;
                            Ok(dw.pairing(nu, wi))
                        })
                        .collect::<Result<_>>()?;
                    let derived = dy.functional(&values).ok_or_else(|| {
                        Error::EnrichmentMismatch("derived functional not carried".into())
                    })?;
                    if derived != dh.apply(mu) {
                        return fail(mu, h);
                    }
                }
            }
            Ok(())
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::AxiomMode;

    #[test]
    fn roundtrip_on_one_point_spaces() {
        let x = ConvSpace::discrete(1, AxiomMode::Limit);
        enrichment_roundtrip_check(&x, &x, &Field::new(2).unwrap(), &Limits::default()).unwrap();
    }

    #[test]
    fn roundtrip_across_the_two_point_universe() {
        let f = Field::new(2).unwrap();
        let lim = Limits::default();
        for x in [
            ConvSpace::discrete(2, AxiomMode::Limit),
            ConvSpace::indiscrete(2, AxiomMode::Limit),
        ] {
            for y in [
                ConvSpace::discrete(2, AxiomMode::Limit),
                ConvSpace::indiscrete(2, AxiomMode::Limit),
            ] {
                enrichment_roundtrip_check(&x, &y, &f, &lim).unwrap();
            }
        }
    }
}
