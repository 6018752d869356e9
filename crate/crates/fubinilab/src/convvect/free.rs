//! Free convergence vector spaces on a convergence space.

use super::{vector_convergence, ConvVect, Limits};
use crate::convspace::{ConvSpace, ContMap};
use crate::convvect::LinMap;
use crate::error::{Error, Result};
use crate::scalars::Field;

/// The free convergence vector space on a space `X`.
///
/// The carrier is the set of coefficient functions `X → F_p`, indexed with
/// the point `x` as the `p`-ary digit of weight `p^x`; the insertion sends
/// `x` to its indicator function.  The convergence structure is the least
/// one containing the images of the converging sets of `X` under the
/// insertion and closed under the vector rules.
#[derive(Debug, Clone)]
pub struct FreeVect {
    pub vect: ConvVect,
    pub base: ConvSpace,
    pub insertion: ContMap,
}

impl FreeVect {
    /// Carrier index of the indicator of `x`.
    pub fn generator(&self, x: usize) -> usize {
        self.insertion.apply(x)
    }

    /// Coefficients of the carrier point `u` on the generators.
    pub fn coeffs(&self, u: usize) -> Vec<usize> {
        let p = self.vect.field.order();
        let mut u = u;
        (0..self.base.points())
            .map(|_| {
                let d = u % p;
                u /= p;
                d
            })
            .collect()
    }

    /// Carrier index of a coefficient vector.
    pub fn index_of_coeffs(&self, coeffs: &[usize]) -> usize {
        let p = self.vect.field.order();
        coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }
}

/// Builds the free convergence vector space on `x`.
pub fn free(x: &ConvSpace, field: &Field, limits: &Limits) -> Result<FreeVect> {
    let p = field.order();
    let nx = x.points();
    let n = (p as u128).checked_pow(nx as u32);
    let n = match n {
        Some(n) if n <= limits.max_carrier as u128 => n as usize,
        _ => {
            return Err(Error::BoundExceeded(format!(
                "free carrier {p}^{nx} exceeds limit {}",
                limits.max_carrier
            )))
        }
    };
    let digits = |mut u: usize| -> Vec<usize> {
        (0..nx)
            .map(|_| {
                let d = u % p;
                u /= p;
                d
            })
            .collect()
    };
    let undigits = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let add: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let du = digits(u);
            (0..n)
                .map(|v| {
                    let dv = digits(v);
                    let s: Vec<usize> =
                        du.iter().zip(&dv).map(|(&a, &b)| field.add(a, b)).collect();
                    undigits(&s)
                })
                .collect()
        })
        .collect();
    let smul: Vec<Vec<usize>> = (0..p)
        .map(|c| {
            (0..n)
                .map(|u| {
                    let s: Vec<usize> = digits(u).iter().map(|&a| field.mul(c, a)).collect();
                    undigits(&s)
                })
                .collect()
        })
        .collect();
    let eta: Vec<usize> = (0..nx).map(|i| p.pow(i as u32)).collect();
    let mut seeds = Vec::new();
    for x0 in 0..nx {
        for &g in x.max_sets(x0) {
            let mut m = 0u64;
            for b in 0..nx {
                if g >> b & 1 == 1 {
                    m |= 1u64 << eta[b];
                }
            }
            seeds.push((eta[x0], m));
        }
    }
    let gens = vector_convergence(n, field, &add, &smul, &seeds, x.mode());
    let space = ConvSpace::new(n, x.mode(), gens)?;
    let vect = ConvVect::new(space, field.clone(), 0, add, smul, limits)?;
    let insertion = ContMap::new(x.clone(), vect.space.clone(), eta)?;
    Ok(FreeVect { vect, base: x.clone(), insertion })
}

/// The transpose of the free/forgetful adjunction: extends a continuous map
/// `X → G E` to a continuous linear map `F X → E`.
pub fn free_transpose(fx: &FreeVect, f: &ContMap, e: &ConvVect) -> Result<LinMap> {
    if f.dom() != &fx.base || f.cod() != &e.space {
        return Err(Error::DimensionMismatch("transpose of a mismatched map".into()));
    }
    let n = fx.vect.space.points();
    let map: Vec<usize> = (0..n)
        .map(|u| {
            let terms: Vec<(usize, usize)> = fx
                .coeffs(u)
                .iter()
                .enumerate()
                .map(|(x0, &c)| (c, f.apply(x0)))
                .collect();
            e.combination(&terms)
        })
        .collect();
    LinMap::new(fx.vect.clone(), e.clone(), map).map_err(|err| match err {
        Error::NotContinuous(msg) => {
            Error::NotLinearizable(format!("free extension is not continuous: {msg}"))
        }
        other => other,
    })
}

/// The inverse of the transpose: restricts a linear map `F X → E` along the
/// insertion.
pub fn restrict_along_insertion(fx: &FreeVect, l: &LinMap) -> Result<ContMap> {
    if l.dom() != &fx.vect {
        return Err(Error::DimensionMismatch("restriction of a mismatched map".into()));
    }
    let map: Vec<usize> = (0..fx.base.points()).map(|x0| l.apply(fx.generator(x0))).collect();
    ContMap::new(fx.base.clone(), l.cod().space.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::{hom_set, AxiomMode};
    use crate::convvect::{lin_hom_set, scalar_object};

    #[test]
    fn free_on_discrete_is_discrete() {
        let f = Field::new(2).unwrap();
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let fx = free(&x, &f, &Limits::default()).unwrap();
        assert_eq!(fx.vect.space.points(), 4);
        assert!(fx.vect.space.is_discrete());
        assert_eq!(fx.generator(0), 1);
        assert_eq!(fx.generator(1), 2);
    }

    #[test]
    fn free_on_indiscrete_closes_under_sums() {
        let f = Field::new(2).unwrap();
        let x = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let fx = free(&x, &f, &Limits::default()).unwrap();
        // {e0, e1} converges to e0; closure makes {0, e0+e1} converge to 0.
        assert!(fx.vect.space.converges(1, 0b0110));
        assert!(fx.vect.space.converges(0, 0b1001));
    }

    #[test]
    fn adjunction_bijection_counts() {
        let f = Field::new(2).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        for x in [
            ConvSpace::discrete(2, AxiomMode::Limit),
            ConvSpace::indiscrete(2, AxiomMode::Limit),
        ] {
            let fx = free(&x, &f, &Limits::default()).unwrap();
            let cont = hom_set(&x, &r.space).unwrap();
            let lin = lin_hom_set(&fx.vect, &r).unwrap();
            assert_eq!(cont.len(), lin.len());
            // Transpose followed by restriction is the identity.
            for g in &cont {
                let l = free_transpose(&fx, g, &r).unwrap();
                assert_eq!(&restrict_along_insertion(&fx, &l).unwrap(), g);
            }
        }
    }

    #[test]
    fn free_respects_carrier_limit() {
        let f = Field::new(7).unwrap();
        let x = ConvSpace::discrete(3, AxiomMode::Limit);
        assert!(matches!(
            free(&x, &f, &Limits::default()),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn free_on_empty_space_is_zero() {
        let f = Field::new(3).unwrap();
        let x = ConvSpace::discrete(0, AxiomMode::Limit);
        let fx = free(&x, &f, &Limits::default()).unwrap();
        assert_eq!(fx.vect.space.points(), 1);
    }
}
