//! The natural distribution monad: `D X` is the space of continuous linear
//! functionals on the scalar function space `[X, R]`, with Dirac unit and
//! multiplication by precomposition with evaluation.

use crate::convspace::{hom_set, ConvSpace, ContMap};
use crate::convvect::{dual, scalar_functions, ConvVect, HomVect, Limits, LinMap, ScalarFunctions};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// `D X` together with the data it is computed from.
#[derive(Debug, Clone)]
pub struct DObject {
    pub base: ConvSpace,
    /// The scalar function space `[X, R]`.
    pub functions: ScalarFunctions,
    /// `D X = ([X, R])*` as an internal hom.
    pub dual: HomVect,
    dirac: Vec<usize>,
}

impl DObject {
    /// Builds `D X` over the given field.
    pub fn new(x: &ConvSpace, field: &Field, limits: &Limits) -> Result<DObject> {
        let functions = scalar_functions(x, field, limits)?;
        let dual = dual(functions.vect(), limits)?;
        // Every linear functional on a scalar cotensor is continuous (the
        // Dirac evaluations span the algebraic dual), so the carrier must be
        // the full dual; the constructions below rely on this.
        let expect = (field.order() as u128).pow(functions.dim() as u32);
        if dual.points() as u128 != expect {
            return Err(Error::MismatchedConstructions(format!(
                "dual of the scalar cotensor has {} points, expected {expect}",
                dual.points()
            )));
        }
        let dirac = (0..x.points())
            .map(|pt| {
                let values: Vec<usize> = (0..functions.vect().space.points())
                    .map(|f| functions.eval(f, pt))
                    .collect();
                dual.index_of(&values).ok_or_else(|| {
                    Error::MismatchedConstructions(format!(
                        "Dirac functional at {pt} is not carried"
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(DObject { base: x.clone(), functions, dual, dirac })
    }

    /// The underlying convergence space of `D X`.
    pub fn space(&self) -> &ConvSpace {
        &self.dual.vect.space
    }

    /// `D X` as a convergence vector space.
    pub fn vect(&self) -> &ConvVect {
        &self.dual.vect
    }

    pub fn points(&self) -> usize {
        self.dual.points()
    }

    /// Evaluation `μ(f)` of the `mu`-th functional at the `f`-th function.
    pub fn pairing(&self, mu: usize, f: usize) -> usize {
        self.dual.eval(mu, f)
    }

    /// The Dirac functional `λf. f(x)`.
    pub fn dirac(&self, x: usize) -> usize {
        self.dirac[x]
    }

    /// The unit `δ : X → D X` as a continuous map.
    pub fn dirac_map(&self) -> Result<ContMap> {
        ContMap::new(self.base.clone(), self.space().clone(), self.dirac.clone())
    }

    /// Carrier index of the functional with the given values on `[X, R]`.
    pub fn functional(&self, values: &[usize]) -> Option<usize> {
        self.dual.index_of(values)
    }

    /// Weights of a functional on the components of the base space:
    /// `μ = Σ_k w_k · δ(rep_k)`.
    pub fn weights(&self, mu: usize) -> Vec<usize> {
        self.functions
            .reps
            .iter()
            .map(|&r| self.pairing(mu, self.functions.indicator(r)))
            .collect()
    }

    /// The functional `Σ_k w_k · δ(rep_k)` from component weights.
    pub fn from_weights(&self, weights: &[usize]) -> usize {
        let field = &self.functions.vect().field;
        let values: Vec<usize> = (0..self.functions.vect().space.points())
            .map(|f| {
                self.functions
                    .reps
                    .iter()
                    .zip(weights)
                    .fold(0, |acc, (&r, &w)| {
                        field.add(acc, field.mul(w, self.functions.eval(f, r)))
                    })
            })
            .collect();
        self.functional(&values)
            .expect("weight combinations of Dirac functionals are carried")
    }
}

/// The functorial action: `D h : D X → D Y`, `μ ↦ λg. μ(g ∘ h)`.
pub fn d_map(dx: &DObject, dy: &DObject, h: &ContMap) -> Result<LinMap> {
    if h.dom() != &dx.base || h.cod() != &dy.base {
        return Err(Error::DimensionMismatch("functor action on a mismatched map".into()));
    }
    let map: Vec<usize> = (0..dx.points())
        .map(|mu| {
            let values: Vec<usize> = (0..dy.functions.vect().space.points())
                .map(|g| {
                    let pulled: Vec<usize> = (0..dx.base.points())
                        .map(|x| dy.functions.eval(g, h.apply(x)))
                        .collect();
                    let f = dx.functions.cot.index_of(&pulled).ok_or_else(|| {
                        Error::MismatchedConstructions(
                            "pullback of a scalar function is not carried".into(),
                        )
                    })?;
                    Ok(dx.pairing(mu, f))
                })
                .collect::<Result<_>>()?;
            dy.functional(&values).ok_or_else(|| {
                Error::MismatchedConstructions("pushforward functional is not carried".into())
            })
        })
        .collect::<Result<_>>()?;
    LinMap::new(dx.vect().clone(), dy.vect().clone(), map)
}

/// The multiplication `κ_X : D D X → D X`, `Φ ↦ λf. Φ(σ(f))` where
/// `σ(f) = λμ. μ(f)` is the evaluation function on `D X`.
///
/// `ddx` must be `D` applied to the underlying space of `dx`.
pub fn kappa(dx: &DObject, ddx: &DObject) -> Result<LinMap> {
    if &ddx.base != dx.space() {
        return Err(Error::DimensionMismatch(
            "multiplication needs D of the underlying space of D X".into(),
        ));
    }
    let map: Vec<usize> = (0..ddx.points())
        .map(|phi| {
            let values: Vec<usize> = (0..dx.functions.vect().space.points())
                .map(|f| {
                    let ev_f: Vec<usize> =
                        (0..dx.points()).map(|mu| dx.pairing(mu, f)).collect();
                    let sigma_f = ddx.functions.cot.index_of(&ev_f).ok_or_else(|| {
                        Error::MismatchedConstructions(
                            "evaluation function on D X is not carried".into(),
                        )
                    })?;
                    Ok(ddx.pairing(phi, sigma_f))
                })
                .collect::<Result<_>>()?;
            dx.functional(&values).ok_or_else(|| {
                Error::MismatchedConstructions("multiplied functional is not carried".into())
            })
        })
        .collect::<Result<_>>()?;
    LinMap::new(ddx.vect().clone(), dx.vect().clone(), map)
}

/// Exhaustive monad-law check for `D` at a base space.
///
/// The unit laws and the naturality of the unit are checked on materialized
/// carriers.  Associativity needs the triple application, whose carrier can
/// be far beyond the size limits, so its elements are handled symbolically:
/// a functional on `[|DDX|, R]` is determined by its weights on the points
/// of the (discrete) carrier `|DDX|`, and both associativity routes are
/// evaluated directly on such weight vectors.
pub fn check_d_monad_laws(x: &ConvSpace, field: &Field, limits: &Limits) -> Result<()> {
    let dx = DObject::new(x, field, limits)?;
    let ddx = DObject::new(dx.space(), field, limits)?;
    let k = kappa(&dx, &ddx)?;
    let fail = |what: String| Err(Error::MismatchedConstructions(what));

    // Right unit: κ ∘ δ_{D X} = id.
    for mu in 0..dx.points() {
        if k.apply(ddx.dirac(mu)) != mu {
            return fail(format!("right unit law fails at {mu}"));
        }
    }
    // Left unit: κ ∘ D δ = id.
    let d_delta = d_map(&dx, &ddx, &dx.dirac_map()?)?;
    for mu in 0..dx.points() {
        if k.apply(d_delta.apply(mu)) != mu {
            return fail(format!("left unit law fails at {mu}"));
        }
    }
    // Functoriality on identities and unit naturality over all continuous
    // self-maps of the base.
    let id = d_map(&dx, &dx, &ContMap::identity(x))?;
    if id != LinMap::identity(dx.vect()) {
        return fail("functor does not preserve the identity".into());
    }
    for h in hom_set(x, x)? {
        let dh = d_map(&dx, &dx, &h)?;
        for pt in 0..x.points() {
            if dh.apply(dx.dirac(pt)) != dx.dirac(h.apply(pt)) {
                return fail(format!("unit naturality fails at point {pt}"));
            }
        }
    }

    // Associativity: κ ∘ Dκ = κ ∘ κ_{D X} on D D D X, elements taken as
    // weight vectors over |DDX|.
    let w = ddx.points();
    let p = field.order();
    let sf_dx = ddx.functions.vect().space.points();
    let route = |coeffs: &[usize], via_kappa: bool| -> Result<usize> {
        let values: Vec<usize> = (0..sf_dx)
            .map(|g| {
                let mut acc = 0usize;
                for wp in 0..w {
                    let term = if via_kappa {
                        // κ_{D X}: evaluate the coefficient vector on σ(g).
                        ddx.pairing(wp, g)
                    } else {
                        // D κ: pull g back along κ.
                        ddx.functions.eval(g, k.apply(wp))
                    };
                    acc = field.add(acc, field.mul(coeffs[wp], term));
                }
                acc
            })
            .collect();
        let phi = ddx.functional(&values).ok_or_else(|| {
            Error::MismatchedConstructions("associativity route leaves the carrier".into())
        })?;
        Ok(k.apply(phi))
    };
    let check = |coeffs: &[usize]| -> Result<()> {
        if route(coeffs, true)? != route(coeffs, false)? {
            return fail(format!("associativity fails at weights {coeffs:?}"));
        }
        Ok(())
    };
    let total = (p as u128).checked_pow(w as u32);
    match total {
        Some(t) if t <= 1 << 16 => {
            // Exhaustive over all elements of the triple application.
            let mut coeffs = vec![0usize; w];
            loop {
                check(&coeffs)?;
                let mut i = 0;
                loop {
                    if i == w {
                        return Ok(());
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < p {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
            }
        }
        _ => {
            // Both routes are linear in the weights, so Dirac vectors and
            // their pairwise scaled sums decide equality.
            for i in 0..w {
                for c in 1..p {
                    let mut coeffs = vec![0usize; w];
                    coeffs[i] = c;
                    check(&coeffs)?;
                    for j in 0..w {
                        for c2 in 1..p {
                            let mut coeffs2 = coeffs.clone();
                            coeffs2[j] = field.add(coeffs2[j], c2);
                            check(&coeffs2)?;
                        }
                    }
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::AxiomMode;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn d_of_one_point_space_is_the_scalars() {
        let x = ConvSpace::discrete(1, AxiomMode::Limit);
        let dx = DObject::new(&x, &f2(), &Limits::default()).unwrap();
        assert_eq!(dx.points(), 2);
        assert_eq!(dx.dirac(0), dx.from_weights(&[1]));
    }

    #[test]
    fn d_of_empty_space_is_a_point() {
        let x = ConvSpace::discrete(0, AxiomMode::Limit);
        let dx = DObject::new(&x, &f2(), &Limits::default()).unwrap();
        assert_eq!(dx.points(), 1);
    }

    #[test]
    fn diracs_on_discrete_two_are_distinct() {
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let dx = DObject::new(&x, &f2(), &Limits::default()).unwrap();
        assert_eq!(dx.points(), 4);
        assert_ne!(dx.dirac(0), dx.dirac(1));
        assert_eq!(dx.weights(dx.dirac(0)), vec![1, 0]);
        assert_eq!(dx.weights(dx.dirac(1)), vec![0, 1]);
    }

    #[test]
    fn indiscrete_base_identifies_diracs() {
        let x = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let dx = DObject::new(&x, &f2(), &Limits::default()).unwrap();
        assert_eq!(dx.points(), 2);
        assert_eq!(dx.dirac(0), dx.dirac(1));
    }

    #[test]
    fn monad_laws_across_small_universe() {
        let lim = Limits::default();
        for x in [
            ConvSpace::discrete(0, AxiomMode::Limit),
            ConvSpace::discrete(1, AxiomMode::Limit),
            ConvSpace::discrete(2, AxiomMode::Limit),
            ConvSpace::indiscrete(2, AxiomMode::Limit),
            ConvSpace::indiscrete(3, AxiomMode::DownOnly),
        ] {
            check_d_monad_laws(&x, &f2(), &lim).unwrap();
        }
        check_d_monad_laws(
            &ConvSpace::discrete(1, AxiomMode::Limit),
            &Field::new(3).unwrap(),
            &lim,
        )
        .unwrap();
    }

    #[test]
    fn functor_action_pushes_weights_forward() {
        let lim = Limits::default();
        let x = ConvSpace::discrete(2, AxiomMode::Limit);
        let dx = DObject::new(&x, &f2(), &lim).unwrap();
        let collapse = ContMap::new(x.clone(), x.clone(), vec![0, 0]).unwrap();
        let dh = d_map(&dx, &dx, &collapse).unwrap();
        let mu = dx.from_weights(&[1, 1]);
        assert_eq!(dx.weights(dh.apply(mu)), vec![0, 0]); // 1 + 1 = 0 in F2
        let f3 = Field::new(3).unwrap();
        let dx3 = DObject::new(&x, &f3, &lim).unwrap();
        let dh3 = d_map(&dx3, &dx3, &collapse).unwrap();
        let mu3 = dx3.from_weights(&[1, 1]);
        assert_eq!(dx3.weights(dh3.apply(mu3)), vec![2, 0]);
    }
}
