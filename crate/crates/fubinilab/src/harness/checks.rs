//! The individual suite checks: each one runs an exhaustive verification
//! over the configured universe and reports a pass/fail outcome with a
//! human-readable detail line.

use crate::convspace::{
    curry, enumerate_spaces, function_space, hom_set, product, uncurry, ConvSpace,
    ContMap,
};
use crate::convvect::{
    dual, free, free_transpose, lin_hom_set, scalar_functions, scalar_object,
    strong_monoidal_iso, tensor_swap, ConvVect, Limits,
};
use crate::error::{Error, Result};
use crate::factorlab::{completion, epi_strongmono_factorize, is_strong_mono, lift_along};
use crate::harness::oracle::{oracle_discrete_fubini, oracle_discrete_fubini_mod};
use crate::harness::SuiteConfig;
use crate::monadlab::{
    check_commutative, check_d_monad_laws, check_h_monad_laws, fubini_instance,
    free_forgetful_adjunction, h_map, enrichment_roundtrip_check, partial_map, HObject,
};
use crate::scalars::{rat, Field, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of one suite check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, result: Result<String>) -> CheckOutcome {
    match result {
        Ok(detail) => CheckOutcome { name: name.into(), passed: true, detail },
        Err(e) => CheckOutcome { name: name.into(), passed: false, detail: e.to_string() },
    }
}

fn spaces(cfg: &SuiteConfig) -> Result<Vec<ConvSpace>> {
    enumerate_spaces(cfg.max_size, cfg.axioms.mode())
}

fn field(cfg: &SuiteConfig) -> Result<Field> {
    Field::new(cfg.field)
}

/// A representative universe of vector spaces over the configured field:
/// scalars, free spaces, function spaces, and duals of free spaces, capped
/// at four carrier points.
fn vect_universe(cfg: &SuiteConfig, limits: &Limits) -> Result<Vec<ConvVect>> {
    let field = field(cfg)?;
    let mut out = vec![scalar_object(&field, cfg.axioms.mode())];
    for x in spaces(cfg)? {
        for e in [
            free(&x, &field, limits)?.vect,
            scalar_functions(&x, &field, limits)?.vect().clone(),
            dual(&free(&x, &field, limits)?.vect, limits)?.vect,
        ] {
            if e.space.points() <= 4 && !out.contains(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Criterion 1: currying is a bijection and the evaluation triangle holds
/// on every triple of universe spaces.
pub fn check_cartesian_closed(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("cartesian-closedness", (|| {
        let uni = spaces(cfg)?;
        let mut triples = 0usize;
        for x in &uni {
            for y in &uni {
                let fs = function_space(x, y)?;
                for z in &uni {
                    let prod = product(z, x)?;
                    let plain = hom_set(&prod.space, y)?;
                    let curried = hom_set(z, &fs.space)?;
                    if plain.len() != curried.len() {
                        return Err(Error::MismatchedConstructions(format!(
                            "hom sizes {} vs {} differ",
                            plain.len(),
                            curried.len()
                        )));
                    }
                    for f in &plain {
                        let g = curry(&prod, f, &fs)?;
                        if &uncurry(&prod, &g, &fs)? != f {
                            return Err(Error::MismatchedConstructions(
                                "currying round-trip fails".into(),
                            ));
                        }
                        // Evaluation triangle, pointwise.
                        for zz in 0..z.points() {
                            for xx in 0..x.points() {
                                if f.apply(prod.pair(zz, xx)) != fs.maps[g.apply(zz)][xx] {
                                    return Err(Error::MismatchedConstructions(
                                        "evaluation triangle fails".into(),
                                    ));
                                }
                            }
                        }
                    }
                    triples += 1;
                }
            }
        }
        Ok(format!("{triples} exponential triples verified"))
    })())
}

/// Criterion 2: hom-set counts of the free adjunction agree and both
/// triangle identities hold.
pub fn check_free_adjunction(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("free-adjunction", (|| {
        let field = field(cfg)?;
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let uni = spaces(cfg)?;
        let vects = vect_universe(cfg, &limits)?;
        let mut count = 0usize;
        for x in &uni {
            let fx = free(x, &field, &limits)?;
            for e in &vects {
                let linear = lin_hom_set(&fx.vect, e)?.len();
                let plain = hom_set(x, &e.space)?.len();
                if linear != plain {
                    return Err(Error::MismatchedConstructions(format!(
                        "hom counts {linear} vs {plain} differ"
                    )));
                }
                count += 1;
            }
        }
        // The triangle identities evaluate F(U(F X)), whose carrier is
        // p^(p^|X|); restrict the verification universe to objects where
        // that stays within the carrier bound.
        let p = field.order() as u128;
        let fits = |n: usize| -> bool {
            let mut size: u128 = 1;
            for _ in 0..n {
                size = size.saturating_mul(p);
                if size > limits.max_carrier as u128 {
                    return false;
                }
            }
            true
        };
        let verifiable_spaces: Vec<ConvSpace> = uni
            .iter()
            .filter(|x| {
                fits(x.points())
                    && fits(field.order().pow(x.points() as u32))
            })
            .cloned()
            .collect();
        let verifiable_vects: Vec<ConvVect> = vects
            .iter()
            .filter(|e| fits(e.space.points()))
            .cloned()
            .collect();
        let skipped =
            (uni.len() - verifiable_spaces.len()) + (vects.len() - verifiable_vects.len());
        free_forgetful_adjunction(&verifiable_spaces, &verifiable_vects, &field, &limits)
            .verify()?;
        Ok(format!(
            "{count} hom-count pairs and both triangles verified ({skipped} objects beyond iterated carrier bounds)"
        ))
    })())
}

/// Criterion 3: the tensor of free spaces is the free space on the product
/// via the generator formula, compatibly with the symmetries.
pub fn check_strong_monoidal(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("strong-monoidal", (|| {
        let field = field(cfg)?;
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let uni = spaces(cfg)?;
        let mut count = 0usize;
        let mut skipped = 0usize;
        for x in &uni {
            for y in &uni {
                let pxy = product(x, y)?;
                let pyx = product(y, x)?;
                let frees = (|| {
                    Ok((
                        free(x, &field, &limits)?,
                        free(y, &field, &limits)?,
                        free(&pxy.space, &field, &limits)?,
                        free(&pyx.space, &field, &limits)?,
                    ))
                })();
                let (fx, fy, fxy, fyx) = match frees {
                    Ok(t) => t,
                    Err(Error::BoundExceeded(_)) => {
                        skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let (txy, fwd_xy, _) = strong_monoidal_iso(&fx, &fy, &pxy, &fxy, &limits)?;
                let (tyx, fwd_yx, _) = strong_monoidal_iso(&fy, &fx, &pyx, &fyx, &limits)?;
                // Symmetry square: swapping tensor factors then comparing
                // agrees with comparing then swapping product factors.
                let swap_tab: Vec<usize> = (0..pxy.space.points())
                    .map(|i| {
                        let (a, b) = pxy.unpair(i);
                        pyx.pair(b, a)
                    })
                    .collect();
                let swap =
                    ContMap::new(pxy.space.clone(), pyx.space.clone(), swap_tab)?;
                let f_swap =
                    free_transpose(&fxy, &swap.then(&fyx.insertion)?, &fyx.vect)?;
                let t_swap = tensor_swap(&txy, &tyx)?;
                if t_swap.then(&fwd_yx)? != fwd_xy.then(&f_swap)? {
                    return Err(Error::MismatchedConstructions(
                        "symmetry square does not commute".into(),
                    ));
                }
                count += 1;
            }
        }
        Ok(format!(
            "{count} monoidal comparison pairs verified ({skipped} beyond carrier bounds)"
        ))
    })())
}

/// Criterion 4: exact monad laws for the distribution and
/// double-dualization monads over the universe.
pub fn check_monad_laws(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("monad-laws", (|| {
        let field = field(cfg)?;
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let uni = spaces(cfg)?;
        let mut skipped = 0usize;
        let mut d_count = 0usize;
        for x in &uni {
            match check_d_monad_laws(x, &field, &limits) {
                Ok(()) => d_count += 1,
                Err(Error::BoundExceeded(_)) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        let vects = vect_universe(cfg, &limits)?;
        let mut h_count = 0usize;
        for e in &vects {
            match check_h_monad_laws(e, &limits) {
                Ok(()) => h_count += 1,
                Err(Error::BoundExceeded(_)) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(format!(
            "distribution laws on {d_count} spaces, double-dual laws on {h_count} objects ({skipped} beyond carrier bounds)"
        ))
    })())
}

/// All ordered pairs of universe spaces whose product instance fits within
/// the carrier bounds, with the out-of-bounds count.
fn feasible_instances(
    cfg: &SuiteConfig,
) -> Result<(Vec<(ConvSpace, ConvSpace, crate::monadlab::FubiniInstance)>, usize)> {
    let field = field(cfg)?;
    let limits = Limits {
        max_carrier: cfg.max_carrier,
        iteration_budget: cfg.iteration_budget,
    };
    let uni = spaces(cfg)?;
    let mut out = Vec::new();
    let mut skipped = 0usize;
    for x in &uni {
        for y in &uni {
            match fubini_instance(x, y, &field, &limits) {
                Ok(inst) => out.push((x.clone(), y.clone(), inst)),
                Err(Error::BoundExceeded(_)) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok((out, skipped))
}

/// Criterion 5: both abstract tensor composites evaluate to the iterated
/// double sums — the instance constructor verifies the table equality and
/// fails otherwise.
pub fn check_tensor_iterated(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("tensor-vs-iterated", (|| {
        let (instances, skipped) = feasible_instances(cfg)?;
        Ok(format!(
            "{} instances with equal tables ({} beyond carrier bounds)",
            instances.len(),
            skipped
        ))
    })())
}

/// Criterion 6: the dual of the double-dual unit of a free space retracts
/// the double-dual unit of the dual, on every universe space.
pub fn check_retraction(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("retraction-identity", (|| {
        let field = field(cfg)?;
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let uni = spaces(cfg)?;
        for x in &uni {
            if !crate::factorlab::reflexivity_retraction_check(x, &field, &limits)? {
                return Err(Error::MismatchedConstructions(
                    "retraction identity fails".into(),
                ));
            }
        }
        Ok(format!("retraction identity exact on {} spaces", uni.len()))
    })())
}

/// Criterion 7: whenever all three function spaces are reflexive, the two
/// tensors agree — zero tolerated failures.
pub fn check_main_implication(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("main-implication", (|| {
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let (instances, skipped) = feasible_instances(cfg)?;
        let mut reflexive = 0usize;
        for (_, _, inst) in &instances {
            let verdict = check_commutative(inst, &limits)?;
            if !verdict.implication_holds {
                return Err(Error::MismatchedConstructions(format!(
                    "implication fails with witness {:?}",
                    verdict.witness
                )));
            }
            if verdict.reflexive.x && verdict.reflexive.y && verdict.reflexive.xy {
                reflexive += 1;
            }
        }
        Ok(format!(
            "{} instances ({} fully reflexive, {} beyond carrier bounds), implication exact",
            instances.len(),
            reflexive,
            skipped
        ))
    })())
}

/// Criterion 8: on the reflexive instances, the intermediate links pass —
/// the double-dual unit of the free space is inverted by double
/// dualization, the completion comparison component is an isomorphism, and
/// the unit triangle closes exactly.
pub fn check_chain_localization(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("chain-localization", (|| {
        let field = field(cfg)?;
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let (instances, _) = feasible_instances(cfg)?;
        let mut bases: Vec<ConvSpace> = Vec::new();
        for (x, y, inst) in &instances {
            let verdict = check_commutative(inst, &limits)?;
            if !(verdict.reflexive.x && verdict.reflexive.y && verdict.reflexive.xy) {
                continue;
            }
            for w in [x.clone(), y.clone(), inst.prod.space.clone()] {
                if !bases.contains(&w) {
                    bases.push(w);
                }
            }
        }
        let mut checked = 0usize;
        let mut cross_checked = 0usize;
        let mut skipped = 0usize;
        for w in &bases {
            let fw = match free(w, &field, &limits) {
                Ok(fw) => fw.vect,
                Err(Error::BoundExceeded(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let hw = HObject::new(&fw, &limits)?;
            let del = partial_map(&hw)?;
            // Link 1: the unit is inverted by double dualization.
            let h_del = h_map(&hw, &HObject::new(hw.he(), &limits)?, &del)?;
            if h_del.is_isomorphism().is_none() {
                return Err(Error::MismatchedConstructions(
                    "double-dual unit of a free space is not inverted".into(),
                ));
            }
            // Links 2 and 3: the reflection unit is the surjective part of
            // the double-dual unit; the comparison into the double dual is
            // the embedding part, and it must be an isomorphism closing the
            // triangle i ∘ ρ = ∂.
            let pair = epi_strongmono_factorize(&del, &limits)?;
            let (rho, i) = (&pair.epi_part, &pair.mono_part);
            if i.is_isomorphism().is_none() {
                return Err(Error::MismatchedConstructions(
                    "completion comparison is not an isomorphism".into(),
                ));
            }
            if !is_strong_mono(i) {
                return Err(Error::MismatchedConstructions(
                    "completion comparison is not a strong mono".into(),
                ));
            }
            if rho.then(i)? != del {
                return Err(Error::MismatchedConstructions(
                    "comparison triangle does not commute".into(),
                ));
            }
            // The reflected object must itself be inverted by evaluation —
            // reflexive objects are orthogonal to everything double
            // dualization inverts, so this certifies completeness without
            // materializing the large hom carriers.
            if !matches!(
                crate::monadlab::is_reflexive(rho.cod(), &limits)?,
                crate::monadlab::ReflexivityOutcome::Reflexive(_)
            ) {
                return Err(Error::MismatchedConstructions(
                    "reflected object is not reflexive".into(),
                ));
            }
            // Where the hom carriers stay within bounds, cross-check
            // against the full iterated reflection.
            match completion(&fw, &[del.clone()], &limits) {
                Ok((_, unit)) => {
                    let lifted = lift_along(&unit, &del)?;
                    if unit.then(&lifted)? != del {
                        return Err(Error::MismatchedConstructions(
                            "iterated reflection disagrees with the factorization".into(),
                        ));
                    }
                    cross_checked += 1;
                }
                Err(Error::BoundExceeded(_)) => {}
                Err(e) => return Err(e),
            }
            checked += 1;
        }
        Ok(format!(
            "all three links verified on {checked} free spaces ({cross_checked} with full reflection cross-check, {skipped} beyond carrier bounds)"
        ))
    })())
}

/// Criterion 9: the enrichment derived from the monoidal data agrees with
/// the direct functorial action on every universe pair.
pub fn check_enrichment_roundtrip(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("enrichment-roundtrip", (|| {
        let field = field(cfg)?;
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let uni = spaces(cfg)?;
        let mut count = 0usize;
        let mut skipped = 0usize;
        for x in &uni {
            for y in &uni {
                match enrichment_roundtrip_check(x, y, &field, &limits) {
                    Ok(()) => count += 1,
                    Err(Error::BoundExceeded(_)) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(format!(
            "{count} enrichment round-trips exact ({skipped} beyond carrier bounds)"
        ))
    })())
}

/// Criterion 10: the categorical tensor on discrete spaces agrees with the
/// independent double-sum oracle — exhaustively over the configured prime,
/// and on at least 100 seeded random rational instances.
pub fn check_oracle(cfg: &SuiteConfig) -> CheckOutcome {
    outcome("oracle-agreement", (|| {
        // Rational instances from the recorded seed.
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut random = 0usize;
        while random < 100 {
            let nx = rng.gen_range(1..=3usize);
            let ny = rng.gen_range(1..=3usize);
            let draw = |rng: &mut ChaCha8Rng| -> Rational {
                rat(rng.gen_range(-9..=9i128), rng.gen_range(1..=9i128))
            };
            let mu: Vec<Rational> = (0..nx).map(|_| draw(&mut rng)).collect();
            let nu: Vec<Rational> = (0..ny).map(|_| draw(&mut rng)).collect();
            let f: Vec<Vec<Rational>> =
                (0..nx).map(|_| (0..ny).map(|_| draw(&mut rng)).collect()).collect();
            let (lhs, rhs, product) = oracle_discrete_fubini(&mu, &nu, &f)?;
            if lhs != rhs || rhs != product {
                return Err(Error::MismatchedConstructions(format!(
                    "oracle sums disagree at random instance {random}"
                )));
            }
            random += 1;
        }
        // Exhaustive agreement with the categorical tensor on discrete
        // spaces over the configured prime.
        let field = field(cfg)?;
        let p = field.order();
        let limits = Limits {
            max_carrier: cfg.max_carrier,
            iteration_budget: cfg.iteration_budget,
        };
        let mut exhaustive = 0usize;
        for nx in 1..=cfg.max_size.min(2) {
            for ny in 1..=cfg.max_size.min(2) {
                let x = ConvSpace::discrete(nx, cfg.axioms.mode());
                let y = ConvSpace::discrete(ny, cfg.axioms.mode());
                let inst = match fubini_instance(&x, &y, &field, &limits) {
                    Ok(inst) => inst,
                    Err(Error::BoundExceeded(_)) => continue,
                    Err(e) => return Err(e),
                };
                for mu in 0..inst.dx.points() {
                    let wx = inst.dx.weights(mu);
                    for nu in 0..inst.dy.points() {
                        let wy = inst.dy.weights(nu);
                        for g in 0..inst.dz.functions.vect().space.points() {
                            let matrix: Vec<Vec<usize>> = (0..nx)
                                .map(|a| {
                                    (0..ny)
                                        .map(|b| {
                                            inst.dz
                                                .functions
                                                .eval(g, inst.prod.pair(a, b))
                                        })
                                        .collect()
                                })
                                .collect();
                            let (lhs, rhs, product) =
                                oracle_discrete_fubini_mod(&wx, &wy, &matrix, p)?;
                            let via_t = inst.dz.pairing(inst.otimes(mu, nu), g);
                            let via_tt = inst.dz.pairing(inst.otimes_tilde(mu, nu), g);
                            if via_t != product || via_tt != product || lhs != rhs {
                                return Err(Error::MismatchedConstructions(format!(
                                    "tensor disagrees with the oracle at ({mu},{nu},{g})"
                                )));
                            }
                            exhaustive += 1;
                        }
                    }
                }
            }
        }
        Ok(format!(
            "100 random rational instances and {exhaustive} exhaustive F{p} triples agree"
        ))
    })())
}

/// The fixed order of all suite checks.
pub fn all_checks(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    vec![
        check_cartesian_closed(cfg),
        check_free_adjunction(cfg),
        check_strong_monoidal(cfg),
        check_monad_laws(cfg),
        check_tensor_iterated(cfg),
        check_retraction(cfg),
        check_main_implication(cfg),
        check_chain_localization(cfg),
        check_enrichment_roundtrip(cfg),
        check_oracle(cfg),
    ]
}
