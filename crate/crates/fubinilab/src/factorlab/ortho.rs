//! Enriched monos, epis, strong monos, orthogonality certificates, and the
//! (surjection, initial-injection) factorization of linear maps.

use crate::convspace::{canonical_antichain, embed_initial, pullback, ContMap, ConvSpace};
use crate::convvect::{internal_hom, lin_hom_set, ConvVect, HomVect, Limits, LinMap};
use crate::error::{Error, Result};
use serde_json::{json, Value};

/// Whether `m` is injective on points.
pub fn is_pointwise_mono(m: &LinMap) -> bool {
    let mut seen = vec![false; m.cod().space.points()];
    m.point_fn().iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Whether `m` is surjective on points.
pub fn is_pointwise_epi(m: &LinMap) -> bool {
    let mut seen = vec![false; m.cod().space.points()];
    for &y in m.point_fn() {
        seen[y] = true;
    }
    seen.iter().all(|&s| s)
}

/// Post-composition with `m` as a map of hom carriers: `L(A, dom m) → L(A, cod m)`.
fn postcompose_table(a: &HomVect, b: &HomVect, m: &LinMap) -> Result<Vec<usize>> {
    (0..a.points())
        .map(|f| {
            let values: Vec<usize> =
                (0..a.dom.space.points()).map(|x| m.point_fn()[a.eval(f, x)]).collect();
            b.index_of(&values)
                .ok_or_else(|| Error::Invalid("post-composite is not carried".into()))
        })
        .collect()
}

/// Pre-composition with `m` as a map of hom carriers: `L(cod m, A) → L(dom m, A)`.
fn precompose_table(a: &HomVect, b: &HomVect, m: &LinMap) -> Result<Vec<usize>> {
    (0..a.points())
        .map(|g| {
            let values: Vec<usize> =
                m.point_fn().iter().map(|&y| a.eval(g, y)).collect();
            b.index_of(&values)
                .ok_or_else(|| Error::Invalid("pre-composite is not carried".into()))
        })
        .collect()
}

fn table_injective(table: &[usize], cod_points: usize) -> bool {
    let mut seen = vec![false; cod_points];
    table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Whether post-composition with `m` is injective on `L(A, -)` for every
/// `A` in the universe; cross-checked against pointwise injectivity.
pub fn is_v_mono(m: &LinMap, universe: &[ConvVect], limits: &Limits) -> Result<bool> {
    let mut enriched = true;
    for a in universe {
        let ha = internal_hom(a, m.dom(), limits)?;
        let hb = internal_hom(a, m.cod(), limits)?;
        if !table_injective(&postcompose_table(&ha, &hb, m)?, hb.points()) {
            enriched = false;
            break;
        }
    }
    let pointwise = is_pointwise_mono(m);
    if enriched != pointwise {
        return Err(Error::MismatchedConstructions(
            "enriched and pointwise mono verdicts disagree".into(),
        ));
    }
    Ok(pointwise)
}

/// Whether pre-composition with `m` is injective on `L(-, A)` for every
/// `A` in the universe; cross-checked against pointwise surjectivity.
pub fn is_v_epi(m: &LinMap, universe: &[ConvVect], limits: &Limits) -> Result<bool> {
    let mut enriched = true;
    for a in universe {
        let hb = internal_hom(m.cod(), a, limits)?;
        let ha = internal_hom(m.dom(), a, limits)?;
        if !table_injective(&precompose_table(&hb, &ha, m)?, ha.points()) {
            enriched = false;
            break;
        }
    }
    let pointwise = is_pointwise_epi(m);
    if enriched != pointwise {
        return Err(Error::MismatchedConstructions(
            "enriched and pointwise epi verdicts disagree".into(),
        ));
    }
    Ok(pointwise)
}

/// Whether `m` is injective and its domain carries the structure induced
/// from the codomain (an initial embedding).
pub fn is_strong_mono(m: &LinMap) -> bool {
    if !is_pointwise_mono(m) {
        return false;
    }
    let dom = &m.dom().space;
    let cod = &m.cod().space;
    let n = dom.points();
    for x in 0..n {
        // Maximal sets of the induced structure: full preimages of the
        // maximal sets at the image point.
        let preimages: Vec<u64> = cod
            .max_sets(m.point_fn()[x])
            .iter()
            .map(|&g| {
                let mut mask = 0u64;
                for (j, &y) in m.point_fn().iter().enumerate() {
                    if g & (1u64 << y) != 0 {
                        mask |= 1u64 << j;
                    }
                }
                mask
            })
            .filter(|&mask| mask != 0)
            .collect();
        if canonical_antichain(&preimages) != dom.max_sets(x) {
            return false;
        }
    }
    true
}

/// Failure evidence for an orthogonality check.
#[derive(Debug, Clone)]
pub enum OrthoWitness {
    /// A commuting square (given by its two legs, as hom-carrier indices)
    /// with no diagonal filler.
    MissingFiller { restriction: usize, push: usize },
    /// Two distinct fillers of the same square.
    NonUniqueFiller { first: usize, second: usize },
}

/// The four hom-objects of an orthogonality square, the comparison into
/// their pullback, and the verdict.
#[derive(Debug, Clone)]
pub struct OrthogonalityCertificate {
    pub hom_bc: HomVect,
    pub hom_ac: HomVect,
    pub hom_bd: HomVect,
    pub hom_ad: HomVect,
    pub pullback_space: ConvSpace,
    pub comparison: ContMap,
    pub verdict: bool,
    pub witness: Option<OrthoWitness>,
}

impl OrthogonalityCertificate {
    /// Full audit serialization, including every hom-object table.
    pub fn to_json(&self) -> Value {
        let hom = |h: &HomVect| -> Value {
            json!({
                "space": h.vect.space.to_json(),
                "maps": (0..h.points()).map(|i| h.map(i).point_fn().to_vec()).collect::<Vec<_>>(),
            })
        };
        json!({
            "hom_bc": hom(&self.hom_bc),
            "hom_ac": hom(&self.hom_ac),
            "hom_bd": hom(&self.hom_bd),
            "hom_ad": hom(&self.hom_ad),
            "pullback": self.pullback_space.to_json(),
            "comparison": self.comparison.point_fn().to_vec(),
            "verdict": self.verdict,
            "witness": match &self.witness {
                None => Value::Null,
                Some(OrthoWitness::MissingFiller { restriction, push }) => {
                    json!({"missing_filler": {"restriction": restriction, "push": push}})
                }
                Some(OrthoWitness::NonUniqueFiller { first, second }) => {
                    json!({"non_unique_filler": {"first": first, "second": second}})
                }
            },
        })
    }
}

/// Decides enriched orthogonality `e ⊥ m` by testing whether the square of
/// hom-objects (restriction along `e` against post-composition with `m`) is
/// a pullback of convergence spaces.
pub fn is_orthogonal(
    e: &LinMap,
    m: &LinMap,
    limits: &Limits,
) -> Result<OrthogonalityCertificate> {
    let (a, b) = (e.dom(), e.cod());
    let (c, d) = (m.dom(), m.cod());
    let hom_bc = internal_hom(b, c, limits)?;
    let hom_ac = internal_hom(a, c, limits)?;
    let hom_bd = internal_hom(b, d, limits)?;
    let hom_ad = internal_hom(a, d, limits)?;
    let pre_e_c = precompose_table(&hom_bc, &hom_ac, e)?;
    let post_m_b = postcompose_table(&hom_bc, &hom_bd, m)?;
    let post_m_a = ContMap::new(
        hom_ac.vect.space.clone(),
        hom_ad.vect.space.clone(),
        postcompose_table(&hom_ac, &hom_ad, m)?,
    )?;
    let pre_e_d = ContMap::new(
        hom_bd.vect.space.clone(),
        hom_ad.vect.space.clone(),
        precompose_table(&hom_bd, &hom_ad, e)?,
    )?;
    let (pb, to_ac, to_bd) = pullback(&post_m_a, &pre_e_d)?;
    // The comparison sends a map B → C to its pair of composites.
    let table: Vec<usize> = (0..hom_bc.points())
        .map(|f| {
            (0..pb.points())
                .find(|&j| to_ac.apply(j) == pre_e_c[f] && to_bd.apply(j) == post_m_b[f])
                .ok_or_else(|| Error::Invalid("square of a hom point missing in pullback".into()))
        })
        .collect::<Result<_>>()?;
    let comparison = ContMap::new(hom_bc.vect.space.clone(), pb.clone(), table)?;
    let mut witness = None;
    // Injectivity: at most one filler per square.
    let mut hit = vec![usize::MAX; pb.points()];
    for (f, &j) in comparison.point_fn().iter().enumerate() {
        if hit[j] != usize::MAX {
            witness = Some(OrthoWitness::NonUniqueFiller { first: hit[j], second: f });
            break;
        }
        hit[j] = f;
    }
    // Surjectivity: every square has a filler.
    if witness.is_none() {
        if let Some(j) = (0..pb.points()).find(|&j| hit[j] == usize::MAX) {
            witness = Some(OrthoWitness::MissingFiller {
                restriction: to_ac.apply(j),
                push: to_bd.apply(j),
            });
        }
    }
    let verdict = witness.is_none() && comparison.is_isomorphism().is_some();
    Ok(OrthogonalityCertificate {
        hom_bc,
        hom_ac,
        hom_bd,
        hom_ad,
        pullback_space: pb,
        comparison,
        verdict,
        witness,
    })
}

/// Ordinary (unenriched) orthogonality: every commuting square from `e` to
/// `m` has exactly one diagonal filler.
pub fn ordinary_orthogonal(e: &LinMap, m: &LinMap) -> Result<bool> {
    let us = lin_hom_set(e.dom(), m.dom())?;
    let vs = lin_hom_set(e.cod(), m.cod())?;
    let ws = lin_hom_set(e.cod(), m.dom())?;
    for u in &us {
        let um = u.then(m)?;
        for v in vs.iter().filter(|v| e.then(v).unwrap() == um) {
            let fillers = ws
                .iter()
                .filter(|w| &e.then(w).unwrap() == u && &w.then(m).unwrap() == v)
                .count();
            if fillers != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A factorization of a linear map as a surjection followed by an
/// injective initial embedding.
#[derive(Debug, Clone)]
pub struct FactorizationPair {
    pub epi_part: LinMap,
    pub mono_part: LinMap,
}

impl FactorizationPair {
    pub fn composite(&self) -> Result<LinMap> {
        self.epi_part.then(&self.mono_part)
    }
}

/// Factors `f` through its image.  The image carries the structure induced
/// from the codomain, so the injective part is an initial embedding; the
/// corestriction of `f` is then continuous because `f` is.
pub fn epi_strongmono_factorize(f: &LinMap, limits: &Limits) -> Result<FactorizationPair> {
    let dom = f.dom();
    let cod = f.cod();
    let mut img: Vec<usize> = f.point_fn().to_vec();
    img.sort_unstable();
    img.dedup();
    let mut idx = vec![usize::MAX; cod.space.points()];
    for (i, &y) in img.iter().enumerate() {
        idx[y] = i;
    }
    let get = |y: usize| -> Result<usize> {
        if idx[y] == usize::MAX {
            Err(Error::Invalid("image of a linear map is not closed".into()))
        } else {
            Ok(idx[y])
        }
    };
    let p = cod.field.order();
    let add: Vec<Vec<usize>> = img
        .iter()
        .map(|&y| img.iter().map(|&z| get(cod.add(y, z))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let smul: Vec<Vec<usize>> = (0..p)
        .map(|c| img.iter().map(|&y| get(cod.smul(c, y))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let zero = get(cod.zero())?;
    let quot: Vec<usize> = f.point_fn().iter().map(|&y| idx[y]).collect();
    let mut mask = 0u64;
    for &y in &img {
        mask |= 1u64 << y;
    }
    let (space, _, sub_points) = embed_initial(&cod.space, mask)?;
    debug_assert_eq!(sub_points, img);
    let mid = ConvVect::new(space, cod.field.clone(), zero, add, smul, limits)?;
    let epi_part = LinMap::new(dom.clone(), mid.clone(), quot)?;
    let mono_part = LinMap::new(mid, cod.clone(), img)?;
    Ok(FactorizationPair { epi_part, mono_part })
}
