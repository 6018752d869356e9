//! Convergence vector spaces over a prime field.
//!
//! A convergence vector space is a finite convergence space whose carrier
//! also carries `F_p`-vector-space tables, with addition continuous as a map
//! out of the product and each scalar action continuous.  Morphisms are
//! continuous linear maps.
//!
//! Free objects and tensor products compute their convergence structure as
//! the least fixed point of the closure rules (point filters, down-closure,
//! optional union-closure, sums of converging sets converge to the sum,
//! scalar multiples likewise), seeded by the generating data.

mod free;
mod hom;
mod tensor;

pub use free::{free, free_transpose, restrict_along_insertion, FreeVect};
pub use hom::{
    cotensor_general, cotensor_hom_iso, dual, dual_map, internal_hom, scalar_cotensor,
    scalar_functions, CotensorVect, HomVect, ScalarFunctions,
};
pub use tensor::{
    from_bilinear, strong_monoidal_iso, tensor, tensor_swap, tensor_unit_iso, TensorVect,
};

use crate::convspace::{AxiomMode, ConvSpace, ContMap};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// Size limits shared by the carrier-producing operations.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest admissible vector-space carrier.
    pub max_carrier: usize,
    /// Completion iteration budget.
    pub iteration_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_carrier: 64, iteration_budget: 8 }
    }
}

/// A basis of a convergence vector space: the basis points and, for every
/// carrier point, its coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub points: Vec<usize>,
    pub coords: Vec<Vec<usize>>,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.points.len()
    }
}

/// A convergence vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvVect {
    pub space: ConvSpace,
    pub field: Field,
    zero: usize,
    add: Vec<Vec<usize>>,
    smul: Vec<Vec<usize>>,
}

impl ConvVect {
    /// Builds a convergence vector space, verifying the vector-space axioms
    /// exhaustively and the continuity of addition and scalar action.
    pub fn new(
        space: ConvSpace,
        field: Field,
        zero: usize,
        add: Vec<Vec<usize>>,
        smul: Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<ConvVect> {
        let n = space.points();
        if n > limits.max_carrier {
            return Err(Error::BoundExceeded(format!(
                "carrier of {n} points exceeds limit {}",
                limits.max_carrier
            )));
        }
        let p = field.order();
        if add.len() != n
            || add.iter().any(|r| r.len() != n)
            || smul.len() != p
            || smul.iter().any(|r| r.len() != n)
        {
            return Err(Error::DimensionMismatch("operation table shapes".into()));
        }
        if n == 0 {
            return Err(Error::AxiomViolation("a vector space needs a zero".into()));
        }
        let v = ConvVect { space, field, zero, add, smul };
        v.verify_axioms()?;
        v.verify_continuity()?;
        Ok(v)
    }

    fn verify_axioms(&self) -> Result<()> {
        let n = self.space.points();
        let p = self.field.order();
        let fail = |what: &str| Err(Error::AxiomViolation(what.into()));
        for u in 0..n {
            if self.add(u, self.zero) != u || self.smul(1 % p, u) != u {
                return fail("identity laws");
            }
            if self.add(u, self.smul(p - 1, u)) != self.zero {
                return fail("additive inverse");
            }
            if self.smul(0, u) != self.zero {
                return fail("zero scalar");
            }
            for v in 0..n {
                if self.add(u, v) != self.add(v, u) {
                    return fail("commutativity");
                }
                for w in 0..n {
                    if self.add(self.add(u, v), w) != self.add(u, self.add(v, w)) {
                        return fail("associativity");
                    }
                }
                for c in 0..p {
                    if self.smul(c, self.add(u, v)) != self.add(self.smul(c, u), self.smul(c, v)) {
                        return fail("distributivity over vectors");
                    }
                }
            }
            for c in 0..p {
                for c2 in 0..p {
                    if self.smul(c, self.smul(c2, u)) != self.smul(self.field.mul(c, c2), u) {
                        return fail("scalar associativity");
                    }
                    if self.smul(self.field.add(c, c2), u)
                        != self.add(self.smul(c, u), self.smul(c2, u))
                    {
                        return fail("distributivity over scalars");
                    }
                }
            }
        }
        Ok(())
    }

    /// Addition is continuous on the product exactly when the sum of any two
    /// maximal converging sets converges to the sum of the limit points.
    fn verify_continuity(&self) -> Result<()> {
        let n = self.space.points();
        for u in 0..n {
            for v in 0..n {
                for &gu in self.space.max_sets(u) {
                    for &gv in self.space.max_sets(v) {
                        if !self.space.converges(self.add(u, v), self.sumset(gu, gv)) {
                            return Err(Error::NotContinuous(format!(
                                "addition at ({u}, {v})"
                            )));
                        }
                    }
                }
            }
            for c in self.field.elems() {
                for &g in self.space.max_sets(u) {
                    if !self.space.converges(self.smul(c, u), self.smul_mask(c, g)) {
                        return Err(Error::NotContinuous(format!(
                            "scalar action of {c} at {u}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    /// JSON encoding: the underlying convergence space, the field order,
    /// and the full operation tables.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.to_json(),
            "field": self.field.order(),
            "zero": self.zero,
            "add": self.add,
            "smul": self.smul,
        })
    }

    pub fn add(&self, u: usize, v: usize) -> usize {
        self.add[u][v]
    }

    pub fn smul(&self, c: usize, u: usize) -> usize {
        self.smul[c][u]
    }

    pub fn neg(&self, u: usize) -> usize {
        self.smul(self.field.order() - 1, u)
    }

    pub fn sub(&self, u: usize, v: usize) -> usize {
        self.add(u, self.neg(v))
    }

    /// Element-wise sum `{a + b : a ∈ s, b ∈ t}` as a bitmask.
    pub fn sumset(&self, s: u64, t: u64) -> u64 {
        let mut out = 0u64;
        let mut a = s;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            let mut b = t;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                out |= 1u64 << self.add[i][j];
                b &= b - 1;
            }
            a &= a - 1;
        }
        out
    }

    /// Element-wise scalar multiple of a bitmask.
    pub fn smul_mask(&self, c: usize, s: u64) -> u64 {
        let mut out = 0u64;
        let mut a = s;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            out |= 1u64 << self.smul[c][i];
            a &= a - 1;
        }
        out
    }

    /// A deterministic basis (greedy over ascending carrier points) together
    /// with coordinates for every carrier point.
    pub fn basis(&self) -> Basis {
        let n = self.space.points();
        let p = self.field.order();
        let mut coords: Vec<Option<Vec<usize>>> = vec![None; n];
        coords[self.zero] = Some(vec![]);
        let mut points = Vec::new();
        for v in 0..n {
            if coords[v].is_some() {
                continue;
            }
            points.push(v);
            let spanned: Vec<usize> =
                (0..n).filter(|&u| coords[u].is_some()).collect();
            for &u in &spanned {
                let mut base = coords[u].clone().expect("spanned point");
                base.resize(points.len() - 1, 0);
                for c in 1..p {
                    let w = self.add(u, self.smul(c, v));
                    if coords[w].is_none() {
                        let mut cw = base.clone();
                        cw.push(c);
                        coords[w] = Some(cw);
                    }
                }
            }
        }
        let dim = points.len();
        let coords = coords
            .into_iter()
            .map(|c| {
                let mut c = c.expect("carrier is spanned by its basis");
                c.resize(dim, 0);
                c
            })
            .collect();
        Basis { points, coords }
    }

    /// The linear combination `Σ cᵢ·vᵢ`.
    pub fn combination(&self, terms: &[(usize, usize)]) -> usize {
        terms
            .iter()
            .fold(self.zero, |acc, &(c, v)| self.add(acc, self.smul(c, v)))
    }

    pub fn mode(&self) -> AxiomMode {
        self.space.mode()
    }
}

/// The scalar field as a one-dimensional discrete convergence vector space.
pub fn scalar_object(field: &Field, mode: AxiomMode) -> ConvVect {
    let p = field.order();
    let space = ConvSpace::discrete(p, mode);
    let add = (0..p).map(|a| (0..p).map(|b| field.add(a, b)).collect()).collect();
    let smul = (0..p).map(|c| (0..p).map(|v| field.mul(c, v)).collect()).collect();
    ConvVect::new(space, field.clone(), 0, add, smul, &Limits::default())
        .expect("the scalar object is a convergence vector space")
}

/// A continuous linear map between convergence vector spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LinMap {
    dom: ConvVect,
    cod: ConvVect,
    map: Vec<usize>,
}

impl LinMap {
    /// Builds a continuous linear map, verifying linearity and continuity.
    pub fn new(dom: ConvVect, cod: ConvVect, map: Vec<usize>) -> Result<LinMap> {
        if dom.field != cod.field {
            return Err(Error::DimensionMismatch("maps across different fields".into()));
        }
        let n = dom.space.points();
        if map.len() != n || map.iter().any(|&y| y >= cod.space.points()) {
            return Err(Error::DimensionMismatch("linear map table shape".into()));
        }
        for u in 0..n {
            for v in 0..n {
                if map[dom.add(u, v)] != cod.add(map[u], map[v]) {
                    return Err(Error::NotLinearizable(format!("additivity at ({u}, {v})")));
                }
            }
            for c in dom.field.elems() {
                if map[dom.smul(c, u)] != cod.smul(c, map[u]) {
                    return Err(Error::NotLinearizable(format!("homogeneity at ({c}, {u})")));
                }
            }
        }
        if !crate::convspace::is_point_fn_continuous(&dom.space, &cod.space, &map) {
            return Err(Error::NotContinuous("linear map".into()));
        }
        Ok(LinMap { dom, cod, map })
    }

    pub(crate) fn unchecked(dom: ConvVect, cod: ConvVect, map: Vec<usize>) -> LinMap {
        LinMap { dom, cod, map }
    }

    pub fn identity(e: &ConvVect) -> LinMap {
        LinMap::unchecked(e.clone(), e.clone(), (0..e.space.points()).collect())
    }

    pub fn zero_map(dom: &ConvVect, cod: &ConvVect) -> LinMap {
        LinMap::unchecked(dom.clone(), cod.clone(), vec![cod.zero; dom.space.points()])
    }

    pub fn dom(&self) -> &ConvVect {
        &self.dom
    }

    pub fn cod(&self) -> &ConvVect {
        &self.cod
    }

    pub fn apply(&self, u: usize) -> usize {
        self.map[u]
    }

    pub fn point_fn(&self) -> &[usize] {
        &self.map
    }

    /// The underlying continuous map.
    pub fn as_cont_map(&self) -> ContMap {
        ContMap::new(self.dom.space.clone(), self.cod.space.clone(), self.map.clone())
            .expect("a linear map carries a continuous point function")
    }

    /// Post-composition: `self.then(g) = g ∘ self`.
    pub fn then(&self, g: &LinMap) -> Result<LinMap> {
        if self.cod != g.dom {
            return Err(Error::DimensionMismatch("composition of linear maps".into()));
        }
        let map = self.map.iter().map(|&u| g.map[u]).collect();
        Ok(LinMap::unchecked(self.dom.clone(), g.cod.clone(), map))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.space.points()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.space.points()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// Returns the (automatically linear) continuous inverse if this map is
    /// an isomorphism of convergence vector spaces.
    pub fn is_isomorphism(&self) -> Option<LinMap> {
        if self.dom.space.points() != self.cod.space.points() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0usize; self.map.len()];
        for (u, &y) in self.map.iter().enumerate() {
            inv[y] = u;
        }
        if !crate::convspace::is_point_fn_continuous(&self.cod.space, &self.dom.space, &inv) {
            return None;
        }
        Some(LinMap::unchecked(self.cod.clone(), self.dom.clone(), inv))
    }
}

/// All continuous linear maps `e1 → e2`, enumerated by ascending tuples of
/// basis images (the image of the first basis point is least significant).
pub fn lin_hom_set(e1: &ConvVect, e2: &ConvVect) -> Result<Vec<LinMap>> {
    let b1 = e1.basis();
    let n2 = e2.space.points();
    let d1 = b1.dim();
    let total = (n2 as u128).checked_pow(d1 as u32);
    match total {
        Some(t) if t <= 1 << 20 => {}
        _ => return Err(Error::BoundExceeded(format!("{n2}^{d1} linear maps"))),
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; d1];
    loop {
        let map: Vec<usize> = (0..e1.space.points())
            .map(|u| {
                let terms: Vec<(usize, usize)> = b1.coords[u]
                    .iter()
                    .zip(&images)
                    .map(|(&c, &img)| (c, img))
                    .collect();
                e2.combination(&terms)
            })
            .collect();
        if crate::convspace::is_point_fn_continuous(&e1.space, &e2.space, &map) {
            out.push(LinMap::unchecked(e1.clone(), e2.clone(), map));
        }
        let mut i = 0;
        loop {
            if i == d1 {
                return Ok(out);
            }
            images[i] += 1;
            if images[i] < n2 {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

/// Least convergence structure on a vector-space carrier that contains the
/// seeds and is closed under the vector rules, returned as per-point
/// antichains of maximal sets.
pub(crate) fn vector_convergence(
    n: usize,
    field: &Field,
    add: &[Vec<usize>],
    smul: &[Vec<usize>],
    seeds: &[(usize, u64)],
    mode: AxiomMode,
) -> Vec<Vec<u64>> {
    let sumset = |s: u64, t: u64| -> u64 {
        let mut out = 0u64;
        let mut a = s;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            let mut b = t;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                out |= 1u64 << add[i][j];
                b &= b - 1;
            }
            a &= a - 1;
        }
        out
    };
    let smul_mask = |c: usize, s: u64| -> u64 {
        let mut out = 0u64;
        let mut a = s;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            out |= 1u64 << smul[c][i];
            a &= a - 1;
        }
        out
    };
    match mode {
        AxiomMode::Limit => {
            // Union closure collapses each family to a single maximal set.
            let mut max: Vec<u64> = (0..n).map(|u| 1u64 << u).collect();
            for &(u, m) in seeds {
                max[u] |= m;
            }
            loop {
                let mut changed = false;
                for u in 0..n {
                    for v in 0..n {
                        let m = sumset(max[u], max[v]);
                        let t = add[u][v];
                        if max[t] | m != max[t] {
                            max[t] |= m;
                            changed = true;
                        }
                    }
                    for c in field.elems() {
                        let m = smul_mask(c, max[u]);
                        let t = smul[c][u];
                        if max[t] | m != max[t] {
                            max[t] |= m;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    return max.into_iter().map(|m| vec![m]).collect();
                }
            }
        }
        AxiomMode::DownOnly => {
            let mut gens: Vec<Vec<u64>> = (0..n).map(|u| vec![1u64 << u]).collect();
            for &(u, m) in seeds {
                gens[u].push(m);
            }
            for g in &mut gens {
                *g = crate::convspace::canonical_antichain(g);
            }
            loop {
                let mut changed = false;
                for u in 0..n {
                    for v in 0..n {
                        let t = add[u][v];
                        let new: Vec<u64> = gens[u]
                            .iter()
                            .flat_map(|&a| gens[v].iter().map(move |&b| (a, b)))
                            .map(|(a, b)| sumset(a, b))
                            .collect();
                        let mut fam = gens[t].clone();
                        fam.extend(new);
                        let fam = crate::convspace::canonical_antichain(&fam);
                        if fam != gens[t] {
                            gens[t] = fam;
                            changed = true;
                        }
                    }
                    for c in field.elems() {
                        let t = smul[c][u];
                        let new: Vec<u64> =
                            gens[u].iter().map(|&a| smul_mask(c, a)).collect();
                        let mut fam = gens[t].clone();
                        fam.extend(new);
                        let fam = crate::convspace::canonical_antichain(&fam);
                        if fam != gens[t] {
                            gens[t] = fam;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    return gens;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_object_is_discrete_and_valid() {
        let f = Field::new(5).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        assert!(r.space.is_discrete());
        assert_eq!(r.space.points(), 5);
        assert_eq!(r.add(3, 4), 2);
        assert_eq!(r.basis().dim(), 1);
    }

    #[test]
    fn continuity_of_addition_is_enforced() {
        // On F2 ⊕ F2 with carrier {0,1,2,3} (digits), let {0,1} converge to 0
        // but refuse {2,3} at 2: addition by 2 breaks continuity.
        let f = Field::new(2).unwrap();
        let add: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let smul = vec![vec![0; 4], (0..4).collect::<Vec<_>>()];
        let gens = vec![vec![0b0011], vec![0b0010], vec![0b0100], vec![0b1000]];
        let space = ConvSpace::new(4, AxiomMode::Limit, gens).unwrap();
        let err = ConvVect::new(space, f.clone(), 0, add.clone(), smul.clone(), &Limits::default());
        assert!(matches!(err, Err(Error::NotContinuous(_))));
        // Closing the structure under the vector rules repairs it.
        let closed = vector_convergence(4, &f, &add, &smul, &[(0, 0b0011)], AxiomMode::Limit);
        let space = ConvSpace::new(4, AxiomMode::Limit, closed).unwrap();
        assert!(ConvVect::new(space, f, 0, add, smul, &Limits::default()).is_ok());
    }

    #[test]
    fn basis_of_scalar_squared() {
        let f = Field::new(3).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        // Build F3 ⊕ F3 by hand (digit carrier).
        let n = 9;
        let add: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (a0, a1, b0, b1) = (a % 3, a / 3, b % 3, b / 3);
                        f.add(a0, b0) + 3 * f.add(a1, b1)
                    })
                    .collect()
            })
            .collect();
        let smul: Vec<Vec<usize>> = (0..3)
            .map(|c| (0..n).map(|a| f.mul(c, a % 3) + 3 * f.mul(c, a / 3)).collect())
            .collect();
        let space = ConvSpace::discrete(n, AxiomMode::Limit);
        let e = ConvVect::new(space, f, 0, add, smul, &Limits::default()).unwrap();
        let b = e.basis();
        assert_eq!(b.points, vec![1, 3]);
        assert_eq!(b.coords[4], vec![1, 1]);
        assert_eq!(b.coords[7], vec![1, 2]);
        let _ = r;
    }

    #[test]
    fn lin_hom_set_counts_between_scalars() {
        let f = Field::new(3).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        // hom(R, R) has 3 elements (multiplication by each scalar).
        assert_eq!(lin_hom_set(&r, &r).unwrap().len(), 3);
    }

    #[test]
    fn linear_map_rejects_non_linear() {
        let f = Field::new(2).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        assert!(matches!(
            LinMap::new(r.clone(), r.clone(), vec![1, 0]),
            Err(Error::NotLinearizable(_))
        ));
        assert!(LinMap::new(r.clone(), r.clone(), vec![0, 1]).is_ok());
        let id = LinMap::identity(&r);
        assert!(id.is_isomorphism().is_some());
        assert!(LinMap::zero_map(&r, &r).is_isomorphism().is_none());
    }
}
