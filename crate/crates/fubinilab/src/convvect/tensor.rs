//! Tensor products of convergence vector spaces.

use super::{vector_convergence, Basis, ConvVect, FreeVect, Limits, LinMap};
use crate::convspace::{ConvSpace, ContMap, Product};
use crate::convvect::free_transpose;
use crate::error::{Error, Result};

/// The tensor product `E1 ⊗ E2`.
///
/// The carrier is the coordinate space on basis pairs `(i, j)` (digit of
/// weight `p^(i·d2 + j)`), together with the canonical bilinear map.  The
/// convergence structure is the least vector structure containing the
/// element-wise products of converging sets.
#[derive(Debug, Clone)]
pub struct TensorVect {
    pub vect: ConvVect,
    pub left: ConvVect,
    pub right: ConvVect,
    pub left_basis: Basis,
    pub right_basis: Basis,
    bilinear: Vec<Vec<usize>>,
}

impl TensorVect {
    /// The canonical bilinear map `E1 × E2 → E1 ⊗ E2`.
    pub fn bilinear(&self, u: usize, v: usize) -> usize {
        self.bilinear[u][v]
    }

    /// Carrier index of the basis tensor `e_i ⊗ e_j`.
    pub fn basis_point(&self, i: usize, j: usize) -> usize {
        let p = self.vect.field.order();
        p.pow((i * self.right_basis.dim() + j) as u32)
    }

    /// Digits of a carrier point on the basis tensors, indexed `i·d2 + j`.
    pub fn digits(&self, mut w: usize) -> Vec<usize> {
        let p = self.vect.field.order();
        let d = self.left_basis.dim() * self.right_basis.dim();
        (0..d)
            .map(|_| {
                let c = w % p;
                w /= p;
                c
            })
            .collect()
    }
}

/// Builds the tensor product of two convergence vector spaces.
pub fn tensor(e1: &ConvVect, e2: &ConvVect, limits: &Limits) -> Result<TensorVect> {
    if e1.field != e2.field {
        return Err(Error::DimensionMismatch("tensor across different fields".into()));
    }
    if e1.mode() != e2.mode() {
        return Err(Error::Invalid("mixed axiom modes in tensor".into()));
    }
    let field = e1.field.clone();
    let p = field.order();
    let (b1, b2) = (e1.basis(), e2.basis());
    let (d1, d2) = (b1.dim(), b2.dim());
    let n = (p as u128).checked_pow((d1 * d2) as u32);
    let n = match n {
        Some(n) if n <= limits.max_carrier as u128 => n as usize,
        _ => {
            return Err(Error::BoundExceeded(format!(
                "tensor carrier {p}^{} exceeds limit {}",
                d1 * d2,
                limits.max_carrier
            )))
        }
    };
    let d = d1 * d2;
    let digits = |mut w: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let c = w % p;
                w /= p;
                c
            })
            .collect()
    };
    let undigits = |ds: &[usize]| -> usize { ds.iter().rev().fold(0, |acc, &c| acc * p + c) };
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
    let bilinear: Vec<Vec<usize>> = (0..e1.space.points())
        .map(|u| {
            (0..e2.space.points())
                .map(|v| {
                    let mut ds = vec![0usize; d];
                    for i in 0..d1 {
                        for j in 0..d2 {
                            ds[i * d2 + j] = field.mul(b1.coords[u][i], b2.coords[v][j]);
                        }
                    }
                    undigits(&ds)
                })
                .collect()
        })
        .collect();
    let mut seeds = Vec::new();
    for u in 0..e1.space.points() {
        for v in 0..e2.space.points() {
            for &gu in e1.space.max_sets(u) {
                for &gv in e2.space.max_sets(v) {
                    let mut m = 0u64;
                    let mut a = gu;
                    while a != 0 {
                        let i = a.trailing_zeros() as usize;
                        let mut b = gv;
                        while b != 0 {
                            let j = b.trailing_zeros() as usize;
                            m |= 1u64 << bilinear[i][j];
                            b &= b - 1;
                        }
                        a &= a - 1;
                    }
                    seeds.push((bilinear[u][v], m));
                }
            }
        }
    }
    let gens = vector_convergence(n, &field, &add, &smul, &seeds, e1.mode());
    let space = ConvSpace::new(n, e1.mode(), gens)?;
    let vect = ConvVect::new(space, field, 0, add, smul, limits)?;
    Ok(TensorVect {
        vect,
        left: e1.clone(),
        right: e2.clone(),
        left_basis: b1,
        right_basis: b2,
        bilinear,
    })
}

/// Linear extension of basis-pair images: the unique linear map out of the
/// tensor sending `e_i ⊗ e_j` to `vals[i][j]`.
pub fn from_bilinear(t: &TensorVect, e3: &ConvVect, vals: &[Vec<usize>]) -> Result<LinMap> {
    let (d1, d2) = (t.left_basis.dim(), t.right_basis.dim());
    if vals.len() != d1 || vals.iter().any(|r| r.len() != d2) {
        return Err(Error::DimensionMismatch("basis image table shape".into()));
    }
    let map: Vec<usize> = (0..t.vect.space.points())
        .map(|w| {
            let ds = t.digits(w);
            let terms: Vec<(usize, usize)> = (0..d1)
                .flat_map(|i| (0..d2).map(move |j| (i, j)))
                .map(|(i, j)| (ds[i * d2 + j], vals[i][j]))
                .collect();
            e3.combination(&terms)
        })
        .collect();
    LinMap::new(t.vect.clone(), e3.clone(), map).map_err(|err| match err {
        Error::NotContinuous(msg) => {
            Error::NotLinearizable(format!("bilinear extension is not continuous: {msg}"))
        }
        other => other,
    })
}

/// The symmetry isomorphism `E1 ⊗ E2 → E2 ⊗ E1`.
pub fn tensor_swap(t12: &TensorVect, t21: &TensorVect) -> Result<LinMap> {
    let vals: Vec<Vec<usize>> = (0..t12.left_basis.dim())
        .map(|i| (0..t12.right_basis.dim()).map(|j| t21.basis_point(j, i)).collect())
        .collect();
    let s = from_bilinear(t12, &t21.vect, &vals)?;
    if s.is_isomorphism().is_none() {
        return Err(Error::MismatchedConstructions("tensor symmetry is not invertible".into()));
    }
    Ok(s)
}

/// The unit isomorphisms `R ⊗ E ≅ E` for `t` the tensor of the scalar object
/// with `E` (in that order).
pub fn tensor_unit_iso(t: &TensorVect) -> Result<(LinMap, LinMap)> {
    let e = &t.right;
    let vals: Vec<Vec<usize>> = vec![e.basis().points.clone()];
    let fwd = from_bilinear(t, e, &vals)?;
    let bwd_map: Vec<usize> = (0..e.space.points()).map(|u| t.bilinear(1, u)).collect();
    let bwd = LinMap::new(e.clone(), t.vect.clone(), bwd_map)?;
    if bwd.then(&fwd)? != LinMap::identity(e) || fwd.then(&bwd)? != LinMap::identity(&t.vect) {
        return Err(Error::MismatchedConstructions("tensor unit law fails".into()));
    }
    Ok((fwd, bwd))
}

/// The strong-monoidal comparison `F X ⊗ F Y ≅ F (X × Y)` of the free
/// functor, as a verified pair of mutually inverse linear maps.
pub fn strong_monoidal_iso(
    fx: &FreeVect,
    fy: &FreeVect,
    prod: &Product,
    fxy: &FreeVect,
    limits: &Limits,
) -> Result<(TensorVect, LinMap, LinMap)> {
    let t = tensor(&fx.vect, &fy.vect, limits)?;
    // The greedy basis of a free space must be its generator family.
    let nx = fx.base.points();
    let ny = fy.base.points();
    if t.left_basis.points != (0..nx).map(|x| fx.generator(x)).collect::<Vec<_>>()
        || t.right_basis.points != (0..ny).map(|y| fy.generator(y)).collect::<Vec<_>>()
    {
        return Err(Error::MismatchedConstructions(
            "free-space basis is not the generator family".into(),
        ));
    }
    let vals: Vec<Vec<usize>> = (0..nx)
        .map(|x| (0..ny).map(|y| fxy.generator(prod.pair(x, y))).collect())
        .collect();
    let fwd = from_bilinear(&t, &fxy.vect, &vals)?;
    let bwd_pts: Vec<usize> = (0..prod.space.points())
        .map(|i| {
            let (x, y) = prod.unpair(i);
            t.bilinear(fx.generator(x), fy.generator(y))
        })
        .collect();
    let to_tensor = ContMap::new(prod.space.clone(), t.vect.space.clone(), bwd_pts)?;
    let bwd = free_transpose(fxy, &to_tensor, &t.vect)?;
    if fwd.then(&bwd)? != LinMap::identity(&t.vect)
        || bwd.then(&fwd)? != LinMap::identity(&fxy.vect)
    {
        return Err(Error::MismatchedConstructions(
            "monoidal comparison maps are not mutually inverse".into(),
        ));
    }
    Ok((t, fwd, bwd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convspace::{product, AxiomMode, ConvSpace};
    use crate::convvect::{free, scalar_object};
    use crate::scalars::Field;

    #[test]
    fn tensor_with_scalar_is_unit() {
        let f = Field::new(3).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        let t = tensor(&r, &r, &Limits::default()).unwrap();
        assert_eq!(t.vect.space.points(), 3);
        let (fwd, bwd) = tensor_unit_iso(&t).unwrap();
        assert_eq!(fwd.apply(t.bilinear(2, 2)), 1);
        assert_eq!(bwd.apply(2), t.bilinear(1, 2));
    }

    #[test]
    fn monoidal_iso_on_small_spaces() {
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
                let fx = free(&x, &f, &lim).unwrap();
                let fy = free(&y, &f, &lim).unwrap();
                let prod = product(&x, &y).unwrap();
                let fxy = free(&prod.space, &f, &lim).unwrap();
                let (t, fwd, bwd) = strong_monoidal_iso(&fx, &fy, &prod, &fxy, &lim).unwrap();
                assert_eq!(t.vect.space.points(), 16);
                assert_eq!(fwd.then(&bwd).unwrap(), LinMap::identity(&t.vect));
            }
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let f = Field::new(2).unwrap();
        let lim = Limits::default();
        let x = ConvSpace::indiscrete(2, AxiomMode::Limit);
        let fx = free(&x, &f, &lim).unwrap();
        let r = scalar_object(&f, AxiomMode::Limit);
        let t12 = tensor(&fx.vect, &r, &lim).unwrap();
        let t21 = tensor(&r, &fx.vect, &lim).unwrap();
        let s = tensor_swap(&t12, &t21).unwrap();
        let s_back = tensor_swap(&t21, &t12).unwrap();
        assert_eq!(s.then(&s_back).unwrap(), LinMap::identity(&t12.vect));
    }
}
