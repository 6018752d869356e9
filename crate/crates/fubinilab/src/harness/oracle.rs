//! An independent double-sum oracle for product integration of finitely
//! supported measures.  Deliberately implemented from raw sums, with no
//! code shared with the categorical constructions it audits.

use crate::error::{Error, Result};
use crate::scalars::Rational;
use num_traits::Zero;

/// For weight vectors `mu`, `nu` and a matrix `f` (indexed `f[x][y]`),
/// returns the two iterated sums and the product sum:
/// `Σ_y ν_y Σ_x μ_x f(x,y)`, `Σ_x μ_x Σ_y ν_y f(x,y)`, and
/// `Σ_{x,y} μ_x ν_y f(x,y)`.
pub fn oracle_discrete_fubini(
    mu: &[Rational],
    nu: &[Rational],
    f: &[Vec<Rational>],
) -> Result<(Rational, Rational, Rational)> {
    if f.len() != mu.len() || f.iter().any(|row| row.len() != nu.len()) {
        return Err(Error::DimensionMismatch("oracle matrix shape".into()));
    }
    let mut lhs = Rational::zero();
    for (y, wy) in nu.iter().enumerate() {
        let mut inner = Rational::zero();
        for (x, wx) in mu.iter().enumerate() {
            inner += *wx * f[x][y];
        }
        lhs += *wy * inner;
    }
    let mut rhs = Rational::zero();
    for (x, wx) in mu.iter().enumerate() {
        let mut inner = Rational::zero();
        for (y, wy) in nu.iter().enumerate() {
            inner += *wy * f[x][y];
        }
        rhs += *wx * inner;
    }
    let mut product = Rational::zero();
    for (x, wx) in mu.iter().enumerate() {
        for (y, wy) in nu.iter().enumerate() {
            product += *wx * *wy * f[x][y];
        }
    }
    Ok((lhs, rhs, product))
}

/// The same three sums with all arithmetic reduced modulo the prime `p`.
pub fn oracle_discrete_fubini_mod(
    mu: &[usize],
    nu: &[usize],
    f: &[Vec<usize>],
    p: usize,
) -> Result<(usize, usize, usize)> {
    if f.len() != mu.len() || f.iter().any(|row| row.len() != nu.len()) {
        return Err(Error::DimensionMismatch("oracle matrix shape".into()));
    }
    let mut lhs = 0usize;
    for (y, &wy) in nu.iter().enumerate() {
        let mut inner = 0usize;
        for (x, &wx) in mu.iter().enumerate() {
            inner = (inner + wx * f[x][y]) % p;
        }
        lhs = (lhs + wy * inner) % p;
    }
    let mut rhs = 0usize;
    for (x, &wx) in mu.iter().enumerate() {
        let mut inner = 0usize;
        for (y, &wy) in nu.iter().enumerate() {
            inner = (inner + wy * f[x][y]) % p;
        }
        rhs = (rhs + wx * inner) % p;
    }
    let mut product = 0usize;
    for (x, &wx) in mu.iter().enumerate() {
        for (y, &wy) in nu.iter().enumerate() {
            product = (product + wx * wy * f[x][y]) % p;
        }
    }
    Ok((lhs, rhs, product))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn dirac_masses_pick_out_one_entry() {
        let mu = vec![rat(1, 1), rat(0, 1)];
        let nu = vec![rat(0, 1), rat(1, 1)];
        let f = vec![vec![rat(3, 7), rat(5, 2)], vec![rat(1, 9), rat(4, 3)]];
        let (lhs, rhs, product) = oracle_discrete_fubini(&mu, &nu, &f).unwrap();
        assert_eq!(lhs, rat(5, 2));
        assert_eq!(rhs, rat(5, 2));
        assert_eq!(product, rat(5, 2));
    }

    #[test]
    fn uniform_measures_on_an_indicator_give_a_quarter() {
        let mu = vec![rat(1, 2), rat(1, 2)];
        let nu = vec![rat(1, 2), rat(1, 2)];
        let f = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]];
        let (lhs, rhs, product) = oracle_discrete_fubini(&mu, &nu, &f).unwrap();
        assert_eq!(lhs, rat(1, 4));
        assert_eq!(rhs, rat(1, 4));
        assert_eq!(product, rat(1, 4));
    }

    #[test]
    fn zero_matrix_sums_to_zero() {
        let mu = vec![rat(2, 3)];
        let nu = vec![rat(5, 4), rat(-1, 2)];
        let f = vec![vec![rat(0, 1), rat(0, 1)]];
        let (lhs, rhs, product) = oracle_discrete_fubini(&mu, &nu, &f).unwrap();
        assert_eq!(lhs, rat(0, 1));
        assert_eq!(rhs, rat(0, 1));
        assert_eq!(product, rat(0, 1));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let mu = vec![rat(1, 1)];
        let nu = vec![rat(1, 1)];
        let f = vec![vec![rat(1, 1), rat(1, 1)]];
        assert!(oracle_discrete_fubini(&mu, &nu, &f).is_err());
    }

    #[test]
    fn modular_sums_agree_with_direct_reduction() {
        let mu = vec![1, 2];
        let nu = vec![2, 1];
        let f = vec![vec![1, 2], vec![0, 1]];
        let (lhs, rhs, product) = oracle_discrete_fubini_mod(&mu, &nu, &f, 3).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, product);
        // Direct expansion: Σ μ_x ν_y f = 1·2·1 + 1·1·2 + 2·2·0 + 2·1·1 = 6 ≡ 0.
        assert_eq!(product, 0);
    }
}
