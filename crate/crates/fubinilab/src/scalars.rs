//! Scalar arithmetic: exact prime fields `F_p` and exact rationals.
//!
//! Field elements are represented as `usize` values in `0..p` and all
//! operations are table lookups, so every computation downstream is exact.
//! The rational type is used by the independent harness oracle.

use crate::error::{Error, Result};

/// Default upper bound on the field characteristic.
pub const DEFAULT_CHAR_BOUND: u64 = 7;

/// Exact rationals used by the harness oracle (always canonical form).
pub type Rational = num_rational::Ratio<i128>;

/// Convenience constructor for a rational `n / d`.
///
/// Panics if `d == 0`; oracle code always supplies nonzero denominators.
pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// A prime field `F_p` with fully tabulated arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds `F_p` with the default characteristic bound.
    pub fn new(p: u64) -> Result<Field> {
        Field::with_bound(p, DEFAULT_CHAR_BOUND)
    }

    /// Builds `F_p`, rejecting composite `p` and characteristics above `bound`.
    pub fn with_bound(p: u64, bound: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p > bound {
            return Err(Error::BoundExceeded(format!(
                "characteristic {p} exceeds bound {bound}"
            )));
        }
        let n = p as usize;
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        let neg = (0..n).map(|a| (n - a) % n).collect();
        let mut inv = vec![0usize; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| (a * b) % n == 1).expect("prime field inverse");
        }
        let f = Field { p: n, add, mul, neg, inv };
        f.verify_axioms()?;
        Ok(f)
    }

    fn verify_axioms(&self) -> Result<()> {
        let n = self.p;
        for a in 0..n {
            if self.add(a, 0) != a || self.mul(a, 1 % n) != a {
                return Err(Error::AxiomViolation(format!("identity laws fail at {a}")));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::AxiomViolation(format!("negation fails at {a}")));
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return Err(Error::AxiomViolation(format!("inversion fails at {a}")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::AxiomViolation("commutativity fails".into()));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c))
                            != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return Err(Error::AxiomViolation("ring laws fail".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of elements `p`.
    pub fn order(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a][self.neg[b]]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.inv[a]
    }

    /// Iterator over all field elements in ascending order.
    pub fn elems(&self) -> std::ops::Range<usize> {
        0..self.p
    }
}
