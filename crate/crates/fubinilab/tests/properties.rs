//! Randomized properties of the independent double-sum oracle: the three
//! sum orders always agree, the sums are bilinear in the weights, and the
//! mod-p twin is the reduction of the rational computation on integer data.

use fubinilab::harness::{oracle_discrete_fubini, oracle_discrete_fubini_mod};
use fubinilab::scalars::{rat, Rational};
use proptest::collection::vec;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i128..=20, 1i128..=20).prop_map(|(n, d)| rat(n, d))
}

fn instance() -> impl Strategy<Value = (Vec<Rational>, Vec<Rational>, Vec<Vec<Rational>>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(nx, ny)| {
        (
            vec(rational(), nx),
            vec(rational(), ny),
            vec(vec(rational(), ny), nx),
        )
    })
}

proptest! {
    #[test]
    fn sum_orders_agree((mu, nu, f) in instance()) {
        let (lhs, rhs, product) = oracle_discrete_fubini(&mu, &nu, &f).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(&rhs, &product);
    }

    #[test]
    fn sums_scale_with_the_first_weight((mu, nu, f) in instance(), c in rational()) {
        let (_, _, base) = oracle_discrete_fubini(&mu, &nu, &f).unwrap();
        let scaled: Vec<Rational> = mu.iter().map(|w| w * &c).collect();
        let (_, _, got) = oracle_discrete_fubini(&scaled, &nu, &f).unwrap();
        prop_assert_eq!(got, base * c);
    }

    #[test]
    fn mod_p_twin_is_the_reduction(
        (nx, ny) in (1usize..=4, 1usize..=4),
        seed in 0u64..1000,
        p in prop::sample::select(vec![2usize, 3, 5, 7]),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || rng.gen_range(0..p);
        let mu: Vec<usize> = (0..nx).map(|_| draw()).collect();
        let nu: Vec<usize> = (0..ny).map(|_| draw()).collect();
        let f: Vec<Vec<usize>> =
            (0..nx).map(|_| (0..ny).map(|_| draw()).collect()).collect();
        let (la, ra, pa) = oracle_discrete_fubini_mod(&mu, &nu, &f, p).unwrap();
        let to_q = |v: &[usize]| -> Vec<Rational> {
            v.iter().map(|&a| rat(a as i128, 1)).collect()
        };
        let fq: Vec<Vec<Rational>> = f.iter().map(|r| to_q(r)).collect();
        let (lq, rq, pq) =
            oracle_discrete_fubini(&to_q(&mu), &to_q(&nu), &fq).unwrap();
        let reduce = |q: &Rational| -> usize {
            (q.numer().rem_euclid(p as i128)) as usize
        };
        prop_assert_eq!(la, reduce(&lq));
        prop_assert_eq!(ra, reduce(&rq));
        prop_assert_eq!(pa, reduce(&pq));
    }
}
