mod common;

use complexforge::builtins::builtin;
use complexforge::euler_characteristic;
use complexforge::homology::{homology, invariant_factors, IntMatrix};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

#[test]
fn seeded_complexes_agree_with_rational_ranks() {
    let mut r = common::rng(9);
    for _ in 0..500 {
        let x = common::random_complex(&mut r, 30);
        let h = homology(&x);
        assert_eq!(h.euler_characteristic(), euler_characteristic(&x));
        assert_eq!(h.betti, common::rational_betti(&x), "{}", x.to_json());
    }
}

#[test]
fn projective_plane_torsion() {
    let h = homology(&builtin("rp2").unwrap().complex);
    assert_eq!(h.torsion1, vec![BigInt::from(2)]);
    assert_eq!(h.betti, [1, 0, 0]);
}

#[test]
fn lens_complexes_have_cyclic_torsion() {
    for n in 2..12 {
        let x = common::one_vertex(1, &[vec![(0, 1); n]]);
        assert_eq!(homology(&x).torsion1, vec![BigInt::from(n)]);
    }
}

/// Integer determinant by Laplace expansion.
fn determinant(n: usize, v: &[i64]) -> BigInt {
    if n == 1 {
        return BigInt::from(v[0]);
    }
    let mut total = BigInt::from(0);
    for c in 0..n {
        let minor: Vec<i64> = (1..n).flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| (i, j))).map(|(i, j)| v[i * n + j]).collect();
        let term = BigInt::from(v[c]) * determinant(n - 1, &minor);
        total += if c % 2 == 0 { term } else { -term };
    }
    total
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-4i64..=4, r * c)))
}

proptest! {
    #[test]
    fn smith_form_rank_matches_rational_rank((rows, cols, v) in small_matrix()) {
        let mut m = IntMatrix::zeros(rows, cols);
        let mut entries = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                *m.get_mut(i, j) = BigInt::from(v[i * cols + j]);
                entries.push((i, j, v[i * cols + j]));
            }
        }
        let factors = invariant_factors(&m);
        prop_assert_eq!(factors.len(), common::rational_rank(rows, cols, &entries));
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        if g != 0 {
            prop_assert_eq!(&factors[0], &BigInt::from(g));
        }
        if rows == cols && factors.len() == rows {
            let product: BigInt = factors.iter().product();
            prop_assert_eq!(product, determinant(rows, &v).abs());
        }
    }

    #[test]
    fn euler_characteristic_is_alternating_betti_sum(seed in any::<u64>()) {
        let x = common::random_complex(&mut common::rng(seed), 30);
        prop_assert_eq!(homology(&x).euler_characteristic(), euler_characteristic(&x));
    }
}
