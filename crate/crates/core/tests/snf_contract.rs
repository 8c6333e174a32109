mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use relcone_core::matrix::determinant;
use relcone_core::snf::snf;
use relcone_core::IntMatrix;

fn small_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_and_unimodularity(a in small_matrix(8)) {
        let s = snf(&a);
        prop_assert_eq!(s.u.try_mul(&s.d).unwrap().try_mul(&s.v).unwrap(), a.clone());
        prop_assert_eq!(determinant(&s.u).abs(), BigInt::from(1));
        prop_assert_eq!(determinant(&s.v).abs(), BigInt::from(1));
        let d = s.divisors();
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.check(&a).is_ok());
    }

    #[test]
    fn agrees_with_hermite_oracle(a in small_matrix(6)) {
        prop_assert_eq!(snf(&a).divisors(), common::invariant_factors(&a));
    }

    #[test]
    fn two_by_two_gcd_and_determinant(a in -20i64..=20, b in -20i64..=20, c in -20i64..=20, d in -20i64..=20) {
        let m = IntMatrix::from_i64(&[&[a, b], &[c, d]]);
        let g = BigInt::from(a).gcd(&b.into()).gcd(&c.into()).gcd(&d.into());
        let det = BigInt::from(a * d - b * c).abs();
        let s = snf(&m).divisors();
        let expected: Vec<BigInt> = if g.is_zero() {
            vec![]
        } else if det.is_zero() {
            vec![g]
        } else {
            vec![g.clone(), det / g]
        };
        prop_assert_eq!(s, expected);
    }
}

#[test]
fn worked_example() {
    let s = snf(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]]));
    assert_eq!(s.d, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
}
