use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use stirzeta::arith::{decimal_render, int, parse_decimal, pochhammer, ratio, ten_pow_neg};
use stirzeta::ball::exp_ball;
use stirzeta::stirling::{g_partial_fraction, g_value, gen_stirling_explicit};
use stirzeta::{Ball, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| ratio(n, d))
}

fn small_radius() -> impl Strategy<Value = Rational> {
    (0i64..100, 1i64..1000).prop_map(|(n, d)| ratio(n, d * 100))
}

/// A ball and a point inside it (`t` in [-1, 1] picks the offset).
fn ball_and_point() -> impl Strategy<Value = (Ball, Rational)> {
    (rational(), small_radius(), -100i64..=100).prop_map(|(c, r, t)| {
        let x = &c + &r * ratio(t, 100);
        (Ball::new(c, r), x)
    })
}

proptest! {
    #[test]
    fn ball_add_mul_contain_pointwise((a, x) in ball_and_point(), (b, y) in ball_and_point()) {
        prop_assert!((&a + &b).contains(&(&x + &y)));
        prop_assert!((&a - &b).contains(&(&x - &y)));
        prop_assert!((&a * &b).contains(&(&x * &y)));
    }

    #[test]
    fn ball_recip_contains_pointwise((a, x) in ball_and_point()) {
        prop_assume!(a.mig() > Rational::zero());
        prop_assert!(a.recip().unwrap().contains(&x.recip()));
    }

    #[test]
    fn coarsen_only_grows((a, x) in ball_and_point(), bits in 1u64..80) {
        let c = a.coarsen(bits);
        prop_assert!(c.contains_ball(&a));
        prop_assert!(c.contains(&x));
    }

    #[test]
    fn exp_product_contains_one(n in -40i64..40, d in 1i64..7) {
        let x = ratio(n, d);
        let eps = ten_pow_neg(25);
        let prod = exp_ball(&x, &eps).unwrap() * exp_ball(&-x, &eps).unwrap();
        prop_assert!(prod.contains(&Rational::one()));
    }

    #[test]
    fn decimal_roundtrip(q in rational(), digits in 1usize..30) {
        let s = decimal_render(&q, digits).unwrap();
        let back = parse_decimal(&s).unwrap();
        let half_ulp = Rational::new(BigInt::one(), BigInt::from(2) * num_traits::pow(BigInt::from(10), digits));
        prop_assert!((back - &q).abs() <= half_ulp);
    }

    #[test]
    fn pochhammer_splits(x in rational(), m in 0usize..8, n in 0usize..8) {
        let lhs = pochhammer(&x, m + n);
        let rhs = pochhammer(&x, m) * pochhammer(&(&x + int(m as i64)), n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_np_recurrence(n in 1usize..40, p in 1usize..7) {
        // (n+1) S_n^{p+1} + S_{n-1}^{p+1} = S_n^p
        let a = gen_stirling_explicit(n, p + 1).unwrap() * int(n as i64 + 1);
        let b = gen_stirling_explicit(n - 1, p + 1).unwrap();
        prop_assert_eq!(a + b, gen_stirling_explicit(n, p).unwrap());
    }

    #[test]
    fn g_forms_agree(n in 0usize..15, x in rational()) {
        prop_assume!(!(x.is_integer() && x <= Rational::zero() && x >= int(-(n as i64))));
        prop_assert_eq!(g_value(n, &x).unwrap(), g_partial_fraction(n, &x).unwrap());
    }
}

#[test]
fn g_rejects_poles() {
    assert!(g_value(3, &int(-2)).is_err());
    assert!(g_value(3, &int(0)).is_err());
    assert!(g_value(3, &int(-4)).is_ok());
}
