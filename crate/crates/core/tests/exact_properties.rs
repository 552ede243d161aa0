use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use trinomial::algebra::{rat, rational_pow, Rational};
use trinomial::exact::{tn_direct_sum, tn_poly_power, tn_recurrence, tn_series, TrinomialParams};

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

#[test]
fn four_methods_agree_on_rational_parameters() {
    for (b, c) in [(rat(1, 2), rat(-3, 4)), (rat(-5, 3), rat(7, 9)), (rat(3, 10), rat(0, 1))] {
        let p = TrinomialParams::new(b, c);
        let rec = tn_recurrence(&p, 40).unwrap();
        let ser = tn_series(&p, 40);
        for n in 0..=40u64 {
            let direct = tn_direct_sum(&p, n);
            assert_eq!(direct, tn_poly_power(&p, n), "{p} n={n}");
            assert_eq!(direct, rec[n as usize], "{p} n={n}");
            assert_eq!(direct, ser[n as usize], "{p} n={n}");
        }
    }
}

#[test]
fn degenerate_closed_forms_up_to_200() {
    // c = 0: bⁿ
    let p = TrinomialParams::from_ints(-3, 0);
    let v = tn_recurrence(&p, 200).unwrap();
    for n in 0..=200u64 {
        assert_eq!(v[n as usize], rational_pow(&rat(-3, 1), n as i64));
    }
    // d = 0 with b = 2a, c = a²: aⁿ·C(2n,n)
    let p = TrinomialParams::from_ints(6, 9);
    let v = tn_recurrence(&p, 200).unwrap();
    for n in 0..=200u64 {
        let want = rational_pow(&rat(3, 1), n as i64) * Rational::from_integer(binomial(2 * n, n));
        assert_eq!(v[n as usize], want, "n={n}");
    }
    // b = 0: zero at odd n, C(n, n/2)·c^(n/2) at even n
    let p = TrinomialParams::from_ints(0, -2);
    let v = tn_recurrence(&p, 200).unwrap();
    for n in 0..=200u64 {
        let want = if n % 2 == 1 {
            Rational::zero()
        } else {
            rational_pow(&rat(-2, 1), (n / 2) as i64) * Rational::from_integer(binomial(n, n / 2))
        };
        assert_eq!(v[n as usize], want, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_flip_of_b(b in small_rational(), c in small_rational(), n in 0u64..40) {
        let p = TrinomialParams::new(b.clone(), c.clone());
        let m = TrinomialParams::new(-b, c);
        let lhs = tn_direct_sum(&m, n);
        let rhs = tn_direct_sum(&p, n);
        prop_assert_eq!(lhs, if n % 2 == 0 { rhs.clone() } else { -rhs });
    }

    #[test]
    fn lambda_scaling(b in small_rational(), c in small_rational(), lam in prop::sample::select(vec![-2i64, -1, 2, 3])) {
        let p = TrinomialParams::new(b.clone(), c.clone());
        let lam = rat(lam, 1);
        let q = TrinomialParams::new(&lam * &b, &lam * &lam * &c);
        let base = tn_recurrence(&p, 50).unwrap();
        let scaled = tn_recurrence(&q, 50).unwrap();
        for n in 0..=50usize {
            prop_assert_eq!(&scaled[n], &(rational_pow(&lam, n as i64) * &base[n]));
        }
    }

    #[test]
    fn recurrence_matches_series(b in small_rational(), c in small_rational()) {
        let p = TrinomialParams::new(b, c);
        prop_assert_eq!(tn_recurrence(&p, 30).unwrap(), tn_series(&p, 30));
    }

    #[test]
    fn poly_power_matches_direct(b in -5i64..=5, c in -5i64..=5, n in 0u64..60) {
        let p = TrinomialParams::from_ints(b, c);
        prop_assert_eq!(tn_poly_power(&p, n), tn_direct_sum(&p, n));
    }
}
