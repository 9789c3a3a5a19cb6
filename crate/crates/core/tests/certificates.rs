use fekete::limits::{
    chain_exponent, find_split, mu_chain_certificate, split_coverage_exhaustive,
    verify_split_coverage,
};
use fekete::Rational;
use proptest::prelude::*;

fn mu_strategy() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..20)
        .prop_filter("mu in (1, 4]", |&(p, q)| p > q && p <= 4 * q)
        .prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exponent_satisfies_double_inequality(mu in mu_strategy()) {
        let k = chain_exponent(&mu).unwrap();
        let base = &mu + Rational::one();
        let two = Rational::from(2);
        prop_assert!(base.pow(k - 1) <= two.pow(k + 1));
        prop_assert!(two.pow(k + 1) < base.pow(k));
    }

    #[test]
    fn certificate_chains_and_coverage(mu in mu_strategy(), threshold in 1usize..20, n in 1u64..200) {
        let cert = mu_chain_certificate(&mu, threshold, n).unwrap();
        let k = cert.k as usize;
        prop_assert_eq!(cert.u.len(), k + 1);
        prop_assert!(cert.n2 >= threshold as u64);
        prop_assert!(Rational::from(cert.n2 as i64) >= (&mu - Rational::one()).recip());
        for i in 0..k {
            prop_assert_eq!(cert.u[i + 1], 2 * cert.u[i]);
            let step = mu.mul_index(cert.v[i] as usize).floor();
            prop_assert_eq!(Rational::from(cert.v[i + 1] as i64), Rational::from(cert.v[i] as i64) + Rational::from(step));
        }
        if n >= cert.n1 {
            prop_assert!(cert.doubling_covered);
        }
        let swept = verify_split_coverage(&cert).err();
        // the per-z walk is linear in the chain ranges; keep it bounded
        let range: u64 = (1..=k).map(|i| cert.v[i] - cert.u[i] + 1).sum();
        if range <= 200_000 {
            prop_assert_eq!(swept, split_coverage_exhaustive(&cert));
        }
        if n >= cert.n2 {
            prop_assert_eq!(swept, None);
        }
    }

    #[test]
    fn splits_are_valid(mu in mu_strategy(), z in 2u64..5000, lo in 1u64..2000, width in 0u64..2000) {
        let hi = lo + width;
        let brute = (lo..=hi.min(z)).find(|&x| {
            let y = z - x;
            x <= y && Rational::from(y as i64) <= mu.mul_index(x as usize)
        });
        let found = find_split(z, lo, hi, &mu);
        prop_assert_eq!(found.map(|s| s.0), brute);
        if let Some((x, y)) = found {
            prop_assert_eq!(x + y, z);
        }
    }
}
