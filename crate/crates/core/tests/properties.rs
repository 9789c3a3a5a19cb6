use fekete::checker::{check_q_monotone, scan_violations};
use fekete::constructions::convex_from_error;
use fekete::limits::{fekete_bracket, g_deficit, tail_bound, GTransform};
use fekete::{ErrorTerm, PairDomain, Rational, SequencePrefix};
use num_integer::Roots;
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

/// Non-decreasing, non-negative rational table of length `h`.
fn monotone_error(h: usize) -> impl Strategy<Value = ErrorTerm> {
    prop::collection::vec((0i64..4, 1i64..4), h).prop_map(|steps| {
        let mut acc = Rational::zero();
        let values = steps
            .into_iter()
            .map(|(p, q)| {
                acc += &rat(p, q);
                acc.clone()
            })
            .collect();
        ErrorTerm::new(values).unwrap()
    })
}

/// Non-decreasing rational sequence of length `h`, any sign.
fn monotone_shift(h: usize) -> impl Strategy<Value = Vec<Rational>> {
    (-20i64..20, prop::collection::vec((0i64..5, 1i64..6), h)).prop_map(|(start, steps)| {
        let mut acc = Rational::from(start);
        steps
            .into_iter()
            .map(|(p, q)| {
                acc += &rat(p, q);
                acc.clone()
            })
            .collect()
    })
}

/// Non-negative combinations of subadditive building blocks.
fn subadditive_prefix(h: usize) -> impl Strategy<Value = SequencePrefix> {
    (0i64..4, 0i64..3, 0usize..30, 1usize..20, 0i64..5, 1i64..4).prop_map(
        move |(w_sqrt, w_lin, cap, div, konst, q)| {
            SequencePrefix::from_fn(h, |n| {
                let s = n.sqrt();
                let ceil_sqrt = if s * s < n { s + 1 } else { s };
                Rational::from(w_sqrt * ceil_sqrt as i64)
                    + rat(w_lin * n as i64, q)
                    + Rational::from(n.min(cap))
                    + Rational::from(n.div_ceil(div))
                    + Rational::from(konst)
            })
            .unwrap()
        },
    )
}

/// Values free below `2N`, then `a(j) <= a(⌊j/2⌋) + a(⌈j/2⌉)`.
fn one_plus_prefix(n: usize, h: usize) -> impl Strategy<Value = SequencePrefix> {
    (
        prop::collection::vec((-30i64..30, 1i64..5), 2 * n),
        prop::collection::vec((0i64..6, 1i64..3), h),
    )
        .prop_map(move |(free, slack)| {
            let mut v = vec![Rational::zero()];
            for j in 1..=h {
                let x = if j < 2 * n {
                    rat(free[j].0, free[j].1)
                } else {
                    &v[j / 2] + &v[j - j / 2] - rat(slack[j - 1].0, slack[j - 1].1)
                };
                v.push(x);
            }
            SequencePrefix::new(v.split_off(1)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monotone_shift_closure(f in monotone_error(48), c in monotone_shift(48)) {
        let a = convex_from_error(&f, 48).unwrap();
        prop_assert!(scan_violations(&a, Some(&f), &PairDomain::Full).unwrap().is_clean());
        let b = SequencePrefix::from_fn(48, |n| a.at(n) - c[n - 1].mul_index(n)).unwrap();
        prop_assert!(scan_violations(&b, Some(&f), &PairDomain::Full).unwrap().is_clean());
    }

    #[test]
    fn one_plus_implies_q_non_increasing(
        (n, a) in (1usize..6).prop_flat_map(|n| (Just(n), one_plus_prefix(n, 90)))
    ) {
        prop_assert!(scan_violations(&a, None, &PairDomain::one_plus(n).unwrap()).unwrap().is_clean());
        prop_assert_eq!(check_q_monotone(&a, n).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn tail_bound_is_sound(a in subadditive_prefix(80)) {
        prop_assert!(scan_violations(&a, None, &PairDomain::Full).unwrap().is_clean());
        let h = a.horizon();
        for k in 1..=h / 2 {
            prop_assert!(a.slope(h) <= tail_bound(&a, k, h), "k = {}", k);
        }
        let b = fekete_bracket(&a, 1).unwrap();
        prop_assert!(b.min_slope <= a.slope(h));
        prop_assert!(b.tail_samples.iter().all(|s| s.bound >= a.slope(h)));
    }

    #[test]
    fn g_transform_matches_direct_sums(f in monotone_error(30), shift in monotone_shift(30)) {
        let a = SequencePrefix::from_fn(30, |n| shift[n - 1].mul_index(n)).unwrap();
        let g = GTransform::new(&a, &f);
        for n in 1..=15 {
            for m in n..=30 - n {
                prop_assert_eq!(g.deficit(n, m).unwrap(), g_deficit(&a, &f, n, m).unwrap());
            }
        }
    }
}

#[test]
fn zero_error_g_deficit_is_plain_deficit() {
    let zero = ErrorTerm::zero(500);
    let a = SequencePrefix::from_fn(500, |n| {
        rat(((n * 7919) % 101) as i64 - 50, (n % 9 + 1) as i64)
    })
    .unwrap();
    let g = GTransform::new(&a, &zero);
    for n in 1..=250 {
        for m in n..=500 - n {
            let plain = a.at(n + m) - a.at(n) - a.at(m);
            assert_eq!(g.deficit(n, m).unwrap(), plain);
            if m <= n + 20 {
                assert_eq!(g_deficit(&a, &zero, n, m).unwrap(), plain);
            }
        }
    }
}

#[test]
fn g_subadditivity_needs_a_positive_error_term_near_the_pair() {
    // a is f-subadditive, yet G(2) > 2·G(1): f vanishes on the window [1, 2).
    let f = ErrorTerm::new(vec![rat(0, 1), rat(1, 1)]).unwrap();
    let a = SequencePrefix::new(vec![rat(0, 1), rat(1, 1)]).unwrap();
    assert!(scan_violations(&a, Some(&f), &PairDomain::Full)
        .unwrap()
        .is_clean());
    assert_eq!(g_deficit(&a, &f, 1, 1).unwrap(), rat(1, 1));
}
