//! Property-based invariants: Dedekind sum identities on random inputs, the
//! batched Kloosterman evaluator against the single-sum evaluator, series
//! multiplication against a schoolbook convolution, unit inversion
//! round-trips, Hecke linearity over random rational scalars, and the exact
//! partition series against the recurrence on random arguments.

use maass::kloosterman::{dedekind_sum, dedekind_sum_direct, kloosterman, KloostermanBatch, KloostermanContext};
use maass::poincare::{partition_oracle, rademacher_p, SeriesConfig};
use maass::prec::PrecisionContext;
use maass::qseries::{basis_g, IntegerQSeries};
use maass::hecke::hecke_minus_half;
use proptest::prelude::*;
use rug::{Integer, Rational};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The fast Euclidean-chain Dedekind sum agrees with the direct sawtooth
    /// double sum for every coprime pair.
    #[test]
    fn dedekind_fast_equals_direct(c in 1i64..300, d_seed in 0i64..300) {
        let d = d_seed % c;
        prop_assume!(gcd(d, c) == 1);
        prop_assert_eq!(dedekind_sum(d, c).unwrap(), dedekind_sum_direct(d, c).unwrap());
    }

    /// Antisymmetry `s(c−d, c) = −s(d, c)`.
    #[test]
    fn dedekind_antisymmetry(c in 2i64..500, d_seed in 1i64..500) {
        let d = 1 + d_seed % (c - 1);
        prop_assume!(gcd(d, c) == 1);
        let plus = dedekind_sum(d, c).unwrap();
        let minus = dedekind_sum(c - d, c).unwrap();
        prop_assert_eq!(plus, -minus);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// One batched row equals individual evaluations for random index pairs.
    #[test]
    fn batch_matches_single_evaluation(
        m in -40i64..40,
        n in -40i64..40,
        c in 1u64..70,
    ) {
        let prec = PrecisionContext::new(30);
        let pairs = [(m, n)];
        let mut batch = KloostermanBatch::new(&pairs, &prec);
        let row = batch.row(c);
        let single = kloosterman(&KloostermanContext { m_prime: m, n_prime: n, c }, &prec).unwrap();
        let dev = (row[0].clone() - single).abs();
        prop_assert!(dev < 1e-20, "batch/single deviation {dev} at ({m},{n};{c})");
    }
}

/// Random sparse integer series for convolution tests.
fn sparse_series() -> impl Strategy<Value = IntegerQSeries> {
    (
        proptest::collection::vec((-6i64..30, -50i64..50), 0..10),
        20i64..40,
    )
        .prop_map(|(terms, valid_to)| {
            let terms: Vec<(i64, Integer)> = terms
                .into_iter()
                .filter(|(e, c)| *e <= valid_to && *c != 0)
                .map(|(e, c)| (e, Integer::from(c)))
                .collect();
            // Duplicate exponents: keep the last occurrence.
            let mut map = std::collections::BTreeMap::new();
            for (e, c) in terms {
                map.insert(e, c);
            }
            IntegerQSeries::from_terms(map, valid_to).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `mul` agrees with a schoolbook double-loop convolution on every
    /// exponent up to the product's declared valid order.
    #[test]
    fn multiplication_matches_schoolbook(a in sparse_series(), b in sparse_series()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let product = a.mul(&b).unwrap();
        let amin = a.min_exponent().unwrap();
        let bmin = b.min_exponent().unwrap();
        let expected_valid = (a.valid_to() + bmin).min(b.valid_to() + amin);
        prop_assert_eq!(product.valid_to(), expected_valid);
        for e in (amin + bmin)..=expected_valid {
            let mut acc = Integer::new();
            for (ea, ca) in a.terms() {
                let eb = e - ea;
                if eb >= bmin && eb <= b.valid_to() {
                    acc += ca * b.coeff(eb);
                }
            }
            prop_assert_eq!(product.coeff(e), acc, "exponent {}", e);
        }
    }

    /// Unit inversion round-trips: `u · u⁻¹ = 1` through the valid order.
    #[test]
    fn unit_inversion_round_trips(tail in proptest::collection::vec(-9i64..9, 0..8), mu in 0i64..3) {
        let valid_to = 24i64;
        let mut terms = vec![(mu, Integer::from(1))];
        for (i, c) in tail.iter().enumerate() {
            if *c != 0 {
                terms.push((mu + 1 + i as i64, Integer::from(*c)));
            }
        }
        let u = IntegerQSeries::from_terms(terms, valid_to).unwrap();
        let inv = u.invert_unit().unwrap();
        let product = u.mul(&inv).unwrap();
        prop_assert!(product.valid_to() >= 0);
        for e in 0..=product.valid_to() {
            let expected = Integer::from(if e == 0 { 1 } else { 0 });
            prop_assert_eq!(product.coeff(e), expected, "exponent {}", e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// The Hecke operator is linear over random rational combinations.
    #[test]
    fn hecke_linearity_over_rationals(
        p in -9i64..9,
        q in 1i64..5,
        r in -9i64..9,
        s in 1i64..5,
    ) {
        let valid = 2_000;
        let g1 = basis_g(1, valid).unwrap();
        let g25 = basis_g(25, valid).unwrap();
        let alpha = Rational::from((p, q));
        let beta = Rational::from((r, s));
        let combo = g1.scale(&alpha).add(&g25.scale(&beta)).unwrap();
        let lhs = hecke_minus_half(&combo, 5).unwrap();
        let rhs = hecke_minus_half(&g1, 5).unwrap().scale(&alpha)
            .add(&hecke_minus_half(&g25, 5).unwrap().scale(&beta)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    /// The exact series rounds to the recurrence value on random arguments.
    #[test]
    fn partition_series_equals_recurrence(n in 1u64..120) {
        let c_max = 20 + 6 * ((n as f64).sqrt().ceil() as u64 + 1);
        let cfg = SeriesConfig {
            c_max,
            block_size: 100,
            i_kernel_c_max: None,
            prec: PrecisionContext::new(35),
        };
        let r = rademacher_p(n, &cfg).unwrap();
        prop_assert_eq!(r.rounded, partition_oracle(n));
        prop_assert!(r.certified);
    }
}
