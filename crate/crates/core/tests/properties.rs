use apartment_core::census::{canonical_cyclic_word, census_d1, nb_walk_counts, translation_vector, TriangleCover, WeightConvention};
use apartment_core::class_numbers::{weighted_sum, Behavior, OrderRecord, PlaceSplitting};
use apartment_core::complex::{fano_presentation, inverse_word, kernel_generators, FiniteGraph};
use apartment_core::hecke_counts::{c_constant, eta1_value, gaussian_binomial, CountConvention, QuasiCharacter};
use apartment_core::weyl::smith::{from_i64, matmul, smith_normal_form};
use apartment_core::weyl::{
    epsilon_coords, translation_element, translation_length, CosetLabeller, CoxeterDatum, TranslationVector,
};
use apartment_core::zeta::zeta_lattices;
use apartment_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use proptest::prelude::*;
use std::sync::OnceLock;

fn fano_cover() -> &'static TriangleCover {
    static COVER: OnceLock<TriangleCover> = OnceLock::new();
    COVER.get_or_init(|| {
        let p = fano_presentation();
        let gens = kernel_generators(&p, &p.characters_mod(3), 3);
        TriangleCover::new(p, &gens, 1000).unwrap()
    })
}

/// Closed-cone coroot-lattice vectors for `d = 2`.
fn dominant_d2() -> impl Strategy<Value = TranslationVector> {
    (0i64..6, 0i64..6)
        .prop_filter("coroot lattice", |(a, b)| (a - b) % 3 == 0)
        .prop_map(|(a, b)| TranslationVector::new(vec![a, b]))
}

/// Random bipartite `(q+1)`-regular multigraph: a union of `q+1` perfect
/// matchings between two sides.
fn bipartite_regular() -> impl Strategy<Value = Option<FiniteGraph>> {
    (2usize..6, 1u64..3).prop_flat_map(|(n, q)| {
        proptest::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), q as usize + 1).prop_map(move |perms| {
            let edges = perms.iter().flat_map(|p| p.iter().enumerate().map(|(u, &v)| (u, n + v))).collect();
            FiniteGraph::new(2 * n, edges, q).ok()
        })
    })
}

fn record() -> impl Strategy<Value = OrderRecord> {
    (
        "[a-z]{1,3}",
        1u64..5,
        1u32..40,
        proptest::collection::vec(0u8..3, 0..3),
        proptest::collection::vec((1i64..4, 1i64..4), 0..4),
    )
        .prop_map(|(id, h, r, places, units)| OrderRecord {
            order_id: id,
            n: 3,
            h,
            regulator: r as f64 / 4.0,
            splitting: places
                .iter()
                .enumerate()
                .map(|(i, b)| PlaceSplitting {
                    place: format!("w{i}"),
                    behavior: [Behavior::Inert, Behavior::Ramified, Behavior::NonDecomposedOther][*b as usize],
                })
                .collect(),
            units: units.into_iter().map(|(a, b)| TranslationVector::new(vec![a, b])).collect(),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn smith_round_trip(entries in proptest::collection::vec(-6i64..7, 9)) {
        let m = from_i64(&entries.chunks(3).map(<[i64]>::to_vec).collect::<Vec<_>>());
        let s = smith_normal_form(&m);
        prop_assert_eq!(matmul(&matmul(&s.left, &m), &s.right), s.diag_matrix());
        prop_assert_eq!(matmul(&matmul(&s.left_inv, &s.diag_matrix()), &s.right_inv), m);
        for w in s.diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }

    #[test]
    fn coset_labels_match_membership(a in (-9i64..10, -9i64..10), b in (-9i64..10, -9i64..10)) {
        let (lattice, sub) = zeta_lattices(2).unwrap();
        let labeller = CosetLabeller::new(&lattice, &sub).unwrap();
        let to_lattice = |(x, y): (i64, i64)| TranslationVector::new(vec![x, y + (x - y).rem_euclid(3)]);
        let (ka, kb) = (to_lattice(a), to_lattice(b));
        let same = labeller.label(&ka).unwrap() == labeller.label(&kb).unwrap();
        prop_assert_eq!(same, sub.contains(&(&ka - &kb)).unwrap());
    }

    #[test]
    fn length_is_additive_on_the_cone(a in dominant_d2(), b in dominant_d2()) {
        prop_assert_eq!(translation_length(&(&a + &b)), translation_length(&a) + translation_length(&b));
        prop_assert_eq!(translation_element(&a).unwrap().length(), translation_length(&a));
    }

    #[test]
    fn translations_compose(a in (-5i64..6, -5i64..6), b in (-5i64..6, -5i64..6)) {
        let fix = |(x, y): (i64, i64)| TranslationVector::new(vec![x, y + (x - y).rem_euclid(3)]);
        let (ka, kb) = (fix(a), fix(b));
        prop_assert!(epsilon_coords(&ka).is_some());
        let sum = translation_element(&(&ka + &kb)).unwrap();
        prop_assert_eq!(sum, translation_element(&ka).unwrap().compose(&translation_element(&kb).unwrap()));
    }

    #[test]
    fn q_pascal(n in 1usize..7, j in 1usize..7, q in 2u64..5) {
        prop_assume!(j <= n);
        let lhs = gaussian_binomial(n, j, q).unwrap();
        let tail = if j < n { gaussian_binomial(n - 1, j, q).unwrap() } else { BigInt::zero() };
        let rhs = gaussian_binomial(n - 1, j - 1, q).unwrap() + Pow::pow(BigInt::from(q), j as u32) * tail;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn c_duality(d in 1usize..6, q in 2u64..6, j in 1usize..6) {
        prop_assume!(j <= d);
        prop_assert_eq!(c_constant(d, q, j).unwrap(), c_constant(d, q, d + 1 - j).unwrap());
    }

    #[test]
    fn eta1_is_a_quasi_character(a in dominant_d2(), b in dominant_d2(), q in 2u64..4) {
        let datum = CoxeterDatum::new(2, q).unwrap();
        let e = |k: &TranslationVector| eta1_value(k, &datum, CountConvention::Iwahori).unwrap();
        prop_assert_eq!(e(&(&a + &b)), e(&a) * e(&b));
        let chi = QuasiCharacter::eta1(&datum, CountConvention::Iwahori).unwrap();
        let (ga, gb) = (a.scale(3), b.scale(3));
        prop_assert_eq!(chi.value(&(&ga + &gb)).unwrap(), chi.value(&ga).unwrap() * chi.value(&gb).unwrap());
        prop_assert_eq!(chi.value(&ga).unwrap(), e(&ga));
    }

    #[test]
    fn canonical_word_is_conjugation_invariant(
        w in proptest::collection::vec(0usize..14, 1..8),
        u in proptest::collection::vec(0usize..14, 0..4),
    ) {
        let mut conj = u.clone();
        conj.extend(&w);
        conj.extend(inverse_word(&u));
        prop_assert_eq!(canonical_cyclic_word(&conj), canonical_cyclic_word(&w));
    }

    #[test]
    fn weighted_sum_is_additive(
        a in proptest::collection::vec(record(), 0..5),
        b in proptest::collection::vec(record(), 0..5),
        k in (1i64..4, 1i64..4),
    ) {
        let k = TranslationVector::new(vec![k.0, k.1]);
        let joined: Vec<OrderRecord> = a.iter().chain(&b).cloned().collect();
        let (sa, sb, sj) = (weighted_sum(&a, &k).unwrap(), weighted_sum(&b, &k).unwrap(), weighted_sum(&joined, &k).unwrap());
        prop_assert!((sj - (sa + sb)).abs() <= 1e-12 * sj.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translation_vector_power_law(w in proptest::collection::vec(0usize..14, 1..5), p in 1usize..4) {
        let cover = fano_cover();
        match translation_vector(cover, &w, 12) {
            Ok(v) => {
                let power: Vec<usize> = w.iter().copied().cycle().take(w.len() * p).collect();
                prop_assert_eq!(translation_vector(cover, &power, 12).unwrap(), v.scale(p as i64));
            }
            Err(Error::IdentityWord | Error::NotStabilized(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn walk_methods_agree_and_support_is_in_the_cone(g in bipartite_regular(), m in 1usize..11) {
        let Some(g) = g else { return Ok(()) };
        // nb_walk_counts fails on any enumeration/trace disagreement
        let walks = nb_walk_counts(&g, m).unwrap();
        prop_assert_eq!(walks.len(), m);
        for w in [WeightConvention::IndPrimitiveLength, WeightConvention::Unit] {
            let census = census_d1(&g, m / 2, w, false).unwrap();
            prop_assert!(census.check_invariants());
            prop_assert!(census.counts.keys().all(|k| k.in_positive_cone()));
        }
    }
}
