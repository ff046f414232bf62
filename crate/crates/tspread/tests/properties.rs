//! Randomized invariants over the monomial arithmetic, the sorting
//! operator, and generator enumeration.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tspread::borel::{self, SampleOptions};
use tspread::monomial::Monomial;
use tspread::sorting;

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, n).prop_map(Monomial::from_exponents)
}

fn instance_seed() -> impl Strategy<Value = tspread::BorelInstance> {
    any::<u64>().prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        borel::random_instance(
            &mut rng,
            &SampleOptions {
                n_max: 9,
                ..SampleOptions::default()
            },
        )
    })
}

proptest! {
    #[test]
    fn colon_times_gcd_recovers_the_numerator(a in monomial(7), b in monomial(7)) {
        prop_assert_eq!(a.colon(&b).product(&a.gcd(&b)), a);
    }

    #[test]
    fn divisibility_matches_trivial_colon(a in monomial(7), b in monomial(7)) {
        // The colon always has degree deg(a) - deg(gcd); divisibility is
        // exactly the degenerate case where it collapses to 1.
        prop_assert_eq!(a.colon(&b).degree(), a.degree() - a.gcd(&b).degree());
        prop_assert_eq!(a.divides(&b), a.colon(&b).is_one());
    }

    #[test]
    fn purelex_is_a_strict_total_order(a in monomial(6), b in monomial(6), c in monomial(6)) {
        use std::cmp::Ordering::*;
        // Antisymmetry.
        prop_assert_eq!(a.cmp_purelex(&b), b.cmp_purelex(&a).reverse());
        prop_assert_eq!(a.cmp_purelex(&b) == Equal, a == b);
        // Transitivity.
        if a.cmp_purelex(&b) == Greater && b.cmp_purelex(&c) == Greater {
            prop_assert_eq!(a.cmp_purelex(&c), Greater);
        }
    }

    #[test]
    fn sorting_preserves_product_and_degrees(
        exps in prop::collection::vec((0u32..3, 0u32..3), 6)
    ) {
        let v = Monomial::from_exponents(exps.iter().map(|p| p.0).collect());
        let w = Monomial::from_exponents(exps.iter().map(|p| p.1).collect());
        // Pad to a common degree by stuffing the last variable.
        let (v, w) = if v.degree() < w.degree() {
            let mut e = v.exponents().to_vec();
            e[5] += (w.degree() - v.degree()) as u32;
            (Monomial::from_exponents(e), w)
        } else {
            let mut e = w.exponents().to_vec();
            e[5] += (v.degree() - w.degree()) as u32;
            (v, Monomial::from_exponents(e))
        };
        let (a, b) = sorting::sort_pair(&v, &w).unwrap();
        prop_assert_eq!(a.product(&b), v.product(&w));
        prop_assert_eq!(a.degree(), v.degree());
        prop_assert_eq!(b.degree(), w.degree());
        // Idempotence.
        prop_assert_eq!(sorting::sort_pair(&a, &b).unwrap(), (a, b));
    }

    #[test]
    fn generator_set_is_sortable_and_anchored(inst in instance_seed()) {
        let gens = inst.generators();
        // The defining monomial is the pure-lex smallest generator.
        prop_assert_eq!(gens.last().unwrap(), &inst.borel_generator());
        for g in &gens {
            prop_assert!(borel::is_tspread(g, inst.spread()));
            prop_assert!(inst.contains(g));
        }
        prop_assert!(sorting::sortable_check(&gens).unwrap().is_sortable());
    }

    #[test]
    fn random_tuples_sort_to_a_sorted_tuple(inst in instance_seed(), picks in prop::collection::vec(any::<prop::sample::Index>(), 2..4)) {
        let gens = inst.generators();
        let tuple: Vec<Monomial> = picks.iter().map(|ix| gens[ix.index(gens.len())].clone()).collect();
        let sorted = sorting::sort_tuple(&tuple).unwrap();
        prop_assert!(sorting::is_sorted_tuple(sorted.monomials()).unwrap());
        let mut lhs = Monomial::one(inst.ambient());
        for m in &tuple {
            lhs = lhs.product(m);
        }
        let mut rhs = Monomial::one(inst.ambient());
        for m in sorted.monomials() {
            rhs = rhs.product(m);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_display_round_trip(m in monomial(8)) {
        let n = m.ambient();
        prop_assert_eq!(Monomial::parse(&m.to_string(), n).unwrap(), m);
    }
}
