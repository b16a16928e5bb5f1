use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use katokit::anticanonical;
use katokit::forms::{division_split, f_form, p_form};
use katokit::germ;
use katokit::graph;
use katokit::sequence::{decompose_entries, parse_text, SimpleComponent};
use katokit::{DlousskySequence, Rational};

fn component() -> impl Strategy<Value = SimpleComponent> {
    (prop::collection::vec(1u32..=4, 1..=3), 1u32..=3).prop_map(|(ks, m)| SimpleComponent::new(ks, m).unwrap())
}

fn sequence() -> impl Strategy<Value = DlousskySequence> {
    prop::collection::vec(component(), 1..=3).prop_map(|cs| DlousskySequence::new(cs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_round_trip(s in sequence()) {
        prop_assert_eq!(parse_text(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn entries_round_trip(s in sequence()) {
        let back = decompose_entries(&s.expand()).unwrap();
        prop_assert_eq!(back, s.canonical_form());
    }

    #[test]
    fn index_rotation_invariant(s in sequence(), r in 0usize..3) {
        let r = r % s.branch_count();
        prop_assert_eq!(anticanonical::surface_index(&s.rotated(r)), anticanonical::surface_index(&s));
    }

    #[test]
    fn solvers_agree(s in sequence()) {
        let g = graph::build_graph_structural(&s);
        let oracle = anticanonical::solve_adjunction_system(&s, &g).unwrap();
        prop_assert_eq!(&anticanonical::solve_closed_form(&s), &oracle);
        let chase = anticanonical::solve_chase(&s, &anticanonical::tip_multiplicity(&s));
        prop_assert!(chase.closure_defect.is_zero());
        prop_assert!(oracle.values.iter().all(|v| *v > Rational::zero()));
    }

    #[test]
    fn builders_agree(s in sequence()) {
        prop_assert_eq!(graph::build_graph_shift(&s), graph::build_graph_structural(&s));
    }

    #[test]
    fn determinant_law(s in sequence()) {
        let g = graph::build_graph_structural(&s);
        let k: BigInt = s.components().iter().map(|c| anticanonical::p_of(c) + 1u32).product();
        prop_assert_eq!(graph::graph_determinant(&g), (&k - 1u32) * (&k - 1u32));
    }

    #[test]
    fn index_divides_k_minus_one(s in sequence()) {
        let g = germ::germ_of(&s).unwrap();
        let idx = anticanonical::surface_index(&s);
        prop_assert_eq!(germ::germ_index(&g), idx.clone());
        prop_assert!(((&g.k - 1u32) % &idx).is_zero());
    }

    #[test]
    fn counting_identity(s in sequence()) {
        prop_assert_eq!(germ::curve_weight_sum(&s), 2 * s.b2() as u64 - s.m_total());
    }

    #[test]
    fn p_form_monotone(xs in prop::collection::vec(0u64..6, 1..8), i in 0usize..8) {
        let i = i % xs.len();
        let mut ys = xs.clone();
        ys[i] += 1;
        prop_assert!(p_form(&ys) >= p_form(&xs));
        prop_assert!(f_form(&ys) >= f_form(&xs));
    }

    #[test]
    fn continuant_recursion(xs in prop::collection::vec(0u64..10, 2..9)) {
        let n = xs.len();
        let want = BigInt::from(xs[n - 1]) * f_form(&xs[..n - 1]) + f_form(&xs[..n - 2]);
        prop_assert_eq!(f_form(&xs), want);
    }

    #[test]
    fn division_identity(xs in prop::collection::vec(0u64..10, 3..11)) {
        let (l, r) = division_split(&xs).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn index_one_has_integral_values(s in sequence()) {
        let asg = anticanonical::solve_closed_form(&s);
        let integral = asg.values.iter().all(|v| v.denom().is_one());
        prop_assert_eq!(integral, asg.index.is_one());
    }
}
