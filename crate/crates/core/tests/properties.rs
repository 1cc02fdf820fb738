//! Property tests for the algebraic identities the library rests on.

use std::sync::Arc;

use proptest::prelude::*;

use bentforge::boolfun::{from_trace_poly, rational_block, TracePoly, TruthTable};
use bentforge::constructions::{
    build_combined, combiner_criterion, normalize_a1, CombinerF, RationalParams,
};
use bentforge::dillon::{detect_dillon, DillonFunction};
use bentforge::expsums::{circle_sum, rational_quadratic_sum, EvalMode};
use bentforge::gf2m::{BinaryField, FieldElement, FieldSpec};
use bentforge::polyform::verify_expansion;

fn shared(m: u32) -> Arc<FieldSpec> {
    FieldSpec::shared(m, None).unwrap()
}

fn nonzero(m: u32) -> impl Strategy<Value = FieldElement> {
    (1..(1u32 << m)).prop_map(|v| FieldElement(v as u16))
}

fn element(m: u32) -> impl Strategy<Value = FieldElement> {
    (0..(1u32 << m)).prop_map(|v| FieldElement(v as u16))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws_hold(a in element(10), b in element(10), c in element(10)) {
        let f = shared(10);
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), FieldElement::ONE);
        }
    }

    #[test]
    fn trace_is_additive_and_transitive(a in element(12), b in element(12)) {
        let f = shared(12);
        let n = f.n();
        prop_assert_eq!(
            f.trace_bit(f.add(a, b)),
            f.trace_bit(a) ^ f.trace_bit(b)
        );
        // Tr_1^m = Tr_1^n ∘ Tr_n^2n
        let rel = f.trace(a, n).unwrap();
        prop_assert_eq!(f.sub_trace_bit(rel), f.trace_bit(a));
    }

    #[test]
    fn circle_param_lands_off_one(u_raw in 0u32..256, a in nonzero(12)) {
        let f = shared(12);
        prop_assume!(!f.in_subfield(a));
        let u = f.subfield().embed(FieldElement((u_raw % (1 << f.n())) as u16));
        let eta = f.circle_param(u, a).unwrap();
        prop_assert!(f.in_circle(eta));
        prop_assert_ne!(eta, FieldElement::ONE);
        prop_assert_eq!(f.pow(eta, i64::from(f.q()) + 1), FieldElement::ONE);
    }

    #[test]
    fn walsh_fast_equals_naive_and_parseval(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = shared(8);
        let t = TruthTable::from_fn(f.clone(), |_| rng.random_range(0..2) as u8);
        let fast = t.walsh();
        prop_assert_eq!(fast.values.clone(), t.walsh_naive().values);
        prop_assert_eq!(fast.energy(), 1i64 << 16);
    }

    #[test]
    fn bent_circle_data_roundtrips_and_duals(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let f = shared(8);
        let q = f.q() as usize;
        // weight q/2 circle data with g(0) = 0 is always bent
        let mut bits = vec![0u8; q + 1];
        for b in bits.iter_mut().take(q / 2) {
            *b = 1;
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        bits.shuffle(&mut rng);
        let d = DillonFunction::from_circle_bits(f.clone(), bits, 0);
        let t = d.to_table();
        prop_assert!(d.bent_criterion().unwrap());
        prop_assert!(d.hyperbent_weight_criterion());
        prop_assert!(t.is_bent());
        prop_assert!(t.anf_degree() <= f.m() / 2);
        // detect/reconstruct round trip
        let detected = detect_dillon(&t).unwrap();
        prop_assert_eq!(detected.to_table(), t.clone());
        // dual is an involution and the restricted spectrum is exact
        let dual = t.dual().unwrap();
        prop_assert_eq!(dual.dual().unwrap(), t.clone());
        prop_assert_eq!(d.restricted_spectrum().values, t.walsh().values);
    }

    #[test]
    fn trace_poly_linear_on_disjoint_supports(c1 in 0u32..63, c2 in 0u32..3) {
        let f = shared(6);
        // cosets of 7 (size 6, subfield GF(64)) and 21 (size 2, subfield GF(4))
        let a1 = f.gen_pow(i64::from(c1));
        let a2 = f.pow(f.gen_pow(21), i64::from(c2)); // GF(4) elements
        let p1 = TracePoly::new(vec![(7, a1)], 0);
        let p2 = TracePoly::new(vec![(21, a2)], 0);
        let joint = TracePoly::new(vec![(7, a1), (21, a2)], 0);
        let sum = from_trace_poly(&f, &p1).unwrap()
            .xor(&from_trace_poly(&f, &p2).unwrap()).unwrap();
        prop_assert_eq!(from_trace_poly(&f, &joint).unwrap(), sum);
    }

    #[test]
    fn circle_sum_closed_matches_brute_sampled(a in nonzero(12), b in nonzero(12)) {
        let f = shared(12);
        prop_assert_eq!(
            circle_sum(&f, a, b, EvalMode::Closed).unwrap(),
            circle_sum(&f, a, b, EvalMode::Brute).unwrap()
        );
    }

    #[test]
    fn circle_sum_reduction_identity(a in nonzero(10), b in nonzero(10)) {
        let f = shared(10);
        let q = i64::from(f.q());
        let lhs = circle_sum(&f, a, b, EvalMode::Brute).unwrap();
        let rhs = circle_sum(
            &f,
            f.norm(a),
            f.mul(f.pow(a, q - 1), f.mul(b, b)),
            EvalMode::Brute,
        ).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_quadratic_sum_closed_matches_brute(
        a_raw in 1u32..4096,
        b_raw in 0u32..4096,
        d_raw in 0u32..4096,
    ) {
        let f = BinaryField::with_default_poly(12).unwrap();
        let a = FieldElement(a_raw as u16);
        let b = FieldElement(b_raw as u16);
        let d = FieldElement(d_raw as u16);
        match rational_quadratic_sum(&f, a, b, d, EvalMode::Closed) {
            Err(_) => {}
            Ok(closed) => prop_assert_eq!(
                closed,
                rational_quadratic_sum(&f, a, b, d, EvalMode::Brute).unwrap()
            ),
        }
    }

    #[test]
    fn combiner_criterion_matches_walsh_oracle_m8(
        a1 in nonzero(8), a2 in nonzero(8), b in nonzero(8),
    ) {
        let f = shared(8);
        let p = RationalParams::new(vec![a1, a2], b, CombinerF::product2()).unwrap();
        prop_assert_eq!(
            combiner_criterion(&f, &p).unwrap(),
            build_combined(&f, &p).unwrap().is_bent()
        );
    }

    #[test]
    fn normalization_is_invariant(a1 in nonzero(8), a2 in nonzero(8), b in nonzero(8)) {
        let f = shared(8);
        let p = RationalParams::new(vec![a1, a2], b, CombinerF::product2()).unwrap();
        let n = normalize_a1(&f, &p).unwrap();
        prop_assert!(f.in_subfield(n.a[0]) && !n.a[0].is_zero());
        prop_assert_eq!(
            build_combined(&f, &p).unwrap().is_bent(),
            build_combined(&f, &n).unwrap().is_bent()
        );
    }

    #[test]
    fn expansion_matches_rational_form_sampled(a in element(10), b in nonzero(10)) {
        let f = shared(10);
        prop_assert!(verify_expansion(&f, a, b).unwrap());
    }

    #[test]
    fn combined_functions_detect_as_dillon(
        a1 in nonzero(6), a2 in nonzero(6), a3 in nonzero(6), b in nonzero(6),
    ) {
        let f = shared(6);
        let p = RationalParams::new(vec![a1, a2, a3], b, CombinerF::majority3()).unwrap();
        let t = build_combined(&f, &p).unwrap();
        prop_assert!(detect_dillon(&t).is_some());
    }

    #[test]
    fn bent_rational_blocks_have_degree_half_m(a in nonzero(10), b in nonzero(10)) {
        let f = shared(10);
        let t = rational_block(&f, a, b).unwrap();
        if t.is_bent() {
            prop_assert_eq!(t.anf_degree(), f.m() / 2);
        }
    }
}
