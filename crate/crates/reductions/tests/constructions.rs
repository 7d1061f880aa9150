use formula_core::{classify, env_from, eval, eval_term, f, t, ClassKind, Formula, QuantClass};
use num_bigint::BigUint;
use proptest::prelude::*;
use reductions::collapse::{digit_term, limit_term};
use reductions::golden::{collapse_sample, split_sample};
use reductions::split::monotone_shape;
use reductions::{
    basic_reduce, check_certificate, collapse_chain, eliminate_parameters, split_expand,
    merge_nested_pi, mutate, variant_reduce, BasicOpts, Codec, Direction, MutOp, Mutation,
    ReductionCertificate, ReductionError, RuleKind, Scheme, Status, Variant, VariantOpts,
};

fn cfg() -> formula_core::EvalConfig {
    formula_core::EvalConfig::default()
}

fn valid_at(cert: &ReductionCertificate, width: u32) {
    let r = check_certificate(cert, width).unwrap();
    assert!(r.all_valid(), "{}", r.text());
    assert!(r.claims.iter().all(|c| c.holds), "{}", r.text());
}

fn tuples(k: usize, below: u64) -> Vec<Vec<u64>> {
    (0..below.pow(k as u32))
        .map(|mut n| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = n % below;
                n /= below;
            }
            v
        })
        .collect()
}

#[test]
fn codec_round_trips_at_width_3() {
    for pind in [false, true] {
        for k in 1..=3 {
            let codec = Codec { k, c: 1, pind };
            for x in 0..8u64 {
                let d = codec.digit_bits(x);
                for tup in tuples(k, 1 << d) {
                    let y = codec.encode(x, &tup);
                    assert!(y < codec.limit(x));
                    assert_eq!(codec.decode(x, y), Some(tup));
                }
                for y in 0..codec.limit(x).min(1 << 16) {
                    if let Some(tup) = codec.decode(x, y) {
                        assert_eq!(codec.encode(x, &tup), y);
                    } else {
                        assert!(pind, "every IND code decodes");
                    }
                }
            }
        }
    }
}

#[test]
fn pind_codes_shrink_when_a_digit_shortens() {
    for k in 2..=3 {
        let codec = Codec { k, c: 1, pind: true };
        for x in 0..8u64 {
            let d = codec.digit_bits(x);
            let max = (1u64 << d) - 1;
            for tup in tuples(k, 1 << d) {
                let len = 128 - codec.encode(x, &tup).leading_zeros();
                for j in 0..k {
                    for z in 0..tup[j] {
                        if 64 - z.leading_zeros() >= 64 - tup[j].leading_zeros() {
                            continue;
                        }
                        let mut other = tup[..j].to_vec();
                        other.push(z);
                        other.extend(std::iter::repeat(max).take(k - j - 1));
                        let shorter = 128 - codec.encode(x, &other).leading_zeros();
                        assert!(shorter < len, "x={x} {tup:?} -> {other:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn digit_terms_agree_with_codec() {
    for pind in [false, true] {
        for k in 1..=3 {
            let codec = Codec { k, c: 1, pind };
            for x in 0..8u64 {
                let limit = codec.limit(x);
                assert_eq!(
                    eval_term(&limit_term(k, 1, pind), &env_from(&[("x", x)]), &cfg()).unwrap(),
                    BigUint::from(limit)
                );
                for y in 0..limit.min(1 << 12) {
                    let Some(tup) = codec.decode(x, y) else { continue };
                    let env = env_from(&[("x", x), ("y", y as u64)]);
                    for j in 1..=k {
                        let v = eval_term(&digit_term(k, j, 1), &env, &cfg()).unwrap();
                        assert_eq!(v, BigUint::from(tup[j - 1]), "x={x} y={y} j={j}");
                    }
                }
            }
        }
    }
}

#[test]
fn limit_term_with_larger_exponent() {
    for x in 0..8u64 {
        let codec = Codec { k: 2, c: 2, pind: false };
        let v = eval_term(&limit_term(2, 2, false), &env_from(&[("x", x)]), &cfg()).unwrap();
        assert_eq!(v, BigUint::from(codec.limit(x)));
    }
}

#[test]
fn spec_samples_check() {
    let kind = |s, sigma| {
        RuleKind::rule(s, if sigma { QuantClass::sigma(1) } else { QuantClass::pi(1) })
    };
    let c = eliminate_parameters(&f("ALL z <= y. z monus x <= y"), kind(Scheme::Ind, false)).unwrap();
    valid_at(&c, 5);
    let c = eliminate_parameters(&f("EX z <= x. z + y = x"), kind(Scheme::Ind, true)).unwrap();
    let r = check_certificate(&c, 5).unwrap();
    assert!(r.all_valid());
    assert!(r.obligations.iter().any(|o| o.status == Status::Valid { vacuous: true }));
    let c = eliminate_parameters(&f("ALL z <= y. z monus x <= y"), kind(Scheme::Pind, false)).unwrap();
    assert_eq!(classify(&c.outputs[0]), QuantClass::pi(1));

    valid_at(&basic_reduce(2, &f("x <= y"), &BasicOpts::default()).unwrap(), 5);
    valid_at(&basic_reduce(7, &f("x <= y+y"), &BasicOpts::default()).unwrap(), 4);
    let opts = VariantOpts::default();
    valid_at(&variant_reduce(Variant::Length, &f("x <= y"), Direction::Forward, &opts).unwrap(), 5);
    let min = VariantOpts { scheme: Scheme::Min, c: 1 };
    valid_at(&variant_reduce(Variant::MinAsInd, &f("y <= x"), Direction::Forward, &min).unwrap(), 5);
    let m = merge_nested_pi(&f("y <= y"), &f("x <= x+1"), 1, &[]).unwrap();
    valid_at(&m, 4);
}

#[test]
fn class_claims_match_expected_levels() {
    let sigma1 = f("EX z <= x. z + z = x | z + z + 1 = x");
    let item6 = basic_reduce(6, &sigma1, &BasicOpts::default()).unwrap();
    assert!(classify(&item6.outputs[0]).within(true, 2));
    assert_eq!(item6.class_claims[0].class, QuantClass::sigma(2));
    let item7 = basic_reduce(7, &sigma1, &BasicOpts::default()).unwrap();
    assert_eq!(item7.class_claims[0].class, QuantClass::pi(2));
    assert!(classify(&item7.outputs[0]).within(false, 2));
    let sp = eliminate_parameters(
        &f("EX u <= 1. x = half(x) + half(x) + u"),
        RuleKind::rule(Scheme::Pind, QuantClass::sigma(1)),
    )
    .unwrap();
    assert_eq!(classify(&sp.outputs[0]).kind, ClassKind::SigmaHat);
    assert!(classify(&sp.outputs[0]).within(true, 1));
    let m = merge_nested_pi(&f("ALL u <= y. u <= y"), &f("ALL u <= x. u <= x + 1"), 1, &[]).unwrap();
    assert_eq!(classify(&m.outputs[0]), QuantClass::pi(1));
}

#[test]
fn pairing_side_conditions_exhaustive() {
    let phi = f("ALL z <= (1 # x) monus 1. z <= x + z");
    let c = variant_reduce(Variant::CourseOfValues, &phi, Direction::Backward, &VariantOpts::default())
        .unwrap();
    let side: Vec<_> = c.obligations.iter().filter(|o| o.label.starts_with("side")).cloned().collect();
    assert_eq!(side.len(), 2);
    let only = ReductionCertificate { obligations: side, class_claims: vec![], ..c };
    // u, u', v, v' all range below 16
    valid_at(&only, 4);
}

#[test]
fn flipped_connective_is_caught() {
    let phi = f("ALL z <= y. z monus x <= y");
    let kind = RuleKind::rule(Scheme::Ind, QuantClass::pi(1));
    let good = eliminate_parameters(&phi, kind).unwrap();
    let bad_psi = mutate(&good.outputs[0], Mutation::new(MutOp::SwapConnective, 0)).unwrap();
    let bad = reductions::golden::GoldenCase {
        id: "t",
        construction: reductions::Construction::EliminateParameters { phi, kind },
        width: 5,
        mutations: vec![],
    }
    .construction
    .build_with(Some(&[bad_psi]))
    .unwrap();
    assert!(check_certificate(&bad, 5).unwrap().counterexamples() > 0);
}

#[test]
fn empty_certificate_is_valid() {
    let c = ReductionCertificate {
        name: "empty".into(),
        inputs: vec![],
        outputs: vec![],
        obligations: vec![],
        class_claims: vec![],
    };
    assert!(check_certificate(&c, 3).unwrap().all_valid());
    assert!(check_certificate(&c, 9).is_err());
}

#[test]
fn split_certificates() {
    let one = split_sample(1).build().unwrap();
    assert_eq!(one.outputs.len(), 4);
    valid_at(&one, 4);
    for k in 1..=3 {
        let c = split_sample(k).build().unwrap();
        assert!(monotone_shape(&c));
        let mut broken = c.clone();
        broken.outputs[0] = Formula::not(broken.outputs[0].clone());
        assert!(!monotone_shape(&broken));
    }
    assert_eq!(
        split_expand(&[], &f("x <= x"), &[]).unwrap_err(),
        ReductionError::Empty("no instances")
    );
}

#[test]
fn k1_collapse_is_a_recoding() {
    let c = collapse_sample(1, Scheme::Ind).build().unwrap();
    assert!(c.obligations.iter().any(|o| o.label == "k1-identity"));
    valid_at(&c, 4);
}

#[test]
fn rejected_inputs() {
    let pi = RuleKind::rule(Scheme::Ind, QuantClass::pi(1));
    let sigma = RuleKind::rule(Scheme::Ind, QuantClass::sigma(1));
    assert!(matches!(
        eliminate_parameters(&f("ALL z <= y. EX w <= z. w = x"), sigma),
        Err(ReductionError::ClassMismatch { .. })
    ));
    assert!(matches!(
        eliminate_parameters(&f("x <= u"), pi),
        Err(ReductionError::FreeVars { .. })
    ));
    assert!(matches!(
        collapse_chain(&[], &t("x0"), 1, Scheme::Ind, &f("x0 <= x0")),
        Err(ReductionError::Empty(_))
    ));
    assert!(matches!(
        collapse_chain(&[f("x0 <= x1")], &t("x0"), 0, Scheme::Ind, &f("x0 <= x0")),
        Err(ReductionError::BadExponent)
    ));
    assert!(matches!(
        collapse_chain(&[f("x0 <= x1")], &t("y"), 1, Scheme::Ind, &f("x0 <= x0")),
        Err(ReductionError::Malformed(_))
    ));
    assert!(matches!(
        merge_nested_pi(&f("y <= y"), &f("x <= x"), 0, &[]),
        Err(ReductionError::BadExponent)
    ));
    assert!(matches!(
        variant_reduce(Variant::MinRule, &f("x <= y"), Direction::Backward, &VariantOpts::default()),
        Err(ReductionError::Unsupported(_))
    ));
    assert!(basic_reduce(3, &f("x <= y"), &BasicOpts::default()).is_err());
}

fn small_term() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("x".to_string()), Just("y".to_string()), Just("1".to_string())];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} monus {b})")),
            inner.clone().prop_map(|a| format!("half({a})")),
            inner.prop_map(|a| format!("len({a})")),
        ]
    })
}

fn open_formula() -> impl Strategy<Value = Formula> {
    (small_term(), small_term(), small_term(), small_term(), any::<bool>()).prop_map(
        |(a, b, c, d, conj)| {
            let op = if conj { "&" } else { "|" };
            f(&format!("{a} <= {b} {op} {c} = {d}"))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // the dual construction is sound for any open φ
    #[test]
    fn dual_is_sound(phi in open_formula(), pind in any::<bool>()) {
        let scheme = if pind { Scheme::Pind } else { Scheme::Ind };
        let c = basic_reduce(2, &phi, &BasicOpts { scheme }).unwrap();
        let r = check_certificate(&c, 3).unwrap();
        prop_assert!(r.all_valid(), "{}", r.text());
    }

    #[test]
    fn pi_parameter_elimination_is_sound(phi in open_formula()) {
        let bounded = Formula::forall("z", t("y"), formula_core::instantiate(&phi, &[("y", t("y monus z"))]));
        for s in [Scheme::Ind, Scheme::Pind] {
            let c = eliminate_parameters(&bounded, RuleKind::rule(s, QuantClass::pi(1))).unwrap();
            let r = check_certificate(&c, 3).unwrap();
            prop_assert!(r.all_valid(), "{}", r.text());
            prop_assert!(r.claims.iter().all(|k| k.holds));
        }
    }

    #[test]
    fn outputs_satisfy_their_claims(phi in open_formula()) {
        for item in [2u8, 5, 6, 7] {
            let c = basic_reduce(item, &phi, &BasicOpts::default()).unwrap();
            for claim in &c.class_claims {
                prop_assert!(reductions::satisfies(classify(&claim.formula), claim.class));
            }
        }
    }

    #[test]
    fn json_round_trip(phi in open_formula()) {
        let c = basic_reduce(2, &phi, &BasicOpts::default()).unwrap();
        prop_assert_eq!(ReductionCertificate::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn codec_round_trip_random(x in 0u64..1 << 20, seed in any::<u64>(), k in 1usize..4) {
        let codec = Codec { k, c: 1, pind: false };
        let d = codec.digit_bits(x);
        let tup: Vec<u64> = (0..k).map(|j| (seed >> (j * 8)) & ((1u64 << d) - 1)).collect();
        prop_assert_eq!(codec.decode(x, codec.encode(x, &tup)), Some(tup));
    }
}

#[test]
fn eval_sanity_for_sample_formula() {
    assert!(eval(&f("x <= y + y"), &env_from(&[("x", 4), ("y", 2)])).unwrap());
}
