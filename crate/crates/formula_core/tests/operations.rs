use formula_core::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x() -> Term {
    Term::var("x")
}

// ---- corpus ----

#[test]
fn corpus_classes_are_minimal() {
    let mut levels = std::collections::BTreeSet::new();
    for e in corpus::CORPUS.iter() {
        let g = parse(e.text).unwrap();
        assert_eq!(classify(&g), e.class, "{}", e.id);
        assert_eq!(oracle_class(&g, 4), Some(e.class), "{}", e.id);
        assert_eq!(parse(&render(&g)).unwrap(), g, "{}", e.id);
        assert!(g.free_vars().len() <= 2, "{}", e.id);
        levels.insert(e.class.level);
    }
    assert_eq!(levels.into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
}

// ---- parse ----

#[test]
fn parse_bounded_exists() {
    let got = parse("EX y <= t. y + y = x").unwrap();
    let want = Formula::exists(
        "y",
        Term::var("t"),
        Formula::eq(Term::var("y") + Term::var("y"), x()),
    );
    assert_eq!(got, want);
}

#[test]
fn parse_sharp_bound_is_visible_in_ast() {
    let g = parse("ALL u <= len(z). mod2(div2(z, u), 1) = 1").unwrap();
    match &g {
        Formula::Forall(_, bound, _) => assert!(is_sharp(bound)),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(classify(&g), QuantClass::B0);
}

#[test]
fn parse_missing_bound_reports_position() {
    let err = parse("EX y <= . y=y").unwrap_err();
    assert_eq!((err.line, err.col), (1, 9));
    assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
}

#[test]
fn parse_unknown_symbol_and_arity() {
    let err = parse("foo(x) = x").unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::UnknownSymbol(ref s) if s == "foo"));
    let err = parse("pair(x) = x").unwrap_err();
    assert!(matches!(
        err.kind,
        ParseErrorKind::Arity { expected: 2, found: 1, .. }
    ));
    let err = parse("x <= 2").unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::UnknownSymbol(_)));
}

#[test]
fn parse_reports_line_numbers() {
    let err = parse("x <= y &\n  y <=").unwrap_err();
    assert_eq!(err.line, 2);
}

#[test]
fn parenthesized_term_versus_formula() {
    assert_eq!(
        parse("(x + y) <= z").unwrap(),
        Formula::le(x() + Term::var("y"), Term::var("z"))
    );
    assert_eq!(
        parse("(x <= y) & y = y").unwrap(),
        Formula::and(
            Formula::le(x(), Term::var("y")),
            Formula::eq(Term::var("y"), Term::var("y"))
        )
    );
}

// ---- render ----

#[test]
fn render_nested_quantifiers_round_trip() {
    let g = Formula::and(
        Formula::exists("y", x(), Formula::le(Term::var("y"), x())),
        Formula::not(Formula::forall(
            "z",
            x().len(),
            Formula::implies(
                Formula::eq(Term::var("z"), Term::var("z")),
                Formula::exists("w", Term::var("z"), Formula::top()),
            ),
        )),
    );
    let s = render(&g);
    assert!(s.contains("(EX y"));
    assert_eq!(parse(&s).unwrap(), g);
}

#[test]
fn render_keeps_right_nesting() {
    let a = Term::var("a");
    let b = Term::var("b");
    let c = Term::var("c");
    let g = Formula::eq(a.clone().monus(b.clone() + c.clone()), a.clone() * (b * c));
    assert_eq!(parse(&render(&g)).unwrap(), g);
}

// ---- classify ----

#[test]
fn classify_sigma_two() {
    let g = f("EX y <= t. ALL z <= s. y+z <= x");
    assert_eq!(classify(&g), QuantClass::sigma(2));
}

#[test]
fn classify_atom() {
    let g = f("x <= x");
    assert_eq!(classify(&g), QuantClass::B0);
    assert!(classify(&g).within(true, 0) && classify(&g).within(false, 0));
}

#[test]
fn classify_leading_sharp_block_counts() {
    let g = f("ALL y <= len(x). EX z <= x. z = y");
    // oracle: the recursive membership definition
    assert!(!member(&g, true, 1) && !member(&g, false, 1));
    assert!(member(&g, false, 2) && !member(&g, true, 2));
    assert_eq!(oracle_class(&g, 4), Some(QuantClass::pi(2)));
    assert_eq!(classify(&g), QuantClass::pi(2));
}

#[test]
fn classify_trailing_sharp_block_is_matrix() {
    let g = f("EX y <= x. ALL u <= len(x). y <= u");
    assert_eq!(classify(&g), QuantClass::sigma(1));
}

#[test]
fn classify_non_strict() {
    let g = f("(EX y <= x. y = x) & (ALL z <= x. z <= x)");
    assert_eq!(classify(&g), QuantClass::NON_STRICT);
    assert_eq!(oracle_class(&g, 4), None);
}

#[test]
fn classify_negated_prefix() {
    let g = f("~(EX y <= x. ALL z <= x. y <= z)");
    assert_eq!(classify(&g), QuantClass::pi(2));
    assert_eq!(classify(&nnf(&g)), QuantClass::pi(2));
}

// ---- substitute ----

#[test]
fn substitute_constant() {
    let g = substitute(&f("x = x"), "x", &Term::Zero);
    assert_eq!(g, Formula::eq(Term::Zero, Term::Zero));
}

#[test]
fn substitute_respects_shadowing() {
    let g = f("EX x <= y. x = x");
    assert_eq!(substitute(&g, "x", &Term::One), g);
}

#[test]
fn substitute_renames_capturing_binder() {
    let g = f("EX y <= x + x. y + x = z");
    let t = Term::var("y") + Term::One;
    let s = substitute(&g, "z", &t);
    // the binder must no longer be `y`
    match &s {
        Formula::Exists(v, _, _) => assert_ne!(v, "y"),
        other => panic!("unexpected {other:?}"),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let env = env_from(&[("x", rng.gen_range(0..16)), ("y", rng.gen_range(0..16))]);
        let tv = eval_term(&t, &env, &EvalConfig::default()).unwrap();
        let mut env2 = env.clone();
        env2.insert("z".into(), tv);
        assert_eq!(eval(&s, &env).unwrap(), eval(&g, &env2).unwrap());
    }
}

// ---- eval ----

#[test]
fn eval_halving_witness() {
    assert!(eval(&f("EX y <= x. y + y = x"), &env_from(&[("x", 6)])).unwrap());
    assert!(!eval(&f("EX y <= x. y + y = x"), &env_from(&[("x", 7)])).unwrap());
}

#[test]
fn eval_slice_most_significant_first() {
    // oracle: take characters [1,3) of the binary string
    let x = 22u64;
    let bits = format!("{x:b}");
    let expect = u64::from_str_radix(&bits[1..3], 2).unwrap();
    assert_eq!(expect, 1);
    let got = eval_term(&t("slice(x, 1, 1 + 1 + 1)"), &env_from(&[("x", x)]), &EvalConfig::default())
        .unwrap();
    assert_eq!(got, BigUint::from(expect));
}

#[test]
fn eval_slice_out_of_range_is_zero() {
    let cfg = EvalConfig::default();
    let env = env_from(&[("x", 22)]);
    assert_eq!(eval_term(&t("slice(x, 1 + 1, 1)"), &env, &cfg).unwrap(), BigUint::from(0u32));
    let big = Term::num(6);
    let g = x().slice(Term::Zero, big);
    assert_eq!(eval_term(&g, &env, &cfg).unwrap(), BigUint::from(0u32));
}

#[test]
fn pairing_contract_exhaustive() {
    let cfg = EvalConfig::default();
    let p = t("pair(x, y)");
    let val = |a: u64, b: u64| eval_term(&p, &env_from(&[("x", a), ("y", b)]), &cfg).unwrap();
    for a in 0..64u64 {
        for b in 0..64u64 {
            let v = val(a, b);
            assert!(v >= BigUint::from(a + b));
            if a > 0 {
                assert!(val(a - 1, b) <= v);
            }
            let env = env_from(&[("z", u64::try_from(&v).unwrap())]);
            assert_eq!(eval_term(&t("left(z)"), &env, &cfg).unwrap(), BigUint::from(a));
            assert_eq!(eval_term(&t("right(z)"), &env, &cfg).unwrap(), BigUint::from(b));
        }
    }
}

#[test]
fn eval_domain_cap_reports_bound() {
    let cfg = EvalConfig {
        domain_cap: 10,
        ..EvalConfig::default()
    };
    let err = eval_with(&f("EX y <= x. y = y"), &env_from(&[("x", 11)]), &cfg).unwrap_err();
    assert_eq!(
        err,
        EvalError::DomainCap {
            value: BigUint::from(11u32),
            cap: 10
        }
    );
}

#[test]
fn eval_missing_variable() {
    let err = eval(&f("x = y"), &env_from(&[("x", 1)])).unwrap_err();
    assert_eq!(err, EvalError::MissingVar("y".into()));
}

#[test]
fn seq_reads_fixed_width_entries() {
    // w = ⟨2, data⟩ with data = entries 3,1,2 packed from the low end
    let data = 3 + (1 << 2) + (2 << 4);
    let cfg = EvalConfig::default();
    let w = eval_term(&t("pair(1 + 1, d)"), &env_from(&[("d", data)]), &cfg).unwrap();
    let w = u64::try_from(&w).unwrap();
    for (i, want) in [3u64, 1, 2, 0].into_iter().enumerate() {
        let env = env_from(&[("w", w), ("i", i as u64)]);
        assert_eq!(eval_term(&t("seq(w, i)"), &env, &cfg).unwrap(), BigUint::from(want));
    }
}

#[test]
fn power_helpers() {
    let cfg = EvalConfig::default();
    for xv in 0..40u64 {
        let len = 64 - xv.leading_zeros() as u64;
        for c in 1..=3u32 {
            let p = Term::pow2_len_pow(x(), c);
            let got = eval_term(&p, &env_from(&[("x", xv)]), &cfg).unwrap();
            assert_eq!(got, BigUint::from(1u32) << (len.pow(c)), "x={xv} c={c}");
        }
        for a in 0..40u64 {
            let got = eval_term(&Term::ceil_div_len(Term::var("a"), x()), &env_from(&[("x", xv), ("a", a)]), &cfg)
                .unwrap();
            assert_eq!(got, BigUint::from(a.div_ceil(1 << len)));
        }
    }
}

// ---- check_valid ----

#[test]
fn check_valid_successor() {
    assert_eq!(check_valid(&f("x <= x + 1"), &vars(&["x"]), 5).unwrap(), Verdict::Valid);
}

#[test]
fn check_valid_counterexample() {
    let v = check_valid(&f("x <= 1"), &vars(&["x"]), 2).unwrap();
    assert_eq!(v, Verdict::Counterexample(env_from(&[("x", 2)])));
}

#[test]
fn check_valid_bounded_induction_instance() {
    // ∀x(φ(0) ∧ ∀y<x(φ(y)→φ(y+1)) → φ(x)) for φ(x) = ∀y≤x y≤x
    let phi = |arg: Term| instantiate(&f("ALL y <= x. y <= x"), &[("x", arg)]);
    let step = Formula::forall(
        "v",
        x(),
        Formula::implies(
            Formula::lt(Term::var("v"), x()),
            Formula::implies(phi(Term::var("v")), phi(Term::var("v") + Term::One)),
        ),
    );
    let sentence = Formula::implies(Formula::and(phi(Term::Zero), step), phi(x()));
    assert_eq!(check_valid(&sentence, &vars(&["x"]), 4).unwrap(), Verdict::Valid);
}

#[test]
fn check_valid_rejects_unlisted_and_wide() {
    assert!(matches!(
        check_valid(&f("x <= y"), &vars(&["x"]), 2),
        Err(CheckError::Unlisted(_))
    ));
    assert!(matches!(
        check_valid(&f("x <= x"), &vars(&["x"]), 9),
        Err(CheckError::WidthCap { .. })
    ));
}

// ---- prenex ----

#[test]
fn prenex_merges_blocks() {
    let a = f("EX y <= x. ALL z <= x. y <= z");
    let b = f("EX y <= x + 1. ALL z <= x. z <= y");
    let g = prenex_formula(&Formula::and(a.clone(), b.clone()));
    assert_eq!(classify(&g), QuantClass::sigma(2));
    let imp = prenex_formula(&Formula::implies(f("ALL y <= x. y <= x"), b.clone()));
    assert_eq!(classify(&imp), QuantClass::sigma(2));
    for xv in 0..8 {
        let env = env_from(&[("x", xv)]);
        assert_eq!(
            eval(&g, &env).unwrap(),
            eval(&a, &env).unwrap() && eval(&b, &env).unwrap()
        );
    }
}

#[test]
fn prenex_interleaves_across_connectives() {
    // (Σ₁ ∧ Π₁) → Σ₂ fits in Σ₂ once the antecedent's ∀ is scheduled late
    let s1 = f("EX z <= x. z + z = x");
    let p1 = f("ALL w <= y. w <= y");
    let s2 = f("EX u <= x. ALL v <= u. v <= x");
    let g = prenex_formula(&Formula::implies(Formula::and(s1.clone(), Formula::not(s1.clone())), s2.clone()));
    assert!(classify(&g).within(true, 2), "{}", render(&g));
    let tie = Formula::and(s1, p1);
    assert_eq!(classify(&prenex_sigma(&tie)), QuantClass::sigma(2));
    assert_eq!(classify(&prenex_leading(&tie, Some(false)).into_formula()), QuantClass::pi(2));
}
