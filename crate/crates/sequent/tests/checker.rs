use proptest::prelude::*;
use qprop::q;
use sequent::golden::golden_proofs;
use sequent::*;
use std::collections::{BTreeMap, BTreeSet};

#[test]
fn golden_proofs_are_accepted() {
    let proofs = golden_proofs();
    assert_eq!(proofs.len(), 10);
    for g in &proofs {
        assert_eq!(check_proof(&g.steps, &g.system), Verdict::Accept, "{}", g.id);
    }
    let systems: BTreeSet<String> = proofs.iter().map(|g| g.system.name()).collect();
    for want in ["G_0", "G_1", "G*_1", "G_1+[x <= x + 1]", "G_2"] {
        assert!(systems.contains(want), "{want} missing");
    }
}

#[test]
fn every_mutation_class_is_rejected_on_every_golden_proof() {
    let mut total = 0;
    for g in golden_proofs() {
        let ms = mutants(&g.steps, &g.system);
        for class in MutationClass::ALL {
            assert!(ms.iter().any(|m| m.class == class), "{}: no {class:?} mutant", g.id);
        }
        for m in &ms {
            let v = check_proof(&m.steps, &g.system);
            assert_eq!(v.reason(), Some(m.expected), "{}: {} gave {v}", g.id, m.label);
        }
        total += ms.len();
    }
    assert!(total >= 50, "{total} mutants");
}

#[test]
fn pi_two_cut_is_rejected_in_g1() {
    let g = &golden_proofs()[0];
    assert_eq!(g.id, "excluded-middle");
    let m = mutants(&g.steps, &g.system)
        .into_iter()
        .find(|m| m.label.starts_with("cut on a pi formula of level 2"))
        .unwrap();
    let v = check_proof(&m.steps, &g.system);
    assert_eq!(v.reason(), Some(Reason::CutClass));
    // the same mutant is fine in G_2 for a Σ cut, not for a Π one
    assert_eq!(check_proof(&m.steps, &SystemSpec::g(2)).reason(), Some(Reason::CutClass));
    assert!(check_proof(&m.steps, &SystemSpec::g(3)).is_accept());
}

#[test]
fn extension_variable_in_its_own_definition() {
    let mut b = ProofBuilder::new();
    b.extension("e", &q("e & p"));
    let v = check_proof(&b.finish(), &SystemSpec::g0());
    assert_eq!(v.reason(), Some(Reason::ExtensionCycle));
}

#[test]
fn structural_errors() {
    let g = &golden_proofs()[0];
    let mut bad = g.steps.clone();
    bad[1].premises = vec![3];
    assert_eq!(check_proof(&bad, &g.system).reason(), Some(Reason::PremiseIndex));
    bad[1].premises = vec![];
    assert_eq!(check_proof(&bad, &g.system).reason(), Some(Reason::PremiseIndex));
    assert_eq!(check_proof(&[], &g.system).reason(), Some(Reason::EmptyProof));

    let mut sys = SystemSpec::g_star(1);
    sys.tree_like = false;
    assert_eq!(check_proof(&g.steps, &sys).reason(), Some(Reason::BadSystem));
    assert_eq!(check_proof(&g.steps, &SystemSpec::g(0)).reason(), Some(Reason::BadSystem));
    let deep = SystemSpec::g(1).with_xi("EX y <= x. ALL z <= x. y <= z");
    assert_eq!(check_proof(&g.steps, &deep).reason(), Some(Reason::BadSystem));
    assert_eq!(deep.validate(), Err(SystemError::XiRuleUnsupported));

    // reusing a step breaks tree-likeness
    let mut b = ProofBuilder::new();
    let a = b.axiom(&q("p"));
    b.and_right(a, a);
    let reuse = b.finish();
    assert!(check_proof(&reuse, &SystemSpec::g(1)).is_accept());
    let v = check_proof(&reuse, &SystemSpec::g_star(1));
    assert_eq!(v, Verdict::Reject { step: 1, reason: Reason::NotTreeLike, detail: "step 0 used twice".into() });
}

#[test]
fn quantifier_rules_are_not_in_g0() {
    let g = golden_proofs().into_iter().find(|g| g.id == "eigenvariables").unwrap();
    let v = check_proof(&g.steps, &SystemSpec::g0());
    assert_eq!(v.reason(), Some(Reason::RuleNotAllowed));
}

#[test]
fn first_failing_step_is_reported() {
    let g = golden_proofs().into_iter().find(|g| g.id == "de-morgan").unwrap();
    let mut bad = g.steps.clone();
    let n = bad.len();
    bad[n - 1].conclusion.succ.push(q("junk"));
    bad[2].conclusion.ante.push(q("junk"));
    match check_proof(&bad, &g.system) {
        Verdict::Reject { step, reason, .. } => {
            assert_eq!((step, reason), (2, Reason::BrokenInference))
        }
        v => panic!("{v}"),
    }
}

#[test]
fn reason_codes_are_distinct() {
    let codes: BTreeSet<&str> = Reason::ALL.iter().map(|r| r.code()).collect();
    assert_eq!(codes.len(), Reason::ALL.len());
    for r in Reason::ALL {
        assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{}\"", r.code()));
    }
}

fn star_to_plain(s: &SystemSpec) -> SystemSpec {
    let mut g = s.clone();
    if g.base == Base::GStar {
        g.base = Base::G;
    }
    g.tree_like = false;
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn tree_like_acceptance_implies_dag_acceptance(
        which in 0usize..10,
        cut in 1usize..100,
        mutant in proptest::option::of(0usize..64),
        level in 1u32..3,
    ) {
        let g = &golden_proofs()[which];
        let star = SystemSpec { base: Base::GStar, level, tree_like: true, xi: g.system.xi.clone() };
        let steps = match mutant {
            Some(k) => {
                let ms = mutants(&g.steps, &g.system);
                ms[k % ms.len()].steps.clone()
            }
            None => g.steps[..cut.min(g.steps.len())].to_vec(),
        };
        if check_proof(&steps, &star).is_accept() {
            prop_assert!(check_proof(&steps, &star_to_plain(&star)).is_accept());
        }
    }

    #[test]
    fn prefixes_of_accepted_proofs_are_accepted(which in 0usize..10, cut in 1usize..100) {
        let g = &golden_proofs()[which];
        let k = cut.min(g.steps.len());
        let prefix = &g.steps[..k];
        let v = check_proof(prefix, &g.system);
        // a prefix cut before an extension step may leave its variable in the new end-sequent
        prop_assert!(v.is_accept() || v.reason() == Some(Reason::ExtensionMisuse), "{}", v);
    }
}

#[test]
fn xi_args_are_keyed_by_bit_names() {
    let mut b = ProofBuilder::new();
    let args: BTreeMap<String, qprop::QProp> =
        [("v.x.0".to_string(), q("p")), ("v.x.1".to_string(), q("q"))].into();
    b.xi(golden::XI, 2, args);
    let steps = b.finish();
    let sys = SystemSpec::g(1).with_xi(golden::XI);
    assert!(check_proof(&steps, &sys).is_accept());
    assert_eq!(check_proof(&steps, &SystemSpec::g(1)).reason(), Some(Reason::XiInstance));
}
