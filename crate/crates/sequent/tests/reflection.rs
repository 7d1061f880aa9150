use qprop::Assignment;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sequent::golden::golden_proofs;
use sequent::*;
use std::collections::BTreeSet;

fn free_vars(p: &[ProofStep]) -> Vec<String> {
    let ext: BTreeSet<String> = p
        .iter()
        .filter_map(|s| match &s.rule {
            Rule::Extension { var, .. } => Some(var.clone()),
            _ => None,
        })
        .collect();
    let mut vs: BTreeSet<String> = p.iter().flat_map(|s| s.conclusion.free_vars()).collect();
    vs.retain(|v| !ext.contains(v));
    vs.into_iter().collect()
}

fn assignments(vars: &[String], rng: &mut ChaCha8Rng) -> Vec<Assignment> {
    if vars.len() <= 10 {
        (0u32..1 << vars.len())
            .map(|m| vars.iter().enumerate().map(|(k, v)| (v.clone(), m >> k & 1 == 1)).collect())
            .collect()
    } else {
        (0..100)
            .map(|_| vars.iter().map(|v| (v.clone(), rng.gen())).collect())
            .collect()
    }
}

#[test]
fn accepted_proofs_reflect_to_true() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in golden_proofs() {
        assert!(check_proof(&g.steps, &g.system).is_accept());
        let vars = free_vars(&g.steps);
        for a in assignments(&vars, &mut rng) {
            assert_eq!(reflection_test(&g.steps, &g.system, &a), Ok(true), "{} under {a:?}", g.id);
        }
    }
}

#[test]
fn every_accepted_prefix_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for g in golden_proofs() {
        for k in 1..=g.steps.len() {
            let prefix = &g.steps[..k];
            if !check_proof(prefix, &g.system).is_accept() {
                continue;
            }
            for a in assignments(&free_vars(prefix), &mut rng) {
                assert_eq!(reflection_test(prefix, &g.system, &a), Ok(true), "{} prefix {k}", g.id);
            }
        }
    }
}

#[test]
fn xi_proofs_hold_under_random_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for g in golden_proofs().into_iter().filter(|g| g.system.xi.is_some()) {
        let vars = free_vars(&g.steps);
        for _ in 0..20 {
            let a: Assignment = vars.iter().map(|v| (v.clone(), rng.gen())).collect();
            assert_eq!(reflection_test(&g.steps, &g.system, &a), Ok(true), "{}", g.id);
        }
    }
}

#[test]
fn broken_proofs_can_reflect_to_false() {
    // ⇒ p is not derivable; the evaluator sees that
    let mut b = ProofBuilder::new();
    b.top();
    let mut steps = b.finish();
    steps[0].conclusion.succ[0] = qprop::q("p");
    let sys = SystemSpec::g(1);
    assert!(!check_proof(&steps, &sys).is_accept());
    let a: Assignment = [("p".to_string(), false)].into();
    assert_eq!(reflection_test(&steps, &sys, &a), Ok(false));
}

#[test]
fn missing_values_and_empty_proofs_are_errors() {
    let g = &golden_proofs()[0];
    assert!(matches!(
        reflection_test(&g.steps, &g.system, &Assignment::new()),
        Err(ReflectError::Eval(qprop::QEvalError::Missing(_)))
    ));
    assert_eq!(reflection_test(&[], &g.system, &Assignment::new()), Err(ReflectError::Empty));
}
