//! Splitting k simultaneous rule instances into k single ones.
//!
//! τ_m says φ, or m of the β_j hold; σ_m additionally asks for one α_j
//! outside the chosen m. Passing from τ_m to σ_m is where the side theory is
//! used; the remaining steps are propositional.

use crate::cert::{Obligation, ReductionCertificate};
use crate::{ReductionError, Result};
use formula_core::Formula;

/// Subsets of `0..k` of size `m`, in lexicographic order.
pub fn subsets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for j in start..k {
            cur.push(j);
            go(j + 1, k, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, m, &mut Vec::new(), &mut out);
    out
}

fn tau(inst: &[(Formula, Formula)], phi: &Formula, m: usize) -> Formula {
    let k = inst.len();
    Formula::or(
        phi.clone(),
        Formula::or_all(
            subsets(k, m)
                .into_iter()
                .map(|js| Formula::and_all(js.iter().map(|&j| inst[j].1.clone()))),
        ),
    )
}

fn sigma(inst: &[(Formula, Formula)], phi: &Formula, m: usize) -> Formula {
    let k = inst.len();
    Formula::or(
        phi.clone(),
        Formula::or_all(subsets(k, m).into_iter().map(|js| {
            Formula::and(
                Formula::and_all(js.iter().map(|&j| inst[j].1.clone())),
                Formula::or_all(
                    (0..k)
                        .filter(|j| !js.contains(j))
                        .map(|j| inst[j].0.clone()),
                ),
            )
        })),
    )
}

/// The combined premise ∧_j (α_j → β_j) → φ.
pub fn joint_premise(inst: &[(Formula, Formula)], phi: &Formula) -> Formula {
    Formula::implies(
        Formula::and_all(
            inst.iter()
                .map(|(a, b)| Formula::implies(a.clone(), b.clone())),
        ),
        phi.clone(),
    )
}

pub fn split_expand(
    instances: &[(Formula, Formula)],
    phi: &Formula,
    theory: &[Formula],
) -> Result<ReductionCertificate> {
    split(instances, phi, theory, None)
}

pub(crate) fn split(
    instances: &[(Formula, Formula)],
    phi: &Formula,
    theory: &[Formula],
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    if instances.is_empty() {
        return Err(ReductionError::Empty("no instances"));
    }
    let k = instances.len();
    let mut outputs: Vec<Formula> = (0..=k).map(|m| tau(instances, phi, m)).collect();
    outputs.extend((0..=k).map(|m| sigma(instances, phi, m)));
    let outputs = crate::outputs_or(outputs, over);
    let (taus, sigmas) = outputs.split_at(k + 1);

    let mut side = vec![joint_premise(instances, phi)];
    side.extend(theory.iter().cloned());

    let mut obligations = vec![
        Obligation::bare("tau-0", taus[0].clone()),
        Obligation::bare("sigma-k", Formula::implies(sigmas[k].clone(), phi.clone())),
    ];
    for m in 0..=k {
        obligations.push(Obligation::new(
            format!("tau-sigma-{m} [T]"),
            side.clone(),
            Formula::implies(taus[m].clone(), sigmas[m].clone()),
        ));
    }
    for m in 0..k {
        let cover = subsets(k, k - m);
        for (n, is) in cover.iter().enumerate() {
            let split = Formula::or(
                phi.clone(),
                Formula::or(
                    Formula::or_all(is.iter().map(|&j| instances[j].1.clone())),
                    Formula::or_all(is.iter().map(|&j| instances[j].0.clone())),
                ),
            );
            obligations.push(Obligation::bare(
                format!("split-{m}-{n}"),
                Formula::implies(sigmas[m].clone(), split),
            ));
        }
        // one single-instance rule application per I, then recombine
        let joined = Formula::and_all(cover.iter().map(|is| {
            Formula::or(
                phi.clone(),
                Formula::or_all(is.iter().map(|&j| instances[j].1.clone())),
            )
        }));
        obligations.push(Obligation::bare(
            format!("join-{m}"),
            Formula::implies(joined, taus[m + 1].clone()),
        ));
    }

    let mut inputs = vec![phi.clone()];
    for (a, b) in instances {
        inputs.push(a.clone());
        inputs.push(b.clone());
    }
    Ok(ReductionCertificate {
        name: format!("instance-split-k{k}"),
        inputs,
        outputs: outputs.to_vec(),
        obligations,
        class_claims: vec![],
    })
}

/// True when `f` is built from `leaves` (and the empty ⊤/⊥) by ∧ and ∨ only.
pub fn positive_in(f: &Formula, leaves: &[Formula]) -> bool {
    if leaves.contains(f) || *f == Formula::top() || *f == Formula::bottom() {
        return true;
    }
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => positive_in(a, leaves) && positive_in(b, leaves),
        _ => false,
    }
}

/// Every output of a split certificate is a positive combination of its inputs.
pub fn monotone_shape(cert: &ReductionCertificate) -> bool {
    cert.outputs.iter().all(|o| positive_in(o, &cert.inputs))
}
