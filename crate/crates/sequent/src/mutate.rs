use crate::check::xi_instance;
use crate::{Base, ProofStep, Reason, Rule, Sequent, SystemSpec};
use qprop::QProp;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MutationClass {
    CutClass,
    BrokenInference,
    Eigenvariable,
    ExtensionMisuse,
    XiInstance,
}

impl MutationClass {
    pub const ALL: [MutationClass; 5] = [
        MutationClass::CutClass,
        MutationClass::BrokenInference,
        MutationClass::Eigenvariable,
        MutationClass::ExtensionMisuse,
        MutationClass::XiInstance,
    ];
}

#[derive(Debug, Clone)]
pub struct Mutant {
    pub class: MutationClass,
    pub label: String,
    pub steps: Vec<ProofStep>,
    pub expected: Reason,
}

fn step(conclusion: Sequent, rule: Rule, premises: Vec<usize>) -> ProofStep {
    ProofStep {
        conclusion,
        rule,
        premises,
    }
}

fn shifted(p: &[ProofStep], by: usize) -> Vec<ProofStep> {
    p.iter()
        .cloned()
        .map(|mut s| {
            s.premises.iter_mut().for_each(|j| *j += by);
            s
        })
        .collect()
}

fn insert_front(p: &[ProofStep], s: ProofStep) -> Vec<ProofStep> {
    let mut out = vec![s];
    out.extend(shifted(p, 1));
    out
}

/// Alternating prefix of `depth` blocks over fresh names, innermost body a disjunction.
fn alternating(depth: u32, exists_first: bool) -> QProp {
    let names: Vec<String> = (0..depth).map(|k| format!("cut.u{k}")).collect();
    let mut body = names
        .iter()
        .map(|n| QProp::var(n))
        .reduce(|a, b| a.or(&b.not()))
        .unwrap_or_else(|| QProp::constant(true));
    for (k, n) in names.iter().enumerate().rev() {
        body = if (k % 2 == 0) == exists_first {
            QProp::exists(n, &body)
        } else {
            QProp::forall(n, &body)
        };
    }
    body
}

/// Cut on `c` with the end-sequent on both sides; tree-like systems get a
/// second copy of the proof for the right premise.
fn inject_cut(p: &[ProofStep], sys: &SystemSpec, c: &QProp) -> Vec<ProofStep> {
    let mut out = p.to_vec();
    let end = p.len() - 1;
    let goal = p[end].conclusion.clone();
    let mut l = goal.clone();
    l.succ.insert(0, c.clone());
    out.push(step(l, Rule::WeakenRight, vec![end]));
    let left = out.len() - 1;
    let right_src = if sys.tree_like {
        let base = out.len();
        out.extend(shifted(p, base));
        out.len() - 1
    } else {
        end
    };
    let mut r = goal.clone();
    r.ante.insert(0, c.clone());
    out.push(step(r, Rule::WeakenLeft, vec![right_src]));
    let right = out.len() - 1;
    out.push(step(
        goal,
        Rule::Cut { formula: c.clone() },
        vec![left, right],
    ));
    out
}

fn vars_of(p: &[ProofStep]) -> Vec<String> {
    let mut vs = std::collections::BTreeSet::new();
    for s in p {
        vs.extend(s.conclusion.free_vars());
        for f in s.conclusion.ante.iter().chain(&s.conclusion.succ) {
            vs.extend(f.bound_vars());
        }
    }
    vs.into_iter().collect()
}

/// Mutants of an accepted proof, each paired with the reason it must be rejected for.
pub fn mutants(p: &[ProofStep], sys: &SystemSpec) -> Vec<Mutant> {
    let mut out = Vec::new();
    let mut add = |class, label: String, steps, expected| {
        out.push(Mutant {
            class,
            label,
            steps,
            expected,
        })
    };
    if p.is_empty() {
        return out;
    }
    let junk = QProp::var("junk");

    for exists_first in [true, false] {
        let c = alternating(sys.level + 1, exists_first);
        let kind = if exists_first { "sigma" } else { "pi" };
        add(
            MutationClass::CutClass,
            format!("cut on a {kind} formula of level {}", sys.level + 1),
            inject_cut(p, sys, &c),
            Reason::CutClass,
        );
    }

    let inferences: Vec<usize> = (0..p.len()).filter(|&i| !p[i].premises.is_empty()).collect();
    let mut picks: Vec<usize> = if inferences.len() <= 3 {
        inferences.clone()
    } else {
        vec![inferences[0], inferences[inferences.len() / 2], inferences[inferences.len() - 1]]
    };
    if picks.is_empty() {
        picks.push(0);
    }
    for i in picks {
        let mut m = p.to_vec();
        m[i].conclusion.succ.push(junk.clone());
        add(
            MutationClass::BrokenInference,
            format!("extra succedent formula at step {i}"),
            m,
            Reason::BrokenInference,
        );
    }

    let eigen_reason = if sys.base == Base::G0 {
        Reason::RuleNotAllowed
    } else {
        Reason::Eigenvariable
    };
    for (i, s) in p.iter().enumerate() {
        if let Rule::ExistsLeft { .. } | Rule::ForallRight { .. } = s.rule {
            if let Some(v) = s.conclusion.free_vars().into_iter().next() {
                let mut m = p.to_vec();
                match &mut m[i].rule {
                    Rule::ExistsLeft { eigen } | Rule::ForallRight { eigen } => *eigen = v.clone(),
                    _ => unreachable!(),
                }
                add(
                    MutationClass::Eigenvariable,
                    format!("eigenvariable {v} free in step {i}"),
                    m,
                    eigen_reason,
                );
            }
        }
    }
    {
        let r = QProp::var("eig.r");
        let mut m = p.to_vec();
        m.push(step(Sequent::new(vec![r.clone()], vec![r.clone()]), Rule::AxiomId, vec![]));
        let a = m.len() - 1;
        m.push(step(
            Sequent::new(vec![r.clone()], vec![QProp::forall("eig.r", &r)]),
            Rule::ForallRight {
                eigen: "eig.r".into(),
            },
            vec![a],
        ));
        add(
            MutationClass::Eigenvariable,
            "forall-right on a variable free in the antecedent".into(),
            m,
            eigen_reason,
        );
    }

    let ext = |var: &str, def: &QProp| {
        step(
            Sequent::new(vec![], vec![crate::check::extension_formula(var, def)]),
            Rule::Extension {
                var: var.into(),
                def: def.clone(),
            },
            vec![],
        )
    };
    if let Some(v) = vars_of(p).first() {
        let mut m = p.to_vec();
        m.push(ext(v, &junk));
        add(
            MutationClass::ExtensionMisuse,
            format!("extension variable {v} already in use"),
            m,
            Reason::ExtensionMisuse,
        );
    }
    if let Some(v) = p[p.len() - 1].conclusion.free_vars().into_iter().next() {
        add(
            MutationClass::ExtensionMisuse,
            format!("extension variable {v} in the end-sequent"),
            insert_front(p, ext(&v, &junk)),
            Reason::ExtensionMisuse,
        );
    }
    add(
        MutationClass::ExtensionMisuse,
        "quantified definition".into(),
        insert_front(p, ext("ext.z", &QProp::exists("ext.u", &QProp::var("ext.u")))),
        Reason::ExtensionMisuse,
    );
    let cyc = QProp::var("ext.c");
    add(
        MutationClass::ExtensionMisuse,
        "definition mentions its variable".into(),
        insert_front(p, ext("ext.c", &cyc.or(&junk))),
        Reason::ExtensionCycle,
    );
    for (i, s) in p.iter().enumerate() {
        if let Rule::Extension { var, .. } = &s.rule {
            let mut m = p.to_vec();
            m.push(ext(var, &junk));
            add(
                MutationClass::ExtensionMisuse,
                format!("{var} introduced again after step {i}"),
                m,
                Reason::ExtensionMisuse,
            );
        }
    }

    let xi_text = sys.xi.clone().unwrap_or_else(|| crate::golden::XI.to_string());
    let one: BTreeMap<String, QProp> = [("v.x.0".to_string(), QProp::var("p"))].into();
    let inst = xi_instance(&xi_text, 1, &one).unwrap_or_else(|_| QProp::var("p"));
    let xi_step = |args: BTreeMap<String, QProp>, c: &QProp| {
        step(Sequent::new(vec![], vec![c.clone()]), Rule::AxiomXi { n: 1, args }, vec![])
    };
    if sys.xi.is_none() {
        add(
            MutationClass::XiInstance,
            "axiom instance in a system without a schema".into(),
            insert_front(p, xi_step(one.clone(), &inst)),
            Reason::XiInstance,
        );
    }
    let wrong_keys: BTreeMap<String, QProp> = [("v.y.0".to_string(), QProp::var("p"))].into();
    add(
        MutationClass::XiInstance,
        "arguments for the wrong bit variables".into(),
        insert_front(p, xi_step(wrong_keys, &inst)),
        Reason::XiInstance,
    );
    let quantified: BTreeMap<String, QProp> =
        [("v.x.0".to_string(), QProp::exists("xi.u", &QProp::var("xi.u")))].into();
    add(
        MutationClass::XiInstance,
        "quantified argument".into(),
        insert_front(p, xi_step(quantified, &inst)),
        Reason::XiInstance,
    );
    for (i, s) in p.iter().enumerate() {
        if let Rule::AxiomXi { args, .. } = &s.rule {
            let mut m = p.to_vec();
            let mut changed = args.clone();
            if let Some(a) = changed.values_mut().next() {
                *a = a.not();
            }
            if let Rule::AxiomXi { args, .. } = &mut m[i].rule {
                *args = changed;
            }
            add(
                MutationClass::XiInstance,
                format!("argument negated at step {i}"),
                m,
                Reason::XiInstance,
            );
            let mut m = p.to_vec();
            if let Rule::AxiomXi { n, .. } = &mut m[i].rule {
                *n += 1;
            }
            add(
                MutationClass::XiInstance,
                format!("width changed at step {i}"),
                m,
                Reason::XiInstance,
            );
        }
    }
    out
}
