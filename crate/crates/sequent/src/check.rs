use crate::{Base, ProofStep, Rule, Sequent, SystemSpec};
use formula_core::parse;
use qprop::{qlevels, translate, QProp, View};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// The system header is inconsistent.
    BadSystem,
    EmptyProof,
    /// A premise index is missing, repeated where a count is fixed, or not earlier.
    PremiseIndex,
    /// Quantifier rule in G_0.
    RuleNotAllowed,
    /// A step used as premise more than once in a tree-like system.
    NotTreeLike,
    /// The conclusion does not follow from the premises by the named rule.
    BrokenInference,
    CutClass,
    Eigenvariable,
    /// An extension variable occurs in its own definition.
    ExtensionCycle,
    /// An extension variable is reintroduced, occurs earlier or in the
    /// end-sequent, or has a quantified definition.
    ExtensionMisuse,
    XiInstance,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::BadSystem => "bad-system",
            Reason::EmptyProof => "empty-proof",
            Reason::PremiseIndex => "premise-index",
            Reason::RuleNotAllowed => "rule-not-allowed",
            Reason::NotTreeLike => "not-tree-like",
            Reason::BrokenInference => "broken-inference",
            Reason::CutClass => "cut-class",
            Reason::Eigenvariable => "eigenvariable",
            Reason::ExtensionCycle => "extension-cycle",
            Reason::ExtensionMisuse => "extension-misuse",
            Reason::XiInstance => "xi-instance",
        }
    }

    pub const ALL: [Reason; 11] = [
        Reason::BadSystem,
        Reason::EmptyProof,
        Reason::PremiseIndex,
        Reason::RuleNotAllowed,
        Reason::NotTreeLike,
        Reason::BrokenInference,
        Reason::CutClass,
        Reason::Eigenvariable,
        Reason::ExtensionCycle,
        Reason::ExtensionMisuse,
        Reason::XiInstance,
    ];
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject {
        step: usize,
        reason: Reason,
        detail: String,
    },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject { reason, .. } => Some(*reason),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => write!(f, "accept"),
            Verdict::Reject {
                step,
                reason,
                detail,
            } => write!(f, "reject at step {step}: {reason} ({detail})"),
        }
    }
}

type Fail = (usize, Reason, String);

fn fail<T>(step: usize, reason: Reason, detail: impl Into<String>) -> Result<T, Fail> {
    Err((step, reason, detail.into()))
}

/// `(¬v ∨ A) ∧ (¬A ∨ v)`
pub(crate) fn extension_formula(var: &str, def: &QProp) -> QProp {
    let v = QProp::var(var);
    v.not().or(def).and(&def.not().or(&v))
}

/// The instance of the axiom schema, or why it cannot be formed.
pub(crate) fn xi_instance(
    xi: &str,
    n: u32,
    args: &BTreeMap<String, QProp>,
) -> Result<QProp, String> {
    let f = parse(xi).map_err(|e| e.to_string())?;
    let t = translate(&f, n).map_err(|e| e.to_string())?;
    let free = t.free_vars();
    let keys: BTreeSet<String> = args.keys().cloned().collect();
    if keys != free {
        return Err(format!("arguments {keys:?} do not match bit variables {free:?}"));
    }
    if let Some((k, _)) = args.iter().find(|(_, a)| !a.is_quantifier_free()) {
        return Err(format!("argument for {k} is quantified"));
    }
    Ok(t.substitute(args))
}

type XiCache = HashMap<(u32, BTreeMap<String, String>), Result<QProp, String>>;

fn xi_key(n: u32, args: &BTreeMap<String, QProp>) -> (u32, BTreeMap<String, String>) {
    (n, args.iter().map(|(k, v)| (k.clone(), v.to_string())).collect())
}

pub fn check_proof(p: &[ProofStep], sys: &SystemSpec) -> Verdict {
    match check(p, sys) {
        Ok(()) => Verdict::Accept,
        Err((step, reason, detail)) => Verdict::Reject {
            step,
            reason,
            detail,
        },
    }
}

fn check(p: &[ProofStep], sys: &SystemSpec) -> Result<(), Fail> {
    if let Err(e) = sys.validate() {
        return fail(0, Reason::BadSystem, e.to_string());
    }
    if p.is_empty() {
        return fail(0, Reason::EmptyProof, "no steps");
    }
    let global = sequential(p, sys).err();
    // instances for each width used, computed once
    let mut xi_cache: XiCache = HashMap::new();
    if let Some(xi) = &sys.xi {
        for s in p {
            if let Rule::AxiomXi { n, args } = &s.rule {
                xi_cache
                    .entry(xi_key(*n, args))
                    .or_insert_with(|| xi_instance(xi, *n, args));
            }
        }
    }
    let limit = global.as_ref().map_or(p.len(), |g| g.0);
    let local = (0..limit)
        .into_par_iter()
        .filter_map(|i| local(p, i, sys, &xi_cache).err())
        .min_by_key(|f| f.0);
    match (global, local) {
        (None, None) => Ok(()),
        (Some(g), None) => Err(g),
        (None, Some(l)) => Err(l),
        (Some(g), Some(l)) => Err(if l.0 < g.0 { l } else { g }),
    }
}

/// Checks that need the whole list: indices, tree shape, extension discipline.
fn sequential(p: &[ProofStep], sys: &SystemSpec) -> Result<(), Fail> {
    let mut used = vec![false; p.len()];
    let mut seen_vars: BTreeSet<String> = BTreeSet::new();
    let mut ext_vars: BTreeSet<String> = BTreeSet::new();
    let end_vars = p.last().map(|s| s.conclusion.free_vars()).unwrap_or_default();
    for (i, s) in p.iter().enumerate() {
        if s.premises.len() != s.rule.premise_count() {
            return fail(
                i,
                Reason::PremiseIndex,
                format!(
                    "{} takes {} premises, got {}",
                    s.rule.name(),
                    s.rule.premise_count(),
                    s.premises.len()
                ),
            );
        }
        for &j in &s.premises {
            if j >= i {
                return fail(i, Reason::PremiseIndex, format!("premise {j} is not earlier"));
            }
            if sys.tree_like && used[j] {
                return fail(i, Reason::NotTreeLike, format!("step {j} used twice"));
            }
            used[j] = true;
        }
        if let Rule::Extension { var, def } = &s.rule {
            if def.free_vars().contains(var) {
                return fail(i, Reason::ExtensionCycle, format!("{var} occurs in its definition"));
            }
            if ext_vars.contains(var) {
                return fail(i, Reason::ExtensionMisuse, format!("{var} introduced twice"));
            }
            if seen_vars.contains(var) {
                return fail(i, Reason::ExtensionMisuse, format!("{var} occurs in an earlier step"));
            }
            if end_vars.contains(var) {
                return fail(i, Reason::ExtensionMisuse, format!("{var} occurs in the end-sequent"));
            }
            if !def.is_quantifier_free() {
                return fail(i, Reason::ExtensionMisuse, "quantified definition");
            }
            ext_vars.insert(var.clone());
        }
        seen_vars.extend(s.conclusion.free_vars());
        seen_vars.extend(
            s.conclusion
                .ante
                .iter()
                .chain(&s.conclusion.succ)
                .flat_map(|f| f.bound_vars()),
        );
    }
    Ok(())
}

fn eq_list(a: &[QProp], b: &[QProp]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

fn first(xs: &[QProp]) -> Option<(&QProp, &[QProp])> {
    xs.split_first()
}

/// One step against its premises, without global context.
fn local(
    p: &[ProofStep],
    i: usize,
    sys: &SystemSpec,
    xi_cache: &XiCache,
) -> Result<(), Fail> {
    let s = &p[i];
    let c = &s.conclusion;
    let prem: Vec<&Sequent> = s.premises.iter().map(|&j| &p[j].conclusion).collect();
    let broken = |why: &str| fail(i, Reason::BrokenInference, format!("{}: {why}", s.rule.name()));
    if sys.base == Base::G0 && s.rule.is_quantifier() {
        return fail(i, Reason::RuleNotAllowed, format!("{} in G_0", s.rule.name()));
    }
    match &s.rule {
        Rule::AxiomId => {
            if !(c.ante.len() == 1 && c.succ.len() == 1 && c.ante[0] == c.succ[0]) {
                return broken("not of the form A => A");
            }
        }
        Rule::AxiomTop => {
            if !(c.ante.is_empty() && eq_list(&c.succ, &[QProp::constant(true)])) {
                return broken("not => 1");
            }
        }
        Rule::AxiomBottom => {
            if !(c.succ.is_empty() && eq_list(&c.ante, &[QProp::constant(false)])) {
                return broken("not 0 =>");
            }
        }
        Rule::AxiomXi { n, args } => {
            if sys.xi.is_none() {
                return fail(i, Reason::XiInstance, "system has no axiom schema");
            }
            let inst = match &xi_cache[&xi_key(*n, args)] {
                Ok(q) => q,
                Err(e) => return fail(i, Reason::XiInstance, e.clone()),
            };
            if !(c.ante.is_empty() && c.succ.len() == 1 && &c.succ[0] == inst) {
                return fail(i, Reason::XiInstance, "sequent is not the substituted translation");
            }
        }
        Rule::Extension { var, def } => {
            if !(c.ante.is_empty() && eq_list(&c.succ, &[extension_formula(var, def)])) {
                return broken("not the defining equivalence");
            }
        }
        Rule::WeakenLeft => {
            let q = prem[0];
            if c.ante.is_empty() || !eq_list(&c.ante[1..], &q.ante) || !eq_list(&c.succ, &q.succ) {
                return broken("contexts differ");
            }
        }
        Rule::WeakenRight => {
            let q = prem[0];
            if c.succ.is_empty() || !eq_list(&c.succ[1..], &q.succ) || !eq_list(&c.ante, &q.ante) {
                return broken("contexts differ");
            }
        }
        Rule::ExchangeLeft { at } | Rule::ExchangeRight { at } => {
            let left = matches!(s.rule, Rule::ExchangeLeft { .. });
            let q = prem[0];
            let (from, to, same_a, same_b) = if left {
                (&q.ante, &c.ante, &q.succ, &c.succ)
            } else {
                (&q.succ, &c.succ, &q.ante, &c.ante)
            };
            if at + 1 >= from.len() {
                return broken("position out of range");
            }
            let mut swapped = from.clone();
            swapped.swap(*at, at + 1);
            if !eq_list(&swapped, to) || !eq_list(same_a, same_b) {
                return broken("not a swap of adjacent formulas");
            }
        }
        Rule::ContractLeft | Rule::ContractRight => {
            let left = matches!(s.rule, Rule::ContractLeft);
            let q = prem[0];
            let (from, to, same_a, same_b) = if left {
                (&q.ante, &c.ante, &q.succ, &c.succ)
            } else {
                (&q.succ, &c.succ, &q.ante, &c.ante)
            };
            if from.len() < 2 || from[0] != from[1] || !eq_list(&from[1..], to) || !eq_list(same_a, same_b)
            {
                return broken("not a contraction of the first two formulas");
            }
        }
        Rule::NotLeft => {
            let q = prem[0];
            let Some((pf, rest)) = first(&c.ante) else {
                return broken("empty antecedent");
            };
            let View::Not(a) = pf.view() else {
                return broken("principal formula is not a negation");
            };
            let Some((aux, qrest)) = first(&q.succ) else {
                return broken("empty premise succedent");
            };
            if *aux != a || !eq_list(qrest, &c.succ) || !eq_list(&q.ante, rest) {
                return broken("premise does not match");
            }
        }
        Rule::NotRight => {
            let q = prem[0];
            let Some((pf, rest)) = first(&c.succ) else {
                return broken("empty succedent");
            };
            let View::Not(a) = pf.view() else {
                return broken("principal formula is not a negation");
            };
            let Some((aux, qrest)) = first(&q.ante) else {
                return broken("empty premise antecedent");
            };
            if *aux != a || !eq_list(qrest, &c.ante) || !eq_list(&q.succ, rest) {
                return broken("premise does not match");
            }
        }
        Rule::AndLeft => {
            let q = prem[0];
            let Some((pf, rest)) = first(&c.ante) else {
                return broken("empty antecedent");
            };
            let View::And(a, b) = pf.view() else {
                return broken("principal formula is not a conjunction");
            };
            if q.ante.len() < 2
                || q.ante[0] != a
                || q.ante[1] != b
                || !eq_list(&q.ante[2..], rest)
                || !eq_list(&q.succ, &c.succ)
            {
                return broken("premise does not match");
            }
        }
        Rule::OrRight => {
            let q = prem[0];
            let Some((pf, rest)) = first(&c.succ) else {
                return broken("empty succedent");
            };
            let View::Or(a, b) = pf.view() else {
                return broken("principal formula is not a disjunction");
            };
            if q.succ.len() < 2
                || q.succ[0] != a
                || q.succ[1] != b
                || !eq_list(&q.succ[2..], rest)
                || !eq_list(&q.ante, &c.ante)
            {
                return broken("premise does not match");
            }
        }
        Rule::AndRight => {
            let Some((pf, rest)) = first(&c.succ) else {
                return broken("empty succedent");
            };
            let View::And(a, b) = pf.view() else {
                return broken("principal formula is not a conjunction");
            };
            for (q, aux) in prem.iter().zip([a, b]) {
                let Some((x, qrest)) = first(&q.succ) else {
                    return broken("empty premise succedent");
                };
                if *x != aux || !eq_list(qrest, rest) || !eq_list(&q.ante, &c.ante) {
                    return broken("premise does not match");
                }
            }
        }
        Rule::OrLeft => {
            let Some((pf, rest)) = first(&c.ante) else {
                return broken("empty antecedent");
            };
            let View::Or(a, b) = pf.view() else {
                return broken("principal formula is not a disjunction");
            };
            for (q, aux) in prem.iter().zip([a, b]) {
                let Some((x, qrest)) = first(&q.ante) else {
                    return broken("empty premise antecedent");
                };
                if *x != aux || !eq_list(qrest, rest) || !eq_list(&q.succ, &c.succ) {
                    return broken("premise does not match");
                }
            }
        }
        Rule::ExistsLeft { eigen } | Rule::ForallRight { eigen } => {
            let left = matches!(s.rule, Rule::ExistsLeft { .. });
            let q = prem[0];
            if c.free_vars().contains(eigen) {
                return fail(i, Reason::Eigenvariable, format!("{eigen} is free in the conclusion"));
            }
            let (cside, cother, qside, qother) = if left {
                (&c.ante, &c.succ, &q.ante, &q.succ)
            } else {
                (&c.succ, &c.ante, &q.succ, &q.ante)
            };
            let Some((pf, rest)) = first(cside) else {
                return broken("empty side");
            };
            let (v, body) = match (pf.view(), left) {
                (View::Exists(v, b), true) | (View::Forall(v, b), false) => (v.to_string(), b),
                _ => return broken("principal formula has the wrong quantifier"),
            };
            if body.bound_vars().contains(eigen) {
                return broken("eigenvariable is bound in the body");
            }
            let inst = body.instantiate(&v, &QProp::var(eigen));
            let Some((aux, qrest)) = first(qside) else {
                return broken("empty premise side");
            };
            if *aux != inst || !eq_list(qrest, rest) || !eq_list(qother, cother) {
                return broken("premise does not match");
            }
        }
        Rule::ExistsRight { witness } | Rule::ForallLeft { witness } => {
            let right = matches!(s.rule, Rule::ExistsRight { .. });
            let q = prem[0];
            if !witness.is_quantifier_free() {
                return broken("witness is quantified");
            }
            let (cside, cother, qside, qother) = if right {
                (&c.succ, &c.ante, &q.succ, &q.ante)
            } else {
                (&c.ante, &c.succ, &q.ante, &q.succ)
            };
            let Some((pf, rest)) = first(cside) else {
                return broken("empty side");
            };
            let (v, body) = match (pf.view(), right) {
                (View::Exists(v, b), true) | (View::Forall(v, b), false) => (v.to_string(), b),
                _ => return broken("principal formula has the wrong quantifier"),
            };
            let bound = body.bound_vars();
            if witness.free_vars().iter().any(|w| bound.contains(w)) {
                return broken("witness would be captured");
            }
            let inst = body.instantiate(&v, witness);
            let Some((aux, qrest)) = first(qside) else {
                return broken("empty premise side");
            };
            if *aux != inst || !eq_list(qrest, rest) || !eq_list(qother, cother) {
                return broken("premise does not match");
            }
        }
        Rule::Cut { formula } => {
            let (l, r) = (prem[0], prem[1]);
            let ok = first(&l.succ).is_some_and(|(a, rest)| a == formula && eq_list(rest, &c.succ))
                && eq_list(&l.ante, &c.ante)
                && first(&r.ante).is_some_and(|(a, rest)| a == formula && eq_list(rest, &c.ante))
                && eq_list(&r.succ, &c.succ);
            if !ok {
                return broken("premises do not match");
            }
            let (s_level, _) = qlevels(formula);
            if s_level > sys.level {
                return fail(
                    i,
                    Reason::CutClass,
                    format!("cut formula is in Σq{s_level}, above level {}", sys.level),
                );
            }
        }
    }
    Ok(())
}
