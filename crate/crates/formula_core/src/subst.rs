use crate::ast::{fresh_name, Formula, Term};
use std::collections::{BTreeMap, BTreeSet};

pub fn substitute_term(t: &Term, map: &BTreeMap<String, Term>) -> Term {
    let go = |a: &Term| Box::new(substitute_term(a, map));
    match t {
        Term::Zero => Term::Zero,
        Term::One => Term::One,
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Add(a, b) => Term::Add(go(a), go(b)),
        Term::Mul(a, b) => Term::Mul(go(a), go(b)),
        Term::Smash(a, b) => Term::Smash(go(a), go(b)),
        Term::Half(a) => Term::Half(go(a)),
        Term::Len(a) => Term::Len(go(a)),
        Term::Monus(a, b) => Term::Monus(go(a), go(b)),
        Term::Div2(a, b) => Term::Div2(go(a), go(b)),
        Term::Mod2(a, b) => Term::Mod2(go(a), go(b)),
        Term::Pair(a, b) => Term::Pair(go(a), go(b)),
        Term::Left(a) => Term::Left(go(a)),
        Term::Right(a) => Term::Right(go(a)),
        Term::Slice(a, b, c) => Term::Slice(go(a), go(b), go(c)),
        Term::Seq(a, b) => Term::Seq(go(a), go(b)),
        Term::Cond(a, b, c) => Term::Cond(go(a), go(b), go(c)),
    }
}

/// Simultaneous capture-avoiding substitution.
pub fn substitute_all(f: &Formula, map: &BTreeMap<String, Term>) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Eq(a, b) => Formula::Eq(substitute_term(a, map), substitute_term(b, map)),
        Formula::Le(a, b) => Formula::Le(substitute_term(a, map), substitute_term(b, map)),
        Formula::Not(a) => Formula::not(substitute_all(a, map)),
        Formula::And(a, b) => Formula::and(substitute_all(a, map), substitute_all(b, map)),
        Formula::Or(a, b) => Formula::or(substitute_all(a, map), substitute_all(b, map)),
        Formula::Implies(a, b) => {
            Formula::implies(substitute_all(a, map), substitute_all(b, map))
        }
        Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
            let bound = substitute_term(t, map);
            let body_free = body.free_vars();
            let mut inner: BTreeMap<String, Term> = map
                .iter()
                .filter(|(k, _)| *k != v && body_free.contains(*k))
                .map(|(k, t)| (k.clone(), t.clone()))
                .collect();
            let incoming: BTreeSet<String> = inner.values().flat_map(|t| t.vars()).collect();
            let mut var = v.clone();
            if incoming.contains(v) {
                let mut avoid = incoming;
                avoid.extend(body.all_vars());
                avoid.extend(inner.keys().cloned());
                var = fresh_name(v, &avoid);
                inner.insert(v.clone(), Term::Var(var.clone()));
            }
            let body = substitute_all(body, &inner);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(var, bound, body)
            } else {
                Formula::forall(var, bound, body)
            }
        }
    }
}

pub fn substitute(f: &Formula, v: &str, t: &Term) -> Formula {
    let mut map = BTreeMap::new();
    map.insert(v.to_string(), t.clone());
    substitute_all(f, &map)
}

/// Substitute by pairs, e.g. `instantiate(&phi, &[("x", Term::Zero)])`.
pub fn instantiate(f: &Formula, pairs: &[(&str, Term)]) -> Formula {
    let map = pairs
        .iter()
        .map(|(k, t)| (k.to_string(), t.clone()))
        .collect();
    substitute_all(f, &map)
}

/// Rename every bound variable that occurs in `avoid` to a fresh name.
pub fn rename_bound_apart(f: &Formula, avoid: &BTreeSet<String>) -> Formula {
    let mut taken = avoid.clone();
    taken.extend(f.all_vars());
    rename_rec(f, avoid, &mut taken)
}

fn rename_rec(f: &Formula, avoid: &BTreeSet<String>, taken: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Le(..) => f.clone(),
        Formula::Not(a) => Formula::not(rename_rec(a, avoid, taken)),
        Formula::And(a, b) => Formula::and(rename_rec(a, avoid, taken), rename_rec(b, avoid, taken)),
        Formula::Or(a, b) => Formula::or(rename_rec(a, avoid, taken), rename_rec(b, avoid, taken)),
        Formula::Implies(a, b) => {
            Formula::implies(rename_rec(a, avoid, taken), rename_rec(b, avoid, taken))
        }
        Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
            let (var, body) = if avoid.contains(v) {
                let nv = fresh_name(v, taken);
                taken.insert(nv.clone());
                let b = substitute(body, v, &Term::Var(nv.clone()));
                (nv, b)
            } else {
                (v.clone(), (**body).clone())
            };
            let body = rename_rec(&body, avoid, taken);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(var, t.clone(), body)
            } else {
                Formula::forall(var, t.clone(), body)
            }
        }
    }
}
